import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from weights import (
    AllOnesError,
    BadDegreeError,
    BadTError,
    BadVError,
    H,
    LemmaDomainError,
    OneDigitEdit,
    RunBlock,
    check_add_two_delta,
    check_block_delta,
    check_one_digit_delta,
    check_run_balance,
    check_run_sum,
    check_shift_congruence,
    digit_string,
    h_table,
    lin_equality_set,
    lin_exponent,
    matches_case_patterns,
    one_digit_edits,
    run_decompose,
    sigma,
    sigma_table,
    triple_weight_sum,
    triple_weight_sums,
    verify_lin_weight_theorem,
    weight_criterion,
    weight_table,
    wt,
)


def test_wt_examples():
    assert wt(0, 3) == 0
    assert wt(8, 3) == 4
    assert wt(112, 3) == 4
    assert wt(26, 3) == 0


def test_sigma_examples():
    assert sigma(1, 3) == 1
    assert sigma(8, 3) == 4
    assert sigma(26, 5) == 8
    assert sigma(0, 4) == 1


def test_h_examples():
    assert H(1, 3) == 1
    assert H(7, 3) == 1
    assert H(2, 5) == 2
    # the j = 2 base case only reaches 2 from n = 5 on
    assert H(2, 3) == 4


def test_h_needs_odd_degree():
    with pytest.raises(BadDegreeError):
        H(1, 4)


def test_triple_weight_sum_examples():
    assert triple_weight_sum(1, 16, 7, 3) == 7
    assert triple_weight_sum(1, 52, 61, 5) == 11


@pytest.mark.parametrize("n", [3, 4, 5])
def test_tables_match_scalar_functions(n):
    Q = 3 ** n - 1
    weights, sigmas = weight_table(n), sigma_table(n)
    for j in range(Q):
        assert weights[j] == wt(j, n)
        assert sigmas[j] == sigma(j, n)
    sums = triple_weight_sums(16, 7, n)
    assert all(sums[j] == triple_weight_sum(j, 16, 7, n) for j in range(Q))


def test_h_table_matches_h():
    table = h_table(5)
    assert all(table[j] == H(j, 5) for j in range(1, 242))


def test_h_table_is_invariant_under_tripling():
    for n in (3, 5, 7):
        table = h_table(n)
        Q = 3 ** n - 1
        js = np.arange(Q)
        assert np.array_equal(table[(3 * js) % Q], table)


def test_weight_criterion_lin_pair_n3():
    report = weight_criterion(16, 7, 3)
    assert report.realizable
    assert report.d == 2
    assert report.equality_set == [1, 3, 7, 9, 11, 21]
    assert report.coset_representatives() == [1, 7]
    # 13 * d = 26 is excluded from the criterion
    assert 13 not in report.equality_set


def test_weight_criterion_other_pair_and_errors():
    assert weight_criterion(13, 1, 3).realizable
    with pytest.raises(BadTError):
        weight_criterion(16, 2, 3)
    with pytest.raises(BadVError):
        weight_criterion(5, 7, 3)


def test_weight_criterion_reports_first_violation():
    report = weight_criterion(2, 23, 3)
    assert not report.realizable
    assert report.first_violation is not None
    j = report.first_violation
    assert triple_weight_sum(j, 2, 23, 3) <= 6
    assert triple_weight_sum(4, 2, 23, 3) == 6


@pytest.mark.parametrize("n,size", [(3, 6), (5, 10)])
def test_lin_weight_theorem(n, size):
    outcome = verify_lin_weight_theorem(n)
    assert outcome["pass"]
    assert outcome["screenAgrees"]
    assert outcome["shiftInvariant"]
    assert outcome["equalitySetSize"] == size
    assert outcome["equalitySet"] == lin_equality_set(n)
    assert outcome["hOfTwo"] >= 2


@pytest.mark.slow
@pytest.mark.parametrize("n,size", [(7, 14), (9, 18), (11, 22), (13, 26)])
def test_lin_weight_theorem_large(n, size):
    outcome = verify_lin_weight_theorem(n)
    assert outcome["pass"]
    assert outcome["shiftInvariant"]
    assert outcome["equalitySetSize"] == size


def test_lin_weight_theorem_rejects_even_degree():
    with pytest.raises(BadDegreeError):
        verify_lin_weight_theorem(4)


def test_lin_exponent():
    assert lin_exponent(3) == 7
    assert lin_exponent(5) == 19


def test_run_decompose_examples():
    dec = run_decompose(42, 4)
    assert digit_string(42, 4) == "1120"
    assert dec.blocks == [RunBlock(2, 2), RunBlock(0, 0)]
    assert dec.rotation == 0
    assert dec.display() == "1120"

    dec = run_decompose(2, 3)
    assert dec.blocks == [RunBlock(0, 0), RunBlock(0, 0), RunBlock(2, 0)]
    assert dec.block(0) == RunBlock(2, 0)

    with pytest.raises(AllOnesError):
        run_decompose(13, 3)


def test_run_decompose_rotates_to_non_one_digit():
    # 0111 -> lowest digit 1, first non-1 digit is at position 3
    dec = run_decompose(13, 4)
    assert dec.rotation == 3
    assert dec.word[0] == 0
    assert dec.display() == "1110"


def test_lemma_examples():
    assert check_run_sum(42, 4)
    assert check_block_delta(RunBlock(0, 3))
    assert check_add_two_delta(1, 0, 3)
    assert check_shift_congruence(1, 0, 3)
    with pytest.raises(LemmaDomainError):
        check_add_two_delta(1, 3, 3)


@pytest.mark.parametrize("r", range(12))
def test_block_delta(r):
    assert check_block_delta(RunBlock(0, r))
    assert check_block_delta(RunBlock(2, r))


residues_n6 = st.integers(0, 3 ** 6 - 2).filter(lambda a: a != (3 ** 6 - 1) // 2)


@settings(max_examples=300, deadline=None)
@given(residues_n6)
def test_run_sum_and_balance(a):
    assert check_run_sum(a, 6)
    assert check_run_balance(a, 6)


@settings(max_examples=300, deadline=None)
@given(residues_n6)
def test_run_sum_is_rotation_independent(a):
    Q = 3 ** 6 - 1
    assert check_run_sum((3 * a) % Q, 6) == check_run_sum(a, 6)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 3 ** 6 - 2), st.integers(0, 5))
def test_add_two_delta(a, i):
    assert check_add_two_delta(a, i, 6)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 3 ** 7 - 2), st.integers(0, 6))
def test_shift_congruence(j, i):
    assert check_shift_congruence(j, i, 7)


@settings(max_examples=200, deadline=None)
@given(residues_n6)
def test_one_digit_edits(a):
    for edit in one_digit_edits(a, 6):
        assert check_one_digit_delta(a, edit, 6)


def test_one_digit_edit_domains():
    # 42 = 1120: b_1 = R_{2,2}, b_0 = R_{0,0}
    with pytest.raises(LemmaDomainError):
        check_one_digit_delta(42, OneDigitEdit(1, 1), 4)
    with pytest.raises(LemmaDomainError):
        check_one_digit_delta(42, OneDigitEdit(3, 5), 4)
    assert check_one_digit_delta(42, OneDigitEdit(3, 1), 4)
    assert check_one_digit_delta(42, OneDigitEdit(4, 1), 4)
    cases = {(e.case, e.k) for e in one_digit_edits(42, 4)}
    assert {(2, 1), (3, 1), (4, 1)} <= cases


def test_case_patterns():
    assert matches_case_patterns(12, 5) == ["I"]      # 00110
    assert matches_case_patterns(15, 5) == ["II"]     # 00120
    assert matches_case_patterns(3, 5) == ["III"]     # 00010
    assert matches_case_patterns(0, 5) == []
