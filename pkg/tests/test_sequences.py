import numpy as np
import pytest

from dht import NotRealizableError, check_realizable, lin_pair, trace_function
from eisenstein import norm_sq
from field import build_field
from sequences import (
    TernarySequence,
    autocorrelation,
    autocorrelation_profile,
    balance,
    build_realized_sequence,
    decimate,
    equivalent_up_to_shift_decimation,
    is_ideal_two_level,
    iter_shift_decimations,
    lin_sequence,
    m_sequence,
    omega_sum,
)


def test_m_sequence_degree_one(gf1):
    assert m_sequence(gf1).to_string() == "12"


def test_m_sequence_balance(gf3):
    seq = m_sequence(gf3)
    assert seq.period == 26
    assert balance(seq) == [8, 9, 9]


@pytest.mark.parametrize("n", [3, 5])
def test_generated_families_are_balanced(n):
    ctx = build_field(n)
    expected = [3 ** (n - 1) - 1, 3 ** (n - 1), 3 ** (n - 1)]
    assert balance(m_sequence(ctx)) == expected
    assert balance(lin_sequence(ctx)) == expected


def test_lin_sequence_first_digit(gf3, gf5):
    # s_0 = Tr(2) = 2n mod 3
    assert lin_sequence(gf3).digits[0] == 0
    assert lin_sequence(gf5).digits[0] == 1


def test_autocorrelation_examples(gf3):
    lin = lin_sequence(gf3)
    assert autocorrelation(lin, 0) == (26, 0)
    assert all(autocorrelation(lin, tau) == (-1, 0) for tau in range(1, 26))
    constant = TernarySequence(3, np.ones(26, dtype=np.uint8))
    assert autocorrelation(constant, 5) == (26, 0)


def test_two_level_verdicts(gf3, gf5):
    assert is_ideal_two_level(lin_sequence(gf3))
    assert is_ideal_two_level(lin_sequence(gf5))
    assert is_ideal_two_level(m_sequence(gf5))
    assert not is_ideal_two_level(TernarySequence(3, np.zeros(26, dtype=np.uint8)))


@pytest.mark.slow
@pytest.mark.parametrize("n", [7, 9])
def test_lin_sequence_two_level_large(n):
    assert is_ideal_two_level(lin_sequence(build_field(n)))


def test_omega_sum_norm_matches_correlation_total(gf3, gf5):
    for seq in (m_sequence(gf3), lin_sequence(gf3), lin_sequence(gf5)):
        a, b = autocorrelation_profile(seq)
        assert int(a.sum()) == 1 and int(b.sum()) == 0
        assert norm_sq(omega_sum(seq)) == 1


def test_profile_is_independent_of_job_count(gf3):
    seq = lin_sequence(gf3)
    single = autocorrelation_profile(seq, jobs=1)
    pooled = autocorrelation_profile(seq, jobs=2)
    assert np.array_equal(single[0], pooled[0])
    assert np.array_equal(single[1], pooled[1])


def test_realized_sequence_from_lin_pair(gf3):
    report = check_realizable(gf3, trace_function(gf3), 16, 7)
    seq = build_realized_sequence(report, gf3)
    assert seq.family == "dhtRealized"
    assert seq.provenance["v"] == 16 and seq.provenance["t"] == 7
    assert seq.digits[0] == 0
    assert is_ideal_two_level(seq)
    assert equivalent_up_to_shift_decimation(lin_sequence(gf3), seq.scaled(2)) is not None


def test_realized_sequence_n5(gf5):
    v, t = lin_pair(5)
    seq = build_realized_sequence(check_realizable(gf5, trace_function(gf5), v, t), gf5)
    assert is_ideal_two_level(seq)


def test_realized_sequence_needs_realizable_pair(gf3):
    report = check_realizable(gf3, trace_function(gf3), 2, 23)
    with pytest.raises(NotRealizableError):
        build_realized_sequence(report, gf3)


def test_equivalence_search(gf3):
    m = m_sequence(gf3)
    assert equivalent_up_to_shift_decimation(m, m) == (0, 1)
    assert (0, 3) in set(iter_shift_decimations(decimate(m, 3), m))
    zero = TernarySequence(3, np.zeros(26, dtype=np.uint8))
    assert equivalent_up_to_shift_decimation(lin_sequence(gf3), zero) is None


def test_equivalence_finds_shift(gf3):
    m = m_sequence(gf3)
    shifted = TernarySequence(3, np.roll(m.digits, -5))
    # shifted[i] = m[i + 5]
    assert (5, 1) in set(iter_shift_decimations(shifted, m))
    for tau, e in iter_shift_decimations(shifted, m):
        idx = (e * np.arange(26) + tau) % 26
        assert np.array_equal(shifted.digits, m.digits[idx])


def test_sequence_validation():
    with pytest.raises(ValueError):
        TernarySequence(3, [0] * 25)
    with pytest.raises(ValueError):
        TernarySequence(1, [0, 3])
    with pytest.raises(ValueError):
        TernarySequence(1, [0, 1], family="gold")


def test_string_roundtrip_and_scaling(gf3):
    seq = lin_sequence(gf3)
    assert TernarySequence.from_string(3, seq.to_string()) == seq
    assert seq.scaled(2).scaled(2) == seq
