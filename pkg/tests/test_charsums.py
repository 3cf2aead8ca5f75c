import numpy as np
import pytest

from charsums import (
    STRICT_TOL,
    check_conjugate_symmetry,
    check_gauss_identities,
    check_power_sum,
    check_trace_expansion,
    exact_power_sum,
    gauss_sum,
    gauss_sums,
)
from weights import BadVError


def test_trivial_character(gf3):
    assert abs(gauss_sum(gf3, 0) - (-1)) < 1e-9


def test_nontrivial_norms(gf3):
    for k in range(1, 26):
        assert abs(abs(gauss_sum(gf3, k)) ** 2 - 27) < 1e-6


def test_frobenius_invariance(gf3):
    for k in range(26):
        assert abs(gauss_sum(gf3, (3 * k) % 26) - gauss_sum(gf3, k)) < 1e-9


def test_fft_matches_direct_sums(gf3):
    sums = gauss_sums(gf3)
    direct = np.array([gauss_sum(gf3, k) for k in range(26)])
    assert np.allclose(sums, direct, atol=1e-9)


def test_trace_expansion(gf3):
    assert check_trace_expansion(gf3, 1)
    assert all(check_trace_expansion(gf3, int(y)) for y in gf3.exp_table)
    with pytest.raises(ValueError):
        check_trace_expansion(gf3, 0)


def test_power_sums(gf3):
    assert check_power_sum(gf3, 16, 1)
    assert check_power_sum(gf3, 13, gf3.alpha)
    with pytest.raises(BadVError):
        check_power_sum(gf3, 5, 1)


def test_exact_power_sum_is_real_count_for_trivial_case(gf3):
    # v = q - 1 sends every nonzero x to 1
    assert exact_power_sum(gf3, 26, 1) == (26, 0)


@pytest.mark.parametrize("n", [3, 5])
def test_conjugate_symmetry(n):
    from field import build_field

    ctx = build_field(n)
    sums = gauss_sums(ctx)
    assert all(check_conjugate_symmetry(ctx, k, sums=sums) for k in range(ctx.order))


def test_identity_counters_all_pass(gf3):
    counters = check_gauss_identities(gf3)
    assert set(counters) == {"trivial", "norm", "frobenius", "conjugate", "traceExpansion", "directMatchesFft"}
    for name, c in counters.items():
        assert c["passed"] == c["total"], name


def test_trivial_and_frobenius_hold_at_strict_tolerance_q243(gf5):
    sums = gauss_sums(gf5)
    assert abs(sums[0] + 1) <= 1e-9
    ks = np.arange(gf5.order)
    assert np.all(np.abs(sums[(3 * ks) % gf5.order] - sums) <= 1e-9)

    counters = check_gauss_identities(gf5, tol=1e-6)
    assert counters["trivial"] == {"passed": 1, "total": 1}
    assert counters["frobenius"] == {"passed": 242, "total": 242}
    assert all(c["passed"] == c["total"] for c in counters.values())


def test_strict_identities_ignore_a_looser_tolerance(gf3, monkeypatch):
    import charsums

    shifted = gauss_sums(gf3).copy()
    shifted[0] += 1e-7
    shifted[1] += 1e-7
    monkeypatch.setattr(charsums, "gauss_sums", lambda ctx: shifted)
    counters = check_gauss_identities(gf3, tol=1e-6)
    assert STRICT_TOL == 1e-9
    assert counters["trivial"]["passed"] == 0
    assert counters["frobenius"]["passed"] == 24
