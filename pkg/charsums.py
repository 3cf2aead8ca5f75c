"""
Character sum module for the ternary DHT toolkit
Floating-point Gauss sums over GF(3^n) used as numeric sanity rails for the exact modules

chi^k is the alpha-indexed character chi^k(alpha^j) = exp(2 pi i j k / (q-1)), chi^k(0) = 0,
and psi(x) = w^{Tr(x)}.
"""

from math import gcd
from typing import Dict, Optional

import numpy as np

from eisenstein import Eisenstein
from field import ElementLike, FieldContext
from weights import BadVError

DEFAULT_TOL = 1e-6
# G(chi^0) = -1 and the Frobenius identity are held to this bound at every tol
STRICT_TOL = 1e-9


def _psi_on_powers(ctx: FieldContext) -> np.ndarray:
    """psi(alpha^j) for j in [0, q-1)"""
    tr = ctx.trace_table[ctx.exp_table].astype(np.float64)
    return np.exp(2j * np.pi * tr / 3.0)


def _chi_values(ctx: FieldContext, k: int) -> np.ndarray:
    j = np.arange(ctx.order, dtype=np.int64)
    return np.exp(2j * np.pi * ((j * (k % ctx.order)) % ctx.order) / ctx.order)


def gauss_sum(ctx: FieldContext, k: int) -> complex:
    """G(chi^k) by direct summation over the nonzero elements"""
    return complex(np.sum(_psi_on_powers(ctx) * _chi_values(ctx, k)))


def gauss_sums(ctx: FieldContext) -> np.ndarray:
    """All G(chi^k), k in [0, q-1), in one inverse FFT"""
    psi = _psi_on_powers(ctx)
    return np.fft.ifft(psi) * ctx.order


def _chi_conj_at(ctx: FieldContext, y: ElementLike) -> np.ndarray:
    """conj(chi^k(y)) for every k"""
    j = ctx.log(int(y))
    k = np.arange(ctx.order, dtype=np.int64)
    return np.exp(-2j * np.pi * ((j * k) % ctx.order) / ctx.order)


def check_trace_expansion(ctx: FieldContext, y: ElementLike, tol: float = DEFAULT_TOL,
                          sums: Optional[np.ndarray] = None) -> bool:
    """w^{Tr(y)} == (1/(q-1)) sum_k G(chi^k) conj(chi^k(y))"""
    if int(y) == 0:
        raise ValueError("y must be nonzero")
    if sums is None:
        sums = gauss_sums(ctx)
    lhs = np.exp(2j * np.pi * int(ctx.trace_table[int(y)]) / 3.0)
    rhs = np.sum(sums * _chi_conj_at(ctx, y)) / ctx.order
    return bool(abs(lhs - rhs) <= tol)


def exact_power_sum(ctx: FieldContext, v: int, gamma: ElementLike) -> Eisenstein:
    """sum over nonzero x of w^{Tr(gamma x^v)}, exactly"""
    xs = ctx.exp_table
    tr = ctx.trace_table[ctx.mul_codes(int(gamma), ctx.pow_codes(xs, v))]
    c = np.bincount(tr, minlength=3)
    return Eisenstein(int(c[0] - c[2]), int(c[1] - c[2]))


def check_power_sum(ctx: FieldContext, v: int, gamma: ElementLike, tol: float = DEFAULT_TOL,
                    sums: Optional[np.ndarray] = None) -> bool:
    """sum_{x != 0} w^{Tr(gamma x^v)} == sum over chi^d = 1 of G(chi) conj(chi(gamma))"""
    d = gcd(v, ctx.order)
    if d == 1:
        raise BadVError(f"gcd({v}, {ctx.order}) == 1")
    if int(gamma) == 0:
        raise ValueError("gamma must be nonzero")
    if sums is None:
        sums = gauss_sums(ctx)
    ks = np.arange(d, dtype=np.int64) * (ctx.order // d)
    rhs = np.sum(sums[ks] * _chi_conj_at(ctx, gamma)[ks])
    lhs = exact_power_sum(ctx, v, gamma).to_complex()
    return bool(abs(lhs - rhs) <= tol)


def check_conjugate_symmetry(ctx: FieldContext, k: int, tol: float = DEFAULT_TOL,
                             sums: Optional[np.ndarray] = None) -> bool:
    """G(conj chi) == chi(-1) conj(G(chi)), chi^k(-1) = (-1)^k"""
    if sums is None:
        sums = gauss_sums(ctx)
    k %= ctx.order
    sign = -1.0 if k % 2 else 1.0
    return bool(abs(sums[(-k) % ctx.order] - sign * np.conj(sums[k])) <= tol)


def check_gauss_identities(ctx: FieldContext, tol: float = DEFAULT_TOL) -> Dict[str, Dict[str, int]]:
    """Pass counters for every Gauss-sum identity at this field size"""
    q, order = ctx.q, ctx.order
    sums = gauss_sums(ctx)
    counters: Dict[str, Dict[str, int]] = {}

    def tally(name: str, passed: int, total: int):
        counters[name] = {"passed": int(passed), "total": int(total)}

    strict = min(tol, STRICT_TOL)
    tally("trivial", abs(sums[0] + 1) <= strict, 1)

    nontrivial = sums[1:]
    tally("norm", np.sum(np.abs(np.abs(nontrivial) ** 2 - q) <= tol), order - 1)

    ks = np.arange(order)
    tally("frobenius", np.sum(np.abs(sums[(3 * ks) % order] - sums) <= strict), order)

    tally("conjugate", sum(check_conjugate_symmetry(ctx, k, tol, sums) for k in range(order)), order)

    tally("traceExpansion",
          sum(check_trace_expansion(ctx, int(y), tol, sums) for y in ctx.exp_table), order)

    direct = np.array([gauss_sum(ctx, k) for k in range(min(order, 32))])
    tally("directMatchesFft", np.sum(np.abs(direct - sums[:direct.size]) <= tol), direct.size)

    return counters


if __name__ == "__main__":
    from field import build_field

    ctx = build_field(3)
    print("G(chi^0) =", gauss_sum(ctx, 0))
    print(check_gauss_identities(ctx))
