"""
Decimation-Hadamard transform module for the ternary DHT toolkit
Exact Hadamard, first/second-order multiplexing DHT spectra over GF(3^n),
realizable-pair detection and the weight-based realization formula

Spectra are indexed by the integer code of lambda (all q field elements, zero included)
and hold Eisenstein values as two parallel int64 arrays.
"""

from math import gcd
from typing import Dict, List, Optional, Tuple

import numpy as np

from console import log
from eisenstein import (
    Eisenstein,
    check_array_bound,
    conj_arrays,
    norm_sq_array,
    omega_arrays,
    q_omega_exponents,
    rotate_arrays,
)
from field import ElementLike, FieldContext, build_field, coset_of, elem_pow
from weights import lin_exponent, lin_multiplier, modulus, sigma, weight_criterion


class NotRealizableError(ValueError):
    """(v, t) fails the weight criterion"""


class CalibrationMismatchError(ValueError):
    """Neither unit reproduces the exact realization table"""


class RealizationFieldError(ArithmeticError):
    """The realization formula produced an element outside the prime field"""


def trace_function(ctx: FieldContext) -> np.ndarray:
    return ctx.trace_table.copy()


def lin_function(ctx: FieldContext) -> np.ndarray:
    """x -> Tr(x) + Tr(x^{2*3^m+1})"""
    codes = np.arange(ctx.q, dtype=np.int64)
    powered = ctx.pow_codes(codes, lin_exponent(ctx.n))
    table = ctx.trace_table.astype(np.int64) + ctx.trace_table[powered].astype(np.int64)
    return (table % 3).astype(np.uint8)


def constant_function(ctx: FieldContext, c: int = 0) -> np.ndarray:
    return np.full(ctx.q, c % 3, dtype=np.uint8)


def lin_pair(n: int) -> Tuple[int, int]:
    """(2(3^{m+1}-1), (3^n+1)/4)"""
    return 2 * lin_multiplier(n), (3 ** n + 1) // 4


class Spectrum:
    """Exact transform values indexed by lambda code"""

    def __init__(self, ctx: FieldContext, a: np.ndarray, b: np.ndarray, params: Optional[Dict] = None):
        if a.shape != (ctx.q,) or b.shape != (ctx.q,):
            raise ValueError(f"spectrum needs exactly {ctx.q} entries")
        self.ctx = ctx
        self.a = a
        self.b = b
        self.params = params or {}

    def __len__(self) -> int:
        return self.ctx.q

    def value(self, lam: ElementLike) -> Eisenstein:
        i = int(lam)
        return Eisenstein(int(self.a[i]), int(self.b[i]))

    def __getitem__(self, lam: ElementLike) -> Eisenstein:
        return self.value(lam)

    def norm_sq(self) -> np.ndarray:
        return norm_sq_array(self.a, self.b)

    def omega_exponents(self) -> np.ndarray:
        """k where value == q w^k, -1 elsewhere"""
        return q_omega_exponents(self.a, self.b, self.ctx.q)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Spectrum):
            return NotImplemented
        return bool(np.array_equal(self.a, other.a) and np.array_equal(self.b, other.b))


def spectral_energy(spectrum: Spectrum) -> int:
    """Exact sum of normSq over all lambda"""
    values = spectrum.norm_sq()
    if values.dtype != object and spectrum.ctx.q ** 3 >= 2 ** 62:
        values = values.astype(object)
    return int(values.sum())


def spectrum_rows(spectrum: Spectrum) -> List[Dict]:
    exps = spectrum.omega_exponents()
    return [
        {
            "lambda": i,
            "a": int(spectrum.a[i]),
            "b": int(spectrum.b[i]),
            "k": int(exps[i]) if exps[i] >= 0 else None,
        }
        for i in range(spectrum.ctx.q)
    ]


_PAIRING_CACHE: Dict[Tuple[int, Tuple[int, ...]], np.ndarray] = {}


def _pairing_index(ctx: FieldContext) -> np.ndarray:
    """
    For every lambda, the code of the coordinate vector u with Tr(lambda x) = u . c_x

    u = M c_lambda with the trace-form Gram matrix M_kl = Tr(alpha^{k+l}).
    """
    key = (ctx.n, tuple(ctx.modulus))
    cached = _PAIRING_CACHE.get(key)
    if cached is not None:
        return cached
    n = ctx.n
    gram = np.zeros((n, n), dtype=np.int64)
    for k in range(n):
        for l in range(n):
            gram[k, l] = ctx.trace_table[ctx.exp_table[(k + l) % ctx.order]]
    coords = ctx.digits.astype(np.int64)
    dual = np.zeros(ctx.q, dtype=np.int64)
    for k in range(n):
        coord = (coords @ gram[k]) % 3
        dual += coord * ctx.powers[k]
    _PAIRING_CACHE[key] = dual
    return dual


def _ternary_walsh(a: np.ndarray, b: np.ndarray, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """W(u) = sum over c in (Z_3)^n of w^{u.c} h(c), codes little-endian"""
    a = a.reshape((3,) * n)
    b = b.reshape((3,) * n)
    for axis in range(n):
        a0, a1, a2 = (np.take(a, i, axis=axis) for i in range(3))
        b0, b1, b2 = (np.take(b, i, axis=axis) for i in range(3))

        r1a, r1b = rotate_arrays(a1, b1, 1)
        r2a, r2b = rotate_arrays(a2, b2, 2)
        s1a, s1b = rotate_arrays(a1, b1, 2)
        s2a, s2b = rotate_arrays(a2, b2, 1)

        a = np.stack([a0 + a1 + a2, a0 + r1a + r2a, a0 + s1a + s2a], axis=axis)
        b = np.stack([b0 + b1 + b2, b0 + r1b + r2b, b0 + s1b + s2b], axis=axis)
    return a.reshape(-1), b.reshape(-1)


def additive_transform(ctx: FieldContext, a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """S(lambda) = sum_x w^{Tr(lambda x)} h(x) for h given as (a, b) arrays over x codes"""
    check_array_bound(a, b)
    wa, wb = _ternary_walsh(a.astype(np.int64), b.astype(np.int64), ctx.n)
    dual = _pairing_index(ctx)
    return wa[dual], wb[dual]


def hadamard(ctx: FieldContext, f: np.ndarray) -> Spectrum:
    """f^(lambda) = sum_x w^{Tr(lambda x) - f(x)}"""
    a, b = omega_arrays(-np.asarray(f, dtype=np.int64))
    sa, sb = additive_transform(ctx, a, b)
    return Spectrum(ctx, sa, sb, {"transform": "hadamard"})


def _decimated_values(ctx: FieldContext, f: np.ndarray, v: int, gamma: ElementLike) -> np.ndarray:
    """f(gamma x^v) for every x code"""
    if int(gamma) == 0:
        raise ValueError("gamma must be nonzero")
    codes = np.arange(ctx.q, dtype=np.int64)
    args = ctx.mul_codes(int(gamma), ctx.pow_codes(codes, v))
    return np.asarray(f, dtype=np.int64)[args]


def first_order_mdht(ctx: FieldContext, f: np.ndarray, v: int, gamma: ElementLike = 1) -> Spectrum:
    """f^(v)(lambda, gamma) = sum_x w^{Tr(lambda x) - f(gamma x^v)}, fast path"""
    a, b = omega_arrays(-_decimated_values(ctx, f, v, gamma))
    sa, sb = additive_transform(ctx, a, b)
    return Spectrum(ctx, sa, sb, {"transform": "first", "v": v, "gamma": int(gamma)})


fast_first_order_mdht = first_order_mdht


def naive_first_order_mdht(ctx: FieldContext, f: np.ndarray, v: int, gamma: ElementLike = 1) -> Spectrum:
    """Same contract as first_order_mdht, evaluated lambda by lambda from the definition"""
    fvals = _decimated_values(ctx, f, v, gamma)
    xs = np.arange(ctx.q, dtype=np.int64)
    a = np.zeros(ctx.q, dtype=np.int64)
    b = np.zeros(ctx.q, dtype=np.int64)
    for lam in range(ctx.q):
        tr = ctx.trace_table[ctx.mul_codes(lam, xs)].astype(np.int64)
        counts = np.bincount((tr - fvals) % 3, minlength=3)
        a[lam] = counts[0] - counts[2]
        b[lam] = counts[1] - counts[2]
    return Spectrum(ctx, a, b, {"transform": "first-naive", "v": v, "gamma": int(gamma)})


def second_order_mdht(ctx: FieldContext, f: np.ndarray, v: int, t: int, gamma: ElementLike = 1,
                      first: Optional[Spectrum] = None) -> Spectrum:
    """f^(v,t)(lambda, gamma) = sum_y w^{Tr(lambda y)} conj(f^(v)(y^t, gamma))"""
    if first is None:
        first = first_order_mdht(ctx, f, v, gamma)
    ys = np.arange(ctx.q, dtype=np.int64)
    idx = ctx.pow_codes(ys, t)
    ga, gb = conj_arrays(first.a[idx], first.b[idx])
    sa, sb = additive_transform(ctx, ga, gb)
    return Spectrum(ctx, sa, sb, {"transform": "second", "v": v, "t": t, "gamma": int(gamma)})


class RealizablePairReport:
    """
    Exact realizability verdict for (v, t)

    g_table[r, lam] is k with f^(v,t)(lam, alpha^r) = q w^k, for every
    gamma representative alpha^r, 0 <= r < d.
    """

    def __init__(self, n: int, v: int, t: int, d: int):
        self.n = n
        self.v = v
        self.t = t
        self.d = d
        self.gamma_reps: List[int] = list(range(d))
        self.realizable = False
        self.g_table: Optional[np.ndarray] = None
        self.witness: Optional[Dict] = None
        self.energies: List[int] = []

    def g(self, lam: ElementLike, r: int) -> int:
        if self.g_table is None:
            raise NotRealizableError(f"({self.v}, {self.t}) is not realizable")
        return int(self.g_table[r % self.d, int(lam)])

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "v": self.v,
            "t": self.t,
            "d": self.d,
            "gammaReps": self.gamma_reps,
            "realizable": self.realizable,
            "witness": self.witness,
            "energies": self.energies,
        }


def check_realizable(ctx: FieldContext, f: np.ndarray, v: int, t: int) -> RealizablePairReport:
    """Test every lambda and gamma = alpha^r, r < d, for values of the form q w^k"""
    d = gcd(v, ctx.order)
    report = RealizablePairReport(ctx.n, v, t, d)
    table = np.zeros((d, ctx.q), dtype=np.int8)

    for r in range(d):
        gamma = int(ctx.exp_table[r])
        spectrum = second_order_mdht(ctx, f, v, t, gamma)
        report.energies.append(spectral_energy(spectrum))
        exps = spectrum.omega_exponents()
        bad = np.flatnonzero(exps < 0)
        if bad.size:
            lam = int(bad[0])
            report.witness = {
                "lambda": lam,
                "gammaExponent": r,
                "value": [int(spectrum.a[lam]), int(spectrum.b[lam])],
            }
            log("DHT", f"(v={v}, t={t}) not realizable: witness lambda={lam}, gamma=alpha^{r}")
            return report
        table[r] = exps

    report.realizable = True
    report.g_table = table
    log("DHT", f"(v={v}, t={t}) realizable over {d} gamma classes")
    return report


def _equality_cosets(v: int, t: int, n: int):
    screen = weight_criterion(v, t, n)
    if not screen.realizable:
        raise NotRealizableError(f"({v}, {t}) fails the weight criterion at j={screen.first_violation}")
    Q = modulus(n)
    seen = set()
    cosets = []
    for j in screen.equality_set:
        coset = coset_of(Q, j)
        if coset.representative in seen:
            continue
        seen.add(coset.representative)
        j0 = coset.representative
        coeff = (-1) ** (j0 * v) * sigma(j0 * v * t, n) * sigma(-j0 * v, n) * sigma(j0, n)
        cosets.append((coset, coeff % 3))
    return cosets


def realization_table(ctx: FieldContext, v: int, t: int, unit: Optional[int] = None) -> np.ndarray:
    """
    Closed-form realization at every z = alpha^i:
    sum over equality cosets C of u * c_C * (sum of z^j for j in C)
    """
    if unit is None:
        unit = calibrated_unit(ctx.n)
    order = ctx.order
    i = np.arange(order, dtype=np.int64)
    total = np.zeros(order, dtype=np.int64)
    for coset, coeff in _equality_cosets(v, t, ctx.n):
        c = (coeff * unit) % 3
        if c == 0:
            continue
        part = np.zeros(order, dtype=np.int64)
        for j in coset.members:
            part = ctx.add_codes(part, ctx.exp_table[(i * j) % order])
        total = ctx.add_codes(total, ctx.scale_codes(part, c))
    if (total >= 3).any():
        bad = int(np.flatnonzero(total >= 3)[0])
        raise RealizationFieldError(f"realization at alpha^{bad} left the prime field")
    return total.astype(np.uint8)


def realization_formula(ctx: FieldContext, v: int, t: int, lam: ElementLike, gamma: ElementLike,
                        unit: Optional[int] = None) -> int:
    """g(lambda, gamma) from the weight criterion's equality set; g(0, gamma) = 0"""
    if int(lam) == 0:
        return 0
    if unit is None:
        unit = calibrated_unit(ctx.n)
    z = elem_pow(ctx, lam, v * t) * ctx.element(int(gamma))
    total = 0
    for coset, coeff in _equality_cosets(v, t, ctx.n):
        c = (coeff * unit) % 3
        part = 0
        for j in coset.members:
            part = ctx.add(part, elem_pow(ctx, z, j).code)
        total = ctx.add(total, int(ctx.scale_codes(part, c)))
    if total >= 3:
        raise RealizationFieldError(f"realization value {total} is not in F_3")
    return total


def table_matches_report(ctx: FieldContext, report: RealizablePairReport, table: np.ndarray) -> bool:
    """Compare a per-alpha^i realization table with the exact g_table at every (gamma, lambda)"""
    if report.g_table is None:
        return False
    lam_logs = ctx.log_table[1:]
    vt = report.v * report.t
    for r in range(report.d):
        z_exp = (r + vt * lam_logs) % ctx.order
        if not np.array_equal(report.g_table[r, 1:].astype(np.int64), table[z_exp].astype(np.int64)):
            return False
        if report.g_table[r, 0] != 0:
            return False
    return True


def calibrate_unit(ctx: FieldContext, report: RealizablePairReport) -> int:
    """The unit u in {1, 2} for which the closed form reproduces the exact table"""
    for unit in (1, 2):
        if table_matches_report(ctx, report, realization_table(ctx, report.v, report.t, unit)):
            return unit
    raise CalibrationMismatchError(f"no unit reproduces the realization of ({report.v}, {report.t}) at n={ctx.n}")


_UNIT_CACHE: Dict[int, int] = {}

# calibration pair per parity of n: the Lin pair at n = 3, the pair (2, 1) at n = 4
_CALIBRATION_CASES = {1: (3, None), 0: (4, (2, 1))}


def calibrated_unit(n: int = 3) -> int:
    """Unit for degree n, calibrated once per parity of n against the exact table"""
    parity = n % 2
    if parity not in _UNIT_CACHE:
        degree, pair = _CALIBRATION_CASES[parity]
        ctx = build_field(degree)
        v, t = pair or lin_pair(degree)
        report = check_realizable(ctx, trace_function(ctx), v, t)
        _UNIT_CACHE[parity] = calibrate_unit(ctx, report)
        log("DHT", f"realization unit for {'odd' if parity else 'even'} n calibrated to {_UNIT_CACHE[parity]}")
    return _UNIT_CACHE[parity]


def lin_trace_form(ctx: FieldContext) -> np.ndarray:
    """2Tr(z) + 2Tr(z^{2*3^m+1}) at every z = alpha^i"""
    i = np.arange(ctx.order, dtype=np.int64)
    z = ctx.exp_table
    zz = ctx.exp_table[(i * lin_exponent(ctx.n)) % ctx.order]
    total = 2 * ctx.trace_table[z].astype(np.int64) + 2 * ctx.trace_table[zz].astype(np.int64)
    return (total % 3).astype(np.uint8)


if __name__ == "__main__":
    ctx = build_field(3)
    f = trace_function(ctx)
    v, t = lin_pair(3)
    report = check_realizable(ctx, f, v, t)
    print(report.to_dict())
    print("unit:", calibrate_unit(ctx, report))
    print("matches 2Tr(z)+2Tr(z^7):", table_matches_report(ctx, report, lin_trace_form(ctx)))
