"""
Sequence module for the ternary DHT toolkit
m-sequences, Lin sequences, sequences realized from a DHT pair, exact autocorrelation
and shift/decimation equivalence
"""

from math import gcd
from multiprocessing import Pool
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from console import log
from dht import NotRealizableError, RealizablePairReport, lin_function
from eisenstein import Eisenstein, omega_sum_counts
from field import FieldContext

FAMILIES = ("m", "lin", "dhtRealized", "custom")


class NoSolutionError(ValueError):
    """The congruence that picks lambda for an index has no solution"""


class RealizationInconsistencyError(ValueError):
    """Two solutions of the lambda congruence disagree on the realization"""


class TernarySequence:
    """One period of a sequence over {0,1,2}, N = 3^n - 1"""

    def __init__(self, n: int, digits, family: str = "custom", provenance: Optional[Dict] = None):
        digits = np.asarray(digits, dtype=np.uint8)
        if digits.shape != (3 ** n - 1,):
            raise ValueError(f"expected {3 ** n - 1} digits for n={n}, got {digits.size}")
        if digits.size and digits.max() > 2:
            raise ValueError("digits must lie in {0,1,2}")
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        self.n = n
        self.digits = digits
        self.family = family
        self.provenance = provenance or {}

    @property
    def period(self) -> int:
        return self.digits.size

    @classmethod
    def from_string(cls, n: int, text: str, family: str = "custom",
                    provenance: Optional[Dict] = None) -> "TernarySequence":
        return cls(n, np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0"), family, provenance)

    def to_string(self) -> str:
        return (self.digits + ord("0")).tobytes().decode("ascii")

    def scaled(self, c: int) -> "TernarySequence":
        return TernarySequence(self.n, (self.digits.astype(np.int64) * c) % 3, self.family, dict(self.provenance))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TernarySequence):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.digits, other.digits))

    def __repr__(self) -> str:
        preview = self.to_string()
        if len(preview) > 32:
            preview = preview[:32] + "..."
        return f"TernarySequence(n={self.n}, family={self.family}, {preview})"


def m_sequence(ctx: FieldContext) -> TernarySequence:
    """s_i = Tr(alpha^i)"""
    digits = ctx.trace_table[ctx.exp_table]
    return TernarySequence(ctx.n, digits, "m", {"modulus": ctx.modulus})


def lin_sequence(ctx: FieldContext) -> TernarySequence:
    """s_i = Tr(alpha^i + alpha^{(2*3^m+1) i}), n odd"""
    digits = lin_function(ctx)[ctx.exp_table]
    return TernarySequence(ctx.n, digits, "lin", {"modulus": ctx.modulus})


def build_realized_sequence(report: RealizablePairReport, ctx: FieldContext) -> TernarySequence:
    """
    t_i = g(lambda, gamma) with alpha^i = gamma lambda^{vt}

    gamma = alpha^r with r = i mod d, lambda = alpha^k with k the least
    nonnegative solution of vt k = i - r (mod N).
    """
    if not report.realizable or report.g_table is None:
        raise NotRealizableError(f"({report.v}, {report.t}) is not realizable")
    N = ctx.order
    d = report.d
    vt = (report.v * report.t) % N
    step = N // d
    if vt % d != 0:
        raise NoSolutionError(f"d={d} does not divide vt={vt}")
    try:
        inverse = pow((vt // d) % step, -1, step)
    except ValueError:
        raise NoSolutionError(f"{vt} k = i - r has no solution mod {N}") from None

    i = np.arange(N, dtype=np.int64)
    r = i % d
    k = (((i - r) // d) * inverse) % step
    if not np.array_equal((vt * k) % N, (i - r) % N):
        raise NoSolutionError("lambda congruence bookkeeping failed")

    table = report.g_table.astype(np.int64)
    digits = table[r, ctx.exp_table[k]]
    if step < N:
        other = table[r, ctx.exp_table[(k + step) % N]]
        if not np.array_equal(digits, other):
            bad = int(np.flatnonzero(digits != other)[0])
            raise RealizationInconsistencyError(f"index {bad} depends on the chosen solution")

    log("SEQ", f"realized sequence from (v={report.v}, t={report.t}) at n={ctx.n}")
    return TernarySequence(ctx.n, digits, "dhtRealized",
                           {"modulus": ctx.modulus, "v": report.v, "t": report.t})


def _shift_counts(digits: np.ndarray, tau: int) -> np.ndarray:
    diff = (np.roll(digits, -tau).astype(np.int8) - digits.astype(np.int8)) % 3
    return np.bincount(diff, minlength=3)


def autocorrelation(seq: TernarySequence, tau: int) -> Eisenstein:
    """C(tau) = sum_i w^{s_{i+tau} - s_i}"""
    return omega_sum_counts(_shift_counts(seq.digits, tau % seq.period))


_worker_digits: Optional[np.ndarray] = None


def _init_worker(digits: np.ndarray):
    global _worker_digits
    _worker_digits = digits


def _profile_chunk(bounds: Tuple[int, int]) -> Tuple[List[int], List[int]]:
    start, stop = bounds
    a, b = [], []
    for tau in range(start, stop):
        c = _shift_counts(_worker_digits, tau)
        a.append(int(c[0] - c[2]))
        b.append(int(c[1] - c[2]))
    return a, b


def autocorrelation_profile(seq: TernarySequence, jobs: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    """C(tau) for every shift, as coordinate arrays (a, b)"""
    N = seq.period
    chunk = max(1, -(-N // (jobs * 4)))
    bounds = [(s, min(N, s + chunk)) for s in range(0, N, chunk)]
    if jobs <= 1:
        _init_worker(seq.digits)
        parts = [_profile_chunk(bd) for bd in bounds]
    else:
        with Pool(processes=jobs, initializer=_init_worker, initargs=(seq.digits,)) as pool:
            parts = pool.map(_profile_chunk, bounds)
    a = np.array([x for part in parts for x in part[0]], dtype=np.int64)
    b = np.array([x for part in parts for x in part[1]], dtype=np.int64)
    return a, b


def is_ideal_two_level(seq: TernarySequence) -> bool:
    """C(tau) == -1 for every 0 < tau < N"""
    for tau in range(1, seq.period):
        c = _shift_counts(seq.digits, tau)
        if c[0] - c[2] != -1 or c[1] != c[2]:
            return False
    return True


def omega_sum(seq: TernarySequence) -> Eisenstein:
    return omega_sum_counts(balance(seq))


def balance(seq: TernarySequence) -> List[int]:
    """Occurrences of 0, 1, 2 in one period"""
    return [int(c) for c in np.bincount(seq.digits, minlength=3)]


def decimate(seq: TernarySequence, e: int) -> TernarySequence:
    """u_i = s_{e i mod N}"""
    N = seq.period
    idx = (np.arange(N, dtype=np.int64) * e) % N
    return TernarySequence(seq.n, seq.digits[idx], seq.family, dict(seq.provenance, decimation=e))


def iter_shift_decimations(s1: TernarySequence, s2: TernarySequence) -> Iterator[Tuple[int, int]]:
    """
    Every (tau, e) with gcd(e, N) = 1 and s1[i] == s2[(e i + tau) mod N],
    ordered by e then tau
    """
    if s1.period != s2.period:
        raise ValueError("sequences must share a period")
    N = s1.period
    target = s1.digits.tobytes()
    for e in range(1, N):
        if gcd(e, N) != 1:
            continue
        dec = s2.digits[(np.arange(N, dtype=np.int64) * e) % N].tobytes()
        haystack = dec + dec[:-1]
        # s2[e i + tau] = dec[i + tau e^{-1}]
        shifts = []
        pos = haystack.find(target)
        while pos != -1:
            shifts.append(pos)
            pos = haystack.find(target, pos + 1)
        for tau in sorted((s * e) % N for s in shifts):
            yield tau, e


def equivalent_up_to_shift_decimation(s1: TernarySequence, s2: TernarySequence) -> Optional[Tuple[int, int]]:
    """First (tau, e) in (e, tau) order, or None"""
    return next(iter_shift_decimations(s1, s2), None)


if __name__ == "__main__":
    from field import build_field

    ctx = build_field(3)
    lin = lin_sequence(ctx)
    print(lin, "ideal:", is_ideal_two_level(lin))
    print("m-sequence balance:", balance(m_sequence(ctx)))
