"""
Eisenstein integer module for the ternary DHT toolkit
Exact arithmetic in Z[w], w = exp(2 pi i / 3), for spectra and correlations

Values are pairs (a, b) meaning a + b*w. Multiplication uses w^2 = -1 - w.
"""

import math
import numbers
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

INT_BOUND = 2 ** 63 - 1


class EisensteinOverflow(ArithmeticError):
    """A coordinate left the signed 64-bit range"""


def _checked(value: int) -> int:
    if value > INT_BOUND or value < -INT_BOUND:
        raise EisensteinOverflow(f"coordinate {value} exceeds 64-bit bound")
    return value


class Eisenstein:
    """a + b*w with checked integer coordinates"""

    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0):
        self.a = _checked(int(a))
        self.b = _checked(int(b))

    def __add__(self, other: "Eisenstein") -> "Eisenstein":
        return Eisenstein(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "Eisenstein") -> "Eisenstein":
        return Eisenstein(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "Eisenstein":
        return Eisenstein(-self.a, -self.b)

    def __mul__(self, other) -> "Eisenstein":
        if isinstance(other, numbers.Integral):
            k = int(other)
            return Eisenstein(self.a * k, self.b * k)
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2, w^2 = -1 - w
        a, b, c, d = self.a, self.b, other.a, other.b
        return Eisenstein(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def conj(self) -> "Eisenstein":
        return Eisenstein(self.a - self.b, -self.b)

    def norm_sq(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def to_complex(self) -> complex:
        return complex(self.a - self.b / 2.0, self.b * math.sqrt(3.0) / 2.0)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def to_tuple(self) -> Tuple[int, int]:
        return (self.a, self.b)

    def __eq__(self, other) -> bool:
        if isinstance(other, Eisenstein):
            return self.a == other.a and self.b == other.b
        if isinstance(other, tuple) and len(other) == 2:
            return (self.a, self.b) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __repr__(self) -> str:
        return f"Eisenstein({self.a}, {self.b})"


ZERO = Eisenstein(0, 0)
ONE = Eisenstein(1, 0)
OMEGA = Eisenstein(0, 1)
OMEGA2 = Eisenstein(-1, -1)

_OMEGA_POWERS = (ONE, OMEGA, OMEGA2)


def omega_pow(k: int) -> Eisenstein:
    return _OMEGA_POWERS[k % 3]


def add(x: Eisenstein, y: Eisenstein) -> Eisenstein:
    return x + y


def sub(x: Eisenstein, y: Eisenstein) -> Eisenstein:
    return x - y


def mul(x: Eisenstein, y: Eisenstein) -> Eisenstein:
    return x * y


def conj(x: Eisenstein) -> Eisenstein:
    """Image under w -> w^2"""
    return x.conj()


def norm_sq(x: Eisenstein) -> int:
    return x.norm_sq()


def is_q_omega_power(x: Eisenstein, q: int) -> Optional[int]:
    """k with x == q * w^k, or None"""
    if (x.a, x.b) == (q, 0):
        return 0
    if (x.a, x.b) == (0, q):
        return 1
    if (x.a, x.b) == (-q, -q):
        return 2
    return None


def omega_sum_counts(counts: Sequence[int]) -> Eisenstein:
    """sum of counts[k] copies of w^k for k = 0, 1, 2"""
    c0, c1, c2 = (int(c) for c in counts)
    return Eisenstein(c0 - c2, c1 - c2)


def omega_sum(residues: Iterable[int]) -> Eisenstein:
    counts = np.bincount(np.asarray(list(residues), dtype=np.int64) % 3, minlength=3)
    return omega_sum_counts(counts)


_OMEGA_A = np.array([1, 0, -1], dtype=np.int64)
_OMEGA_B = np.array([0, 1, -1], dtype=np.int64)


def omega_arrays(residues) -> Tuple[np.ndarray, np.ndarray]:
    """Elementwise w^r for an array of residues"""
    r = np.asarray(residues, dtype=np.int64) % 3
    return _OMEGA_A[r], _OMEGA_B[r]


def rotate_arrays(a: np.ndarray, b: np.ndarray, k: int) -> Tuple[np.ndarray, np.ndarray]:
    """Multiply every entry by w^k"""
    k %= 3
    if k == 0:
        return a, b
    if k == 1:
        return -b, a - b
    return b - a, -a


def conj_arrays(a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    return a - b, -b


def check_array_bound(a: np.ndarray, b: np.ndarray) -> None:
    if a.size and max(int(np.abs(a).max()), int(np.abs(b).max())) >= INT_BOUND // 4:
        raise EisensteinOverflow("array coordinates too close to the 64-bit bound")


def norm_sq_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """a^2 - ab + b^2 elementwise; falls back to Python ints when squares could overflow"""
    peak = max(int(np.abs(a).max()), int(np.abs(b).max())) if a.size else 0
    if peak >= 2 ** 30:
        a = a.astype(object)
        b = b.astype(object)
    return a * a - a * b + b * b


def q_omega_exponents(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    """Per entry: k where (a, b) == q * w^k, else -1"""
    out = np.full(a.shape, -1, dtype=np.int64)
    out[(a == q) & (b == 0)] = 0
    out[(a == 0) & (b == q)] = 1
    out[(a == -q) & (b == -q)] = 2
    return out


if __name__ == "__main__":
    print("w*w =", OMEGA * OMEGA)
    print("conj(2+w) =", Eisenstein(2, 1).conj())
    print("normSq(27) =", Eisenstein(27, 0).norm_sq())
