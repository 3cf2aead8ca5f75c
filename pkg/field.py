"""
Finite field module for the ternary DHT toolkit
Builds GF(3^n) from a primitive polynomial, with exp/log tables, trace and cyclotomic cosets

Elements are handled as integer codes: the coefficient vector (c_0, ..., c_{n-1})
of the polynomial basis is stored as c_0 + 3 c_1 + ... + 3^{n-1} c_{n-1}.
"""

import itertools
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import factorint

from config import get_setting
from console import log

P = 3
MAX_DEGREE = 19


class FieldSizeError(ValueError):
    """Extension degree outside 1..19"""


class BadPolynomialError(ValueError):
    """Override polynomial is not a monic degree-n vector over {0,1,2}"""


class NotPrimitiveError(ValueError):
    """Override polynomial fails the multiplicative order test"""


class ZeroToNonpositiveError(ValueError):
    """0 raised to an exponent <= 0"""


def _poly_reduce(poly: Sequence[int], low: Sequence[int], n: int) -> List[int]:
    """Reduce modulo the monic polynomial x^n + low(x)"""
    p = [int(c) % P for c in poly]
    for deg in range(len(p) - 1, n - 1, -1):
        c = p[deg]
        if c:
            p[deg] = 0
            for k in range(n):
                p[deg - n + k] = (p[deg - n + k] - c * low[k]) % P
    p = p[:n]
    return p + [0] * (n - len(p))


def _poly_mulmod(a: Sequence[int], b: Sequence[int], low: Sequence[int], n: int) -> List[int]:
    prod = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    return _poly_reduce(prod.tolist(), low, n)


def _poly_powmod(base: Sequence[int], e: int, low: Sequence[int], n: int) -> List[int]:
    result = _poly_reduce([1], low, n)
    square = list(base)
    while e > 0:
        if e & 1:
            result = _poly_mulmod(result, square, low, n)
        square = _poly_mulmod(square, square, low, n)
        e >>= 1
    return result


def _order_of_x(low: Sequence[int], n: int) -> int:
    """Multiplicative order of x modulo x^n + low(x); 0 when x is not a unit"""
    if low[0] % P == 0:
        return 0
    group_order = P ** n - 1
    x = _poly_reduce([0, 1], low, n)
    one = _poly_reduce([1], low, n)
    if _poly_powmod(x, group_order, low, n) != one:
        # x not of finite order dividing q-1: the polynomial is reducible
        return 0
    order = group_order
    for prime, exponent in factorint(group_order).items():
        for _ in range(exponent):
            if _poly_powmod(x, order // prime, low, n) == one:
                order //= prime
            else:
                break
    return order


def is_primitive(coeffs: Sequence[int]) -> bool:
    """coeffs: length n+1, low degree first, monic"""
    n = len(coeffs) - 1
    return _order_of_x(list(coeffs[:n]), n) == P ** n - 1


def find_primitive_polynomial(n: int) -> List[int]:
    """
    Lexicographically smallest monic primitive polynomial of degree n
    Coefficient vectors are compared low-degree-first (c_0 is the primary key)
    """
    for low in itertools.product(range(P), repeat=n):
        if low[0] == 0:
            continue
        if _order_of_x(low, n) == P ** n - 1:
            return list(low) + [1]
    raise NotPrimitiveError(f"no primitive polynomial of degree {n}")  # unreachable for n >= 1


class FieldContext:
    """
    A concrete GF(3^n) with primitive element alpha = x mod modulus
    Immutable after construction apart from lazily cached derived tables
    """

    def __init__(self, n: int, modulus: List[int], exp_table: np.ndarray):
        self.n = n
        self.q = P ** n
        self.order = self.q - 1
        self.modulus = list(modulus)
        self.powers = np.array([P ** k for k in range(n)], dtype=np.int64)
        self.exp_table = exp_table
        self.log_table = np.full(self.q, -1, dtype=np.int64)
        self.log_table[exp_table] = np.arange(self.order, dtype=np.int64)
        self._trace_table: Optional[np.ndarray] = None
        self._digits: Optional[np.ndarray] = None

    # -- element construction -------------------------------------------
    def element(self, code: int) -> "FieldElement":
        return FieldElement(self, int(code))

    def from_coeffs(self, coeffs: Sequence[int]) -> "FieldElement":
        code = sum((int(c) % P) * P ** k for k, c in enumerate(coeffs))
        return FieldElement(self, code)

    def alpha_power(self, i: int) -> "FieldElement":
        return FieldElement(self, int(self.exp_table[i % self.order]))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def alpha(self) -> "FieldElement":
        return self.alpha_power(1)

    # -- scalar arithmetic on codes ---------------------------------------
    def add(self, a: int, b: int) -> int:
        out = 0
        for k in range(self.n):
            p = P ** k
            out += (((a // p) + (b // p)) % P) * p
        return out

    def neg(self, a: int) -> int:
        return self.add(a, a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[(self.log_table[a] + self.log_table[b]) % self.order])

    def log(self, a: int) -> int:
        if a == 0:
            raise ZeroToNonpositiveError("log of zero")
        return int(self.log_table[a])

    # -- vectorized arithmetic on code arrays -----------------------------
    def add_codes(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for p in self.powers:
            out += (((a // p) + (b // p)) % P) * p
        return out

    def scale_codes(self, a, c: int) -> np.ndarray:
        """Multiply by the prime-field scalar c"""
        a = np.asarray(a, dtype=np.int64)
        c %= P
        if c == 0:
            return np.zeros_like(a)
        if c == 1:
            return a.copy()
        return self.add_codes(a, a)

    def mul_codes(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        idx = (self.log_table[a] + self.log_table[b]) % self.order
        return np.where((a == 0) | (b == 0), 0, self.exp_table[idx])

    def pow_codes(self, a, e: int) -> np.ndarray:
        """x^e elementwise for e > 0 (0^e = 0)"""
        a = np.asarray(a, dtype=np.int64)
        idx = (self.log_table[a] * (e % self.order)) % self.order
        return np.where(a == 0, 0, self.exp_table[idx])

    # -- derived tables ----------------------------------------------------
    @property
    def digits(self) -> np.ndarray:
        """(q, n) coefficient matrix of every element code"""
        if self._digits is None:
            codes = np.arange(self.q, dtype=np.int64)
            self._digits = ((codes[:, None] // self.powers[None, :]) % P).astype(np.uint8)
        return self._digits

    @property
    def trace_table(self) -> np.ndarray:
        """Tr(x) for every element code, as uint8 residues"""
        if self._trace_table is None:
            basis_traces = [self._trace_by_conjugates(int(p)) for p in self.powers]
            codes = np.arange(self.q, dtype=np.int64)
            acc = np.zeros(self.q, dtype=np.int64)
            for p, tr in zip(self.powers, basis_traces):
                if tr:
                    acc += ((codes // p) % P) * tr
            self._trace_table = (acc % P).astype(np.uint8)
        return self._trace_table

    def _trace_by_conjugates(self, code: int) -> int:
        if code == 0:
            return 0
        lg = int(self.log_table[code])
        total = 0
        for i in range(self.n):
            total = self.add(total, int(self.exp_table[(lg * P ** i) % self.order]))
        if total >= P:
            raise ArithmeticError(f"trace of code {code} left the prime field")
        return total

    def __repr__(self) -> str:
        return f"FieldContext(n={self.n}, q={self.q}, modulus={self.modulus})"


class FieldElement:
    """Element of a FieldContext: coefficient vector (as code) plus table-backed log"""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldContext, code: int):
        if not 0 <= code < ctx.q:
            raise ValueError(f"code {code} outside GF({ctx.q})")
        self.ctx = ctx
        self.code = code

    @property
    def coeffs(self) -> List[int]:
        return [(self.code // P ** k) % P for k in range(self.ctx.n)]

    @property
    def log(self) -> Optional[int]:
        return None if self.code == 0 else int(self.ctx.log_table[self.code])

    def is_zero(self) -> bool:
        return self.code == 0

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.add(self.code, int(other)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.sub(self.code, int(other)))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.neg(self.code))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.mul(self.code, int(other)))

    def __pow__(self, e: int) -> "FieldElement":
        return elem_pow(self.ctx, self, e)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.code == other.code and self.ctx.modulus == other.ctx.modulus
        if isinstance(other, int):
            return self.code == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.code, tuple(self.ctx.modulus)))

    def __int__(self) -> int:
        return self.code

    def __index__(self) -> int:
        return self.code

    def __repr__(self) -> str:
        return f"FieldElement({self.coeffs})"


ElementLike = Union[FieldElement, int]


def build_field(n: int, override_poly: Optional[Sequence[int]] = None) -> FieldContext:
    """
    Build GF(3^n) with fully populated exp/log tables

    Args:
        n: extension degree, 1 <= n <= 19
        override_poly: optional monic modulus (c_0, ..., c_n); must be primitive
    """
    limit = min(int(get_setting("max_degree", MAX_DEGREE)), MAX_DEGREE)
    if not 1 <= n <= limit:
        raise FieldSizeError(f"n={n} outside 1..{limit}")

    if override_poly is None:
        modulus = find_primitive_polynomial(n)
    else:
        modulus = [int(c) for c in override_poly]
        if len(modulus) != n + 1 or modulus[-1] != 1 or any(c not in (0, 1, 2) for c in modulus):
            raise BadPolynomialError(f"expected monic degree-{n} coefficients over {{0,1,2}}, got {modulus}")
        if not is_primitive(modulus):
            raise NotPrimitiveError(f"modulus {modulus} is not primitive")

    low = modulus[:n]
    order = P ** n - 1

    # companion matrix: row vector of alpha^i times C gives alpha^{i+1}
    companion = np.zeros((n, n), dtype=np.uint8)
    for k in range(n - 1):
        companion[k, k + 1] = 1
    companion[n - 1, :] = [(-c) % P for c in low]

    # doubling: block [B, 2B) is block [0, B) multiplied by alpha^B
    rows = np.zeros((order, n), dtype=np.uint8)
    rows[0, 0] = 1
    filled = 1
    step = companion.copy()
    while filled < order:
        take = min(filled, order - filled)
        rows[filled:filled + take] = (rows[:take] @ step) % P
        filled += take
        step = (step @ step) % P

    exp_table = np.zeros(order, dtype=np.int64)
    for k in range(n):
        exp_table += rows[:, k].astype(np.int64) * P ** k

    if len(np.unique(exp_table)) != order:
        raise NotPrimitiveError(f"modulus {modulus} produced a short exp table")

    log("FIELD", f"built GF(3^{n}) with modulus {modulus}")
    return FieldContext(n, modulus, exp_table)


def trace(ctx: FieldContext, x: ElementLike) -> int:
    """Absolute trace to F_3"""
    return int(ctx.trace_table[int(x)])


def elem_pow(ctx: FieldContext, x: ElementLike, e: int) -> FieldElement:
    """x^e via the log/exp tables; negative exponents allowed for x != 0"""
    code = int(x)
    if code == 0:
        if e <= 0:
            raise ZeroToNonpositiveError(f"0^{e} is undefined")
        return ctx.zero
    idx = (int(ctx.log_table[code]) * e) % ctx.order
    return FieldElement(ctx, int(ctx.exp_table[idx]))


def field_info(ctx: FieldContext) -> Dict:
    return {
        "n": ctx.n,
        "q": ctx.q,
        "modulus": ctx.modulus,
        "alphaOrder": _order_of_x(ctx.modulus[:ctx.n], ctx.n),
    }


class CyclotomicCoset:
    """Orbit of an exponent under multiplication by 3 modulo q-1"""

    def __init__(self, modulus: int, members: Tuple[int, ...]):
        self.modulus = modulus
        self.members = members
        self.representative = min(members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, j: int) -> bool:
        return j % self.modulus in self.members

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other) -> bool:
        if isinstance(other, CyclotomicCoset):
            return self.modulus == other.modulus and set(self.members) == set(other.members)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.modulus, self.representative))

    def __repr__(self) -> str:
        return f"C_{self.representative}{set(self.members)}"


def _orbit(modulus: int, j: int) -> Tuple[int, ...]:
    members = [j]
    nxt = (j * P) % modulus
    while nxt != j:
        members.append(nxt)
        nxt = (nxt * P) % modulus
    return tuple(members)


def coset_of(q_minus_1: int, j: int) -> CyclotomicCoset:
    """Cyclotomic coset of j mod q-1, listed from its representative"""
    j %= q_minus_1
    rep = min(_orbit(q_minus_1, j))
    return CyclotomicCoset(q_minus_1, _orbit(q_minus_1, rep))


def all_cosets(q_minus_1: int) -> List[CyclotomicCoset]:
    """Partition of [0, q-1) into cosets, sorted by representative"""
    seen = np.zeros(q_minus_1, dtype=bool)
    cosets = []
    for j in range(q_minus_1):
        if seen[j]:
            continue
        coset = coset_of(q_minus_1, j)
        seen[list(coset.members)] = True
        cosets.append(coset)
    return cosets


if __name__ == "__main__":
    ctx = build_field(3)
    print(field_info(ctx))
    print("alpha^26 =", elem_pow(ctx, ctx.alpha, 26))
    print("cosets mod 26:", all_cosets(26))
