"""
Ternary weight module for the ternary DHT toolkit
Digit sums wt/sigma, the H(j) combination, the realizability weight criterion,
run decompositions of cyclic ternary words and the per-lemma checks built on them

Every index is reduced mod 3^n - 1 first; residue 0 has weight 0 and sigma 1.
Digit words are little-endian internally and printed most-significant-first.
"""

import re
from math import gcd
from typing import Dict, List, Optional, Tuple

import numpy as np

from field import coset_of


class BadDegreeError(ValueError):
    """n must be odd (n = 2m + 1) or lies outside the supported range"""


class BadTError(ValueError):
    """gcd(t, 3^n - 1) != 1"""


class BadVError(ValueError):
    """gcd(v, 3^n - 1) == 1 where a multiplexing pair is required"""


class AllOnesError(ValueError):
    """(3^n - 1)/2 has no run decomposition"""


class LemmaDomainError(ValueError):
    """Instance outside a lemma's hypotheses"""


def modulus(n: int) -> int:
    return 3 ** n - 1


def digits(j: int, n: int) -> List[int]:
    """Little-endian base-3 digits of j mod 3^n - 1, length n"""
    j %= modulus(n)
    out = []
    for _ in range(n):
        out.append(j % 3)
        j //= 3
    return out


def digit_string(j: int, n: int) -> str:
    """Most-significant-first display form"""
    return "".join(str(d) for d in reversed(digits(j, n)))


def from_digits(word: List[int]) -> int:
    return sum(d * 3 ** i for i, d in enumerate(word))


def digit_sum(x: int) -> int:
    """Base-3 digit sum of a nonnegative integer, no reduction"""
    total = 0
    while x:
        total += x % 3
        x //= 3
    return total


def wt(j: int, n: int) -> int:
    return digit_sum(j % modulus(n))


def sigma(j: int, n: int) -> int:
    """Product of digit factorials: each digit 2 contributes a factor 2"""
    return 2 ** digits(j, n).count(2)


def _require_odd(n: int) -> int:
    if n < 1 or n % 2 == 0:
        raise BadDegreeError(f"n={n} must be odd")
    return (n - 1) // 2


def lin_multiplier(n: int) -> int:
    """3^{m+1} - 1 for n = 2m + 1"""
    m = _require_odd(n)
    return 3 ** (m + 1) - 1


def lin_exponent(n: int) -> int:
    """2*3^m + 1, the second decimation of the Lin sequence"""
    m = _require_odd(n)
    return 2 * 3 ** m + 1


def H(j: int, n: int) -> int:
    """wt(j) + wt((3^{m+1}-1) j) - wt(2 (3^{m+1}-1) j)"""
    mult = lin_multiplier(n)
    return wt(j, n) + wt(mult * j, n) - wt(2 * mult * j, n)


def triple_weight_sum(j: int, v: int, t: int, n: int) -> int:
    return wt(j * v * t, n) + wt(-j * v, n) + wt(j, n)


def weight_table(n: int) -> np.ndarray:
    Q = modulus(n)
    rest = np.arange(Q, dtype=np.int64)
    table = np.zeros(Q, dtype=np.int16)
    for _ in range(n):
        table += (rest % 3).astype(np.int16)
        rest //= 3
    return table


def sigma_table(n: int) -> np.ndarray:
    Q = modulus(n)
    rest = np.arange(Q, dtype=np.int64)
    twos = np.zeros(Q, dtype=np.int64)
    for _ in range(n):
        twos += rest % 3 == 2
        rest //= 3
    return np.left_shift(1, twos)


def _scaled_weights(table: np.ndarray, c: int, Q: int) -> np.ndarray:
    """wt(c * j) for every residue j"""
    j = np.arange(Q, dtype=np.int64)
    return table[(j * (c % Q)) % Q]


def h_table(n: int, table: Optional[np.ndarray] = None) -> np.ndarray:
    mult = lin_multiplier(n)
    Q = modulus(n)
    if table is None:
        table = weight_table(n)
    w = table.astype(np.int32)
    return w + _scaled_weights(w, mult, Q) - _scaled_weights(w, 2 * mult, Q)


def triple_weight_sums(v: int, t: int, n: int, table: Optional[np.ndarray] = None) -> np.ndarray:
    Q = modulus(n)
    if table is None:
        table = weight_table(n)
    w = table.astype(np.int32)
    return _scaled_weights(w, v * t, Q) + _scaled_weights(w, -v, Q) + w


class WeightReport:
    """Outcome of the weight screen for one (v, t) pair"""

    def __init__(self, v: int, t: int, n: int, d: int, realizable: bool,
                 equality_set: List[int], first_violation: Optional[int]):
        self.v = v
        self.t = t
        self.n = n
        self.d = d
        self.realizable = realizable
        self.equality_set = equality_set
        self.first_violation = first_violation

    def coset_representatives(self) -> List[int]:
        Q = modulus(self.n)
        return sorted({coset_of(Q, j).representative for j in self.equality_set})

    def to_dict(self) -> Dict:
        return {
            "v": self.v,
            "t": self.t,
            "n": self.n,
            "d": self.d,
            "realizable": self.realizable,
            "equalitySet": self.equality_set,
            "firstViolation": self.first_violation,
        }


def weight_criterion(v: int, t: int, n: int, table: Optional[np.ndarray] = None) -> WeightReport:
    """
    Realizability screen: (v, t) is realizable iff
    wt(jvt) + wt(-jv) + wt(j) > 2n for every 0 < j < 3^n - 1 with jd != 0 mod 3^n - 1

    Raises:
        BadTError: gcd(t, 3^n - 1) != 1
        BadVError: d = gcd(v, 3^n - 1) == 1
    """
    Q = modulus(n)
    if gcd(t, Q) != 1:
        raise BadTError(f"gcd({t}, {Q}) != 1")
    d = gcd(v, Q)
    if d == 1:
        raise BadVError(f"gcd({v}, {Q}) == 1; use the plain DHT path")

    sums = triple_weight_sums(v, t, n, table)
    j = np.arange(Q, dtype=np.int64)
    eligible = (j > 0) & ((j * d) % Q != 0)

    bad = np.flatnonzero(eligible & (sums <= 2 * n))
    equality = np.flatnonzero(eligible & (sums == 2 * n + 1))
    return WeightReport(
        v=v, t=t, n=n, d=d,
        realizable=bad.size == 0,
        equality_set=[int(x) for x in equality],
        first_violation=int(bad[0]) if bad.size else None,
    )


def lin_equality_set(n: int) -> List[int]:
    """C_1 union C_{2*3^m+1}"""
    Q = modulus(n)
    members = set(coset_of(Q, 1).members) | set(coset_of(Q, lin_exponent(n)).members)
    return sorted(members)


def verify_lin_weight_theorem(n: int) -> Dict:
    """
    Exhaustive check that H(j) >= 1 for all 0 < j < 3^n - 1 with equality exactly on
    C_1 union C_{2*3^m+1}, and that the triple-sum screen of the Lin pair agrees
    """
    if n < 3 or n > 15 or n % 2 == 0:
        raise BadDegreeError(f"n={n} must be odd with 3 <= n <= 15")

    Q = modulus(n)
    table = weight_table(n)
    h_full = h_table(n, table)
    h = h_full[1:]
    js = np.arange(1, Q)

    expected = lin_equality_set(n)
    h_equal = [int(x) for x in js[h == 1]]
    below = js[h < 1]
    h_ok = below.size == 0 and h_equal == expected

    v = 2 * lin_multiplier(n)
    t = (3 ** n + 1) // 4
    screen = weight_criterion(v, t, n, table)
    phrasings_agree = screen.realizable and screen.equality_set == h_equal

    # H(3j) = H(j) for every j
    residues = np.arange(Q)
    shift_invariant = bool(np.array_equal(h_full[(3 * residues) % Q], h_full))

    first_violation = None
    if below.size:
        first_violation = int(below[0])
    elif h_equal != expected:
        first_violation = int(sorted(set(h_equal) ^ set(expected))[0])

    return {
        "n": n,
        "pass": bool(h_ok and phrasings_agree and shift_invariant),
        "equalitySet": h_equal,
        "equalitySetSize": len(h_equal),
        "firstViolation": first_violation,
        "screenAgrees": bool(phrasings_agree),
        "shiftInvariant": shift_invariant,
        "hOfTwo": int(h[1]) if Q > 2 else None,
    }


class RunBlock:
    """R_{r0} or R_{r2}: r ones above a terminating 0 or 2"""

    def __init__(self, terminator: int, r: int, start: int = 0):
        if terminator not in (0, 2) or r < 0:
            raise ValueError(f"invalid block ({terminator}, {r})")
        self.terminator = terminator
        self.r = r
        self.start = start

    @property
    def kind(self) -> str:
        return f"R{self.terminator}"

    @property
    def length(self) -> int:
        return self.r + 1

    @property
    def value(self) -> int:
        return self.terminator + (3 ** (self.r + 1) - 3) // 2

    @property
    def word(self) -> str:
        return "1" * self.r + str(self.terminator)

    def __eq__(self, other) -> bool:
        if isinstance(other, RunBlock):
            return (self.terminator, self.r) == (other.terminator, other.r)
        return NotImplemented

    def __repr__(self) -> str:
        return f"R_{{{self.r},{self.terminator}}}"


class RunDecomposition:
    """
    A rotation of a cyclic digit word split into blocks b_{t-1} ... b_0

    blocks is most-significant-first; block(k) indexes b_k from the bottom.
    """

    def __init__(self, a: int, n: int, rotation: int, word: List[int], blocks: List[RunBlock]):
        self.a = a
        self.n = n
        self.rotation = rotation
        self.word = word
        self.blocks = blocks

    @property
    def t(self) -> int:
        return len(self.blocks)

    def block(self, k: int) -> RunBlock:
        return self.blocks[-1 - (k % self.t)]

    @property
    def rotated_value(self) -> int:
        return from_digits(self.word)

    def display(self) -> str:
        return "".join(b.word for b in self.blocks)

    def __repr__(self) -> str:
        return f"RunDecomposition({self.display()}, rotation={self.rotation})"


def run_decompose(a: int, n: int) -> RunDecomposition:
    """
    Rotate by the smallest s with digit k_s != 1 so the lowest digit terminates a block,
    then give every 0/2 terminator the run of ones directly above it
    """
    Q = modulus(n)
    a %= Q
    source = digits(a, n)
    if all(d == 1 for d in source):
        raise AllOnesError(f"{a} = (3^{n}-1)/2 has no run decomposition")

    s = next(i for i, d in enumerate(source) if d != 1)
    word = source[s:] + source[:s]

    lsb_first: List[RunBlock] = []
    pos = 0
    while pos < n:
        start = pos
        pos += 1
        while pos < n and word[pos] == 1:
            pos += 1
        lsb_first.append(RunBlock(word[start], pos - start - 1, start))
    return RunDecomposition(a, n, s, word, list(reversed(lsb_first)))


def check_run_sum(a: int, n: int) -> bool:
    """wt(2a) equals the sum of wt(2 b_i) over the blocks"""
    dec = run_decompose(a, n)
    return wt(2 * a, n) == sum(digit_sum(2 * b.value) for b in dec.blocks)


def check_block_delta(block: RunBlock) -> bool:
    """wt(R_{r0}) - wt(2 R_{r0}) = -r and wt(R_{r2}) - wt(2 R_{r2}) = r"""
    delta = digit_sum(block.value) - digit_sum(2 * block.value)
    return delta == (-block.r if block.terminator == 0 else block.r)


def check_run_balance(a: int, n: int) -> bool:
    """wt(a) - wt(2a) is the signed sum of the run lengths (R0 blocks negative)"""
    dec = run_decompose(a, n)
    expected = sum(b.r if b.terminator == 2 else -b.r for b in dec.blocks)
    return wt(a, n) - wt(2 * a, n) == expected


def _double_gap(a: int, n: int) -> int:
    return wt(a, n) - wt(2 * a, n)


def check_add_two_delta(a: int, i: int, n: int) -> bool:
    """Adding 2*3^i lowers wt(a) - wt(2a) by at most 2"""
    if not 0 <= i < n:
        raise LemmaDomainError(f"digit position {i} outside 0..{n - 1}")
    return _double_gap(a + 2 * 3 ** i, n) >= _double_gap(a, n) - 2


def check_shift_congruence(j: int, i: int, n: int) -> bool:
    """(3^{m+1}-1)(j +/- (3^{m+1}+1) 3^i) == (3^{m+1}-1) j +/- 2*3^i mod 3^n - 1"""
    Q = modulus(n)
    mult = lin_multiplier(n)
    step = (mult + 2) * 3 ** i
    plus = (mult * (j + step) - (mult * j + 2 * 3 ** i)) % Q == 0
    minus = (mult * (j - step) - (mult * j - 2 * 3 ** i)) % Q == 0
    return plus and minus


class OneDigitEdit:
    """
    A single-digit change of block b_k

    case 1: R_{r0} -> 2 1^{r-1} 0             expected delta 0
    case 2: R_{r2} -> 1^{r1} 0 1^{r2} 2        expected delta 2 r1 (r1 + r2 = r - 1)
    case 3: R_{r2} -> 2 1^{r-1} 2             expected delta 2
    case 4: R_{r2} -> 1^{r+1} when b_{k-1} = 0 expected delta 2 r
    delta = wt(2a') - wt(2a)
    """

    def __init__(self, case: int, k: int, r1: int = 0):
        self.case = case
        self.k = k
        self.r1 = r1

    def to_dict(self) -> Dict:
        return {"case": self.case, "block": self.k, "r1": self.r1}

    def __repr__(self) -> str:
        return f"OneDigitEdit(case={self.case}, k={self.k}, r1={self.r1})"


def _apply_edit(dec: RunDecomposition, edit: OneDigitEdit) -> Tuple[List[int], int]:
    """Edited rotated word and the expected delta; raises LemmaDomainError if inapplicable"""
    if not 0 <= edit.k < dec.t:
        raise LemmaDomainError(f"block index {edit.k} outside 0..{dec.t - 1}")
    block = dec.block(edit.k)
    word = list(dec.word)
    r = block.r

    if edit.case == 1:
        if block.terminator != 0 or r < 1:
            raise LemmaDomainError("case 1 needs R_{r0} with r >= 1")
        word[block.start + r] = 2
        expected = 0
    elif edit.case == 2:
        if block.terminator != 2 or r < 1 or not 0 <= edit.r1 <= r - 1:
            raise LemmaDomainError("case 2 needs R_{r2} with r >= 1 and 0 <= r1 < r")
        r2 = r - 1 - edit.r1
        word[block.start + 1 + r2] = 0
        expected = 2 * edit.r1
    elif edit.case == 3:
        if block.terminator != 2 or r < 1:
            raise LemmaDomainError("case 3 needs R_{r2} with r >= 1")
        word[block.start + r] = 2
        expected = 2
    elif edit.case == 4:
        below = dec.block(edit.k - 1)
        if block.terminator != 2 or dec.t < 2 or below.terminator != 0 or below.r != 0:
            raise LemmaDomainError("case 4 needs R_{r2} sitting on a lone 0 block")
        word[block.start] = 1
        expected = 2 * r
    else:
        raise LemmaDomainError(f"unknown edit case {edit.case}")

    if all(d == 2 for d in word):
        raise LemmaDomainError("edited word is all 2s, which is 0 mod 3^n - 1")
    return word, expected


def check_one_digit_delta(a: int, edit: OneDigitEdit, n: int) -> bool:
    dec = run_decompose(a, n)
    word, expected = _apply_edit(dec, edit)
    edited = from_digits(word)
    return wt(2 * edited, n) - wt(2 * dec.rotated_value, n) == expected


def one_digit_edits(a: int, n: int) -> List[OneDigitEdit]:
    """Every applicable single-digit edit of the decomposition of a"""
    dec = run_decompose(a, n)
    edits = []
    for k in range(dec.t):
        block = dec.block(k)
        candidates = [OneDigitEdit(1, k)] if block.terminator == 0 else (
            [OneDigitEdit(2, k, r1) for r1 in range(block.r)]
            + [OneDigitEdit(3, k), OneDigitEdit(4, k)]
        )
        for edit in candidates:
            try:
                _apply_edit(dec, edit)
            except LemmaDomainError:
                continue
            edits.append(edit)
    return edits


_CASE_PATTERNS = {
    "I": re.compile(r"(?=([02]1{2,}0|[01]2{2,}0))"),
    "II": re.compile(r"(?=([02]1+20|[01]2+10))"),
    "III": re.compile(r"(?=(0[12]0))"),
}


def matches_case_patterns(j: int, n: int) -> List[str]:
    """Labels of the patterns occurring as a cyclic segment of j's digit word"""
    word = digit_string(j, n)
    doubled = word + word
    found = []
    for label, pattern in _CASE_PATTERNS.items():
        for match in pattern.finditer(doubled):
            if len(match.group(1)) <= n:
                found.append(label)
                break
    return found


if __name__ == "__main__":
    print("H(1), H(7) at n=3:", H(1, 3), H(7, 3))
    print("decompose 42, n=4:", run_decompose(42, 4))
    print(verify_lin_weight_theorem(5))
