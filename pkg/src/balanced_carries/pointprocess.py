"""Carries down a single column of random balanced digits.

Consecutive remainders R_i, R_{i+1} of the partial sums produce a carry of
+b when R_i - R_{i+1} >= (b+1)/2, of -b when <= -(b+1)/2, and none
otherwise.  The resulting signed sequence is stationary and one-dependent;
its carry/no-carry consolidation is determinantal, so every binary pattern
probability is a determinant in the run probabilities
a_i = P(i-1 consecutive carries).  ``a_exact`` counts admissible digit
paths through a transfer matrix; ``a_closed`` evaluates the trigonometric
diagonalization of the same count.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from balanced_carries.errors import InvariantError, check_enumeration_budget


def _check_base(base: int) -> None:
    if not isinstance(base, int) or base < 3 or base % 2 == 0:
        raise ValueError(f"base must be an odd integer >= 3, got {base!r}")


@dataclass(frozen=True)
class TransferMatrix:
    """Adjacency structure of digit pairs that alternate carry signs.

    With half = (base-1)/2, A is the half x half upper-triangular matrix
    of ones and M = [[0, A], [A^T, 0]] is the adjacency matrix on the
    vertices -half..-1, 1..half.  The Gram matrix A^T A has (i, j) entry
    min(i, j) (1-indexed), whose powers count alternating-sign carry runs.
    """

    base: int
    half: int
    A: tuple[tuple[int, ...], ...]
    M: tuple[tuple[int, ...], ...]

    @property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        return _int_mat_mul(_transpose(self.A), self.A)


def _transpose(m):
    return tuple(tuple(row) for row in zip(*m))


def _int_mat_mul(a, b):
    cols = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a
    )


def _int_mat_pow(m, k):
    size = len(m)
    result = tuple(
        tuple(1 if r == c else 0 for c in range(size)) for r in range(size)
    )
    square = m
    while k:
        if k & 1:
            result = _int_mat_mul(result, square)
        k >>= 1
        if k:
            square = _int_mat_mul(square, square)
    return result


@lru_cache(maxsize=None)
def transfer_matrix(base: int) -> TransferMatrix:
    _check_base(base)
    half = (base - 1) // 2
    A = tuple(tuple(1 if c >= r else 0 for c in range(half)) for r in range(half))
    AT = _transpose(A)
    M = tuple(
        tuple((0,) * half + A[r]) for r in range(half)
    ) + tuple(
        tuple(AT[r] + (0,) * half) for r in range(half)
    )
    tm = TransferMatrix(base, half, A, M)
    gram = tm.gram
    for r in range(half):
        for c in range(half):
            if gram[r][c] != min(r + 1, c + 1):
                raise InvariantError("Gram matrix is not min(i, j)")
    return tm


@lru_cache(maxsize=None)
def a_exact(i: int, base: int) -> Fraction:
    """Probability of i-1 consecutive carries, as an exact rational.

    a_1 = 1 by convention.  For i >= 2 the admissible remainder paths are
    counted by transfer-matrix powers: 1^T (A^T A)^((i-1)/2) 1 for odd i
    and (1^T A) (A^T A)^((i-2)/2) 1 for even i, doubled for the mirrored
    sign pattern and divided by base**i.
    """
    if not isinstance(i, int) or i < 1:
        raise ValueError(f"run index must be an integer >= 1, got {i!r}")
    _check_base(base)
    if i == 1:
        return Fraction(1)
    tm = transfer_matrix(base)
    gram = tm.gram
    if i % 2:
        powered = _int_mat_pow(gram, (i - 1) // 2)
        count = sum(sum(row) for row in powered)
    else:
        powered = _int_mat_pow(gram, (i - 2) // 2)
        left = tuple(sum(col) for col in zip(*tm.A))
        count = sum(
            left[r] * powered[r][c]
            for r in range(tm.half)
            for c in range(tm.half)
        )
    return Fraction(2 * count, base**i)


@dataclass(frozen=True)
class SpectralData:
    """Eigen data of the min(i, j) path-count matrix for one base.

    eigenvalues[r-1] is lambda_r with 1/lambda_r = 4 sin^2((2r-1) pi / 2b);
    vector_sums[r-1] = sum_j sin((2r-1) j pi / b) and weighted_sums[r-1]
    adds the factor j.
    """

    base: int
    eigenvalues: tuple[float, ...]
    vector_sums: tuple[float, ...]
    weighted_sums: tuple[float, ...]


def spectral_data(base: int) -> SpectralData:
    _check_base(base)
    half = (base - 1) // 2
    eigenvalues, vector_sums, weighted_sums = [], [], []
    for r in range(1, half + 1):
        odd = 2 * r - 1
        eigenvalues.append(1.0 / (4.0 * math.sin(odd * math.pi / (2 * base)) ** 2))
        vector_sums.append(
            sum(math.sin(odd * j * math.pi / base) for j in range(1, half + 1))
        )
        weighted_sums.append(
            sum(j * math.sin(odd * j * math.pi / base) for j in range(1, half + 1))
        )
    return SpectralData(base, tuple(eigenvalues), tuple(vector_sums), tuple(weighted_sums))


def a_closed(i: int, base: int) -> float:
    """Trigonometric closed form of ``a_exact`` for i >= 2.

    8/b**(i+1) sum_r lambda_r**((i-1)/2) v_r**2 for odd i, with v_r w_r and
    exponent (i-2)/2 for even i.  Agreement with ``a_exact`` within a
    relative 1e-9 is the validation contract; the exact value stays
    authoritative downstream.
    """
    if not isinstance(i, int) or i < 2:
        raise ValueError(f"closed form applies for i >= 2, got {i!r}")
    _check_base(base)
    data = spectral_data(base)
    triples = zip(data.eigenvalues, data.vector_sums, data.weighted_sums)
    if i % 2:
        total = sum(lam ** ((i - 1) // 2) * v * v for lam, v, _ in triples)
    else:
        total = sum(lam ** ((i - 2) // 2) * v * w for lam, v, w in triples)
    return 8.0 / float(base) ** (i + 1) * total


@dataclass(frozen=True)
class OneDepLaw:
    """Run-probability table a_1..a_m for one base.

    a_1 = 1, every entry is a probability in (0, 1], and the sequence is
    nonincreasing (longer runs are rarer).
    """

    base: int
    a: tuple[Fraction, ...]

    def __post_init__(self):
        _check_base(self.base)
        if not self.a or self.a[0] != 1:
            raise ValueError("a_1 must be 1")
        for value in self.a:
            if not 0 < value <= 1:
                raise ValueError(f"run probability {value} outside (0, 1]")
        for earlier, later in zip(self.a, self.a[1:]):
            if later > earlier:
                raise ValueError("run probabilities must be nonincreasing")


def one_dep_law(base: int, count: int) -> OneDepLaw:
    """Exact a_1..a_count for one base."""
    if not isinstance(count, int) or count < 1:
        raise ValueError(f"count must be an integer >= 1, got {count!r}")
    return OneDepLaw(base, tuple(a_exact(i, base) for i in range(1, count + 1)))


def bareiss_determinant(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination; divisions are exact."""
    m = [list(row) for row in matrix]
    size = len(m)
    if any(len(row) != size for row in m):
        raise ValueError("matrix must be square")
    if size == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(size - 1):
        if m[k][k] == 0:
            for swap in range(k + 1, size):
                if m[swap][k] != 0:
                    m[k], m[swap] = m[swap], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for r in range(k + 1, size):
            for c in range(k + 1, size):
                m[r][c] = (m[r][c] * m[k][k] - m[r][k] * m[k][c]) / prev
            m[r][k] = Fraction(0)
        prev = m[k][k]
    return Fraction(sign) * m[-1][-1]


def _parse_binary(pattern) -> tuple[int, ...]:
    values = tuple(int(v) for v in pattern) if not isinstance(pattern, str) else tuple(
        int(ch) if ch in "01" else -1 for ch in pattern
    )
    if any(v not in (0, 1) for v in values):
        raise ValueError(f"binary pattern may contain only 0 and 1, got {pattern!r}")
    return values


_SIGN_CHARS = {"+": 1, "-": -1, "0": 0}


def _parse_signed(pattern) -> tuple[int, ...]:
    if isinstance(pattern, str):
        unknown = set(pattern) - set(_SIGN_CHARS)
        if unknown:
            raise ValueError(f"signed pattern may contain only + - 0, got {pattern!r}")
        return tuple(_SIGN_CHARS[ch] for ch in pattern)
    values = tuple(int(v) for v in pattern)
    if any(v not in (-1, 0, 1) for v in values):
        raise ValueError(f"signed pattern values must be -1, 0, or 1, got {pattern!r}")
    return values


def string_probability(pattern: Iterable[int] | str, base: int) -> Fraction:
    """Exact probability of a binary carry/no-carry pattern down a column.

    With zeros at positions s_1 < ... < s_k (1-indexed, s_0 = 0 and
    s_{k+1} = len+1), the probability is det(a[s_{j+1} - s_i]) for
    i, j = 0..k, where a_0 = 1 and a with a negative index is 0.  The
    all-ones pattern of length i-1 reduces to the 1x1 determinant a_i.
    """
    t = _parse_binary(pattern)
    _check_base(base)
    n = len(t) + 1
    s = [0] + [p + 1 for p, v in enumerate(t) if v == 0] + [n]
    k = len(s) - 2

    def a(index: int) -> Fraction:
        if index < 0:
            return Fraction(0)
        if index == 0:
            return Fraction(1)
        return a_exact(index, base)

    rows = [[a(s[j + 1] - s[i]) for j in range(k + 1)] for i in range(k + 1)]
    result = bareiss_determinant(rows)
    if not 0 <= result <= 1:
        raise InvariantError(f"pattern probability {result} outside [0, 1]")
    return result


def brute_force_string(pattern: Iterable[int] | str, base: int) -> Fraction:
    """Oracle: enumerate every remainder sequence and count pattern matches.

    Consecutive remainders carry exactly when they differ by at least
    (base+1)/2 in absolute value.  Guarded by the enumeration budget.
    """
    t = _parse_binary(pattern)
    _check_base(base)
    n = len(t) + 1
    check_enumeration_budget(base**n)
    half = (base - 1) // 2
    threshold = (base + 1) // 2
    matches = 0
    for seq in itertools.product(range(-half, half + 1), repeat=n):
        for want, prev, nxt in zip(t, seq, seq[1:]):
            if (1 if abs(prev - nxt) >= threshold else 0) != want:
                break
        else:
            matches += 1
    return Fraction(matches, base**n)


def signed_pattern_probability(pattern: Iterable[int] | str, base: int) -> Fraction:
    """Probability of an exact signed carry pattern over +, -, 0, by enumeration.

    The carry between consecutive remainders is + when R_i - R_{i+1} >=
    (base+1)/2 and - when <= -(base+1)/2.  Two consecutive equal signs
    never occur; in base 3 the patterns +0+ and -0- are impossible too.
    """
    t = _parse_signed(pattern)
    _check_base(base)
    n = len(t) + 1
    check_enumeration_budget(base**n)
    half = (base - 1) // 2
    threshold = (base + 1) // 2
    matches = 0
    for seq in itertools.product(range(-half, half + 1), repeat=n):
        for want, prev, nxt in zip(t, seq, seq[1:]):
            diff = prev - nxt
            got = 1 if diff >= threshold else (-1 if diff <= -threshold else 0)
            if got != want:
                break
        else:
            matches += 1
    return Fraction(matches, base**n)
