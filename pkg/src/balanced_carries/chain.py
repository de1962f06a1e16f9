"""The carries Markov chain of balanced-digit addition, built exactly.

When n numbers are added in an odd base b, the column carries form a
Markov chain.  ``transition_matrix`` reads each entry off an integer
polynomial power, ``transition_matrix_binomial`` evaluates the equivalent
alternating binomial sum, and ``brute_force_matrix`` enumerates digit
tuples directly; the three must agree entrywise.  ``holte_matrix`` builds
the classical-digit chain, which coincides with the balanced one (after a
state shift) when n is odd.  Everything is exact rational arithmetic; the
matrices compose like bases do, K_a K_b = K_ab.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from balanced_carries.errors import InvariantError, check_enumeration_budget
from balanced_carries.poly import coefficient, poly_pow


@dataclass(frozen=True)
class CarriesMatrix:
    """Row-stochastic matrix of exact rationals over shifted integer states.

    Row/column index t stands for the carry state t - offset.  Adding n
    numbers uses offset = floor(n/2): states -n/2..n/2 for even n, and
    -(n-1)/2..(n+1)/2 for odd n (the extra top state is unreachable but
    keeps one storage layout for both parities).  The classical-digit
    chain lives on 0..n-1 with offset 0.
    """

    n: int
    base: int
    offset: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"operand count must be an integer >= 1, got {self.n!r}")
        if not isinstance(self.base, int) or self.base < 1:
            raise ValueError(f"base must be a positive integer, got {self.base!r}")
        dim = len(self.entries)
        if dim == 0:
            raise ValueError("matrix must be nonempty")
        denominator_limit = self.base**self.n
        for row in self.entries:
            if len(row) != dim:
                raise ValueError("matrix must be square")
            for value in row:
                if value < 0:
                    raise ValueError(f"negative entry {value}")
                if denominator_limit % value.denominator != 0:
                    raise ValueError(
                        f"entry {value} has denominator not dividing base**n"
                    )
            if sum(row) != 1:
                raise ValueError("rows must sum to exactly 1")

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def states(self) -> tuple[int, ...]:
        return tuple(t - self.offset for t in range(self.dim))

    def at(self, i: int, j: int) -> Fraction:
        """Transition probability from carry state i to carry state j."""
        return self.entries[i + self.offset][j + self.offset]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i + self.offset]


def _check_args(n: int, base: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"operand count must be an integer >= 1, got {n!r}")
    if not isinstance(base, int) or base < 3 or base % 2 == 0:
        raise ValueError(f"base must be an odd integer >= 3, got {base!r}")


def transition_matrix(n: int, base: int) -> CarriesMatrix:
    """Balanced carries chain for adding n numbers base b.

    The probability of moving from carry i to carry j is the coefficient
    of x**(j*b + (n+1)*(b-1)/2 - i) in (1 + x + ... + x**(b-1))**(n+1),
    divided by b**n.
    """
    _check_args(n, base)
    power = poly_pow([1] * base, n + 1)
    offset = n // 2
    shift = (n + 1) * (base - 1) // 2
    denom = base**n
    rows = []
    for t in range(n + 1):
        i = t - offset
        row = []
        for u in range(n + 1):
            j = u - offset
            row.append(Fraction(coefficient(power, j * base + shift - i), denom))
        rows.append(tuple(row))
    return CarriesMatrix(n, base, offset, tuple(rows))


def transition_matrix_binomial(n: int, base: int) -> CarriesMatrix:
    """The same chain via the alternating binomial sum.

    Entry (i, j) is
    sum_l (-1)**l C(n+1, l) C(n + j*b + (n+1)(b-1)/2 - i - l*b, n) / b**n
    with l running up to floor(j + (n+1)(b-1)/(2b) - i/b).  Must equal
    ``transition_matrix`` entrywise.
    """
    _check_args(n, base)
    offset = n // 2
    shift = (n + 1) * (base - 1) // 2
    denom = base**n
    rows = []
    for t in range(n + 1):
        i = t - offset
        row = []
        for u in range(n + 1):
            j = u - offset
            exponent = j * base + shift - i
            upper = exponent // base
            total = 0
            for l in range(upper + 1):
                total += (
                    (-1) ** l
                    * math.comb(n + 1, l)
                    * math.comb(n + exponent - l * base, n)
                )
            row.append(Fraction(total, denom))
        rows.append(tuple(row))
    return CarriesMatrix(n, base, offset, tuple(rows))


def brute_force_matrix(n: int, base: int) -> CarriesMatrix:
    """Oracle: enumerate all b**n digit tuples and bucket the carry they force.

    With carry i coming in, the carry out is the j satisfying
    j*b - (b-1)/2 <= i + x_1 + ... + x_n <= j*b + (b-1)/2.  Enumeration is
    direct and guarded by the global budget.
    """
    _check_args(n, base)
    check_enumeration_budget(base**n)
    half = (base - 1) // 2
    sum_counts: dict[int, int] = {}
    for digits in itertools.product(range(-half, half + 1), repeat=n):
        s = sum(digits)
        sum_counts[s] = sum_counts.get(s, 0) + 1
    offset = n // 2
    denom = base**n
    rows = []
    for t in range(n + 1):
        i = t - offset
        counts = [0] * (n + 1)
        for s, c in sum_counts.items():
            j = (i + s + half) // base
            if not 0 <= j + offset <= n:
                raise InvariantError(f"carry {j} escaped the state space")
            counts[j + offset] += c
        rows.append(tuple(Fraction(c, denom) for c in counts))
    return CarriesMatrix(n, base, offset, tuple(rows))


def holte_matrix(n: int, base: int) -> CarriesMatrix:
    """Classical-digit carries chain on states 0..n-1 (any base >= 2).

    Entry (i, j) counts tuples in [0, b-1]**n with
    j*b <= i + sum <= j*b + b - 1, over b**n.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"operand count must be an integer >= 1, got {n!r}")
    if not isinstance(base, int) or base < 2:
        raise ValueError(f"base must be an integer >= 2, got {base!r}")
    power = poly_pow([1] * base, n)
    denom = base**n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            low = j * base - i
            count = sum(coefficient(power, s) for s in range(low, low + base))
            row.append(Fraction(count, denom))
        rows.append(tuple(row))
    return CarriesMatrix(n, base, 0, tuple(rows))


def identity_like(matrix: CarriesMatrix) -> CarriesMatrix:
    """Identity with the same shape; its base is 1, the empty product of bases."""
    dim = matrix.dim
    rows = tuple(
        tuple(Fraction(1 if r == c else 0) for c in range(dim)) for r in range(dim)
    )
    return CarriesMatrix(matrix.n, 1, matrix.offset, rows)


def matrix_product(a: CarriesMatrix, b: CarriesMatrix) -> CarriesMatrix:
    """Exact product; composing base-a and base-b chains gives the base-a*b chain."""
    if a.dim != b.dim or a.offset != b.offset or a.n != b.n:
        raise ValueError("matrices must share dimension, offset, and operand count")
    cols = list(zip(*b.entries))
    rows = tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in cols)
        for row in a.entries
    )
    return CarriesMatrix(a.n, a.base * b.base, a.offset, rows)


def matrix_power(matrix: CarriesMatrix, r: int) -> CarriesMatrix:
    """Exact r-th power by repeated squaring; the zeroth power is the identity."""
    if not isinstance(r, int) or r < 0:
        raise ValueError(f"exponent must be a nonnegative integer, got {r!r}")
    result = identity_like(matrix)
    square = matrix
    e = r
    while e:
        if e & 1:
            result = matrix_product(result, square)
        e >>= 1
        if e:
            square = matrix_product(square, square)
    return result
