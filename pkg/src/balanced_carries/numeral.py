"""Balanced base-b numerals and multi-operand addition with carry tracing.

An odd base b uses the signed digits 0, 1, -1, ..., (b-1)/2, -(b-1)/2
instead of 0..b-1.  Negating a number negates its digits, the sign of a
number is the sign of its leftmost digit, and a pair of random digits
carries with probability ((b*b-1)/4)/b**2, less than the classical
C(b,2)/b**2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


def _check_base(base: int) -> None:
    if not isinstance(base, int) or base < 3 or base % 2 == 0:
        raise ValueError(f"base must be an odd integer >= 3, got {base!r}")


@dataclass(frozen=True)
class BalancedNumeral:
    """A signed-digit numeral, most-significant digit first.

    Digits lie in [-(base-1)/2, (base-1)/2] and zero is the empty digit
    vector.  Leading zeros are tolerated on input; ``to_balanced`` and
    ``add_with_trace`` always emit the canonical (no leading zero) form.
    """

    base: int
    digits: tuple[int, ...] = ()

    def __post_init__(self):
        _check_base(self.base)
        half = (self.base - 1) // 2
        for d in self.digits:
            if not isinstance(d, int) or abs(d) > half:
                raise ValueError(
                    f"digit {d!r} out of range for base {self.base} (|d| <= {half})"
                )

    @property
    def is_canonical(self) -> bool:
        return not self.digits or self.digits[0] != 0

    def canonical(self) -> "BalancedNumeral":
        """Strip leading zeros."""
        k = 0
        while k < len(self.digits) and self.digits[k] == 0:
            k += 1
        return BalancedNumeral(self.base, self.digits[k:])

    @property
    def sign(self) -> int:
        for d in self.digits:
            if d:
                return 1 if d > 0 else -1
        return 0


@dataclass(frozen=True)
class CarryTrace:
    """Carries of one multi-operand addition, least-significant column first.

    ``carries[0]`` is the carry into the first column and is always 0;
    adding n numbers keeps every carry in [-floor(n/2), floor(n/2)].
    """

    base: int
    operand_count: int
    carries: tuple[int, ...]

    def __post_init__(self):
        _check_base(self.base)
        if self.operand_count < 2:
            raise ValueError("operand_count must be >= 2")
        if self.carries and self.carries[0] != 0:
            raise ValueError("the carry into the first column must be 0")
        bound = self.operand_count // 2
        for k in self.carries:
            if abs(k) > bound:
                raise ValueError(f"carry {k} outside [{-bound}, {bound}]")


@dataclass(frozen=True)
class CarryTable:
    """Single-column carry table for adding two digits.

    Entries are -base, 0, or +base.  Balanced mode indexes digits
    -(b-1)/2..(b-1)/2 ascending; classical mode indexes 0..b-1.
    """

    base: int
    mode: str
    table: tuple[tuple[int, ...], ...]

    @property
    def carry_count(self) -> int:
        return sum(1 for row in self.table for entry in row if entry)


def to_balanced(value: int, base: int) -> BalancedNumeral:
    """Encode an integer in balanced digits, canonical form.

    Each step picks the unique digit congruent to the remainder that lies
    in [-(base-1)/2, (base-1)/2].
    """
    _check_base(base)
    if not isinstance(value, int):
        raise ValueError(f"value must be an integer, got {value!r}")
    half = (base - 1) // 2
    digits = []
    m = value
    while m != 0:
        d = (m + half) % base - half
        digits.append(d)
        m = (m - d) // base
    return BalancedNumeral(base, tuple(reversed(digits)))


def from_balanced(x: BalancedNumeral) -> int:
    """Decode a numeral; leading zeros are ignored."""
    value = 0
    for d in x.digits:
        value = value * x.base + d
    return value


def negate(x: BalancedNumeral) -> BalancedNumeral:
    """Negate a numeral by negating every digit."""
    return BalancedNumeral(x.base, tuple(-d for d in x.digits))


def add_with_trace(
    operands: Sequence[BalancedNumeral], base: int
) -> tuple[BalancedNumeral, CarryTrace]:
    """Add n >= 2 numerals column by column, recording the carry into each column.

    Shorter operands are padded with zeros and columns continue until both
    all digits and the running carry are exhausted.  The carry out of a
    column holding ``total = carry_in + digit sum`` is the j with
    j*base - (base-1)/2 <= total <= j*base + (base-1)/2.  The sum comes
    back canonical.
    """
    _check_base(base)
    ops = list(operands)
    if len(ops) < 2:
        raise ValueError("need at least two operands")
    for op in ops:
        if op.base != base:
            raise ValueError(f"operand base {op.base} does not match base {base}")
    half = (base - 1) // 2
    columns = max(len(op.digits) for op in ops)
    lsb_first = [op.digits[::-1] for op in ops]
    carries = [0]
    sum_lsb = []
    carry = 0
    col = 0
    while col < columns or carry != 0 or col == 0:
        total = carry + sum(d[col] for d in lsb_first if col < len(d))
        carry = (total + half) // base
        sum_lsb.append(total - carry * base)
        col += 1
        if col < columns or carry != 0:
            carries.append(carry)
    while sum_lsb and sum_lsb[-1] == 0:
        sum_lsb.pop()
    numeral = BalancedNumeral(base, tuple(reversed(sum_lsb)))
    return numeral, CarryTrace(base, len(ops), tuple(carries))


def carry_table(base: int, mode: str = "balanced") -> CarryTable:
    """Carry table for one pair of digits.

    The balanced table has (base**2 - 1)/4 nonzero entries, the classical
    one C(base, 2).
    """
    _check_base(base)
    if mode not in ("balanced", "classical"):
        raise ValueError(f"mode must be 'balanced' or 'classical', got {mode!r}")
    if mode == "classical":
        rows = tuple(
            tuple(base if i + j >= base else 0 for j in range(base))
            for i in range(base)
        )
    else:
        half = (base - 1) // 2
        span = range(-half, half + 1)

        def entry(i: int, j: int) -> int:
            s = i + j
            if s > half:
                return base
            if s < -half:
                return -base
            return 0

        rows = tuple(tuple(entry(i, j) for j in span) for i in span)
    return CarryTable(base, mode, rows)
