"""Seeded Monte Carlo cross-checks of both carries processes.

The generator is splitmix64 (Steele/Lea/Burton, as distributed by Vigna):
the 64-bit state advances by the golden-ratio constant and the output is a
two-round xor-shift-multiply mix.  Bounded integers use unbiased rejection
sampling.  Each trial runs on its own derived sub-seed, so trials can be
sharded and merged in any order; identical configurations give
bit-identical reports.  Every empirical frequency is paired with the exact
value from the chain or point-process modules and a 3-sigma binomial band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from balanced_carries.chain import transition_matrix
from balanced_carries.errors import InvariantError
from balanced_carries.numeral import BalancedNumeral, add_with_trace
from balanced_carries.pointprocess import a_exact, signed_pattern_probability
from balanced_carries.spectral import stationary

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

RUN_LENGTHS = (2, 3, 4, 5, 6)
PAIR_PATTERNS = ("++", "--", "+-", "-+", "+0", "0+", "-0", "0-", "00")
TRIPLE_PATTERNS = ("+0+", "-0-")


class Splitmix64:
    """splitmix64 stream over a 64-bit state."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        if not isinstance(seed, int) or not 0 <= seed <= _MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
        self.state = seed

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection; no modulo bias."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            value = self.next_u64()
            if value < limit:
                return value % bound


@dataclass(frozen=True)
class SimConfig:
    """One simulation setup; chain runs use n and digit_count, column runs
    use column_height."""

    base: int
    trials: int
    seed: int
    n: int = 2
    digit_count: int = 0
    column_height: int = 0

    def __post_init__(self):
        if not isinstance(self.base, int) or self.base < 3 or self.base % 2 == 0:
            raise ValueError(f"base must be an odd integer >= 3, got {self.base!r}")
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed <= _MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"operand count must be >= 2, got {self.n!r}")
        if self.digit_count < 0 or self.column_height < 0:
            raise ValueError("digit_count and column_height must be nonnegative")


@dataclass(frozen=True)
class SimCell:
    """One empirical-vs-exact comparison."""

    label: str
    observed: int
    total: int
    empirical: Fraction
    exact: Fraction
    abs_deviation: Fraction
    band: float
    within_band: bool


def _cell(label: str, observed: int, total: int, exact: Fraction) -> SimCell:
    empirical = Fraction(observed, total)
    deviation = abs(empirical - exact)
    p = float(exact)
    band = 3.0 * math.sqrt(p * (1.0 - p) / total)
    return SimCell(label, observed, total, empirical, exact, deviation, band,
                   float(deviation) <= band)


@dataclass(frozen=True)
class SimReport:
    """All comparison cells of one run plus summary statistics."""

    kind: str
    config: SimConfig
    cells: tuple[SimCell, ...]
    max_abs_deviation: Fraction
    chi_square: float

    @property
    def all_within_band(self) -> bool:
        return all(c.within_band for c in self.cells)

    def cells_with_prefix(self, prefix: str) -> tuple[SimCell, ...]:
        return tuple(c for c in self.cells if c.label.startswith(prefix))


def _subseeds(config: SimConfig) -> list[int]:
    master = Splitmix64(config.seed)
    return [master.next_u64() for _ in range(config.trials)]


def random_digit(rng: Splitmix64, base: int) -> int:
    """One uniform balanced digit."""
    return rng.below(base) - (base - 1) // 2


def simulate_chain(config: SimConfig) -> SimReport:
    """Add random numerals repeatedly and compare the carry transitions.

    Each trial draws n random digit strings of the configured length, runs
    the traced addition, and tallies consecutive carry pairs (transition
    frequencies) and carry states (occupancy, compared against the
    stationary law when n is even).
    """
    if config.digit_count < 2:
        raise ValueError("digit_count must be >= 2 for chain simulation")
    K = transition_matrix(config.n, config.base)
    states = K.states
    transitions = {(i, j): 0 for i in states for j in states}
    occupancy = {i: 0 for i in states}
    for sub in _subseeds(config):
        rng = Splitmix64(sub)
        operands = [
            BalancedNumeral(
                config.base,
                tuple(random_digit(rng, config.base) for _ in range(config.digit_count)),
            )
            for _ in range(config.n)
        ]
        _, trace = add_with_trace(operands, config.base)
        sequence = trace.carries
        for state in sequence:
            occupancy[state] += 1
        for a, b in zip(sequence, sequence[1:]):
            transitions[(a, b)] += 1
    cells = []
    chi_square = 0.0
    for i in states:
        row_total = sum(transitions[(i, j)] for j in states)
        if row_total == 0:
            continue
        for j in states:
            cells.append(_cell(f"K({i},{j})", transitions[(i, j)], row_total, K.at(i, j)))
            expected = float(K.at(i, j)) * row_total
            if expected > 0.0:
                chi_square += (transitions[(i, j)] - expected) ** 2 / expected
    if config.n % 2 == 0:
        pi = stationary(config.n)
        total_states = sum(occupancy.values())
        for j in states:
            cells.append(_cell(f"pi({j})", occupancy[j], total_states, pi.at(j)))
    max_deviation = max(c.abs_deviation for c in cells)
    return SimReport("chain", config, tuple(cells), max_deviation, chi_square)


def simulate_column(config: SimConfig) -> SimReport:
    """Stream columns of random digits and compare the signed carry process.

    Reports empirical run probabilities a_i (windows of i-1 consecutive
    carries) and signed pair frequencies against their exact values.
    Observing ++ or -- anywhere, or +0+/-0- in base 3, raises
    InvariantError: those patterns are impossible when the generator and
    the remainder rule are correct.
    """
    if config.column_height < 4:
        raise ValueError("column_height must be >= 4 for column simulation")
    base = config.base
    half = (base - 1) // 2
    threshold = (base + 1) // 2
    symbol = {1: "+", -1: "-", 0: "0"}
    run_lengths = tuple(i for i in RUN_LENGTHS if i - 1 <= config.column_height - 1)
    run_counts = {i: 0 for i in run_lengths}
    run_windows = {i: 0 for i in run_lengths}
    pair_counts = {p: 0 for p in PAIR_PATTERNS}
    triple_counts = {p: 0 for p in TRIPLE_PATTERNS}
    pair_windows = 0
    triple_windows = 0
    for sub in _subseeds(config):
        rng = Splitmix64(sub)
        remainder = 0
        remainders = []
        for _ in range(config.column_height):
            remainder = (remainder + random_digit(rng, base) + half) % base - half
            remainders.append(remainder)
        signs = []
        for prev, nxt in zip(remainders, remainders[1:]):
            diff = prev - nxt
            signs.append(1 if diff >= threshold else (-1 if diff <= -threshold else 0))
        for a, b in zip(signs, signs[1:]):
            if a != 0 and a == b:
                raise InvariantError("two consecutive equal signed carries observed")
            pair_counts[symbol[a] + symbol[b]] += 1
        pair_windows += len(signs) - 1
        for a, b, c in zip(signs, signs[1:], signs[2:]):
            if a != 0 and b == 0 and c == a:
                if base == 3:
                    raise InvariantError("+0+/-0- observed in base 3")
                triple_counts[symbol[a] + "0" + symbol[c]] += 1
        triple_windows += len(signs) - 2
        ones = [1 if s else 0 for s in signs]
        maximal_runs = []
        run = 0
        for v in ones:
            if v:
                run += 1
            elif run:
                maximal_runs.append(run)
                run = 0
        if run:
            maximal_runs.append(run)
        for i in run_lengths:
            window = i - 1
            run_windows[i] += len(ones) - window + 1
            run_counts[i] += sum(r - window + 1 for r in maximal_runs if r >= window)
    cells = []
    for i in run_lengths:
        cells.append(_cell(f"a_{i}", run_counts[i], run_windows[i], a_exact(i, base)))
    chi_square = 0.0
    for pattern in PAIR_PATTERNS:
        exact = signed_pattern_probability(pattern, base)
        cells.append(_cell(f"pattern({pattern})", pair_counts[pattern], pair_windows, exact))
        expected = float(exact) * pair_windows
        if expected > 0.0:
            chi_square += (pair_counts[pattern] - expected) ** 2 / expected
    for pattern in TRIPLE_PATTERNS:
        exact = signed_pattern_probability(pattern, base)
        cells.append(_cell(f"pattern({pattern})", triple_counts[pattern], triple_windows, exact))
    max_deviation = max(c.abs_deviation for c in cells)
    return SimReport("column", config, tuple(cells), max_deviation, chi_square)
