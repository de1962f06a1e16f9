"""Integer spectral data of the balanced carries chain.

For an even operand count n the chain has eigenvalues 1, 1/b, ..., 1/b**n
and integer left/right eigenvectors that do not depend on the base.  The
top left eigenvector is the row of signed Eulerian numbers (descent counts
of signed permutations), which normalizes to the stationary distribution;
the right eigenvectors are coefficient slices of a family of monic
degree-n products, whose change of basis ``eulerian_idempotent_coeffs``
exposes.  ``verify_spectrum`` replays every identity in exact arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from balanced_carries.chain import CarriesMatrix, matrix_power, transition_matrix
from balanced_carries.errors import InvariantError
from balanced_carries.poly import poly_mul


def _check_even(n: int) -> None:
    if not isinstance(n, int) or n < 2 or n % 2:
        raise ValueError(f"operand count must be an even integer >= 2, got {n!r}")


def _check_index(n: int, j: int) -> None:
    if not isinstance(j, int) or not 0 <= j <= n:
        raise ValueError(f"index must be in [0, {n}], got {j!r}")


def signed_eulerian(n: int, k: int) -> int:
    """Number of signed permutations of n symbols with k descents.

    Descents use the order 1 < 2 < ... < n < -n < ... < -1, with one extra
    descent at the last position when the final value is negative.  The
    closed form is sum_r (-1)**r C(n+1, r) (2k - 2r + 1)**n.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    _check_index(n, k)
    return sum(
        (-1) ** r * math.comb(n + 1, r) * (2 * k - 2 * r + 1) ** n
        for r in range(k + 1)
    )


def descent_count(word: Sequence[int]) -> int:
    """Descents of a signed permutation given as its value sequence."""
    n = len(word)

    def key(v: int) -> int:
        return v if v > 0 else 2 * n + 1 + v

    descents = sum(1 for a, b in zip(word, word[1:]) if key(a) > key(b))
    if word and word[-1] < 0:
        descents += 1
    return descents


def signed_eulerian_by_enumeration(n: int) -> tuple[int, ...]:
    """Oracle: tally descents over all 2**n n! signed permutations."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    counts = [0] * (n + 1)
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            counts[descent_count([s * v for s, v in zip(signs, perm)])] += 1
    return tuple(counts)


def left_eigenvector(n: int, j: int) -> tuple[int, ...]:
    """Left eigenvector for eigenvalue 1/b**j over states -n/2..n/2.

    Entry at state i is sum_r (-1)**r C(n+1, r) (n + 2i - 2r + 1)**(n-j),
    r = 0..i+n/2.  Row j = 0 is the signed Eulerian row.
    """
    _check_even(n)
    _check_index(n, j)
    half = n // 2
    out = []
    for t in range(n + 1):
        i = t - half
        out.append(
            sum(
                (-1) ** r * math.comb(n + 1, r) * (n + 2 * i - 2 * r + 1) ** (n - j)
                for r in range(t + 1)
            )
        )
    return tuple(out)


def _factor_product(n: int, argument: int) -> list[int]:
    """Ascending coefficients of (x-n-2a+1)(x-n-2a+3)...(x-n-2a+2n-1)."""
    coeffs = [1]
    for s in range(1, 2 * n, 2):
        coeffs = poly_mul(coeffs, [s - n - 2 * argument, 1])
    return coeffs


def right_eigenvector(n: int, j: int) -> tuple[int, ...]:
    """Right eigenvector for eigenvalue 1/b**j over states -n/2..n/2.

    Entry at state i is the coefficient of x**(n-j) in the monic product
    (x-n-2i+1)(x-n-2i+3)...(x-n-2i+2n-1).  Column j = 0 is all ones.
    """
    _check_even(n)
    _check_index(n, j)
    half = n // 2
    return tuple(_factor_product(n, t - half)[n - j] for t in range(n + 1))


@dataclass(frozen=True)
class SpectralTables:
    """Both eigenvector tables for one even operand count.

    Row j of V is the left eigenvector for eigenvalue 1/b**j; row p of U
    is indexed by state, with column j the right eigenvector for 1/b**j.
    They pair up as U.V = 2**n n! I, exactly.
    """

    n: int
    V: tuple[tuple[int, ...], ...]
    U: tuple[tuple[int, ...], ...]


def spectral_tables(n: int) -> SpectralTables:
    _check_even(n)
    half = n // 2
    V = tuple(left_eigenvector(n, j) for j in range(n + 1))
    U = tuple(
        tuple(reversed(_factor_product(n, t - half))) for t in range(n + 1)
    )
    return SpectralTables(n, V, U)


@dataclass(frozen=True)
class FoulkesTable:
    """Integer table w[j][i], 0 <= i, j <= n.

    Row 0 is the signed Eulerian row, the last column alternates
    (-1)**j, and each deeper table is a first difference of the previous
    one.  For even n, w[j][i] equals the left eigenvector table with the
    state axis shifted by n/2.
    """

    n: int
    w: tuple[tuple[int, ...], ...]


def foulkes_table(n: int) -> FoulkesTable:
    """Build the character table twice and insist the results agree.

    The direct route evaluates w[j][i] = sum_r (-1)**r C(n+1, r)
    (2i - 2r + 1)**(n-j); the second route grows tables from size 1 using
    w_n[j][i] = w_{n-1}[j-1][i] - w_{n-1}[j-1][i-1] with the signed
    Eulerian row on top.  Disagreement raises InvariantError, since both
    routes are supposed to be exact.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    direct = tuple(
        tuple(
            sum(
                (-1) ** r * math.comb(n + 1, r) * (2 * i - 2 * r + 1) ** (n - j)
                for r in range(i + 1)
            )
            for i in range(n + 1)
        )
        for j in range(n + 1)
    )
    prev: tuple[tuple[int, ...], ...] = ((1,),)
    for m in range(1, n + 1):
        rows = [tuple(signed_eulerian(m, i) for i in range(m + 1))]
        for j in range(1, m + 1):
            upper = prev[j - 1]

            def get(idx: int) -> int:
                return upper[idx] if 0 <= idx < len(upper) else 0

            rows.append(tuple(get(i) - get(i - 1) for i in range(m + 1)))
        prev = tuple(rows)
    if prev != direct:
        raise InvariantError(f"character table mismatch at n={n}: formula vs recurrence")
    return FoulkesTable(n, direct)


@dataclass(frozen=True)
class StationaryDist:
    """Long-run carry law for an even operand count, indexed by carry state."""

    n: int
    probabilities: tuple[Fraction, ...]

    @property
    def states(self) -> tuple[int, ...]:
        return tuple(t - self.n // 2 for t in range(self.n + 1))

    def at(self, state: int) -> Fraction:
        return self.probabilities[state + self.n // 2]


def stationary(n: int) -> StationaryDist:
    """Stationary distribution: state j - n/2 has mass (signed Eulerian)/(2**n n!)."""
    _check_even(n)
    total = 2**n * math.factorial(n)
    probabilities = tuple(Fraction(signed_eulerian(n, j), total) for j in range(n + 1))
    return StationaryDist(n, probabilities)


@dataclass(frozen=True)
class SpectrumCheck:
    key: str
    description: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class SpectrumReport:
    """Outcome of the exact eigen-identity checks for one (n, base)."""

    n: int
    base: int
    checks: tuple[SpectrumCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self) -> SpectrumCheck | None:
        for check in self.checks:
            if not check.passed:
                return check
        return None


def verify_spectrum(
    n: int, base: int, tables: SpectralTables | None = None
) -> SpectrumReport:
    """Replay every spectral identity in exact rational arithmetic.

    Checks, all required: (a) v_j K = v_j / b**j for every j; (b)
    K u_j = u_j / b**j; (c) U.V = 2**n n! I; (d) pi K = pi with pi
    proportional to v_0.  The report names the first failing
    (eigenvector, state) pair per check; pass ``tables`` to audit a
    foreign table instead of the freshly computed one.
    """
    _check_even(n)
    K = transition_matrix(n, base)
    if tables is None:
        tables = spectral_tables(n)
    if tables.n != n:
        raise ValueError(f"tables are for n={tables.n}, expected {n}")
    states = K.states
    dim = n + 1
    scale = 2**n * math.factorial(n)
    checks = []

    passed, detail = True, ""
    for j in range(dim):
        vj = tables.V[j]
        denom = base**j
        for k_idx in range(dim):
            lhs = sum(vj[i_idx] * K.entries[i_idx][k_idx] for i_idx in range(dim))
            if lhs != Fraction(vj[k_idx], denom):
                passed, detail = False, (
                    f"left eigenvector j={j} fails at state {states[k_idx]}"
                )
                break
        if not passed:
            break
    checks.append(SpectrumCheck("a", "left eigenvectors: v_j K = v_j / b^j", passed, detail))

    passed, detail = True, ""
    for j in range(dim):
        uj = tuple(tables.U[p][j] for p in range(dim))
        denom = base**j
        for i_idx in range(dim):
            lhs = sum(K.entries[i_idx][k_idx] * uj[k_idx] for k_idx in range(dim))
            if lhs != Fraction(uj[i_idx], denom):
                passed, detail = False, (
                    f"right eigenvector j={j} fails at state {states[i_idx]}"
                )
                break
        if not passed:
            break
    checks.append(SpectrumCheck("b", "right eigenvectors: K u_j = u_j / b^j", passed, detail))

    passed, detail = True, ""
    for p in range(dim):
        for q in range(dim):
            value = sum(tables.U[p][k] * tables.V[k][q] for k in range(dim))
            expected = scale if p == q else 0
            if value != expected:
                passed, detail = False, (
                    f"U.V at states ({states[p]}, {states[q]}) is {value}, expected {expected}"
                )
                break
        if not passed:
            break
    checks.append(SpectrumCheck("c", "pairing: U.V = 2^n n! I", passed, detail))

    passed, detail = True, ""
    pi = stationary(n)
    for k_idx in range(dim):
        lhs = sum(
            pi.probabilities[i_idx] * K.entries[i_idx][k_idx] for i_idx in range(dim)
        )
        if lhs != pi.probabilities[k_idx]:
            passed, detail = False, f"pi K differs from pi at state {states[k_idx]}"
            break
    if passed:
        for k_idx in range(dim):
            if pi.probabilities[k_idx] * scale != tables.V[0][k_idx]:
                passed, detail = False, (
                    f"pi is not proportional to v_0 at state {states[k_idx]}"
                )
                break
    checks.append(SpectrumCheck("d", "stationarity: pi K = pi and pi ~ v_0", passed, detail))

    return SpectrumReport(n, base, tuple(checks))


def conditional_expectation(n: int, base: int, start: int, steps: int) -> Fraction:
    """Exact expected carry ``steps`` transitions after sitting at ``start``.

    Because the identity function on states is (up to scale) the second
    right eigenvector, this always equals start / base**steps.
    """
    _check_even(n)
    K = transition_matrix(n, base)
    if start not in K.states:
        raise ValueError(f"start state {start} not in {K.states}")
    powered = matrix_power(K, steps)
    return sum(Fraction(j) * powered.at(start, j) for j in powered.states)


def convergence_check(n: int, base: int, r: int) -> Fraction:
    """Max over states of |K**r(0, state) - pi(state)|, as an exact rational."""
    _check_even(n)
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"r must be an integer >= 1, got {r!r}")
    powered = matrix_power(transition_matrix(n, base), r)
    pi = stationary(n)
    return max(abs(powered.at(0, j) - pi.at(j)) for j in powered.states)


def eulerian_idempotent_coeffs(n: int, descents: int) -> tuple[Fraction, ...]:
    """Expand one monic factor product in the shifted basis (x - n)**k.

    For a signed permutation with ``descents`` descents the attached
    polynomial is (x-n-2d+1)(x-n-2d+3)...(x-n-2d+2n-1) / (2**n n!); the
    returned vector holds its coefficients against (x - n)**k for
    k = 0..n.  The top coefficient is always 1/(2**n n!), and scaling the
    expansion by 2**n n! recovers the right-eigenvector coefficient slices
    at argument d.
    """
    _check_even(n)
    _check_index(n, descents)
    coeffs = [1]
    for s in range(1, 2 * n, 2):
        coeffs = poly_mul(coeffs, [s - 2 * descents, 1])
    total = 2**n * math.factorial(n)
    return tuple(Fraction(c, total) for c in coeffs)
