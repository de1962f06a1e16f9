"""Wire encoding shared by the CLI.

Rationals travel as reduced "p/q" strings, big integers as decimal
strings, and every matrix payload is tagged with its index offset so a
JSON round trip reproduces the exact in-memory value.  Small structural
fields (operand counts, bases, offsets, tallies) stay plain JSON numbers.
"""

from __future__ import annotations

from fractions import Fraction

from balanced_carries.chain import CarriesMatrix


def fraction_str(value: Fraction) -> str:
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def matrix_payload(matrix: CarriesMatrix) -> dict:
    return {
        "n": matrix.n,
        "base": matrix.base,
        "offset": matrix.offset,
        "rows": [[fraction_str(v) for v in row] for row in matrix.entries],
    }


def matrix_from_payload(payload: dict) -> CarriesMatrix:
    rows = tuple(
        tuple(parse_fraction(v) for v in row) for row in payload["rows"]
    )
    return CarriesMatrix(payload["n"], payload["base"], payload["offset"], rows)


def int_rows(rows) -> list[list[str]]:
    return [[str(v) for v in row] for row in rows]


def envelope(command: str, parameters: dict, payload, method: str | None = None) -> dict:
    out = {"command": command, "parameters": parameters}
    if method is not None:
        out["method"] = method
    out["payload"] = payload
    return out
