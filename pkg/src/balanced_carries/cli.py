"""Command-line front end: one subcommand per operation family.

Exit codes: 0 success, 1 argument error, 2 failed verification, 3
enumeration budget exceeded.  Output formats are pretty (default), json
(an envelope with command, parameters, method, payload), and csv.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from fractions import Fraction

from balanced_carries.chain import (
    brute_force_matrix,
    matrix_power,
    transition_matrix,
    transition_matrix_binomial,
)
from balanced_carries.errors import BudgetError, InvariantError
from balanced_carries.numeral import BalancedNumeral, from_balanced, to_balanced
from balanced_carries.pointprocess import (
    a_closed,
    brute_force_string,
    one_dep_law,
    signed_pattern_probability,
    string_probability,
)
from balanced_carries.serialize import (
    envelope,
    fraction_str,
    int_rows,
    matrix_payload,
)
from balanced_carries.simulate import SimConfig, simulate_chain, simulate_column
from balanced_carries.spectral import (
    foulkes_table,
    spectral_tables,
    stationary,
    verify_spectrum,
)

CLOSED_FORM_RELATIVE_TOLERANCE = 1e-9


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _print_csv(rows) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    sys.stdout.write(buffer.getvalue())


def _emit(args, command, parameters, payload, pretty_lines, csv_rows, method=None) -> None:
    if args.format == "json":
        _print_json(envelope(command, parameters, payload, method))
    elif args.format == "csv":
        _print_csv(csv_rows)
    else:
        for line in pretty_lines:
            print(line)


def _digit_text(digits) -> str:
    return ",".join(str(d) for d in digits)


def cmd_convert(args) -> int:
    base = args.base
    if (args.integer is None) == (args.digits is None):
        raise ValueError("give exactly one of --int or --digits")
    if args.integer is not None:
        numeral = to_balanced(int(args.integer), base)
    else:
        digits = tuple(int(part) for part in args.digits.split(",") if part.strip() != "")
        numeral = BalancedNumeral(base, digits)
    value = from_balanced(numeral)
    payload = {"base": base, "digits": list(numeral.digits), "value": str(value)}
    pretty = [
        f"base:   {base}",
        f"digits: {_digit_text(numeral.digits)}",
        f"value:  {value}",
    ]
    csv_rows = [[base, _digit_text(numeral.digits), str(value)]]
    parameters = {"base": base, "int": args.integer, "digits": args.digits}
    _emit(args, "convert", parameters, payload, pretty, csv_rows)
    return 0


_MATRIX_METHODS = {
    "poly": (transition_matrix, "polynomial-coefficient"),
    "binomial": (transition_matrix_binomial, "binomial-sum"),
    "brute": (brute_force_matrix, "digit-enumeration"),
}


def cmd_matrix(args) -> int:
    build, method = _MATRIX_METHODS[args.method]
    matrix = build(args.n, args.base)
    if args.power != 1:
        matrix = matrix_power(matrix, args.power)
        method += f", power {args.power}"
    payload = matrix_payload(matrix)
    csv_rows = payload["rows"]
    width = max(len(cell) for row in payload["rows"] for cell in row)
    pretty = [f"carries chain: n={matrix.n} base={matrix.base} offset={matrix.offset}"]
    for state, row in zip(matrix.states, payload["rows"]):
        pretty.append(f"  {state:>3}: " + "  ".join(cell.rjust(width) for cell in row))
    parameters = {
        "n": args.n,
        "base": args.base,
        "method": args.method,
        "power": args.power,
    }
    _emit(args, "matrix", parameters, payload, pretty, csv_rows, method)
    return 0


def cmd_eigen(args) -> int:
    tables = spectral_tables(args.n)
    rows = tables.V if args.side == "left" else tables.U
    payload = {
        "n": args.n,
        "side": args.side,
        "offset": args.n // 2,
        "rows": int_rows(rows),
    }
    csv_rows = payload["rows"]
    if args.side == "left":
        header = "rows: eigenvalue index j; columns: states"
    else:
        header = "rows: states; columns: eigenvalue index j"
    width = max(len(cell) for row in payload["rows"] for cell in row)
    pretty = [f"{args.side} eigenvectors for n={args.n} ({header})"]
    for row in payload["rows"]:
        pretty.append("  " + "  ".join(cell.rjust(width) for cell in row))
    parameters = {"n": args.n, "side": args.side}
    _emit(args, "eigen", parameters, payload, pretty, csv_rows)
    return 0


def cmd_stationary(args) -> int:
    dist = stationary(args.n)
    values = [fraction_str(p) for p in dist.probabilities]
    payload = {"n": args.n, "offset": args.n // 2, "probabilities": values}
    pretty = [f"stationary carry law for n={args.n}"] + [
        f"  {state:>3}: {value}" for state, value in zip(dist.states, values)
    ]
    _emit(args, "stationary", {"n": args.n}, payload, pretty, [values])
    return 0


def cmd_foulkes(args) -> int:
    table = foulkes_table(args.n)
    payload = {"n": args.n, "rows": int_rows(table.w)}
    width = max(len(cell) for row in payload["rows"] for cell in row)
    pretty = [f"hyperoctahedral character table for n={args.n} (rows j, columns i)"]
    for row in payload["rows"]:
        pretty.append("  " + "  ".join(cell.rjust(width) for cell in row))
    _emit(args, "foulkes", {"n": args.n}, payload, pretty, payload["rows"])
    return 0


def cmd_verify(args) -> int:
    report = verify_spectrum(args.n, args.base)
    payload = {
        "n": report.n,
        "base": report.base,
        "passed": report.passed,
        "checks": [
            {
                "key": c.key,
                "description": c.description,
                "passed": c.passed,
                "detail": c.detail,
            }
            for c in report.checks
        ],
    }
    pretty = [f"spectral verification for n={args.n}, base={args.base}"]
    for c in report.checks:
        status = "PASS" if c.passed else f"FAIL ({c.detail})"
        pretty.append(f"  ({c.key}) {c.description}: {status}")
    pretty.append("all identities hold" if report.passed else "verification FAILED")
    csv_rows = [[c.key, c.description, "pass" if c.passed else "fail", c.detail] for c in report.checks]
    _emit(args, "verify", {"n": args.n, "base": args.base}, payload, pretty, csv_rows)
    return 0 if report.passed else 2


def cmd_ai(args) -> int:
    if args.max_i < 1:
        raise ValueError("--max-i must be >= 1")
    want_exact = args.method in ("exact", "both")
    want_closed = args.method in ("closed", "both")
    law = one_dep_law(args.base, args.max_i) if want_exact else None
    rows = []
    disagreement = False
    for i in range(1, args.max_i + 1):
        row = {"i": i, "exact": None, "exact_float": None, "closed": None, "agrees": None}
        if law is not None:
            exact = law.a[i - 1]
            row["exact"] = fraction_str(exact)
            row["exact_float"] = str(float(exact))
        if want_closed and i >= 2:
            closed = a_closed(i, args.base)
            row["closed"] = str(closed)
            if law is not None:
                exact_float = float(law.a[i - 1])
                agrees = abs(closed - exact_float) <= CLOSED_FORM_RELATIVE_TOLERANCE * exact_float
                row["agrees"] = agrees
                disagreement = disagreement or not agrees
        rows.append(row)
    payload = {"base": args.base, "rows": rows}
    pretty = [f"run probabilities for base {args.base} (i, exact, closed)"]
    csv_rows = []
    for row in rows:
        exact = row["exact"] or ""
        closed = row["closed"] or ""
        flag = "" if row["agrees"] in (None, True) else "  DISAGREES"
        pretty.append(f"  {row['i']:>3}  {exact:>16}  {closed}{flag}")
        csv_rows.append([row["i"], exact, closed, row["agrees"]])
    if disagreement:
        pretty.append("closed form DISAGREES with the exact values")
    _emit(args, "ai", {"base": args.base, "max_i": args.max_i, "method": args.method},
          payload, pretty, csv_rows)
    return 2 if disagreement else 0


def cmd_stringprob(args) -> int:
    pattern = args.pattern
    if set(pattern) <= {"0", "1"} and pattern:
        kind = "binary"
        probability = string_probability(pattern, args.base)
    elif set(pattern) <= {"+", "-", "0"} and pattern:
        kind = "signed"
        if args.check_oracle:
            raise ValueError("--check-oracle applies to binary patterns only")
        probability = signed_pattern_probability(pattern, args.base)
    else:
        raise ValueError(f"pattern must be over 0/1 or +/-/0, got {pattern!r}")
    payload = {
        "base": args.base,
        "pattern": pattern,
        "kind": kind,
        "probability": fraction_str(probability),
        "probability_float": str(float(probability)),
    }
    agrees = None
    if args.check_oracle:
        oracle = brute_force_string(pattern, args.base)
        agrees = oracle == probability
        payload["oracle"] = fraction_str(oracle)
        payload["oracle_agrees"] = agrees
    pretty = [
        f"P({pattern}) in base {args.base} = {payload['probability']}"
        f" = {payload['probability_float']}"
    ]
    if agrees is not None:
        pretty.append(f"enumeration oracle: {payload['oracle']} "
                      + ("(agrees)" if agrees else "(DISAGREES)"))
    csv_rows = [[args.base, pattern, payload["probability"], payload["probability_float"]]]
    _emit(args, "stringprob", {"base": args.base, "pattern": pattern,
                               "check_oracle": args.check_oracle}, payload, pretty, csv_rows)
    return 0 if agrees in (None, True) else 2


def _report_payload(report) -> dict:
    config = dataclasses.asdict(report.config)
    config["seed"] = str(config["seed"])
    return {
        "kind": report.kind,
        "config": config,
        "cells": [
            {
                "label": c.label,
                "observed": c.observed,
                "total": c.total,
                "empirical": fraction_str(c.empirical),
                "exact": fraction_str(c.exact),
                "abs_deviation": fraction_str(c.abs_deviation),
                "band_3sigma": str(c.band),
                "within_band": c.within_band,
            }
            for c in report.cells
        ],
        "max_abs_deviation": fraction_str(report.max_abs_deviation),
        "chi_square": str(report.chi_square),
        "all_within_band": report.all_within_band,
    }


def cmd_simulate(args) -> int:
    if args.mode == "chain":
        config = SimConfig(base=args.base, trials=args.trials, seed=args.seed,
                           n=args.n, digit_count=args.digits)
        report = simulate_chain(config)
    else:
        config = SimConfig(base=args.base, trials=args.trials, seed=args.seed,
                           column_height=args.height)
        report = simulate_column(config)
    payload = _report_payload(report)
    pretty = [
        f"{report.kind} simulation: base={config.base} trials={config.trials} seed={config.seed}",
        f"  {'cell':<16} {'observed/total':>20} {'empirical':>12} {'exact':>12} {'3s band':>10} ok",
    ]
    for c in report.cells:
        pretty.append(
            f"  {c.label:<16} {c.observed:>10}/{c.total:<9} {float(c.empirical):>12.6f}"
            f" {float(c.exact):>12.6f} {c.band:>10.6f} {'yes' if c.within_band else 'NO'}"
        )
    pretty.append(f"max |empirical - exact| = {float(report.max_abs_deviation):.3g}; "
                  f"chi-square {report.chi_square:.2f}")
    csv_rows = [[c.label, c.observed, c.total, fraction_str(c.empirical),
                 fraction_str(c.exact), c.band, c.within_band] for c in report.cells]
    parameters = {k: (str(v) if k == "seed" else v) for k, v in vars(args).items()
                  if k not in ("func", "format")}
    _emit(args, "simulate", parameters, payload, pretty, csv_rows)
    return 0


def _add_format(parser, choices=("pretty", "json", "csv")) -> None:
    parser.add_argument("--format", choices=choices, default="pretty")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="balanced-carries",
        description="Exact balanced-digit carries: numerals, chain, spectra, point process.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="encode/decode balanced numerals")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--int", dest="integer", help="decimal integer to encode")
    p.add_argument("--digits", help="comma-separated signed digits, e.g. 1,-2,-2")
    _add_format(p)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("matrix", help="carries chain transition matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--method", choices=sorted(_MATRIX_METHODS), default="poly")
    p.add_argument("--power", type=int, default=1)
    _add_format(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("eigen", help="integer eigenvector tables")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--side", choices=("left", "right"), required=True)
    _add_format(p)
    p.set_defaults(func=cmd_eigen)

    p = sub.add_parser("stationary", help="long-run carry distribution")
    p.add_argument("--n", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_stationary)

    p = sub.add_parser("foulkes", help="hyperoctahedral character table")
    p.add_argument("--n", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_foulkes)

    p = sub.add_parser("verify", help="exact spectral identity checks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--base", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ai", help="run probabilities of the column process")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--max-i", type=int, required=True)
    p.add_argument("--method", choices=("exact", "closed", "both"), default="both")
    _add_format(p)
    p.set_defaults(func=cmd_ai)

    p = sub.add_parser("stringprob", help="pattern probabilities down a column")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--pattern", required=True,
                   help="binary pattern like 0110, or signed pattern like +0-")
    p.add_argument("--check-oracle", action="store_true",
                   help="cross-check a binary pattern against enumeration")
    _add_format(p)
    p.set_defaults(func=cmd_stringprob)

    p = sub.add_parser("simulate", help="seeded Monte Carlo cross-checks")
    sim_sub = p.add_subparsers(dest="mode", required=True)
    chain = sim_sub.add_parser("chain", help="carries across the top")
    chain.add_argument("--base", type=int, required=True)
    chain.add_argument("--n", type=int, default=2)
    chain.add_argument("--digits", type=int, required=True)
    chain.add_argument("--trials", type=int, required=True)
    chain.add_argument("--seed", type=int, required=True)
    _add_format(chain)
    chain.set_defaults(func=cmd_simulate, mode="chain")
    column = sim_sub.add_parser("column", help="carries down a column")
    column.add_argument("--base", type=int, required=True)
    column.add_argument("--height", type=int, required=True)
    column.add_argument("--trials", type=int, required=True)
    column.add_argument("--seed", type=int, required=True)
    _add_format(column)
    column.set_defaults(func=cmd_simulate, mode="column")

    return parser


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InvariantError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
