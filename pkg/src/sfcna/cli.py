"""Command-line interface.

Five commands: ``validate`` (market and chain conservation), ``identities``
(product and income identities), ``simulate`` (calibrate and run a
scenario), ``compile-matrix`` (transactions-matrix views), and ``report``
(full ledger dump). Exit codes are a stable contract: 0 clean, 1
validation violations, 2 usage or input errors.

All numbers are rendered fixed-point so reports are diffable and reruns
byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import dataset as ds
from . import identities, markets, matrixdsl, sectors, simulate
from .finland2011 import fixture_2011
from .ledger import LedgerError, exact, render

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_USAGE = 2

RECOMPUTE_DEFAULT_TOLERANCE = Fraction(15)


def _add_data_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--data", metavar="PATH", help="CSV dataset to load")
    source.add_argument(
        "--fixture-2011", action="store_true",
        help="use the embedded 2011 reference year",
    )


def _load_years(args: argparse.Namespace) -> list[ds.EconomyYear]:
    if getattr(args, "fixture_2011", False):
        return [fixture_2011()]
    data = ds.load(args.data)
    if not data:
        raise ds.DatasetError("dataset contains no years")
    return [data[year] for year in sorted(data)]


def _cmd_validate(args: argparse.Namespace, out) -> int:
    recompute = args.mode == "recompute"
    tolerance = exact(args.tolerance) if args.tolerance is not None else (
        RECOMPUTE_DEFAULT_TOLERANCE if recompute else Fraction(0)
    )
    status = EXIT_OK
    for year in _load_years(args):
        out.write(f"year {year.year} ({args.mode} mode)\n")
        violations = markets.check_all(year, recompute=recompute)
        for kind in markets.ZERO_SUM_KINDS:
            system = markets.from_year(year, kind, recompute=recompute)
            out.write(f"  market {kind:<7} residual {render(markets.clear(system))}\n")
        for kind in markets.OPEN_KINDS:
            system = markets.from_year(year, kind)
            out.write(f"  market {kind:<7} open, attributed total {render(markets.clear(system))}\n")
        residual_failures = []
        for chain in sectors.chain_residuals(year):
            out.write(
                f"  chain {chain.sector:<4} {chain.item:<22} residual {render(chain.residual)}\n"
            )
            if recompute and abs(chain.residual) > tolerance:
                residual_failures.append(chain)
        if violations:
            status = EXIT_VIOLATIONS
            for violation in violations:
                out.write(f"  VIOLATION {violation}\n")
        if residual_failures:
            status = EXIT_VIOLATIONS
            for chain in residual_failures:
                out.write(
                    f"  VIOLATION chain {chain.sector} {chain.item}: residual "
                    f"{render(chain.residual)} exceeds tolerance {render(tolerance)}\n"
                )
        identity = identities.report(year, recompute=recompute)
        out.write(f"  gdp expenditure {render(identity.gdp_expenditure)}\n")
        out.write(f"  gdp income      {render(identity.gdp_income)}\n")
        out.write(f"  gdp value-added {render(identity.gdp_value_added)}\n")
        out.write(
            f"  national income lhs {render(identity.national_income.lhs)} "
            f"rhs {render(identity.national_income.rhs)}\n"
        )
        if not identity.clean:
            status = EXIT_VIOLATIONS
            out.write("  VIOLATION identities do not hold\n")
    out.write("OK\n" if status == EXIT_OK else "FAIL\n")
    return status


def _cmd_identities(args: argparse.Namespace, out) -> int:
    status = EXIT_OK
    for year in _load_years(args):
        identity = identities.report(year)
        out.write(f"year {year.year}\n")
        out.write(f"  gdp expenditure {render(identity.gdp_expenditure)}\n")
        out.write(f"  gdp income      {render(identity.gdp_income)}\n")
        out.write(f"  gdp value-added {render(identity.gdp_value_added)}\n")
        out.write(f"  gdp residual    {render(identity.gdp_residual)}\n")
        out.write(f"  national income lhs {render(identity.national_income.lhs)}\n")
        out.write(f"  national income rhs {render(identity.national_income.rhs)}\n")
        out.write(f"  national income residual {render(identity.national_income.residual)}\n")
        if not identity.clean:
            status = EXIT_VIOLATIONS
    out.write("OK\n" if status == EXIT_OK else "FAIL\n")
    return status


def _cmd_simulate(args: argparse.Namespace, out) -> int:
    if args.fixture_2011:
        history: ds.Dataset | ds.EconomyYear = fixture_2011()
        last = history
    else:
        data = ds.load(args.calibrate)
        if not data:
            raise ds.DatasetError("dataset contains no years")
        history = data
        last = data[max(data)]
    rules = simulate.calibrate(history)
    config = simulate.parse_config(Path(args.config).read_text(encoding="utf-8"))
    state = simulate.SimulationState.initial(last)
    result = simulate.run(state, rules, config)
    csv_text = result.to_csv()
    if args.out:
        Path(args.out).write_text(csv_text, encoding="utf-8")
        out.write(f"wrote {len(result.states)} periods to {args.out}\n")
    else:
        out.write(csv_text)
    return EXIT_OK


def _cmd_compile_matrix(args: argparse.Namespace, out) -> int:
    text = Path(args.input).read_text(encoding="utf-8")
    matrix = matrixdsl.parse(text)
    if args.emit == "equations":
        for equation in matrixdsl.to_equations(matrix):
            out.write(str(equation) + "\n")
    elif args.emit == "taccounts":
        out.write(matrixdsl.render_taccounts(matrix))
    else:
        out.write(matrixdsl.to_flow_graph(matrix).to_dot())
    return EXIT_OK


def _cmd_report(args: argparse.Namespace, out) -> int:
    years = _load_years(args)
    if args.format == "json":
        payload = []
        for year in years:
            rows = [
                {
                    "sector": row.sector,
                    "item": row.item,
                    "direction": row.direction,
                    "value": render(row.value),
                    **(
                        {"source": year.source(row.sector, row.item, row.direction)}
                        if year.source(row.sector, row.item, row.direction)
                        else {}
                    ),
                }
                for row in year.rows()
            ]
            payload.append({"year": year.year, "rows": rows})
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        for year in years:
            out.write(f"year {year.year}\n")
            for row in year.rows():
                source = year.source(row.sector, row.item, row.direction)
                suffix = f"  [{source}]" if source else ""
                out.write(
                    f"  {row.sector:<4} {row.item:<7} {row.direction:<9} "
                    f"{render(row.value):>12}{suffix}\n"
                )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sfcna",
        description="Stock-flow-consistent national-accounts toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check conservation identities of a dataset")
    _add_data_arguments(p)
    p.add_argument("--mode", choices=("reported", "recompute"), default="reported")
    p.add_argument("--tolerance", metavar="MEUR", help="chain residual tolerance (recompute mode)")
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("identities", help="report GDP three ways and the income identity")
    _add_data_arguments(p)
    p.set_defaults(handler=_cmd_identities)

    p = sub.add_parser("simulate", help="calibrate from history and run a scenario")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--calibrate", metavar="PATH", help="CSV history to calibrate from")
    source.add_argument("--fixture-2011", action="store_true")
    p.add_argument("--config", required=True, metavar="PATH", help="scenario key-value file")
    p.add_argument("--out", metavar="PATH", help="write the time series CSV here")
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("compile-matrix", help="compile a transactions matrix")
    p.add_argument("--in", dest="input", required=True, metavar="PATH")
    p.add_argument("--emit", choices=("equations", "taccounts", "graph"), required=True)
    p.set_defaults(handler=_cmd_compile_matrix)

    p = sub.add_parser("report", help="dump a dataset ledger")
    _add_data_arguments(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_report)

    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return EXIT_USAGE if exc.code not in (0,) else EXIT_OK
    try:
        return args.handler(args, out)
    except (LedgerError, matrixdsl.DslError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
