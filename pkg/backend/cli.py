"""
Command-line front end.

    python cli.py arcsin-iter --jya "224'50''22'''" --trace
    python cli.py circumference --diameter 1400 --approx 4400 --format json

The result is always the last line on stdout. Exit status is 0 on success,
1 on domain or convergence errors and 2 on usage errors.
"""
import argparse
from contextlib import redirect_stderr, redirect_stdout
import csv
from fractions import Fraction
import io
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Sequence, TextIO

from dotenv import load_dotenv
from pydantic import ValidationError

from models import ArcResult, CliConfig
from services.arc_method_service import (
    arc_thirds_from_text,
    coefficients_response,
    error_scan_response,
    format_decimal,
    lookup_table_response,
    madhava_table_response,
    resolve_radius,
    run_bhaskara_sin,
    run_brahmagupta_arcsin,
    run_convert,
    run_circumference,
    run_iterative_arcsin,
    run_jya,
    run_large_arcsin,
    run_small_arcsin,
    run_table_arcsin,
)
from services.errors import ConvergenceError, KeralaArcError, SexagesimalParseError
from services.lookup_table_service import TableMode
from services.pdf_service import generate_report_pdf
from services.sexagesimal_service import ArcUnit, parse_arc_text, thirds_in_unit

logger = logging.getLogger(__name__)


class UsageError(Exception):
    """Bad arguments detected after argparse accepted them"""


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--radius", help="Radius in sexagesimal minutes (default: KERALA_RADIUS or 3437'44''48''')")
    common.add_argument("--unit", choices=[u.value for u in ArcUnit], default=ArcUnit.MINUTES.value,
                        help="Unit of bare numeric arcs (default: minutes).")
    common.add_argument("--format", dest="output_format", choices=["sexagesimal", "decimal", "json"],
                        default="sexagesimal", help="Result format (default: sexagesimal).")
    common.add_argument("--precision", type=int, default=12, help="Significant digits for decimal output (1..40).")
    common.add_argument("--trace", action="store_true", help="Print intermediate steps before the result.")
    common.add_argument("--unicode", action="store_true", help="Use ′ ″ ‴ instead of apostrophes.")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="kerala-arcsin", description="Exact arcsin methods of the Kerala school.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sin-bhaskara", parents=[common], help="Bhāskara I's rational sine")
    p.add_argument("--deg", required=True, help="Angle in degrees, 0..180")

    p = sub.add_parser("arcsin-brahmagupta", parents=[common], help="Brahmagupta's arcsin, in degrees")
    p.add_argument("--jya", required=True)

    p = sub.add_parser("jya", parents=[common], help="jyā of an arc")
    p.add_argument("--arc", required=True)
    p.add_argument("--method", choices=["series", "cubic", "bhaskara"], default="series")

    p = sub.add_parser("arcsin-small", parents=[common], help="m + m³/6r²")
    p.add_argument("--jya", required=True)

    p = sub.add_parser("arcsin-iter", parents=[common], help="Śankara Vāriyar's iteration")
    p.add_argument("--jya", required=True)
    p.add_argument("--max-iter", type=int, default=50)
    p.add_argument("--exact", action="store_true", help="Do not round Δ to thirds between steps.")

    p = sub.add_parser("arcsin-table", parents=[common], help="Arc-jyā difference lookup table")
    p.add_argument("--jya", required=True)
    p.add_argument("--mode", choices=[m.value for m in TableMode], default=TableMode.COMMENTARY.value)

    p = sub.add_parser("arcsin-large", parents=[common], help="Large jyā via the 24-entry sine table")
    p.add_argument("--jya", required=True)

    p = sub.add_parser("circumference", parents=[common], help="Refine an approximate circumference")
    p.add_argument("--diameter", required=True)
    p.add_argument("--approx", required=True)

    p = sub.add_parser("tables", parents=[common], help="Emit the sine table or the lookup table")
    p.add_argument("name", choices=["madhava", "lookup"])
    p.add_argument("--mode", choices=[m.value for m in TableMode], default=TableMode.COMMENTARY.value)

    p = sub.add_parser("error-scan", parents=[common], help="Relative error of Bhāskara's sine")
    p.add_argument("--step", default="1", help="Degree step (default: 1)")
    p.add_argument("--digits", type=int, default=None, help="Oracle precision (default: ORACLE_DIGITS)")

    p = sub.add_parser("coeffs", parents=[common], help="Iteration coefficients next to A001764")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--order", type=int, default=None)

    p = sub.add_parser("convert", parents=[common], help="Convert an arc between units")
    p.add_argument("value")
    p.add_argument("--to", choices=[u.value for u in ArcUnit], default=ArcUnit.THIRDS.value)

    p = sub.add_parser("report", parents=[common], help="Write the worked-example PDF")
    p.add_argument("--out", required=True)

    return parser


def _config(args: argparse.Namespace) -> CliConfig:
    try:
        return CliConfig(
            radius_thirds=resolve_radius(args.radius).thirds,
            unit=ArcUnit(args.unit),
            output_format=args.output_format,
            precision=args.precision,
            trace=args.trace,
            unicode=args.unicode,
        )
    except ValidationError as e:
        raise UsageError(str(e)) from None


def _arc(text: str, config: CliConfig) -> int:
    return arc_thirds_from_text(text, config.unit)


def _emit_result(result: ArcResult, config: CliConfig, out: TextIO):
    if config.output_format == "json":
        out.write(json.dumps(result.model_dump(exclude_none=True), ensure_ascii=False) + "\n")
        return
    if config.trace and result.trace:
        for row in result.trace:
            out.write(" ".join(f"{key}={val}" for key, val in row.items()) + "\n")
    if config.output_format == "decimal":
        if result.value is not None:
            out.write(result.value + "\n")
        else:
            exact = thirds_in_unit(result.result_thirds, config.unit)
            out.write(format_decimal(exact, config.precision) + "\n")
        return
    out.write(result.result_sexagesimal + "\n")


def _emit_rows(rows: List[Dict[str, Any]], columns: Sequence[str], out: TextIO):
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([row[col] for col in columns])


def _run_command(args: argparse.Namespace, config: CliConfig, out: TextIO):
    r = config.radius
    command = args.command

    if command == "sin-bhaskara":
        degrees = parse_arc_text(args.deg, ArcUnit.DEGREES) / 60
        _emit_result(run_bhaskara_sin(degrees, r, config.precision, config.unicode), config, out)
    elif command == "arcsin-brahmagupta":
        m = parse_arc_text(args.jya, config.unit)
        _emit_result(run_brahmagupta_arcsin(m, r, config.precision, config.unicode), config, out)
    elif command == "jya":
        _emit_result(run_jya(_arc(args.arc, config), r, args.method, config.unicode), config, out)
    elif command == "arcsin-small":
        _emit_result(run_small_arcsin(_arc(args.jya, config), r, config.unicode), config, out)
    elif command == "arcsin-iter":
        result = run_iterative_arcsin(
            _arc(args.jya, config), r, args.max_iter, not args.exact, config.trace, config.unicode
        )
        _emit_result(result, config, out)
    elif command == "arcsin-table":
        result = run_table_arcsin(_arc(args.jya, config), r, TableMode(args.mode), config.trace, config.unicode)
        _emit_result(result, config, out)
    elif command == "arcsin-large":
        _emit_result(run_large_arcsin(_arc(args.jya, config), r, config.trace, config.unicode), config, out)
    elif command == "circumference":
        diameter = parse_arc_text(args.diameter, config.unit)
        approx = parse_arc_text(args.approx, config.unit)
        _emit_result(run_circumference(diameter, approx, r, config.trace, config.unicode), config, out)
    elif command == "convert":
        minutes = parse_arc_text(args.value, config.unit)
        _emit_result(run_convert(minutes, ArcUnit(args.to), r, config.precision, config.unicode), config, out)
    elif command == "tables":
        if args.name == "madhava":
            table = madhava_table_response(r, config.unicode)
            columns = ["j", "arc_minutes", "jya_sexagesimal", "jya_thirds"]
        else:
            table = lookup_table_response(r, TableMode(args.mode), config.unicode)
            columns = ["k", "jya_sexagesimal", "arc_sexagesimal", "katapayadi"]
        if config.output_format == "json":
            out.write(json.dumps(table.model_dump(mode="json", exclude_none=True), ensure_ascii=False) + "\n")
        else:
            _emit_rows(table.rows, columns, out)
    elif command == "error-scan":
        try:
            step = Fraction(args.step)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"invalid --step {args.step!r}") from None
        scan = error_scan_response(step, args.digits, config.precision)
        if config.output_format == "json":
            out.write(json.dumps(scan.model_dump()) + "\n")
        else:
            columns = ["x_deg", "approx", "exact", "rel_err_percent"]
            _emit_rows([row.model_dump() for row in scan.rows], columns, out)
            out.write(
                f"# max {scan.max_rel_err_percent}% at x={scan.max_x_deg}; "
                f"limit as x->0+ {scan.small_x_limit_percent}%\n"
            )
    elif command == "coeffs":
        coeffs = coefficients_response(args.n, args.order)
        if config.output_format == "json":
            out.write(json.dumps(coeffs.model_dump()) + "\n")
        else:
            _emit_rows([row.model_dump() for row in coeffs.rows], ["grade", "coefficient", "a001764", "matches"], out)
            out.write(f"# prefix 0..{coeffs.n} matches: {coeffs.prefix_matches}\n")
    elif command == "report":
        with open(args.out, "wb") as f:
            f.write(generate_report_pdf(r))
        out.write(args.out + "\n")


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """Run one command; returns the exit status"""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()

    try:
        with redirect_stdout(stdout), redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2

    # Buffer so that errors never leave a partial result behind
    buffer = io.StringIO()
    try:
        config = _config(args)
        _run_command(args, config, buffer)
    except (UsageError, SexagesimalParseError) as e:
        parser.print_usage(stderr)
        stderr.write(f"error: {e}\n")
        return 2
    except ConvergenceError as e:
        stderr.write(f"error: {e}\n")
        if e.trace is not None and args.trace:
            for step in e.trace.to_rows():
                stderr.write(" ".join(f"{key}={val}" for key, val in step.items()) + "\n")
        return 1
    except KeralaArcError as e:
        stderr.write(f"error: {e}\n")
        return 1
    except OSError as e:
        stderr.write(f"error: cannot write {e.filename}: {e.strerror}\n")
        return 1

    stdout.write(buffer.getvalue())
    return 0


def main() -> int:
    load_dotenv()
    logging.basicConfig(
        level=os.getenv("LOG_LEVEL", "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    return run()


if __name__ == "__main__":
    sys.exit(main())
