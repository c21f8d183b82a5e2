"""
Method runners shared by the CLI and the HTTP API.

Each runner takes exact, already-parsed inputs, calls the owning service and
wraps the answer in the ArcResult envelope.
"""
from fractions import Fraction
import logging
from typing import Any, Dict, List, Optional, Union

from mpmath import mp, mpf

from models import (
    ArcResult,
    CoefficientRow,
    CoefficientsResponse,
    ErrorScanResponse,
    ErrorScanRowModel,
    TableResponse,
)
from services.circumference_service import refine_circumference
from services.classical_service import bhaskara_error_scan, bhaskara_jya, bhaskara_sin, brahmagupta_arcsin
from services.large_arc_service import arcsin_large, build_madhava_table, format_madhava_table_for_api
from services.lookup_table_service import (
    TableMode,
    build_lookup_table,
    format_lookup_table_for_api,
    lookup_arc,
)
from services.sexagesimal_service import (
    THIRDS_PER_DEGREE,
    THIRDS_PER_MINUTE,
    ArcThirds,
    ArcUnit,
    RadiusConstant,
    RationalArc,
    default_radius,
    degrees_to_thirds,
    format_sexagesimal,
    parse_arc_text,
    radius_from_text,
    round_fraction,
    round_to_thirds,
    thirds_in_unit,
)
from services.small_arc_service import (
    a001764,
    arcsin_poly3,
    cubic_jya,
    iterate_coeff_series,
    madhava_jya,
    variyar_arcsin,
)
from services.trig_oracle_service import resolve_digits, to_mpf

logger = logging.getLogger(__name__)

Number = Union[int, Fraction, mpf]


def format_decimal(value: Number, precision: int = 12) -> str:
    """Decimal text with `precision` significant digits"""
    with mp.workdps(max(precision + 10, resolve_digits(None))):
        return mp.nstr(to_mpf(value), precision)


def resolve_radius(text: Optional[str]) -> RadiusConstant:
    return radius_from_text(text) if text else default_radius()


def arc_thirds_from_text(text: str, unit: ArcUnit = ArcUnit.MINUTES) -> ArcThirds:
    """Parse an arc and round it to whole thirds"""
    return round_to_thirds(parse_arc_text(text, unit))


def _envelope(
    method: str,
    inputs: Dict[str, Any],
    r: RadiusConstant,
    thirds: ArcThirds,
    unicode: bool = False,
    value: Optional[str] = None,
    trace: Optional[List[Dict[str, Any]]] = None,
) -> ArcResult:
    return ArcResult(
        method=method,
        inputs={key: str(val) for key, val in inputs.items()},
        radius_thirds=r.thirds,
        result_thirds=thirds,
        result_sexagesimal=format_sexagesimal(thirds, unicode=unicode),
        value=value,
        trace=trace,
    )


def run_bhaskara_sin(degrees: Fraction, r: RadiusConstant, precision: int = 12, unicode: bool = False) -> ArcResult:
    """sin(x°); result_thirds carries the jyā r·sin(x°)"""
    sine = bhaskara_sin(degrees)
    return _envelope(
        "sin-bhaskara",
        {"degrees": degrees},
        r,
        round_fraction(r.thirds * sine),
        unicode,
        value=format_decimal(sine, precision),
    )


def run_brahmagupta_arcsin(m: RationalArc, r: RadiusConstant, precision: int = 12, unicode: bool = False) -> ArcResult:
    """Arc in degrees; result_thirds carries the same angle as arc thirds"""
    degrees = brahmagupta_arcsin(m, r)
    return _envelope(
        "arcsin-brahmagupta",
        {"jya_minutes": m},
        r,
        round_fraction(degrees_to_thirds(degrees)),
        unicode,
        value=format_decimal(degrees, precision),
    )


def run_jya(s: ArcThirds, r: RadiusConstant, method: str = "series", unicode: bool = False) -> ArcResult:
    if method == "series":
        jya = madhava_jya(s, r)
    elif method == "cubic":
        jya = cubic_jya(s, r)
    else:
        jya = round_to_thirds(bhaskara_jya(Fraction(s, THIRDS_PER_DEGREE), r))
    return _envelope(f"jya-{method}", {"arc_thirds": s}, r, jya, unicode)


def run_small_arcsin(m: ArcThirds, r: RadiusConstant, unicode: bool = False) -> ArcResult:
    return _envelope("arcsin-small", {"jya_thirds": m}, r, arcsin_poly3(m, r), unicode)


def run_iterative_arcsin(
    m: ArcThirds,
    r: RadiusConstant,
    max_iter: int = 50,
    rounding: bool = True,
    trace: bool = False,
    unicode: bool = False,
) -> ArcResult:
    s, iteration = variyar_arcsin(m, r, max_iter=max_iter, rounding=rounding)
    logger.info(f"Iterative arcsin of {m}''' settled after {len(iteration.steps)} step(s)")
    return _envelope(
        "arcsin-iter",
        {"jya_thirds": m, "max_iter": max_iter, "rounding": rounding},
        r,
        round_fraction(s),
        unicode,
        trace=iteration.to_rows(unicode) if trace else None,
    )


def run_table_arcsin(
    m: ArcThirds,
    r: RadiusConstant,
    mode: TableMode = TableMode.COMMENTARY,
    trace: bool = False,
    unicode: bool = False,
) -> ArcResult:
    arc, entry, distance = lookup_arc(build_lookup_table(r, mode), m)
    rows = [{
        "k": entry.k,
        "jya_thirds": entry.jya,
        "jya_sexagesimal": format_sexagesimal(entry.jya, unicode=unicode),
        "arc_thirds": entry.arc,
        "distance_thirds": distance,
        "katapayadi": entry.katapayadi_label,
    }]
    return _envelope(
        "arcsin-table",
        {"jya_thirds": m, "mode": mode.value},
        r,
        arc,
        unicode,
        trace=rows if trace else None,
    )


def run_large_arcsin(m: ArcThirds, r: RadiusConstant, trace: bool = False, unicode: bool = False) -> ArcResult:
    table = build_madhava_table(r)
    result = arcsin_large(m, r, table)
    rows = [{
        "j": result.j,
        "s1_thirds": result.s1,
        "s1_sexagesimal": format_sexagesimal(result.s1, unicode=unicode),
        "jya_s1_thirds": table.jya(result.j),
        "kojya_s1_thirds": table.kojya(result.j),
        "kojya_m_thirds": result.kojya_m,
        "p_thirds": result.p,
        "branch": result.branch.value,
    }]
    return _envelope(
        "arcsin-large",
        {"jya_thirds": m},
        r,
        result.s,
        unicode,
        trace=rows if trace else None,
    )


def run_circumference(
    diameter: RationalArc,
    approx: RationalArc,
    r: RadiusConstant,
    trace: bool = False,
    unicode: bool = False,
) -> ArcResult:
    C, chain = refine_circumference(diameter, approx)
    rows = None
    if trace:
        rows = [
            {
                "label": label,
                "value_thirds": round_to_thirds(value),
                "value_sexagesimal": format_sexagesimal(round_to_thirds(value), unicode=unicode),
            }
            for label, value in chain.rows()
        ]
        rows.append({"label": "direction", "value_thirds": 0, "value_sexagesimal": chain.direction.value})
        for label, printed, recomputed in chain.printed_deviations():
            rows.append({
                "label": f"{label} (printed)",
                "value_thirds": round_to_thirds(printed),
                "value_sexagesimal": format_sexagesimal(round_to_thirds(printed), unicode=unicode),
            })
    return _envelope(
        "circumference",
        {"diameter_minutes": diameter, "approx_minutes": approx},
        r,
        round_to_thirds(C),
        unicode,
        trace=rows,
    )


def run_convert(
    minutes: RationalArc,
    target: ArcUnit,
    r: RadiusConstant,
    precision: int = 12,
    unicode: bool = False,
) -> ArcResult:
    exact = thirds_in_unit(minutes * THIRDS_PER_MINUTE, target)
    return _envelope(
        "convert",
        {"minutes": minutes, "to": target.value},
        r,
        round_to_thirds(minutes),
        unicode,
        value=format_decimal(exact, precision),
    )


def madhava_table_response(r: RadiusConstant, unicode: bool = False) -> TableResponse:
    return TableResponse(
        table="madhava",
        radius_thirds=r.thirds,
        rows=format_madhava_table_for_api(build_madhava_table(r), unicode),
    )


def lookup_table_response(r: RadiusConstant, mode: TableMode = TableMode.COMMENTARY, unicode: bool = False) -> TableResponse:
    return TableResponse(
        table="lookup",
        radius_thirds=r.thirds,
        mode=mode,
        rows=format_lookup_table_for_api(build_lookup_table(r, mode), unicode),
    )


def error_scan_response(step: Fraction, digits: Optional[int] = None, precision: int = 12) -> ErrorScanResponse:
    scan = bhaskara_error_scan(step, digits)
    rows = [
        ErrorScanRowModel(
            x_deg=format_decimal(row.x, precision),
            approx=format_decimal(row.approx, precision),
            exact=format_decimal(row.exact, precision),
            rel_err_percent=format_decimal(row.rel_err_percent, precision),
        )
        for row in scan.rows
    ]
    return ErrorScanResponse(
        step=format_decimal(scan.step, precision),
        digits=scan.digits,
        max_x_deg=format_decimal(scan.max_row.x, precision),
        max_rel_err_percent=format_decimal(scan.max_row.rel_err_percent, precision),
        small_x_limit_percent=format_decimal(scan.small_x_limit_percent, precision),
        rows=rows,
    )


def coefficients_response(n: int, order: Optional[int] = None) -> CoefficientsResponse:
    """Coefficients of the n-th iterate next to the ternary-tree numbers"""
    series = iterate_coeff_series(n, order)
    rows = [
        CoefficientRow(grade=grade, coefficient=str(c), a001764=a001764(grade), matches=c == a001764(grade))
        for grade, c in enumerate(series.coeffs)
    ]
    return CoefficientsResponse(
        n=n,
        order=series.order,
        rows=rows,
        prefix_matches=all(row.matches for row in rows[: n + 1]),
    )
