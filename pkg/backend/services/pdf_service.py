"""PDF report of the tables and worked examples"""
from reportlab.lib.pagesizes import letter
from reportlab.lib.styles import getSampleStyleSheet, ParagraphStyle
from reportlab.lib.units import inch
from reportlab.lib.enums import TA_CENTER
from reportlab.platypus import SimpleDocTemplate, Paragraph, Spacer, PageBreak, Table, TableStyle
from reportlab.lib import colors
from io import BytesIO
from datetime import datetime
import logging
from typing import List, Sequence
import unicodedata

from services.circumference_service import WORKED_EXAMPLE, refine_circumference
from services.errors import KeralaArcError
from services.large_arc_service import arcsin_large, build_madhava_table, max_error_bound
from services.lookup_table_service import TableMode, build_lookup_table, printed_lookup_table
from services.sexagesimal_service import TRIJYA, RadiusConstant, format_sexagesimal, round_to_thirds
from services.small_arc_service import variyar_arcsin

logger = logging.getLogger(__name__)

# jyās of 225' and 450' and of 3000' for the standard radius
ITERATION_EXAMPLES = (809422, 1615378)
LARGE_ARC_EXAMPLE = 10800000


def ascii_text(text: str) -> str:
    """Drop diacritics; the built-in PDF fonts only cover Latin-1"""
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch))


def _table(rows: Sequence[Sequence[str]], col_widths: List[float]) -> Table:
    table = Table([list(row) for row in rows], colWidths=col_widths, repeatRows=1)
    table.setStyle(TableStyle([
        ('BACKGROUND', (0, 0), (-1, 0), colors.HexColor('#f3f4f6')),
        ('TEXTCOLOR', (0, 0), (-1, -1), colors.HexColor('#1f2937')),
        ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
        ('FONTSIZE', (0, 0), (-1, -1), 9),
        ('ALIGN', (0, 0), (-1, -1), 'RIGHT'),
        ('BOTTOMPADDING', (0, 0), (-1, -1), 4),
        ('TOPPADDING', (0, 0), (-1, -1), 4),
        ('GRID', (0, 0), (-1, -1), 0.5, colors.HexColor('#d1d5db'))
    ]))
    return table


def generate_report_pdf(r: RadiusConstant = TRIJYA) -> bytes:
    """
    Render the sine table, the lookup table (computed next to printed), the
    two iteration traces, the large-arc example and the circumference chain.
    """
    buffer = BytesIO()
    doc = SimpleDocTemplate(buffer, pagesize=letter, topMargin=0.5*inch, bottomMargin=0.5*inch)
    elements = []

    styles = getSampleStyleSheet()
    title_style = ParagraphStyle(
        'ReportTitle',
        parent=styles['Heading1'],
        fontSize=22,
        textColor=colors.HexColor('#1e40af'),
        spaceAfter=12,
        alignment=TA_CENTER
    )
    heading_style = ParagraphStyle(
        'ReportHeading',
        parent=styles['Heading2'],
        fontSize=14,
        textColor=colors.HexColor('#1f2937'),
        spaceAfter=8,
        spaceBefore=10
    )
    body_style = ParagraphStyle(
        'ReportBody',
        parent=styles['Normal'],
        fontSize=10,
        textColor=colors.HexColor('#374151'),
        spaceAfter=6
    )

    elements.append(Paragraph("Kerala Arcsin Methods", title_style))
    elements.append(Paragraph(f"<b>Radius:</b> {format_sexagesimal(r.thirds)} ({r.thirds} thirds)", body_style))
    elements.append(Paragraph(f"<b>Generated:</b> {datetime.now().strftime('%B %d, %Y')}", body_style))
    elements.append(Spacer(1, 0.2*inch))

    # Sine table
    elements.append(Paragraph("Madhava sine table", heading_style))
    madhava = build_madhava_table(r)
    rows = [["j", "arc", "jya", "jya (thirds)"]]
    for j, (arc, jya) in enumerate(madhava.entries, start=1):
        rows.append([str(j), format_sexagesimal(arc), format_sexagesimal(jya), str(jya)])
    elements.append(_table(rows, [0.5*inch, 1.5*inch, 1.5*inch, 1.3*inch]))
    bound = max_error_bound(r)
    elements.append(Spacer(1, 0.1*inch))
    elements.append(Paragraph(
        f"Largest error of the single-step correction between entries: {format_sexagesimal(bound)}",
        body_style
    ))

    elements.append(PageBreak())

    # Lookup table
    elements.append(Paragraph("Arc-jya difference lookup table", heading_style))
    computed = build_lookup_table(r, TableMode.COMMENTARY)
    printed = printed_lookup_table()
    rows = [["k", "label", "jya", "arc", "printed jya", "printed arc"]]
    for ours, theirs in zip(computed.entries, printed.entries):
        rows.append([
            str(ours.k),
            ascii_text(ours.katapayadi_label),
            format_sexagesimal(ours.jya),
            format_sexagesimal(ours.arc),
            format_sexagesimal(theirs.jya),
            format_sexagesimal(theirs.arc),
        ])
    elements.append(_table(rows, [0.4*inch, 1.6*inch, 1.1*inch, 1.1*inch, 1.1*inch, 1.1*inch]))

    elements.append(PageBreak())

    # Iterative arcsin
    elements.append(Paragraph("Iterative arcsin of small jyas", heading_style))
    for m in ITERATION_EXAMPLES:
        try:
            s, trace = variyar_arcsin(m, r)
        except KeralaArcError as e:
            logger.warning(f"Skipping iteration example m={m}: {e}")
            elements.append(Paragraph(f"m = {format_sexagesimal(m)}: {e}", body_style))
            continue
        elements.append(Paragraph(f"m = {format_sexagesimal(m)} ({m} thirds)", body_style))
        rows = [["i", "delta", "s", "s (thirds)"]]
        for step in trace.steps:
            rows.append([str(step.i), str(step.delta), format_sexagesimal(step.s), str(step.s)])
        elements.append(_table(rows, [0.5*inch, 1.0*inch, 1.5*inch, 1.3*inch]))
        elements.append(Paragraph(f"<b>Arc:</b> {format_sexagesimal(s)}", body_style))
        elements.append(Spacer(1, 0.1*inch))

    # Large arc
    elements.append(Paragraph("Arcsin of a large jya", heading_style))
    try:
        result = arcsin_large(LARGE_ARC_EXAMPLE, r, madhava)
        rows = [
            ["quantity", "value"],
            ["m", format_sexagesimal(LARGE_ARC_EXAMPLE)],
            ["nearest table arc s1", format_sexagesimal(result.s1)],
            ["jya(s1)", format_sexagesimal(madhava.jya(result.j))],
            ["kojya(s1)", format_sexagesimal(madhava.kojya(result.j))],
            ["kojya(m)", format_sexagesimal(result.kojya_m)],
            ["p", format_sexagesimal(result.p)],
            ["s", format_sexagesimal(result.s)],
        ]
        elements.append(_table(rows, [2.2*inch, 2.0*inch]))
    except KeralaArcError as e:
        logger.warning(f"Skipping large-arc example: {e}")
        elements.append(Paragraph(str(e), body_style))

    elements.append(PageBreak())

    # Circumference
    diameter, approx = WORKED_EXAMPLE
    elements.append(Paragraph("Refining the circumference", heading_style))
    C, chain = refine_circumference(diameter, approx)
    rows = [["row", "value"]]
    for label, value in chain.rows():
        rows.append([label, format_sexagesimal(round_to_thirds(value))])
    rows.append(["direction", chain.direction.value])
    elements.append(_table(rows, [2.2*inch, 2.0*inch]))
    deviations = chain.printed_deviations()
    if deviations:
        elements.append(Spacer(1, 0.1*inch))
        notes = "<br/>".join(
            f"{label}: printed {format_sexagesimal(round_to_thirds(printed))}, "
            f"recomputed {format_sexagesimal(round_to_thirds(recomputed))}"
            for label, printed, recomputed in deviations
        )
        elements.append(Paragraph(notes, body_style))

    doc.build(elements)
    pdf_bytes = buffer.getvalue()
    buffer.close()
    logger.info(f"Generated report for r={r.thirds}: {len(pdf_bytes)} bytes")
    return pdf_bytes
