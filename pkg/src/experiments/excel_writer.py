"""
Exporta una tabla de resultados a Excel: hojas RESULTADOS, ESCENARIO e INESTABLES.
"""

import math

from openpyxl import Workbook
from openpyxl.styles import Alignment, Font, PatternFill
from openpyxl.utils import get_column_letter

from config import DB_CAPABLE_FIELDS
from src.channel import linear_to_db

_HDR_FONT = Font(bold=True, color="FFFFFF")
_HDR_FILL = PatternFill(start_color="1F4E78", end_color="1F4E78", fill_type="solid")
_ERR_FILL = PatternFill(start_color="C00000", end_color="C00000", fill_type="solid")

_SCIENTIFIC = ("analytic", "mc_estimate", "mc_halfwidth")
_DECIMAL = ("swept_value_db", "swept_value_linear", "kappa", "alpha_suboptimal", "alpha_optimal", "wall_ms")


def _cell_value(value):
    if isinstance(value, float) and math.isnan(value):
        return None
    if hasattr(value, "item"):
        return value.item()
    return value


def _write_header(ws, headers, widths, fill=_HDR_FILL):
    for c, (h, w) in enumerate(zip(headers, widths), 1):
        cell = ws.cell(1, c, h)
        cell.font = _HDR_FONT
        cell.fill = fill
        cell.alignment = Alignment(horizontal="center")
        ws.column_dimensions[get_column_letter(c)].width = w


def _write_results_sheet(ws, table):
    headers = list(table.columns)
    _write_header(ws, headers, [max(12, len(h) + 2) for h in headers])

    formats = {}
    for c, h in enumerate(headers, 1):
        if h in _SCIENTIFIC:
            formats[c] = "0.000E+00"
        elif h in _DECIMAL:
            formats[c] = "0.0000"

    for i, row in enumerate(table.itertuples(index=False), 2):
        for c, value in enumerate(row, 1):
            cell = ws.cell(i, c, _cell_value(value))
            if c in formats and cell.value is not None:
                cell.number_format = formats[c]

    ws.freeze_panes = "A2"
    ws.auto_filter.ref = f"A1:{get_column_letter(len(headers))}{len(table) + 1}"


def _write_scenario_sheet(ws, params):
    _write_header(ws, ["Campo", "Valor", "Valor (dB)"], [16, 22, 14])
    for i, (name, value) in enumerate(params.as_dict().items(), 2):
        ws.cell(i, 1, name)
        ws.cell(i, 2, value)
        if name in DB_CAPABLE_FIELDS:
            ws.cell(i, 3, linear_to_db(value)).number_format = "0.00"


def _write_unstable_sheet(wb, table):
    """Hoja INESTABLES con las filas cuya vía analítica falló; 0 si no hay."""
    bad = table[table["status"] == "unstable"]
    if bad.empty:
        return 0

    ws = wb.create_sheet("INESTABLES")
    headers = ["swept_value_linear", "scheme", "mode", "duplex", "n_relays", "n_subcarriers"]
    _write_header(ws, headers, [20, 16, 10, 12, 10, 14], fill=_ERR_FILL)
    for i, row in enumerate(bad[headers].itertuples(index=False), 2):
        for c, value in enumerate(row, 1):
            ws.cell(i, c, _cell_value(value))
    ws.auto_filter.ref = f"A1:F{len(bad) + 1}"
    return len(bad)


def export_results_xlsx(table, params, output_path, title="Resultados"):
    """Write a sweep table and its base scenario to ``output_path``.

    Args:
        table: DataFrame returned by run_sweep.
        params: NetworkParams base of the sweep.
        output_path: destination .xlsx.
        title: shown in the progress line.

    Returns:
        Number of unstable rows written to INESTABLES.
    """
    wb = Workbook()
    ws = wb.active
    ws.title = "RESULTADOS"
    _write_results_sheet(ws, table)
    _write_scenario_sheet(wb.create_sheet("ESCENARIO"), params)
    unstable = _write_unstable_sheet(wb, table)

    wb.save(output_path)
    wb.close()
    print(f"  {title} exportado: {output_path}")
    return unstable
