"""
Excel Parser per i file corpus.

Sceglie lo sheet con più righe non vuote (pandas + openpyxl).
"""
import io
import logging
from typing import Any, Dict, Tuple

import pandas as pd

from core.errors import UnsupportedFormat

logger = logging.getLogger(__name__)


def parse_excel(file_content: bytes) -> Tuple[pd.DataFrame, Dict[str, Any]]:
    """
    Parse file Excel con pandas.

    Returns:
        Tuple (DataFrame, sheet_info) con sheet_name, sheet_index, rows, columns
    """
    try:
        excel_file = pd.ExcelFile(io.BytesIO(file_content))
    except Exception as e:
        logger.error(f"[EXCEL_PARSER] Error opening Excel: {e}")
        raise UnsupportedFormat(f"Errore apertura Excel: {e}") from e

    sheet_names = excel_file.sheet_names
    logger.info(f"[EXCEL_PARSER] Excel file has {len(sheet_names)} sheets: {sheet_names}")

    best_sheet = None
    best_frame = None
    max_rows = 0

    for sheet_idx, sheet_name in enumerate(sheet_names):
        frame = pd.read_excel(excel_file, sheet_name=sheet_name, dtype=str)
        non_empty_rows = frame.dropna(how="all").shape[0]
        logger.debug(f"[EXCEL_PARSER] Sheet '{sheet_name}' has {non_empty_rows} non-empty rows")
        # a parità di righe vince il primo sheet
        if non_empty_rows > max_rows:
            max_rows = non_empty_rows
            best_sheet = sheet_idx
            best_frame = frame

    if best_frame is None:
        raise UnsupportedFormat("Nessuno sheet con dati nel file Excel", sheets=list(sheet_names))

    df = best_frame.fillna("")
    logger.info(
        f"[EXCEL_PARSER] Excel parsed: sheet='{sheet_names[best_sheet]}', "
        f"{len(df)} rows, {len(df.columns)} columns"
    )

    sheet_info = {
        "sheet_name": sheet_names[best_sheet],
        "sheet_index": best_sheet,
        "total_sheets": len(sheet_names),
        "rows": len(df),
        "columns": len(df.columns),
        "non_empty_rows": max_rows,
    }
    return df, sheet_info
