"""
Gate - Routing file corpus per tipo.

Determina il parser in base all'estensione del file.
"""
import logging
from pathlib import Path
from typing import Optional, Tuple, Union

from core.errors import UnsupportedFormat

logger = logging.getLogger(__name__)

DELIMITED_EXTENSIONS = ("csv", "tsv")
EXCEL_EXTENSIONS = ("xlsx", "xls")


def route_file(file_name: Union[str, Path], ext: Optional[str] = None) -> Tuple[str, str]:
    """
    Route file in base all'estensione.

    Args:
        file_name: Nome o path del file
        ext: Estensione file (se None, estrae da file_name)

    Returns:
        Tuple (parser, ext):
        - parser: 'csv' per CSV/TSV, 'excel' per XLSX/XLS
        - ext: Estensione normalizzata (lowercase, senza punto)

    Raises:
        UnsupportedFormat: Se formato file non supportato
    """
    file_name = str(file_name)
    if ext is None:
        suffix = Path(file_name).suffix
        if not suffix:
            raise UnsupportedFormat(f"Impossibile determinare estensione file: {file_name}", file=file_name)
        ext = suffix

    ext = ext.lower().strip().lstrip(".")

    if ext in DELIMITED_EXTENSIONS:
        logger.info(f"[GATE] File {file_name} -> parser CSV")
        return "csv", ext

    if ext in EXCEL_EXTENSIONS:
        logger.info(f"[GATE] File {file_name} -> parser Excel")
        return "excel", ext

    error_msg = f"Formato file non supportato: .{ext}. Supportati: CSV, TSV, XLSX, XLS"
    logger.error(f"[GATE] {error_msg}")
    raise UnsupportedFormat(error_msg, file=file_name, ext=ext)
