"""
CSV Parser per i file corpus.

Encoding detection (chardet), delimiter sniff, parsing pandas con tutte le colonne come stringhe.
"""
import csv
import io
import logging
from typing import Any, Dict, Optional, Tuple

import chardet
import pandas as pd

from core.errors import UnsupportedFormat
from core.output import strip_comment_lines

logger = logging.getLogger(__name__)

CANDIDATE_DELIMITERS = ",;\t|"


def detect_encoding(file_content: bytes) -> Tuple[str, float]:
    """
    Rileva encoding: utf-8-sig -> encoding suggerito da chardet -> latin-1.

    Returns:
        Tuple (encoding, confidence)
    """
    guess = chardet.detect(file_content[:10000])
    guessed = guess.get("encoding") or "utf-8"
    confidence = float(guess.get("confidence") or 0.0)

    for enc in ("utf-8-sig", guessed, "latin-1"):
        try:
            file_content.decode(enc)
            logger.debug(f"[CSV_PARSER] Encoding: {enc} (chardet={guessed}, confidence={confidence:.2f})")
            return enc, confidence
        except (UnicodeDecodeError, LookupError):
            continue

    # latin-1 decodifica qualsiasi sequenza di byte: qui non si arriva
    return "latin-1", 0.0


def detect_delimiter(text: str, ext: str = "csv", sample_lines: int = 10) -> str:
    """
    Separatore con csv.Sniffer sulle prime righe; TSV forza il tab.

    Il campo autori usa ';' internamente: in caso di dubbio vince la virgola.
    """
    if ext == "tsv":
        return "\t"

    lines = [line for line in text.splitlines()[:sample_lines] if line.strip() and not line.startswith("#")]
    if not lines:
        return ","

    header = lines[0]
    try:
        delimiter = csv.Sniffer().sniff("\n".join(lines[:3]), delimiters=CANDIDATE_DELIMITERS).delimiter
    except csv.Error:
        delimiter = max(CANDIDATE_DELIMITERS, key=header.count)
        if header.count(delimiter) == 0:
            delimiter = ","

    # L'header non contiene mai ';' come separatore di autori
    if delimiter == ";" and header.count(",") > 0 and header.count(";") == 0:
        delimiter = ","

    logger.debug(f"[CSV_PARSER] Delimiter: {delimiter!r}")
    return delimiter


def parse_csv(
    file_content: bytes,
    ext: str = "csv",
    separator: Optional[str] = None,
    encoding: Optional[str] = None,
) -> Tuple[pd.DataFrame, Dict[str, Any]]:
    """
    Parse file CSV/TSV con pandas.

    Returns:
        Tuple (DataFrame, detection_info) con encoding, separator, rows, columns
    """
    if encoding is None:
        encoding, enc_confidence = detect_encoding(file_content)
    else:
        enc_confidence = 1.0

    text = strip_comment_lines(file_content.decode(encoding))
    method = "provided" if separator is not None else "auto-detected"
    if separator is None:
        separator = detect_delimiter(text, ext)

    try:
        df = pd.read_csv(
            io.StringIO(text),
            sep=separator,
            dtype=str,
            keep_default_na=False,
            skipinitialspace=True,
            skip_blank_lines=True,
        )
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        logger.error(f"[CSV_PARSER] Error parsing CSV: {e}")
        raise UnsupportedFormat(f"Errore parsing CSV: {e}", encoding=encoding, separator=separator) from e

    logger.info(
        f"[CSV_PARSER] CSV parsed: {len(df)} rows, {len(df.columns)} columns, "
        f"encoding={encoding}, separator={separator!r}"
    )

    detection_info = {
        "encoding": encoding,
        "encoding_confidence": enc_confidence,
        "separator": separator,
        "rows": len(df),
        "columns": len(df.columns),
        "method": method,
    }
    return df, detection_info
