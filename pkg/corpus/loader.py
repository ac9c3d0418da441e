"""
Caricamento corpus: file -> DataFrame -> Document validati.

Formato atteso: colonne id, title, authors (separati da ';'), year.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Tuple, Union

import pandas as pd
from pydantic import ValidationError

from core.errors import DuplicateDocument, EmptyCorpus, UnsupportedFormat
from corpus.csv_parser import parse_csv
from corpus.excel_parser import parse_excel
from corpus.gate import route_file
from corpus.normalization import REQUIRED_COLUMNS, map_headers
from corpus.types import Document

logger = logging.getLogger(__name__)


def read_corpus_frame(path: Union[str, Path]) -> Tuple[pd.DataFrame, Dict[str, Any]]:
    """File corpus -> DataFrame con colonne standard (id, title, authors, year)."""
    path = Path(path)
    parser, ext = route_file(path.name)
    content = path.read_bytes()

    if parser == "csv":
        frame, info = parse_csv(content, ext=ext)
    else:
        frame, info = parse_excel(content)

    mapping = map_headers([str(c) for c in frame.columns])
    frame = frame.rename(columns=mapping)
    missing = [c for c in REQUIRED_COLUMNS if c not in frame.columns]
    if missing:
        raise UnsupportedFormat(
            f"Colonne obbligatorie mancanti nel corpus: {', '.join(missing)}",
            file=str(path), columns=[str(c) for c in frame.columns],
        )

    keep = [c for c in ("id", "title", "authors", "year") if c in frame.columns]
    frame = frame[keep].fillna("")
    info = {**info, "file": path.name, "header_mapping": mapping}
    return frame, info


def validate_batch(records: List[Dict[str, Any]]) -> Tuple[List[Document], List[Dict[str, Any]], Dict[str, Any]]:
    """
    Valida record con Pydantic.

    Returns:
        Tuple (valid, rejected, stats):
        - valid: Document validi, in ordine di input
        - rejected: dizionari con index, data, error, error_type
        - stats: rows_total, rows_valid, rows_rejected, rows_blank, rejection_reasons
    """
    valid: List[Document] = []
    rejected: List[Dict[str, Any]] = []
    rejection_reasons: Dict[str, int] = {}
    blank = 0

    for idx, record in enumerate(records):
        if all(not str(value).strip() for value in record.values()):
            blank += 1
            continue
        try:
            valid.append(Document(**record))
        except ValidationError as e:
            error_type = e.errors()[0].get("type", "validation_error") if e.errors() else "validation_error"
            logger.warning(f"[VALIDATION] Record {idx + 1} rifiutato: {error_type} - {str(e)[:100]}")
            rejection_reasons[error_type] = rejection_reasons.get(error_type, 0) + 1
            rejected.append({"index": idx, "data": record, "error": str(e), "error_type": error_type})

    stats = {
        "rows_total": len(records),
        "rows_valid": len(valid),
        "rows_rejected": len(rejected),
        "rows_blank": blank,
        "rejection_reasons": rejection_reasons,
    }
    logger.info(
        f"[VALIDATION] Batch validation: {stats['rows_valid']}/{stats['rows_total']} validi, "
        f"{stats['rows_rejected']} rifiutati, {blank} vuoti"
    )
    return valid, rejected, stats


def check_unique_ids(documents: Iterable[Document]) -> None:
    seen = set()
    for doc in documents:
        if doc.id in seen:
            raise DuplicateDocument(f"Documento duplicato nel corpus: id={doc.id}", id=doc.id)
        seen.add(doc.id)


def documents_from_records(records: List[Dict[str, Any]]) -> List[Document]:
    documents, _, _ = validate_batch(records)
    check_unique_ids(documents)
    return documents


def load_corpus(path: Union[str, Path]) -> List[Document]:
    """
    Carica e valida un corpus (CSV, TSV, XLSX, XLS).

    Raises:
        UnsupportedFormat: estensione o colonne non riconosciute
        DuplicateDocument: id ripetuto
        EmptyCorpus: nessun documento valido
    """
    frame, info = read_corpus_frame(path)
    documents = documents_from_records(frame.to_dict(orient="records"))
    if not documents:
        raise EmptyCorpus(f"Nessun documento valido nel corpus {info['file']}", file=info["file"])

    logger.info(f"[CORPUS] {len(documents)} documenti caricati da {info['file']}")
    return documents
