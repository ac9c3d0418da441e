"""
Normalizzazione header del file corpus.

Mappa le colonne originali su id / title / authors / year con rapidfuzz.
"""
from __future__ import annotations

import logging
import re
from typing import Dict, List

from rapidfuzz import fuzz, process

logger = logging.getLogger(__name__)

# Sinonimi riconosciuti (include i tag dei formati bibliografici più comuni)
COLUMN_MAPPINGS: Dict[str, List[str]] = {
    "id": ["id", "doc id", "doc_id", "document id", "identifier", "ut", "accession number", "record id"],
    "title": ["title", "ti", "document title", "article title", "titolo"],
    "authors": ["authors", "author", "au", "author names", "autori", "autore"],
    "year": ["year", "py", "publication year", "pub year", "anno"],
}

REQUIRED_COLUMNS = ("id", "title")


def normalize_column_name(col_name: str) -> str:
    """Lowercase, strip, niente simboli, spazi singoli."""
    if not col_name:
        return ""
    normalized = str(col_name).lower().strip().replace("_", " ")
    normalized = re.sub(r"[^\w\s\-]", "", normalized)
    return re.sub(r"\s+", " ", normalized)


def map_headers(original_columns: List[str], confidence_threshold: float = 0.85) -> Dict[str, str]:
    """
    Returns:
        Dict {colonna originale: nome standard}; ogni nome standard mappato al più una volta
    """
    targets: List[str] = []
    target_to_standard: Dict[str, str] = {}
    for standard_name, variants in COLUMN_MAPPINGS.items():
        for variant in variants:
            normalized_variant = normalize_column_name(variant)
            targets.append(normalized_variant)
            target_to_standard[normalized_variant] = standard_name

    rename_mapping: Dict[str, str] = {}
    mapped = set()

    for orig_col in original_columns:
        normalized_col = normalize_column_name(orig_col)
        # match esatto prima del fuzzy: "ti" e "id" sono troppo corti per fuzz.ratio
        if normalized_col in target_to_standard:
            standard_name, score = target_to_standard[normalized_col], 100.0
        else:
            result = process.extractOne(
                normalized_col,
                targets,
                scorer=fuzz.ratio,
                score_cutoff=int(confidence_threshold * 100),
            )
            if not result:
                logger.debug(f"[NORMALIZATION] Colonna '{orig_col}' non mappata")
                continue
            matched_variant, score, _ = result
            standard_name = target_to_standard[matched_variant]

        if standard_name in mapped:
            logger.debug(
                f"[NORMALIZATION] Skipped '{orig_col}' -> '{standard_name}': campo già mappato"
            )
            continue

        rename_mapping[orig_col] = standard_name
        mapped.add(standard_name)
        logger.debug(f"[NORMALIZATION] Mapped '{orig_col}' -> '{standard_name}' (score={score / 100:.2f})")

    logger.info(
        f"[NORMALIZATION] Header mapping: {len(rename_mapping)}/{len(original_columns)} colonne mappate"
    )
    return rename_mapping
