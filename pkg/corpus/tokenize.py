"""
Tokenizzazione dei titoli e normalizzazione dei nomi autore.

Regole titoli: minuscolo, punteggiatura sostituita da spazi (trattini interni
mantenuti), split su whitespace, rimozione stopwords.
Regole autori: forma canonica "Last, F." (accetta "First Last" e "Last, First").
"""
from __future__ import annotations

import logging
import pathlib
import re
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Optional, Union

import yaml

logger = logging.getLogger(__name__)

DEFAULT_STOPWORDS_PATH = pathlib.Path(__file__).resolve().parent.parent / "data" / "stopwords.yml"

_PUNCTUATION_RE = re.compile(r"[^\w\s-]", re.UNICODE)
_WHITESPACE_RE = re.compile(r"\s+")
AUTHOR_SEPARATOR = ";"


@lru_cache(maxsize=8)
def load_stopwords(path: Optional[str] = None) -> FrozenSet[str]:
    """Carica la lista stopwords da YAML (chiave `stopwords`); default data/stopwords.yml."""
    source = pathlib.Path(path) if path else DEFAULT_STOPWORDS_PATH
    try:
        with source.open("r", encoding="utf-8") as handle:
            data = yaml.safe_load(handle) or {}
    except FileNotFoundError:
        logger.warning(f"[CORPUS] File stopwords non trovato: {source}, nessuna stopword applicata")
        return frozenset()

    words = data.get("stopwords", []) if isinstance(data, dict) else data
    stopwords = frozenset(str(word).strip().lower() for word in words if str(word).strip())
    logger.debug(f"[CORPUS] {len(stopwords)} stopwords caricate da {source}")
    return stopwords


def tokenize_title(title: Optional[str], stopwords: Optional[Iterable[str]] = None) -> List[str]:
    """
    Token di un titolo.

    Args:
        title: Testo libero (None o vuoto -> [])
        stopwords: Insieme di stopwords; None usa la lista di default
    """
    if not title:
        return []
    stop = load_stopwords() if stopwords is None else frozenset(stopwords)

    text = _PUNCTUATION_RE.sub(" ", title.lower())
    tokens = []
    for raw in text.split():
        token = raw.strip("-_")
        if token and token not in stop:
            tokens.append(token)
    return tokens


def split_authors(value: Union[str, Iterable[str], None]) -> List[str]:
    if value is None:
        return []
    if isinstance(value, str):
        return [part for part in (p.strip() for p in value.split(AUTHOR_SEPARATOR)) if part]
    return [str(part).strip() for part in value if str(part).strip()]


def _title_case(name: str) -> str:
    # "o'neil" -> "O'Neil", "smith-jones" -> "Smith-Jones"
    return re.sub(r"[^\W\d_]+", lambda m: m.group(0)[0].upper() + m.group(0)[1:].lower(), name)


def normalize_author(name: Optional[str]) -> str:
    """
    Nome autore in forma canonica "Last, F.".

    "mario rossi" -> "Rossi, M."; "ROSSI, Mario" -> "Rossi, M."; "Rossi" -> "Rossi".
    La forma è idempotente: confronti fatti sulla forma canonica sono case-insensitive.
    """
    if not name:
        return ""
    text = _WHITESPACE_RE.sub(" ", str(name)).strip().strip(",").strip()
    if not text:
        return ""

    if "," in text:
        last, first = (part.strip() for part in text.split(",", 1))
    else:
        parts = text.split(" ")
        last, first = parts[-1], " ".join(parts[:-1])

    last = _title_case(last.casefold())
    initial = next((ch for ch in first if ch.isalpha()), "")
    if not last:
        return ""
    if not initial:
        return last
    return f"{last}, {initial.upper()}."
