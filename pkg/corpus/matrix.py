"""
Matrici documenti × variabili (parole dei titoli, autori) con soglia sulle occorrenze totali.

Ordine delle variabili: totale decrescente, a parità alfabetico.
"""
from __future__ import annotations

import logging
from collections import Counter
from typing import Any, Dict, Iterable, List, Literal, Optional

import numpy as np

from core.errors import DocMismatch, EmptyAfterThreshold, EmptyCorpus
from core.output import Target, write_csv
from corpus.tokenize import tokenize_title
from corpus.types import DocMatrix, Document

logger = logging.getLogger(__name__)


def _document_counts(
    document: Document,
    kind: Literal["words", "authors"],
    stopwords: Optional[Iterable[str]],
) -> Counter:
    if kind == "words":
        return Counter(tokenize_title(document.title, stopwords))
    # un autore conta una volta per documento
    return Counter(dict.fromkeys(document.authors, 1))


def build_matrix(
    corpus: List[Document],
    kind: Literal["words", "authors"],
    threshold: int,
    stopwords: Optional[Iterable[str]] = None,
) -> DocMatrix:
    """
    Conta le occorrenze per documento e tiene le variabili con totale > threshold.

    Raises:
        EmptyCorpus: corpus vuoto
        EmptyAfterThreshold: nessuna variabile sopra soglia
    """
    if kind not in ("words", "authors"):
        raise ValueError(f"Tipo matrice non valido: {kind!r}")
    if not corpus:
        raise EmptyCorpus("Corpus vuoto: impossibile costruire la matrice", kind=kind)
    if threshold < 0:
        raise ValueError(f"threshold deve essere ≥ 0 (ricevuto {threshold})")

    stop = frozenset(stopwords) if stopwords is not None else None
    per_document = [_document_counts(doc, kind, stop) for doc in corpus]

    totals: Counter = Counter()
    for counts in per_document:
        totals.update(counts)

    variables = sorted(
        (label for label, total in totals.items() if total > threshold),
        key=lambda label: (-totals[label], label),
    )
    if not variables:
        raise EmptyAfterThreshold(
            f"Nessuna variabile {kind} con più di {threshold} occorrenze",
            kind=kind, threshold=threshold, candidates=len(totals),
        )

    column = {label: j for j, label in enumerate(variables)}
    cells = np.zeros((len(corpus), len(variables)), dtype=np.int64)
    for i, counts in enumerate(per_document):
        for label, count in counts.items():
            j = column.get(label)
            if j is not None:
                cells[i, j] = count

    logger.info(
        f"[CORPUS] Matrice {kind}: {len(corpus)} documenti × {len(variables)} variabili "
        f"(soglia > {threshold}, {len(totals)} candidate)"
    )
    return DocMatrix(doc_ids=[doc.id for doc in corpus], variables=variables, cells=cells, kind=kind)


def _prefixed(matrix: DocMatrix) -> List[str]:
    if matrix.kind == "combined":
        return list(matrix.variables)
    return [f"{matrix.kind}:{label}" for label in matrix.variables]


def combine(m1: DocMatrix, m2: DocMatrix) -> DocMatrix:
    """Concatenazione per colonne; etichette prefissate con il tipo di origine."""
    if m1.doc_ids != m2.doc_ids:
        raise DocMismatch(
            "Le due matrici non hanno gli stessi documenti nello stesso ordine",
            left=len(m1.doc_ids), right=len(m2.doc_ids),
        )
    cells = np.hstack([m1.cells.reshape(m1.n_documents, -1), m2.cells.reshape(m2.n_documents, -1)])
    return DocMatrix(
        doc_ids=list(m1.doc_ids),
        variables=_prefixed(m1) + _prefixed(m2),
        cells=cells,
        kind="combined",
    )


def save_matrix(matrix: DocMatrix, target: Target, provenance: Optional[Dict[str, Any]] = None) -> None:
    """CSV: righe documenti, colonne variabili, prima riga/colonna etichette."""
    write_csv(matrix.to_frame(), target, provenance, index=True)
