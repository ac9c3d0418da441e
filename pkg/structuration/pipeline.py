"""
Pipeline di misura - corpus -> matrici -> struttura -> distribuzione -> μ*, I, R.

Flusso deterministico per ogni insieme di variabili (words, authors, combined):
1. correlazione (scarto colonne a varianza nulla)
2. k componenti principali (Jacobi)
3. rotazione varimax con normalizzazione di Kaiser
4. binning SignTernary delle prime tre componenti
5. EntropyReport (entropie, μ*, IPF, I, R)
"""
from __future__ import annotations

import logging
import time
from typing import Dict, Iterable, List, Optional, Tuple

from core.config import LabConfig, get_config
from core.errors import LabError
from core.logger import log_json
from corpus.matrix import build_matrix, combine
from corpus.tokenize import load_stopwords
from corpus.types import DocMatrix, Document
from infotheory.measures import entropy_report
from linalg.components import principal_components
from linalg.correlation import correlation
from linalg.types import LoadingsMatrix
from linalg.varimax import rotate_varimax
from structuration.binning import bin_loadings, cell_counts, is_degenerate, loadings_to_distribution
from structuration.report import build_report, interpret
from structuration.types import VARIABLE_SETS, BinningPolicy, StructurationReport, VariableSetReport

logger = logging.getLogger(__name__)


def structure(
    matrix: DocMatrix,
    k: int,
    config: LabConfig,
) -> Tuple[LoadingsMatrix, int, int]:
    """Livello della struttura: loadings ruotati, sweep varimax, variabili scartate."""
    r = correlation(matrix, config.correlation_basis, config.zero_variance_policy)
    loadings = principal_components(r, k)
    rotation = rotate_varimax(
        loadings,
        tol=config.varimax_tol,
        max_iter=config.varimax_max_iter,
        normalize=config.kaiser_normalization,
    )
    return rotation.loadings, rotation.sweeps, len(r.dropped)


def analyse_matrix(
    matrix: DocMatrix,
    variable_set: str,
    k: int,
    policy: BinningPolicy,
    config: LabConfig,
) -> VariableSetReport:
    """Analisi completa di un insieme di variabili; errori con contesto variable_set."""
    started = time.time()
    log_json("info", "variable set start", stage="structure", variable_set=variable_set,
             n_variables=matrix.n_variables, n_documents=matrix.n_documents)
    try:
        rotated, sweeps, n_dropped = structure(matrix, k, config)
        dist = loadings_to_distribution(rotated, policy)
        # se nemmeno il refit sul supporto ridotto raggiunge tol il report porta
        # la stima migliore con ipf_converged=False
        report = entropy_report(dist, tol=config.ipf_tol, max_iter=config.ipf_max_iter, strict=False)
    except LabError as exc:
        log_json("error", str(exc), stage="structure", variable_set=variable_set,
                 elapsed_sec=time.time() - started, decision="error", error=exc.code)
        raise exc.with_context(variable_set=variable_set)

    degenerate = is_degenerate(dist)
    result = VariableSetReport(
        **report.model_dump(exclude={"mbits"}),
        variable_set=variable_set,
        n_variables=len(rotated.labels),
        n_dropped=n_dropped,
        eigenvalues=[float(v) for v in (rotated.eigenvalues if rotated.eigenvalues is not None else [])],
        varimax_sweeps=sweeps,
        cells=cell_counts(bin_loadings(rotated, policy)),
        degenerate=degenerate,
        interpretation=interpret(report.mu_star),
    )

    log_json(
        "info", "variable set done", stage="entropy", variable_set=variable_set,
        iterations=report.ipf_iterations, elapsed_sec=time.time() - started,
        decision="degenerate" if degenerate else ("ok" if report.ipf_converged else "ipf_not_converged"),
        mu_star=report.mu_star, interaction_info=report.interaction_info,
    )
    logger.info(
        f"[PIPELINE] {variable_set}: {result.n_variables} variabili, "
        f"μ*={report.mu_star * 1000:.1f} mbits, I={report.interaction_info * 1000:.1f} mbits"
    )
    return result


def build_matrices(
    corpus: List[Document],
    word_threshold: int,
    author_threshold: int,
    variable_sets: Iterable[str],
    stopwords: Optional[Iterable[str]] = None,
) -> Dict[str, DocMatrix]:
    wanted = list(variable_sets)
    need_words = "words" in wanted or "combined" in wanted
    need_authors = "authors" in wanted or "combined" in wanted

    matrices: Dict[str, DocMatrix] = {}
    try:
        if need_words:
            matrices["words"] = build_matrix(corpus, "words", word_threshold, stopwords)
    except LabError as exc:
        raise exc.with_context(variable_set="words")
    try:
        if need_authors:
            matrices["authors"] = build_matrix(corpus, "authors", author_threshold)
    except LabError as exc:
        raise exc.with_context(variable_set="authors")
    if "combined" in wanted:
        matrices["combined"] = combine(matrices["words"], matrices["authors"])
    return matrices


def measure(
    corpus: List[Document],
    word_threshold: Optional[int] = None,
    author_threshold: Optional[int] = None,
    k: Optional[int] = None,
    policy: Optional[BinningPolicy] = None,
    variable_sets: Optional[Iterable[str]] = None,
    config: Optional[LabConfig] = None,
    stopwords: Optional[Iterable[str]] = None,
) -> StructurationReport:
    """
    Misura μ*, I e R per parole, autori e combinazione.

    Args:
        corpus: Documenti validati
        word_threshold: Parole tenute se occorrenze > soglia (default config)
        author_threshold: Autori tenuti se occorrenze > soglia (default config)
        k: Componenti estratte (≥ 3 per il binning; si usano le prime tre)
        policy: BinningPolicy (default SignTernary con τ di config)
        variable_sets: Sottoinsieme di words, authors, combined

    Returns:
        StructurationReport con metadata completi
    """
    config = config or get_config()
    word_threshold = config.word_threshold if word_threshold is None else word_threshold
    author_threshold = config.author_threshold if author_threshold is None else author_threshold
    k = config.n_components if k is None else k
    policy = policy or BinningPolicy(tau=config.binning_tau)
    sets = list(variable_sets) if variable_sets is not None else list(VARIABLE_SETS)

    unknown = [s for s in sets if s not in VARIABLE_SETS]
    if unknown or not sets:
        raise ValueError(f"Insiemi di variabili non validi: {unknown or sets}")
    if k < 3:
        raise ValueError(f"Il binning richiede almeno 3 componenti (k={k})")
    if stopwords is None and config.stopwords_path:
        stopwords = load_stopwords(config.stopwords_path)

    started = time.time()
    log_json("info", "pipeline start", stage="corpus", n_documents=len(corpus), variable_sets=sets)

    matrices = build_matrices(corpus, word_threshold, author_threshold, sets, stopwords)
    # ordine fisso del report, indipendente dall'ordine richiesto
    ordered = [s for s in VARIABLE_SETS if s in sets]
    results = {name: analyse_matrix(matrices[name], name, k, policy, config) for name in ordered}

    report = build_report(
        results,
        config=config,
        n_documents=len(corpus),
        word_threshold=word_threshold,
        author_threshold=author_threshold,
        k=k,
        policy=policy,
        variable_counts={name: matrices[name].n_variables for name in ordered},
    )
    log_json("info", "pipeline done", stage="report", elapsed_sec=time.time() - started, decision="ok")
    return report
