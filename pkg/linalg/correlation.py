"""
Correlazione di Pearson (o covarianza) tra le colonne di una DocMatrix.

Colonne a varianza nulla: scartate con warning (default) o ZeroVariance.
Se restano meno di due variabili l'errore è sollevato comunque.
"""
from __future__ import annotations

import logging
from typing import List, Optional, Sequence

import numpy as np

from core import diagnostics_state
from core.config import get_config
from core.errors import InsufficientData, ZeroVariance
from corpus.types import DocMatrix
from linalg.types import Basis, CorrelationMatrix

logger = logging.getLogger(__name__)


def correlation_from_array(
    data: np.ndarray,
    labels: Sequence[str],
    basis: Optional[Basis] = None,
    zero_variance_policy: Optional[str] = None,
) -> CorrelationMatrix:
    """Matrice di correlazione/covarianza delle colonne di `data` (osservazioni × variabili)."""
    config = get_config()
    basis = basis or config.correlation_basis
    policy = zero_variance_policy or config.zero_variance_policy
    labels = list(labels)

    X = np.asarray(data, dtype=float)
    if X.ndim != 2 or X.shape[1] != len(labels):
        raise ValueError(f"Dati {X.shape} incoerenti con {len(labels)} etichette")
    n = X.shape[0]
    if n < 2:
        raise InsufficientData(f"Servono almeno 2 documenti (ricevuti {n})", n_documents=n)

    centred = X - X.mean(axis=0)
    variances = (centred ** 2).sum(axis=0) / (n - 1)

    zero = [labels[j] for j in np.flatnonzero(variances <= 0.0)]
    if zero:
        if policy == "raise":
            raise ZeroVariance(f"Varianza nulla per la variabile {zero[0]!r}", label=zero[0], n_zero=len(zero))
        logger.warning(f"[CORPUS] {len(zero)} variabili a varianza nulla scartate: {zero[:5]}")
        diagnostics_state.record("zero_variance_dropped", len(zero))

    keep = np.flatnonzero(variances > 0.0)
    if keep.size < 2:
        raise ZeroVariance(
            f"Solo {keep.size} variabili con varianza non nulla: analisi impossibile",
            label=zero[0] if zero else None,
            n_zero=len(zero),
            n_remaining=int(keep.size),
        )

    centred = centred[:, keep]
    kept_labels: List[str] = [labels[j] for j in keep]
    cov = centred.T @ centred / (n - 1)

    if basis == "covariance":
        r = (cov + cov.T) / 2.0
    else:
        sd = np.sqrt(np.diag(cov))
        r = cov / np.outer(sd, sd)
        r = np.clip((r + r.T) / 2.0, -1.0, 1.0)
        np.fill_diagonal(r, 1.0)

    return CorrelationMatrix(labels=kept_labels, r=r, basis=basis, n_documents=n, dropped=zero)


def correlation(
    m: DocMatrix,
    basis: Optional[Basis] = None,
    zero_variance_policy: Optional[str] = None,
) -> CorrelationMatrix:
    """Correlazione di Pearson tra le colonne variabili della matrice documenti."""
    return correlation_from_array(m.cells, m.variables, basis, zero_variance_policy)
