"""
Da loadings ruotati a distribuzione trivariata: ogni variabile cade nella cella
(bin(L_i1), bin(L_i2), bin(L_i3)); i conteggi normalizzati formano la Distribution3.
"""
from __future__ import annotations

import logging
from typing import Dict, Optional

import numpy as np

from core import diagnostics_state
from core.errors import DegenerateDistribution
from infotheory.types import Distribution3
from linalg.types import LoadingsMatrix
from structuration.types import TERNARY_LABELS, BinningPolicy

logger = logging.getLogger(__name__)


def sign_ternary(values: np.ndarray, tau: float) -> np.ndarray:
    """0 se < −τ, 1 se in [−τ, τ], 2 se > τ."""
    values = np.asarray(values, dtype=float)
    return np.where(values < -tau, 0, np.where(values > tau, 2, 1))


def bin_loadings(loadings: LoadingsMatrix, policy: BinningPolicy) -> np.ndarray:
    """Indici di bin (variabili × 3) sulle prime tre componenti."""
    if loadings.k < 3:
        raise ValueError(f"Il binning richiede 3 componenti (k={loadings.k})")
    return sign_ternary(loadings.L[:, :3], policy.tau)


def is_degenerate(dist: Distribution3) -> bool:
    return int(np.count_nonzero(dist.p)) <= 1


def cell_counts(bins: np.ndarray) -> Dict[str, int]:
    counts: Dict[str, int] = {}
    for row in bins:
        key = ",".join(TERNARY_LABELS[b] for b in row)
        counts[key] = counts.get(key, 0) + 1
    return dict(sorted(counts.items()))


def loadings_to_distribution(
    loadings: LoadingsMatrix,
    policy: Optional[BinningPolicy] = None,
    strict: bool = False,
) -> Distribution3:
    """
    Distribuzione 3×3×3 delle variabili sulle celle SignTernary.

    Con k > 3 si usano le prime tre componenti ruotate. Una distribuzione concentrata
    in una sola cella è restituita comunque (entropie nulle); con strict=True solleva
    DegenerateDistribution.
    """
    policy = policy or BinningPolicy()
    if not loadings.labels:
        raise ValueError("Nessuna variabile da distribuire")
    bins = bin_loadings(loadings, policy)

    counts = np.zeros((3, 3, 3), dtype=np.int64)
    np.add.at(counts, (bins[:, 0], bins[:, 1], bins[:, 2]), 1)
    labels = (TERNARY_LABELS, TERNARY_LABELS, TERNARY_LABELS)
    dist = Distribution3(counts / counts.sum(), labels)

    if is_degenerate(dist):
        diagnostics_state.record("degenerate_distribution")
        cell = cell_counts(bins)
        logger.warning(f"[PIPELINE] Distribuzione degenere: tutte le variabili nella cella {list(cell)}")
        if strict:
            raise DegenerateDistribution(
                "Tutte le variabili cadono nella stessa cella", cell=list(cell)[0], n_variables=len(bins)
            )
    return dist
