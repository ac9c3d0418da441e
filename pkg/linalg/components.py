"""
Componenti principali: loadings non ruotati L_ij = v_ij · √λ_j.
"""
from __future__ import annotations

import logging
from typing import Any, Dict, Optional

import numpy as np

from core.config import get_config
from core.errors import NonPositiveEigenvalue
from core.output import Target, write_csv
from linalg.jacobi import eigh
from linalg.types import CorrelationMatrix, EigenResult, LoadingsMatrix

logger = logging.getLogger(__name__)

# autovalori sotto questa frazione del massimo sono trattati come nulli (rango)
RANK_RTOL = 1e-12
# comunalità oltre 1 entro questa soglia sono arrotondamento: righe riscalate a 1
COMMUNALITY_CLIP = 1e-7


def _clip_communalities(L: np.ndarray, r: CorrelationMatrix) -> np.ndarray:
    if r.basis != "correlation":
        return L
    h2 = (L ** 2).sum(axis=1)
    over = (h2 > 1.0) & (h2 <= 1.0 + COMMUNALITY_CLIP)
    if over.any():
        L = L.copy()
        L[over] /= np.sqrt(h2[over])[:, None]
    return L


def principal_components(
    r: CorrelationMatrix,
    k: Optional[int] = None,
    eigen: Optional[EigenResult] = None,
) -> LoadingsMatrix:
    """
    Primi k loadings non ruotati.

    Raises:
        NonPositiveEigenvalue: k supera il rango (λ_k ≤ 0)
    """
    k = get_config().n_components if k is None else k
    if k < 1:
        raise ValueError(f"k deve essere ≥ 1 (ricevuto {k})")
    if k > r.size:
        raise NonPositiveEigenvalue(
            f"k={k} componenti richieste ma solo {r.size} variabili", k=k, n_variables=r.size
        )

    eigen = eigen or eigh(r)
    values = eigen.values[:k]
    floor = RANK_RTOL * max(float(eigen.values[0]), 0.0) * r.size
    if (values <= floor).any():
        j = int(np.argmax(values <= floor))
        raise NonPositiveEigenvalue(
            f"Autovalore λ_{j + 1} = {values[j]:.3e} non positivo: k={k} supera il rango",
            k=k, index=j + 1, eigenvalue=float(values[j]),
        )

    L = _clip_communalities(eigen.vectors[:, :k] * np.sqrt(values), r)
    explained = float(values.sum() / np.trace(r.r)) if np.trace(r.r) > 0 else 0.0
    logger.info(
        f"[JACOBI] {k} componenti su {r.size} variabili: λ={np.round(values, 4).tolist()}, "
        f"varianza spiegata {explained:.1%}"
    )
    return LoadingsMatrix(labels=list(r.labels), L=L, rotated=False, eigenvalues=values.copy(), basis=r.basis)


def save_loadings(loadings: LoadingsMatrix, target: Target, provenance: Optional[Dict[str, Any]] = None) -> None:
    """CSV: variabili in riga, componenti in colonna (header variable,f1,f2,...)."""
    write_csv(loadings.to_frame(), target, provenance)
