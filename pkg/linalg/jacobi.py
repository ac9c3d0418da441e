"""
Autovalori di matrici simmetriche con sweep ciclici di Jacobi.

Ogni rotazione annulla a[p, q]; convergenza quando la norma fuori-diagonale è
sotto tol × norma di Frobenius, oppure dopo uno sweep senza rotazioni.
Elementi trascurabili rispetto alla diagonale vengono azzerati senza ruotare.
"""
from __future__ import annotations

import logging
import math
import time
from typing import Optional

import numpy as np

from core.config import get_config
from core.errors import NoConvergence
from linalg.types import EigenResult

logger = logging.getLogger(__name__)

EPS = float(np.finfo(float).eps)


def _off_norm(a: np.ndarray) -> float:
    # somma diretta dei fuori-diagonale: ‖A‖² − ‖diag‖² cancella sotto ~1e-8
    off = a - np.diag(np.diag(a))
    return float(np.sqrt((off ** 2).sum()))


def _negligible(apq: float, app: float, aqq: float, floor: float) -> bool:
    """a[p, q] trascurabile rispetto alla diagonale (o sotto il pavimento assoluto)."""
    return abs(apq) <= max(EPS * math.sqrt(abs(app * aqq)), floor)


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
    if theta < 0.0:
        t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c

    col_p = a[:, p].copy()
    col_q = a[:, q]
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q

    row_p = a[p, :].copy()
    row_q = a[q, :]
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q

    a[p, q] = 0.0
    a[q, p] = 0.0

    vec_p = v[:, p].copy()
    vec_q = v[:, q]
    v[:, p] = c * vec_p - s * vec_q
    v[:, q] = s * vec_p + c * vec_q


def _canonical(values: np.ndarray, vectors: np.ndarray):
    """Ordine decrescente, componente di modulo massimo positiva."""
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]
    for j in range(vectors.shape[1]):
        i = int(np.argmax(np.abs(vectors[:, j])))
        if vectors[i, j] < 0.0:
            vectors[:, j] = -vectors[:, j]
    return values, vectors


def eigh(
    r: np.ndarray,
    tol: Optional[float] = None,
    max_sweeps: Optional[int] = None,
    strict: bool = True,
) -> EigenResult:
    """
    Autovalori (decrescenti) e autovettori ortonormali di una matrice simmetrica.

    Args:
        r: Matrice simmetrica n × n (array o CorrelationMatrix)
        tol: Soglia relativa sulla norma fuori-diagonale
        max_sweeps: Sweep ciclici massimi
        strict: Se True solleva NoConvergence (con best) oltre max_sweeps

    Raises:
        NoConvergence: norma fuori-diagonale sopra soglia dopo max_sweeps
    """
    config = get_config()
    tol = config.jacobi_tol if tol is None else tol
    max_sweeps = config.jacobi_max_sweeps if max_sweeps is None else max_sweeps

    matrix = getattr(r, "r", r)
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"Matrice quadrata richiesta (shape {a.shape})")
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12):
        raise ValueError("Matrice non simmetrica")
    a = (a + a.T) / 2.0

    started = time.time()
    n = a.shape[0]
    v = np.eye(n)
    scale = float(np.sqrt((a ** 2).sum()))
    threshold = tol * scale
    floor = EPS * EPS * scale
    sweeps = 0
    converged = n < 2 or _off_norm(a) <= threshold

    while not converged and sweeps < max_sweeps:
        sweeps += 1
        rotations = 0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                if _negligible(apq, a[p, p], a[q, q], floor):
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                _rotate(a, v, p, q)
                rotations += 1
        # uno sweep senza rotazioni: fuori-diagonale già al livello dell'arrotondamento
        converged = rotations == 0 or _off_norm(a) <= threshold

    values, vectors = _canonical(np.diag(a).copy(), v)
    logger.debug(
        f"[JACOBI] n={n}: {sweeps} sweep, off={_off_norm(a):.2e}, {time.time() - started:.3f}s"
    )

    result = EigenResult(values=values, vectors=vectors, sweeps=sweeps, converged=converged)
    if not converged:
        logger.warning(f"[JACOBI] Nessuna convergenza dopo {sweeps} sweep (n={n})")
        if strict:
            raise NoConvergence(
                f"Jacobi non convergente dopo {sweeps} sweep", best=result, sweeps=sweeps, n=n
            )
    return result
