"""
Rotazione varimax con normalizzazione di Kaiser, per rotazioni piane a coppie di fattori.

Per ogni coppia (i, j) l'angolo ottimo è atan2(numer, denom) / 4 con
  u = x² − y², v = 2xy, A = Σu, B = Σv, C = Σ(u² − v²), D = 2Σuv
  numer = D − 2AB/p, denom = C − (A² − B²)/p.
Uno sweep visita tutte le coppie; stop quando il guadagno del criterio è < tol.
"""
from __future__ import annotations

import logging
import math
import time
from typing import Optional

import numpy as np

from core.config import get_config
from core.errors import NoConvergence
from linalg.types import LoadingsMatrix, VarimaxResult

logger = logging.getLogger(__name__)


def varimax_criterion(L: np.ndarray) -> float:
    """Somma sui fattori della varianza dei loadings al quadrato."""
    squared = L ** 2
    return float(((squared ** 2).mean(axis=0) - squared.mean(axis=0) ** 2).sum())


def _pair_angle(x: np.ndarray, y: np.ndarray, p: int) -> float:
    u = x * x - y * y
    v = 2.0 * x * y
    A = u.sum()
    B = v.sum()
    C = (u * u - v * v).sum()
    D = 2.0 * (u * v).sum()
    numer = D - 2.0 * A * B / p
    denom = C - (A * A - B * B) / p
    return math.atan2(numer, denom) / 4.0


def _order_and_sign(L: np.ndarray, R: np.ndarray):
    """Colonne per somma dei quadrati decrescente; loading di modulo massimo positivo."""
    order = np.argsort(-(L ** 2).sum(axis=0), kind="stable")
    L = L[:, order]
    R = R[:, order]
    for j in range(L.shape[1]):
        i = int(np.argmax(np.abs(L[:, j])))
        if L[i, j] < 0.0:
            L[:, j] = -L[:, j]
            R[:, j] = -R[:, j]
    return L, R


def rotate_varimax(
    loadings: LoadingsMatrix,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    normalize: Optional[bool] = None,
) -> VarimaxResult:
    """
    Rotazione ortogonale completa: loadings ruotati, matrice R, storia del criterio.

    La storia del criterio è calcolata sui loadings normalizzati (se Kaiser attivo)
    ed è non decrescente sweep dopo sweep.
    """
    config = get_config()
    tol = config.varimax_tol if tol is None else tol
    max_iter = config.varimax_max_iter if max_iter is None else max_iter
    normalize = config.kaiser_normalization if normalize is None else normalize

    L = np.array(loadings.L, dtype=float)
    p, k = L.shape
    if k < 2:
        raise ValueError(f"Varimax richiede almeno 2 fattori (k={k})")

    started = time.time()
    if normalize:
        h = np.sqrt((L ** 2).sum(axis=1))
        scale = np.where(h > 0.0, h, 1.0)
        work = L / scale[:, None]
    else:
        work = L.copy()

    R = np.eye(k)
    history = [varimax_criterion(work)]
    converged = False
    sweeps = 0

    for sweeps in range(1, max_iter + 1):
        for i in range(k - 1):
            for j in range(i + 1, k):
                theta = _pair_angle(work[:, i], work[:, j], p)
                if theta == 0.0:
                    continue
                c, s = math.cos(theta), math.sin(theta)
                T = np.array([[c, -s], [s, c]])
                work[:, [i, j]] = work[:, [i, j]] @ T
                R[:, [i, j]] = R[:, [i, j]] @ T
        history.append(varimax_criterion(work))
        if history[-1] - history[-2] < tol:
            converged = True
            break

    rotated, R = _order_and_sign(L @ R, R)
    result = VarimaxResult(
        loadings=LoadingsMatrix(
            labels=list(loadings.labels),
            L=rotated,
            rotated=True,
            eigenvalues=loadings.eigenvalues,
            basis=loadings.basis,
        ),
        rotation=R,
        criterion_history=history,
        sweeps=sweeps,
        converged=converged,
    )

    logger.debug(
        f"[VARIMAX] p={p}, k={k}: {sweeps} sweep, criterio {history[0]:.6f} -> {history[-1]:.6f}, "
        f"{time.time() - started:.3f}s"
    )
    if not converged:
        logger.warning(f"[VARIMAX] Nessuna convergenza dopo {sweeps} sweep")
    return result


def varimax(
    loadings: LoadingsMatrix,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    normalize: Optional[bool] = None,
) -> LoadingsMatrix:
    """
    Loadings ruotati L·R.

    Raises:
        NoConvergence: dopo max_iter sweep (best = loadings migliori disponibili)
    """
    result = rotate_varimax(loadings, tol, max_iter, normalize)
    if not result.converged:
        raise NoConvergence(
            f"Varimax non convergente dopo {result.sweeps} sweep",
            best=result.loadings,
            sweeps=result.sweeps,
        )
    return result.loadings
