"""
Iterative proportional fitting: stima a massima entropia con i tre marginali bivariati.

Partenza dalla tabella uniforme, ciclo XY -> XZ -> YZ; convergenza sul residuo L∞
dei marginali bivariati. Le celle forzate a zero da un marginale nullo restano zero.

Quando il massimo di entropia sta sul bordo del simplesso la convergenza è sublineare:
le celle che tendono a zero vengono azzerate e il fit ripetuto sul supporto ridotto.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from core import diagnostics_state
from core.config import get_config
from infotheory.types import Distribution3

logger = logging.getLogger(__name__)

# celle sotto questa massa che calano ancora (q ≤ SNAP_DECAY × stima a metà corsa)
# sono trattate come zeri forzati dal bordo del supporto
SNAP_MASS = 1e-3
SNAP_DECAY = 0.75


@dataclass
class IpfResult:
    distribution: Distribution3
    iterations: int
    converged: bool
    residual: float
    snapped_cells: int = 0


def _scale(current: np.ndarray, target: np.ndarray) -> np.ndarray:
    factor = np.zeros_like(target)
    np.divide(target, current, out=factor, where=current > 0)
    return factor


def marginal_residual(q: np.ndarray, p: np.ndarray) -> float:
    """Massima differenza assoluta sulle celle dei marginali XY, XZ, YZ."""
    return float(max(
        np.abs(q.sum(axis=2) - p.sum(axis=2)).max(),
        np.abs(q.sum(axis=1) - p.sum(axis=1)).max(),
        np.abs(q.sum(axis=0) - p.sum(axis=0)).max(),
    ))


def _fit(q: np.ndarray, p: np.ndarray, tol: float, max_iter: int) -> Tuple[np.ndarray, int, float, np.ndarray]:
    """Cicli XY -> XZ -> YZ da q; ritorna anche la stima a metà corsa."""
    m_xy = p.sum(axis=2)
    m_xz = p.sum(axis=1)
    m_yz = p.sum(axis=0)

    halfway = max_iter // 2
    q_mid = q
    residual = float("inf")
    iterations = 0

    for iterations in range(1, max_iter + 1):
        q = q * _scale(q.sum(axis=2), m_xy)[:, :, None]
        q = q * _scale(q.sum(axis=1), m_xz)[:, None, :]
        q = q * _scale(q.sum(axis=0), m_yz)[None, :, :]
        if iterations == halfway:
            q_mid = q
        residual = marginal_residual(q, p)
        if residual <= tol:
            break
    return q, iterations, residual, q_mid


def _vanishing_cells(q: np.ndarray, q_mid: np.ndarray) -> np.ndarray:
    """Celle piccole che continuano a calare: candidate al bordo del supporto."""
    return (q > 0.0) & (q < SNAP_MASS) & (q <= SNAP_DECAY * q_mid)


def ipf_maxent(
    dist3: Distribution3,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> IpfResult:
    """
    Stima IPF a massima entropia.

    Non solleva in caso di mancata convergenza: IpfResult.converged = False e la
    migliore stima disponibile. interaction_information decide se propagare l'errore.
    """
    config = get_config()
    tol = config.ipf_tol if tol is None else tol
    max_iter = config.ipf_max_iter if max_iter is None else max_iter
    if tol <= 0:
        raise ValueError(f"tol deve essere > 0 (ricevuto {tol})")
    if max_iter < 1:
        raise ValueError(f"max_iter deve essere ≥ 1 (ricevuto {max_iter})")

    started = time.time()
    p = dist3.p
    q, iterations, residual, q_mid = _fit(np.full(p.shape, 1.0 / p.size), p, tol, max_iter)

    snapped = 0
    if residual > tol:
        vanishing = _vanishing_cells(q, q_mid)
        if vanishing.any():
            # supporto ridotto: accettato solo se il refit rispetta i marginali
            refit, extra, refit_residual, _ = _fit(np.where(vanishing, 0.0, q), p, tol, max_iter)
            iterations += extra
            if refit_residual <= tol:
                q, residual = refit, refit_residual
                snapped = int(vanishing.sum())
                diagnostics_state.record("ipf_support_snapped", snapped)
                logger.info(f"[IPF] {snapped} celle al bordo azzerate, convergenza dopo il refit")

    converged = residual <= tol
    # rinormalizza l'errore di arrotondamento accumulato
    q = q / q.sum()

    if not converged:
        diagnostics_state.record("ipf_no_convergence")
        logger.warning(
            f"[IPF] Nessuna convergenza dopo {iterations} cicli: residuo {residual:.3e} > tol {tol:.1e}"
        )
    else:
        logger.debug(f"[IPF] Convergenza in {iterations} cicli (residuo {residual:.2e}, {time.time() - started:.4f}s)")

    return IpfResult(
        distribution=Distribution3(q, dist3.labels),
        iterations=iterations,
        converged=converged,
        residual=residual,
        snapped_cells=snapped,
    )
