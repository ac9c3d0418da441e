"""
Interaction information I(ABC→AB:AC:BC), redundancy R = μ* + I e report completo.
"""
from __future__ import annotations

import logging
from typing import Optional, Tuple

from core import diagnostics_state
from core.config import get_config
from core.errors import NoConvergence
from infotheory.entropy import entropy, joint_entropies, mu_star, mu_star_from_entropies
from infotheory.ipf import IpfResult, ipf_maxent
from infotheory.types import Distribution3, EntropyReport

logger = logging.getLogger(__name__)


def _clamp(value: float) -> float:
    if value >= 0.0:
        return value
    clamp_tol = get_config().interaction_clamp_tol
    if value < -clamp_tol:
        diagnostics_state.record("interaction_clamped")
        logger.warning(f"[IPF] Interaction information negativa {value:.3e} riportata a 0")
    return 0.0


def _interaction(
    dist3: Distribution3,
    tol: Optional[float],
    max_iter: Optional[int],
    strict: bool,
    h_xyz: Optional[float] = None,
) -> Tuple[float, IpfResult]:
    fit = ipf_maxent(dist3, tol, max_iter)
    if h_xyz is None:
        h_xyz = entropy(dist3.p)
    value = _clamp(entropy(fit.distribution.p) - h_xyz)
    if strict and not fit.converged:
        raise NoConvergence(
            f"IPF non convergente dopo {fit.iterations} cicli (residuo {fit.residual:.3e})",
            best=value,
            iterations=fit.iterations,
            residual=fit.residual,
        )
    return value, fit


def interaction_information(
    dist3: Distribution3,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    strict: bool = True,
) -> float:
    """H(stima a massima entropia) − H_xyz; sempre ≥ 0 dopo il clamp."""
    value, _ = _interaction(dist3, tol, max_iter, strict)
    return value


def redundancy(
    dist3: Distribution3,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    strict: bool = True,
) -> float:
    return mu_star(dist3) + interaction_information(dist3, tol, max_iter, strict)


def entropy_report(
    dist3: Distribution3,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    strict: bool = True,
) -> EntropyReport:
    """Tutte le entropie, μ*, I e R in un solo passaggio IPF."""
    h = joint_entropies(dist3)
    mu = mu_star_from_entropies(h)
    interaction, fit = _interaction(dist3, tol, max_iter, strict, h_xyz=h["h_xyz"])
    return EntropyReport(
        **h,
        mu_star=mu,
        interaction_info=interaction,
        redundancy=mu + interaction,
        ipf_iterations=fit.iterations,
        ipf_converged=fit.converged,
    )
