"""
Entropie di Shannon (bit), trasmissioni e μ* su distribuzioni trivariate.
"""
from __future__ import annotations

from typing import Dict, Sequence, Tuple

import numpy as np

from core.errors import NotNormalized
from infotheory.types import NORMALIZATION_TOL, Distribution3, Pair

# Assi sommati per ottenere ogni marginale
_MARGINAL_AXES: Dict[str, Tuple[int, ...]] = {
    "x": (1, 2),
    "y": (0, 2),
    "z": (0, 1),
    "xy": (2,),
    "xz": (1,),
    "yz": (0,),
    "xyz": (),
}

_PAIRS: Dict[str, Tuple[str, str, str]] = {
    "XY": ("x", "y", "xy"),
    "XZ": ("x", "z", "xz"),
    "YZ": ("y", "z", "yz"),
}


def entropy(dist: Sequence[float]) -> float:
    """−Σ p·log₂p con 0·log 0 = 0; accetta vettori o tabelle di qualsiasi forma."""
    p = np.asarray(dist, dtype=float).ravel()
    if (p < 0).any() or not np.all(np.isfinite(p)):
        raise NotNormalized("Probabilità negative o non finite")
    total = float(p.sum())
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise NotNormalized(f"Somma delle probabilità {total!r} ≠ 1", total=total)
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


def marginal(dist3: Distribution3, variables: str) -> np.ndarray:
    """Marginale per 'x', 'y', 'z', 'xy', 'xz', 'yz' o 'xyz'."""
    try:
        axes = _MARGINAL_AXES[variables.lower()]
    except KeyError:
        raise ValueError(f"Marginale sconosciuto: {variables!r}") from None
    return dist3.p.sum(axis=axes) if axes else dist3.p


def joint_entropies(dist3: Distribution3) -> Dict[str, float]:
    """Le sette entropie h_x ... h_xyz."""
    return {f"h_{name}": entropy(marginal(dist3, name)) for name in _MARGINAL_AXES}


def conditional_entropy(dist3: Distribution3, target: str, given: str) -> float:
    """H(target | given) = H(target ∪ given) − H(given), es. ('z', 'xy')."""
    joint = "".join(sorted(set(target.lower()) | set(given.lower())))
    return entropy(marginal(dist3, joint)) - entropy(marginal(dist3, given))


def transmission(dist3: Distribution3, pair: Pair) -> float:
    """T = H_a + H_b − H_ab (≥ 0; eventuali negativi di arrotondamento riportati a 0)."""
    try:
        a, b, ab = _PAIRS[pair.upper()]
    except KeyError:
        raise ValueError(f"Coppia sconosciuta: {pair!r} (attesa XY, XZ o YZ)") from None
    value = entropy(marginal(dist3, a)) + entropy(marginal(dist3, b)) - entropy(marginal(dist3, ab))
    return max(value, 0.0)


def mu_star_from_entropies(h: Dict[str, float]) -> float:
    return (
        h["h_x"] + h["h_y"] + h["h_z"]
        - h["h_xy"] - h["h_xz"] - h["h_yz"]
        + h["h_xyz"]
    )


def mu_star(dist3: Distribution3) -> float:
    """Informazione configurazionale con segno; negativa = incertezza ridotta."""
    return mu_star_from_entropies(joint_entropies(dist3))
