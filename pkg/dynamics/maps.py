"""
Mappe a passo singolo: logistica, incursiva e le tre iperincursive risolte in avanti.

Le mappe iperincursive hanno due radici: il ramo è scelto dal chiamante con `choice`.
Gli errori (DegenerateDenominator, NoRealRoot, NegativeRadicand, NegativeState) sono
sollevati qui; `simulate` li traduce in terminazioni Vanished.

L'ordine delle operazioni floating point è lo stesso del kernel vettoriale in
dynamics/ensemble.py: i due percorsi devono restare identici bit per bit.
"""
from __future__ import annotations

import math
from typing import Optional, Tuple, Union

import numpy as np

from core.errors import (
    DegenerateDenominator,
    NegativeRadicand,
    NegativeState,
    NoRealRoot,
)
from dynamics.types import MapKind, Sign, Vanished

_SIGN_VALUE = {"plus": 1.0, "minus": -1.0}

BISECTION_TOL = 1e-15


def sign_value(choice: Sign) -> float:
    try:
        return _SIGN_VALUE[choice]
    except KeyError:
        raise ValueError(f"Segno non valido: {choice!r} (atteso 'plus' o 'minus')") from None


def _check_parameter(name: str, value: float) -> None:
    if not value > 0:
        raise ValueError(f"Parametro {name} deve essere > 0 (ricevuto {value!r})")


def step_logistic(x_prev: float, a: float) -> float:
    _check_parameter("a", a)
    return a * x_prev * (1.0 - x_prev)


def step_incursive(x_prev: float, a: float) -> float:
    """x_t = a·x_{t-1}·(1 − x_t) risolta per x_t."""
    _check_parameter("a", a)
    ax = a * x_prev
    denominator = 1.0 + ax
    if denominator == 0.0:
        raise DegenerateDenominator(
            "Denominatore nullo nella mappa incursiva (1 + a·x = 0)", x=x_prev, a=a
        )
    return ax / denominator


def step_double_contingency(x_t: float, a: float, choice: Sign) -> float:
    """Radici di a·y² − a·y + x_t = 0: y = (1 ± √(1 − 4·x_t/a)) / 2."""
    _check_parameter("a", a)
    s = sign_value(choice)
    discriminant = 1.0 - 4.0 * x_t / a
    if discriminant < 0.0:
        raise NoRealRoot(
            "Discriminante negativo: nessuna aspettativa reale al passo successivo",
            x=x_t, a=a, discriminant=discriminant,
        )
    return (1.0 + s * math.sqrt(discriminant)) / 2.0


def step_interaction(x_t: float, b: float, choice: Sign) -> float:
    _check_parameter("b", b)
    s = sign_value(choice)
    radicand = x_t / b
    if radicand < 0.0:
        raise NegativeRadicand(
            "Radicando negativo: il sistema di interazione svanisce", x=x_t, b=b
        )
    return 1.0 + s * math.sqrt(radicand)


def step_self_organization(x_t: float, c: float, allow_negative: bool = False) -> float:
    """
    Radice reale della cubica x_t = c·(1 − x_{t+1})³.

    Con allow_negative=False uno stato negativo è rifiutato (NegativeState);
    con True si prende la radice cubica reale del numero negativo.
    """
    _check_parameter("c", c)
    if x_t < 0.0 and not allow_negative:
        raise NegativeState(
            "Stato negativo in ingresso all'auto-organizzazione", x=x_t, c=c
        )
    return 1.0 - float(np.cbrt(x_t / c))


def step_organization(x_t: float, d: float, choice: Sign) -> Union[float, Vanished]:
    _check_parameter("d", d)
    s = sign_value(choice)
    if x_t < 0.0:
        return Vanished("negative_radicand")
    if x_t >= 1.0:
        # x_t = 1 divide per zero: trattato come il caso x_t > 1
        return Vanished("negative_denominator")
    radicand = x_t / (d * (1.0 - x_t))
    return 1.0 + s * math.sqrt(radicand)


def self_organization_roots(x_t: float, c: float) -> Tuple[float, complex, complex]:
    """Le tre radici della cubica: reale e coppia complessa coniugata (mai iterata)."""
    _check_parameter("c", c)
    r = float(np.cbrt(x_t / c))
    omega = complex(-0.5, math.sqrt(3.0) / 2.0)
    real_root = 1.0 - r
    if r == 0.0:
        return real_root, complex(real_root), complex(real_root)
    return real_root, 1.0 - r * omega, 1.0 - r * omega.conjugate()


def fixed_point(map_kind: MapKind) -> Optional[float]:
    """
    Punto fisso non banale dove esiste in forma chiusa.

    Per le mappe con due rami il punto fisso dipende dal ramo: ritorna None.
    """
    family, p = map_kind.family, map_kind.parameter
    if family in ("logistic", "incursive"):
        return (p - 1.0) / p if p > 1.0 else 0.0
    if family == "self_organization":
        return _bisect(lambda x: x - 1.0 + float(np.cbrt(x / p)), 0.0, 1.0)
    return None


def _bisect(g, lo: float, hi: float, tol: float = BISECTION_TOL, max_iter: int = 200) -> float:
    g_lo = g(lo)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        if g_mid == 0.0 or (hi - lo) < tol:
            return mid
        if (g_mid < 0.0) == (g_lo < 0.0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def back_substitute(map_kind: MapKind, x_next: float, x_t: Optional[float] = None) -> float:
    """
    Valore di x_t ricostruito inserendo x_{t+1} nell'equazione che lo definisce.

    Per l'organizzazione l'equazione contiene anche x_t: serve passarlo.
    """
    family, p = map_kind.family, map_kind.parameter
    if family == "double_contingency":
        return p * x_next * (1.0 - x_next)
    if family == "interaction":
        return p * (1.0 - x_next) * (1.0 - x_next)
    if family == "self_organization":
        return p * (1.0 - x_next) ** 3
    if family == "organization":
        if x_t is None:
            raise ValueError("back_substitute per organization richiede x_t")
        return p * (1.0 - x_t) * (1.0 - x_next) * (1.0 - x_next)
    raise ValueError(f"Back-substitution non definita per {family}")
