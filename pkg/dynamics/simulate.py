"""
Simulazione di traiettorie con generatore seminato.

Generatore: numpy PCG64 con seed a 64 bit. Ogni passo che richiede un segno consuma
esattamente un uniforme double; il ramo è "plus" se u < p_plus. Gli uniformi sono
estratti a blocchi: la dimensione del blocco non cambia la sequenza.
"""
from __future__ import annotations

import logging
import math
import time
from typing import Callable, List, Optional, Union

import numpy as np

from core import diagnostics_state
from core.config import get_config
from core.errors import (
    DegenerateDenominator,
    NegativeRadicand,
    NegativeState,
    NoRealRoot,
)
from dynamics.maps import (
    step_double_contingency,
    step_incursive,
    step_interaction,
    step_logistic,
    step_organization,
    step_self_organization,
)
from dynamics.types import (
    Completed,
    MapKind,
    NegativeStates,
    Sign,
    SimConfig,
    Trajectory,
    TrajectorySummary,
    Vanished,
)

logger = logging.getLogger(__name__)

# Errori dei passi singoli -> causa di terminazione
_ERROR_CAUSE = (
    (NoRealRoot, "no_real_root"),
    (NegativeRadicand, "negative_radicand"),
    (DegenerateDenominator, "negative_denominator"),
    (NegativeState, "negative_state"),
)

StepFn = Callable[[float, Sign], Union[float, Vanished]]


class UniformStream:
    """Uniformi in [0, 1) da PCG64, estratti a blocchi."""

    def __init__(self, seed: int, block_size: int):
        self._generator = np.random.Generator(np.random.PCG64(seed))
        self._block_size = block_size
        self._block: List[float] = []
        self._pos = 0

    def next(self) -> float:
        if self._pos == len(self._block):
            self._block = self._generator.random(self._block_size).tolist()
            self._pos = 0
        value = self._block[self._pos]
        self._pos += 1
        return value


def make_stepper(map_kind: MapKind, negative_states: NegativeStates = "real_root") -> StepFn:
    """Passo (x, segno) -> nuovo stato; le mappe senza rami ignorano il segno."""
    family, p = map_kind.family, map_kind.parameter

    if family == "logistic":
        return lambda x, _s: step_logistic(x, p)
    if family == "incursive":
        return lambda x, _s: step_incursive(x, p)
    if family == "double_contingency":
        return lambda x, s: step_double_contingency(x, p, s)
    if family == "interaction":
        return lambda x, s: step_interaction(x, p, s)
    if family == "self_organization":
        allow_negative = negative_states == "real_root"
        return lambda x, _s: step_self_organization(x, p, allow_negative=allow_negative)
    if family == "organization":
        return lambda x, s: step_organization(x, p, s)
    raise ValueError(f"Famiglia di mappa sconosciuta: {family!r}")


def simulate(config: SimConfig, block_size: Optional[int] = None) -> Trajectory:
    """
    Itera la mappa configurata da x0 per al più `steps` passi.

    Si ferma con Vanished quando il passo successivo non ha radice reale (o diverge);
    a parità di config la traiettoria è identica bit per bit.
    """
    if block_size is None:
        block_size = get_config().rng_block_size

    started = time.time()
    map_kind = config.map
    policy = config.root_policy
    step = make_stepper(map_kind, config.negative_states)

    stream: Optional[UniformStream] = None
    fixed_sign: Sign = "minus" if policy.kind == "minus" else "plus"
    if map_kind.requires_sign and policy.draws:
        stream = UniformStream(config.seed, block_size)
    p_plus = policy.p_plus

    x = config.x0
    states: List[float] = [x]
    termination: Union[Completed, Vanished] = Completed()

    for _ in range(config.steps):
        if stream is not None:
            choice: Sign = "plus" if stream.next() < p_plus else "minus"
        else:
            choice = fixed_sign

        cause = None
        try:
            result = step(x, choice)
        except (NoRealRoot, NegativeRadicand, DegenerateDenominator, NegativeState) as exc:
            cause = next(c for error_type, c in _ERROR_CAUSE if isinstance(exc, error_type))
        else:
            if isinstance(result, Vanished):
                cause = result.cause
            elif not math.isfinite(result):
                cause = "diverged"

        if cause is not None:
            termination = Vanished(cause, at_step=len(states) - 1)
            diagnostics_state.record(f"vanished:{cause}")
            break

        x = result
        states.append(x)

    logger.debug(
        f"[SIMULATE] {map_kind.family}({map_kind.symbol}={map_kind.parameter}) seed={config.seed}: "
        f"{len(states) - 1} passi, termination={termination.event or 'completed'}, "
        f"{time.time() - started:.3f}s"
    )
    return Trajectory(states=states, termination=termination)


def summarize(trajectory: Trajectory) -> TrajectorySummary:
    values = np.asarray(trajectory.states, dtype=float)
    centred = values - 1.0
    crossings = int(np.count_nonzero(centred[:-1] * centred[1:] < 0.0))
    return TrajectorySummary(
        n_states=int(values.size),
        mean=float(values.mean()),
        minimum=float(values.min()),
        maximum=float(values.max()),
        crossings_of_one=crossings,
        termination=trajectory.termination,
    )
