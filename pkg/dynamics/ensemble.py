"""
Kernel vettoriale: molte traiettorie seminate in parallelo (lock-step numpy).

Ogni run usa il proprio PCG64(seed) e consuma un uniforme per passo con segno,
esattamente come `simulate`; espressioni floating point nello stesso ordine dei
passi scalari in dynamics/maps.py. Il risultato di ogni run coincide bit per bit
con `simulate` sulla stessa configurazione.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from core import diagnostics_state
from dynamics.types import MapKind, NegativeStates, RootPolicy

logger = logging.getLogger(__name__)

# Codici causa nel kernel (0 = passo valido)
CAUSES = (
    "",
    "negative_radicand",
    "negative_denominator",
    "no_real_root",
    "negative_state",
    "diverged",
)
_OK, _NEG_RADICAND, _NEG_DENOMINATOR, _NO_REAL_ROOT, _NEG_STATE, _DIVERGED = range(6)


@dataclass
class EnsembleOutcome:
    seeds: List[int]
    termination_steps: np.ndarray   # -1 se il run ha completato tutti i passi
    causes: List[str]
    final_states: np.ndarray
    states: Optional[np.ndarray] = None  # (steps+1, n_runs), NaN dopo la terminazione

    @property
    def n_runs(self) -> int:
        return len(self.seeds)

    @property
    def vanished(self) -> np.ndarray:
        return self.termination_steps >= 0

    def run_steps(self) -> List[Optional[int]]:
        return [int(s) if s >= 0 else None for s in self.termination_steps]


def _vector_step(
    family: str,
    p: float,
    xs: np.ndarray,
    signs: np.ndarray,
    negative_states: NegativeStates,
):
    codes = np.zeros(xs.shape, dtype=np.int8)

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if family == "logistic":
            new = p * xs * (1.0 - xs)
        elif family == "incursive":
            ax = p * xs
            denominator = 1.0 + ax
            codes[denominator == 0.0] = _NEG_DENOMINATOR
            new = ax / denominator
        elif family == "double_contingency":
            discriminant = 1.0 - 4.0 * xs / p
            codes[discriminant < 0.0] = _NO_REAL_ROOT
            new = (1.0 + signs * np.sqrt(np.maximum(discriminant, 0.0))) / 2.0
        elif family == "interaction":
            radicand = xs / p
            codes[radicand < 0.0] = _NEG_RADICAND
            new = 1.0 + signs * np.sqrt(np.maximum(radicand, 0.0))
        elif family == "self_organization":
            if negative_states == "vanish":
                codes[xs < 0.0] = _NEG_STATE
            new = 1.0 - np.cbrt(xs / p)
        elif family == "organization":
            codes[xs < 0.0] = _NEG_RADICAND
            codes[xs >= 1.0] = _NEG_DENOMINATOR
            radicand = xs / (p * (1.0 - xs))
            new = 1.0 + signs * np.sqrt(np.maximum(radicand, 0.0))
        else:
            raise ValueError(f"Famiglia di mappa sconosciuta: {family!r}")

    codes[(codes == _OK) & ~np.isfinite(new)] = _DIVERGED
    return new, codes


def run_ensemble(
    map_kind: MapKind,
    x0: float,
    steps: int,
    seeds: Sequence[int],
    root_policy: Optional[RootPolicy] = None,
    negative_states: NegativeStates = "real_root",
    block_size: int = 4096,
    record_states: bool = False,
) -> EnsembleOutcome:
    """
    Esegue len(seeds) traiettorie fino a `steps` passi o alla terminazione.

    record_states=True conserva l'intera matrice degli stati (solo per run brevi).
    """
    if steps < 1:
        raise ValueError(f"steps deve essere ≥ 1 (ricevuto {steps})")
    if not seeds:
        raise ValueError("Serve almeno un seed")

    policy = root_policy or RootPolicy()
    started = time.time()
    n = len(seeds)
    family, p = map_kind.family, map_kind.parameter

    x = np.full(n, float(x0))
    alive = np.ones(n, dtype=bool)
    termination_steps = np.full(n, -1, dtype=np.int64)
    cause_codes = np.zeros(n, dtype=np.int8)
    trace = np.full((steps + 1, n), np.nan) if record_states else None
    if trace is not None:
        trace[0] = x

    draws = map_kind.requires_sign and policy.draws
    fixed = 1.0 if policy.kind == "plus" else -1.0
    generators = [np.random.Generator(np.random.PCG64(int(s))) for s in seeds] if draws else []
    buffer = np.empty((n, block_size)) if draws else None
    pos = block_size

    t = 0
    for t in range(1, steps + 1):
        idx = np.flatnonzero(alive)
        if idx.size == 0:
            break

        if draws:
            if pos == block_size:
                # i run terminati non consumano più uniformi
                for i in idx:
                    buffer[i] = generators[i].random(block_size)
                pos = 0
            signs = np.where(buffer[idx, pos] < policy.p_plus, 1.0, -1.0)
            pos += 1
        else:
            signs = np.full(idx.size, fixed)

        new, codes = _vector_step(family, p, x[idx], signs, negative_states)

        failed = codes != _OK
        if failed.any():
            dead = idx[failed]
            termination_steps[dead] = t - 1
            cause_codes[dead] = codes[failed]
            alive[dead] = False

        ok = idx[~failed]
        x[ok] = new[~failed]
        if trace is not None:
            trace[t, ok] = x[ok]

    causes = [CAUSES[c] for c in cause_codes]
    for cause in set(causes) - {""}:
        diagnostics_state.record(f"vanished:{cause}", causes.count(cause))

    logger.debug(
        f"[SIMULATE] ensemble {family}({map_kind.symbol}={p}) runs={n}: "
        f"{int((termination_steps >= 0).sum())} terminati, {time.time() - started:.3f}s"
    )

    return EnsembleOutcome(
        seeds=[int(s) for s in seeds],
        termination_steps=termination_steps,
        causes=causes,
        final_states=x.copy(),
        states=trace,
    )
