"""
Sweep di parametro: statistiche di sopravvivenza per ogni valore della griglia.

Seed dei run: base_seed + indice del run (gli stessi seed per ogni punto della griglia).
Le mappe che non estraggono numeri casuali sono simulate una volta sola e replicate.
"""
from __future__ import annotations

import logging
import time
from typing import List, Optional, Sequence

import numpy as np

from core.config import get_config
from core.logger import log_json
from dynamics.ensemble import EnsembleOutcome, run_ensemble
from dynamics.types import MAX_SEED, MapKind, NegativeStates, RootPolicy, SurvivalStats

logger = logging.getLogger(__name__)


def derive_seeds(base_seed: int, runs: int) -> List[int]:
    seeds = [base_seed + i for i in range(runs)]
    if seeds and (seeds[0] < 0 or seeds[-1] > MAX_SEED):
        raise ValueError(f"Seed fuori dall'intervallo a 64 bit: base_seed={base_seed}, runs={runs}")
    return seeds


def survival_from_outcome(
    parameter_value: float,
    outcome: EnsembleOutcome,
    steps_cap: int,
) -> SurvivalStats:
    """mean_lifetime: run censurati contati a steps_cap."""
    steps = outcome.termination_steps
    vanished = steps >= 0
    lifetimes = np.where(vanished, steps, steps_cap)
    return SurvivalStats(
        parameter_value=float(parameter_value),
        n_runs=outcome.n_runs,
        termination_steps=sorted(int(s) for s in steps[vanished]),
        fraction_terminated=float(vanished.sum()) / outcome.n_runs,
        mean_lifetime=float(lifetimes.mean()),
        steps_cap=steps_cap,
        run_steps=outcome.run_steps(),
    )


def sweep(
    map_family: MapKind,
    parameter_grid: Sequence[float],
    runs_per_point: int,
    base_seed: int,
    steps_cap: int,
    x0: float = 1.0,
    root_policy: Optional[RootPolicy] = None,
    negative_states: NegativeStates = "real_root",
    block_size: Optional[int] = None,
) -> List[SurvivalStats]:
    """
    Esegue `runs_per_point` traiettorie indipendenti per ogni valore della griglia.

    Args:
        map_family: MapKind modello; il parametro viene sostituito dai valori della griglia
        parameter_grid: Valori del parametro (a, b, c o d)
        runs_per_point: Run per punto (≥ 1)
        base_seed: Seed del run 0
        steps_cap: Passi massimi per run
        x0: Stato iniziale comune

    Returns:
        Una SurvivalStats per punto, nell'ordine della griglia
    """
    if not parameter_grid:
        raise ValueError("Griglia di parametri vuota")
    if runs_per_point < 1:
        raise ValueError(f"runs_per_point deve essere ≥ 1 (ricevuto {runs_per_point})")
    if steps_cap < 1:
        raise ValueError(f"steps_cap deve essere ≥ 1 (ricevuto {steps_cap})")

    policy = root_policy or RootPolicy()
    if block_size is None:
        block_size = get_config().rng_block_size
    seeds = derive_seeds(base_seed, runs_per_point)
    stochastic = map_family.requires_sign and policy.draws

    results: List[SurvivalStats] = []
    for value in parameter_grid:
        started = time.time()
        kind = map_family.with_parameter(value)

        if stochastic:
            outcome = run_ensemble(
                kind, x0, steps_cap, seeds, policy, negative_states, block_size
            )
        else:
            single = run_ensemble(kind, x0, steps_cap, seeds[:1], policy, negative_states, block_size)
            outcome = EnsembleOutcome(
                seeds=seeds,
                termination_steps=np.repeat(single.termination_steps, len(seeds)),
                causes=single.causes * len(seeds),
                final_states=np.repeat(single.final_states, len(seeds)),
            )

        stats = survival_from_outcome(value, outcome, steps_cap)
        results.append(stats)

        log_json(
            "info",
            "sweep point",
            stage="sweep",
            elapsed_sec=time.time() - started,
            decision="ok",
            family=kind.family,
            parameter=float(value),
            runs=runs_per_point,
            fraction_terminated=stats.fraction_terminated,
            mean_lifetime=stats.mean_lifetime,
        )

    logger.info(
        f"[SWEEP] {map_family.family}: {len(parameter_grid)} punti × {runs_per_point} run (cap {steps_cap})"
    )
    return results
