"""
Export di traiettorie e sweep.

Traiettoria: CSV `t,x,event`; l'evento `vanished:<causa>` compare sull'ultima riga.
Sweep: CSV `param,run,termination_step` (vuoto se il run ha raggiunto il cap)
più un riepilogo JSON delle SurvivalStats.
"""
from typing import Any, Dict, List, Optional

import pandas as pd

from core.output import Target, write_csv, write_json
from dynamics.types import SurvivalStats, Trajectory


def trajectory_frame(trajectory: Trajectory) -> pd.DataFrame:
    n = len(trajectory.states)
    events = [""] * n
    events[-1] = trajectory.termination.event
    return pd.DataFrame({"t": range(n), "x": trajectory.states, "event": events})


def save_trajectory(trajectory: Trajectory, target: Target, provenance: Optional[Dict[str, Any]] = None) -> None:
    write_csv(trajectory_frame(trajectory), target, provenance)


def sweep_frame(stats: List[SurvivalStats]) -> pd.DataFrame:
    rows = [
        {
            "param": point.parameter_value,
            "run": run,
            "termination_step": "" if step is None else step,
        }
        for point in stats
        for run, step in enumerate(point.run_steps)
    ]
    return pd.DataFrame(rows, columns=["param", "run", "termination_step"])


def sweep_summary(stats: List[SurvivalStats]) -> Dict[str, Any]:
    return {"points": [point.to_dict() for point in stats]}


def save_sweep(
    stats: List[SurvivalStats],
    target: Target,
    summary_target: Optional[Target] = None,
    provenance: Optional[Dict[str, Any]] = None,
) -> None:
    write_csv(sweep_frame(stats), target, provenance)
    if summary_target is not None:
        write_json(sweep_summary(stats), summary_target, provenance)
