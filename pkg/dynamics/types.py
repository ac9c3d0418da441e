from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Dict, List, Literal, Optional, Union

MapFamily = Literal[
    "logistic",
    "incursive",
    "double_contingency",
    "interaction",
    "self_organization",
    "organization",
]

Sign = Literal["plus", "minus"]

VanishCause = Literal[
    "negative_radicand",
    "negative_denominator",
    "no_real_root",
    "negative_state",
    "diverged",
]

NegativeStates = Literal["real_root", "vanish"]

# Simbolo del parametro per famiglia (a, b, c, d)
PARAMETER_SYMBOL: Dict[str, str] = {
    "logistic": "a",
    "incursive": "a",
    "double_contingency": "a",
    "interaction": "b",
    "self_organization": "c",
    "organization": "d",
}

# Mappe risolte in avanti con due radici: ogni passo richiede un segno
SIGNED_FAMILIES = frozenset({"double_contingency", "interaction", "organization"})

MAX_SEED = 2 ** 64 - 1


@dataclass(frozen=True)
class MapKind:
    family: MapFamily
    parameter: float

    def __post_init__(self) -> None:
        if self.family not in PARAMETER_SYMBOL:
            raise ValueError(f"Famiglia di mappa sconosciuta: {self.family!r}")
        if not math.isfinite(self.parameter) or self.parameter <= 0:
            raise ValueError(
                f"Parametro {self.symbol} deve essere > 0 (ricevuto {self.parameter!r})"
            )

    @property
    def symbol(self) -> str:
        return PARAMETER_SYMBOL[self.family]

    @property
    def requires_sign(self) -> bool:
        return self.family in SIGNED_FAMILIES

    def with_parameter(self, value: float) -> "MapKind":
        return replace(self, parameter=float(value))

    @classmethod
    def logistic(cls, a: float) -> "MapKind":
        return cls("logistic", float(a))

    @classmethod
    def incursive(cls, a: float) -> "MapKind":
        return cls("incursive", float(a))

    @classmethod
    def double_contingency(cls, a: float) -> "MapKind":
        return cls("double_contingency", float(a))

    @classmethod
    def interaction(cls, b: float) -> "MapKind":
        return cls("interaction", float(b))

    @classmethod
    def self_organization(cls, c: float) -> "MapKind":
        return cls("self_organization", float(c))

    @classmethod
    def organization(cls, d: float) -> "MapKind":
        return cls("organization", float(d))


@dataclass(frozen=True)
class RootPolicy:
    """Scelta del ramo ± : casuale con probabilità p_plus, oppure fissa."""

    kind: Literal["random", "plus", "minus"] = "random"
    p_plus: float = 0.5

    def __post_init__(self) -> None:
        if self.kind not in ("random", "plus", "minus"):
            raise ValueError(f"RootPolicy sconosciuta: {self.kind!r}")
        if not (0.0 <= self.p_plus <= 1.0):
            raise ValueError(f"p_plus deve essere in [0, 1] (ricevuto {self.p_plus!r})")

    @property
    def draws(self) -> bool:
        return self.kind == "random"

    @classmethod
    def random_sign(cls, p_plus: float = 0.5) -> "RootPolicy":
        return cls("random", float(p_plus))

    @classmethod
    def always_plus(cls) -> "RootPolicy":
        return cls("plus")

    @classmethod
    def always_minus(cls) -> "RootPolicy":
        return cls("minus")


@dataclass(frozen=True)
class SimConfig:
    map: MapKind
    steps: int
    x0: float = 1.0
    seed: int = 0
    root_policy: RootPolicy = field(default_factory=RootPolicy)
    negative_states: NegativeStates = "real_root"

    def __post_init__(self) -> None:
        if self.steps < 1:
            raise ValueError(f"steps deve essere ≥ 1 (ricevuto {self.steps})")
        if not math.isfinite(self.x0):
            raise ValueError(f"x0 deve essere finito (ricevuto {self.x0!r})")
        if not (0 <= self.seed <= MAX_SEED):
            raise ValueError(f"seed deve essere un intero a 64 bit senza segno (ricevuto {self.seed})")
        if self.negative_states not in ("real_root", "vanish"):
            raise ValueError(f"negative_states sconosciuto: {self.negative_states!r}")


@dataclass(frozen=True)
class Completed:
    @property
    def event(self) -> str:
        return ""


@dataclass(frozen=True)
class Vanished:
    """
    Terminazione modellata (non un errore).

    at_step è l'indice dell'ultimo stato registrato: la traiettoria ha at_step+1 stati
    e il passo successivo non ha radice reale.
    """

    cause: VanishCause
    at_step: Optional[int] = None

    @property
    def event(self) -> str:
        return f"vanished:{self.cause}"


Termination = Union[Completed, Vanished]


@dataclass
class Trajectory:
    states: List[float]
    termination: Termination = field(default_factory=Completed)

    def __post_init__(self) -> None:
        if not self.states:
            raise ValueError("Traiettoria vuota: serve almeno x0")

    @property
    def vanished(self) -> bool:
        return isinstance(self.termination, Vanished)

    @property
    def final_state(self) -> float:
        return self.states[-1]

    def __len__(self) -> int:
        return len(self.states)


@dataclass
class TrajectorySummary:
    n_states: int
    mean: float
    minimum: float
    maximum: float
    crossings_of_one: int
    termination: Termination


@dataclass
class SurvivalStats:
    parameter_value: float
    n_runs: int
    termination_steps: List[int]
    fraction_terminated: float
    mean_lifetime: float
    steps_cap: int = 0
    run_steps: List[Optional[int]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, object]:
        return {
            "parameter_value": self.parameter_value,
            "n_runs": self.n_runs,
            "n_terminated": len(self.termination_steps),
            "fraction_terminated": self.fraction_terminated,
            "mean_lifetime": self.mean_lifetime,
            "max_termination_step": max(self.termination_steps) if self.termination_steps else None,
            "steps_cap": self.steps_cap,
        }
