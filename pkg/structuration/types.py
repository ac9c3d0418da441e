from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from infotheory.types import EntropyReport

VariableSet = Literal["words", "authors", "combined"]

VARIABLE_SETS: List[str] = ["words", "authors", "combined"]

SCHEMA_VERSION = "1.0"

# Etichette bin per componente: sotto -τ, entro ±τ, sopra τ
TERNARY_LABELS = ("-", "0", "+")


@dataclass(frozen=True)
class BinningPolicy:
    scheme: Literal["sign_ternary"] = "sign_ternary"
    tau: float = 0.1

    def __post_init__(self) -> None:
        if self.scheme != "sign_ternary":
            raise ValueError(f"Schema di binning sconosciuto: {self.scheme!r}")
        if not self.tau > 0:
            raise ValueError(f"tau deve essere > 0 (ricevuto {self.tau!r})")

    @property
    def bins_per_component(self) -> int:
        return len(TERNARY_LABELS)

    def to_dict(self) -> Dict[str, Any]:
        return {"scheme": self.scheme, "tau": self.tau, "bins_per_component": self.bins_per_component}


class VariableSetReport(EntropyReport):
    """EntropyReport di un insieme di variabili più i dettagli della struttura."""

    variable_set: str = Field(..., description="words, authors o combined")
    n_variables: int = Field(..., ge=0, description="Variabili analizzate (dopo gli scarti)")
    n_dropped: int = Field(default=0, ge=0, description="Variabili scartate per varianza nulla")
    eigenvalues: List[float] = Field(default_factory=list, description="Autovalori delle k componenti")
    varimax_sweeps: int = Field(default=0, ge=0, description="Sweep della rotazione")
    cells: Dict[str, int] = Field(default_factory=dict, description="Variabili per cella 'b1,b2,b3'")
    degenerate: bool = Field(default=False, description="Tutte le variabili in una sola cella")
    interpretation: str = Field(..., description="Lettura qualitativa del segno di μ*")


class ReportMetadata(BaseModel):
    tool: str
    version: str
    n_documents: int = Field(..., ge=0)
    word_threshold: int
    author_threshold: int
    n_components: int
    rotation: str = "varimax"
    kaiser_normalization: bool = True
    correlation_basis: str = "correlation"
    zero_variance_policy: str = "drop"
    binning: Dict[str, Any] = Field(default_factory=dict)
    ipf_tol: float
    ipf_max_iter: int
    varimax_tol: float
    jacobi_tol: float
    variable_counts: Dict[str, int] = Field(default_factory=dict)


class StructurationReport(BaseModel):
    schema_version: str = SCHEMA_VERSION
    sets: Dict[str, VariableSetReport] = Field(default_factory=dict)
    metadata: ReportMetadata
    mbits: Dict[str, Dict[str, float]] = Field(default_factory=dict)
    provenance: Optional[Dict[str, Any]] = None
