from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from core.errors import InvalidTable, NotNormalized

NORMALIZATION_TOL = 1e-9

Pair = Literal["XY", "XZ", "YZ"]

Labels = Tuple[Tuple[str, ...], Tuple[str, ...], Tuple[str, ...]]


def _default_labels(shape: Sequence[int]) -> Labels:
    return tuple(tuple(str(i) for i in range(n)) for n in shape)  # type: ignore[return-value]


def _whole_count(x: Any, y: Any, z: Any, count: Any) -> int:
    value = float(count)
    if not value.is_integer():
        raise InvalidTable(
            f"Conteggio non intero per ({x}, {y}, {z}): {count}", cell=[str(x), str(y), str(z)], count=value
        )
    return int(value)


@dataclass(frozen=True, eq=False)
class Distribution3:
    """Distribuzione trivariata normalizzata su alfabeti categoriali finiti."""

    p: np.ndarray
    labels: Optional[Labels] = None

    def __post_init__(self) -> None:
        p = np.asarray(self.p, dtype=float)
        if p.ndim != 3 or min(p.shape) < 1:
            raise ValueError(f"Distribution3 richiede una tabella 3D non vuota (shape {p.shape})")
        if not np.all(np.isfinite(p)) or (p < 0).any():
            raise NotNormalized("Celle negative o non finite nella distribuzione", shape=list(p.shape))
        total = float(p.sum())
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise NotNormalized(f"Somma delle probabilità {total!r} ≠ 1", total=total)
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "p", p)
        if self.labels is None:
            object.__setattr__(self, "labels", _default_labels(p.shape))
        elif tuple(len(axis) for axis in self.labels) != p.shape:
            raise ValueError("Etichette incoerenti con le dimensioni della tabella")

    @property
    def dims(self) -> Tuple[int, int, int]:
        return tuple(self.p.shape)  # type: ignore[return-value]

    def transpose(self, axes: Sequence[int]) -> "Distribution3":
        labels = tuple(self.labels[a] for a in axes)  # type: ignore[index]
        return Distribution3(np.transpose(self.p, axes), labels)  # type: ignore[arg-type]

    @classmethod
    def from_table(cls, table: Any, labels: Optional[Labels] = None) -> "Distribution3":
        """Normalizza una tabella di conteggi o pesi non negativi."""
        table = np.asarray(table, dtype=float)
        total = table.sum()
        if total <= 0:
            raise NotNormalized("Tabella con massa totale nulla")
        return cls(table / total, labels)


@dataclass(eq=False)
class ContingencyTable:
    counts: np.ndarray
    labels: Labels = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts)
        if counts.ndim != 3:
            raise ValueError(f"ContingencyTable richiede 3 assi (shape {counts.shape})")
        if not np.issubdtype(counts.dtype, np.integer):
            if not np.all(np.equal(np.mod(counts, 1), 0)):
                raise InvalidTable("I conteggi devono essere interi")
            counts = counts.astype(np.int64)
        if (counts < 0).any():
            raise InvalidTable("Conteggi negativi nella tabella di contingenza")
        if counts.sum() < 1:
            raise InvalidTable("La tabella di contingenza deve avere totale ≥ 1", total=int(counts.sum()))
        self.counts = counts
        if self.labels is None:
            self.labels = _default_labels(counts.shape)

    @property
    def dims(self) -> Tuple[int, int, int]:
        return tuple(self.counts.shape)  # type: ignore[return-value]

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def to_distribution(self) -> Distribution3:
        return Distribution3(self.counts / self.counts.sum(), self.labels)

    @classmethod
    def from_records(cls, records: Iterable[Tuple[Any, Any, Any, int]]) -> "ContingencyTable":
        """Record (x, y, z, count); etichette per asse in ordine ordinato, record ripetuti sommati."""
        rows = [(str(x), str(y), str(z), _whole_count(x, y, z, count)) for x, y, z, count in records]
        if not rows:
            raise InvalidTable("Nessun record per la tabella di contingenza")
        axes = tuple(tuple(sorted({row[a] for row in rows})) for a in range(3))
        index = [{label: i for i, label in enumerate(axis)} for axis in axes]
        counts = np.zeros(tuple(len(axis) for axis in axes), dtype=np.int64)
        for x, y, z, count in rows:
            if count < 0:
                raise InvalidTable(f"Conteggio negativo per ({x}, {y}, {z}): {count}", cell=[x, y, z], count=count)
            counts[index[0][x], index[1][y], index[2][z]] += count
        return cls(counts, axes)  # type: ignore[arg-type]


ENTROPY_FIELDS = ("h_x", "h_y", "h_z", "h_xy", "h_xz", "h_yz", "h_xyz")
SIGNED_FIELDS = ("mu_star", "interaction_info", "redundancy")


class EntropyReport(BaseModel):
    """Entropie in bit, μ*, I e R; blocco `mbits` con gli stessi valori × 1000."""

    h_x: float = Field(..., description="H(X) in bit")
    h_y: float = Field(..., description="H(Y) in bit")
    h_z: float = Field(..., description="H(Z) in bit")
    h_xy: float = Field(..., description="H(X,Y) in bit")
    h_xz: float = Field(..., description="H(X,Z) in bit")
    h_yz: float = Field(..., description="H(Y,Z) in bit")
    h_xyz: float = Field(..., description="H(X,Y,Z) in bit")
    mu_star: float = Field(..., description="Informazione configurazionale (con segno)")
    interaction_info: float = Field(..., ge=0.0, description="I(ABC→AB:AC:BC) dopo il clamp")
    redundancy: float = Field(..., description="R = μ* + I")
    ipf_iterations: int = Field(..., ge=0, description="Cicli IPF eseguiti")
    ipf_converged: bool = Field(default=True, description="Residuo IPF entro la tolleranza")
    mbits: Dict[str, float] = Field(default_factory=dict, description="Tutti i campi in millibit")

    @model_validator(mode="after")
    def fill_mbits(self) -> "EntropyReport":
        if not self.mbits:
            self.mbits = {name: getattr(self, name) * 1000.0 for name in ENTROPY_FIELDS + SIGNED_FIELDS}
        return self
