from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Literal, Optional

import numpy as np
import pandas as pd

from core.errors import InvalidLoadings

Basis = Literal["correlation", "covariance"]

SYMMETRY_TOL = 1e-12
COMMUNALITY_TOL = 1e-9


@dataclass(eq=False)
class CorrelationMatrix:
    """Matrice simmetrica sulle variabili; diagonale unitaria per la base `correlation`."""

    labels: List[str]
    r: np.ndarray
    basis: Basis = "correlation"
    n_documents: int = 0
    dropped: List[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        r = np.asarray(self.r, dtype=float)
        n = len(self.labels)
        if r.shape != (n, n):
            raise ValueError(f"Matrice {r.shape} incoerente con {n} etichette")
        if not np.allclose(r, r.T, rtol=0.0, atol=SYMMETRY_TOL):
            raise ValueError("Matrice non simmetrica")
        if self.basis == "correlation":
            if not np.all(np.diag(r) == 1.0):
                raise ValueError("Diagonale non unitaria in una matrice di correlazione")
            if (np.abs(r) > 1.0).any():
                raise ValueError("Correlazioni fuori da [-1, 1]")
        self.r = r

    @property
    def size(self) -> int:
        return len(self.labels)


@dataclass(eq=False)
class LoadingsMatrix:
    """Variabili × k loadings (struttura fattoriale)."""

    labels: List[str]
    L: np.ndarray
    rotated: bool = False
    eigenvalues: Optional[np.ndarray] = None
    basis: Basis = "correlation"

    def __post_init__(self) -> None:
        L = np.asarray(self.L, dtype=float)
        if L.ndim != 2 or L.shape[0] != len(self.labels):
            raise ValueError(f"Loadings {L.shape} incoerenti con {len(self.labels)} etichette")
        if self.basis == "correlation":
            communalities = (L ** 2).sum(axis=1)
            if (communalities > 1.0 + COMMUNALITY_TOL).any():
                worst = int(np.argmax(communalities))
                raise InvalidLoadings(
                    f"Comunalità {communalities[worst]:.12f} > 1 per la variabile {self.labels[worst]!r}",
                    label=self.labels[worst], communality=float(communalities[worst]),
                )
        self.L = L

    @property
    def k(self) -> int:
        return int(self.L.shape[1])

    def communalities(self) -> np.ndarray:
        return (self.L ** 2).sum(axis=1)

    def to_frame(self) -> pd.DataFrame:
        columns = [f"f{j + 1}" for j in range(self.k)]
        frame = pd.DataFrame(self.L, columns=columns)
        frame.insert(0, "variable", self.labels)
        return frame


@dataclass(eq=False)
class EigenResult:
    values: np.ndarray       # decrescenti
    vectors: np.ndarray      # colonne ortonormali
    sweeps: int
    converged: bool = True


@dataclass(eq=False)
class VarimaxResult:
    loadings: LoadingsMatrix
    rotation: np.ndarray
    criterion_history: List[float]
    sweeps: int
    converged: bool
