from __future__ import annotations

from dataclasses import dataclass
from typing import Any, List, Literal, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, field_validator

from corpus.tokenize import normalize_author, split_authors

MatrixKind = Literal["words", "authors", "combined"]


class Document(BaseModel):
    """Record bibliografico: id univoco, titolo, autori normalizzati ("Last, F."), anno opzionale."""

    id: str = Field(..., min_length=1, description="Identificativo univoco nel corpus")
    title: str = Field(default="", description="Titolo (testo libero)")
    authors: List[str] = Field(default_factory=list, description="Autori in forma canonica 'Last, F.'")
    year: Optional[int] = Field(None, ge=0, le=9999, description="Anno di pubblicazione (opzionale)")

    @field_validator("id", mode="before")
    @classmethod
    def validate_id(cls, v: Any) -> str:
        if v is None:
            raise ValueError("id deve essere non vuoto")
        text = str(v).strip()
        if not text:
            raise ValueError("id deve essere non vuoto")
        return text

    @field_validator("title", mode="before")
    @classmethod
    def validate_title(cls, v: Any) -> str:
        if v is None or (isinstance(v, float) and np.isnan(v)):
            return ""
        return " ".join(str(v).split())

    @field_validator("authors", mode="before")
    @classmethod
    def validate_authors(cls, v: Any) -> List[str]:
        """Accetta lista o stringa separata da ';'; scarta nomi vuoti."""
        if v is None or (isinstance(v, float) and np.isnan(v)):
            return []
        names = split_authors(v) if isinstance(v, str) else [str(name) for name in v]
        normalized = [normalize_author(name) for name in names]
        return [name for name in normalized if name]

    @field_validator("year", mode="before")
    @classmethod
    def validate_year(cls, v: Any) -> Optional[int]:
        """Anno vuoto o non numerico = null (non errore)."""
        if v is None:
            return None
        text = str(v).strip()
        if not text or text.lower() == "nan":
            return None
        try:
            return int(float(text))
        except ValueError:
            return None


@dataclass(eq=False)
class DocMatrix:
    """Matrice documenti × variabili con conteggi di occorrenze."""

    doc_ids: List[str]
    variables: List[str]
    cells: np.ndarray
    kind: MatrixKind

    def __post_init__(self) -> None:
        cells = np.asarray(self.cells, dtype=np.int64)
        if cells.ndim != 2:
            cells = cells.reshape(len(self.doc_ids), len(self.variables))
        if cells.shape != (len(self.doc_ids), len(self.variables)):
            raise ValueError(
                f"Dimensioni incoerenti: cells {cells.shape}, "
                f"{len(self.doc_ids)} documenti × {len(self.variables)} variabili"
            )
        if (cells < 0).any():
            raise ValueError("Conteggi negativi nella matrice")
        if cells.shape[1] and (cells.sum(axis=0) == 0).any():
            raise ValueError("Colonna di sole zero nella matrice")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("Etichette di variabile duplicate")
        self.cells = cells

    @property
    def n_documents(self) -> int:
        return len(self.doc_ids)

    @property
    def n_variables(self) -> int:
        return len(self.variables)

    def column_totals(self) -> np.ndarray:
        return self.cells.sum(axis=0)

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.cells, index=pd.Index(self.doc_ids, name="doc_id"), columns=self.variables)
        return frame
