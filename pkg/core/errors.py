"""
Errori di dominio per structuration-lab.

Ogni errore porta un `code` leggibile da macchina e un dizionario di contesto,
così la CLI può serializzarlo in JSON su stderr senza conoscerne i dettagli.
"""
from __future__ import annotations

from typing import Any, Dict, Optional


class LabError(ValueError):
    """Errore base: sottoclasse di ValueError per compatibilità con il codice chiamante."""

    code = "lab_error"

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.context: Dict[str, Any] = dict(context)

    def with_context(self, **context: Any) -> "LabError":
        """Aggiunge contesto (es. variable_set) e ritorna l'errore stesso per il re-raise."""
        self.context.update(context)
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": self.code,
            "message": str(self),
            "context": {key: _jsonable(value) for key, value in self.context.items()},
        }


def _jsonable(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


# --- dynamics -------------------------------------------------------------

class DegenerateDenominator(LabError):
    code = "degenerate_denominator"


class NoRealRoot(LabError):
    code = "no_real_root"


class NegativeRadicand(LabError):
    code = "negative_radicand"


class NegativeState(LabError):
    code = "negative_state"


# --- infotheory -----------------------------------------------------------

class NotNormalized(LabError):
    code = "not_normalized"


class InvalidTable(LabError):
    code = "invalid_table"


class NoConvergence(LabError):
    """Iterazione non convergente; `best` contiene la migliore stima disponibile."""

    code = "no_convergence"

    def __init__(self, message: str, best: Optional[Any] = None, **context: Any):
        super().__init__(message, **context)
        self.best = best


# --- corpus ---------------------------------------------------------------

class UnsupportedFormat(LabError):
    code = "unsupported_format"


class EmptyCorpus(LabError):
    code = "empty_corpus"


class DuplicateDocument(LabError):
    code = "duplicate_document"


class EmptyAfterThreshold(LabError):
    code = "empty_after_threshold"


class DocMismatch(LabError):
    code = "doc_mismatch"


# --- linalg ---------------------------------------------------------------

class ZeroVariance(LabError):
    code = "zero_variance"

    def __init__(self, message: str, label: Optional[str] = None, **context: Any):
        if label is not None:
            context.setdefault("label", label)
        super().__init__(message, **context)
        self.label = label


class InsufficientData(LabError):
    code = "insufficient_data"


class NonPositiveEigenvalue(LabError):
    code = "non_positive_eigenvalue"


class InvalidLoadings(LabError):
    code = "invalid_loadings"


# --- structuration --------------------------------------------------------

class DegenerateDistribution(LabError):
    code = "degenerate_distribution"
