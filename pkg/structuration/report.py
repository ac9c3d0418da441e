"""
Assemblaggio e serializzazione dello StructurationReport.

JSON canonico (chiavi ordinate, indentazione fissa): stessi input -> stessi byte.
"""
from __future__ import annotations

from typing import Any, Dict, Optional

from core.config import LabConfig
from core.output import Target, dumps_json, open_output
from structuration.types import (
    SCHEMA_VERSION,
    BinningPolicy,
    ReportMetadata,
    StructurationReport,
    VariableSetReport,
)

# |μ*| sotto questa soglia (bit) è letto come zero
ZERO_MU_TOL = 1e-12

INTERPRETATIONS = {
    "negative": "uncertainty reduced by next-order organization",
    "positive": "uncertainty increased: redundancy exceeds interaction",
    "zero": "no configurational information",
}


def interpret(mu_star: float) -> str:
    if mu_star < -ZERO_MU_TOL:
        return INTERPRETATIONS["negative"]
    if mu_star > ZERO_MU_TOL:
        return INTERPRETATIONS["positive"]
    return INTERPRETATIONS["zero"]


def build_report(
    results: Dict[str, VariableSetReport],
    config: LabConfig,
    n_documents: int,
    word_threshold: int,
    author_threshold: int,
    k: int,
    policy: BinningPolicy,
    variable_counts: Dict[str, int],
) -> StructurationReport:
    metadata = ReportMetadata(
        tool=config.lab_name,
        version=config.lab_version,
        n_documents=n_documents,
        word_threshold=word_threshold,
        author_threshold=author_threshold,
        n_components=k,
        rotation="varimax",
        kaiser_normalization=config.kaiser_normalization,
        correlation_basis=config.correlation_basis,
        zero_variance_policy=config.zero_variance_policy,
        binning=policy.to_dict(),
        ipf_tol=config.ipf_tol,
        ipf_max_iter=config.ipf_max_iter,
        varimax_tol=config.varimax_tol,
        jacobi_tol=config.jacobi_tol,
        variable_counts=variable_counts,
    )
    mbits = {
        name: {
            "mu_star": result.mbits["mu_star"],
            "interaction_info": result.mbits["interaction_info"],
            "redundancy": result.mbits["redundancy"],
        }
        for name, result in results.items()
    }
    return StructurationReport(schema_version=SCHEMA_VERSION, sets=results, metadata=metadata, mbits=mbits)


def report_to_json(report: StructurationReport) -> str:
    return dumps_json(report.model_dump(mode="json", exclude_none=True))


def save_report(
    report: StructurationReport,
    target: Target,
    provenance: Optional[Dict[str, Any]] = None,
) -> None:
    if provenance is not None:
        report = report.model_copy(update={"provenance": provenance})
    with open_output(target) as handle:
        handle.write(report_to_json(report))
