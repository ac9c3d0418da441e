"""
Implementazione dei comandi CLI.

Ogni comando costruisce una CliConfig dai flag (nessun valore da ambiente),
la installa come singleton e scrive l'output con un blocco di provenienza
(tool, versione, comando, seed, argomenti, configurazione).
"""
from __future__ import annotations

import argparse
import logging
from typing import Any, Dict

from core.config import CliConfig, LabConfig, set_config
from core.output import write_json
from corpus.loader import load_corpus
from dynamics.export import save_sweep, save_trajectory
from dynamics.simulate import simulate, summarize
from dynamics.sweep import sweep
from dynamics.types import MapKind, RootPolicy, SimConfig
from infotheory.measures import entropy_report
from infotheory.table_io import load_table
from structuration.pipeline import measure
from structuration.report import save_report

logger = logging.getLogger(__name__)


class UsageError(Exception):
    """Combinazione di flag non valida (exit code 2)."""


def _install(config: LabConfig) -> LabConfig:
    set_config(config)
    return config


def _provenance(config: LabConfig, args: argparse.Namespace) -> Dict[str, Any]:
    arguments = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "run_id")}
    provenance: Dict[str, Any] = {
        "tool": config.lab_name,
        "version": config.lab_version,
        "command": args.command,
    }
    if getattr(args, "seed", None) is not None:
        provenance["seed"] = args.seed
    provenance["arguments"] = arguments
    provenance["config"] = config.provenance()
    return provenance


def _root_policy(args: argparse.Namespace) -> RootPolicy:
    if args.policy == "random":
        return RootPolicy.random_sign(args.p_plus)
    return RootPolicy(args.policy)


def _map_kind(args: argparse.Namespace) -> MapKind:
    template = MapKind(args.map, 1.0)
    value = getattr(args, template.symbol)
    if value is None:
        raise UsageError(f"--{template.symbol} è obbligatorio per la mappa {args.map}")

    ignored = [s for s in ("a", "b", "c", "d") if s != template.symbol and getattr(args, s) is not None]
    if ignored:
        logger.warning(f"[CLI] Parametri ignorati per {args.map}: {', '.join('--' + s for s in ignored)}")
    return template.with_parameter(value)


def cmd_simulate(args: argparse.Namespace) -> None:
    config = _install(CliConfig(rng_block_size=args.block_size))
    sim = SimConfig(
        map=_map_kind(args),
        steps=args.steps,
        x0=args.x0,
        seed=args.seed,
        root_policy=_root_policy(args),
        negative_states=args.negative_states,
    )
    trajectory = simulate(sim)
    summary = summarize(trajectory)
    logger.info(
        f"[SIMULATE] {sim.map.family}: {summary.n_states} stati, "
        f"media={summary.mean:.4f}, attraversamenti di 1={summary.crossings_of_one}, "
        f"{trajectory.termination.event or 'completed'}"
    )
    save_trajectory(trajectory, args.out, _provenance(config, args))


def cmd_sweep(args: argparse.Namespace) -> None:
    config = _install(CliConfig(rng_block_size=args.block_size))
    # valida tutta la griglia prima di simulare
    kinds = [MapKind(args.map, value) for value in args.grid]

    stats = sweep(
        kinds[0],
        args.grid,
        runs_per_point=args.runs,
        base_seed=args.seed,
        steps_cap=args.cap,
        x0=args.x0,
        root_policy=_root_policy(args),
        negative_states=args.negative_states,
    )
    save_sweep(stats, args.out, args.summary, _provenance(config, args))


def cmd_measure(args: argparse.Namespace) -> None:
    config = _install(CliConfig(ipf_tol=args.tol, ipf_max_iter=args.max_iter))
    table = load_table(args.table)
    report = entropy_report(table.to_distribution(), tol=config.ipf_tol, max_iter=config.ipf_max_iter)

    payload = report.model_dump(mode="json")
    payload["table"] = {
        "dims": list(table.dims),
        "total": table.total,
        "labels": [list(axis) for axis in table.labels],
    }
    write_json(payload, args.out, _provenance(config, args))
    logger.info(
        f"[MEASURE] μ*={report.mbits['mu_star']:.1f} mbits, I={report.mbits['interaction_info']:.1f} mbits, "
        f"R={report.mbits['redundancy']:.1f} mbits ({report.ipf_iterations} cicli IPF)"
    )


def cmd_pipeline(args: argparse.Namespace) -> None:
    config = _install(CliConfig(
        word_threshold=args.word_threshold,
        author_threshold=args.author_threshold,
        binning_tau=args.tau,
        n_components=args.components,
        correlation_basis=args.basis,
        stopwords_path=args.stopwords,
    ))
    sets = [s.strip() for s in args.sets.split(",") if s.strip()]
    corpus = load_corpus(args.corpus)
    report = measure(corpus, variable_sets=sets, config=config)
    save_report(report, args.out, _provenance(config, args))
