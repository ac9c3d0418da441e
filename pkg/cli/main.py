"""
Front door batch: simulate, sweep, measure, pipeline.

Exit code: 0 successo, 1 errore di dominio (JSON dell'errore su stderr),
2 errore d'uso (argomenti o configurazione non validi).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional, Sequence

from pydantic import ValidationError

from cli import commands
from core import diagnostics_state
from core.config import set_config
from core.errors import LabError
from core.logger import set_run_context
from dynamics.types import PARAMETER_SYMBOL

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE_ERROR = 2


def _float_list(value: str) -> List[float]:
    try:
        values = [float(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"griglia non valida: {value!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("griglia vuota")
    return values


def _add_map_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--map", required=True, choices=sorted(PARAMETER_SYMBOL), help="Famiglia di mappa")
    parser.add_argument("--x0", type=float, default=1.0, help="Stato iniziale (default 1.0)")
    parser.add_argument("--seed", type=int, default=0, help="Seed PCG64 (sweep: seed del run 0)")
    parser.add_argument("--policy", choices=["random", "plus", "minus"], default="random", help="Scelta del ramo ±")
    parser.add_argument("--p-plus", type=float, default=0.5, help="Probabilità del ramo plus (policy random)")
    parser.add_argument(
        "--negative-states", choices=["real_root", "vanish"], default="real_root",
        help="Auto-organizzazione con stato negativo: radice reale o terminazione",
    )
    parser.add_argument("--block-size", type=int, default=4096, help="Uniformi estratti per blocco")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="structuration-lab",
        description="Simulazioni di mappe iperincursive e misura di μ*, I, R su corpus bibliografici",
    )
    parser.add_argument("--run-id", default=None, help="ID del run per i log (default casuale)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    simulate = subparsers.add_parser("simulate", help="Traiettoria seminata -> CSV t,x,event")
    _add_map_arguments(simulate)
    for symbol in ("a", "b", "c", "d"):
        simulate.add_argument(f"--{symbol}", type=float, default=None, help=f"Parametro {symbol}")
    simulate.add_argument("--steps", type=int, default=1000, help="Passi massimi")
    simulate.add_argument("--out", default="-", help="File CSV di output ('-' = stdout)")

    sweep = subparsers.add_parser("sweep", help="Statistiche di sopravvivenza su una griglia di parametro")
    _add_map_arguments(sweep)
    sweep.add_argument("--grid", type=_float_list, required=True, help="Valori separati da virgola, es. 1,2,5,10")
    sweep.add_argument("--runs", type=int, default=1000, help="Run per punto")
    sweep.add_argument("--cap", type=int, default=10_000, help="Passi massimi per run")
    sweep.add_argument("--out", default="-", help="CSV param,run,termination_step ('-' = stdout)")
    sweep.add_argument("--summary", default=None, help="JSON riepilogo SurvivalStats (opzionale)")

    measure = subparsers.add_parser("measure", help="μ*, I e R di una tabella x,y,z,count")
    measure.add_argument("--table", required=True, help="CSV con header x,y,z,count")
    measure.add_argument("--tol", type=float, default=1e-10, help="Tolleranza IPF")
    measure.add_argument("--max-iter", type=int, default=10_000, help="Cicli IPF massimi")
    measure.add_argument("--out", default="-", help="JSON di output ('-' = stdout)")

    pipeline = subparsers.add_parser("pipeline", help="Corpus -> componenti ruotate -> μ*, I, R")
    pipeline.add_argument("--corpus", required=True, help="Corpus CSV/TSV/XLSX con id,title,authors,year")
    pipeline.add_argument("--word-threshold", type=int, default=2, help="Parole con più di N occorrenze")
    pipeline.add_argument("--author-threshold", type=int, default=1, help="Autori con più di N occorrenze")
    pipeline.add_argument("--tau", type=float, default=0.1, help="Soglia del bin centrale")
    pipeline.add_argument("--components", type=int, default=3, help="Componenti estratte (≥ 3)")
    pipeline.add_argument(
        "--sets", default="words,authors,combined",
        help="Insiemi di variabili separati da virgola (words, authors, combined)",
    )
    pipeline.add_argument("--basis", choices=["correlation", "covariance"], default="correlation")
    pipeline.add_argument("--stopwords", default=None, help="File YAML stopwords alternativo")
    pipeline.add_argument("--out", default="-", help="JSON di output ('-' = stdout)")

    return parser


HANDLERS = {
    "simulate": commands.cmd_simulate,
    "sweep": commands.cmd_sweep,
    "measure": commands.cmd_measure,
    "pipeline": commands.cmd_pipeline,
}


def _usage_error(message: str) -> int:
    print(f"structuration-lab: errore: {message}", file=sys.stderr)
    return EXIT_USAGE_ERROR


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Esegue un comando e ritorna l'exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE_ERROR

    set_run_context(args.run_id, args.command)
    diagnostics_state.reset()

    try:
        HANDLERS[args.command](args)
    except LabError as exc:
        logger.error(f"[CLI] {args.command} fallito: {exc.code} - {exc}")
        print(json.dumps(exc.to_dict(), sort_keys=True, ensure_ascii=False), file=sys.stderr)
        return EXIT_DOMAIN_ERROR
    except ValidationError as exc:
        return _usage_error(f"configurazione non valida: {exc.errors()[0].get('msg', exc)}")
    except commands.UsageError as exc:
        return _usage_error(str(exc))
    except (ValueError, FileNotFoundError) as exc:
        return _usage_error(str(exc))
    finally:
        set_config(None)

    events = diagnostics_state.snapshot()
    if events:
        logger.info(f"[CLI] Eventi {args.command}: {events}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(run())
