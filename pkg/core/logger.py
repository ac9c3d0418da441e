"""
Logging strutturato per structuration-lab.

Unifica logging colorato (colorlog) e righe JSON per gli eventi di pipeline.
Tutto va su stderr: stdout è riservato agli output con `--out -`.
"""
import contextvars
import json
import logging
import sys
import uuid
from datetime import datetime, timezone
from typing import Any, Dict, Optional

try:
    import colorlog
    COLORLOG_AVAILABLE = True
except ImportError:
    COLORLOG_AVAILABLE = False

# Context variables per tracciare il run corrente
_run_context: contextvars.ContextVar[Dict[str, Any]] = contextvars.ContextVar('run_context', default={})


def setup_colored_logging(service_name: str = "lab", level: int = logging.INFO):
    """
    Configura logging colorato con colorlog.

    Args:
        service_name: Nome del servizio per identificare log
        level: Livello del root logger
    """
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(logging.DEBUG)

    if COLORLOG_AVAILABLE:
        formatter = colorlog.ColoredFormatter(
            f'%(log_color)s[%(levelname)s]%(reset)s %(cyan)s{service_name}%(reset)s | %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S',
            reset=True,
            log_colors={
                'DEBUG': 'white',
                'INFO': 'blue',
                'WARNING': 'yellow',
                'ERROR': 'red',
                'CRITICAL': 'red,bg_white',
            },
            style='%'
        )
    else:
        formatter = logging.Formatter(
            f'[%(levelname)s] {service_name} | %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

    handler.setFormatter(formatter)

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    root_logger.handlers = []
    root_logger.addHandler(handler)

    # numpy/pandas non loggano molto, ma openpyxl sì
    logging.getLogger('openpyxl').setLevel(logging.WARNING)

    return root_logger


def set_run_context(run_id: Optional[str] = None, command: Optional[str] = None) -> Dict[str, Any]:
    """
    Imposta contesto del run per logging strutturato.

    Args:
        run_id: ID del run (genera se None)
        command: Comando CLI in esecuzione
    """
    if run_id is None:
        run_id = uuid.uuid4().hex[:12]

    context: Dict[str, Any] = {"run_id": run_id}
    if command is not None:
        context["command"] = command

    _run_context.set(context)
    return context


def get_run_context() -> Dict[str, Any]:
    """Recupera contesto del run corrente."""
    return _run_context.get({})


def log_json(
    level: str,
    message: str,
    stage: Optional[str] = None,
    variable_set: Optional[str] = None,
    iterations: Optional[int] = None,
    elapsed_sec: Optional[float] = None,
    decision: Optional[str] = None,
    **extra
):
    """
    Log strutturato in formato JSON (una riga).

    Args:
        level: 'info', 'warning', 'error', 'debug'
        message: Messaggio da loggare
        stage: Stage della pipeline (words_matrix, correlation, varimax, entropy, ...)
        variable_set: Insieme di variabili (words, authors, combined)
        iterations: Iterazioni/sweep dell'algoritmo
        elapsed_sec: Tempo elaborazione in secondi
        decision: Esito (ok, degenerate, ipf_not_converged, error)
        **extra: Campi aggiuntivi
    """
    ctx = get_run_context()

    log_data: Dict[str, Any] = {
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "level": level.upper(),
        "message": message,
    }
    log_data.update(ctx)

    if stage:
        log_data["stage"] = stage
    if variable_set:
        log_data["variable_set"] = variable_set
    if iterations is not None:
        log_data["iterations"] = iterations
    if elapsed_sec is not None:
        log_data["elapsed_sec"] = round(elapsed_sec, 6)
    if decision:
        log_data["decision"] = decision

    log_data.update(extra)

    logger = logging.getLogger(__name__)
    log_func = getattr(logger, level.lower(), logger.info)
    log_func(json.dumps(log_data, ensure_ascii=False, default=str))
