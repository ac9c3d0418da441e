"""
Import/export di tabelle di contingenza: CSV con header `x,y,z,count`.

Le etichette sono stringhe arbitrarie; righe ripetute vengono sommate.
"""
import io
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

import pandas as pd

from core.errors import UnsupportedFormat
from core.output import Target, strip_comment_lines, write_csv
from infotheory.types import ContingencyTable

logger = logging.getLogger(__name__)

REQUIRED_COLUMNS = ["x", "y", "z", "count"]


def load_table(path: Union[str, Path]) -> ContingencyTable:
    # solo righe intere di commento: `#` è ammesso nelle etichette
    text = strip_comment_lines(Path(path).read_text(encoding="utf-8"))
    frame = pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False, skipinitialspace=True)
    frame.columns = [str(c).strip().lower() for c in frame.columns]

    missing = [c for c in REQUIRED_COLUMNS if c not in frame.columns]
    if missing:
        raise UnsupportedFormat(
            f"Tabella senza colonne obbligatorie: {', '.join(missing)}",
            path=str(path), columns=list(frame.columns),
        )

    try:
        counts = pd.to_numeric(frame["count"], errors="raise")
    except (ValueError, TypeError) as exc:
        raise UnsupportedFormat(f"Colonna count non numerica: {exc}", path=str(path)) from exc

    records = zip(frame["x"].str.strip(), frame["y"].str.strip(), frame["z"].str.strip(), counts)
    table = ContingencyTable.from_records(records)
    logger.info(f"[MEASURE] Tabella {path}: dims={table.dims}, totale={table.total}")
    return table


def table_frame(table: ContingencyTable) -> pd.DataFrame:
    rows = []
    lx, ly, lz = table.labels
    for i, x in enumerate(lx):
        for j, y in enumerate(ly):
            for k, z in enumerate(lz):
                rows.append({"x": x, "y": y, "z": z, "count": int(table.counts[i, j, k])})
    return pd.DataFrame(rows, columns=REQUIRED_COLUMNS)


def save_table(table: ContingencyTable, target: Target, provenance: Optional[Dict[str, Any]] = None) -> None:
    write_csv(table_frame(table), target, provenance)
