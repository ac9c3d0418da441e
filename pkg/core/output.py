"""
Scrittura degli output (CSV e JSON) con blocco di provenienza.

CSV: righe di commento `# chiave: valore` prima dell'header.
JSON: oggetto `provenance` nel payload, chiavi ordinate, indentazione fissa.
Nessun timestamp: stessi input -> byte identici.
"""
import io
import json
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, Optional, TextIO, Union

import pandas as pd

Target = Union[str, Path, TextIO]

STDOUT = "-"


@contextmanager
def open_output(target: Target) -> Iterator[TextIO]:
    """Apre un file in scrittura; "-" è stdout, un handle viene usato così com'è."""
    if isinstance(target, (str, Path)):
        if str(target) == STDOUT:
            yield sys.stdout
            return
        path = Path(target)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as handle:
            yield handle
        return
    yield target


def provenance_lines(provenance: Optional[Dict[str, Any]]) -> str:
    if not provenance:
        return ""
    lines = []
    for key, value in provenance.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True, ensure_ascii=False)
        lines.append(f"# {key}: {value}\n")
    return "".join(lines)


def write_csv(frame: pd.DataFrame, target: Target, provenance: Optional[Dict[str, Any]] = None, index: bool = False) -> None:
    with open_output(target) as handle:
        handle.write(provenance_lines(provenance))
        frame.to_csv(handle, index=index, lineterminator="\n")


def dumps_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(payload: Dict[str, Any], target: Target, provenance: Optional[Dict[str, Any]] = None) -> None:
    if provenance is not None:
        payload = {**payload, "provenance": provenance}
    with open_output(target) as handle:
        handle.write(dumps_json(payload))


def strip_comment_lines(text: str) -> str:
    """Rimuove solo le righe che iniziano con `#`; un `#` dentro un campo resta dato."""
    return "".join(line for line in io.StringIO(text) if not line.startswith("#"))


def read_csv_with_comments(source: Union[str, Path, TextIO], **kwargs: Any) -> pd.DataFrame:
    """Legge un CSV prodotto da write_csv ignorando le righe di provenienza."""
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source.read()
    body = strip_comment_lines(text)
    return pd.read_csv(io.StringIO(body), keep_default_na=False, **kwargs)
