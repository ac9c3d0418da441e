"""
Contatori di eventi del processo (vanishing, IPF non convergente, colonne scartate).

Non entrano mai negli output: la CLI li logga a fine comando.
"""
from __future__ import annotations

from collections import Counter
from threading import Lock
from typing import Dict


class EventCounter:
    def __init__(self) -> None:
        self._counts: Counter = Counter()
        self._lock = Lock()

    def record(self, event: str, amount: int = 1) -> None:
        with self._lock:
            self._counts[event] += amount

    def snapshot(self) -> Dict[str, int]:
        with self._lock:
            return dict(sorted(self._counts.items()))

    def reset(self) -> None:
        with self._lock:
            self._counts.clear()


events = EventCounter()


def record(event: str, amount: int = 1) -> None:
    events.record(event, amount)


def snapshot() -> Dict[str, int]:
    return events.snapshot()


def reset() -> None:
    events.reset()
