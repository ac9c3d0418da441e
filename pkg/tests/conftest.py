"""
Configurazione pytest e fixture comuni.
"""
from pathlib import Path

import numpy as np
import pytest

from core import diagnostics_state
from core.config import LabConfig, set_config
from infotheory.types import Distribution3

# Percorso file fixture
FIXTURES_DIR = Path(__file__).parent / "data"


@pytest.fixture(autouse=True)
def reset_state():
    """Configurazione di default e contatori azzerati per ogni test."""
    set_config(LabConfig())
    diagnostics_state.reset()
    yield
    set_config(None)
    diagnostics_state.reset()


@pytest.fixture
def fixtures_dir():
    return FIXTURES_DIR


@pytest.fixture
def xor_dist():
    """Z = X xor Y con X, Y uniformi: marginali bivariati uniformi."""
    p = np.zeros((2, 2, 2))
    for x in (0, 1):
        for y in (0, 1):
            p[x, y, x ^ y] = 0.25
    return Distribution3(p)


@pytest.fixture
def copy_dist():
    """X = Y = Z uniforme su due valori."""
    p = np.zeros((2, 2, 2))
    p[0, 0, 0] = 0.5
    p[1, 1, 1] = 0.5
    return Distribution3(p)


@pytest.fixture
def independent_dist():
    """Prodotto di tre marginali indipendenti non uniformi."""
    px = np.array([0.2, 0.8])
    py = np.array([0.5, 0.3, 0.2])
    pz = np.array([0.6, 0.4])
    return Distribution3(np.einsum("i,j,k->ijk", px, py, pz))


@pytest.fixture(scope="session")
def random_tables():
    """1000 tabelle casuali, 2×2×2 e 3×3×2 alternate, con tutte le celle positive."""
    rng = np.random.default_rng(20240601)
    tables = []
    for shape in [(2, 2, 2), (3, 3, 2)] * 500:
        raw = rng.random(shape) + 0.01
        tables.append(Distribution3(raw / raw.sum()))
    return tables
