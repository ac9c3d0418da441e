"""
Test per binning SignTernary e pipeline di misura end-to-end.
"""
from pathlib import Path

import numpy as np
import pytest

from core import diagnostics_state
from core.config import LabConfig
from core.errors import DegenerateDistribution, ZeroVariance
from corpus.loader import load_corpus
from infotheory.entropy import mu_star
from infotheory.measures import entropy_report
from infotheory.types import Distribution3
from linalg.types import LoadingsMatrix
from structuration.binning import bin_loadings, cell_counts, loadings_to_distribution, sign_ternary
from structuration.pipeline import measure
from structuration.report import INTERPRETATIONS, interpret, report_to_json, save_report
from structuration.types import BinningPolicy

DATA_DIR = Path(__file__).parent / "data"


def _loadings(rows):
    rows = np.asarray(rows, dtype=float)
    return LoadingsMatrix(labels=[f"v{i}" for i in range(len(rows))], L=rows, rotated=True)


def _expected_mu_star(cell_sizes):
    """μ* di variabili disposte sulle celle (+,0,0), (0,+,0), (0,0,+)."""
    counts = np.zeros((3, 3, 3))
    counts[2, 1, 1], counts[1, 2, 1], counts[1, 1, 2] = cell_sizes
    return mu_star(Distribution3.from_table(counts))


@pytest.fixture(scope="module")
def synergy_report():
    corpus = load_corpus(DATA_DIR / "synergy_corpus.csv")
    return measure(corpus, config=LabConfig())


@pytest.fixture(scope="module")
def redundant_report():
    corpus = load_corpus(DATA_DIR / "redundant_corpus.csv")
    return measure(corpus, config=LabConfig())


class TestBinning:
    """Test per loadings_to_distribution."""

    def test_sign_ternary(self):
        assert sign_ternary(np.array([-0.5, -0.1, 0.0, 0.1, 0.11]), 0.1).tolist() == [0, 1, 1, 1, 2]

    def test_policy_validation(self):
        with pytest.raises(ValueError):
            BinningPolicy(tau=0.0)
        with pytest.raises(ValueError):
            BinningPolicy(scheme="quantile")

    def test_all_zero_loadings(self):
        dist = loadings_to_distribution(_loadings(np.zeros((5, 3))))
        report = entropy_report(dist)
        assert report.h_xyz == 0.0
        assert report.mu_star == 0.0
        assert diagnostics_state.snapshot()["degenerate_distribution"] == 1

    def test_degenerate_strict(self):
        with pytest.raises(DegenerateDistribution):
            loadings_to_distribution(_loadings(np.zeros((5, 3))), strict=True)

    def test_eight_corners_independent(self):
        corners = [[sx * 0.5, sy * 0.5, sz * 0.5] for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)]
        dist = loadings_to_distribution(_loadings(corners))
        assert np.count_nonzero(dist.p) == 8
        assert mu_star(dist) == pytest.approx(0.0, abs=1e-12)

    def test_xor_corners(self):
        rows = [[0.5, 0.5, -0.5], [0.5, -0.5, 0.5], [-0.5, 0.5, 0.5], [-0.5, -0.5, -0.5]]
        dist = loadings_to_distribution(_loadings(rows))
        assert mu_star(dist) == pytest.approx(-1.0, abs=1e-12)

    def test_cell_counts(self):
        bins = bin_loadings(_loadings([[0.5, 0.0, -0.5], [0.5, 0.0, -0.5], [0.0, 0.0, 0.0]]), BinningPolicy())
        assert cell_counts(bins) == {"+,0,-": 2, "0,0,0": 1}

    def test_first_three_components_used(self):
        rows = [[0.5, 0.0, 0.0, 0.5], [0.0, 0.5, 0.0, -0.5]]
        dist = loadings_to_distribution(_loadings(rows))
        assert dist.p[2, 1, 1] == 0.5 and dist.p[1, 2, 1] == 0.5

    def test_requires_three_components(self):
        with pytest.raises(ValueError):
            loadings_to_distribution(_loadings([[0.5, 0.5]]))

    def test_permutation_and_sign_flip_invariance(self):
        rng = np.random.default_rng(4)
        L = rng.uniform(-0.55, 0.55, size=(30, 3))
        reference = entropy_report(loadings_to_distribution(_loadings(L)), strict=False)

        for axes in ([1, 0, 2], [2, 1, 0], [1, 2, 0]):
            permuted = entropy_report(loadings_to_distribution(_loadings(L[:, axes])), strict=False)
            assert permuted.mu_star == pytest.approx(reference.mu_star, abs=1e-9)
            assert permuted.h_xyz == pytest.approx(reference.h_xyz, abs=1e-9)

        flipped = L.copy()
        flipped[:, 1] *= -1.0
        report = entropy_report(loadings_to_distribution(_loadings(flipped)), strict=False)
        assert report.mu_star == pytest.approx(reference.mu_star, abs=1e-9)
        assert report.h_xyz == pytest.approx(reference.h_xyz, abs=1e-9)


class TestInterpretation:
    """Test per la lettura qualitativa del segno di μ*."""

    def test_labels(self):
        assert interpret(-0.05) == "uncertainty reduced by next-order organization"
        assert interpret(0.05) == INTERPRETATIONS["positive"]
        assert interpret(0.0) == INTERPRETATIONS["zero"]


class TestMeasure:
    """Test end-to-end su corpus sintetici."""

    def test_synergy_words(self, synergy_report):
        words = synergy_report.sets["words"]
        assert words.n_variables == 9
        assert words.cells == {"+,0,0": 4, "0,+,0": 3, "0,0,+": 2}
        assert words.mu_star < 0.0
        assert words.mu_star == pytest.approx(_expected_mu_star((4, 3, 2)), abs=1e-9)
        assert words.ipf_converged
        assert words.interaction_info == pytest.approx(0.0, abs=1e-12)
        assert words.redundancy == pytest.approx(words.mu_star, abs=1e-12)
        assert words.interpretation == INTERPRETATIONS["negative"]

    def test_synergy_authors_and_combined(self, synergy_report):
        authors = synergy_report.sets["authors"]
        combined = synergy_report.sets["combined"]
        assert authors.cells == {"+,0,0": 3, "0,+,0": 2, "0,0,+": 1}
        assert combined.cells == {"+,0,0": 7, "0,+,0": 5, "0,0,+": 3}
        assert combined.mu_star == pytest.approx(_expected_mu_star((7, 5, 3)), abs=1e-9)

    def test_synergy_metadata(self, synergy_report):
        metadata = synergy_report.metadata
        assert metadata.n_documents == 8
        assert metadata.word_threshold == 2 and metadata.author_threshold == 1
        assert metadata.rotation == "varimax"
        assert metadata.binning == {"scheme": "sign_ternary", "tau": 0.1, "bins_per_component": 3}
        assert metadata.variable_counts == {"words": 9, "authors": 6, "combined": 15}
        assert list(synergy_report.sets) == ["words", "authors", "combined"]

    def test_mbits_block(self, synergy_report):
        words = synergy_report.sets["words"]
        assert synergy_report.mbits["words"]["mu_star"] == words.mu_star * 1000.0
        assert set(synergy_report.mbits["combined"]) == {"mu_star", "interaction_info", "redundancy"}

    def test_redundant_positive(self, redundant_report):
        for name in ("words", "authors", "combined"):
            assert redundant_report.sets[name].mu_star > 0.0
        assert redundant_report.sets["words"].interpretation == INTERPRETATIONS["positive"]

    def test_identical_documents(self):
        corpus = load_corpus(DATA_DIR / "identical_corpus.csv")
        with pytest.raises(ZeroVariance) as exc_info:
            measure(corpus, config=LabConfig())
        assert exc_info.value.context["variable_set"] == "words"

    def test_byte_identical_reports(self, tmp_path):
        outputs = []
        for name in ("a.json", "b.json"):
            corpus = load_corpus(DATA_DIR / "redundant_corpus.csv")
            path = tmp_path / name
            save_report(measure(corpus, config=LabConfig()), path, provenance={"command": "pipeline"})
            outputs.append(path.read_bytes())
        assert outputs[0] == outputs[1]

    def test_report_json_schema(self, redundant_report):
        text = report_to_json(redundant_report)
        assert '"schema_version": "1.0"' in text
        assert "provenance" not in text

    def test_variable_set_subset(self):
        corpus = load_corpus(DATA_DIR / "redundant_corpus.csv")
        report = measure(corpus, variable_sets=["authors"], config=LabConfig())
        assert list(report.sets) == ["authors"]
        assert report.metadata.variable_counts == {"authors": 6}

    def test_invalid_arguments(self):
        corpus = load_corpus(DATA_DIR / "redundant_corpus.csv")
        with pytest.raises(ValueError, match="almeno 3 componenti"):
            measure(corpus, k=2, config=LabConfig())
        with pytest.raises(ValueError, match="non validi"):
            measure(corpus, variable_sets=["titles"], config=LabConfig())
