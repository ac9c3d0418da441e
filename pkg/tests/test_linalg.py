"""
Test per correlazione, autovalori (Jacobi ciclico) e componenti principali.
"""
import io

import numpy as np
import pytest

from core import diagnostics_state
from core.errors import InsufficientData, InvalidLoadings, LabError, NoConvergence, NonPositiveEigenvalue, ZeroVariance
from corpus.types import DocMatrix
from linalg.components import principal_components, save_loadings
from linalg.correlation import correlation, correlation_from_array
from linalg.jacobi import eigh
from linalg.types import CorrelationMatrix, LoadingsMatrix


def _random_symmetric(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n))
    return (a + a.T) / 2.0


def _random_correlation(n_docs, n_vars, seed):
    rng = np.random.default_rng(seed)
    data = rng.poisson(1.5, size=(n_docs, n_vars)) + rng.poisson(1.0, size=(n_docs, 1))
    return correlation_from_array(data, [f"v{j}" for j in range(n_vars)])


class TestCorrelation:
    """Test per la correlazione di Pearson."""

    def test_hand_values(self):
        data = np.array([[1, 1, 1, -1], [2, 3, 2, -2], [3, 2, 3, -3], [4, 4, 4, -4]])
        r = correlation_from_array(data, ["a", "b", "c", "d"])
        assert r.r[0, 1] == pytest.approx(0.8)
        assert r.r[0, 2] == pytest.approx(1.0)
        assert r.r[0, 3] == pytest.approx(-1.0)
        assert np.all(np.diag(r.r) == 1.0)
        assert r.n_documents == 4

    def test_zero_variance_dropped(self):
        data = np.array([[1, 0, 5], [2, 1, 5], [0, 1, 5]])
        r = correlation_from_array(data, ["a", "b", "const"])
        assert r.labels == ["a", "b"]
        assert r.dropped == ["const"]
        assert diagnostics_state.snapshot()["zero_variance_dropped"] == 1

    def test_zero_variance_raise(self):
        data = np.array([[1, 0, 5], [2, 1, 5], [0, 1, 5]])
        with pytest.raises(ZeroVariance) as exc_info:
            correlation_from_array(data, ["a", "b", "const"], zero_variance_policy="raise")
        assert exc_info.value.context["label"] == "const"

    def test_zero_variance_cascade(self):
        """Se restano meno di due variabili l'errore è sollevato anche con drop."""
        data = np.array([[1, 5, 5], [2, 5, 5], [0, 5, 5]])
        with pytest.raises(ZeroVariance):
            correlation_from_array(data, ["a", "b", "c"])

    def test_insufficient_documents(self):
        with pytest.raises(InsufficientData):
            correlation_from_array(np.array([[1, 2]]), ["a", "b"])

    def test_covariance_basis(self):
        data = np.array([[1.0, 2.0], [3.0, 2.0], [5.0, 8.0]])
        r = correlation_from_array(data, ["a", "b"], basis="covariance")
        np.testing.assert_allclose(r.r, np.cov(data, rowvar=False), atol=1e-12)

    def test_from_doc_matrix(self):
        m = DocMatrix(doc_ids=["d1", "d2", "d3"], variables=["x", "y"], cells=np.array([[1, 0], [0, 1], [1, 1]]), kind="words")
        r = correlation(m)
        assert r.labels == ["x", "y"]
        assert r.r[0, 1] == pytest.approx(-0.5)

    def test_matrix_validation(self):
        with pytest.raises(ValueError, match="simmetrica"):
            CorrelationMatrix(labels=["a", "b"], r=np.array([[1.0, 0.2], [0.3, 1.0]]))
        with pytest.raises(ValueError, match="Diagonale"):
            CorrelationMatrix(labels=["a", "b"], r=np.array([[2.0, 0.2], [0.2, 1.0]]))


class TestJacobi:
    """Test per la decomposizione spettrale con Jacobi ciclico."""

    def test_identity(self):
        result = eigh(np.eye(3))
        assert result.values.tolist() == [1.0, 1.0, 1.0]
        assert result.sweeps == 0

    def test_two_by_two(self):
        result = eigh(np.array([[1.0, 0.5], [0.5, 1.0]]))
        np.testing.assert_allclose(result.values, [1.5, 0.5], atol=1e-15)
        np.testing.assert_allclose(np.abs(result.vectors), np.full((2, 2), 1 / np.sqrt(2)), atol=1e-15)

    @pytest.mark.parametrize("n,seed", [(3, 1), (4, 2), (6, 3), (12, 4), (40, 5)])
    def test_residual_and_orthonormality(self, n, seed):
        a = _random_symmetric(n, seed)
        result = eigh(a)

        assert result.converged
        assert np.all(np.diff(result.values) <= 0.0)
        for j in range(n):
            v = result.vectors[:, j]
            assert np.abs(a @ v - result.values[j] * v).max() < 1e-8
        np.testing.assert_allclose(result.vectors.T @ result.vectors, np.eye(n), atol=1e-9)
        assert result.values.sum() == pytest.approx(np.trace(a), abs=1e-8)
        np.testing.assert_allclose(result.values, np.linalg.eigvalsh(a)[::-1], atol=1e-9)

    def test_sign_convention(self):
        result = eigh(_random_symmetric(5, 9))
        for j in range(5):
            column = result.vectors[:, j]
            assert column[np.argmax(np.abs(column))] > 0.0

    def test_correlation_trace(self):
        r = _random_correlation(60, 8, seed=3)
        result = eigh(r)
        assert result.values.sum() == pytest.approx(r.size, abs=1e-8)

    @pytest.mark.parametrize("n_vars,seed", [(12, 3), (40, 7)])
    def test_correlation_converges(self, n_vars, seed):
        """Correlazioni ordinarie: convergenza in pochi sweep, residuo a livello macchina."""
        r = _random_correlation(80, n_vars, seed=seed)
        result = eigh(r)

        assert result.converged
        assert result.sweeps < 20
        residual = r.r @ result.vectors - result.vectors * result.values
        assert np.abs(residual).max() < 1e-12
        np.testing.assert_allclose(result.values, np.linalg.eigvalsh(r.r)[::-1], atol=1e-10)

    def test_rank_deficient_correlation(self):
        """Colonne complementari (r = -1): rango 3, residuo e comunalità entro la tolleranza."""
        membership = np.array([[1, 1, 1, 0, 0, 0, 1, 0, 0], [1, 1, 1, 0, 0, 0, 0, 1, 0], [1, 1, 1, 0, 0, 0, 0, 0, 1]]).T
        data = np.hstack([membership, 1 - membership])
        r = correlation_from_array(data, ["a", "b", "c", "na", "nb", "nc"])
        result = eigh(r)

        assert result.converged
        residual = r.r @ result.vectors - result.vectors * result.values
        assert np.abs(residual).max() < 1e-8
        loadings = principal_components(r, k=3, eigen=result)
        assert (loadings.communalities() <= 1.0 + 1e-12).all()
        np.testing.assert_allclose(loadings.communalities(), 1.0, atol=1e-9)

    def test_no_convergence(self):
        with pytest.raises(NoConvergence) as exc_info:
            eigh(_random_symmetric(8, 11), max_sweeps=1)
        assert exc_info.value.best is not None
        assert not exc_info.value.best.converged

    def test_non_symmetric(self):
        with pytest.raises(ValueError):
            eigh(np.array([[1.0, 2.0], [0.0, 1.0]]))


class TestPrincipalComponents:
    """Test per i loadings non ruotati."""

    def test_two_by_two(self):
        r = CorrelationMatrix(labels=["a", "b"], r=np.array([[1.0, 0.5], [0.5, 1.0]]))
        loadings = principal_components(r, k=1)
        np.testing.assert_allclose(loadings.L[:, 0], [np.sqrt(0.75), np.sqrt(0.75)], atol=1e-12)
        assert loadings.eigenvalues.tolist() == pytest.approx([1.5])
        assert not loadings.rotated

    def test_identity(self):
        r = CorrelationMatrix(labels=["a", "b", "c"], r=np.eye(3))
        loadings = principal_components(r, k=1)
        assert np.abs(loadings.L).max() <= 1.0

    def test_full_rank_reconstruction(self):
        r = _random_correlation(60, 6, seed=5)
        loadings = principal_components(r, k=r.size)
        np.testing.assert_allclose(loadings.L @ loadings.L.T, r.r, atol=1e-8)

    def test_communalities_bounded(self):
        r = _random_correlation(60, 10, seed=6)
        loadings = principal_components(r, k=3)
        assert (loadings.communalities() <= 1.0 + 1e-9).all()
        assert loadings.k == 3

    def test_rank_deficient(self):
        r = CorrelationMatrix(labels=["a", "b"], r=np.ones((2, 2)))
        with pytest.raises(NonPositiveEigenvalue):
            principal_components(r, k=2)

    def test_k_exceeds_variables(self):
        r = CorrelationMatrix(labels=["a", "b"], r=np.eye(2))
        with pytest.raises(NonPositiveEigenvalue):
            principal_components(r, k=3)

    def test_communality_violation_rejected(self):
        with pytest.raises(InvalidLoadings, match="Comunalità") as exc_info:
            LoadingsMatrix(labels=["a"], L=np.array([[0.9, 0.9]]))
        assert isinstance(exc_info.value, LabError)
        assert exc_info.value.context["label"] == "a"

    def test_save_loadings(self):
        r = _random_correlation(40, 5, seed=8)
        buffer = io.StringIO()
        save_loadings(principal_components(r, k=3), buffer)
        lines = buffer.getvalue().splitlines()
        assert lines[0] == "variable,f1,f2,f3"
        assert len(lines) == 6
