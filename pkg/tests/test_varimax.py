"""
Test per la rotazione varimax.
"""
import numpy as np
import pytest

from core.errors import NoConvergence
from linalg.components import principal_components
from linalg.correlation import correlation_from_array
from linalg.types import LoadingsMatrix
from linalg.varimax import rotate_varimax, varimax, varimax_criterion


def _random_loadings(seed, n_vars=12, k=3):
    rng = np.random.default_rng(seed)
    data = rng.poisson(1.0, size=(80, n_vars)) + rng.poisson(2.0, size=(80, 1)) * (np.arange(n_vars) % 3 == 0)
    r = correlation_from_array(data, [f"v{j}" for j in range(n_vars)])
    return principal_components(r, k=k)


class TestVarimax:
    """Test per rotate_varimax e varimax."""

    def test_simple_structure_unchanged(self):
        L = np.array([[0.8, 0.0], [0.0, 0.7], [0.6, 0.0], [0.0, 0.5]])
        rotated = varimax(LoadingsMatrix(labels=["a", "b", "c", "d"], L=L))
        np.testing.assert_allclose(np.abs(rotated.L), np.abs(L), atol=1e-12)
        assert rotated.rotated

    def test_forty_five_degrees(self):
        """Righe con pesi uguali sui due fattori: la rotazione di 45° le allinea agli assi."""
        L = np.array([[0.5, 0.5], [0.5, -0.5]])
        result = rotate_varimax(LoadingsMatrix(labels=["a", "b"], L=L))

        expected = np.sqrt(0.5)
        np.testing.assert_allclose(np.abs(result.loadings.L), [[expected, 0.0], [0.0, expected]], atol=1e-12)
        assert result.criterion_history[-1] > result.criterion_history[0]
        assert varimax_criterion(result.loadings.L) > varimax_criterion(L)
        assert result.converged

    @pytest.mark.parametrize("seed", [1, 2, 3, 4])
    def test_rotation_properties(self, seed):
        loadings = _random_loadings(seed)
        result = rotate_varimax(loadings)
        R = result.rotation

        np.testing.assert_allclose(R.T @ R, np.eye(loadings.k), atol=1e-9)
        np.testing.assert_allclose(result.loadings.communalities(), loadings.communalities(), atol=1e-9)
        np.testing.assert_allclose(loadings.L @ R, result.loadings.L, atol=1e-12)
        history = np.array(result.criterion_history)
        assert np.all(np.diff(history) >= -1e-12)

    def test_sign_and_order_convention(self):
        result = rotate_varimax(_random_loadings(7))
        L = result.loadings.L
        sums = (L ** 2).sum(axis=0)
        assert np.all(np.diff(sums) <= 1e-12)
        for j in range(L.shape[1]):
            assert L[np.argmax(np.abs(L[:, j])), j] > 0.0

    def test_without_kaiser(self):
        loadings = _random_loadings(5)
        result = rotate_varimax(loadings, normalize=False)
        assert result.converged
        assert result.criterion_history[-1] >= varimax_criterion(loadings.L) - 1e-12

    def test_no_convergence(self):
        loadings = _random_loadings(3)
        with pytest.raises(NoConvergence) as exc_info:
            varimax(loadings, tol=1e-300, max_iter=1)
        assert isinstance(exc_info.value.best, LoadingsMatrix)
        assert exc_info.value.best.rotated

    def test_requires_two_factors(self):
        with pytest.raises(ValueError, match="almeno 2 fattori"):
            rotate_varimax(LoadingsMatrix(labels=["a"], L=np.array([[0.5]])))
