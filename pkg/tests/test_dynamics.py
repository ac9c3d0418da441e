"""
Test unitari per le mappe e la simulazione di traiettorie.
"""
import math

import numpy as np
import pytest

from core import diagnostics_state
from core.errors import DegenerateDenominator, NegativeRadicand, NegativeState, NoRealRoot
from dynamics.maps import (
    back_substitute,
    fixed_point,
    self_organization_roots,
    step_double_contingency,
    step_incursive,
    step_interaction,
    step_logistic,
    step_organization,
    step_self_organization,
)
from dynamics.simulate import UniformStream, simulate, summarize
from dynamics.types import Completed, MapKind, RootPolicy, SimConfig, Trajectory, Vanished



def _bisect_self_organization_fixed_point(c=1.0, iterations=200):
    """x − 1 + ∛(x/c) = 0 su [0, 1] per bisezione, senza passare da dynamics."""
    lo, hi = 0.0, 1.0
    for _ in range(iterations):
        mid = (lo + hi) / 2.0
        if mid - 1.0 + np.cbrt(mid / c) > 0.0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2.0


X_STAR = _bisect_self_organization_fixed_point()


class TestStepLogisticIncursive:
    """Test per le mappe logistica e incursiva."""

    def test_logistic_values(self):
        assert step_logistic(0.5, 4) == 1.0
        assert step_logistic(0.5, 2) == 0.5
        assert step_logistic(0.2, 3) == pytest.approx(0.48, abs=1e-15)

    def test_incursive_values(self):
        assert step_incursive(0.5, 4) == pytest.approx(2.0 / 3.0, rel=1e-15)
        assert step_incursive(0.0, 3) == 0.0
        assert step_incursive(0.75, 4) == pytest.approx(0.75, rel=1e-15)

    def test_incursive_degenerate_denominator(self):
        """1 + a·x = 0 → DegenerateDenominator."""
        with pytest.raises(DegenerateDenominator):
            step_incursive(-0.5, 2)

    def test_parameter_must_be_positive(self):
        with pytest.raises(ValueError, match="deve essere > 0"):
            step_logistic(0.5, 0.0)

    def test_fixed_points(self):
        assert fixed_point(MapKind.logistic(4)) == pytest.approx(0.75)
        assert fixed_point(MapKind.incursive(0.5)) == 0.0
        assert fixed_point(MapKind.interaction(2)) is None


class TestStepDoubleContingency:
    """Test per le radici in avanti della doppia contingenza."""

    def test_two_roots(self):
        assert step_double_contingency(0.75, 4, "minus") == pytest.approx(0.25, rel=1e-15)
        assert step_double_contingency(0.75, 4, "plus") == pytest.approx(0.75, rel=1e-15)

    def test_double_root(self):
        assert step_double_contingency(1.0, 4, "plus") == 0.5
        assert step_double_contingency(1.0, 4, "minus") == 0.5

    def test_no_real_root(self):
        with pytest.raises(NoRealRoot) as exc_info:
            step_double_contingency(0.75, 2, "plus")
        assert exc_info.value.code == "no_real_root"
        assert exc_info.value.context["discriminant"] == pytest.approx(-0.5)

    def test_invalid_sign(self):
        with pytest.raises(ValueError, match="Segno non valido"):
            step_double_contingency(0.5, 4, "both")


class TestStepInteraction:
    """Test per la mappa di interazione."""

    def test_values(self):
        assert step_interaction(1.0, 2, "plus") == pytest.approx(1.7071067811865475, rel=1e-15)
        assert step_interaction(1.0, 2, "minus") == pytest.approx(0.2928932188134524, rel=1e-15)
        assert step_interaction(2.0, 2, "minus") == 0.0
        assert step_interaction(2.0, 2, "plus") == 2.0

    def test_vanishing_after_crossing_zero(self):
        """b < 2: lo stato può diventare negativo e il passo successivo svanisce."""
        x = step_interaction(1.6, 1.5, "minus")
        assert x == pytest.approx(-0.0327955, abs=1e-7)
        with pytest.raises(NegativeRadicand):
            step_interaction(x, 1.5, "plus")

    def test_branches_mirror_around_one(self):
        rng = np.random.default_rng(7)
        for x, b in zip(rng.uniform(0, 2, 200), rng.uniform(0.5, 10, 200)):
            plus = step_interaction(x, b, "plus")
            minus = step_interaction(x, b, "minus")
            assert (1.0 - minus) == pytest.approx(-(1.0 - plus), rel=1e-15)

    def test_closure_at_b_two(self):
        """b = 2, x ∈ [0, 2] → entrambi i rami restano in [0, 2]."""
        for x in np.linspace(0.0, 2.0, 101):
            for choice in ("plus", "minus"):
                assert 0.0 <= step_interaction(x, 2.0, choice) <= 2.0


class TestStepSelfOrganization:
    """Test per la radice reale dell'auto-organizzazione."""

    def test_values(self):
        assert step_self_organization(1.0, 1) == 0.0
        assert step_self_organization(1.0, 8) == pytest.approx(0.5, rel=1e-15)

    def test_negative_state_rejected(self):
        with pytest.raises(NegativeState):
            step_self_organization(-0.1, 1)

    def test_negative_state_real_root_when_allowed(self):
        assert step_self_organization(-1.0, 1, allow_negative=True) == pytest.approx(2.0)

    def test_contraction_towards_fixed_point(self):
        """La distanza da x* decresce a ogni passo per x ≥ 0.11 (sotto ~0.1008 no)."""
        for x in np.linspace(0.11, 2.0, 200):
            nxt = step_self_organization(x, 1.0)
            assert abs(nxt - X_STAR) < abs(x - X_STAR)

    def test_no_contraction_near_zero(self):
        x = 0.051
        assert abs(step_self_organization(x, 1.0) - X_STAR) > abs(x - X_STAR)

    def test_fixed_point_by_bisection(self):
        x_star = fixed_point(MapKind.self_organization(1.0))
        assert X_STAR == pytest.approx(0.3176722, abs=1e-7)
        assert x_star == pytest.approx(X_STAR, abs=1e-10)
        assert x_star == pytest.approx(1.0 - x_star ** (1.0 / 3.0), abs=1e-12)

    def test_complex_roots_detected(self):
        real, z1, z2 = self_organization_roots(1.0, 8)
        assert real == pytest.approx(0.5)
        assert z1 == z2.conjugate()
        assert z1.imag != 0.0
        # tutte e tre risolvono x_t = c·(1 − x)³
        for root in (real, z1, z2):
            assert abs(8 * (1 - root) ** 3 - 1.0) < 1e-12


class TestStepOrganization:
    """Test per la mappa dell'organizzazione."""

    def test_values(self):
        assert step_organization(0.5, 2, "minus") == pytest.approx(0.2928932188134524, rel=1e-15)
        assert step_organization(0.5, 1, "plus") == 2.0

    def test_vanishing(self):
        assert step_organization(1.2, 2, "plus") == Vanished("negative_denominator")
        assert step_organization(2.0, 1, "minus") == Vanished("negative_denominator")
        assert step_organization(1.0, 2, "minus") == Vanished("negative_denominator")
        assert step_organization(-0.1, 2, "minus") == Vanished("negative_radicand")


class TestBackSubstitution:
    """Reinserendo x_{t+1} nell'equazione si ritrova x_t."""

    def test_double_contingency(self):
        rng = np.random.default_rng(11)
        for _ in range(500):
            a = rng.uniform(0.5, 10.0)
            x = a * rng.uniform(0.01, 0.25)
            for choice in ("plus", "minus"):
                nxt = step_double_contingency(x, a, choice)
                recovered = back_substitute(MapKind.double_contingency(a), nxt)
                assert recovered == pytest.approx(x, rel=1e-12)

    def test_interaction(self):
        rng = np.random.default_rng(12)
        for _ in range(500):
            b = rng.uniform(0.5, 10.0)
            x = b * rng.uniform(1e-3, 4.0)
            for choice in ("plus", "minus"):
                nxt = step_interaction(x, b, choice)
                assert back_substitute(MapKind.interaction(b), nxt) == pytest.approx(x, rel=1e-12)

    def test_organization(self):
        rng = np.random.default_rng(13)
        for _ in range(500):
            d = rng.uniform(0.5, 10.0)
            x = rng.uniform(0.01, 0.99)
            for choice in ("plus", "minus"):
                nxt = step_organization(x, d, choice)
                recovered = back_substitute(MapKind.organization(d), nxt, x_t=x)
                assert recovered == pytest.approx(x, rel=1e-12)

    def test_organization_requires_x_t(self):
        with pytest.raises(ValueError, match="richiede x_t"):
            back_substitute(MapKind.organization(2), 0.5)


class TestTypes:
    """Test per la validazione dei tipi di configurazione."""

    def test_map_kind_rejects_non_positive(self):
        with pytest.raises(ValueError):
            MapKind.organization(0.0)
        with pytest.raises(ValueError):
            MapKind.interaction(float("nan"))

    def test_map_kind_symbols(self):
        assert MapKind.interaction(2).symbol == "b"
        assert MapKind.organization(2).requires_sign
        assert not MapKind.self_organization(1).requires_sign

    def test_root_policy_bounds(self):
        with pytest.raises(ValueError):
            RootPolicy.random_sign(1.5)
        assert RootPolicy.always_minus().kind == "minus"

    def test_sim_config_validation(self):
        with pytest.raises(ValueError):
            SimConfig(MapKind.logistic(3), steps=0)
        with pytest.raises(ValueError):
            SimConfig(MapKind.logistic(3), steps=10, seed=-1)

    def test_trajectory_requires_states(self):
        with pytest.raises(ValueError):
            Trajectory(states=[])


class TestSimulate:
    """Test per simulate."""

    def test_interaction_drifts_around_one(self):
        config = SimConfig(MapKind.interaction(2), steps=100_000, x0=1.0, seed=42)
        trajectory = simulate(config)

        assert isinstance(trajectory.termination, Completed)
        states = np.array(trajectory.states)
        assert len(states) == 100_001
        assert states.min() >= 0.0 and states.max() <= 2.0
        assert 0.9 <= states.mean() <= 1.1

    def test_self_organization_converges(self):
        for x0 in (0.1, 0.5, 0.9):
            trajectory = simulate(SimConfig(MapKind.self_organization(1), steps=200, x0=x0))
            assert trajectory.termination == Completed()
            assert abs(trajectory.final_state - X_STAR) < 1e-6

    def test_self_organization_two_cycle_above_one(self):
        """x0 > 1: stati alternati fuori da [0, 1], attratti dal 2-ciclo {−0.15372, 1.53569}."""
        trajectory = simulate(SimConfig(MapKind.self_organization(1), steps=200, x0=2.0))
        assert trajectory.termination == Completed()

        low, high = sorted(trajectory.states[-2:])
        assert low == pytest.approx(-0.15372, abs=1e-5)
        assert high == pytest.approx(1.53569, abs=1e-5)
        assert step_self_organization(step_self_organization(high, 1), 1, allow_negative=True) == pytest.approx(high, abs=1e-12)
        assert abs(trajectory.final_state - X_STAR) > 0.4

    def test_self_organization_vanish_policy(self):
        config = SimConfig(MapKind.self_organization(1), steps=200, x0=2.0, negative_states="vanish")
        trajectory = simulate(config)
        assert trajectory.termination == Vanished("negative_state", at_step=1)
        assert trajectory.states[1] == pytest.approx(1.0 - 2.0 ** (1.0 / 3.0), abs=1e-15)

    def test_organization_vanishes(self):
        for seed in range(5):
            config = SimConfig(MapKind.organization(2), steps=1_000_000, x0=0.5, seed=seed)
            trajectory = simulate(config)
            assert trajectory.vanished
            assert trajectory.termination.at_step == len(trajectory.states) - 1
            assert all(math.isfinite(x) for x in trajectory.states)

    def test_deterministic(self):
        config = SimConfig(MapKind.interaction(1.8), steps=5000, x0=1.0, seed=123)
        first = simulate(config)
        second = simulate(config)
        assert first.states == second.states
        assert first.termination == second.termination

    def test_block_size_does_not_change_sequence(self):
        config = SimConfig(MapKind.interaction(2), steps=3000, seed=9)
        assert simulate(config, block_size=1).states == simulate(config, block_size=4096).states

    def test_uniform_stream_matches_generator(self):
        stream = UniformStream(5, block_size=3)
        expected = np.random.Generator(np.random.PCG64(5)).random(10).tolist()
        assert [stream.next() for _ in range(10)] == expected

    def test_always_minus_is_deterministic_without_seed(self):
        config_a = SimConfig(MapKind.interaction(2), steps=50, seed=1, root_policy=RootPolicy.always_minus())
        config_b = SimConfig(MapKind.interaction(2), steps=50, seed=2, root_policy=RootPolicy.always_minus())
        assert simulate(config_a).states == simulate(config_b).states

    def test_double_contingency_no_real_root(self):
        """a = 2, x0 = 1 → discriminante negativo al primo passo."""
        trajectory = simulate(SimConfig(MapKind.double_contingency(2), steps=10, x0=1.0))
        assert trajectory.states == [1.0]
        assert trajectory.termination == Vanished("no_real_root", at_step=0)
        assert diagnostics_state.snapshot() == {"vanished:no_real_root": 1}

    def test_self_organization_negative_state(self):
        accepted = simulate(SimConfig(MapKind.self_organization(1), steps=5, x0=-0.5))
        assert accepted.termination == Completed()
        assert accepted.states[1] == pytest.approx(1.0 + 0.5 ** (1.0 / 3.0))

        rejected = simulate(
            SimConfig(MapKind.self_organization(1), steps=5, x0=-0.5, negative_states="vanish")
        )
        assert rejected.states == [-0.5]
        assert rejected.termination == Vanished("negative_state", at_step=0)

    def test_logistic_completes(self):
        trajectory = simulate(SimConfig(MapKind.logistic(2), steps=20, x0=0.5))
        assert trajectory.states == [0.5] * 21

    def test_summarize(self):
        trajectory = Trajectory(states=[1.0, 1.5, 0.5, 1.2, 0.8], termination=Vanished("negative_radicand", 4))
        summary = summarize(trajectory)
        assert summary.n_states == 5
        assert summary.mean == pytest.approx(1.0)
        assert summary.minimum == 0.5 and summary.maximum == 1.5
        assert summary.crossings_of_one == 3
