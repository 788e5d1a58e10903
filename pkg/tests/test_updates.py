import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcpso import NumericFault, OpCounter, ParticleState, RngStream, component_costs, get_objective
from lcpso.core import swarm_from_positions
from lcpso.variants import (
    TriggerMask,
    compute_trigger_mask,
    conventional_best_update,
    conventional_global_update,
    dimension_wise_best_update,
    dimension_wise_global_update,
    velocity_update,
)


def make_particle(spec, x, pbest, v=None):
    x = np.asarray(x, dtype=float)
    pbest = np.asarray(pbest, dtype=float)
    c = component_costs(spec, pbest)
    return ParticleState(x, np.zeros_like(x) if v is None else np.asarray(v, dtype=float),
                         pbest, c.components, np.array(c.total))


class TestTriggerMask:
    def test_zero_personal_distance(self, sphere3):
        p = make_particle(sphere3, [1, 2, 3], [1, 5, 3])
        m = compute_trigger_mask(p, np.array([9.0, 9.0, 9.0]), 1e-7)
        assert m.cognitive_active.tolist() == [False, True, False]
        assert m.social_active.all()

    def test_below_threshold_social(self, sphere3):
        p = make_particle(sphere3, [0, 0, 0], [1, 1, 1])
        m = compute_trigger_mask(p, np.array([1e-8, 1e-7, 0.5]), 1e-7)
        # strict threshold: a distance equal to gamma stays active
        assert m.social_active.tolist() == [False, True, True]

    def test_gamma_zero_all_active(self, sphere3):
        p = make_particle(sphere3, [2, 2, 2], [2, 2, 2])
        m = compute_trigger_mask(p, np.array([2.0, 2.0, 2.0]), 0.0)
        assert m.cognitive_active.all() and m.social_active.all()

    def test_per_dimension_gamma(self, sphere3):
        p = make_particle(sphere3, [0, 0, 0], [0.5, 0.5, 0.5])
        m = compute_trigger_mask(p, np.zeros(3), np.array([0.1, 1.0, 0.5]))
        assert m.cognitive_active.tolist() == [True, False, True]

    def test_no_social_attractor(self, sphere3):
        p = make_particle(sphere3, [0, 0, 0], [1, 1, 1])
        assert not compute_trigger_mask(p, None, 0.0).social_active.any()


class TestVelocityUpdate:
    def test_full_count(self):
        n, d = 6, 4
        spec = get_objective("sphere", d)
        rng = np.random.default_rng(0)
        x = rng.normal(size=(n, d))
        c = component_costs(spec, x + 1)
        p = ParticleState(x, rng.normal(size=(n, d)), x + 1, c.components, c.total)
        counter = OpCounter()
        velocity_update(p, p.pbest_position, np.zeros(d), 0.7, 2.0, 2.0, RngStream(0), None, counter)
        assert counter.update_mults == 5 * n * d
        assert counter.skipped_terms == 0

    def test_matches_formula(self, sphere3):
        p = make_particle(sphere3, [1, 2, 3], [0, 0, 0], v=[0.5, -0.5, 1])
        g = np.array([4.0, -1.0, 2.0])
        r1, r2 = RngStream(5).coefficients(1, 3)
        got = velocity_update(p, p.pbest_position, g, 0.8, 1.5, 2.5, RngStream(5), None, OpCounter())
        expected = 0.8 * p.velocity + 1.5 * r1[0] * (p.pbest_position - p.position) + 2.5 * r2[0] * (g - p.position)
        assert np.array_equal(got, expected)

    def test_masked_dimension_keeps_inertia(self, sphere3):
        p = make_particle(sphere3, [1, 2, 3], [0, 0, 0], v=[0.5, -0.5, 1])
        g = np.array([4.0, -1.0, 2.0])
        mask = TriggerMask(np.array([True, False, True]), np.array([True, False, True]))
        counter = OpCounter()
        got = velocity_update(p, p.pbest_position, g, 0.8, 2.0, 2.0, RngStream(5), mask, counter)
        assert got[1] == 0.8 * -0.5
        assert counter.update_mults == 3 + 2 * 2 + 2 * 2
        assert counter.skipped_terms == 2

    def test_draws_regardless_of_mask(self, sphere3):
        p = make_particle(sphere3, [1, 2, 3], [1, 2, 3])
        rng = RngStream(5)
        mask = TriggerMask(np.zeros(3, bool), np.zeros(3, bool))
        velocity_update(p, p.pbest_position, p.position, 0.5, 2, 2, rng, mask, OpCounter())
        assert rng.coefficient_draws == 6

    def test_fixed_point(self, sphere3):
        p = make_particle(sphere3, [3, 3, 3], [3, 3, 3])
        v = velocity_update(p, p.pbest_position, p.position.copy(), 1.0, 2, 2, RngStream(1), None, OpCounter())
        assert np.array_equal(v, np.zeros(3))

    def test_no_inertia_charge(self, sphere3):
        p = make_particle(sphere3, [1, 2, 3], [0, 0, 0])
        counter = OpCounter()
        velocity_update(p, p.pbest_position, np.zeros(3), 0.0, 2, 2, RngStream(1), None, counter,
                        charge_inertia=False)
        assert counter.update_mults == 4 * 3

    def test_non_finite(self, sphere3):
        p = make_particle(sphere3, [1, 2, 3], [0, 0, 0], v=[np.inf, 0, 0])
        with pytest.raises(NumericFault):
            velocity_update(p, p.pbest_position, np.zeros(3), 0.5, 2, 2, RngStream(1), None, OpCounter())

    @settings(max_examples=50, deadline=None)
    @given(st.integers(1, 5), st.integers(1, 5), st.floats(0, 2), st.integers(0, 2**32))
    def test_count_matches_mask(self, n, d, gamma, seed):
        spec = get_objective("sphere", d)
        rng = np.random.default_rng(seed)
        x = rng.integers(-2, 3, (n, d)).astype(float)
        pb = rng.integers(-2, 3, (n, d)).astype(float)
        g = rng.integers(-2, 3, d).astype(float)
        c = component_costs(spec, pb)
        p = ParticleState(x, rng.normal(size=(n, d)), pb, c.components, c.total)
        mask = compute_trigger_mask(p, g, gamma)
        counter = OpCounter()
        velocity_update(p, pb, g, 0.5, 2, 2, RngStream(seed), mask, counter)
        active = mask.cognitive_active.sum() + mask.social_active.sum()
        assert counter.update_mults == n * d + 2 * active
        assert counter.skipped_terms == 2 * n * d - active


class TestBestUpdates:
    def test_conventional_improves(self, sphere3):
        p = make_particle(sphere3, [6, 4, -3], [7, 5, -1])
        out = conventional_best_update(p, p.position, component_costs(sphere3, p.position))
        assert out.pbest_position.tolist() == [6, 4, -3] and out.pbest_total == 61

    def test_conventional_retains(self, sphere3):
        p = make_particle(sphere3, [8, 4, -1], [0, 7, 3])
        out = conventional_best_update(p, p.position, component_costs(sphere3, p.position))
        assert out.pbest_position.tolist() == [0, 7, 3] and out.pbest_total == 58

    def test_conventional_tie(self, sphere3):
        p = make_particle(sphere3, [0, 0, 1], [1, 0, 0])
        out = conventional_best_update(p, p.position, component_costs(sphere3, p.position))
        assert out.pbest_position.tolist() == [1, 0, 0]

    def test_dimension_wise_example(self, sphere3):
        p = make_particle(sphere3, [8, 4, -1], [0, 7, 3])
        out = dimension_wise_best_update(p, p.position, component_costs(sphere3, p.position))
        assert out.pbest_position.tolist() == [0, 4, -1]
        assert out.pbest_components.tolist() == [0, 16, 1]
        assert out.pbest_total == 17

    def test_dimension_wise_identical(self, sphere3):
        p = make_particle(sphere3, [0, 7, 3], [0, 7, 3])
        out = dimension_wise_best_update(p, p.position, component_costs(sphere3, p.position))
        assert out.pbest_position.tolist() == [0, 7, 3] and out.pbest_total == 58

    def test_dimension_wise_tie(self):
        spec = get_objective("sphere", 2)
        p = make_particle(spec, [-1, 2], [1, 1])
        out = dimension_wise_best_update(p, p.position, component_costs(spec, p.position))
        assert out.pbest_position.tolist() == [1, 1]

    def test_rosenbrock_splice_keeps_true_total(self):
        spec = get_objective("rosenbrock", 4)
        rng = np.random.default_rng(2)
        for _ in range(200):
            p = make_particle(spec, rng.uniform(-2, 2, 4), rng.uniform(-2, 2, 4))
            counter = OpCounter()
            out = dimension_wise_best_update(p, p.position, component_costs(spec, p.position), spec, counter)
            real = component_costs(spec, out.pbest_position)
            assert out.pbest_total == real.total
            assert out.pbest_total <= p.pbest_total
            assert counter.cost_mults in (0, spec.evaluation_mults)

    def test_swarm_layout(self, sphere3):
        x = np.array([[8.0, 4, -1], [1, 1, 1]])
        pb = np.array([[0.0, 7, 3], [0, 0, 0]])
        c = component_costs(sphere3, pb)
        p = ParticleState(x, np.zeros_like(x), pb, c.components, c.total)
        out = dimension_wise_best_update(p, x, component_costs(sphere3, x))
        assert out.pbest_position.tolist() == [[0, 4, -1], [0, 0, 0]]
        assert out.pbest_total.tolist() == [17, 0]


class TestGlobalUpdates:
    def test_example(self, sphere3):
        swarm = swarm_from_positions(sphere3, [[-4, 2, 6]], dimension_wise=True)
        pb = np.array([[0.0, 4, -1]])
        c = component_costs(sphere3, pb)
        swarm.particles = ParticleState(pb.copy(), np.zeros((1, 3)), pb, c.components, c.total)
        out = dimension_wise_global_update(swarm)
        assert out.gbest_position.tolist() == [0, 2, -1]
        assert out.gbest_total == 5

    def test_unchanged_when_equal(self, sphere3):
        swarm = swarm_from_positions(sphere3, [[1, 2, 3], [1, 2, 3]], dimension_wise=True)
        before = swarm.gbest_position.copy()
        out = dimension_wise_global_update(swarm)
        assert np.array_equal(out.gbest_position, before) and out.gbest_total == 14

    def test_conventional(self, sphere3):
        swarm = swarm_from_positions(sphere3, [[0, 7, 3], [8, 4, -1], [-4, 2, 6]])
        assert swarm.gbest_position.tolist() == [-4, 2, 6] and swarm.gbest_total == 56

    def test_conventional_first_index_on_tie(self, sphere3):
        swarm = swarm_from_positions(sphere3, [[0, 0, 1], [1, 0, 0]])
        assert swarm.gbest_position.tolist() == [0, 0, 1]
        swarm.gbest_total = 1.0
        swarm.gbest_position = np.array([0.0, 1.0, 0.0])
        assert conventional_global_update(swarm).gbest_position.tolist() == [0, 1, 0]

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 6), st.integers(1, 5), st.integers(0, 2**32))
    def test_total_is_sum_of_per_dimension_minima(self, n, d, seed):
        spec = get_objective("rastrigin", d)
        pos = np.random.default_rng(seed).uniform(-5, 5, (n, d))
        swarm = swarm_from_positions(spec, pos, dimension_wise=True)
        comps = component_costs(spec, pos).components
        assert swarm.gbest_components.tolist() == comps.min(axis=0).tolist()
        assert swarm.gbest_total == pytest.approx(comps.min(axis=0).sum(), abs=1e-12)
