import math
import random

import numpy as np
import pytest

from permflow import (
    MAX_STEP,
    Permutation,
    active_ties,
    flow_state,
    integrate_projected,
    project_velocity,
    vertex_of,
)


class TestActiveTies:
    def test_all_equal_is_one_block(self):
        assert active_ties([2.0, 2.0, 2.0]).blocks == ((1, 2, 3),)

    def test_strict_order_is_singletons(self):
        assert active_ties([1.0, 2.0, 3.0]).blocks == ((1,), (2,), (3,))

    def test_partial_tie(self):
        assert active_ties([2.0, 2.0, 3.0]).blocks == ((1, 2), (3,))

    def test_blocks_partition_all_indices(self):
        rng = random.Random(5)
        for _ in range(50):
            x = [rng.choice([1.0, 1.0, 2.0, 3.5]) for _ in range(6)]
            ties = active_ties(x)
            flat = sorted(i for block in ties.blocks for i in block)
            assert flat == list(range(1, 7))

    def test_transitive_chaining(self):
        # consecutive gaps within tol chain into one block even though the
        # extremes differ by more than tol
        x = [1.0, 1.0 + 1e-10, 1.0 + 2e-10, 2.0]
        ties = active_ties(x, tol=1.5e-10)
        assert ties.blocks == ((1, 2, 3), (4,))

    def test_grouping_ignores_position(self):
        assert active_ties([3.0, 1.0, 3.0]).blocks == ((2,), (1, 3))

    def test_tol_must_be_positive(self):
        with pytest.raises(ValueError):
            active_ties([1.0, 2.0], tol=0.0)

    def test_nontrivial_filter(self):
        ties = active_ties([2.0, 2.0, 3.0])
        assert ties.nontrivial == ((1, 2),)


class TestProjectVelocity:
    def test_no_ties_passes_through(self):
        x = [1.0, 2.0, 3.0]
        g = [0.5, 0.25, -0.75]
        assert np.allclose(project_velocity(x, g), g)

    def test_order_preserving_velocity_untouched(self):
        # within the block the components already increase with the index
        p = project_velocity([2.0, 2.0, 2.0], [-1.0, 0.0, 1.0])
        assert np.allclose(p, [-1.0, 0.0, 1.0])

    def test_violating_pair_pools_to_average(self):
        p = project_velocity([2.0, 2.0, 3.0], [0.5, -0.5, 0.0])
        assert np.allclose(p, [0.0, 0.0, 0.0])

    def test_pooling_is_blockwise(self):
        # two separate ties; only the violating one pools
        x = [1.0, 1.0, 4.0, 4.0]
        g = [-0.5, 0.5, 1.0, -1.0]
        p = project_velocity(x, g)
        assert np.allclose(p, [-0.5, 0.5, 0.0, 0.0])

    def test_block_sum_preserved(self):
        rng = random.Random(11)
        for _ in range(100):
            x = sorted(rng.choice([1.0, 1.0, 2.0, 2.0, 5.0]) for _ in range(5))
            g = np.array([rng.uniform(-1, 1) for _ in range(5)])
            g -= g.mean()
            p = project_velocity(x, g)
            for block in active_ties(x).blocks:
                idx = np.array(block) - 1
                assert math.isclose(float(p[idx].sum()), float(g[idx].sum()), abs_tol=1e-12)

    def test_projection_identity_and_idempotence(self):
        # <g, p> = |p|^2 and projecting twice changes nothing
        rng = random.Random(23)
        for _ in range(200):
            x = [rng.choice([1.0, 1.0, 1.0, 3.0, 3.0]) for _ in range(5)]
            g = np.array([rng.uniform(-2, 2) for _ in range(5)])
            g -= g.mean()
            ties = active_ties(x)
            p = project_velocity(x, g, ties)
            assert math.isclose(float(np.dot(g, p)), float(np.dot(p, p)), abs_tol=1e-10)
            assert np.allclose(project_velocity(x, p, ties), p, atol=1e-12)

    def test_pooled_components_non_decreasing(self):
        rng = random.Random(37)
        for _ in range(100):
            x = [2.0] * 6
            g = np.array([rng.uniform(-1, 1) for _ in range(6)])
            g -= g.mean()
            p = project_velocity(x, g)
            assert all(p[k] <= p[k + 1] + 1e-12 for k in range(5))

    def test_rejects_non_tangent_velocity(self):
        with pytest.raises(ValueError):
            project_velocity([1.0, 2.0, 3.0], [1.0, 1.0, 1.0])

    def test_rejects_dimension_mismatch(self):
        with pytest.raises(ValueError):
            project_velocity([1.0, 2.0, 3.0], [0.5, -0.5])


class TestIntegrateProjected:
    def test_decay_bound_from_vertices(self):
        rng = random.Random(41)
        for n in range(3, 8):
            for _ in range(4):
                ranks = list(range(1, n + 1))
                rng.shuffle(ranks)
                trace = integrate_projected(vertex_of(Permutation.of(ranks)), 3.0)
                v0 = trace.samples[0].potential
                for s in trace.samples:
                    assert s.potential <= v0 * math.exp(-2 * s.t) * (1 + 1e-6)

    def test_decay_bound_from_tied_boundary_points(self):
        for x0 in [
            [1.5, 1.5, 3.0],
            [2.0, 2.0, 2.0],
            [1.0, 2.5, 2.5, 4.0],
            [2.5, 2.5, 2.5, 2.5],
            [1.0, 2.0, 4.5, 4.5, 3.0],
        ]:
            trace = integrate_projected(x0, 4.0)
            v0 = trace.samples[0].potential
            for s in trace.samples:
                assert s.potential <= v0 * math.exp(-2 * s.t) * (1 + 1e-6)

    def test_potential_is_monotone(self):
        trace = integrate_projected(vertex_of(Permutation.reverse(5)), 2.0)
        pots = trace.potentials
        assert all(b <= a for a, b in zip(pots, pots[1:]))

    def test_converges_to_sorted_vertex(self):
        trace = integrate_projected([3.0, 2.0, 1.0], 10.0, step=1e-3)
        assert np.allclose(trace.final.coords, [1.0, 2.0, 3.0], atol=1e-3)

    def test_sorted_start_stays_put(self):
        trace = integrate_projected([1.0, 2.0, 3.0], 2.0)
        assert all(s.potential == 0.0 for s in trace.samples)
        assert np.allclose(trace.final.coords, [1.0, 2.0, 3.0])

    def test_barycenter_descends_on_schedule(self):
        trace = integrate_projected([2.0, 2.0, 2.0], 6.0)
        v0 = trace.samples[0].potential
        assert v0 == 1.0  # half of (1 + 0 + 1)
        for s in trace.samples:
            assert s.potential <= v0 * math.exp(-2 * s.t) * (1 + 1e-6)
        assert np.allclose(trace.final.coords, [1.0, 2.0, 3.0], atol=1e-2)

    def test_coordinate_sum_is_conserved(self):
        trace = integrate_projected(vertex_of(Permutation.reverse(6)), 5.0)
        total0 = float(trace.samples[0].state.coords.sum())
        for s in trace.samples:
            assert abs(float(s.state.coords.sum()) - total0) <= 1e-6

    def test_matches_closed_form_without_ties(self):
        # no two coordinates ever tie along this start, so the Euler path
        # must shadow the exact flow to first order in the step
        x0 = vertex_of(Permutation.of((2, 1, 3, 4)))
        step = 1e-3
        trace = integrate_projected(x0, 1.0, step=step)
        for s in trace.samples[:: 100]:
            exact = flow_state(x0, s.t)
            assert np.allclose(s.state.coords, exact.coords, atol=10 * step)

    def test_active_block_count_recorded(self):
        trace = integrate_projected([2.0, 2.0, 2.0], 0.05)
        assert trace.samples[0].active_block_count == 1
        assert trace.samples[-1].active_block_count == 0

    def test_step_guard(self):
        with pytest.raises(ValueError):
            integrate_projected([3.0, 2.0, 1.0], 1.0, step=2 * MAX_STEP)
        with pytest.raises(ValueError):
            integrate_projected([3.0, 2.0, 1.0], 1.0, step=0.0)
        with pytest.raises(ValueError):
            integrate_projected([3.0, 2.0, 1.0], 0.0)

    def test_lands_exactly_on_t_end(self):
        trace = integrate_projected([3.0, 2.0, 1.0], 0.025, step=0.01)
        assert trace.samples[-1].t == 0.025
        assert len(trace.samples) == 4  # t = 0, 0.01, 0.02, 0.025
