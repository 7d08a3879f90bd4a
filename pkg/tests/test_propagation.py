import math

import numpy as np
import pytest

from spreadrank.config import RunConfig
from spreadrank.errors import CapacityError, ValidationError
from spreadrank.graph import Network, apply_wcs
from spreadrank.propagation import (cascade_sizes, exact_spread, simulate_ic,
                                    spread_all, SpreadEstimate)

from oracles import bf_exact_spread, random_sparse_digraph


def cfg(runs=4000, seed=11):
    return RunConfig(runs=runs, master_seed=seed)


class TestSimulateIC:
    def test_isolated_seed(self):
        net = Network.from_edges(2, [(1, 0, 0.5)])
        mean, err = simulate_ic(net, 0, cfg(runs=100))
        assert mean == 1.0
        assert err == 0.0

    def test_deterministic_path(self):
        net = Network.from_edges(2, [(0, 1, 1.0)])
        mean, err = simulate_ic(net, 0, cfg(runs=100))
        assert mean == 2.0
        assert err == 0.0

    def test_two_branches_half(self):
        net = Network.from_edges(3, [(0, 1, 0.5), (0, 2, 0.5)])
        mean, err = simulate_ic(net, 0, cfg(runs=20000))
        assert err > 0
        assert abs(mean - 2.0) < 3 * err

    def test_rejects_probability_above_one(self):
        net = Network.from_edges(2, [(0, 1, 1.5)])
        with pytest.raises(ValidationError, match="probabilities"):
            simulate_ic(net, 0, cfg())

    def test_rejects_single_run(self):
        net = Network.from_edges(2, [(0, 1, 0.5)])
        with pytest.raises(ValidationError, match="runs"):
            simulate_ic(net, 0, RunConfig(runs=1))

    def test_bit_identical_reruns(self):
        net = apply_wcs(Network.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3), (3, 0)]))
        a = simulate_ic(net, 0, cfg(runs=5000, seed=42))
        b = simulate_ic(net, 0, cfg(runs=5000, seed=42))
        assert a == b

    def test_run_streams_are_prefix_stable(self):
        # run r's draws may not depend on the total number of runs requested
        net = apply_wcs(Network.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)]))
        short = cascade_sizes(net, 0, 5000, 9)
        long = cascade_sizes(net, 0, 9000, 9)
        assert np.array_equal(short, long[:5000])

    def test_seed_streams_independent_of_other_nodes(self):
        net = apply_wcs(Network.from_edges(3, [(0, 1), (1, 2), (2, 0)]))
        alone = cascade_sizes(net, 1, 3000, 123)
        again = cascade_sizes(net, 1, 3000, 123)
        assert np.array_equal(alone, again)


class TestExactSpread:
    def test_isolated(self):
        net = Network.from_edges(1, [])
        assert exact_spread(net, 0) == 1.0

    def test_single_edge(self):
        net = Network.from_edges(2, [(0, 1, 0.3)])
        assert math.isclose(exact_spread(net, 0), 1.3, rel_tol=0, abs_tol=1e-12)

    def test_chain(self):
        net = Network.from_edges(3, [(0, 1, 0.5), (1, 2, 0.5)])
        assert math.isclose(exact_spread(net, 0), 1.75, abs_tol=1e-12)

    def test_capacity_limit(self):
        edges = [(0, v, 0.5) for v in range(1, 22)]
        net = Network.from_edges(22, edges)
        with pytest.raises(CapacityError):
            exact_spread(net, 0)

    def test_matches_independent_enumeration(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            n, edges = random_sparse_digraph(rng, max_edges=8, max_n=6)
            weighted = [(u, v, float(rng.uniform(0.1, 1.0))) for u, v in edges]
            net = Network.from_edges(n, weighted)
            seed = int(rng.integers(0, n))
            assert math.isclose(exact_spread(net, seed),
                                bf_exact_spread(n, weighted, seed), abs_tol=1e-10)

    def test_monotone_in_edge_probability(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            n, edges = random_sparse_digraph(rng, max_edges=8, max_n=6)
            weighted = [(u, v, float(rng.uniform(0.1, 0.8))) for u, v in edges]
            net = Network.from_edges(n, weighted)
            seed = int(rng.integers(0, n))
            base = exact_spread(net, seed)
            bump = int(rng.integers(0, len(weighted)))
            raised = [(u, v, min(1.0, w + 0.15) if j == bump else w)
                      for j, (u, v, w) in enumerate(weighted)]
            assert exact_spread(Network.from_edges(n, raised), seed) >= base - 1e-12


class TestSpreadAll:
    def test_two_node_deterministic(self):
        net = Network.from_edges(2, [(0, 1, 1.0)])
        est = spread_all(net, cfg(runs=50))
        assert est.values.tolist() == [2.0, 1.0]

    def test_seed_always_counted(self):
        net = apply_wcs(Network.from_edges(5, [(0, 1), (1, 2), (3, 2), (4, 0)]))
        est = spread_all(net, cfg(runs=200))
        assert np.all(est.values >= 1.0)

    def test_triangle_matches_exact_within_error(self):
        net = apply_wcs(Network.from_edges(3, [(0, 1), (1, 2), (2, 0),
                                               (1, 0), (2, 1), (0, 2)]))
        est = spread_all(net, cfg(runs=20000, seed=5))
        for u in range(3):
            exact = exact_spread(net, u)
            assert abs(est.values[u] - exact) <= 3 * max(est.std_error[u], 1e-9)

    def test_progress_callback(self):
        net = Network.from_edges(2, [(0, 1, 1.0)])
        seen = []
        spread_all(net, cfg(runs=10), progress=lambda done, total: seen.append((done, total)))
        assert seen == [(1, 2), (2, 2)]

    def test_estimate_validation(self):
        with pytest.raises(ValidationError):
            SpreadEstimate(np.array([0.5]), np.array([0.0]), runs=10, master_seed=0)
        with pytest.raises(ValidationError):
            SpreadEstimate(np.array([1.5]), np.array([0.1]), runs=1, master_seed=0)
