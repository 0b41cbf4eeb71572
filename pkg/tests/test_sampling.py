import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import rwtv.sampling
from rwtv import (
    AppmSpec,
    Graph,
    Partition,
    RngSeed,
    SamplingBudgetError,
    SamplingSet,
    WalkConfig,
    check_nullspace_condition,
    cut_size,
    generate_appm,
    random_walk,
    random_walk_sampling,
    sampling_probability_estimate,
    stationary_distribution,
    uniform_sampling,
)
from strategies import graphs, partitions

BENCH = AppmSpec((10, 20, 30, 40), 0.3, 0.05)


def complete_graph(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def two_cliques_with_bridge():
    # clusters {0..3} and {4..7}, bridge (3,4)
    edges = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    edges += [(i, j) for i in range(4, 8) for j in range(i + 1, 8)]
    edges.append((3, 4))
    return Graph(8, edges), Partition([0, 0, 0, 0, 1, 1, 1, 1])


# -------------------------------------------------------------- random walks

def test_walk_on_single_node_stays_put():
    path = random_walk(Graph(1, []), 0, 5, RngSeed(0))
    assert path.tolist() == [0, 0, 0, 0, 0]


def test_walk_length_one_is_seed():
    path = random_walk(complete_graph(4), 2, 1, RngSeed(0))
    assert path.tolist() == [2]


def test_walk_steps_follow_edges():
    g = complete_graph(5)
    path = random_walk(g, 0, 50, RngSeed(1))
    for a, b in zip(path[:-1], path[1:]):
        assert b in g.adjacency[a]


def test_walk_invalid_seed():
    with pytest.raises(ValueError, match="out of range"):
        random_walk(complete_graph(3), 3, 5, RngSeed(0))
    with pytest.raises(ValueError, match="length"):
        random_walk(complete_graph(3), 0, 0, RngSeed(0))


def test_walk_visit_frequency_on_triangle():
    path = random_walk(complete_graph(3), 0, 100_000, RngSeed(5))
    freq = np.bincount(path, minlength=3) / path.size
    assert np.all(np.abs(freq - 1 / 3) <= 0.01)


def test_walk_deterministic_per_seed():
    g = complete_graph(6)
    p1 = random_walk(g, 0, 100, RngSeed(9))
    p2 = random_walk(g, 0, 100, RngSeed(9))
    assert np.array_equal(p1, p2)


# ----------------------------------------------------------- walk sampling

def test_full_budget_exhausts_nodes():
    m = random_walk_sampling(complete_graph(3), WalkConfig(4, 3), RngSeed(0))
    assert m.nodes.tolist() == [0, 1, 2]
    assert m.budget == 3


def test_budget_one_singleton():
    m = random_walk_sampling(complete_graph(5), WalkConfig(3, 1), RngSeed(0))
    assert len(m) == 1


def test_budget_above_node_count_rejected():
    with pytest.raises(ValueError, match="budget"):
        random_walk_sampling(complete_graph(3), WalkConfig(4, 4), RngSeed(0))


def test_walk_sampling_deterministic():
    g, _ = generate_appm(BENCH, RngSeed(3))
    m1 = random_walk_sampling(g, WalkConfig(10, 30), RngSeed(11))
    m2 = random_walk_sampling(g, WalkConfig(10, 30), RngSeed(11))
    assert np.array_equal(m1.nodes, m2.nodes)


def test_unreachable_budget_raises(monkeypatch):
    # force every walk to the same endpoint so a budget of 2 can never fill
    monkeypatch.setattr(
        rwtv.sampling,
        "random_walk",
        lambda g, seed, length, rng: np.zeros(length, dtype=np.int64),
    )
    with pytest.raises(SamplingBudgetError, match="unreachable"):
        random_walk_sampling(complete_graph(4), WalkConfig(3, 2), RngSeed(0))


def test_per_cluster_counts_track_cut_sizes():
    # endpoints should concentrate where the cut (hence degree mass) is larger
    master = RngSeed(21)
    trials = 300
    counts = np.zeros(4)
    cuts = np.zeros(4)
    for t in range(trials):
        gen = master.substream(t).generator()
        g, part = generate_appm(BENCH, gen)
        m = random_walk_sampling(g, WalkConfig(10, 50), gen)
        counts += np.bincount(part.labels[m.nodes], minlength=4)
        cuts += [cut_size(g, part, c) for c in range(4)]
    r = np.corrcoef(counts, cuts)[0, 1]
    assert r >= 0.9


# --------------------------------------------------------- uniform sampling

def test_uniform_full_budget():
    m = uniform_sampling(complete_graph(4), 4, RngSeed(0))
    assert m.nodes.tolist() == [0, 1, 2, 3]


def test_uniform_zero_budget_rejected():
    with pytest.raises(ValueError, match="budget"):
        uniform_sampling(complete_graph(4), 0, RngSeed(0))
    with pytest.raises(ValueError):
        WalkConfig(5, 0)


def test_uniform_deterministic():
    g = complete_graph(30)
    m1 = uniform_sampling(g, 10, RngSeed(4))
    m2 = uniform_sampling(g, 10, RngSeed(4))
    assert np.array_equal(m1.nodes, m2.nodes)
    assert len(m1) == 10


# --------------------------------------------------- stationary distribution

def test_stationary_uniform_on_complete_graph():
    pi = stationary_distribution(complete_graph(5))
    assert pi == pytest.approx(np.full(5, 0.2))


def test_stationary_star():
    g = Graph(4, [(0, 1), (0, 2), (0, 3)])
    assert stationary_distribution(g).tolist() == [0.5, 1 / 6, 1 / 6, 1 / 6]


@given(graphs(min_edges=1))
def test_stationary_sums_to_one(g):
    assert stationary_distribution(g).sum() == pytest.approx(1.0)


def test_stationary_edgeless_rejected():
    with pytest.raises(ValueError, match="edgeless"):
        stationary_distribution(Graph(3, []))


# ------------------------------------------------------- nullspace condition

def brute_force_violations(g, part, m):
    """Naive triple-loop recount of the per-endpoint neighbor condition."""
    sampled = set(int(v) for v in m.nodes)
    out = []
    for e in range(g.edge_count):
        i, j = (int(v) for v in g.edges[e])
        if part.labels[i] == part.labels[j]:
            continue
        for node in (i, j):
            achieved = 0
            for v in range(g.node_count):
                if (
                    v in sampled
                    and part.labels[v] == part.labels[node]
                    and any(int(w) == v for w in g.adjacency[node])
                ):
                    achieved += 1
            if achieved < 2:
                out.append((e, node, int(part.labels[node]), achieved))
    return out


def test_single_cluster_vacuously_satisfied():
    g = complete_graph(4)
    m = SamplingSet(nodes=np.array([0]), budget=1)
    report = check_nullspace_condition(g, Partition([0] * 4), m)
    assert report.satisfied and report.violations == ()


def test_bridge_example_satisfied():
    g, part = two_cliques_with_bridge()
    m = SamplingSet(nodes=np.array([0, 1, 5, 6]), budget=4)
    assert check_nullspace_condition(g, part, m).satisfied


def test_bridge_example_violated_with_achieved_count():
    g, part = two_cliques_with_bridge()
    m = SamplingSet(nodes=np.array([0, 1, 5]), budget=3)
    report = check_nullspace_condition(g, part, m)
    assert not report.satisfied
    assert len(report.violations) == 1
    v = report.violations[0]
    assert (v.node, v.cluster, v.achieved) == (4, 1, 1)
    assert g.edges[v.edge].tolist() == [3, 4]


def test_unknown_sample_nodes_rejected():
    g, part = two_cliques_with_bridge()
    m = SamplingSet(nodes=np.array([0, 99]), budget=2)
    with pytest.raises(ValueError, match="unknown"):
        check_nullspace_condition(g, part, m)


def test_matches_brute_force_on_random_instances():
    master = RngSeed(31)
    for t in range(40):
        gen = master.substream(t).generator()
        n = int(gen.integers(4, 31))
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        mask = gen.random(len(pairs)) < 0.2
        g = Graph(n, [p for p, keep in zip(pairs, mask) if keep])
        raw = gen.integers(0, 3, n)
        _, labels = np.unique(raw, return_inverse=True)
        part = Partition(labels)
        budget = int(gen.integers(1, n + 1))
        m = uniform_sampling(g, budget, gen)
        report = check_nullspace_condition(g, part, m)
        expected = brute_force_violations(g, part, m)
        got = [(v.edge, v.node, v.cluster, v.achieved) for v in report.violations]
        assert got == expected
        assert report.satisfied == (not expected)


@settings(max_examples=40)
@given(graphs(min_nodes=3, max_nodes=10), st.data())
def test_adding_samples_never_breaks_satisfied(g, data):
    part = data.draw(partitions(g.node_count))
    base = data.draw(
        st.sets(st.integers(0, g.node_count - 1), min_size=1)
    )
    extra = data.draw(st.sets(st.integers(0, g.node_count - 1)))
    m = SamplingSet(nodes=np.array(sorted(base)), budget=len(base))
    if check_nullspace_condition(g, part, m).satisfied:
        grown = sorted(base | extra)
        m2 = SamplingSet(nodes=np.array(grown), budget=len(grown))
        assert check_nullspace_condition(g, part, m2).satisfied


# ------------------------------------------------- model sampling probability

def test_single_cluster_probability_is_uniform():
    spec = AppmSpec((20,), 0.4, 0.0)
    assert sampling_probability_estimate(spec, 0) == pytest.approx(1 / 20)


def test_probability_increases_with_cluster_size():
    probs = [sampling_probability_estimate(BENCH, c) for c in range(4)]
    assert all(a < b for a, b in zip(probs, probs[1:]))


def test_probabilities_weighted_by_sizes_sum_to_one():
    total = sum(
        sampling_probability_estimate(BENCH, c) * BENCH.cluster_sizes[c]
        for c in range(4)
    )
    assert total == pytest.approx(1.0, rel=1e-12)


def test_degenerate_spec_rejected():
    with pytest.raises(ValueError, match="degenerate"):
        sampling_probability_estimate(AppmSpec((5, 5), 0.0, 0.0), 0)
