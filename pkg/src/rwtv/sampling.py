"""Sampling-set construction via random walks, plus baselines and checks.

A walk-based sampling set collects the endpoints of independent fixed-length
random walks started at uniformly chosen seed nodes. Long walks land on a
node with probability proportional to its degree, so clusters with larger
cut size get sampled more densely; :func:`check_nullspace_condition` tests
the combinatorial condition under which exact recovery by total-variation
minimization is guaranteed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import _check_node, _check_partition, boundary_edges
from .rng import as_generator

__all__ = [
    "SamplingBudgetError",
    "WalkConfig",
    "SamplingSet",
    "NullspaceViolation",
    "NullspaceReport",
    "random_walk",
    "random_walk_sampling",
    "uniform_sampling",
    "stationary_distribution",
    "check_nullspace_condition",
    "sampling_probability_estimate",
]


class SamplingBudgetError(RuntimeError):
    """Repeated walks failed to produce enough distinct endpoints."""


@dataclass(frozen=True)
class WalkConfig:
    """Walk length and sampling budget for walk-based set construction."""

    length: int
    budget: int

    def __post_init__(self):
        if int(self.length) < 1:
            raise ValueError(f"walk length must be >= 1, got {self.length}")
        if int(self.budget) < 1:
            raise ValueError(f"sampling budget must be >= 1, got {self.budget}")
        object.__setattr__(self, "length", int(self.length))
        object.__setattr__(self, "budget", int(self.budget))


@dataclass(frozen=True, eq=False)
class SamplingSet:
    """Distinct sampled node ids (sorted) plus the requested budget."""

    nodes: np.ndarray
    budget: int

    def __post_init__(self):
        nodes = np.unique(np.asarray(self.nodes, dtype=np.int64))
        if nodes.size != np.asarray(self.nodes).size:
            raise ValueError("sampling set nodes must be distinct")
        if nodes.size and nodes[0] < 0:
            raise ValueError("node ids must be nonnegative")
        if nodes.size > int(self.budget):
            raise ValueError(
                f"{nodes.size} nodes exceed the budget of {self.budget}"
            )
        nodes.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "budget", int(self.budget))

    def __len__(self):
        return int(self.nodes.size)

    def mask(self, node_count):
        """Boolean membership mask of length ``node_count``."""
        if self.nodes.size and self.nodes[-1] >= node_count:
            raise ValueError("sampling set contains unknown nodes")
        m = np.zeros(node_count, dtype=bool)
        m[self.nodes] = True
        return m


@dataclass(frozen=True)
class NullspaceViolation:
    """One failed neighbor count at a boundary edge endpoint."""

    edge: int
    node: int
    cluster: int
    achieved: int


@dataclass(frozen=True)
class NullspaceReport:
    """Outcome of the recovery-condition check over all boundary edges."""

    satisfied: bool
    violations: tuple[NullspaceViolation, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.satisfied != (len(self.violations) == 0):
            raise ValueError("satisfied flag inconsistent with violations")


def random_walk(g, seed_node, length, rng):
    """Simple random walk: uniform neighbor steps, staying put on degree-0 nodes.

    Returns the visited node ids as an int array of exactly ``length``
    entries, the first being ``seed_node``.
    """
    v = _check_node(g, seed_node)
    length = int(length)
    if length < 1:
        raise ValueError(f"walk length must be >= 1, got {length}")
    gen = as_generator(rng)
    path = np.empty(length, dtype=np.int64)
    path[0] = v
    if length == 1:
        return path
    u = gen.random(length - 1)
    adj = g.adjacency
    for t in range(1, length):
        nb = adj[v]
        if nb.size:
            # u < 1, but u * size can still round up to size at the last
            # representable double; clamp so the index stays valid
            idx = min(int(u[t - 1] * nb.size), nb.size - 1)
            v = int(nb[idx])
        path[t] = v
    return path


def random_walk_sampling(g, cfg, rng):
    """Collect a sampling set from endpoints of repeated random walks.

    Each walk starts at a uniformly drawn seed node and contributes its
    final node. Walks repeat until ``cfg.budget`` distinct nodes have been
    collected; after ``100 * budget`` walks without success a
    :class:`SamplingBudgetError` is raised.
    """
    if cfg.budget > g.node_count:
        raise ValueError(
            f"budget {cfg.budget} exceeds node count {g.node_count}"
        )
    gen = as_generator(rng)
    chosen = set()
    walks = 0
    cap = 100 * cfg.budget
    while len(chosen) < cfg.budget:
        if walks >= cap:
            raise SamplingBudgetError(
                f"sampling budget unreachable: {len(chosen)}/{cfg.budget} "
                f"distinct endpoints after {walks} walks"
            )
        seed = int(gen.integers(g.node_count))
        path = random_walk(g, seed, cfg.length, gen)
        chosen.add(int(path[-1]))
        walks += 1
    return SamplingSet(nodes=np.fromiter(chosen, np.int64), budget=cfg.budget)


def uniform_sampling(g, budget, rng):
    """Baseline: ``budget`` distinct nodes drawn uniformly without replacement."""
    budget = int(budget)
    if budget < 1:
        raise ValueError(f"sampling budget must be >= 1, got {budget}")
    if budget > g.node_count:
        raise ValueError(f"budget {budget} exceeds node count {g.node_count}")
    gen = as_generator(rng)
    nodes = gen.choice(g.node_count, size=budget, replace=False)
    return SamplingSet(nodes=nodes, budget=budget)


def stationary_distribution(g):
    """Long-run visit probabilities of the walk: degree over twice the edge count."""
    if g.edge_count == 0:
        raise ValueError("stationary distribution undefined on an edgeless graph")
    return g.degrees / (2.0 * g.edge_count)


def check_nullspace_condition(g, part, m):
    """Verify the exact-recovery condition on a sampling set.

    For every boundary edge, each endpoint must have at least two sampled
    neighbors inside its own cluster. Every failed count is reported; the
    condition holds vacuously when there are no boundary edges.
    """
    _check_partition(g, part)
    sampled = m.mask(g.node_count)
    la = part.labels
    tails, heads = g.tails, g.heads
    n = g.node_count

    # per node: number of sampled neighbors sharing its cluster
    same = la[tails] == la[heads]
    t, h = tails[same], heads[same]
    count = np.bincount(t[sampled[h]], minlength=n) + np.bincount(
        h[sampled[t]], minlength=n
    )

    violations = []
    for e in boundary_edges(g, part):
        for node in (int(tails[e]), int(heads[e])):
            if count[node] < 2:
                violations.append(
                    NullspaceViolation(
                        edge=int(e),
                        node=node,
                        cluster=int(la[node]),
                        achieved=int(count[node]),
                    )
                )
    return NullspaceReport(
        satisfied=not violations, violations=tuple(violations)
    )


def sampling_probability_estimate(spec, cluster_id):
    """Model-level estimate of the long-walk endpoint probability for one node
    of the given cluster: expected degree over twice the expected edge count.
    """
    r = spec._check_cluster(cluster_id)
    sizes = np.asarray(spec.cluster_sizes, dtype=np.float64)
    n = spec.node_count
    expected_edges = (
        spec.p_intra * float(np.sum(sizes * (sizes - 1))) / 2.0
        + spec.q_inter * (n * n - float(np.sum(sizes * sizes))) / 2.0
    )
    if expected_edges <= 0.0:
        raise ValueError("degenerate model: expected edge count is zero")
    n_r = spec.cluster_sizes[r]
    mean_degree = spec.p_intra * (n_r - 1) + spec.q_inter * (n - n_r)
    return mean_degree / (2.0 * expected_edges)
