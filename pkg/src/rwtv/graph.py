"""Undirected graphs, node/edge signals, and total-variation primitives.

Graphs are immutable after construction. Node signals are plain float
vectors of length ``node_count``; edge signals are float vectors of length
``edge_count`` indexed by the graph's (stable) edge order.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "Graph",
    "Partition",
    "degree",
    "incidence_apply",
    "incidence_transpose_apply",
    "total_variation",
    "boundary_edges",
    "cut_size",
    "clustered_signal",
    "is_connected",
    "is_bipartite",
    "incidence_norm_sq",
]


class Graph:
    """Simple undirected graph with a fixed edge orientation.

    Edges are normalized to ``tail < head`` and stored sorted
    lexicographically by ``(tail, head)``, so edge indices are stable and
    file round trips reproduce bit-exactly. Duplicate input edges are
    collapsed; self-loops are rejected. Isolated nodes are allowed.
    """

    def __init__(self, node_count, edges):
        node_count = int(node_count)
        if node_count < 1:
            raise ValueError(f"node_count must be positive, got {node_count}")
        e = np.asarray(edges, dtype=np.int64)
        if e.size == 0:
            e = e.reshape(0, 2)
        if e.ndim != 2 or e.shape[1] != 2:
            raise ValueError("edges must be a sequence of node pairs")
        if e.size:
            if e.min() < 0 or e.max() >= node_count:
                raise ValueError("edge endpoint out of range")
            if np.any(e[:, 0] == e[:, 1]):
                raise ValueError("self-loops are not allowed")
        pairs = np.column_stack([e.min(axis=1), e.max(axis=1)])
        order = np.lexsort((pairs[:, 1], pairs[:, 0]))
        pairs = pairs[order]
        if pairs.shape[0] > 1:
            keep = np.empty(pairs.shape[0], dtype=bool)
            keep[0] = True
            keep[1:] = np.any(pairs[1:] != pairs[:-1], axis=1)
            pairs = pairs[keep]

        self.node_count = node_count
        self.edges = pairs
        self.tails = pairs[:, 0]
        self.heads = pairs[:, 1]
        self.degrees = np.bincount(pairs.ravel(), minlength=node_count)

        # neighbor lists, each sorted ascending
        src = np.concatenate([self.tails, self.heads])
        dst = np.concatenate([self.heads, self.tails])
        order = np.lexsort((dst, src))
        self.adjacency = np.split(dst[order], np.cumsum(self.degrees)[:-1])

        for arr in (self.edges, self.degrees, *self.adjacency):
            arr.setflags(write=False)

    @property
    def edge_count(self):
        return self.edges.shape[0]

    @property
    def max_degree(self):
        return int(self.degrees.max())

    def neighbors(self, i):
        return self.adjacency[_check_node(self, i)]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.node_count == other.node_count and np.array_equal(
            self.edges, other.edges
        )

    __hash__ = None

    def __repr__(self):
        return f"Graph(node_count={self.node_count}, edge_count={self.edge_count})"


class Partition:
    """Disjoint clusters covering all nodes.

    ``labels[i]`` is the cluster id of node ``i``; ids must be dense
    ``0..k-1`` with every cluster nonempty.
    """

    def __init__(self, labels):
        labels = np.asarray(labels, dtype=np.int64)
        if labels.ndim != 1 or labels.size == 0:
            raise ValueError("labels must be a nonempty 1-d sequence")
        if labels.min() < 0:
            raise ValueError("cluster ids must be nonnegative")
        k = int(labels.max()) + 1
        counts = np.bincount(labels, minlength=k)
        if np.any(counts == 0):
            empty = np.flatnonzero(counts == 0)
            raise ValueError(f"empty cluster id(s): {empty.tolist()}")
        self.labels = labels.copy()
        self.clusters = tuple(np.flatnonzero(labels == c) for c in range(k))
        self.labels.setflags(write=False)
        for arr in self.clusters:
            arr.setflags(write=False)

    @classmethod
    def from_sizes(cls, sizes):
        """Contiguous node blocks: the first ``sizes[0]`` nodes form cluster 0, etc."""
        sizes = [int(s) for s in sizes]
        if not sizes or any(s < 1 for s in sizes):
            raise ValueError("cluster sizes must be positive")
        return cls(np.repeat(np.arange(len(sizes)), sizes))

    @property
    def node_count(self):
        return self.labels.size

    @property
    def cluster_count(self):
        return len(self.clusters)

    def cluster_of(self, i):
        if not 0 <= i < self.node_count:
            raise ValueError(f"node id {i} out of range")
        return int(self.labels[i])

    def cluster_sizes(self):
        return np.array([c.size for c in self.clusters])

    def __repr__(self):
        return (
            f"Partition(node_count={self.node_count}, "
            f"cluster_count={self.cluster_count})"
        )


def _check_node(g, i):
    i = int(i)
    if not 0 <= i < g.node_count:
        raise ValueError(f"node id {i} out of range for {g.node_count} nodes")
    return i


def _check_node_signal(g, x):
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (g.node_count,):
        raise ValueError(
            f"signal has shape {x.shape}, expected ({g.node_count},)"
        )
    if not np.all(np.isfinite(x)):
        raise ValueError("signal entries must be finite")
    return x


def _check_edge_signal(g, y):
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (g.edge_count,):
        raise ValueError(
            f"edge signal has shape {y.shape}, expected ({g.edge_count},)"
        )
    if not np.all(np.isfinite(y)):
        raise ValueError("edge signal entries must be finite")
    return y


def _check_partition(g, part):
    if part.node_count != g.node_count:
        raise ValueError(
            f"partition covers {part.node_count} nodes, graph has {g.node_count}"
        )


def degree(g, i):
    """Number of neighbors of node ``i``."""
    return int(g.degrees[_check_node(g, i)])


def incidence_apply(g, x):
    """Signed edge differences ``x[head] - x[tail]`` for every edge."""
    x = _check_node_signal(g, x)
    return x[g.heads] - x[g.tails]


def incidence_transpose_apply(g, y):
    """Adjoint of :func:`incidence_apply`: accumulate edge values onto nodes.

    ``out[i] = sum(y[e] for e with head e = i) - sum(y[e] for e with tail e = i)``.
    """
    y = _check_edge_signal(g, y)
    n = g.node_count
    out = np.bincount(g.heads, weights=y, minlength=n)
    out -= np.bincount(g.tails, weights=y, minlength=n)
    return out


def total_variation(g, x):
    """Sum of absolute signal differences across edges.

    Equals the entrywise 1-norm of :func:`incidence_apply` output.
    """
    x = _check_node_signal(g, x)
    return float(np.abs(x[g.heads] - x[g.tails]).sum())


def boundary_edges(g, part):
    """Indices of edges whose endpoints lie in different clusters, ascending."""
    _check_partition(g, part)
    la = part.labels
    return np.flatnonzero(la[g.tails] != la[g.heads])


def cut_size(g, part, cluster_id):
    """Number of edges with exactly one endpoint in the given cluster."""
    _check_partition(g, part)
    cluster_id = int(cluster_id)
    if not 0 <= cluster_id < part.cluster_count:
        raise ValueError(f"unknown cluster id {cluster_id}")
    la = part.labels
    inside = la == cluster_id
    return int(np.count_nonzero(inside[g.tails] != inside[g.heads]))


def clustered_signal(part, coefficients):
    """Piecewise-constant signal: ``x[i] = coefficients[cluster_of(i)]``."""
    coefficients = np.asarray(coefficients, dtype=np.float64)
    if coefficients.shape != (part.cluster_count,):
        raise ValueError(
            f"expected {part.cluster_count} coefficients, "
            f"got shape {coefficients.shape}"
        )
    return coefficients[part.labels]


def is_connected(g):
    """True when every node is reachable from node 0."""
    seen = np.zeros(g.node_count, dtype=bool)
    seen[0] = True
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.adjacency[v]:
            if not seen[w]:
                seen[w] = True
                stack.append(int(w))
    return bool(seen.all())


def is_bipartite(g):
    """True when the nodes admit a proper 2-coloring."""
    color = np.full(g.node_count, -1, dtype=np.int8)
    for start in range(g.node_count):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.adjacency[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    stack.append(int(w))
                elif color[w] == color[v]:
                    return False
    return True


def incidence_norm_sq(g, iterations=200, seed=0):
    """Power-iteration estimate of the squared operator 2-norm of the
    incidence map (largest Laplacian eigenvalue).

    Deterministic for a given ``seed``; the estimate converges from below.
    """
    if g.edge_count == 0:
        return 0.0
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(g.node_count)
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(iterations):
        w = incidence_transpose_apply(g, incidence_apply(g, v))
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        v = w / norm
        lam = norm
    return float(lam)
