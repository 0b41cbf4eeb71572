"""Edge-list / CSV file formats and real-world subgraph extraction.

Edge lists follow the common network-dataset convention: one whitespace
separated node-id pair per line, ``#`` lines are comments, and an edge is
present if either direction appears. External node ids are remapped to
dense 0-based ids (ascending external order); the mapping is returned so
results can be written back in the original id space.

Signals, partitions, and sampling sets are small headered CSV files.
Floats are written with shortest round-trip precision, so files re-read
to bit-identical values.
"""

from __future__ import annotations

import csv
import logging

import numpy as np

from .graph import Graph, Partition
from .rng import as_generator
from .sampling import SamplingSet, random_walk

__all__ = [
    "parse_edge_list",
    "write_edge_list",
    "read_signal",
    "write_signal",
    "read_signal_rows",
    "read_partition",
    "write_partition",
    "read_sampling",
    "write_sampling",
    "extract_subgraph",
]

log = logging.getLogger(__name__)


def parse_edge_list(lines, drop_isolated=False):
    """Parse a whitespace edge list into a graph and an id mapping.

    Self-loops are dropped (with a logged count); a node whose only
    incident lines were self-loops is kept as an isolated node unless
    ``drop_isolated`` is set. Returns ``(graph, id_map)`` where ``id_map``
    maps external ids to dense internal ids.
    """
    pairs = set()
    loop_nodes = set()
    loops = 0
    for lineno, raw in enumerate(lines, 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        tokens = s.split()
        if len(tokens) != 2:
            raise ValueError(
                f"line {lineno}: expected two node ids, got {raw.rstrip()!r}"
            )
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ValueError(
                f"line {lineno}: non-integer node id in {raw.rstrip()!r}"
            ) from None
        if a < 0 or b < 0:
            raise ValueError(f"line {lineno}: negative node id")
        if a == b:
            loops += 1
            loop_nodes.add(a)
            continue
        pairs.add((min(a, b), max(a, b)))
    if loops:
        log.warning("dropped %d self-loop line(s); their nodes stay isolated", loops)

    ext_ids = {i for pair in pairs for i in pair}
    if not drop_isolated:
        ext_ids |= loop_nodes
    if not ext_ids:
        raise ValueError("empty edge list: no usable nodes")
    id_map = {ext: dense for dense, ext in enumerate(sorted(ext_ids))}
    edges = [(id_map[a], id_map[b]) for a, b in pairs]
    return Graph(len(id_map), edges), id_map


def write_edge_list(g, fh, comment=None):
    """Write one ``tail head`` line per edge, in stored (sorted) order.

    Isolated nodes are emitted as self-loop lines (``i i``), which
    :func:`parse_edge_list` turns back into isolated nodes, so graphs
    round-trip exactly.
    """
    if comment:
        for line in comment.splitlines():
            fh.write(f"# {line}\n")
    for t, h in g.edges:
        fh.write(f"{t} {h}\n")
    for i in np.flatnonzero(g.degrees == 0):
        fh.write(f"{i} {i}\n")


def _read_csv_rows(fh, expected_header):
    reader = csv.reader(fh)
    try:
        header = next(reader)
    except StopIteration:
        raise ValueError("empty file: missing header") from None
    if [h.strip() for h in header] != expected_header:
        raise ValueError(
            f"expected header {','.join(expected_header)!r}, "
            f"got {','.join(header)!r}"
        )
    return [row for row in reader if row]


def read_signal_rows(fh):
    """Raw ``(node_id, value)`` records of a signal CSV, unvalidated
    against any graph."""
    rows = _read_csv_rows(fh, ["node_id", "value"])
    ids = np.array([int(r[0]) for r in rows], dtype=np.int64)
    values = np.array([float(r[1]) for r in rows])
    return ids, values


def read_signal(fh, node_count):
    """Full node signal: every node exactly once, finite values."""
    ids, values = read_signal_rows(fh)
    if ids.size != node_count or not np.array_equal(
        np.sort(ids), np.arange(node_count)
    ):
        raise ValueError(
            f"signal file must list every node 0..{node_count - 1} exactly once"
        )
    if not np.all(np.isfinite(values)):
        raise ValueError("signal file contains non-finite values")
    x = np.empty(node_count)
    x[ids] = values
    return x


def write_signal(values, fh):
    writer = csv.writer(fh)
    writer.writerow(["node_id", "value"])
    for i, v in enumerate(values):
        writer.writerow([i, float(v)])


def read_partition(fh, node_count):
    rows = _read_csv_rows(fh, ["node_id", "cluster_id"])
    ids = np.array([int(r[0]) for r in rows], dtype=np.int64)
    raw = np.array([int(r[1]) for r in rows], dtype=np.int64)
    if ids.size != node_count or not np.array_equal(
        np.sort(ids), np.arange(node_count)
    ):
        raise ValueError(
            f"partition file must list every node 0..{node_count - 1} exactly once"
        )
    # external cluster ids may be arbitrary ints; densify in sorted order
    uniq = np.unique(raw)
    dense = {int(c): i for i, c in enumerate(uniq)}
    labels = np.empty(node_count, dtype=np.int64)
    labels[ids] = [dense[int(c)] for c in raw]
    return Partition(labels)


def write_partition(part, fh):
    writer = csv.writer(fh)
    writer.writerow(["node_id", "cluster_id"])
    for i, c in enumerate(part.labels):
        writer.writerow([i, int(c)])


def read_sampling(fh, node_count):
    rows = _read_csv_rows(fh, ["node_id"])
    ids = np.array([int(r[0]) for r in rows], dtype=np.int64)
    if ids.size == 0:
        raise ValueError("sampling file lists no nodes")
    if np.unique(ids).size != ids.size:
        raise ValueError("sampling file contains duplicate node ids")
    if ids.min() < 0 or ids.max() >= node_count:
        raise ValueError("sampling file contains unknown node ids")
    return SamplingSet(nodes=ids, budget=int(ids.size))


def write_sampling(m, fh):
    writer = csv.writer(fh)
    writer.writerow(["node_id"])
    for i in m.nodes:
        writer.writerow([int(i)])


def extract_subgraph(g, walk_length, rng):
    """Neighborhood of one random walk, as an induced subgraph.

    Runs a walk of the given length from a uniformly chosen seed and keeps
    every visited node together with all of its neighbors, plus every edge
    of ``g`` between kept nodes. Returns ``(subgraph, kept)`` where
    ``kept[new_id] = old_id``.
    """
    gen = as_generator(rng)
    seed = int(gen.integers(g.node_count))
    path = random_walk(g, seed, walk_length, gen)
    keep = np.zeros(g.node_count, dtype=bool)
    keep[path] = True
    for v in np.unique(path):
        keep[g.adjacency[v]] = True
    kept = np.flatnonzero(keep)
    new_id = np.full(g.node_count, -1, dtype=np.int64)
    new_id[kept] = np.arange(kept.size)
    mask = keep[g.tails] & keep[g.heads]
    edges = np.column_stack([new_id[g.tails[mask]], new_id[g.heads[mask]]])
    return Graph(kept.size, edges), kept
