import io
import logging

import numpy as np
import pytest

from rwtv import Graph, Partition, RngSeed, SamplingSet
from rwtv.fileio import (
    extract_subgraph,
    parse_edge_list,
    read_partition,
    read_sampling,
    read_signal,
    read_signal_rows,
    write_edge_list,
    write_partition,
    write_sampling,
    write_signal,
)


def parse(text, **kwargs):
    return parse_edge_list(io.StringIO(text), **kwargs)


# -------------------------------------------------------------------- parsing

def test_parse_symmetrizes_and_dedups():
    g, id_map = parse("0 1\n1 0\n")
    assert g.edge_count == 1
    assert g.edges.tolist() == [[0, 1]]
    assert id_map == {0: 0, 1: 1}


def test_parse_ignores_comments_and_blank_lines():
    g, _ = parse("# a comment\n\n0 1\n")
    assert g.edge_count == 1


def test_parse_remaps_external_ids_densely():
    g, id_map = parse("5 900\n900 7\n")
    assert id_map == {5: 0, 7: 1, 900: 2}
    assert g.node_count == 3
    assert g.edges.tolist() == [[0, 2], [1, 2]]


def test_parse_malformed_line_reports_number():
    with pytest.raises(ValueError, match="line 2"):
        parse("0 1\n0 1 2\n")
    with pytest.raises(ValueError, match="line 1"):
        parse("zero one\n")
    with pytest.raises(ValueError, match="negative"):
        parse("-1 2\n")


def test_parse_empty_file_rejected():
    with pytest.raises(ValueError, match="empty"):
        parse("")
    with pytest.raises(ValueError, match="empty"):
        parse("# only a comment\n")


def test_parse_drops_self_loops_with_warning(caplog):
    with caplog.at_level(logging.WARNING):
        g, id_map = parse("0 1\n2 2\n")
    assert "self-loop" in caplog.text
    assert g.node_count == 3  # node 2 kept as isolated
    assert g.degrees[id_map[2]] == 0


def test_parse_drop_isolated_flag():
    g, id_map = parse("0 1\n2 2\n", drop_isolated=True)
    assert g.node_count == 2
    assert 2 not in id_map


# ---------------------------------------------------------------- round trips

def roundtrip_graph(g):
    buf = io.StringIO()
    write_edge_list(g, buf)
    buf.seek(0)
    g2, _ = parse_edge_list(buf)
    return g2


def test_graph_round_trip():
    g = Graph(5, [(0, 1), (1, 2), (0, 4), (2, 4)])
    assert roundtrip_graph(g) == g


def test_graph_round_trip_keeps_isolated_nodes():
    g = Graph(4, [(0, 1)])  # nodes 2, 3 isolated
    g2 = roundtrip_graph(g)
    assert g2 == g
    assert g2.degrees.tolist() == [1, 1, 0, 0]


def test_signal_round_trip_is_exact():
    values = np.array([0.1, 1 / 3, -0.0, 1e-300, 12345.6789, 5e307])
    buf = io.StringIO()
    write_signal(values, buf)
    buf.seek(0)
    back = read_signal(buf, len(values))
    assert np.array_equal(back, values)


def test_read_signal_requires_every_node_once():
    with pytest.raises(ValueError, match="exactly once"):
        read_signal(io.StringIO("node_id,value\n0,1.0\n0,2.0\n"), 2)
    with pytest.raises(ValueError, match="exactly once"):
        read_signal(io.StringIO("node_id,value\n0,1.0\n"), 2)


def test_read_signal_rejects_non_finite():
    with pytest.raises(ValueError, match="finite"):
        read_signal(io.StringIO("node_id,value\n0,nan\n1,1.0\n"), 2)


def test_read_signal_rejects_wrong_header():
    with pytest.raises(ValueError, match="header"):
        read_signal(io.StringIO("id,val\n0,1.0\n"), 1)


def test_read_signal_rows_partial():
    ids, values = read_signal_rows(io.StringIO("node_id,value\n7,1.5\n3,2.5\n"))
    assert ids.tolist() == [7, 3]
    assert values.tolist() == [1.5, 2.5]


def test_partition_round_trip():
    part = Partition([0, 1, 1, 0, 2])
    buf = io.StringIO()
    write_partition(part, buf)
    buf.seek(0)
    back = read_partition(buf, 5)
    assert np.array_equal(back.labels, part.labels)


def test_read_partition_densifies_sparse_cluster_ids():
    text = "node_id,cluster_id\n0,10\n1,-3\n2,10\n"
    part = read_partition(io.StringIO(text), 3)
    assert part.labels.tolist() == [1, 0, 1]


def test_sampling_round_trip():
    m = SamplingSet(nodes=np.array([4, 1, 9]), budget=3)
    buf = io.StringIO()
    write_sampling(m, buf)
    buf.seek(0)
    back = read_sampling(buf, 10)
    assert back.nodes.tolist() == [1, 4, 9]
    assert back.budget == 3


def test_read_sampling_validation():
    with pytest.raises(ValueError, match="duplicate"):
        read_sampling(io.StringIO("node_id\n1\n1\n"), 5)
    with pytest.raises(ValueError, match="unknown"):
        read_sampling(io.StringIO("node_id\n7\n"), 5)
    with pytest.raises(ValueError, match="no nodes"):
        read_sampling(io.StringIO("node_id\n"), 5)


# ----------------------------------------------------------- subgraph extract

def test_extract_subgraph_k3_is_whole_graph():
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    sub, kept = extract_subgraph(g, 3, RngSeed(0))
    assert sub == g
    assert kept.tolist() == [0, 1, 2]


def test_extract_subgraph_star_is_whole_graph():
    # any visited node drags in the center, whose neighbors are everyone
    g = Graph(6, [(0, i) for i in range(1, 6)])
    for seed in range(5):
        sub, _ = extract_subgraph(g, 2, RngSeed(seed))
        assert sub == g


def test_extract_subgraph_keeps_only_walk_component():
    g = Graph(4, [(0, 1), (2, 3)])
    sub, kept = extract_subgraph(g, 1, RngSeed(1))
    assert sub.node_count == 2
    assert sub.edge_count == 1
    assert kept.tolist() in ([0, 1], [2, 3])


def test_extract_subgraph_is_induced():
    gen = RngSeed(42).generator()
    n = 30
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = gen.random(len(pairs)) < 0.1
    g = Graph(n, [p for p, keep in zip(pairs, mask) if keep])
    sub, kept = extract_subgraph(g, 4, gen)
    g_edges = {(int(t), int(h)) for t, h in g.edges}
    kept_set = set(kept.tolist())
    # every edge of g between kept nodes appears, mapped; nothing else does
    expected = {
        (int(a), int(b))
        for a, b in (
            sorted((np.searchsorted(kept, t), np.searchsorted(kept, h)))
            for t, h in g_edges
            if t in kept_set and h in kept_set
        )
    }
    got = {(int(t), int(h)) for t, h in sub.edges}
    assert got == expected
