#!/usr/bin/env python3
"""Regenerate the bundled co-purchase-style test fixture.

Produces a 1000-node planted-partition edge list with scrambled external
node ids (so ingestion has to remap them) plus a ratings-like clustered
signal keyed by the same external ids. Deterministic; the outputs are
committed under tests/data/.
"""

import argparse
from pathlib import Path

import numpy as np

from rwtv import AppmSpec, RngSeed, clustered_signal, generate_appm

FIXTURE_SPEC = AppmSpec(cluster_sizes=(100,) * 10, p_intra=0.05, q_inter=0.002)
FIXTURE_SEED = RngSeed(20240817)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out-dir",
        default=Path(__file__).resolve().parent.parent / "tests" / "data",
        type=Path,
    )
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    gen = FIXTURE_SEED.generator()
    g, part = generate_appm(FIXTURE_SPEC, gen)
    ratings = clustered_signal(part, 1.0 + 4.0 * gen.random(part.cluster_count))

    # scrambled, non-contiguous external ids
    perm = gen.permutation(g.node_count)
    ext = perm * 7 + 13

    graph_path = args.out_dir / "copurchase_graph.txt"
    with open(graph_path, "w") as fh:
        fh.write("# synthetic co-purchase fixture\n")
        fh.write(f"# nodes {g.node_count} edges {g.edge_count}\n")
        for t, h in g.edges:
            a, b = int(ext[t]), int(ext[h])
            fh.write(f"{a} {b}\n")
            # a handful of reversed duplicates, as raw dumps often have
            if (t + h) % 97 == 0:
                fh.write(f"{b} {a}\n")
        for i in np.flatnonzero(g.degrees == 0):
            fh.write(f"{int(ext[i])} {int(ext[i])}\n")

    signal_path = args.out_dir / "copurchase_ratings.csv"
    with open(signal_path, "w", newline="") as fh:
        fh.write("node_id,value\n")
        for i in np.argsort(ext):
            fh.write(f"{int(ext[i])},{float(ratings[i])}\n")

    print(f"wrote {graph_path} ({g.node_count} nodes, {g.edge_count} edges)")
    print(f"wrote {signal_path}")


if __name__ == "__main__":
    main()
