"""Independent total-variation minimization oracle.

Solves min ||D x||_1 subject to x agreeing with the observations, as a
linear program with one slack variable per edge. Used only to check the
primal-dual solver; shares no code with it beyond the Graph type.
"""

import numpy as np
from scipy.optimize import linprog


def dense_incidence(g):
    D = np.zeros((g.edge_count, g.node_count))
    D[np.arange(g.edge_count), g.heads] = 1.0
    D[np.arange(g.edge_count), g.tails] = -1.0
    return D


def tv_min_lp(g, sample_nodes, sample_values):
    """Returns (optimal signal, optimal total variation)."""
    n, e = g.node_count, g.edge_count
    D = dense_incidence(g)
    c = np.concatenate([np.zeros(n), np.ones(e)])
    eye = np.eye(e)
    A_ub = np.block([[D, -eye], [-D, -eye]])
    b_ub = np.zeros(2 * e)
    sample_nodes = np.asarray(sample_nodes, dtype=int)
    A_eq = np.zeros((sample_nodes.size, n + e))
    A_eq[np.arange(sample_nodes.size), sample_nodes] = 1.0
    b_eq = np.asarray(sample_values, dtype=float)
    res = linprog(
        c,
        A_ub=A_ub,
        b_ub=b_ub,
        A_eq=A_eq,
        b_eq=b_eq,
        bounds=[(None, None)] * n + [(0, None)] * e,
        method="highs",
    )
    if not res.success:
        raise RuntimeError(f"LP oracle failed: {res.message}")
    return res.x[:n], float(res.fun)
