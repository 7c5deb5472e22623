"""Shared random generators and transforms for the test suite.

Everything takes an explicit numpy Generator so that tests stay
reproducible; no module-level RNG state.
"""

import numpy as np

from sdac9.canon import ColoredDigraph
from sdac9.code import GeneratorMatrix
from sdac9.gf9 import SP2_ACT
from sdac9.standard_form import WeightedGraph


def random_colored_digraph(rng, vmax=7, cmax=4):
    """Random digraph on 1..vmax vertices with dense colors 0..k."""
    v = int(rng.integers(1, vmax + 1))
    narcs = int(rng.integers(0, v * v + 1))
    arcs = set()
    while len(arcs) < narcs:
        arcs.add((int(rng.integers(v)), int(rng.integers(v))))
    colors = rng.integers(0, cmax, size=v)
    colors = np.searchsorted(np.unique(colors), colors)
    return ColoredDigraph(v, sorted(arcs), colors.tolist())


def relabel_digraph(g, rng):
    """A copy of g under a random color-preserving vertex relabeling."""
    perm = rng.permutation(g.v)
    colors = [0] * g.v
    for i in range(g.v):
        colors[int(perm[i])] = int(g.colors[i])
    arcs = sorted((int(perm[a]), int(perm[b])) for a, b in g.arc_set())
    return ColoredDigraph(g.v, arcs, colors)


def random_weighted_graph(rng, n):
    """Random loop-free graph on n vertices with edge weights in {1, 2}."""
    adj = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        for j in range(i + 1, n):
            w = int(rng.integers(3))
            adj[i, j] = adj[j, i] = w
    return WeightedGraph(n, adj)


def wreath_scramble(g: GeneratorMatrix, rng) -> GeneratorMatrix:
    """Image of g under a random element of the equivalence group.

    Applies an independent determinant-one coefficient map to every
    coordinate, permutes the coordinates, and re-mixes the generating
    rows by invertible row operations over GF(3).  The result generates
    a code equivalent to the one generated by g.
    """
    rows = g.rows.copy()
    n = g.n
    for j in range(n):
        s = int(rng.integers(24))
        rows[:, j] = SP2_ACT[s][rows[:, j]]
    rows = rows[:, rng.permutation(n)]
    # invertible row mixing: permute rows, then add random multiples of
    # one row to another (elementary operations preserve the span)
    rows = rows[rng.permutation(rows.shape[0])]
    a = rows % 3
    b = rows // 3
    for _ in range(3 * rows.shape[0]):
        src = int(rng.integers(rows.shape[0]))
        dst = int(rng.integers(rows.shape[0]))
        if src == dst:
            continue
        c = int(rng.integers(1, 3))
        a[dst] = (a[dst] + c * a[src]) % 3
        b[dst] = (b[dst] + c * b[src]) % 3
    return GeneratorMatrix((a + 3 * b).astype(np.uint8))


def sorted_trits(classes):
    """Canonical trit strings of a class list, sorted."""
    return sorted(c.canonical.trits for c in classes)
