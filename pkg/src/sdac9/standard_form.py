"""Standard-form generator matrices and their weighted graphs.

A self-dual additive code over GF(9) always has an equivalent generator
matrix of the shape C = G + w*I where G is a symmetric GF(3) matrix with
zero diagonal.  Such a matrix is the adjacency matrix of a loop-free
undirected graph on n vertices with edge weights 1 and 2, so codes in
standard form and weighted graphs are the same objects.

The reduction writes the generator as C = A + w*B with GF(3) matrices
A, B, makes B invertible by a coordinate permutation followed by the
column operation c -> w * conj(c) on a deficient tail, and reads the
graph off as inv(B) * A with the diagonal cleared.
"""

from __future__ import annotations

import numpy as np

from . import _gf3


class WeightedGraph:
    """Undirected loop-free graph on n vertices with edge weights 1, 2."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adj):
        adj = np.array(adj, dtype=np.uint8)
        if adj.shape != (n, n):
            raise ValueError("adjacency shape mismatch")
        if (adj != adj.T).any():
            raise ValueError("adjacency must be symmetric")
        if adj.diagonal().any():
            raise ValueError("graph must be loop-free")
        if (adj > 2).any():
            raise ValueError("edge weights must be 0, 1 or 2")
        self.n = n
        self.adj = adj

    def __eq__(self, other):
        return (isinstance(other, WeightedGraph) and self.n == other.n
                and (self.adj == other.adj).all())

    def __hash__(self):
        return hash((self.n, self.adj.tobytes()))

    def __repr__(self):
        return f"WeightedGraph({self.n}, {self.trits()!r})"

    def trits(self) -> str:
        """Upper triangle, row major, as a string of n*(n-1)/2 digits."""
        iu = np.triu_indices(self.n, k=1)
        return "".join(chr(48 + int(t)) for t in self.adj[iu])

    @classmethod
    def from_trits(cls, n: int, trits: str) -> "WeightedGraph":
        want = n * (n - 1) // 2
        if len(trits) != want:
            raise ValueError(f"need {want} trits for n={n}, got {len(trits)}")
        adj = np.zeros((n, n), dtype=np.uint8)
        vals = []
        for ch in trits:
            if ch not in "012":
                raise ValueError(f"invalid trit {ch!r}")
            vals.append(ord(ch) - 48)
        iu = np.triu_indices(n, k=1)
        adj[iu] = vals
        adj += adj.T
        return cls(n, adj)


def graph_to_generator(g: WeightedGraph):
    """Standard form generator C = G + w*I for the graph's code."""
    from .code import GeneratorMatrix

    sym = g.adj.copy()
    sym += 3 * np.eye(g.n, dtype=np.uint8)
    return GeneratorMatrix(sym)


def _pivot_permutation(b: np.ndarray) -> tuple[list[int], list[int], int]:
    """Gaussian elimination on b over GF(3) picking the lowest-index usable
    column, then the lowest-index row.  Returns (row order, column order,
    rank); pivot rows/columns first, remainder in ascending order."""
    n = b.shape[0]
    m = b.astype(np.int16).copy()
    piv_rows: list[int] = []
    piv_cols: list[int] = []
    free_rows = list(range(n))
    for c in range(n):
        r = next((r for r in free_rows if m[r, c] % 3), None)
        if r is None:
            continue
        piv_rows.append(r)
        piv_cols.append(c)
        free_rows.remove(r)
        inv = 1 if m[r, c] % 3 == 1 else 2
        for r2 in free_rows:
            if m[r2, c] % 3:
                m[r2] = (m[r2] + (3 - m[r2, c] % 3) * inv * m[r]) % 3
    rows = piv_rows + [r for r in range(n) if r not in piv_rows]
    cols = piv_cols + [c for c in range(n) if c not in piv_cols]
    return rows, cols, len(piv_rows)


def to_standard_form(g) -> WeightedGraph:
    """Weighted graph of a code equivalent to the one generated by g.

    Requires a self-dual input; raises ValueError when the rank defect
    cannot be repaired (which cannot happen for self-dual codes).
    """
    rows = g.rows
    n = rows.shape[1]
    if rows.shape[0] != n:
        raise ValueError("standard form needs n generators for length n")
    a = (rows % 3).astype(np.uint8)
    b = (rows // 3).astype(np.uint8)
    row_order, col_order, k = _pivot_permutation(b)
    if k < n:
        a = a[np.ix_(row_order, col_order)]
        b = b[np.ix_(row_order, col_order)]
        # c -> w * conj(c) on the deficient coordinates swaps the column
        # pair and negates the new a-column
        for i in range(k, n):
            ai = a[:, i].copy()
            a[:, i] = (3 - b[:, i]) % 3
            b[:, i] = ai
    try:
        binv = _gf3.inverse(b)
    except ValueError:
        raise ValueError("input does not generate a self-dual code") from None
    gamma = _gf3.matmul(binv, a)
    if (gamma != gamma.T).any():
        raise ValueError("input does not generate a self-dual code")
    np.fill_diagonal(gamma, 0)
    return WeightedGraph(n, gamma)


def is_connected(g: WeightedGraph) -> bool:
    """True when the graph has a single connected component."""
    n = g.n
    if n == 0:
        return True
    seen = np.zeros(n, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        v = stack.pop()
        for u in np.flatnonzero(g.adj[v]):
            if not seen[u]:
                seen[u] = True
                stack.append(int(u))
    return bool(seen.all())


def direct_sum(g1: WeightedGraph, g2: WeightedGraph) -> WeightedGraph:
    n = g1.n + g2.n
    adj = np.zeros((n, n), dtype=np.uint8)
    adj[:g1.n, :g1.n] = g1.adj
    adj[g1.n:, g1.n:] = g2.adj
    return WeightedGraph(n, adj)


def lengthenings(g: WeightedGraph):
    """All one-vertex extensions of g, one per {r, -r} pair of nonzero
    attachment rows, normalized so the first nonzero weight is 1.

    Yields (3**n - 1) / 2 graphs for an n-vertex input.
    """
    n = g.n
    adj = np.zeros((n + 1, n + 1), dtype=np.uint8)
    adj[:n, :n] = g.adj
    for lead in range(n):
        tail_width = n - lead - 1
        for m in range(3 ** tail_width):
            row = np.zeros(n, dtype=np.uint8)
            row[lead] = 1
            row[lead + 1:] = _gf3.trits_of_int(m, tail_width)
            adj[n, :n] = row
            adj[:n, n] = row
            yield WeightedGraph(n + 1, adj.copy())
