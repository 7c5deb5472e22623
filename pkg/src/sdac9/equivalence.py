"""Code equivalence via canonical forms of equivalence graphs.

Two self-dual additive codes over GF(9) are equivalent when one maps to
the other under coordinate permutations combined with, per coordinate,
one of the 24 symplectic transforms of Sp2(3).  The stabilizer of a code
in that wreath product is its automorphism group.

The equivalence graph of a code has one 8-vertex coordinate gadget per
coordinate (vertices are the nonzero field elements, arcs (s(1), s(w))
for all s in Sp2(3), a rigid tournament-like digraph whose automorphism
group is exactly the Sp2(3) action) plus one vertex per codeword of a
spanning generating set, in a second color, joined by symmetric arc
pairs to the field value it takes at each coordinate.  Graph
isomorphism of these gadget graphs is exactly code equivalence, and the
graph's automorphism group realizes the code's.

A canonical labeling of the equivalence graph is decomposed into a
coordinate permutation, one symplectic transform per coordinate and a
codeword ordering; applying those to the code and re-reducing yields a
canonical standard form graph, serialized as a trit string.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _gf3, gf9
from .canon import ColoredDigraph, canonize
from .code import (GeneratorMatrix, _standard_gamma, _support_coeffs,
                   _words_and_weights, minimum_distance)
from .standard_form import WeightedGraph, graph_to_generator, to_standard_form

_coord_arcs_cache = None


def build_coordinate_graph() -> ColoredDigraph:
    """The 8-vertex gadget: vertex x-1 for each nonzero element x, arc
    (x, y) when the coefficient columns of x and y have determinant 1."""
    return ColoredDigraph(8, _coord_arcs())


def _coord_arcs() -> np.ndarray:
    global _coord_arcs_cache
    if _coord_arcs_cache is None:
        arcs = set()
        for m in gf9.SP2:
            x = gf9.sp2_apply(m, 1)
            y = gf9.sp2_apply(m, gf9.W)
            arcs.add((x - 1, y - 1))
        assert len(arcs) == 24
        arr = np.array(sorted(arcs), dtype=np.int32)
        # the gadget must realize Sp2(3) exactly
        assert canonize(ColoredDigraph(8, arr)).aut_order == 24
        _coord_arcs_cache = arr
    return _coord_arcs_cache


# SP2_INV_ACT[i] is the element map of the inverse of SP2[i]
_SP2_INV_ACT = np.zeros((24, 9), dtype=np.uint8)
for _i in range(24):
    _SP2_INV_ACT[_i][gf9.SP2_ACT[_i]] = np.arange(9, dtype=np.uint8)
# images of the nonzero elements 1..8 under each group element
_SP2_IDX = gf9.SP2_ACT[:, 1:].astype(np.int64) - 1


@dataclass(frozen=True)
class CanonicalCode:
    n: int
    trits: str
    aut_order: int


def _equivalence_graph_arrays(n: int, words: np.ndarray) -> ColoredDigraph:
    base = _coord_arcs()
    offs = (8 * np.arange(n, dtype=np.int32))[:, None, None]
    coord_arcs = (base[None, :, :] + offs).reshape(-1, 2)
    rows, cols = np.nonzero(words)
    cw = (8 * n + rows).astype(np.int32)
    cv = (cols * 8 + words[rows, cols] - 1).astype(np.int32)
    link = np.concatenate([np.stack([cw, cv], axis=1),
                           np.stack([cv, cw], axis=1)]).astype(np.int32)
    arcs = np.concatenate([coord_arcs, link])
    colors = np.zeros(8 * n + words.shape[0], dtype=np.int32)
    colors[8 * n:] = 1
    return ColoredDigraph(8 * n + words.shape[0], arcs, colors)


def build_equivalence_graph(g: GeneratorMatrix, words=None) -> ColoredDigraph:
    """Equivalence graph of a standard form code; words defaults to
    generating_set_by_weight(g)."""
    if words is None:
        from .code import generating_set_by_weight

        words = generating_set_by_weight(g)
    return _equivalence_graph_arrays(g.n, np.asarray(words, dtype=np.uint8))


def _generating_matrix(gamma: np.ndarray) -> tuple[np.ndarray, int]:
    """Spanning set of codewords as a matrix: whole weight layers from the
    minimum weight up, both signs included, each layer sorted.  Also returns
    the minimum distance, which is the weight of the first nonempty layer."""
    n = gamma.shape[0]
    by_weight: dict[int, list[np.ndarray]] = {}
    done_s = 0
    dmin = 0
    chosen: list[np.ndarray] = []
    basis = np.zeros((0, 2 * n), dtype=np.uint8)
    for w in range(1, n + 1):
        # words of weight w come from coefficient supports of size <= w
        while done_s < w:
            done_s += 1
            words, weights = _words_and_weights(gamma, _support_coeffs(n, done_s))
            for ww in np.unique(weights):
                sel = words[weights == ww]
                by_weight.setdefault(int(ww), []).append(sel)
                by_weight[int(ww)].append(gf9.NEG[sel])
        if w not in by_weight:
            continue
        if not dmin:
            dmin = w
        layer = np.concatenate(by_weight[w])
        layer = layer[np.lexsort(layer.T[::-1])]
        chosen.append(layer)
        basis = np.concatenate([basis, np.concatenate(
            [layer % 3, layer // 3], axis=1)])
        if _gf3.rank(basis) == n:
            return np.concatenate(chosen), dmin
    raise AssertionError("codewords of a self-dual code must span it")


def _first_independent(rows_ab: np.ndarray, n: int) -> list[int]:
    """Indices of the first n GF(3)-independent rows of an (m, 2n) matrix."""
    width = rows_ab.shape[1]
    basis = np.zeros((n, width), dtype=np.int16)
    pivot = np.full(n, -1, dtype=np.int64)
    picked: list[int] = []
    for i in range(rows_ab.shape[0]):
        v = rows_ab[i].astype(np.int16)
        for bi in range(len(picked)):
            p = pivot[bi]
            if v[p]:
                v = (v + (3 - v[p]) * basis[bi]) % 3
        nz = np.flatnonzero(v)
        if nz.size == 0:
            continue
        p = int(nz[0])
        if v[p] == 2:
            v = (v * 2) % 3
        basis[len(picked)] = v
        pivot[len(picked)] = p
        picked.append(i)
        if len(picked) == n:
            return picked
    raise AssertionError("generating set does not span")


def _canonical_from_gamma(gamma: np.ndarray) -> tuple[str, int, int]:
    """Canonical trits, automorphism group order and minimum distance."""
    n = gamma.shape[0]
    words, dmin = _generating_matrix(gamma)
    eq = _equivalence_graph_arrays(n, words)
    cf = canonize(eq)
    lab = np.asarray(cf.labeling, dtype=np.int64)
    labc = lab[:8 * n].reshape(n, 8)
    block_order = np.argsort(labc.min(axis=1), kind="stable")
    transformed = np.empty_like(words)
    for m_i, j in enumerate(block_order):
        lamj = labc[j]
        imgs = lamj[_SP2_IDX]  # row i: positions of s_i(1..8)
        k = int(np.lexsort(imgs.T[::-1])[0])
        transformed[:, m_i] = _SP2_INV_ACT[k][words[:, j]]
    row_order = np.argsort(lab[8 * n:], kind="stable")
    rows = transformed[row_order]
    ab = np.concatenate([rows % 3, rows // 3], axis=1)
    picked = _first_independent(ab, n)
    canon_graph = to_standard_form(GeneratorMatrix(rows[picked]))
    return canon_graph.trits(), cf.aut_order, dmin


def canonical_code(g) -> CanonicalCode:
    """Canonical trit fingerprint and automorphism group order of the
    equivalence class of g (a GeneratorMatrix or WeightedGraph)."""
    if isinstance(g, WeightedGraph):
        gamma = g.adj
    elif isinstance(g, GeneratorMatrix) and g.is_standard_form():
        gamma = _standard_gamma(g)
    else:
        gamma = to_standard_form(g).adj
    trits, aut, _ = _canonical_from_gamma(gamma)
    return CanonicalCode(n=gamma.shape[0], trits=trits, aut_order=aut)


def are_equivalent(g1, g2) -> bool:
    c1 = canonical_code(g1)
    c2 = canonical_code(g2)
    return c1.n == c2.n and c1.trits == c2.trits


def automorphism_group_order(g) -> int:
    return canonical_code(g).aut_order
