"""Canonical forms of vertex-colored directed graphs.

The engine is a backtracking individualization-refinement search in the
McKay style: refine the ordered partition to equitability, pick the
smallest non-singleton cell, branch on its members, and keep

  * the first leaf reached, used as the reference for discovering
    automorphisms, and
  * the leaf minimizing (invariant sequence, certificate), which defines
    the canonical labeling.

Subtrees are pruned when their invariant can match neither reference,
and siblings are skipped when a discovered automorphism maps them into
an already-explored branch.  The automorphism group order is the
product, over the nodes of the first path, of the orbit size of the
individualized vertex under the generators fixing that node's prefix;
the partition at the first leaf is discrete, so the chain terminates in
the trivial stabilizer and the product is exact.
"""

from __future__ import annotations

import struct
import sys
from dataclasses import dataclass

import numpy as np

from . import _refine

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

_FORMAT_ID = 1
_HASH_SEED = np.int64(-3750763034362895579)


class ColoredDigraph:
    """Immutable digraph on vertices 0..v-1 with integer vertex colors.

    Arcs are a set of ordered pairs (duplicates are dropped); colors must
    use the dense range 0..max(colors).
    """

    __slots__ = ("v", "tails", "heads", "colors", "_csr")

    def __init__(self, v: int, arcs, colors=None):
        if v < 0:
            raise ValueError("negative vertex count")
        arcs = np.asarray(arcs, dtype=np.int32)
        if arcs.size == 0:
            arcs = arcs.reshape(0, 2)
        if arcs.ndim != 2 or arcs.shape[1] != 2:
            raise ValueError("arcs must be pairs")
        if arcs.size and (arcs.min() < 0 or arcs.max() >= v):
            raise ValueError("arc endpoint out of range")
        codes = np.unique(arcs[:, 0].astype(np.int64) * v + arcs[:, 1])
        self.v = v
        self.tails = (codes // v).astype(np.int32)
        self.heads = (codes % v).astype(np.int32)
        if colors is None:
            colors = np.zeros(v, dtype=np.int32)
        else:
            colors = np.asarray(colors, dtype=np.int32)
        if colors.shape != (v,):
            raise ValueError("need one color per vertex")
        if v:
            if colors.min() < 0:
                raise ValueError("colors must be non-negative")
            present = np.unique(colors)
            if present[-1] != present.size - 1:
                raise ValueError("colors must be dense from 0")
        self.colors = colors
        self._csr = None

    @property
    def num_arcs(self) -> int:
        return int(self.tails.size)

    def arc_set(self) -> set[tuple[int, int]]:
        return set(zip(self.tails.tolist(), self.heads.tolist()))

    def csr(self):
        """(out_start, out_adj, in_start, in_adj) adjacency, cached."""
        if self._csr is None:
            v = self.v
            out_adj = self.heads[np.argsort(self.tails, kind="stable")].astype(np.int32)
            out_start = np.zeros(v + 1, dtype=np.int32)
            np.cumsum(np.bincount(self.tails, minlength=v), out=out_start[1:])
            in_adj = self.tails[np.argsort(self.heads, kind="stable")].astype(np.int32)
            in_start = np.zeros(v + 1, dtype=np.int32)
            np.cumsum(np.bincount(self.heads, minlength=v), out=in_start[1:])
            self._csr = (out_start, out_adj, in_start, in_adj)
        return self._csr


@dataclass(frozen=True)
class CanonForm:
    bytes: bytes
    labeling: tuple[int, ...]  # labeling[v] = canonical position of v
    aut_order: int


class _Search:
    def __init__(self, g: ColoredDigraph):
        v = g.v
        self.g = g
        self.V = v
        self.out_start, self.out_adj, self.in_start, self.in_adj = g.csr()
        # initial partition: cells are color classes, ascending color
        self.order = np.lexsort((np.arange(v), g.colors)).astype(np.int32)
        self.pos = np.empty(v, dtype=np.int32)
        self.pos[self.order] = np.arange(v, dtype=np.int32)
        self.cstart = np.empty(v, dtype=np.int32)
        self.clen = np.zeros(v, dtype=np.int32)
        sorted_colors = g.colors[self.order]
        starts = np.flatnonzero(np.r_[True, sorted_colors[1:] != sorted_colors[:-1]])
        ncells = starts.size
        bounds = np.r_[starts, v]
        for i in range(ncells):
            s, e = int(bounds[i]), int(bounds[i + 1])
            self.cstart[s:e] = s
            self.clen[s] = e - s
        self.state = np.array([ncells], dtype=np.int64)
        self.seeds = starts.astype(np.int32)
        # scratch buffers for the kernels
        self.queue = np.empty(v + 1, dtype=np.int32)
        self.inq = np.zeros(v, dtype=np.int32)
        self.cnt = np.zeros(v, dtype=np.int32)
        self.touched = np.empty(v, dtype=np.int32)
        self.cells = np.empty(v, dtype=np.int32)
        self.cmark = np.zeros(v, dtype=np.int32)
        # search state
        self.path: list[int] = []
        self.inv_path: list[int] = []
        self.first_inv = None
        self.first_cert = None
        self.first_order = None
        self.first_nodes: list[tuple[list[int], int]] = []
        self.best_inv = None
        self.best_cert = None
        self.best_order = None
        self.gens: list[np.ndarray] = []
        self._gen_keys: set[bytes] = set()
        self._orbit_cache = None

    # -- kernel wrappers ---------------------------------------------------

    def _refine(self, seeds, h):
        return int(_refine.refine(
            self.order, self.pos, self.cstart, self.clen, self.state,
            seeds, seeds.size, self.queue, self.inq,
            self.cnt, self.touched, self.cells, self.cmark,
            self.out_start, self.out_adj, self.in_start, self.in_adj,
            np.int64(h)))

    # -- automorphism bookkeeping -------------------------------------------

    def _add_gen(self, ref_order, cur_order):
        perm = np.empty(self.V, dtype=np.int32)
        perm[ref_order] = cur_order
        key = perm.tobytes()
        if key not in self._gen_keys:
            self._gen_keys.add(key)
            self.gens.append(perm)
            self._orbit_cache = None

    def _orbits(self, prefix: list[int]) -> np.ndarray:
        """Orbit representatives under the generators fixing prefix pointwise."""
        key = (len(self.gens), tuple(prefix))
        if self._orbit_cache is not None and self._orbit_cache[0] == key:
            return self._orbit_cache[1]
        reps = np.arange(self.V, dtype=np.int32)
        if prefix:
            pf = np.asarray(prefix, dtype=np.int32)
            gs = [g for g in self.gens if np.array_equal(g[pf], pf)]
        else:
            gs = self.gens
        changed = bool(gs)
        while changed:
            changed = False
            for g in gs:
                r2 = np.minimum(reps, reps[g])
                r2 = r2[r2]
                if not np.array_equal(r2, reps):
                    reps = r2
                    changed = True
        while True:
            r2 = reps[reps]
            if np.array_equal(r2, reps):
                break
            reps = r2
        self._orbit_cache = (key, reps)
        return reps

    # -- tree walk -----------------------------------------------------------

    def run(self):
        h0 = self._refine(self.seeds, _HASH_SEED)
        self.inv_path.append((h0 * 31) ^ int(self.state[0]))
        self._node(True, 0)
        # group order from the first path's orbit chain
        aut = 1
        for prefix, w in self.first_nodes:
            reps = self._orbits(prefix)
            aut *= int(np.count_nonzero(reps == reps[w]))
        lab = np.empty(self.V, dtype=np.int32)
        lab[self.best_order] = np.arange(self.V, dtype=np.int32)
        colors_in_slot = self.g.colors[self.best_order].astype(np.int32)
        blob = b"".join((
            struct.pack(">BII", _FORMAT_ID, self.V, self.g.num_arcs),
            colors_in_slot.astype(">i4").tobytes(),
            self.best_cert.astype(">i8").tobytes(),
        ))
        return CanonForm(bytes=blob, labeling=tuple(int(x) for x in lab), aut_order=aut)

    def _node(self, on_first: bool, best_rel: int):
        # best_rel: 0 path invariants equal best's prefix, 1 strictly
        # smaller at some level, 2 not a contender for best
        if int(self.state[0]) == self.V:
            self._leaf(on_first, best_rel)
            return
        s = int(_refine.target_cell(self.cstart, self.clen, self.V))
        cand = [int(x) for x in self.order[s:s + int(self.clen[s])]]
        if self.first_cert is None:
            self.first_nodes.append((list(self.path), cand[0]))
        depth = len(self.path)
        explored: list[int] = []
        for w in cand:
            if explored:
                reps = self._orbits(self.path)
                rw = reps[w]
                if any(reps[e] == rw for e in explored):
                    continue
            saved = (self.order.copy(), self.pos.copy(),
                     self.cstart.copy(), self.clen.copy(), int(self.state[0]))
            slot = _refine.individualize(self.order, self.pos, self.cstart, self.clen, w)
            self.state[0] = saved[4] + 1
            h = self._refine(np.array([slot], dtype=np.int32), _HASH_SEED)
            inv = (h * 31) ^ int(self.state[0])
            k = depth + 1
            if self.first_cert is None:
                child_first, child_rel = True, 0
                descend = True
            else:
                child_first = (on_first and k < len(self.first_inv)
                               and inv == self.first_inv[k])
                if best_rel == 1:
                    child_rel = 1
                elif best_rel == 0 and k < len(self.best_inv):
                    if inv < self.best_inv[k]:
                        child_rel = 1
                    elif inv == self.best_inv[k]:
                        child_rel = 0
                    else:
                        child_rel = 2
                else:
                    child_rel = 2
                descend = child_first or child_rel != 2
            if descend:
                self.path.append(w)
                self.inv_path.append(inv)
                self._node(child_first, child_rel)
                self.path.pop()
                self.inv_path.pop()
            self.order, self.pos, self.cstart, self.clen = saved[0], saved[1], saved[2], saved[3]
            self.state[0] = saved[4]
            explored.append(w)

    def _leaf(self, on_first: bool, best_rel: int):
        cert = _refine.certificate(self.pos, self.g.tails, self.g.heads, self.V)
        if self.first_cert is None:
            self.first_inv = list(self.inv_path)
            self.first_cert = cert
            self.first_order = self.order.copy()
            self.best_inv = list(self.inv_path)
            self.best_cert = cert
            self.best_order = self.first_order
            return
        if (on_first and len(self.inv_path) == len(self.first_inv)
                and np.array_equal(cert, self.first_cert)):
            self._add_gen(self.first_order, self.order)
        if best_rel == 2:
            return
        if best_rel == 1 or len(self.inv_path) != len(self.best_inv):
            better = (self.inv_path < self.best_inv)
        else:
            c = _cmp_certs(cert, self.best_cert)
            if c == 0:
                self._add_gen(self.best_order, self.order)
                return
            better = c < 0
        if better:
            self.best_inv = list(self.inv_path)
            self.best_cert = cert
            self.best_order = self.order.copy()


def _cmp_certs(a: np.ndarray, b: np.ndarray) -> int:
    diff = np.flatnonzero(a != b)
    if diff.size == 0:
        return 0
    i = diff[0]
    return -1 if a[i] < b[i] else 1


def canonize(g: ColoredDigraph) -> CanonForm:
    """Canonical form, labeling and automorphism group order of g."""
    if g.v == 0:
        return CanonForm(bytes=struct.pack(">BII", _FORMAT_ID, 0, 0),
                         labeling=(), aut_order=1)
    return _Search(g).run()


# ---------------------------------------------------------------------------
# brute force reference

def brute_force_canonize(g: ColoredDigraph) -> CanonForm:
    """Reference canonizer trying every color-preserving relabeling.

    Only usable for small graphs; verdicts (byte equality between graphs)
    and aut_order agree with canonize, the bytes themselves are the
    minimum certificate rather than the search engine's choice.
    """
    from itertools import permutations
    from math import factorial

    v = g.v
    if v > 8:
        raise ValueError("brute force canonization is limited to v <= 8")
    if v == 0:
        return canonize(g)
    colors = g.colors
    slot_order = np.lexsort((np.arange(v), colors))
    # enumerate labelings: vertices may occupy exactly the slots of their
    # color class
    classes = []
    csorted = colors[slot_order]
    start = 0
    for i in range(1, v + 1):
        if i == v or csorted[i] != csorted[start]:
            classes.append(slot_order[start:i].astype(np.int64))
            start = i
    total = 1
    for c in classes:
        total *= factorial(len(c))
    labs = np.empty((total, v), dtype=np.int64)
    period = total
    slot = 0
    for c in classes:
        perms = np.array(list(permutations(c)), dtype=np.int64)  # (p, len)
        period //= perms.shape[0]
        idx = (np.arange(total) // period) % perms.shape[0]
        labs[np.arange(total)[:, None], perms[idx]] = np.arange(slot, slot + len(c))
        slot += len(c)
    if g.num_arcs:
        codes = labs[:, g.tails] * v + labs[:, g.heads]
        codes.sort(axis=1)
        # automorphisms: labelings giving the same certificate as a fixed one
        ident = np.empty(v, dtype=np.int64)
        slot = 0
        for c in classes:
            ident[c] = np.arange(slot, slot + len(c))
            slot += len(c)
        base_codes = np.sort(ident[g.tails] * v + ident[g.heads])
        aut = int(np.count_nonzero((codes == base_codes).all(axis=1)))
        besti = int(np.lexsort(codes.T[::-1])[0])
    else:
        codes = np.empty((total, 0), dtype=np.int64)
        aut = total
        besti = 0
    lab = labs[besti]
    colors_in_slot = np.empty(v, dtype=np.int32)
    colors_in_slot[lab] = colors
    blob = b"".join((
        struct.pack(">BII", _FORMAT_ID, v, g.num_arcs),
        colors_in_slot.astype(">i4").tobytes(),
        codes[besti].astype(">i8").tobytes(),
    ))
    return CanonForm(bytes=blob, labeling=tuple(int(x) for x in lab), aut_order=aut)


# ---------------------------------------------------------------------------
# weighted graph encoding

def encode_weighted_graph(adj: np.ndarray) -> ColoredDigraph:
    """Encode a loop-free {0,1,2}-weighted undirected graph as a colored
    digraph: a weight-1 edge becomes a symmetric arc pair, a weight-2
    edge is routed through a fresh color-1 auxiliary vertex."""
    adj = np.asarray(adj)
    n = adj.shape[0]
    if adj.shape != (n, n) or (adj != adj.T).any() or adj.diagonal().any():
        raise ValueError("adjacency must be symmetric with zero diagonal")
    arcs = []
    aux = n
    for i in range(n):
        for j in range(i + 1, n):
            wgt = int(adj[i, j])
            if wgt == 1:
                arcs.append((i, j))
                arcs.append((j, i))
            elif wgt == 2:
                arcs.append((i, aux))
                arcs.append((aux, i))
                arcs.append((aux, j))
                arcs.append((j, aux))
                aux += 1
            elif wgt:
                raise ValueError("edge weights must be 0, 1 or 2")
    colors = np.zeros(aux, dtype=np.int32)
    colors[n:] = 1
    return ColoredDigraph(aux, arcs, colors)


def weighted_canonical_form(adj: np.ndarray) -> bytes:
    """Isomorphism-class fingerprint of a weighted graph."""
    return canonize(encode_weighted_graph(adj)).bytes
