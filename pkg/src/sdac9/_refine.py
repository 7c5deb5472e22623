"""Jit-compiled kernels for ordered-partition refinement on digraphs.

The partition of the vertices 0..V-1 is held in four int32 arrays:

    order[i]   vertex occupying slot i
    pos[v]     slot of vertex v (inverse of order)
    cstart[i]  start slot of the cell containing slot i
    clen[s]    cell length, valid only at cell start slots

Cells are contiguous slot ranges.  All kernels keep the arrays
consistent and are deterministic; the refinement additionally
accumulates a 64-bit trace hash built solely from slot indices,
cell sizes and arc counts, so equal traces are guaranteed for
isomorphic inputs that follow equivalent search paths.
"""

import numpy as np
from numba import njit

_PRIME = np.int64(1099511628211)


@njit(cache=True)
def refine(order, pos, cstart, clen, state, seeds, nseeds, queue, inq,
           cnt, touched, cells, cmark, out_start, out_adj, in_start, in_adj, h):
    """Refine until equitable, scattering from the seed cells first.

    state[0] holds the cell count and is updated in place.  Returns the
    updated trace hash.
    """
    V = order.shape[0]
    ncells = state[0]
    cap = queue.shape[0]
    qh = 0
    qt = 0
    qsz = 0
    for i in range(nseeds):
        s = seeds[i]
        if inq[s] == 0:
            inq[s] = 1
            queue[qt] = s
            qt += 1
            if qt == cap:
                qt = 0
            qsz += 1
    while qsz > 0:
        if ncells == V:
            while qsz > 0:
                s0 = queue[qh]
                qh += 1
                if qh == cap:
                    qh = 0
                qsz -= 1
                inq[s0] = 0
            break
        w0 = queue[qh]
        qh += 1
        if qh == cap:
            qh = 0
        qsz -= 1
        inq[w0] = 0
        m0 = clen[w0]
        h = (h * _PRIME) ^ (np.int64(w0) * 131 + np.int64(m0))
        for direction in range(2):
            # count arcs between the scatter cell and every vertex
            ntouch = 0
            for idx in range(w0, w0 + m0):
                u = order[idx]
                if direction == 0:
                    lo = out_start[u]
                    hi = out_start[u + 1]
                    for k in range(lo, hi):
                        v = out_adj[k]
                        if cnt[v] == 0:
                            touched[ntouch] = v
                            ntouch += 1
                        cnt[v] += 1
                else:
                    lo = in_start[u]
                    hi = in_start[u + 1]
                    for k in range(lo, hi):
                        v = in_adj[k]
                        if cnt[v] == 0:
                            touched[ntouch] = v
                            ntouch += 1
                        cnt[v] += 1
            if ntouch == 0:
                continue
            # affected multi-vertex cells, ascending start slot
            ncl = 0
            for t in range(ntouch):
                v = touched[t]
                cs = cstart[pos[v]]
                if clen[cs] > 1 and cmark[cs] == 0:
                    cmark[cs] = 1
                    cells[ncl] = cs
                    ncl += 1
            for a in range(1, ncl):
                x = cells[a]
                b = a - 1
                while b >= 0 and cells[b] > x:
                    cells[b + 1] = cells[b]
                    b -= 1
                cells[b + 1] = x
            for ci in range(ncl):
                c = cells[ci]
                cmark[c] = 0
                mc = clen[c]
                uniform = True
                k0 = cnt[order[c]]
                for i in range(c + 1, c + mc):
                    if cnt[order[i]] != k0:
                        uniform = False
                        break
                if uniform:
                    continue
                # stable sort of the cell slice by count value
                for i in range(c + 1, c + mc):
                    v = order[i]
                    kv = cnt[v]
                    j = i - 1
                    while j >= c and cnt[order[j]] > kv:
                        u2 = order[j]
                        order[j + 1] = u2
                        pos[u2] = j + 1
                        j -= 1
                    order[j + 1] = v
                    pos[v] = j + 1
                # cut into runs of equal count
                h = (h * _PRIME) ^ (np.int64(c) * 977 + np.int64(mc))
                run = c
                prev = cnt[order[c]]
                cur = np.int64(0)
                for i in range(c + 1, c + mc + 1):
                    if i < c + mc:
                        cur = cnt[order[i]]
                    if i == c + mc or cur != prev:
                        clen[run] = i - run
                        for j2 in range(run, i):
                            cstart[j2] = run
                        h = (h * _PRIME) ^ (np.int64(prev) * 499 + np.int64(i - run))
                        if run > c:
                            ncells += 1
                        if inq[run] == 0:
                            inq[run] = 1
                            queue[qt] = run
                            qt += 1
                            if qt == cap:
                                qt = 0
                            qsz += 1
                        if i < c + mc:
                            run = i
                            prev = cur
            for t in range(ntouch):
                cnt[touched[t]] = 0
    state[0] = ncells
    return h


@njit(cache=True)
def individualize(order, pos, cstart, clen, w):
    """Split {w} off the front of its cell; returns the singleton's slot.

    The caller is responsible for incrementing the cell count.
    """
    pw = pos[w]
    s = cstart[pw]
    m = clen[s]
    u = order[s]
    order[s] = w
    order[pw] = u
    pos[w] = s
    pos[u] = pw
    clen[s] = 1
    clen[s + 1] = m - 1
    for i in range(s + 1, s + m):
        cstart[i] = s + 1
    return s


@njit(cache=True)
def target_cell(cstart, clen, V):
    """Start slot of the smallest cell of size >= 2 (lowest slot on ties),
    or -1 if the partition is discrete."""
    s = 0
    best = -1
    bsize = V + 1
    while s < V:
        m = clen[s]
        if m > 1 and m < bsize:
            bsize = m
            best = s
            if m == 2:
                break
        s += m
    return best


@njit(cache=True)
def certificate(pos, tails, heads, V):
    """Relabeled arc codes pos[t]*V + pos[h], sorted ascending."""
    E = tails.shape[0]
    out = np.empty(E, np.int64)
    for e in range(E):
        out[e] = np.int64(pos[tails[e]]) * V + np.int64(pos[heads[e]])
    out.sort()
    return out
