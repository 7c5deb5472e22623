"""Classification census of self-dual additive codes over GF(9).

The census proceeds by length.  Every indecomposable class at length n is
reached by lengthening one representative of each indecomposable class at
length n - 1 (adding a connected vertex to the standard form graph), so one
step of the loop is: generate lengthenings, drop isomorphic graphs, canonize
the survivors and keep one representative per new equivalence class.
Decomposable classes never need a search: they are multisets of smaller
indecomposable classes.  Two integrity checks are built in, the Euler
transform linking indecomposable and total counts, and the mass formula,
which pins the number of distinct (not just inequivalent) codes of length n
to an exact product.
"""

from __future__ import annotations

import hashlib
import math
import os
from dataclasses import dataclass
from functools import cached_property
from multiprocessing import get_context
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import code, gf9
from .canon import weighted_canonical_form
from .code import GeneratorMatrix
from .equivalence import CanonicalCode, _canonical_from_gamma
from .standard_form import WeightedGraph, direct_sum, graph_to_generator, lengthenings


@dataclass(frozen=True)
class CodeClass:
    """One equivalence class: canonical fingerprint, minimum distance and
    automorphism group order."""

    canonical: CanonicalCode
    d: int
    aut_order: int
    indecomposable: bool = True

    @property
    def n(self) -> int:
        return self.canonical.n

    @property
    def trits(self) -> str:
        return self.canonical.trits

    def graph(self) -> WeightedGraph:
        return WeightedGraph.from_trits(self.n, self.trits)

    def generator(self) -> GeneratorMatrix:
        return graph_to_generator(self.graph())

    @cached_property
    def wd(self) -> tuple[int, ...]:
        return code.weight_distribution(self.generator())


@dataclass(frozen=True)
class CensusRow:
    """Summary counts at one length.  by_distance covers the indecomposable
    classes, by_distance_total all of them."""

    n: int
    indecomposable: int
    total: int
    by_distance: dict[int, int]
    by_distance_total: dict[int, int]
    trivial_aut_count: int


@dataclass(frozen=True)
class MassReport:
    n: int
    lhs: int
    rhs: int
    equal: bool


def _resolve_workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get("SDAC9_WORKERS", "1") or "1")
    if workers < 1:
        raise ValueError("worker count must be >= 1")
    return workers


def base_classes() -> list[CodeClass]:
    """The single class at length 1 (empty graph)."""
    g = WeightedGraph(1, np.zeros((1, 1), dtype=np.uint8))
    trits, aut, d = _canonical_from_gamma(g.adj)
    return [CodeClass(CanonicalCode(1, trits, aut), d, aut)]


def _graph_digest(adj: np.ndarray) -> bytes:
    # 16-byte digest of the canonical form; collisions are vanishingly rare
    # and the mass identity would expose a lost class afterwards anyway
    return hashlib.blake2b(weighted_canonical_form(adj), digest_size=16).digest()


def _class_of_graph(adj: np.ndarray) -> CodeClass:
    trits, aut, d = _canonical_from_gamma(adj)
    n = adj.shape[0]
    return CodeClass(CanonicalCode(n, trits, aut), d, aut)


def _survivors_of_parent(parent_trits: str, n_parent: int) -> list[tuple[bytes, str]]:
    parent = WeightedGraph.from_trits(n_parent, parent_trits)
    return [(_graph_digest(wg.adj), wg.trits()) for wg in lengthenings(parent)]


def _class_of_trits(job: tuple[int, str]) -> CodeClass:
    n, trits = job
    return _class_of_graph(WeightedGraph.from_trits(n, trits).adj)


def classify_step(prev: Sequence[CodeClass], workers: int | None = None) -> list[CodeClass]:
    """All indecomposable classes at length n from the complete list of
    indecomposable classes at length n - 1 (decomposable entries in prev are
    ignored; lengthening them is never needed)."""
    parents = [c for c in prev if c.indecomposable]
    if not parents:
        raise ValueError("need the complete class list one length down")
    n = parents[0].n + 1
    workers = _resolve_workers(workers)

    seen: set[bytes] = set()
    found: dict[str, CodeClass] = {}
    if workers == 1:
        for parent in parents:
            for wg in lengthenings(parent.graph()):
                dig = _graph_digest(wg.adj)
                if dig in seen:
                    continue
                seen.add(dig)
                cls = _class_of_graph(wg.adj)
                found.setdefault(cls.trits, cls)
    else:
        ctx = get_context("fork")
        with ctx.Pool(workers) as pool:
            jobs = [(p.trits, p.n) for p in parents]
            fresh: list[str] = []
            for pairs in pool.starmap(_survivors_of_parent, jobs, chunksize=1):
                for dig, graph_trits in pairs:
                    if dig not in seen:
                        seen.add(dig)
                        fresh.append(graph_trits)
            chunk = max(1, len(fresh) // (8 * workers))
            for cls in pool.imap_unordered(
                    _class_of_trits, [(n, t) for t in fresh], chunksize=chunk):
                found.setdefault(cls.trits, cls)
    return sorted(found.values(), key=lambda c: c.trits)


def classify_range(n_max: int,
                   workers: int | None = None,
                   progress: Callable[[str], None] | None = None,
                   ) -> dict[int, list[CodeClass]]:
    """Complete classification for every length up to n_max.  Each value
    lists the indecomposable classes first, then the decomposable ones, both
    sorted by trits."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    indecomp: dict[int, list[CodeClass]] = {1: base_classes()}
    for n in range(2, n_max + 1):
        indecomp[n] = classify_step(indecomp[n - 1], workers=workers)
        if progress is not None:
            progress(f"length {n}: {len(indecomp[n])} indecomposable classes")
    out: dict[int, list[CodeClass]] = {}
    for n in range(1, n_max + 1):
        out[n] = indecomp[n] + decomposable_classes(n, indecomp)
        if progress is not None and n > 1:
            progress(f"length {n}: {len(out[n])} classes in total")
    return out


def decomposable_classes(n: int,
                         indecomposables: Mapping[int, Sequence[CodeClass]],
                         ) -> list[CodeClass]:
    """One class per multiset of at least two indecomposable classes with
    lengths summing to n.  The group order follows from the part structure:
    k identical parts contribute k! * aut^k."""
    pool: list[CodeClass] = []
    for m in range(1, n):
        pool.extend(sorted((c for c in indecomposables.get(m, ())
                            if c.indecomposable), key=lambda c: c.trits))
    pool.sort(key=lambda c: (c.n, c.trits))

    out: list[CodeClass] = []

    def emit(parts: list[CodeClass]) -> None:
        graph = parts[0].graph()
        for p in parts[1:]:
            graph = direct_sum(graph, p.graph())
        aut = 1
        i = 0
        while i < len(parts):
            j = i
            while j < len(parts) and parts[j].trits == parts[i].trits \
                    and parts[j].n == parts[i].n:
                j += 1
            aut *= math.factorial(j - i) * parts[i].aut_order ** (j - i)
            i = j
        trits, graph_aut, d = _canonical_from_gamma(graph.adj)
        assert graph_aut == aut, "group order of a direct sum must factor"
        assert d == min(p.d for p in parts)
        out.append(CodeClass(CanonicalCode(n, trits, aut), d, aut,
                             indecomposable=False))

    def rec(start: int, remaining: int, parts: list[CodeClass]) -> None:
        if remaining == 0:
            if len(parts) >= 2:
                emit(parts)
            return
        for idx in range(start, len(pool)):
            c = pool[idx]
            if c.n > remaining:
                break
            parts.append(c)
            rec(idx, remaining - c.n, parts)
            parts.pop()

    rec(0, n, [])
    return sorted(out, key=lambda c: c.trits)


def euler_transform(i_seq: Sequence[int]) -> list[int]:
    """Total class counts t_1..t_N from indecomposable counts i_1..i_N."""
    i = [int(x) for x in i_seq]
    big_n = len(i)
    c = [sum(d * i[d - 1] for d in range(1, m + 1) if m % d == 0)
         for m in range(1, big_n + 1)]
    t: list[int] = []
    for m in range(1, big_n + 1):
        s = c[m - 1] + sum(c[k - 1] * t[m - k - 1] for k in range(1, m))
        q, r = divmod(s, m)
        if r:
            raise ValueError(f"inconsistent counts: c_{m} sum {s} not divisible by {m}")
        t.append(q)
    return t


def mass_check(n: int, classes: Sequence[CodeClass]) -> MassReport:
    """Exact mass identity: the number of distinct self-dual codes equals the
    sum over classes of the orbit sizes 24^n n!/aut."""
    lhs = math.prod(3 ** i + 1 for i in range(1, n + 1))
    group = 24 ** n * math.factorial(n)
    rhs = 0
    for cls in classes:
        q, r = divmod(group, cls.aut_order)
        if r:
            raise ValueError(
                f"aut order {cls.aut_order} does not divide the group order at n={n}")
        rhs += q
    return MassReport(n, lhs, rhs, lhs == rhs)


def mass_lower_bound(n: int) -> int:
    """Ceiling of twice the code count over the full group order: a lower
    bound on the number of classes, attained only if every class had the
    minimal group order 2."""
    num = 2 * math.prod(3 ** i + 1 for i in range(1, n + 1))
    den = 24 ** n * math.factorial(n)
    return -(-num // den)


def _extension_survivor(job: tuple[str, int, int]) -> list[tuple[bytes, str]]:
    parent_trits, n_parent, d_target = job
    parent = WeightedGraph.from_trits(n_parent, parent_trits)
    out = []
    for wg in lengthenings(parent):
        if code.distance_at_least(wg.adj, d_target):
            out.append((_graph_digest(wg.adj), wg.trits()))
    return out


def extend_with_distance_floor(classes: Sequence[CodeClass],
                               d_target: int,
                               workers: int | None = None) -> list[CodeClass]:
    """All classes of length n + 1 with minimum distance >= d_target, from
    the complete list of length-n classes with distance >= d_target - 1
    (entries below that floor cannot produce survivors and are skipped).
    The distance test runs before any canonization, which is what makes
    large searches affordable."""
    parents = [c for c in classes if c.d >= d_target - 1]
    workers = _resolve_workers(workers)
    seen: set[bytes] = set()
    found: dict[str, CodeClass] = {}
    if workers == 1:
        for parent in parents:
            for wg in lengthenings(parent.graph()):
                if not code.distance_at_least(wg.adj, d_target):
                    continue
                dig = _graph_digest(wg.adj)
                if dig in seen:
                    continue
                seen.add(dig)
                cls = _class_of_graph(wg.adj)
                if cls.d >= d_target:
                    found.setdefault(cls.trits, cls)
    else:
        ctx = get_context("fork")
        jobs = [(p.trits, p.n, d_target) for p in parents]
        n_child = parents[0].n + 1 if parents else 0
        with ctx.Pool(workers) as pool:
            fresh: list[str] = []
            for pairs in pool.imap_unordered(_extension_survivor, jobs, chunksize=4):
                for dig, graph_trits in pairs:
                    if dig not in seen:
                        seen.add(dig)
                        fresh.append(graph_trits)
            chunk = max(1, len(fresh) // (8 * workers))
            for cls in pool.imap_unordered(
                    _class_of_trits, [(n_child, t) for t in fresh], chunksize=chunk):
                if cls.d >= d_target:
                    found.setdefault(cls.trits, cls)
    return sorted(found.values(), key=lambda c: c.trits)


def tabulate(classes: Sequence[CodeClass]) -> CensusRow:
    """Summary counts for one completed length."""
    if not classes:
        return CensusRow(0, 0, 0, {}, {}, 0)
    n = classes[0].n
    by_d: dict[int, int] = {}
    by_d_total: dict[int, int] = {}
    trivial = 0
    indecomposable = 0
    for cls in classes:
        if cls.n != n:
            raise ValueError("classes of mixed lengths")
        by_d_total[cls.d] = by_d_total.get(cls.d, 0) + 1
        if cls.indecomposable:
            indecomposable += 1
            by_d[cls.d] = by_d.get(cls.d, 0) + 1
        if cls.aut_order == 2:
            trivial += 1
    return CensusRow(n, indecomposable, len(classes),
                     dict(sorted(by_d.items())), dict(sorted(by_d_total.items())),
                     trivial)


def wd_counts_by_distance(classes: Iterable[CodeClass]) -> dict[int, int]:
    """Distinct weight distributions of the indecomposable classes, counted
    per minimum distance."""
    sets: dict[int, set[tuple[int, ...]]] = {}
    for cls in classes:
        if cls.indecomposable:
            sets.setdefault(cls.d, set()).add(cls.wd)
    return {d: len(s) for d, s in sorted(sets.items())}


def aut_histogram(classes: Iterable[CodeClass]) -> dict[int, int]:
    hist: dict[int, int] = {}
    for cls in classes:
        hist[cls.aut_order] = hist.get(cls.aut_order, 0) + 1
    return dict(sorted(hist.items()))


def alpha_beta_table(classes: Iterable[CodeClass]) -> dict[tuple[int, int], int]:
    """Cross-table of weight enumerator family member (alpha) by group order
    (beta) over the classes whose distribution lies in the known family for
    their length; classes outside the family are skipped."""
    table: dict[tuple[int, int], int] = {}
    for cls in classes:
        alpha = code.match_enumerator_family(cls.n, cls.wd)
        if alpha is None:
            continue
        key = (alpha, cls.aut_order)
        table[key] = table.get(key, 0) + 1
    return dict(sorted(table.items()))


# ---------------------------------------------------------------------------
# class database files

_DB_MAGIC = "# sdac9 v1"


def write_db(path, classes: Sequence[CodeClass], n: int | None = None) -> None:
    """One class per line, `<trits> d=<d> aut=<order>`, sorted by trits
    within the indecomposable and decomposable sections."""
    if n is None:
        if not classes:
            raise ValueError("empty class list needs an explicit n")
        n = classes[0].n
    if any(c.n != n for c in classes):
        raise ValueError("classes of mixed lengths")
    indecomp = sorted((c for c in classes if c.indecomposable), key=lambda c: c.trits)
    decomp = sorted((c for c in classes if not c.indecomposable), key=lambda c: c.trits)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{_DB_MAGIC} n={n}\n")
        for name, part in (("indecomposable", indecomp), ("decomposable", decomp)):
            if not part:
                continue
            fh.write(f"# {name}\n")
            for cls in part:
                lead = f"{cls.trits} " if cls.trits else ""
                fh.write(f"{lead}d={cls.d} aut={cls.aut_order}\n")


def read_db(path) -> tuple[int, list[CodeClass]]:
    """Parse a class database file back into CodeClass records."""
    classes: list[CodeClass] = []
    n = None
    indecomposable = True
    with open(path, encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                if line.startswith(_DB_MAGIC):
                    try:
                        n = int(line.split("n=")[1])
                    except (IndexError, ValueError):
                        raise ValueError(f"{path}:{lineno}: bad header {line!r}")
                elif line == "# indecomposable":
                    indecomposable = True
                elif line == "# decomposable":
                    indecomposable = False
                continue
            if n is None:
                raise ValueError(f"{path}:{lineno}: class line before header")
            fields = line.split()
            trits = ""
            if fields and not fields[0].startswith("d="):
                trits = fields.pop(0)
            if len(fields) != 2 or not fields[0].startswith("d=") \
                    or not fields[1].startswith("aut="):
                raise ValueError(f"{path}:{lineno}: malformed class line {line!r}")
            if len(trits) != n * (n - 1) // 2 or any(c not in "012" for c in trits):
                raise ValueError(f"{path}:{lineno}: bad trit string for n={n}")
            try:
                d = int(fields[0][2:])
                aut = int(fields[1][4:])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: malformed class line {line!r}")
            classes.append(CodeClass(CanonicalCode(n, trits, aut), d, aut,
                                     indecomposable=indecomposable))
    if n is None:
        raise ValueError(f"{path}: missing '{_DB_MAGIC} n=...' header")
    return n, classes
