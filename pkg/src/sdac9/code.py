"""Additive codes over GF(9): generator matrices, codewords, weights.

An additive code of length n is a GF(3)-linear subgroup of GF(9)^n,
given by a generator matrix whose rows span it additively.  Splitting
every symbol x = a + b*w into its GF(3) pair turns a k x n generator
into the k x 2n matrix (A|B), on which all rank computations run.

Codes in standard form (B the identity, A symmetric with zero diagonal)
admit fast codeword enumeration: the codeword with coefficient vector t
has B-part exactly t, so words of weight <= s only arise from
coefficient vectors of support size <= s.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from . import _gf3, gf9


class GeneratorMatrix:
    """k x n matrix of GF(9) symbol codes (0..8), rows spanning the code."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = np.array(rows, dtype=np.uint8)
        if rows.ndim != 2 or rows.shape[0] == 0 or rows.shape[1] == 0:
            raise ValueError("generator matrix must be non-empty and rectangular")
        if (rows > 8).any():
            raise ValueError("entries must be GF(9) symbol codes 0..8")
        self.rows = rows

    @property
    def k(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    def ab_parts(self) -> tuple[np.ndarray, np.ndarray]:
        return (self.rows % 3).astype(np.uint8), (self.rows // 3).astype(np.uint8)

    def is_standard_form(self) -> bool:
        a, b = self.ab_parts()
        return (self.k == self.n
                and (b == np.eye(self.n, dtype=np.uint8)).all()
                and (a == a.T).all() and not a.diagonal().any())

    def __eq__(self, other):
        return isinstance(other, GeneratorMatrix) and np.array_equal(self.rows, other.rows)

    def __hash__(self):
        return hash((self.rows.shape, self.rows.tobytes()))

    def __repr__(self):
        body = "; ".join(" ".join(gf9.format_element(int(x)) for x in row)
                         for row in self.rows)
        return f"GeneratorMatrix({body})"


def from_rows(rows) -> GeneratorMatrix:
    """Generator matrix from an iterable of GF(9) symbol rows,
    GF(3)-reduced with dependent rows dropped."""
    g = GeneratorMatrix(rows)
    a, b = g.ab_parts()
    red, piv = _gf3.rref(np.concatenate([a, b], axis=1))
    if not piv:
        raise ValueError("rows span only the zero code")
    red = red[:len(piv)]
    n = g.n
    return GeneratorMatrix(red[:, :n] + 3 * red[:, n:])


class MatrixParseError(ValueError):
    """Malformed generator matrix text; message carries line and column."""


def parse_generator_matrix(text: str) -> GeneratorMatrix:
    """Parse whitespace-separated element tokens, one matrix row per line.
    '#' starts a comment.  Errors report line, column and the bad token."""
    rows: list[list[int]] = []
    width = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        row: list[int] = []
        for m in re.finditer(r"\S+", line):
            try:
                row.append(gf9.parse_element(m.group()))
            except ValueError:
                raise MatrixParseError(
                    f"line {lineno}, column {m.start() + 1}: "
                    f"not a GF(9) element token: {m.group()!r}") from None
        if not row:
            continue
        if not rows:
            width = len(row)
        elif len(row) != width:
            raise MatrixParseError(
                f"line {lineno}: expected {width} entries, found {len(row)}")
        rows.append(row)
    if not rows:
        raise MatrixParseError("no matrix rows in input")
    return GeneratorMatrix(np.array(rows, dtype=np.uint8))


def load_generator_matrix(path) -> GeneratorMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_generator_matrix(fh.read())


def is_self_dual(g: GeneratorMatrix) -> bool:
    """True when g generates a trace-Hermitian self-dual code: n independent
    rows, all pairwise inner products (self included) zero."""
    if g.k != g.n:
        return False
    a, b = g.ab_parts()
    if _gf3.rank(np.concatenate([a, b], axis=1)) != g.n:
        return False
    ips = gf9.IP1[g.rows[:, None, :], g.rows[None, :, :]].sum(axis=-1, dtype=np.int64) % 3
    return not ips.any()


# ---------------------------------------------------------------------------
# codeword enumeration

@lru_cache(maxsize=None)
def _support_coeffs(n: int, s: int) -> np.ndarray:
    """Coefficient vectors with support size exactly s, first nonzero
    coefficient 1, supports in lexicographic order, then sign patterns in
    lexicographic order.  Shape (C(n,s) * 2**(s-1), n)."""
    if s == 0:
        return np.zeros((1, n), dtype=np.uint8)
    rows = []
    for supp in combinations(range(n), s):
        for pattern in product((1, 2), repeat=s - 1):
            t = np.zeros(n, dtype=np.uint8)
            t[supp[0]] = 1
            for p, c in zip(supp[1:], pattern):
                t[p] = c
            rows.append(t)
    return np.array(rows, dtype=np.uint8)


def _standard_gamma(g: GeneratorMatrix) -> np.ndarray:
    if not g.is_standard_form():
        raise ValueError("operation requires a standard form generator matrix")
    return (g.rows % 3).astype(np.uint8)


def _words_and_weights(gamma: np.ndarray, coeffs: np.ndarray):
    """Codewords (as symbol codes) and weights for coefficient rows."""
    wa = (coeffs.astype(np.int16) @ gamma.astype(np.int16)) % 3
    words = (wa + 3 * coeffs).astype(np.uint8)
    weights = ((wa != 0) | (coeffs != 0)).sum(axis=1)
    return words, weights


def codewords_up_to_weight(g: GeneratorMatrix, w: int) -> list[np.ndarray]:
    """All codewords of weight <= w of a standard form code, the zero word
    first, then ascending support size with both signs emitted."""
    gamma = _standard_gamma(g)
    n = g.n
    out = [np.zeros(n, dtype=np.uint8)]
    for s in range(1, min(w, n) + 1):
        words, weights = _words_and_weights(gamma, _support_coeffs(n, s))
        keep = weights <= w
        for word in words[keep]:
            out.append(word)
            out.append(gf9.NEG[word])
    return out


def minimum_distance(g: GeneratorMatrix) -> int:
    """Minimum weight of a nonzero codeword of a self-dual code."""
    if not g.is_standard_form():
        from .standard_form import graph_to_generator, to_standard_form

        g = graph_to_generator(to_standard_form(g))
    gamma = _standard_gamma(g)
    n = g.n
    best = n + 1
    for s in range(1, n + 1):
        if best <= s:
            break
        _, weights = _words_and_weights(gamma, _support_coeffs(n, s))
        m = int(weights.min())
        if m < best:
            best = m
    return best


def distance_at_least(gamma: np.ndarray, d: int) -> bool:
    """True when the standard form code with graph matrix gamma has no
    nonzero codeword of weight < d (cheap reject used before canonizing)."""
    n = gamma.shape[0]
    for s in range(1, min(d - 1, n) + 1):
        _, weights = _words_and_weights(gamma, _support_coeffs(n, s))
        if int(weights.min()) < d:
            return False
    return True


def weight_distribution(g: GeneratorMatrix) -> tuple[int, ...]:
    """(A_0, ..., A_n) over all 3**k codewords."""
    a, b = g.ab_parts()
    k, n = g.k, g.n
    counts = np.zeros(n + 1, dtype=np.int64)
    total = 3 ** k
    chunk = max(1, min(total, 1 << 16))
    a16, b16 = a.astype(np.int16), b.astype(np.int16)
    powers = 3 ** np.arange(k, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        t = ((idx[:, None] // powers) % 3).astype(np.int16)
        wa = (t @ a16) % 3
        wb = (t @ b16) % 3
        weights = ((wa != 0) | (wb != 0)).sum(axis=1)
        counts += np.bincount(weights, minlength=n + 1)
    return tuple(int(c) for c in counts)


def generating_set_by_weight(g: GeneratorMatrix) -> list[np.ndarray]:
    """Codewords of the minimum weight layer, then the next layers, until
    the set spans the code over GF(3).  Whole layers are kept, both signs
    of every codeword included, each layer sorted by symbol codes."""
    gamma = _standard_gamma(g)
    n = g.n
    d = minimum_distance(g)
    chosen: list[np.ndarray] = []
    span_rows = []
    for w in range(d, n + 1):
        layer = []
        for s in range(1, w + 1):
            words, weights = _words_and_weights(gamma, _support_coeffs(n, s))
            for word in words[weights == w]:
                layer.append(word)
                layer.append(gf9.NEG[word])
        if not layer:
            continue
        layer.sort(key=lambda v: v.tolist())
        chosen.extend(layer)
        for v in layer:
            span_rows.append(np.concatenate([v % 3, v // 3]))
        if _gf3.rank(np.array(span_rows, dtype=np.uint8)) == n:
            return chosen
    raise AssertionError("codewords of a self-dual code must span it")


# ---------------------------------------------------------------------------
# weight enumerator families

_FAMILIES: dict[int, tuple[tuple[int, ...], tuple[int, ...], frozenset[int]]] = {
    9: ((1, 0, 0, 0, 4, 244, 1168, 3704, 7766, 6796),
        (0, 0, 0, 0, 2, -4, -4, 16, -14, 4),
        frozenset(range(25))),
    10: ((1, 0, 0, 0, 0, 44, 1460, 3320, 13600, 22380, 18244),
         (0, 0, 0, 0, 0, 4, -20, 40, -40, 20, -4),
         frozenset({0, 9, 12, 13, 16, 18, 21, 22, 24, 25})),
    11: ((1, 0, 0, 0, 0, 12, 888, 3960, 14970, 42500, 66240, 48576),
         (0, 0, 0, 0, 0, 2, -6, 0, 20, -30, 18, -4),
         frozenset(range(6, 51)) | frozenset({0, 54, 60})),
    12: ((1, 0, 0, 0, 0, 0, 480, 3456, 15120, 55520, 133920, 193536, 129408),
         (0, 0, 0, 0, 0, 0, 4, -24, 60, -80, 60, -24, 4),
         frozenset({0, 1, 3, 4, 7, 9, 12, 13, 16, 19, 21, 25, 27, 28, 31,
                    36, 37, 39, 43, 48, 49, 52, 57, 63, 64, 81, 144})),
}


def enumerator_family(n: int, alpha: int) -> tuple[int, ...]:
    """The weight distribution of family member alpha at length n."""
    base, slope, alphas = _FAMILIES[n]
    if alpha not in alphas:
        raise ValueError(f"alpha={alpha} is not attained at n={n}")
    return tuple(b + s * alpha for b, s in zip(base, slope))


def match_enumerator_family(n: int, wd) -> int | None:
    """Solve the one-parameter family at length n for alpha and verify all
    coefficients; None when wd is not a family member."""
    if n not in _FAMILIES:
        return None
    base, slope, alphas = _FAMILIES[n]
    wd = tuple(int(x) for x in wd)
    if len(wd) != n + 1:
        return None
    i = next(i for i, s in enumerate(slope) if s)
    num = wd[i] - base[i]
    if num % slope[i]:
        return None
    alpha = num // slope[i]
    if alpha not in alphas:
        return None
    if wd != tuple(b + s * alpha for b, s in zip(base, slope)):
        return None
    return alpha
