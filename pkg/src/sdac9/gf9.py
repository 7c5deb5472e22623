"""Arithmetic over GF(9) and the symplectic group Sp2(3).

GF(9) is realized as GF(3)[w] with w**2 = w + 1.  An element a + b*w
(a, b in GF(3)) is encoded as the integer ``a + 3*b`` in 0..8:

    0 -> 0        3 -> w        6 -> 2w
    1 -> 1        4 -> 1+w      7 -> 1+2w
    2 -> 2        5 -> 2+w      8 -> 2+2w

Conjugation is the Frobenius map x -> x**3 and the trace is
tr(x) = x + x**3, which lands in GF(3).  The inner product used
throughout is the trace-Hermitian form

    ip(u, v) = tr( w**2 * sum_i u_i * conj(v_i) )  in GF(3).

Sp2(3) is the group of 24 determinant-one 2x2 matrices over GF(3),
acting on GF(9) by multiplying the (a, b) coefficient column.  All
operation tables are built once at import and verified exhaustively.
"""

from __future__ import annotations

import numpy as np

# ---------------------------------------------------------------------------
# element encoding

ELEMENTS = tuple(range(9))

TOKENS = ("0", "1", "2", "w", "1+w", "2+w", "2w", "1+2w", "2+2w")

_TOKEN_TO_ELEMENT = {t: i for i, t in enumerate(TOKENS)}


def apart(x: int) -> int:
    """GF(3) coefficient a of x = a + b*w."""
    return x % 3


def bpart(x: int) -> int:
    """GF(3) coefficient b of x = a + b*w."""
    return x // 3


def element(a: int, b: int) -> int:
    return (a % 3) + 3 * (b % 3)


def format_element(x: int) -> str:
    return TOKENS[x]


def parse_element(token: str) -> int:
    """Inverse of format_element.  Raises ValueError on unknown tokens."""
    try:
        return _TOKEN_TO_ELEMENT[token]
    except KeyError:
        raise ValueError(f"not a GF(9) element token: {token!r}") from None


# ---------------------------------------------------------------------------
# operation tables

def _build_tables():
    add = np.zeros((9, 9), dtype=np.uint8)
    mul = np.zeros((9, 9), dtype=np.uint8)
    neg = np.zeros(9, dtype=np.uint8)
    conj = np.zeros(9, dtype=np.uint8)
    trace = np.zeros(9, dtype=np.uint8)
    for x in range(9):
        a, b = x % 3, x // 3
        neg[x] = element(-a, -b)
        # x**3 = a + b*w**3 = (a+b) + 2b*w
        conj[x] = element(a + b, 2 * b)
        # x + x**3 = (2a+b) + 3b*w = 2a+b in GF(3)
        trace[x] = (2 * a + b) % 3
        for y in range(9):
            c, d = y % 3, y // 3
            add[x, y] = element(a + c, b + d)
            # (a+bw)(c+dw) = ac + (ad+bc)w + bd(w+1)
            mul[x, y] = element(a * c + b * d, a * d + b * c + b * d)
    return add, mul, neg, conj, trace


ADD, MUL, NEG, CONJ, TRACE = _build_tables()

W = element(0, 1)
W2 = MUL[W, W]

# ip1[x, y] = tr(w**2 * x * conj(y)); the full inner product is the
# GF(3) sum of ip1 over coordinates.
IP1 = TRACE[MUL[W2, MUL[:, CONJ]]].astype(np.uint8)


def gf9_add(x: int, y: int) -> int:
    return int(ADD[x, y])


def gf9_neg(x: int) -> int:
    return int(NEG[x])


def gf9_mul(x: int, y: int) -> int:
    return int(MUL[x, y])


def gf9_conj(x: int) -> int:
    return int(CONJ[x])


def gf9_trace(x: int) -> int:
    return int(TRACE[x])


def hermitian_trace_ip(u, v) -> int:
    """Trace-Hermitian inner product of two equal-length GF(9) vectors."""
    if len(u) != len(v):
        raise ValueError("length mismatch")
    s = 0
    for x, y in zip(u, v):
        s += IP1[x, y]
    return s % 3


# ---------------------------------------------------------------------------
# Sp2(3)

def sp2_enumerate() -> tuple[tuple[int, int, int, int], ...]:
    """All 24 matrices (m00, m01, m10, m11) over GF(3) with det = 1,
    in lexicographic order."""
    out = []
    for m00 in range(3):
        for m01 in range(3):
            for m10 in range(3):
                for m11 in range(3):
                    if (m00 * m11 - m01 * m10) % 3 == 1:
                        out.append((m00, m01, m10, m11))
    return tuple(out)


SP2 = sp2_enumerate()


def sp2_apply(m: tuple[int, int, int, int], x: int) -> int:
    """Apply m to the coefficient column of x = a + b*w."""
    a, b = x % 3, x // 3
    return element(m[0] * a + m[1] * b, m[2] * a + m[3] * b)


def _build_sp2_action():
    act = np.zeros((24, 9), dtype=np.uint8)
    for i, m in enumerate(SP2):
        for x in range(9):
            act[i, x] = sp2_apply(m, x)
    return act


# SP2_ACT[i, x] = image of element x under SP2[i]; row 0 of each map is 0.
SP2_ACT = _build_sp2_action()


# ---------------------------------------------------------------------------
# import-time verification

def _verify_tables():
    assert len(SP2) == 24
    # w generates the multiplicative group; w**4 = -1
    p = 1
    powers = []
    for _ in range(8):
        p = gf9_mul(p, W)
        powers.append(p)
    assert powers[0] == W and powers[-1] == 1
    assert len(set(powers)) == 8
    assert powers[3] == 2  # w**4 = 2 = -1
    assert gf9_conj(W) == element(1, 2)
    assert gf9_trace(W) == 1 and gf9_trace(W2) == 0
    for x in range(9):
        assert gf9_add(x, gf9_neg(x)) == 0
        assert gf9_conj(gf9_conj(x)) == x
        assert gf9_mul(x, 1) == x and gf9_mul(x, 0) == 0
        for y in range(9):
            assert gf9_add(x, y) == gf9_add(y, x)
            assert gf9_mul(x, y) == gf9_mul(y, x)
            assert gf9_conj(gf9_mul(x, y)) == gf9_mul(gf9_conj(x), gf9_conj(y))
            for z in range(9):
                assert gf9_mul(x, gf9_add(y, z)) == gf9_add(gf9_mul(x, y), gf9_mul(x, z))
                assert gf9_mul(x, gf9_mul(y, z)) == gf9_mul(gf9_mul(x, y), z)
    # every nonzero element has an inverse
    for x in range(1, 9):
        assert any(gf9_mul(x, y) == 1 for y in range(1, 9))
    # the sp2 action is faithful and fixes 0
    seen = set()
    for i in range(24):
        img = tuple(int(t) for t in SP2_ACT[i])
        assert img[0] == 0
        assert sorted(img[1:]) == list(range(1, 9))
        seen.add(img)
    assert len(seen) == 24


_verify_tables()
