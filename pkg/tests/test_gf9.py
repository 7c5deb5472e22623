"""Field arithmetic, conjugation, trace, the inner product table and the
determinant-one coefficient group."""

import numpy as np
import pytest

from sdac9 import gf9
from sdac9.gf9 import (
    ADD,
    CONJ,
    IP1,
    MUL,
    NEG,
    SP2,
    SP2_ACT,
    TOKENS,
    TRACE,
    W,
    apart,
    bpart,
    element,
    format_element,
    gf9_add,
    gf9_conj,
    gf9_mul,
    gf9_neg,
    gf9_trace,
    hermitian_trace_ip,
    parse_element,
    sp2_apply,
)


def test_element_encoding_roundtrip():
    for a in range(3):
        for b in range(3):
            x = element(a, b)
            assert apart(x) == a
            assert bpart(x) == b
    assert element(0, 0) == 0
    assert element(1, 0) == 1
    assert element(0, 1) == W == 3


def test_tokens_roundtrip():
    assert len(TOKENS) == 9
    for x in range(9):
        assert parse_element(format_element(x)) == x
    assert parse_element("w") == 3
    assert parse_element("1+w") == 4
    assert parse_element("2+2w") == 8
    with pytest.raises(ValueError):
        parse_element("3")
    with pytest.raises(ValueError):
        parse_element("w+1")


def test_field_axioms_exhaustive():
    for x in range(9):
        assert gf9_add(x, 0) == x
        assert gf9_mul(x, 1) == x
        assert gf9_mul(x, 0) == 0
        assert gf9_add(x, gf9_neg(x)) == 0
        for y in range(9):
            assert gf9_add(x, y) == gf9_add(y, x)
            assert gf9_mul(x, y) == gf9_mul(y, x)
            for z in range(9):
                assert gf9_mul(x, gf9_add(y, z)) == \
                    gf9_add(gf9_mul(x, y), gf9_mul(x, z))


def test_multiplicative_group_cyclic_of_order_eight():
    powers = []
    p = 1
    for _ in range(8):
        p = gf9_mul(p, W)
        powers.append(p)
    assert len(set(powers)) == 8
    assert powers[-1] == 1
    assert powers[3] == 2  # w**4 = -1


def test_defining_relation():
    # w**2 = w + 1
    assert gf9_mul(W, W) == gf9_add(W, 1)


def test_conjugation_is_cube_and_involution():
    for x in range(9):
        assert gf9_conj(x) == gf9_mul(x, gf9_mul(x, x))
        assert gf9_conj(gf9_conj(x)) == x
    # fixed field is GF(3)
    fixed = [x for x in range(9) if gf9_conj(x) == x]
    assert fixed == [0, 1, 2]


def test_trace_values():
    # tr(a + b*w) = 2a + b mod 3
    for a in range(3):
        for b in range(3):
            assert gf9_trace(element(a, b)) == (2 * a + b) % 3
    assert gf9_trace(W) == 1
    assert gf9_trace(gf9_mul(W, W)) == 0


def test_ip1_table_against_direct_formula():
    w2 = gf9_mul(W, W)
    for x in range(9):
        for y in range(9):
            expect = gf9_trace(gf9_mul(w2, gf9_mul(x, gf9_conj(y))))
            assert IP1[x, y] == expect


def test_ip1_antisymmetric_with_zero_diagonal():
    # swapping the arguments negates the form: conjugating the product
    # turns w**2 into w**6 = -w**2 while the trace is conj-invariant
    assert np.array_equal((3 - IP1.T.astype(int)) % 3, IP1)
    assert all(IP1[x, x] == 0 for x in range(9))


def test_hermitian_trace_ip_vectors():
    assert hermitian_trace_ip([1, 0], [0, 1]) == 0
    assert hermitian_trace_ip([W], [1]) == IP1[W, 1]
    with pytest.raises(ValueError):
        hermitian_trace_ip([1], [1, 2])


def test_sp2_has_24_elements_closed_under_product():
    assert len(SP2) == 24
    assert len(set(SP2)) == 24
    idx = {m: i for i, m in enumerate(SP2)}
    for m in SP2:
        det = (m[0] * m[3] - m[1] * m[2]) % 3
        assert det == 1
        for k in SP2:
            prod = (
                (m[0] * k[0] + m[1] * k[2]) % 3,
                (m[0] * k[1] + m[1] * k[3]) % 3,
                (m[2] * k[0] + m[3] * k[2]) % 3,
                (m[2] * k[1] + m[3] * k[3]) % 3,
            )
            assert prod in idx


def test_sp2_action_faithful_and_fixes_zero():
    images = set()
    for i, m in enumerate(SP2):
        row = tuple(int(x) for x in SP2_ACT[i])
        assert row[0] == 0
        assert sorted(row[1:]) == list(range(1, 9))
        assert row == tuple(sp2_apply(m, x) for x in range(9))
        images.add(row)
    assert len(images) == 24


def test_sp2_action_transitive_on_nonzero():
    # the orbit of 1 under the action covers all eight nonzero elements
    orbit = {int(SP2_ACT[i, 1]) for i in range(24)}
    assert orbit == set(range(1, 9))


def test_sp2_action_additive():
    for i in range(24):
        for x in range(9):
            for y in range(9):
                assert SP2_ACT[i, gf9_add(x, y)] == \
                    gf9_add(int(SP2_ACT[i, x]), int(SP2_ACT[i, y]))


def test_tables_consistent_with_scalar_ops():
    for x in range(9):
        assert NEG[x] == gf9_neg(x)
        assert CONJ[x] == gf9_conj(x)
        assert TRACE[x] == gf9_trace(x)
        for y in range(9):
            assert ADD[x, y] == gf9_add(x, y)
            assert MUL[x, y] == gf9_mul(x, y)


def test_module_level_verification_ran():
    # the module self-checks its tables at import time; the hook exists
    assert callable(gf9._verify_tables)
