import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tamesign import fields
from tamesign.errors import FieldMismatch, NotNormOne, TooLarge, ZeroInput, ZeroInversion
from tamesign.fields import GF


def test_basic_arith():
    g7 = GF(7)
    assert int(g7.elem(3) * g7.elem(5)) == 1
    assert g7.elem(4) ** 0 == g7.one()
    g9 = GF(3, 2)
    assert g9.modulus == (1, 0, 1)
    x = g9.gen()
    assert x * x == -g9.one()
    with pytest.raises(ZeroInversion):
        g7.zero().inv()
    with pytest.raises(FieldMismatch):
        g7.elem(1) + g9.elem(1)


def test_canonical_modulus_reproducible():
    assert GF(5, 2).modulus == fields.canonical_modulus(5, 2)
    assert GF(5, 2) is GF(5, 2)
    with pytest.raises(ValueError):
        GF(2)
    with pytest.raises(ValueError):
        GF(9)


def test_frobenius():
    g9, g3 = GF(3, 2), GF(3)
    x = g9.gen()
    a = g9.elem(2)  # lies in GF(3)
    assert fields.frobenius(a, g3, 1) == a
    assert fields.frobenius(x, g3, 1) == -x
    assert fields.frobenius(x, g3, 0) == x
    # iterating [big:small] times is the identity
    for code in range(1, 9):
        b = g9.elem(code)
        assert fields.frobenius(b, g3, 2) == b


def test_trace_norm():
    g9, g3 = GF(3, 2), GF(3)
    x = g9.gen()
    assert fields.norm(x, g3) == g3.one()  # x * (-x) = -x^2 = 1
    assert fields.norm(g9.elem(2), g9) == g9.elem(2)  # trivial extension
    for c1 in range(9):
        for c2 in range(9):
            a, b = g9.elem(c1), g9.elem(c2)
            assert fields.trace(a + b, g3) == fields.trace(a, g3) + fields.trace(b, g3)
    with pytest.raises(ValueError):
        fields.trace_norm(x, g3, "nonsense")


def test_sgn():
    g7 = GF(7)
    assert fields.sgn(g7.one()).sign() == 1
    assert fields.sgn_in(g7.elem(3), 1) == -1  # squares mod 7 are {1, 2, 4}
    assert fields.sgn_in(g7.elem(2), 1) == 1
    for p, n in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2)]:
        F = GF(p, n)
        q = p**n
        assert fields.sgn_in(-F.one(), n) == (1 if q % 4 == 1 else -1)
    with pytest.raises(ZeroInput):
        fields.sgn(g7.zero())


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 48), st.integers(1, 48))
def test_sgn_multiplicative(c1, c2):
    F = GF(7, 2)
    a, b = F.elem(c1), F.elem(c2)
    if not a or not b:
        return
    assert fields.sgn(a * b) == fields.sgn(a) * fields.sgn(b)


def test_sgn_multiplicative_exhaustive_small():
    for p, n in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (7, 2), (3, 3)]:
        F = GF(p, n)
        if F.order > 49:
            continue
        for c1 in range(1, F.order):
            for c2 in range(1, F.order):
                a, b = F.elem(c1), F.elem(c2)
                assert fields.sgn(a * b) == fields.sgn(a) * fields.sgn(b)


def test_sgn1_and_lang():
    g9, g3 = GF(3, 2), GF(3)
    one = g9.one()
    assert fields.sgn1(one, g3) == 1
    assert fields.sgn1(-one, g3) == 1  # (-1)^2 = 1 since (q+1)/2 = 2
    norm_one = [a for a in g9.elements() if a and a**4 == one]
    assert len(norm_one) == 4
    gens = [u for u in norm_one if u * u != one and u != one]
    assert all(fields.sgn1(g, g3) == -1 for g in gens if g * g == -one)
    with pytest.raises(NotNormOne):
        fields.sgn1(g9.gen() + one, g3) if fields.norm(g9.gen() + one, g3) != g3.one() else None

    assert fields.lang(one, g3) is not None
    a = fields.lang(-one, g3)
    assert a * a == -one  # solves a^(-2) = -1
    # sgn(lang(u)) = sgn1(u), exhaustively over two quadratic extensions
    for big, small in [(GF(3, 2), GF(3)), (GF(5, 2), GF(5))]:
        q = small.order
        for u in big.elements():
            if not u or u ** (q + 1) != big.one():
                continue
            rep = fields.lang(u, small)
            assert rep * (rep**q).inv() == u
            assert fields.sgn_in(rep, big.degree) == fields.sgn1(u, small)


def test_norm_of_lang_well_defined_mod_squares():
    g9, g3 = GF(3, 2), GF(3)
    for u in g9.elements():
        if not u or u**4 != g9.one():
            continue
        rep = fields.lang(u, g3)
        for c in (g3.one(), g3.elem(2)):
            scaled = fields.embed(c, g9) * rep
            n1 = fields.norm(scaled, g3)
            n2 = fields.norm(rep, g3)
            assert fields.sgn(n1) == fields.sgn(n2)


def test_sqrt():
    g7 = GF(7)
    assert fields.field_sqrt(g7.one()) in (g7.one(), -g7.one())
    r = fields.field_sqrt(g7.elem(2))
    assert r in (g7.elem(3), g7.elem(4))
    assert fields.field_sqrt(g7.elem(3)) is None
    with pytest.raises(ZeroInput):
        fields.field_sqrt(g7.zero())
    for p, n in [(3, 2), (5, 1), (13, 1), (5, 2)]:
        F = GF(p, n)
        for code in range(1, F.order):
            a = F.elem(code)
            r = fields.field_sqrt(a)
            if r is None:
                assert fields.sgn_in(a, n) == -1
            else:
                assert r * r == a


def test_disc_ext():
    assert not fields.disc_ext(GF(5, 3), GF(5)).nontrivial  # odd degree
    assert not fields.disc_ext(GF(3, 2), GF(3, 2)).nontrivial
    assert fields.disc_ext(GF(3, 2), GF(3)).nontrivial
    # trivial exactly in odd degree
    for p, big, small in [(3, 2, 1), (3, 3, 1), (3, 4, 2), (5, 2, 1), (5, 3, 1), (7, 2, 1)]:
        rel = big // small
        cls = fields.disc_ext(GF(p, big), GF(p, small))
        assert cls.nontrivial == (rel % 2 == 0)


def test_embed_project_and_guards():
    g9, g81 = GF(3, 2), GF(3, 4)
    x = g9.gen()
    e = fields.embed(x, g81)
    assert e * e == -g81.one()
    assert fields.project(e, g9) == x
    with pytest.raises(FieldMismatch):
        fields.project(g81.gen(), g9)
    with pytest.raises(TooLarge):
        GF(5, 6).elements()
