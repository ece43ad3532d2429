from fractions import Fraction

import pytest

from gentlecones.basis import representative_chain_map, standard_basis
from gentlecones.complexes import build, build_band_complex, zero_complex
from gentlecones.cones import cone, render_unfolded
from gentlecones.corpus import enumerate_strings, verify_basis_map
from gentlecones.fields import RATIONALS
from gentlecones.oracle import is_isomorphic, mapping_cone, minimize
from gentlecones.words import (
    canonical_band,
    canonical_string,
    make_band,
    make_string,
    parse_band,
    parse_string,
    shift,
    trivial_string,
)


def summand_words(summands):
    return sorted(s.describe() for s in summands)


def built_sum(pres, summands, fld=RATIONALS):
    total = zero_complex(pres, fld)
    for s in summands:
        if s.kind != "zero":
            total = total.direct_sum(build(s.value, fld))
    return total


def test_golden_graph_cone(algebra_a):
    s = parse_string("e (d*c) b a ~d", algebra_a, 0)
    t = parse_string("~e ~f c b (a*f) e", algebra_a, 3)
    maps = [m for m in standard_basis(s, t) if m.payload.f_L is not None]
    (m,) = maps
    summands = cone(m)
    assert summand_words(summands) == ["d f e @anchor=2", "e d f e @anchor=-1"]
    ok, *_ = verify_basis_map(m, RATIONALS, summands=summands)
    assert ok


def test_quasi_cone_and_class_representatives(algebra_a):
    s = parse_string("b a c b", algebra_a, 0)
    t = parse_string("~f c b a", algebra_a, 2)
    (m,) = standard_basis(s, t)
    summands = cone(m)
    expected = {
        canonical_string(parse_string("b a c b a", algebra_a, -1)).serialize(),
        canonical_string(parse_string("~f c b", algebra_a, 2)).serialize(),
    }
    assert set(summand_words(summands)) == expected
    ok, *_ = verify_basis_map(m, RATIONALS, summands=summands)
    assert ok


def test_cone_of_identity_is_contractible(algebra_a, algebra_b):
    s = parse_string("b a c b", algebra_a, 0)
    maps = [
        m
        for m in standard_basis(s, s)
        if m.kind == "graph" and m.payload.overlap.k == len(s.letters)
    ]
    assert all(x.kind == "zero" for x in cone(maps[0]))
    b = parse_band("~e ~d c b", algebra_b, scalar=Fraction(2), scalar_pos=2)
    idmaps = [m for m in standard_basis(b, b) if m.kind == "graph" and m.payload.is_identity]
    (x,) = cone(idmaps[0])
    assert x.kind == "zero"


def test_summand_count_contract(algebra_a, algebra_b):
    s = parse_string("e (d*c) b a ~d", algebra_a, 0)
    t = parse_string("~e ~f c b (a*f) e", algebra_a, 3)
    for m in standard_basis(s, t):
        assert len(cone(m)) == 2
    lam = parse_band("~e ~d c b", algebra_b, scalar=Fraction(2), scalar_pos=2)
    mu = parse_band("~j ~i ~g f c (b*a)", algebra_b, scalar=Fraction(3), scalar_pos=3)
    for m in standard_basis(lam, mu):
        assert len(cone(m)) == 1


def test_band_band_graph_cone_parity(algebra_b):
    lam = parse_band("~e ~d c b", algebra_b, scalar=Fraction(2), scalar_pos=2)
    mu = parse_band("~j ~i ~g f c (b*a)", algebra_b, scalar=Fraction(3), scalar_pos=3)
    (m,) = standard_basis(lam, mu)
    assert m.kind == "graph"
    (x,) = cone(m)
    assert x.kind == "band"
    expected = canonical_band(
        parse_band(
            "~e ~(f*d) g i j ~a", algebra_b, scalar=Fraction(-2, 3), scalar_pos=2, anchor=0
        )
    )
    # align the anchors before comparing canonical forms
    got = x.value
    assert tuple(l.serialize() for l in got.letters) == tuple(
        l.serialize() for l in expected.letters
    )
    assert got.scalar == expected.scalar
    rep = representative_chain_map(m)
    M = minimize(mapping_cone(rep))
    assert is_isomorphic(M, build_band_complex(got))
    wrong = make_band(got.pres, got.letters, -got.scalar, got.scalar_pos, got.anchor)
    assert not is_isomorphic(M, build_band_complex(wrong))


def test_mixed_band_string_cone(algebra_b):
    band = parse_band("~e ~d c b", algebra_b, scalar=Fraction(2), scalar_pos=2)
    # a string sharing the letter c with the band
    s = parse_string("f c", algebra_b, 0)
    found = False
    for n in range(-6, 7):
        tn = shift(s, n)
        for m in standard_basis(band, tn):
            summands = cone(m)
            assert len(summands) == 1
            assert summands[0].kind in ("string", "zero")
            ok, *_ = verify_basis_map(m, RATIONALS, summands=summands)
            assert ok
            found = True
    assert found


def test_every_summand_revalidates(algebra_a):
    objs = enumerate_strings(algebra_a, 4, 2)[::5]
    for a in objs:
        for b in objs:
            for n in (-1, 0, 1):
                for m in standard_basis(a, shift(b, n)):
                    for x in cone(m):
                        if x.kind == "string" and x.value.letters:
                            make_string(x.value.pres, x.value.letters, x.value.anchor)
                        elif x.kind == "band":
                            v = x.value
                            make_band(v.pres, v.letters, v.scalar, v.scalar_pos, v.anchor)
                            direct = sum(1 for l in v.letters if not l.inverse)
                            assert 2 * direct == len(v.letters)


def test_render_unfolded(algebra_a):
    s = parse_string("b a", algebra_a, 0)
    out = render_unfolded(s)
    assert out == "P(2)[0] -b-> P(1)[1] -a-> P(0)[2]"
    t = parse_string("~a", algebra_a, 5)
    assert render_unfolded(t) == "P(0)[5] <-a- P(1)[4]"
