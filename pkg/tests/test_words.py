from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gentlecones.corpus import enumerate_bands, enumerate_strings
from gentlecones.oracle import is_isomorphic
from gentlecones.complexes import build_band_complex, build_string_complex
from gentlecones.words import (
    CancellingPairError,
    InvalidJunctionError,
    InvalidLetterError,
    NotClosedError,
    NotPrimitiveError,
    ScalarOnInverseLetterError,
    UnbalancedDirectionsError,
    ZeroScalarError,
    degree_profile,
    invert,
    make_band,
    parse_band,
    parse_string,
    rotate_band,
    shift,
    trivial_string,
)


def test_parse_golden_string(algebra_a):
    s = parse_string("e (d*c) b a ~d", algebra_a, 0)
    assert len(s.letters) == 5
    assert s.nodes() == (("3", 0), ("4", 1), ("2", 2), ("1", 3), ("0", 4), ("4", 3))


def test_cancelling_pair(algebra_a):
    with pytest.raises(CancellingPairError):
        parse_string("~a a", algebra_a, 0)


def test_relation_junction_valid(algebra_a):
    s = parse_string("e d", algebra_a, 0)  # junction ed is a relation
    assert len(s.letters) == 2
    with pytest.raises(InvalidJunctionError):
        parse_string("e (d*c) (a*f)", algebra_a, 0)  # dc then af: no relation


def test_invalid_letter(algebra_a):
    with pytest.raises(InvalidLetterError):
        parse_string("(b*a)", algebra_a, 0)  # ba lies in the ideal


def test_invert_is_involution(algebra_a):
    s = parse_string("e (d*c) b a ~d", algebra_a, 0)
    assert invert(invert(s)) == s
    assert degree_profile(invert(s)) == degree_profile(s)


def test_shift_properties(algebra_a):
    s = parse_string("b a c b", algebra_a, 0)
    assert shift(s, 0) == s
    assert shift(shift(s, 1), -1) == s
    prof = degree_profile(s)
    shifted = degree_profile(shift(s, 1))
    assert shifted == {d - 1: v for d, v in prof.items()}


def test_degree_profile_golden(algebra_a):
    s = parse_string("b a c b", algebra_a, 0)
    assert degree_profile(s) == {
        0: ("2",),
        1: ("1",),
        2: ("0",),
        3: ("2",),
        4: ("1",),
    }
    t = trivial_string(algebra_a, "0", 3)
    assert degree_profile(t) == {3: ("0",)}


def test_band_validation(algebra_b):
    band = parse_band("~e ~d c b", algebra_b, scalar=Fraction(5), scalar_pos=2)
    direct = sum(1 for l in band.letters if not l.inverse)
    assert direct * 2 == len(band.letters)
    with pytest.raises(NotClosedError):
        parse_band("c b", algebra_b, scalar=1, scalar_pos=0)
    with pytest.raises(NotPrimitiveError):
        parse_band("~e ~d c b ~e ~d c b", algebra_b, scalar=1, scalar_pos=2)
    with pytest.raises(ZeroScalarError):
        parse_band("~e ~d c b", algebra_b, scalar=0, scalar_pos=2)
    with pytest.raises(ScalarOnInverseLetterError):
        parse_band("~e ~d c b", algebra_b, scalar=1, scalar_pos=0)
def test_band_unbalanced(two_cycle):
    with pytest.raises(UnbalancedDirectionsError):
        parse_band("a b", two_cycle, scalar=1, scalar_pos=0)


def test_band_profile_size(algebra_b):
    band = parse_band("~e ~d c b", algebra_b, scalar=1, scalar_pos=2)
    prof = degree_profile(band)
    assert sum(len(v) for v in prof.values()) == len(band.letters)


def test_rotate_band_properties(algebra_b):
    band = parse_band("~e ~d c b", algebra_b, scalar=Fraction(3), scalar_pos=2)
    assert rotate_band(band, 0) == band
    assert rotate_band(band, len(band.letters)) == band
    base = build_band_complex(band)
    for k in range(1, len(band.letters)):
        rotated = rotate_band(band, k)
        assert rotated.letters[(band.scalar_pos - k) % len(band.letters)] == band.letters[band.scalar_pos]
        assert is_isomorphic(base, build_band_complex(rotated))


def test_invert_band_scalar_convention(algebra_b):
    band = parse_band("~e ~d c b", algebra_b, scalar=Fraction(7), scalar_pos=2)
    inv = invert(band)
    assert inv.scalar == Fraction(1, 7)
    assert not inv.letters[inv.scalar_pos].inverse
    assert is_isomorphic(build_band_complex(band), build_band_complex(inv))


def test_parse_serialize_identity_on_enumeration(algebra_a, algebra_b):
    for pres in (algebra_a, algebra_b):
        for s in enumerate_strings(pres, 3, 2):
            assert parse_string(s.serialize(), pres) == s
    for b in enumerate_bands(algebra_b, 4, 2):
        assert parse_band(b.serialize(), algebra_b) == b


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=-8, max_value=8), st.data())
def test_shift_and_invert_preserve_validity(n, data):
    from gentlecones.corpus import load_corpus_presentation
    from gentlecones.words import make_string

    pres = load_corpus_presentation("algebra-A")
    strings = enumerate_strings(pres, 4, 2)
    s = data.draw(st.sampled_from(strings))
    t = shift(invert(s), n)
    # revalidation: rebuilding from the letters must succeed
    if t.letters:
        make_string(pres, t.letters, t.anchor)
    assert sorted(degree_profile(invert(s)).items()) == sorted(degree_profile(s).items())
