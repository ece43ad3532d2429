import itertools

import pytest

from gentlecones.presentation import (
    GentlePresentation,
    NotComposableError,
    NotGentleError,
    ParseError,
    UnknownVertexError,
    check_gentle,
    compose_paths,
    enumerate_paths,
    parse_presentation,
)


ALGEBRA_A_TEXT = """
quiver algebra-A
vertex 0 1 2 3 4
arrow a : 0 -> 1
arrow b : 1 -> 2
arrow c : 2 -> 0
arrow d : 0 -> 4
arrow e : 4 -> 3
arrow f : 3 -> 0
rel b*a
rel c*b
rel a*c
rel e*d
rel f*e
rel d*f
"""


def test_parse_algebra_a():
    pres = parse_presentation(ALGEBRA_A_TEXT)
    assert len(pres.vertices) == 5
    assert len(pres.arrows) == 6
    assert len(pres.relations) == 6
    assert check_gentle(pres) == []


def test_single_vertex_algebra_is_gentle():
    pres = parse_presentation("quiver point\nvertex x\n")
    assert check_gentle(pres) == []
    assert [p.word() for p in pres.all_paths()] == ["1_x"]


def test_condition_one_violation():
    text = ALGEBRA_A_TEXT + "arrow g : 0 -> 2\n"
    with pytest.raises(NotGentleError) as exc:
        parse_presentation(text)
    conds = {v.condition for v in exc.value.violations}
    assert 1 in conds
    assert any(v.witness == "0" for v in exc.value.violations)


def test_condition_three_violation(algebra_a):
    # two zero-successors for c: both ac and dc in the ideal
    arrows = dict(algebra_a.arrows)
    rels = set(algebra_a.relations) | {("d", "c")}
    cand = GentlePresentation("bad", algebra_a.vertices, arrows, rels, validate=False)
    violations = check_gentle(cand)
    assert any(v.condition == 3 and v.witness == "c" for v in violations)


def test_condition_two_violation():
    # verified by exhaustive scan: dropping ac from algebra-A gives arrow c
    # two nonzero successors (a and d), a condition (2) failure
    text = ALGEBRA_A_TEXT.replace("rel a*c\n", "")
    with pytest.raises(NotGentleError) as exc:
        parse_presentation(text)
    violations = exc.value.violations
    assert any(v.condition == 2 for v in violations)
    pres = parse_presentation(ALGEBRA_A_TEXT)
    bad = GentlePresentation(
        "x", pres.vertices, pres.arrows, pres.relations - {("a", "c")}, validate=False
    )
    offenders = [
        a
        for a in bad.arrows
        if sum(
            1
            for b in bad.arrows
            if bad.arrows[b][0] == bad.arrows[a][1] and (b, a) not in bad.relations
        )
        > 1
    ]
    assert offenders == ["c"]


def test_infinite_dimensional_rejected():
    text = "quiver loop\nvertex 1 2\narrow a : 1 -> 2\narrow b : 2 -> 1\n"
    with pytest.raises(NotGentleError) as exc:
        parse_presentation(text)
    assert any(v.condition == 0 for v in exc.value.violations)


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_presentation("quiver x\nvertex 1\nrel a*b*c\n")
    with pytest.raises(UnknownVertexError):
        parse_presentation("quiver x\nvertex 1\narrow a : 1 -> 9\n")
    with pytest.raises(ParseError):
        parse_presentation("vertex 1\n")


def test_compose_paths(algebra_a):
    d = algebra_a.arrow_path("d")
    c = algebra_a.arrow_path("c")
    dc = compose_paths(algebra_a, d, c)
    assert dc is not None and dc.source == "2" and dc.target == "4"
    b = algebra_a.arrow_path("b")
    a = algebra_a.arrow_path("a")
    assert compose_paths(algebra_a, b, a) is None  # ba is a relation
    one = algebra_a.trivial_path("0")
    assert compose_paths(algebra_a, a, one) == a
    with pytest.raises(NotComposableError):
        compose_paths(algebra_a, a, b)


def test_compose_associative(algebra_a):
    paths = algebra_a.all_paths()
    for p, q, r in itertools.product(paths, repeat=3):
        if p.source != q.target or q.source != r.target:
            continue
        pq = algebra_a.mul(p, q)
        qr = algebra_a.mul(q, r)
        left = algebra_a.mul(pq, r) if pq is not None else None
        right = algebra_a.mul(p, qr) if qr is not None else None
        if pq is not None and qr is not None:
            assert left == right


def test_enumerate_paths_counts(algebra_a):
    assert len(enumerate_paths(algebra_a, 0)) == 5
    assert len(enumerate_paths(algebra_a, 1)) == 11
    # brute force over all 36 arrow pairs: exactly dc and af compose nonzero
    length2 = set()
    for x in algebra_a.arrows:
        for y in algebra_a.arrows:
            if algebra_a.arrows[y][1] != algebra_a.arrows[x][0]:
                continue
            if (x, y) not in algebra_a.relations:
                length2.add((x, y))
    assert length2 == {("d", "c"), ("a", "f")}
    got = {p.arrows for p in enumerate_paths(algebra_a, 2) if len(p) == 2}
    assert got == length2
    # no enumerated path contains a relation pair
    for p in algebra_a.all_paths():
        for later, earlier in zip(p.arrows, p.arrows[1:]):
            assert (later, earlier) not in algebra_a.relations


def test_conditions_restated_as_counts(algebra_a):
    for a in algebra_a.arrows:
        tgt = algebra_a.arrows[a][1]
        nonzero = [
            b
            for b in algebra_a.arrows
            if algebra_a.arrows[b][0] == tgt and (b, a) not in algebra_a.relations
        ]
        zero = [
            b
            for b in algebra_a.arrows
            if algebra_a.arrows[b][0] == tgt and (b, a) in algebra_a.relations
        ]
        assert len(nonzero) <= 1 and len(zero) <= 1


def test_serialize_round_trip(algebra_a):
    text = algebra_a.serialize()
    again = parse_presentation(text)
    assert again.serialize() == text
    assert again.vertices == algebra_a.vertices
    assert again.relations == algebra_a.relations
    assert list(again.arrows) == list(algebra_a.arrows)
