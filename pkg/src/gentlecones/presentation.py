"""Gentle-algebra presentations and exact path arithmetic.

A presentation is a quiver together with a set of length-two monomial
relations.  Paths are read right to left: the product ``p * q`` means
"first q, then p" and is only defined when ``q.target == p.source``.
A relation pair ``(b, a)`` states that the composite "a then b" is zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class PresentationError(Exception):
    pass


class ParseError(PresentationError):
    """Malformed algebra file."""


class UnknownVertexError(ParseError):
    pass


class DuplicateArrowError(ParseError):
    pass


class NotComposableError(PresentationError):
    """Endpoint mismatch in a path composition."""


@dataclass(frozen=True)
class Violation:
    """One failed gentleness condition, with a witness."""

    condition: int
    witness: str
    message: str

    def __str__(self):
        return f"condition ({self.condition}) fails at {self.witness}: {self.message}"


class NotGentleError(PresentationError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class Path:
    """A path in the quiver, stored with its arrows in word order.

    ``arrows[0]`` is the last arrow applied (the target end), matching the
    right-to-left reading ``p = a_n ... a_1``.  A trivial path has no arrows
    and equal source and target.
    """

    source: str
    target: str
    arrows: tuple = ()

    def __len__(self):
        return len(self.arrows)

    @property
    def is_trivial(self):
        return not self.arrows

    def word(self):
        return "*".join(self.arrows) if self.arrows else f"1_{self.source}"

    def __str__(self):
        return self.word()


class GentlePresentation:
    """A validated bound quiver presentation of a gentle algebra.

    Vertices and arrow names are arbitrary identifiers.  ``relations`` is a
    frozenset of pairs ``(b, a)`` meaning the composite "a then b" lies in
    the ideal.
    """

    def __init__(self, name, vertices, arrows, relations, validate=True):
        self.name = name
        self.vertices = tuple(vertices)
        # arrow name -> (source, target), insertion order preserved
        self.arrows = dict(arrows)
        self.relations = frozenset(relations)
        if validate:
            violations = check_gentle(self)
            if violations:
                raise NotGentleError(violations)
        self._paths_cache = None
        self._paths_by_ends = None
        self._mul_cache = {}

    # -- basic path arithmetic -------------------------------------------

    def arrow_source(self, a):
        return self.arrows[a][0]

    def arrow_target(self, a):
        return self.arrows[a][1]

    def trivial_path(self, vertex):
        if vertex not in self.vertices:
            raise UnknownVertexError(f"unknown vertex {vertex!r}")
        return Path(vertex, vertex, ())

    def arrow_path(self, name):
        src, tgt = self.arrows[name]
        return Path(src, tgt, (name,))

    def is_zero_pair(self, later, earlier):
        """True iff the composite "earlier then later" lies in the ideal."""
        return (later, earlier) in self.relations

    def path_is_nonzero(self, p: Path) -> bool:
        """Check composability and absence of relation pairs along ``p``."""
        arrows = p.arrows
        if not arrows:
            return p.source == p.target and p.source in self.vertices
        if self.arrow_source(arrows[-1]) != p.source:
            return False
        if self.arrow_target(arrows[0]) != p.target:
            return False
        for i in range(len(arrows) - 1):
            later, earlier = arrows[i], arrows[i + 1]
            if self.arrow_target(earlier) != self.arrow_source(later):
                return False
            if self.is_zero_pair(later, earlier):
                return False
        return True

    def mul(self, p: Path, q: Path):
        """The product ``p * q`` ("first q, then p"); None when it is zero.

        Raises NotComposableError if the endpoints do not match.
        """
        if p.source != q.target:
            raise NotComposableError(
                f"cannot compose: source of {p} is {p.source}, target of {q} is {q.target}"
            )
        if p.is_trivial:
            return q
        if q.is_trivial:
            return p
        key = (p.arrows, q.arrows)
        cached = self._mul_cache.get(key, 0)
        if cached != 0:
            return cached
        if self.is_zero_pair(p.arrows[-1], q.arrows[0]):
            out = None
        else:
            out = Path(q.source, p.target, p.arrows + q.arrows)
        self._mul_cache[key] = out
        return out

    def path_from_word(self, arrows):
        """Build a Path from a word-order arrow tuple; None if zero in the algebra."""
        arrows = tuple(arrows)
        if not arrows:
            raise ValueError("path_from_word needs at least one arrow; use trivial_path")
        for a in arrows:
            if a not in self.arrows:
                raise ParseError(f"unknown arrow {a!r}")
        p = Path(self.arrow_source(arrows[-1]), self.arrow_target(arrows[0]), arrows)
        if not self.path_is_nonzero(p):
            return None
        return p

    # -- global path enumeration -----------------------------------------

    def all_paths(self):
        """All nonzero paths, including trivial ones, in deterministic order.

        Requires the algebra to be finite dimensional (guaranteed by
        validation): the enumeration extends paths arrow by arrow and stops
        when every extension hits a relation.
        """
        if self._paths_cache is None:
            paths = [self.trivial_path(v) for v in sorted(self.vertices, key=str)]
            frontier = [self.arrow_path(a) for a in sorted(self.arrows)]
            arrows_by_source = {}
            for a, (src, _tgt) in self.arrows.items():
                arrows_by_source.setdefault(src, []).append(a)
            for lst in arrows_by_source.values():
                lst.sort()
            while frontier:
                paths.extend(frontier)
                nxt = []
                for p in frontier:
                    for b in arrows_by_source.get(p.target, ()):
                        if not self.is_zero_pair(b, p.arrows[0]):
                            nxt.append(Path(p.source, self.arrow_target(b), (b,) + p.arrows))
                frontier = sorted(nxt, key=lambda q: q.arrows)
            paths.sort(key=lambda q: (len(q.arrows), q.arrows, str(q.source)))
            self._paths_cache = tuple(paths)
        return self._paths_cache

    def max_path_length(self):
        return max(len(p) for p in self.all_paths())

    def paths_from_to(self, src, tgt, include_trivial=False):
        """All nonzero paths from ``src`` to ``tgt`` (nontrivial unless asked)."""
        if self._paths_by_ends is None:
            table = {}
            for p in self.all_paths():
                table.setdefault((p.source, p.target), []).append(p)
            self._paths_by_ends = table
        out = [
            p
            for p in self._paths_by_ends.get((src, tgt), ())
            if include_trivial or not p.is_trivial
        ]
        return out

    # -- serialization -----------------------------------------------------

    def serialize(self):
        lines = [f"quiver {self.name}"]
        if self.vertices:
            lines.append("vertex " + " ".join(str(v) for v in self.vertices))
        for a, (src, tgt) in self.arrows.items():
            lines.append(f"arrow {a} : {src} -> {tgt}")
        for later, earlier in sorted(self.relations):
            lines.append(f"rel {later}*{earlier}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return (
            f"GentlePresentation({self.name!r}, {len(self.vertices)} vertices, "
            f"{len(self.arrows)} arrows, {len(self.relations)} relations)"
        )


def enumerate_paths(pres: GentlePresentation, max_len: int):
    """All nonzero paths of length at most ``max_len``, trivial paths included,
    ordered by length then lexicographically on the arrow word."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    return [p for p in pres.all_paths() if len(p) <= max_len]


def compose_paths(pres: GentlePresentation, p: Path, q: Path):
    """The composite "q then p"; None when the composite is zero in the algebra."""
    return pres.mul(p, q)


def check_gentle(candidate) -> list:
    """Return the list of gentleness violations of a structurally well-formed
    candidate presentation (empty iff gentle and finite dimensional).

    Conditions (1)-(3) are the counting conditions of the definition;
    condition (4) (length-two monomial relations) is enforced by the data
    type, so here it reduces to composability of the relation pairs.
    Condition (0) reports a nonzero cyclic composite, which would make the
    algebra infinite dimensional.
    """
    violations = []
    arrows = candidate.arrows
    relations = candidate.relations

    for later, earlier in sorted(relations):
        if later not in arrows or earlier not in arrows:
            violations.append(
                Violation(4, f"{later}*{earlier}", "relation names an unknown arrow")
            )
        elif arrows[earlier][1] != arrows[later][0]:
            violations.append(
                Violation(4, f"{later}*{earlier}", "relation pair is not composable")
            )

    out_count = {v: 0 for v in candidate.vertices}
    in_count = {v: 0 for v in candidate.vertices}
    for a, (src, tgt) in arrows.items():
        out_count[src] += 1
        in_count[tgt] += 1
    for v in candidate.vertices:
        if out_count[v] > 2:
            violations.append(
                Violation(1, str(v), f"{out_count[v]} arrows start at this vertex")
            )
        if in_count[v] > 2:
            violations.append(
                Violation(1, str(v), f"{in_count[v]} arrows end at this vertex")
            )

    for a, (src, tgt) in arrows.items():
        succ_nonzero = [
            b for b, (s2, _t2) in arrows.items() if s2 == tgt and (b, a) not in relations
        ]
        succ_zero = [
            b for b, (s2, _t2) in arrows.items() if s2 == tgt and (b, a) in relations
        ]
        pred_nonzero = [
            c for c, (_s2, t2) in arrows.items() if t2 == src and (a, c) not in relations
        ]
        pred_zero = [
            c for c, (_s2, t2) in arrows.items() if t2 == src and (a, c) in relations
        ]
        if len(succ_nonzero) > 1:
            violations.append(
                Violation(2, a, f"arrows {succ_nonzero} all compose nonzero after {a}")
            )
        if len(pred_nonzero) > 1:
            violations.append(
                Violation(2, a, f"{a} composes nonzero after all of {pred_nonzero}")
            )
        if len(succ_zero) > 1:
            violations.append(
                Violation(3, a, f"arrows {succ_zero} all annihilate {a}")
            )
        if len(pred_zero) > 1:
            violations.append(
                Violation(3, a, f"{a} annihilates all of {pred_zero}")
            )

    # Finite dimensionality: the nonzero-composition graph on arrows must be
    # acyclic, otherwise some cyclic path is nonzero in every power.
    if not violations:
        comp = {a: [] for a in arrows}
        for a, (src, tgt) in arrows.items():
            for b, (s2, _t2) in arrows.items():
                if s2 == tgt and (b, a) not in relations:
                    comp[a].append(b)
        color = {a: 0 for a in arrows}

        def has_cycle(a):
            color[a] = 1
            for b in comp[a]:
                if color[b] == 1:
                    return True
                if color[b] == 0 and has_cycle(b):
                    return True
            color[a] = 2
            return False

        for a in sorted(arrows):
            if color[a] == 0 and has_cycle(a):
                violations.append(
                    Violation(
                        0, a, "nonzero cyclic composite: the algebra is infinite dimensional"
                    )
                )
                break

    return violations


def parse_presentation(text: str) -> GentlePresentation:
    """Parse the line-oriented algebra file grammar.

    Grammar (UTF-8, ``#`` comments)::

        quiver <name>
        vertex <id> [<id> ...]
        arrow <name> : <src> -> <tgt>
        rel <b>*<a>        # meaning "a then b" is zero

    Raises ParseError and friends on malformed input, NotGentleError when
    the data fails a gentleness condition.
    """
    name = None
    vertices = []
    seen_vertices = set()
    arrows = {}
    relations = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fieldsplit = line.split()
        head, rest = fieldsplit[0], fieldsplit[1:]
        if head == "quiver":
            if len(rest) != 1:
                raise ParseError(f"line {lineno}: quiver takes exactly one name")
            name = rest[0]
        elif head == "vertex":
            if not rest:
                raise ParseError(f"line {lineno}: vertex needs at least one id")
            for v in rest:
                if v in seen_vertices:
                    raise ParseError(f"line {lineno}: duplicate vertex {v!r}")
                seen_vertices.add(v)
                vertices.append(v)
        elif head == "arrow":
            # arrow a : 0 -> 1
            try:
                arrow_name, colon, src, arr, tgt = rest
            except ValueError:
                raise ParseError(f"line {lineno}: malformed arrow declaration") from None
            if colon != ":" or arr != "->":
                raise ParseError(f"line {lineno}: malformed arrow declaration")
            if arrow_name in arrows:
                raise DuplicateArrowError(f"line {lineno}: duplicate arrow {arrow_name!r}")
            if src not in seen_vertices:
                raise UnknownVertexError(f"line {lineno}: unknown vertex {src!r}")
            if tgt not in seen_vertices:
                raise UnknownVertexError(f"line {lineno}: unknown vertex {tgt!r}")
            arrows[arrow_name] = (src, tgt)
        elif head == "rel":
            if len(rest) != 1 or "*" not in rest[0]:
                raise ParseError(f"line {lineno}: malformed relation (want rel b*a)")
            parts = rest[0].split("*")
            if len(parts) != 2:
                raise ParseError(
                    f"line {lineno}: relations are length-two monomials (want rel b*a)"
                )
            later, earlier = parts
            for x in (later, earlier):
                if x not in arrows:
                    raise ParseError(f"line {lineno}: relation names unknown arrow {x!r}")
            relations.add((later, earlier))
        else:
            raise ParseError(f"line {lineno}: unknown directive {head!r}")

    if name is None:
        raise ParseError("missing quiver declaration")
    return GentlePresentation(name, vertices, arrows, relations)


def serialize_presentation(pres: GentlePresentation) -> str:
    return pres.serialize()
