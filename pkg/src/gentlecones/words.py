"""Graded homotopy strings and bands.

A homotopy letter is a nonzero nontrivial path traversed forwards (direct)
or backwards (inverse).  Words are written left to right in the unfolded
diagram order; the underlying walk executes right to left, matching the
right-to-left path reading.  For a direct letter the path starts at the
letter's right node and ends at its left node; for an inverse letter the
other way round.  Crossing a direct letter left to right raises the
cohomological degree by one, crossing an inverse letter lowers it: the
anchor records the degree of the leftmost node.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .presentation import GentlePresentation, Path


class WordError(Exception):
    pass


class WordParseError(WordError):
    pass


class InvalidLetterError(WordError):
    pass


class InvalidJunctionError(WordError):
    pass


class CancellingPairError(WordError):
    pass


class NotClosedError(WordError):
    pass


class NotPrimitiveError(WordError):
    pass


class UnbalancedDirectionsError(WordError):
    pass


class BadCyclicJunctionError(WordError):
    pass


class ScalarOnInverseLetterError(WordError):
    pass


class ZeroScalarError(WordError):
    pass


@dataclass(frozen=True)
class Letter:
    """A homotopy letter: a nonzero nontrivial path, direct or inverse."""

    path: Path
    inverse: bool = False

    @property
    def left_vertex(self):
        return self.path.source if self.inverse else self.path.target

    @property
    def right_vertex(self):
        return self.path.target if self.inverse else self.path.source

    @property
    def delta(self):
        """Degree change when crossing the letter left to right."""
        return -1 if self.inverse else 1

    def flip(self):
        return Letter(self.path, not self.inverse)

    def serialize(self):
        body = (
            self.path.arrows[0]
            if len(self.path.arrows) == 1
            else "(" + "*".join(self.path.arrows) + ")"
        )
        return ("~" if self.inverse else "") + body

    def __str__(self):
        return self.serialize()


class _EmptyString:
    """The empty homotopy string, denoting the zero complex."""

    def __repr__(self):
        return "EmptyString"


EMPTY_STRING = _EmptyString()


def _check_letter(pres: GentlePresentation, letter: Letter):
    if letter.path.is_trivial:
        raise InvalidLetterError(f"letter {letter} has a trivial path")
    if not pres.path_is_nonzero(letter.path):
        raise InvalidLetterError(f"letter {letter} is zero in the algebra")


def _check_junction(pres: GentlePresentation, left: Letter, right: Letter):
    """Validate the junction between two adjacent letters (left then right)."""
    if left.right_vertex != right.left_vertex:
        raise InvalidJunctionError(
            f"letters {left} and {right} do not share a vertex"
        )
    p, q = left.path, right.path
    if not left.inverse and not right.inverse:
        if not pres.is_zero_pair(p.arrows[-1], q.arrows[0]):
            raise InvalidJunctionError(
                f"junction {left}|{right}: {p.arrows[-1]}*{q.arrows[0]} is not a relation"
            )
    elif left.inverse and right.inverse:
        if not pres.is_zero_pair(q.arrows[-1], p.arrows[0]):
            raise InvalidJunctionError(
                f"junction {left}|{right}: {q.arrows[-1]}*{p.arrows[0]} is not a relation"
            )
    elif not left.inverse and right.inverse:
        if p.arrows[-1] == q.arrows[-1]:
            raise CancellingPairError(
                f"junction {left}|{right}: cancelling pair {p.arrows[-1]}"
            )
    else:
        if p.arrows[0] == q.arrows[0]:
            raise CancellingPairError(
                f"junction {left}|{right}: cancelling pair {p.arrows[0]}"
            )


def junction_ok(pres, left: Letter, right: Letter) -> bool:
    """True iff ``left`` followed by ``right`` is a valid letter junction."""
    try:
        _check_junction(pres, left, right)
    except (InvalidJunctionError, CancellingPairError):
        return False
    return True


@dataclass(frozen=True)
class HomotopyString:
    """A finite graded homotopy string.

    ``letters`` may be empty, in which case ``vertex`` records the base of
    the trivial string.  ``anchor`` is the degree of the leftmost node of
    the unfolded diagram.
    """

    pres: GentlePresentation
    letters: tuple
    anchor: int = 0
    vertex: object = None

    @property
    def is_band(self):
        return False

    def nodes(self):
        """The (vertex, degree) sequence of the unfolded diagram."""
        cached = getattr(self, "_nodes", None)
        if cached is not None:
            return cached
        if not self.letters:
            out = ((self.vertex, self.anchor),)
        else:
            acc = [(self.letters[0].left_vertex, self.anchor)]
            deg = self.anchor
            for letter in self.letters:
                deg += letter.delta
                acc.append((letter.right_vertex, deg))
            out = tuple(acc)
        object.__setattr__(self, "_nodes", out)
        return out

    def serialize(self):
        if not self.letters:
            return f"@vertex={self.vertex} @anchor={self.anchor}"
        body = " ".join(letter.serialize() for letter in self.letters)
        return f"{body} @anchor={self.anchor}"

    def __str__(self):
        return self.serialize()


@dataclass(frozen=True)
class HomotopyBand:
    """A graded homotopy band with a nonzero scalar on a direct letter.

    ``anchor`` is the degree of the left node of ``letters[0]``; it pins the
    absolute grading of the band complex so overlaps can be aligned.
    """

    pres: GentlePresentation
    letters: tuple
    scalar: Fraction
    scalar_pos: int
    anchor: int = 0

    @property
    def is_band(self):
        return True

    def nodes(self):
        """One (vertex, degree) per band node; node i is left of letters[i]."""
        cached = getattr(self, "_nodes", None)
        if cached is not None:
            return cached
        out = []
        deg = self.anchor
        for letter in self.letters:
            out.append((letter.left_vertex, deg))
            deg += letter.delta
        out = tuple(out)
        object.__setattr__(self, "_nodes", out)
        return out

    def serialize(self):
        body = " ".join(letter.serialize() for letter in self.letters)
        return (
            f"{body} @scalar={self.scalar} @pos={self.scalar_pos}"
            f" @anchor={self.anchor}"
        )

    def __str__(self):
        return self.serialize()


def make_string(pres, letters, anchor=0, vertex=None) -> HomotopyString:
    """Validate and build a graded homotopy string."""
    letters = tuple(letters)
    if not letters:
        if vertex is None:
            raise WordError("a trivial string needs a vertex")
        if vertex not in pres.vertices:
            raise WordParseError(f"unknown vertex {vertex!r}")
        return HomotopyString(pres, (), anchor, vertex)
    for letter in letters:
        _check_letter(pres, letter)
    for i in range(len(letters) - 1):
        _check_junction(pres, letters[i], letters[i + 1])
    return HomotopyString(pres, letters, anchor, None)


def make_band(pres, letters, scalar, scalar_pos, anchor=0) -> HomotopyBand:
    """Validate and build a graded homotopy band with its scalar."""
    letters = tuple(letters)
    if not letters:
        raise NotClosedError("a band needs at least one letter")
    for letter in letters:
        _check_letter(pres, letter)
    if letters[0].left_vertex != letters[-1].right_vertex:
        raise NotClosedError(
            f"word starts at {letters[0].left_vertex} but ends at {letters[-1].right_vertex}"
        )
    for i in range(len(letters) - 1):
        _check_junction(pres, letters[i], letters[i + 1])
    try:
        _check_junction(pres, letters[-1], letters[0])
    except (InvalidJunctionError, CancellingPairError) as exc:
        raise BadCyclicJunctionError(str(exc)) from None
    direct = sum(1 for letter in letters if not letter.inverse)
    if 2 * direct != len(letters):
        raise UnbalancedDirectionsError(
            f"{direct} direct vs {len(letters) - direct} inverse letters"
        )
    n = len(letters)
    for d in range(1, n):
        if n % d == 0 and letters == letters[d:] + letters[:d]:
            raise NotPrimitiveError(f"word is a repetition with period {d}")
    scalar = Fraction(scalar)
    if scalar == 0:
        raise ZeroScalarError("band scalar must be nonzero")
    scalar_pos = int(scalar_pos)
    if not 0 <= scalar_pos < n:
        raise WordError(f"scalar position {scalar_pos} out of range")
    if letters[scalar_pos].inverse:
        raise ScalarOnInverseLetterError(
            f"letter {letters[scalar_pos]} at position {scalar_pos} is inverse"
        )
    return HomotopyBand(pres, letters, scalar, scalar_pos, anchor)


def trivial_string(pres, vertex, anchor=0) -> HomotopyString:
    return make_string(pres, (), anchor, vertex)


# -- parsing ---------------------------------------------------------------


def _parse_letter_token(pres, token) -> Letter:
    inverse = token.startswith("~")
    body = token[1:] if inverse else token
    if body.startswith("(") and body.endswith(")"):
        arrows = body[1:-1].split("*")
    else:
        arrows = [body]
    if not all(arrows):
        raise WordParseError(f"malformed letter token {token!r}")
    for a in arrows:
        if a not in pres.arrows:
            raise WordParseError(f"unknown arrow {a!r} in {token!r}")
    path = pres.path_from_word(arrows)
    if path is None:
        raise InvalidLetterError(f"letter {token!r} is zero in the algebra")
    return Letter(path, inverse)


def _split_tokens(expr):
    letters = []
    options = {}
    for token in expr.split():
        if token.startswith("@"):
            if "=" not in token:
                raise WordParseError(f"malformed option token {token!r}")
            key, value = token[1:].split("=", 1)
            options[key] = value
        else:
            letters.append(token)
    return letters, options


def parse_string(expr: str, pres: GentlePresentation, anchor=None) -> HomotopyString:
    """Parse the string grammar.

    Letters are whitespace separated; a letter is an arrow name, a
    parenthesised composite ``(d*c)`` (meaning "first c, then d"), or either
    with a ``~`` prefix for the formal inverse.  A trailing
    ``@anchor=<int>`` fixes the grading; trivial strings are written
    ``@vertex=<id> @anchor=<int>``.

    >>> # parse_string("e (d*c) b a ~d", algebra_a, 0) has five letters
    """
    tokens, options = _split_tokens(expr)
    if anchor is None:
        anchor = int(options.get("anchor", 0))
    letters = [_parse_letter_token(pres, t) for t in tokens]
    vertex = options.get("vertex")
    if not letters and vertex is None:
        raise WordParseError("empty string expression (use @vertex= for a stalk)")
    return make_string(pres, letters, anchor, vertex if not letters else None)


def parse_band(
    expr: str, pres: GentlePresentation, scalar=None, scalar_pos=None, anchor=None
) -> HomotopyBand:
    """Parse a band expression; options may come inline (@scalar=, @pos=,
    @anchor=) or as arguments, with arguments taking precedence."""
    tokens, options = _split_tokens(expr)
    if scalar is None:
        scalar = Fraction(options.get("scalar", "1"))
    if scalar_pos is None:
        scalar_pos = int(options.get("pos", -1))
    if anchor is None:
        anchor = int(options.get("anchor", 0))
    letters = [_parse_letter_token(pres, t) for t in tokens]
    if scalar_pos == -1:
        direct_positions = [i for i, l in enumerate(letters) if not l.inverse]
        if not direct_positions:
            raise UnbalancedDirectionsError("no direct letter to carry the scalar")
        scalar_pos = direct_positions[0]
    return make_band(pres, letters, scalar, scalar_pos, anchor)


def validate_band(expr, pres, scalar, scalar_position) -> HomotopyBand:
    """Spec-facing wrapper: parse and fully validate a band."""
    return parse_band(expr, pres, scalar=scalar, scalar_pos=scalar_position)


# -- transforms --------------------------------------------------------------


def invert_string(s: HomotopyString) -> HomotopyString:
    """Reverse the word and flip every letter; the anchor moves to keep the
    same (vertex, degree) multiset."""
    if not s.letters:
        return s
    new_letters = tuple(letter.flip() for letter in reversed(s.letters))
    new_anchor = s.nodes()[-1][1]
    return HomotopyString(s.pres, new_letters, new_anchor, None)


def shift_string(s: HomotopyString, n: int) -> HomotopyString:
    """Apply the shift functor n times: recorded degrees drop by n."""
    if not s.letters:
        return HomotopyString(s.pres, (), s.anchor - n, s.vertex)
    return HomotopyString(s.pres, s.letters, s.anchor - n, None)


def shift_band(b: HomotopyBand, n: int) -> HomotopyBand:
    return HomotopyBand(b.pres, b.letters, b.scalar, b.scalar_pos, b.anchor - n)


def shift(obj, n: int):
    if obj is EMPTY_STRING:
        return obj
    if obj.is_band:
        return shift_band(obj, n)
    return shift_string(obj, n)


def rotate_band(b: HomotopyBand, k: int) -> HomotopyBand:
    """Rotate the cyclic word so that the old letter k comes first; the
    scalar stays on the same letter and the anchor follows node k."""
    n = len(b.letters)
    k = k % n
    if k == 0:
        return b
    new_letters = b.letters[k:] + b.letters[:k]
    new_anchor = b.nodes()[k][1]
    return HomotopyBand(b.pres, new_letters, b.scalar, (b.scalar_pos - k) % n, new_anchor)


def invert_band(b: HomotopyBand) -> HomotopyBand:
    """Invert the cyclic word; the scalar becomes its reciprocal and is
    re-attached to the first direct letter of the inverted word."""
    n = len(b.letters)
    new_letters = tuple(letter.flip() for letter in reversed(b.letters))
    # the left node of new letter 0 is the right node of old letter n-1,
    # which is old node 0 again: the anchor is unchanged
    pos = next(i for i, letter in enumerate(new_letters) if not letter.inverse)
    return HomotopyBand(b.pres, new_letters, Fraction(1) / b.scalar, pos, b.anchor)


def invert(obj):
    if obj is EMPTY_STRING:
        return obj
    if obj.is_band:
        return invert_band(obj)
    return invert_string(obj)


def degree_profile(obj) -> dict:
    """Map degree -> sorted tuple of vertices of the projectives there."""
    if obj is EMPTY_STRING:
        return {}
    profile = {}
    for vertex, deg in obj.nodes():
        profile.setdefault(deg, []).append(vertex)
    return {d: tuple(sorted(vs, key=str)) for d, vs in sorted(profile.items())}


# -- canonical forms ---------------------------------------------------------


def _string_key(s: HomotopyString):
    if not s.letters:
        return ((f"@{s.vertex}",), s.anchor)
    return (tuple(letter.serialize() for letter in s.letters), s.anchor)


def canonical_string(s: HomotopyString) -> HomotopyString:
    """The lexicographically smaller of the string and its inverse."""
    if not s.letters:
        return s
    t = invert_string(s)
    return s if _string_key(s) <= _string_key(t) else t


def _band_key(b: HomotopyBand):
    return (
        tuple(letter.serialize() for letter in b.letters),
        b.anchor,
        b.scalar,
        b.scalar_pos,
    )


def canonical_band(b: HomotopyBand, respect_grading=True) -> HomotopyBand:
    """Minimal representative over rotations and inversion.

    Rotation keeps the scalar; inversion replaces it by its reciprocal.
    With ``respect_grading`` false the anchor is also normalised to 0,
    which identifies all shifts (used when comparing ungraded words).
    """
    candidates = []
    for base in (b, invert_band(b)):
        for k in range(len(base.letters)):
            cand = rotate_band(base, k)
            pos = next(i for i, l in enumerate(cand.letters) if not l.inverse)
            cand = HomotopyBand(cand.pres, cand.letters, cand.scalar, pos, cand.anchor)
            if not respect_grading:
                cand = HomotopyBand(cand.pres, cand.letters, cand.scalar, pos, 0)
            candidates.append(cand)
    return min(candidates, key=_band_key)
