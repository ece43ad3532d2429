"""Exact coefficient fields.

All arithmetic in the toolkit is exact: the default field is the rationals
(backed by ``fractions.Fraction``), with odd prime fields available for
faster cross-checking runs.  A field object knows how to coerce integers and
rationals, so symbolic data (band scalars are stored as ``Fraction``) can be
re-interpreted over any field.
"""

from __future__ import annotations

from fractions import Fraction


class Rationals:
    """The field of rational numbers; elements are ``Fraction``."""

    name = "rat"

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into the rationals")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def __repr__(self):
        return "Rationals()"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Rationals")


class PrimeField:
    """The prime field F_p; elements are ints in ``range(p)``."""

    def __init__(self, p: int):
        if p < 2:
            raise ValueError(f"not a prime: {p}")
        for d in range(2, min(p, 1 + int(p ** 0.5) + 1)):
            if p % d == 0 and d < p:
                raise ValueError(f"not a prime: {p}")
        self.p = p
        self.name = f"fp:{p}"

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(
                    f"denominator of {x} vanishes in F_{self.p}"
                )
            return (x.numerator % self.p) * pow(den, -1, self.p) % self.p
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


RATIONALS = Rationals()


def parse_field_spec(spec: str):
    """Parse a field spec as used on the command line: ``rat`` or ``fp:<p>``."""
    if spec == "rat":
        return RATIONALS
    if spec.startswith("fp:"):
        return PrimeField(int(spec[3:]))
    raise ValueError(f"unknown field spec {spec!r} (expected 'rat' or 'fp:<p>')")
