"""Explicit complexes of indecomposable projectives.

A complex stores, per degree, a list of slots (each slot is the projective
at a vertex) and, per degree, a sparse differential whose entries are exact
field-linear combinations of nonzero paths.  The entry from slot i in
degree d to slot j in degree d+1 lives in Hom(P(v_i), P(v_j)), i.e. is a
combination of paths from v_j to v_i; right multiplication realises the map
on left modules.
"""

from __future__ import annotations

import json

from .fields import RATIONALS
from .presentation import Path
from .words import EMPTY_STRING, HomotopyBand


class ComplexError(Exception):
    pass


class NotAChainMapError(Exception):
    pass


# An entry is a dict {Path: coeff}; helpers keep them normalised (no zeros).


def entry_add(field, e1, e2):
    out = dict(e1)
    for p, c in e2.items():
        s = field.add(out.get(p, field.zero), c)
        if field.is_zero(s):
            out.pop(p, None)
        else:
            out[p] = s
    return out


def entry_scale(field, e, c):
    if field.is_zero(c):
        return {}
    return {p: field.mul(v, c) for p, v in e.items()}


def entry_neg(field, e):
    return {p: field.neg(v) for p, v in e.items()}


def entry_mul(pres, field, e1, e2):
    """Composite of right multiplications: first e1's map, then e2's."""
    out = {}
    for p, c1 in e1.items():
        for q, c2 in e2.items():
            pq = pres.mul(p, q)
            if pq is None:
                continue
            c = field.mul(c1, c2)
            s = field.add(out.get(pq, field.zero), c)
            if field.is_zero(s):
                out.pop(pq, None)
            else:
                out[pq] = s
    return out


def entry_trivial_coeff(field, e):
    """The coefficient on the trivial path, if any."""
    for p, c in e.items():
        if p.is_trivial:
            return c
    return field.zero


def entry_inverse(pres, field, e, vertex):
    """Invert an endomorphism entry c*1 + n of P(vertex); n is nilpotent."""
    c = entry_trivial_coeff(field, e)
    if field.is_zero(c):
        raise ComplexError("entry has no invertible component")
    cinv = field.inv(c)
    one = pres.trivial_path(vertex)
    n = {p: v for p, v in e.items() if not p.is_trivial}
    out = {one: cinv}
    term = {one: cinv}
    while n:
        term = entry_scale(field, entry_mul(pres, field, term, n), field.neg(cinv))
        if not term:
            break
        out = entry_add(field, out, term)
    return out


class ProjectiveComplex:
    """A bounded complex of indecomposable projectives with exact entries."""

    def __init__(self, pres, field, slots, diff, labels=None):
        self.pres = pres
        self.field = field
        # degree -> tuple of vertices
        self.slots = {d: tuple(vs) for d, vs in slots.items() if vs}
        # degree -> {(i, j): entry}
        self.diff = {
            d: {k: dict(e) for k, e in entries.items() if e}
            for d, entries in diff.items()
        }
        self.diff = {d: entries for d, entries in self.diff.items() if entries}
        # degree -> tuple of slot labels (provenance, optional)
        self.labels = {d: tuple(ls) for d, ls in (labels or {}).items()}

    # -- inspection --------------------------------------------------------

    def degrees(self):
        return sorted(self.slots)

    def graded_dims(self):
        return {d: len(vs) for d, vs in sorted(self.slots.items())}

    def graded_vertex_multisets(self):
        return {d: tuple(sorted(vs, key=str)) for d, vs in sorted(self.slots.items())}

    @property
    def is_zero(self):
        return not self.slots

    def total_dim(self):
        return sum(len(vs) for vs in self.slots.values())

    def entry(self, d, i, j):
        return self.diff.get(d, {}).get((i, j), {})

    def validate(self):
        """Endpoint consistency of every entry and d*d = 0, exactly."""
        for d, entries in self.diff.items():
            src = self.slots.get(d, ())
            tgt = self.slots.get(d + 1, ())
            for (i, j), e in entries.items():
                if i >= len(src) or j >= len(tgt):
                    raise ComplexError(f"entry ({i},{j}) in degree {d} out of range")
                for p in e:
                    if p.target != src[i] or p.source != tgt[j]:
                        raise ComplexError(
                            f"entry ({i},{j}) in degree {d}: path {p} has ends "
                            f"{p.source}->{p.target}, slots are {src[i]}, {tgt[j]}"
                        )
        for d in self.diff:
            nxt = self.diff.get(d + 1)
            if not nxt:
                continue
            acc = {}
            for (i, j), e1 in self.diff[d].items():
                for (j2, k), e2 in nxt.items():
                    if j2 != j:
                        continue
                    prod = entry_mul(self.pres, self.field, e1, e2)
                    if prod:
                        acc[(i, k)] = entry_add(self.field, acc.get((i, k), {}), prod)
            for (i, k), e in acc.items():
                if e:
                    raise ComplexError(
                        f"d*d != 0 through degree {d}: slots ({i},{k})"
                    )
        return self

    # -- constructions ------------------------------------------------------

    def direct_sum(self, other):
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        degrees = sorted(set(self.slots) | set(other.slots))
        slots = {}
        labels = {}
        offset = {}
        for d in degrees:
            a = self.slots.get(d, ())
            b = other.slots.get(d, ())
            offset[d] = len(a)
            slots[d] = a + b
            la = self.labels.get(d, tuple(f"L{d}.{i}" for i in range(len(a))))
            lb = other.labels.get(d, tuple(f"R{d}.{i}" for i in range(len(b))))
            labels[d] = la + lb
        diff = {}
        for d, entries in self.diff.items():
            diff.setdefault(d, {}).update(entries)
        for d, entries in other.diff.items():
            tgt = diff.setdefault(d, {})
            for (i, j), e in entries.items():
                tgt[(i + offset[d], j + offset.get(d + 1, 0))] = dict(e)
        return ProjectiveComplex(self.pres, self.field, slots, diff, labels)

    # -- serialization ------------------------------------------------------

    def to_json(self):
        data = {
            "field": self.field.name,
            "degrees": [
                {
                    "degree": d,
                    "slots": list(self.slots[d]),
                    "labels": list(self.labels.get(d, ())),
                }
                for d in self.degrees()
            ],
            "entries": [
                {
                    "degree": d,
                    "from": i,
                    "to": j,
                    "terms": [
                        {"coeff": str(c), "path": p.word(), "source": p.source}
                        for p, c in sorted(
                            e.items(), key=lambda kv: (len(kv[0].arrows), kv[0].arrows)
                        )
                    ],
                }
                for d in sorted(self.diff)
                for (i, j), e in sorted(self.diff[d].items())
            ],
        }
        return json.dumps(data, indent=2, sort_keys=True)

    def __repr__(self):
        dims = ", ".join(f"{d}:{len(vs)}" for d, vs in sorted(self.slots.items()))
        return f"ProjectiveComplex({dims or 'zero'})"


def zero_complex(pres, field=RATIONALS):
    return ProjectiveComplex(pres, field, {}, {})


def complex_from_json(pres, text, field=None):
    """Rebuild a complex from its JSON export (inverse of ``to_json``)."""
    import json as _json

    from fractions import Fraction

    from .fields import parse_field_spec

    data = _json.loads(text)
    if field is None:
        field = parse_field_spec(data["field"])
    slots = {}
    labels = {}
    for row in data["degrees"]:
        slots[row["degree"]] = tuple(row["slots"])
        if row.get("labels"):
            labels[row["degree"]] = tuple(row["labels"])
    diff = {}
    for row in data["entries"]:
        entry = diff.setdefault(row["degree"], {}).setdefault(
            (row["from"], row["to"]), {}
        )
        for term in row["terms"]:
            word = term["path"]
            if word.startswith("1_"):
                p = pres.trivial_path(word[2:])
            else:
                p = pres.path_from_word(tuple(word.split("*")))
            entry[p] = field.coerce(Fraction(term["coeff"]))
    return ProjectiveComplex(pres, field, slots, diff, labels)


def build_string_complex(s, field=RATIONALS) -> ProjectiveComplex:
    """The string complex of a graded homotopy string (or the zero complex)."""
    if s is EMPTY_STRING:
        raise ValueError("the empty string carries no presentation; use zero_complex")
    pres = s.pres
    nodes = s.nodes()
    slots = {}
    labels = {}
    index = {}
    for i, (v, d) in enumerate(nodes):
        slots.setdefault(d, []).append(v)
        labels.setdefault(d, []).append(f"n{i}")
        index[i] = (d, len(slots[d]) - 1)
    diff = {}
    for i, letter in enumerate(s.letters):
        if letter.inverse:
            src, tgt = index[i + 1], index[i]
        else:
            src, tgt = index[i], index[i + 1]
        d = src[0]
        entry = diff.setdefault(d, {}).setdefault((src[1], tgt[1]), {})
        entry[letter.path] = field.add(entry.get(letter.path, field.zero), field.one)
    return ProjectiveComplex(pres, field, slots, diff, labels)


def build_band_complex(b: HomotopyBand, field=RATIONALS) -> ProjectiveComplex:
    """The band complex B_{w, scalar} with multiplicity one."""
    pres = b.pres
    nodes = b.nodes()
    n = len(nodes)
    slots = {}
    labels = {}
    index = {}
    for i, (v, d) in enumerate(nodes):
        slots.setdefault(d, []).append(v)
        labels.setdefault(d, []).append(f"n{i}")
        index[i] = (d, len(slots[d]) - 1)
    diff = {}
    for i, letter in enumerate(b.letters):
        left, right = index[i], index[(i + 1) % n]
        if letter.inverse:
            src, tgt = right, left
        else:
            src, tgt = left, right
        d = src[0]
        coeff = field.coerce(b.scalar) if i == b.scalar_pos else field.one
        entry = diff.setdefault(d, {}).setdefault((src[1], tgt[1]), {})
        entry[letter.path] = field.add(entry.get(letter.path, field.zero), coeff)
    return ProjectiveComplex(pres, field, slots, diff, labels)


def build_band2_complex(b: HomotopyBand, field=RATIONALS) -> ProjectiveComplex:
    """The multiplicity-two band complex: doubled slots, with a Jordan block
    on the scalar letter.  Appears as the cone of a band's self-extension."""
    pres = b.pres
    nodes = b.nodes()
    n = len(nodes)
    slots = {}
    labels = {}
    index = {}
    for i, (v, d) in enumerate(nodes):
        for copy in range(2):
            slots.setdefault(d, []).append(v)
            labels.setdefault(d, []).append(f"n{i}.{copy}")
            index[(i, copy)] = (d, len(slots[d]) - 1)
    diff = {}
    for i, letter in enumerate(b.letters):
        for copy in range(2):
            left, right = index[(i, copy)], index[((i + 1) % n, copy)]
            if letter.inverse:
                src, tgt = right, left
            else:
                src, tgt = left, right
            coeff = field.coerce(b.scalar) if i == b.scalar_pos else field.one
            entry = diff.setdefault(src[0], {}).setdefault((src[1], tgt[1]), {})
            entry[letter.path] = field.add(entry.get(letter.path, field.zero), coeff)
        if i == b.scalar_pos:
            left, right = index[(i, 0)], index[((i + 1) % n, 1)]
            if letter.inverse:
                left, right = index[(i, 1)], index[((i + 1) % n, 0)]
                src, tgt = right, left
            else:
                src, tgt = left, right
            entry = diff.setdefault(src[0], {}).setdefault((src[1], tgt[1]), {})
            entry[letter.path] = field.add(entry.get(letter.path, field.zero), field.one)
    return ProjectiveComplex(pres, field, slots, diff, labels)


def build(obj, field=RATIONALS, pres=None) -> ProjectiveComplex:
    """Build the complex of a string, band, or the empty string."""
    if obj is EMPTY_STRING:
        if pres is None:
            raise ValueError("building the zero complex needs a presentation")
        return zero_complex(pres, field)
    if obj.is_band:
        return build_band_complex(obj, field)
    return build_string_complex(obj, field)


class ChainMap:
    """A degree-zero chain map between two complexes over the same algebra."""

    def __init__(self, source, target, comps):
        self.source = source
        self.target = target
        # degree -> {(i, j): entry}, i a source slot, j a target slot
        self.comps = {
            d: {k: dict(e) for k, e in entries.items() if e}
            for d, entries in comps.items()
        }
        self.comps = {d: entries for d, entries in self.comps.items() if entries}

    def component(self, d, i, j):
        return self.comps.get(d, {}).get((i, j), {})

    def validate(self):
        """Check endpoints and exact commutation with the differentials."""
        pres, field = self.source.pres, self.source.field
        for d, entries in self.comps.items():
            src = self.source.slots.get(d, ())
            tgt = self.target.slots.get(d, ())
            for (i, j), e in entries.items():
                if i >= len(src) or j >= len(tgt):
                    raise NotAChainMapError(f"component ({i},{j}) in degree {d} out of range")
                for p in e:
                    if p.target != src[i] or p.source != tgt[j]:
                        raise NotAChainMapError(
                            f"component ({i},{j}) in degree {d}: bad path endpoints"
                        )
        degrees = set(self.comps) | set(self.source.diff) | set(self.target.diff)
        for d in degrees:
            lhs = {}
            for (i, j), e in self.comps.get(d, {}).items():
                for (j2, k), t in self.target.diff.get(d, {}).items():
                    if j2 != j:
                        continue
                    prod = entry_mul(pres, field, e, t)
                    if prod:
                        lhs[(i, k)] = entry_add(field, lhs.get((i, k), {}), prod)
            rhs = {}
            for (i, j), e in self.source.diff.get(d, {}).items():
                for (j2, k), t in self.comps.get(d + 1, {}).items():
                    if j2 != j:
                        continue
                    prod = entry_mul(pres, field, e, t)
                    if prod:
                        rhs[(i, k)] = entry_add(field, rhs.get((i, k), {}), prod)
            keys = set(lhs) | set(rhs)
            for key in keys:
                delta = entry_add(
                    field, lhs.get(key, {}), entry_neg(field, rhs.get(key, {}))
                )
                if delta:
                    raise NotAChainMapError(
                        f"square at degree {d}, slots {key} does not commute"
                    )
        return self

    def is_zero(self):
        return not any(self.comps.values())
