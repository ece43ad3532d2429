"""Bundled corpus algebras, object enumeration, and the verification sweep.

The sweep is the oracle-backed acceptance gate: enumerate strings and bands
over each corpus algebra, list every standard-basis map across a shift
window, compute its cone symbolically, and check the result against the
literal minimized mapping cone of an explicit representative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from importlib.resources import files

from .basis import representative_chain_map, standard_basis_with_warnings
from .complexes import build, build_band2_complex, zero_complex
from .cones import cone
from .fields import RATIONALS
from .oracle import (
    chain_map_space,
    cohomology_dims,
    homotopy_image,
    is_isomorphic,
    mapping_cone,
    minimize,
)
from . import linalg
from .presentation import parse_presentation
from .words import Letter, make_band, make_string, shift, trivial_string

CORPUS_FILES = {
    "algebra-A": "algebra_a.quiver",
    "algebra-B": "algebra_b.quiver",
    "linear-A3": "linear_a3.quiver",
    "two-cycle": "two_cycle.quiver",
}


def load_corpus_presentation(name):
    fname = CORPUS_FILES[name]
    text = (files("gentlecones") / "corpus_data" / fname).read_text()
    return parse_presentation(text)


def corpus_presentations():
    return {name: load_corpus_presentation(name) for name in CORPUS_FILES}


# -- enumeration ----------------------------------------------------------------


def enumerate_letters(pres, max_path_len):
    out = []
    for p in pres.all_paths():
        if 1 <= len(p) <= max_path_len:
            out.append(Letter(p, False))
            out.append(Letter(p, True))
    return out


def _junction_ok(pres, left: Letter, right: Letter):
    if left.right_vertex != right.left_vertex:
        return False
    p, q = left.path, right.path
    if not left.inverse and not right.inverse:
        return pres.is_zero_pair(p.arrows[-1], q.arrows[0])
    if left.inverse and right.inverse:
        return pres.is_zero_pair(q.arrows[-1], p.arrows[0])
    if not left.inverse and right.inverse:
        return p.arrows[-1] != q.arrows[-1]
    return p.arrows[0] != q.arrows[0]


def _string_key(letters):
    fwd = tuple(l.serialize() for l in letters)
    bwd = tuple(l.flip().serialize() for l in reversed(letters))
    return min(fwd, bwd)


def enumerate_strings(pres, max_letters, max_path_len):
    """All homotopy strings with at most ``max_letters`` letters (letter
    paths bounded by ``max_path_len``), anchored at 0, up to inversion.
    Trivial strings are included."""
    letters = enumerate_letters(pres, max_path_len)
    found = {}
    for v in sorted(pres.vertices, key=str):
        s = trivial_string(pres, v, 0)
        found[(f"@{v}",)] = s
    frontier = [[l] for l in letters]
    while frontier:
        nxt = []
        for word in frontier:
            key = _string_key(word)
            if key not in found:
                found[key] = make_string(pres, word, 0)
            if len(word) < max_letters:
                for l in letters:
                    if _junction_ok(pres, word[-1], l):
                        nxt.append(word + [l])
        frontier = nxt
    return [found[k] for k in sorted(found)]


def _band_key(letters):
    candidates = []
    for base in (list(letters), [l.flip() for l in reversed(letters)]):
        for k in range(len(base)):
            rot = base[k:] + base[:k]
            candidates.append(tuple(l.serialize() for l in rot))
    return min(candidates)


def enumerate_bands(pres, max_letters, max_path_len, scalar=Fraction(1)):
    """All homotopy bands with at most ``max_letters`` letters, anchored at
    0, up to rotation and inversion, with the given scalar on the first
    direct letter."""
    letters = enumerate_letters(pres, max_path_len)
    found = {}
    frontier = [[l] for l in letters]
    for _ in range(max_letters):
        nxt = []
        for word in frontier:
            if (
                word[0].left_vertex == word[-1].right_vertex
                and _junction_ok(pres, word[-1], word[0])
                and sum(1 for l in word if not l.inverse) * 2 == len(word)
            ):
                n = len(word)
                primitive = all(
                    not (n % d == 0 and word == word[d:] + word[:d])
                    for d in range(1, n)
                )
                if primitive:
                    key = _band_key(word)
                    if key not in found:
                        pos = next(i for i, l in enumerate(word) if not l.inverse)
                        found[key] = make_band(pres, word, scalar, pos, 0)
            if len(word) < max_letters:
                for l in letters:
                    if _junction_ok(pres, word[-1], l):
                        nxt.append(word + [l])
        frontier = nxt
    return [found[k] for k in sorted(found)]


# -- the verification pipeline ----------------------------------------------------


@dataclass
class CaseResult:
    case_id: str
    kind: str
    ok: bool
    detail: str = ""


@dataclass
class SweepSummary:
    algebra: str
    cases: int = 0
    maps: int = 0
    failures: list = field(default_factory=list)
    basis_mismatches: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures and not self.basis_mismatches


class _PairSpace:
    """Cached chain-map data for one ordered pair of built complexes."""

    def __init__(self, S, T):
        self.S, self.T = S, T
        self.variables, self.basis = chain_map_space(S, T)
        self.images = homotopy_image(S, T, self.variables) if self.variables else []
        self.null_rank = linalg.rank(S.field, self.images) if self.images else 0

    def hom_dimension(self):
        return len(self.basis) - self.null_rank


def _sum_of_summands(pres, fld, summands):
    total = zero_complex(pres, fld)
    for s in summands:
        if s.kind == "zero":
            continue
        if s.kind == "band2":
            total = total.direct_sum(build_band2_complex(s.value, fld))
        else:
            total = total.direct_sum(build(s.value, fld))
    return total


def verify_basis_map(m, fld, space=None, summands=None):
    """is_isomorphic(minimize(cone(representative)), build(symbolic summands))."""
    if summands is None:
        summands = cone(m)
    rep = representative_chain_map(m, fld, space=None if space is None else (space.variables, space.basis, space.images))
    raw = mapping_cone(rep)
    reduced = minimize(raw)
    pres = m.sigma.pres
    built = _sum_of_summands(pres, fld, summands)
    ok = is_isomorphic(reduced, built)
    return ok, summands, rep, raw, reduced, built


def _profiles(obj):
    prof = {}
    for v, d in obj.nodes():
        prof.setdefault(d, set()).add(v)
    return prof


def _hom_pairs(pres):
    """Vertex pairs (v1, v2) with Hom(P(v1), P(v2)) nonzero."""
    pairs = set()
    for p in pres.all_paths():
        pairs.add((p.target, p.source))
    return pairs


def _case_possible(pres_pairs, prof_a, prof_b, n):
    """Cheap necessary condition for a nonempty basis or Hom space between
    a and shift(b, n): some same-degree slot pair admits a nonzero Hom, or
    some node pair seeds a quasi overlap."""
    for d, vs in prof_a.items():
        for v2 in prof_b.get(d + n, ()):
            for v1 in vs:
                if (v1, v2) in pres_pairs:
                    return True
        if vs & prof_b.get(d + n - 1, set()):
            return True
    return False


def _degree_span(obj):
    degs = [d for (_v, d) in obj.nodes()]
    return min(degs), max(degs)


def sweep_algebra(
    name,
    pres=None,
    max_string_letters=5,
    max_band_letters=4,
    max_path_len=3,
    window=6,
    fields=(RATIONALS,),
    band_scalar=Fraction(2),
    check_counts=True,
    progress=None,
    jobs=1,
    corrupt=False,
):
    """Run the full soundness sweep over one corpus algebra.

    Every ordered pair of enumerated objects is tested at every shift in
    the window: the standard basis is counted against the oracle
    Hom-dimension, and every basis map's symbolic cone is checked against
    the minimized literal cone of an explicit representative.
    """
    if pres is None:
        pres = load_corpus_presentation(name)
    strings = enumerate_strings(pres, max_string_letters, max_path_len)
    bands = enumerate_bands(pres, max_band_letters, max_path_len, band_scalar)
    objects = strings + bands
    summary = SweepSummary(algebra=name)
    built_cache = {}

    def built(obj, fld):
        key = (obj.serialize(), fld.name)
        if key not in built_cache:
            built_cache[key] = build(obj, fld)
        return built_cache[key]

    pres_pairs = _hom_pairs(pres)
    profiles = [_profiles(o) for o in objects]
    tasks = []
    for ia, a in enumerate(objects):
        for ib, b in enumerate(objects):
            for n in range(-window, window + 1):
                if _case_possible(pres_pairs, profiles[ia], profiles[ib], n):
                    tasks.append((ia, ib, n))

    if corrupt:
        jobs = 1  # the deliberate corruption is applied sequentially
    if jobs > 1:
        # cases are independent; batch them across a process pool
        import multiprocessing as mp

        payload = {
            "pres": pres.serialize(),
            "objects": [o.serialize() for o in objects],
            "is_band": [o.is_band for o in objects],
            "fields": [f.name for f in fields],
            "check_counts": check_counts,
        }
        chunks = [tasks[i::jobs] for i in range(jobs)]
        with mp.Pool(jobs) as pool:
            results = pool.starmap(
                _sweep_chunk, [(payload, chunk) for chunk in chunks]
            )
        for cases, maps, fails, mismatches in results:
            summary.cases += cases
            summary.maps += maps
            summary.failures.extend(fails)
            summary.basis_mismatches.extend(mismatches)
        summary.failures.sort()
        summary.basis_mismatches.sort()
        return summary

    corrupt_state = [corrupt]
    for idx, (ia, ib, n) in enumerate(tasks):
        a, b = objects[ia], objects[ib]
        tb = shift(b, n)
        case_id = f"{name}[{ia}->{ib}@{n}]"
        if progress and idx % progress == 0:
            print(f"  {name}: case {idx}/{len(tasks)}", flush=True)
        _run_case(case_id, a, tb, fields, check_counts, built, summary,
                  corrupt_state=corrupt_state)
    return summary


def _corrupt_summands(summands):
    """Deliberately damage a symbolic answer (self-test of the harness)."""
    from .cones import ConeSummand
    from .words import make_band, shift as _shift

    out = []
    done = False
    for s in summands:
        if not done and s.kind in ("band", "band2"):
            b = s.value
            out.append(ConeSummand("band", make_band(b.pres, b.letters, -b.scalar,
                                                     b.scalar_pos, b.anchor), s.provenance))
            done = True
        elif not done and s.kind == "string":
            out.append(ConeSummand("string", _shift(s.value, 1), s.provenance))
            done = True
        else:
            out.append(s)
    return out, done


def _run_case(case_id, a, tb, fields, check_counts, built, summary, corrupt_state=None):
    try:
        maps, wound = standard_basis_with_warnings(a, tb)
    except Exception as exc:  # noqa: BLE001 - reported, never swallowed
        summary.failures.append(f"{case_id}: basis enumeration raised {exc!r}")
        return
    if wound:
        summary.failures.append(f"{case_id}: {wound} wound overlap(s) skipped")
    summary.cases += 1
    summary.maps += len(maps)
    cones = []
    for mi, m in enumerate(maps):
        try:
            cones.append(cone(m))
        except Exception as exc:  # noqa: BLE001
            summary.failures.append(f"{case_id}#{mi}: cone raised {exc!r}")
            cones.append(None)
    if corrupt_state and corrupt_state[0]:
        for mi, cs in enumerate(cones):
            if cs is None:
                continue
            damaged, done = _corrupt_summands(cs)
            if done:
                cones[mi] = damaged
                corrupt_state[0] = False
                break
    for fld in fields:
        S, T = built(a, fld), built(tb, fld)
        space = _PairSpace(S, T)
        if check_counts:
            hd = space.hom_dimension()
            if hd != len(maps):
                summary.basis_mismatches.append(
                    f"{case_id}/{fld.name}: |basis|={len(maps)} vs hom_dim={hd}"
                )
        reps = []
        for mi, m in enumerate(maps):
            try:
                reps.append(
                    representative_chain_map(
                        m, fld, space=(space.variables, space.basis, space.images)
                    )
                )
            except Exception as exc:  # noqa: BLE001
                summary.failures.append(f"{case_id}#{mi}/{fld.name}: representative: {exc!r}")
                reps.append(None)
        if check_counts and maps and all(r is not None for r in reps):
            # representatives must be linearly independent modulo homotopy
            var_index = {v: i for i, v in enumerate(space.variables)}
            vecs = []
            for rep in reps:
                vec = [fld.zero] * len(space.variables)
                for d, entries in rep.comps.items():
                    for (i, j), e in entries.items():
                        for p, c in e.items():
                            vec[var_index[(d, i, j, p)]] = c
                vecs.append(vec)
            r = linalg.rank(fld, space.images + vecs)
            if r != space.null_rank + len(vecs):
                summary.basis_mismatches.append(
                    f"{case_id}/{fld.name}: representatives dependent mod homotopy"
                )
        for mi, (m, rep, summands) in enumerate(zip(maps, reps, cones)):
            if rep is None or summands is None:
                continue
            try:
                reduced = minimize(mapping_cone(rep))
                builtsum = _sum_of_summands(m.sigma.pres, fld, summands)
                ok = is_isomorphic(reduced, builtsum)
            except Exception as exc:  # noqa: BLE001
                summary.failures.append(f"{case_id}#{mi}/{fld.name}: {exc!r}")
                continue
            if not ok:
                summary.failures.append(
                    f"{case_id}#{mi}/{fld.name}: cone mismatch for {m.kind} "
                    f"{[s.describe() for s in summands]}"
                )


def _sweep_chunk(payload, chunk):
    """Worker entry: re-parse the algebra and verify one slice of cases."""
    from .fields import parse_field_spec
    from .words import parse_band, parse_string

    pres = parse_presentation(payload["pres"])
    objects = []
    for text, isb in zip(payload["objects"], payload["is_band"]):
        if isb:
            objects.append(parse_band(text, pres))
        else:
            objects.append(parse_string(text, pres))
    fields = [parse_field_spec(s) for s in payload["fields"]]
    summary = SweepSummary(algebra="chunk")
    cache = {}

    def built(obj, fld):
        key = (obj.serialize(), fld.name)
        if key not in cache:
            cache[key] = build(obj, fld)
        return cache[key]

    for (ia, ib, n) in chunk:
        a, tb = objects[ia], shift(objects[ib], n)
        case_id = f"[{ia}->{ib}@{n}]"
        _run_case(case_id, a, tb, fields, payload["check_counts"], built, summary)
    return summary.cases, summary.maps, summary.failures, summary.basis_mismatches


def grading_checks(m, fld=RATIONALS):
    """Criterion-8 style checks for one basis map: raw cone dimensions are
    the shifted sum of the input dimensions, and minimization preserves
    graded cohomology."""
    rep = representative_chain_map(m, fld)
    raw = mapping_cone(rep)
    S, T = rep.source, rep.target
    for d in set(list(raw.slots) + [dd - 1 for dd in S.slots] + list(T.slots)):
        want = len(S.slots.get(d + 1, ())) + len(T.slots.get(d, ()))
        got = len(raw.slots.get(d, ()))
        if want != got:
            return False, f"raw cone dim at {d}: {got} vs {want}"
    reduced = minimize(raw)
    if cohomology_dims(raw) != cohomology_dims(reduced):
        return False, "cohomology changed under minimization"
    return True, ""
