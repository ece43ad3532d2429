"""Independent brute-force ground truth for the symbolic cone calculus.

Everything here works on literal complexes with exact arithmetic: build the
mapping cone matrix, strip contractible pairs by Gaussian elimination of
invertible components, read minimal complexes back into strings and bands,
decide chain isomorphism, and count morphisms modulo homotopy.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import linalg
from .complexes import (
    ChainMap,
    ProjectiveComplex,
    entry_add,
    entry_inverse,
    entry_mul,
    entry_neg,
    entry_trivial_coeff,
)
from .words import (
    HomotopyString,
    Letter,
    WordError,
    canonical_band,
    canonical_string,
    make_band,
    make_string,
)


class NotAStringOrBandShapeError(Exception):
    """The complex is not slot-wise string/band shaped; never ignored silently."""


class NotMinimalError(Exception):
    pass


def mapping_cone(f: ChainMap) -> ProjectiveComplex:
    """The cone M^n = P^{n+1} (+) Q^n with differential [[-d_P, f], [0, d_Q]]."""
    P, Q = f.source, f.target
    pres, field = P.pres, P.field
    degrees = set()
    for d in P.slots:
        degrees.add(d - 1)
    degrees.update(Q.slots)
    slots = {}
    labels = {}
    offset = {}
    for d in sorted(degrees):
        top = P.slots.get(d + 1, ())
        bot = Q.slots.get(d, ())
        offset[d] = len(top)
        slots[d] = top + bot
        top_l = P.labels.get(d + 1, tuple(f"p{d + 1}.{i}" for i in range(len(top))))
        bot_l = Q.labels.get(d, tuple(f"q{d}.{i}" for i in range(len(bot))))
        labels[d] = tuple("S" + l for l in top_l) + tuple("T" + l for l in bot_l)
    diff = {}
    for d, entries in P.diff.items():
        # sits in cone degree d-1 -> d, negated
        tgt = diff.setdefault(d - 1, {})
        for (i, j), e in entries.items():
            tgt[(i, j)] = entry_neg(field, e)
    for d, entries in f.comps.items():
        # component P^d -> Q^d becomes a cone entry in degree d-1 -> d
        tgt = diff.setdefault(d - 1, {})
        for (i, j), e in entries.items():
            tgt[(i, j + offset.get(d, 0))] = dict(e)
    for d, entries in Q.diff.items():
        tgt = diff.setdefault(d, {})
        for (i, j), e in entries.items():
            tgt[(i + offset.get(d, 0), j + offset.get(d + 1, 0))] = dict(e)
    return ProjectiveComplex(pres, field, slots, diff, labels)


def _find_pivots(C: ProjectiveComplex):
    field = C.field
    out = []
    for d in sorted(C.diff):
        for (i, j), e in sorted(C.diff[d].items()):
            if not field.is_zero(entry_trivial_coeff(field, e)):
                out.append((d, i, j))
    return out


def minimize(C: ProjectiveComplex, rng: random.Random | None = None) -> ProjectiveComplex:
    """Strip invertible components by iterated Gaussian elimination.

    Each step removes a pair of slots joined by an entry with a nonzero
    trivial-path coefficient and applies the b1 - b2 * pivot^{-1} * b3
    update to the surviving entries.  The pivot is the smallest eligible
    (degree, row, column); passing ``rng`` randomises the choice, which is
    used to assert order independence.
    """
    pres, field = C.pres, C.field
    slots = {d: list(vs) for d, vs in C.slots.items()}
    labels = {d: list(C.labels.get(d, [f"{d}.{i}" for i in range(len(vs))])) for d, vs in slots.items()}
    diff = {d: {k: dict(e) for k, e in entries.items()} for d, entries in C.diff.items()}

    while True:
        pivots = []
        for d in sorted(diff):
            for (i, j), e in sorted(diff[d].items()):
                if not field.is_zero(entry_trivial_coeff(field, e)):
                    pivots.append((d, i, j))
        if not pivots:
            break
        d, i, j = pivots[0] if rng is None else rng.choice(pivots)
        pivot_entry = diff[d][(i, j)]
        pinv = entry_inverse(pres, field, pivot_entry, slots[d][i])
        into_pivot = {
            x: e for (x, jj), e in diff[d].items() if jj == j and x != i
        }
        out_of_pivot = {
            y: e for (ii, y), e in diff[d].items() if ii == i and y != j
        }
        for x, b2 in into_pivot.items():
            correction_left = entry_mul(pres, field, b2, pinv)
            for y, b3 in out_of_pivot.items():
                corr = entry_mul(pres, field, correction_left, b3)
                if not corr:
                    continue
                cur = diff[d].get((x, y), {})
                new = entry_add(field, cur, entry_neg(field, corr))
                if new:
                    diff[d][(x, y)] = new
                else:
                    diff[d].pop((x, y), None)
        # drop the two slots and every entry touching them, then reindex
        def drop(deg, idx):
            del slots[deg][idx]
            del labels[deg][idx]
            for dd in (deg - 1, deg):
                if dd not in diff:
                    continue
                new_entries = {}
                for (a, b), e in diff[dd].items():
                    if dd == deg - 1:
                        if b == idx:
                            continue
                        new_entries[(a, b - 1 if b > idx else b)] = e
                    else:
                        if a == idx:
                            continue
                        new_entries[(a - 1 if a > idx else a, b)] = e
                diff[dd] = new_entries

        drop(d + 1, j)
        drop(d, i)
        slots = {deg: vs for deg, vs in slots.items() if vs}
        labels = {deg: ls for deg, ls in labels.items() if ls}
        diff = {deg: entries for deg, entries in diff.items() if entries}

    return ProjectiveComplex(pres, field, slots, diff, labels)


def is_minimal(C: ProjectiveComplex) -> bool:
    return not _find_pivots(C)


def decompose_minimal(C: ProjectiveComplex):
    """Read a minimal complex back as a list of strings / bands-with-scalar.

    Requires every entry to be a single scaled nontrivial path and every
    slot to meet at most two entries; raises NotAStringOrBandShapeError
    otherwise.  String components are rescaled to +1 coefficients; each
    cycle keeps one residual scalar, reported through the band convention
    (scalar on a direct letter).
    """
    pres, field = C.pres, C.field
    if not is_minimal(C):
        raise NotMinimalError("decompose_minimal expects a minimal complex")
    if C.is_zero:
        return []

    node_of = {}
    nodes = []
    for d in C.degrees():
        for i, v in enumerate(C.slots[d]):
            node_of[(d, i)] = len(nodes)
            nodes.append((v, d))
    edges = []
    double_edges = []
    adjacency = {n: [] for n in range(len(nodes))}
    for d, entries in C.diff.items():
        for (i, j), e in entries.items():
            for path in e:
                if path.is_trivial:
                    raise NotMinimalError(
                        "trivial-path entry in a supposedly minimal complex"
                    )
            src = node_of[(d, i)]
            tgt = node_of[(d + 1, j)]
            if len(e) == 1:
                (path, coeff), = e.items()
                eid = len(edges)
                edges.append((src, tgt, path, coeff))
                adjacency[src].append(eid)
                adjacency[tgt].append(eid)
            elif len(e) == 2:
                # the shape of a two-letter band: both letters run between
                # the same slot pair, so the entry carries two paths
                double_edges.append((src, tgt, dict(e)))
                adjacency[src].append(("double", len(double_edges) - 1))
                adjacency[tgt].append(("double", len(double_edges) - 1))
            else:
                raise NotAStringOrBandShapeError(
                    f"entry in degree {d} is a sum of {len(e)} paths"
                )
    for n, incident in adjacency.items():
        if len(incident) > 2:
            raise NotAStringOrBandShapeError(
                f"slot {nodes[n]} meets {len(incident)} entries"
            )

    seen_nodes = set()
    out = []
    for src, tgt, e in double_edges:
        if len(adjacency[src]) != 1 or len(adjacency[tgt]) != 1:
            raise NotAStringOrBandShapeError("two-path entry inside a larger component")
        out.append(_read_two_letter_band(pres, field, nodes, src, tgt, e))
        seen_nodes.update((src, tgt))
    for start in range(len(nodes)):
        if start in seen_nodes:
            continue
        # walk the component; prefer an endpoint so open components are walked
        # end to end
        component = _collect_component(start, adjacency, edges)
        seen_nodes.update(component)
        endpoints = [n for n in component if len(adjacency[n]) <= 1]
        if endpoints:
            out.append(_read_string(pres, field, nodes, edges, adjacency, min(endpoints)))
        else:
            out.append(_read_band(pres, field, nodes, edges, adjacency, min(component)))
    return out


def _read_two_letter_band(pres, field, nodes, src, tgt, entry):
    (p, cp), (q, cq) = sorted(entry.items(), key=lambda kv: (len(kv[0]), kv[0].arrows))
    letters = (Letter(p, False), Letter(q, True))
    chi = field.mul(cp, field.inv(cq))
    scalar = chi if isinstance(chi, Fraction) else Fraction(chi)
    anchor = nodes[src][1]
    try:
        return make_band(pres, letters, scalar, 0, anchor)
    except WordError as exc:
        raise NotAStringOrBandShapeError(f"two-path entry is not a band: {exc}")


def _collect_component(start, adjacency, edges):
    stack = [start]
    seen = {start}
    while stack:
        n = stack.pop()
        for eid in adjacency[n]:
            a, b, _p, _c = edges[eid]
            for m in (a, b):
                if m not in seen:
                    seen.add(m)
                    stack.append(m)
    return seen


def _walk(nodes, edges, adjacency, start, closed):
    """Walk a path/cycle component; yields (node, edge) steps in word order."""
    order = []
    prev_edge = None
    current = start
    while True:
        nxt = [eid for eid in adjacency[current] if eid != prev_edge]
        if not nxt:
            break
        eid = nxt[0]
        a, b, path, coeff = edges[eid]
        other = b if a == current else a
        order.append((current, eid, other))
        prev_edge = eid
        current = other
        if closed and current == start:
            break
    return order


def _letter_for(nodes, edges, eid, left, right):
    a, b, path, coeff = edges[eid]
    if a == left and b == right:
        return Letter(path, inverse=False), coeff, False
    return Letter(path, inverse=True), coeff, True


def _read_string(pres, field, nodes, edges, adjacency, start):
    steps = _walk(nodes, edges, adjacency, start, closed=False)
    if not steps:
        v, d = nodes[start]
        return make_string(pres, (), d, v)
    letters = []
    # slot rescaling pushes all coefficients to +1 on a tree
    for left, eid, right in steps:
        letter, _coeff, _rev = _letter_for(nodes, edges, eid, left, right)
        letters.append(letter)
    anchor = nodes[steps[0][0]][1]
    try:
        return make_string(pres, letters, anchor)
    except WordError as exc:
        raise NotAStringOrBandShapeError(f"component is not a homotopy string: {exc}")


def _read_band(pres, field, nodes, edges, adjacency, start):
    steps = _walk(nodes, edges, adjacency, start, closed=True)
    letters = []
    chi = field.one
    for left, eid, right in steps:
        letter, coeff, _rev = _letter_for(nodes, edges, eid, left, right)
        letters.append(letter)
        chi = field.mul(chi, coeff) if not letter.inverse else field.mul(chi, field.inv(coeff))
    anchor = nodes[steps[0][0]][1]
    direct_positions = [i for i, l in enumerate(letters) if not l.inverse]
    if not direct_positions:
        raise NotAStringOrBandShapeError("cycle with no direct letter")
    scalar = chi if isinstance(chi, Fraction) else Fraction(chi)
    try:
        return make_band(pres, letters, scalar, direct_positions[0], anchor)
    except WordError as exc:
        raise NotAStringOrBandShapeError(f"cycle is not a homotopy band: {exc}")


# -- morphism spaces ---------------------------------------------------------


def _hom_basis_paths(pres, v_from_slot, v_to_slot):
    """Basis paths of Hom(P(v_from_slot), P(v_to_slot)): paths v_to -> v_from."""
    return pres.paths_from_to(v_to_slot, v_from_slot, include_trivial=(v_to_slot == v_from_slot))


def graded_map_variables(C, D, shift=0):
    """Variables (d, i, j, path) for maps C^d -> D^{d+shift}, slotwise."""
    out = []
    for d, cs in sorted(C.slots.items()):
        ds = D.slots.get(d + shift, ())
        for i, vi in enumerate(cs):
            for j, vj in enumerate(ds):
                for p in _hom_basis_paths(C.pres, vi, vj):
                    out.append((d, i, j, p))
    return out


def chain_map_space(C: ProjectiveComplex, D: ProjectiveComplex):
    """Basis of the space of degree-zero chain maps C -> D.

    Returns (variables, basis) where each basis element is a coefficient
    vector over the variables (d, i, j, path).
    """
    pres, field = C.pres, C.field
    variables = graded_map_variables(C, D)
    var_index = {v: i for i, v in enumerate(variables)}
    # equations indexed by (d, i, k, path): F.dD - dC.F = 0
    eq_rows = {}

    def add_term(eq_key, var_key, coeff):
        if var_key not in var_index:
            return
        row = eq_rows.setdefault(eq_key, {})
        idx = var_index[var_key]
        s = field.add(row.get(idx, field.zero), coeff)
        if field.is_zero(s):
            row.pop(idx, None)
        else:
            row[idx] = s

    for (d, i, j, p) in variables:
        # F[d][(i,j),p] composed with dD[d][(j,k)]
        for (jj, k), e in D.diff.get(d, {}).items():
            if jj != j:
                continue
            for q, c in e.items():
                pq = pres.mul(p, q)
                if pq is not None:
                    add_term((d, i, k, pq), (d, i, j, p), c)
    # second family: dC[d][(i,j)] then F[d+1][(j,k)]
    for d, entries in C.diff.items():
        for (i, j), e in entries.items():
            ds = D.slots.get(d + 1, ())
            for k, vk in enumerate(ds):
                for p2 in _hom_basis_paths(pres, C.slots[d + 1][j], vk):
                    for q, c in e.items():
                        qp = pres.mul(q, p2)
                        if qp is not None:
                            add_term((d, i, k, qp), (d + 1, j, k, p2), field.neg(c))

    nvars = len(variables)
    rows = []
    for _key, row in sorted(eq_rows.items(), key=lambda kv: str(kv[0])):
        dense = [field.zero] * nvars
        for idx, c in row.items():
            dense[idx] = c
        rows.append(dense)
    basis = linalg.nullspace(field, rows, nvars)
    return variables, basis


def homotopy_image(C: ProjectiveComplex, D: ProjectiveComplex, variables):
    """Vectors (in chain-map coordinates) spanning {dh + hd}."""
    pres, field = C.pres, C.field
    var_index = {v: i for i, v in enumerate(variables)}
    hvars = graded_map_variables(C, D, shift=-1)
    images = []
    for (d, i, j, p) in hvars:
        vec = {}

        def add(var_key, coeff):
            if var_key not in var_index:
                return
            idx = var_index[var_key]
            s = field.add(vec.get(idx, field.zero), coeff)
            if field.is_zero(s):
                vec.pop(idx, None)
            else:
                vec[idx] = s

        # h then d_D: C^d -> D^{d-1} -> D^d
        for (jj, k), e in D.diff.get(d - 1, {}).items():
            if jj != j:
                continue
            for q, c in e.items():
                pq = pres.mul(p, q)
                if pq is not None:
                    add((d, i, k, pq), c)
        # d_C then h: C^{d-1} -> C^d -> D^{d-1}
        for (x, ii), e in C.diff.get(d - 1, {}).items():
            if ii != i:
                continue
            for q, c in e.items():
                qp = pres.mul(q, p)
                if qp is not None:
                    add((d - 1, x, j, qp), c)
        if vec:
            dense = [field.zero] * len(variables)
            for idx, c in vec.items():
                dense[idx] = c
            images.append(dense)
    return images


def hom_dimension(C: ProjectiveComplex, D: ProjectiveComplex) -> int:
    """dim_k Hom_{K^b}(C, D): chain maps modulo null-homotopic maps."""
    variables, basis = chain_map_space(C, D)
    if not variables:
        return 0
    images = homotopy_image(C, D, variables)
    return len(basis) - linalg.rank(C.field, images)


def vector_to_chain_map(C, D, variables, vec) -> ChainMap:
    field = C.field
    comps = {}
    for (d, i, j, p), c in zip(variables, vec):
        if field.is_zero(c):
            continue
        entry = comps.setdefault(d, {}).setdefault((i, j), {})
        entry[p] = field.add(entry.get(p, field.zero), c)
    return ChainMap(C, D, comps)


# -- isomorphism testing -------------------------------------------------------


def _try_decompose(C):
    try:
        return decompose_minimal(C)
    except NotAStringOrBandShapeError:
        return None


def _summand_key(s):
    if isinstance(s, HomotopyString):
        c = canonical_string(s)
        return ("str", tuple(l.serialize() for l in c.letters), c.anchor, str(c.vertex))
    c = canonical_band(s)
    return ("band", tuple(l.serialize() for l in c.letters), c.anchor, c.scalar)


def is_isomorphic(C: ProjectiveComplex, D: ProjectiveComplex, tries=40, seed=7) -> bool:
    """Decide whether two complexes over the same algebra are isomorphic.

    Graded slot multisets are compared first; then both sides are
    minimized (isomorphism is preserved: contractible summands match once
    the graded dimensions agree) and decomposed into strings and bands,
    whose canonical forms decide exactly.  When a minimal complex is not
    string/band shaped at the slot level, the decision falls back to a
    deterministic randomised search for a degreewise invertible chain map.
    """
    if C.graded_vertex_multisets() != D.graded_vertex_multisets():
        return False
    MC = C if is_minimal(C) else minimize(C)
    MD = D if is_minimal(D) else minimize(D)
    if MC.graded_vertex_multisets() != MD.graded_vertex_multisets():
        return False
    if MC.is_zero and MD.is_zero:
        return True
    dc = _try_decompose(MC)
    dd = _try_decompose(MD)
    if dc is not None and dd is not None:
        return sorted(map(_summand_key, dc)) == sorted(map(_summand_key, dd))
    return _invertible_chain_map_exists(MC, MD, tries=tries, seed=seed)


def _invertible_chain_map_exists(C, D, tries=40, seed=7):
    field = C.field
    variables, basis = chain_map_space(C, D)
    if not basis:
        return False
    rng = random.Random(seed)

    def invertible(vec):
        # degreewise invertibility is decided modulo the radical: only the
        # trivial-path coefficients between equal-vertex slots matter
        f = vector_to_chain_map(C, D, variables, vec)
        for d, cs in C.slots.items():
            n = len(cs)
            m = len(D.slots.get(d, ()))
            if n != m:
                return False
            rowsm = [[field.zero] * m for _ in range(n)]
            for (i, j), e in f.comps.get(d, {}).items():
                rowsm[i][j] = entry_trivial_coeff(field, e)
            if field.is_zero(linalg.det(field, rowsm)):
                return False
        return True

    for vec in basis:
        if invertible(vec):
            return True
    bound = 3
    for t in range(tries):
        coeffs = [field.coerce(rng.randint(-bound, bound)) for _ in basis]
        vec = [field.zero] * len(variables)
        for c, b in zip(coeffs, basis):
            if field.is_zero(c):
                continue
            for idx, x in enumerate(b):
                vec[idx] = field.add(vec[idx], field.mul(c, x))
        if invertible(vec):
            return True
        if t % 10 == 9:
            bound *= 4
    return False


# -- cohomology ----------------------------------------------------------------


def _module_basis(pres, vertex):
    """k-basis of P(vertex) = Lambda e_vertex: paths starting at vertex."""
    return [p for p in pres.all_paths() if p.source == vertex]


def cohomology_dims(C: ProjectiveComplex) -> dict:
    """Dimension of H^d over the field, per degree, by exact rank computation."""
    pres, field = C.pres, C.field
    bases = {}
    for d, vs in C.slots.items():
        bases[d] = [(i, q) for i, v in enumerate(vs) for q in _module_basis(pres, v)]
    degrees = sorted(set(C.slots))
    dims = {}
    ranks = {}
    for d in degrees:
        rows = []
        src = bases.get(d, [])
        tgt = bases.get(d + 1, [])
        tgt_index = {key: t for t, key in enumerate(tgt)}
        for (i, q) in src:
            row = [field.zero] * len(tgt)
            for (ii, j), e in C.diff.get(d, {}).items():
                if ii != i:
                    continue
                for p, c in e.items():
                    qp = pres.mul(q, p)
                    if qp is None:
                        continue
                    row[tgt_index[(j, qp)]] = field.add(
                        row[tgt_index[(j, qp)]], c
                    )
            rows.append(row)
        ranks[d] = linalg.rank(field, rows) if tgt and rows else 0
    for d in degrees:
        dim_d = len(bases.get(d, []))
        dims[d] = dim_d - ranks.get(d, 0) - ranks.get(d - 1, 0)
    return {d: v for d, v in dims.items() if v}
