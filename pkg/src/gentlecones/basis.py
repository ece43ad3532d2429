"""The standard basis of morphisms between string and band complexes.

Basis elements come in four kinds: graph maps and quasi-graph maps arise
from maximal common graded substrings (overlaps), singleton single and
singleton double maps from local factorization patterns.  Every element
stores the presentation (orientation / rotation) in which its defining
diagram is drawn, so the cone calculus can read off its words directly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import RATIONALS
from . import linalg
from .complexes import ChainMap, build
from .oracle import chain_map_space, homotopy_image
from .presentation import Path
from .words import (
    HomotopyBand,
    HomotopyString,
    Letter,
    invert,
    junction_ok,
    shift,
)


class BasisError(Exception):
    pass


class NoRepresentativeError(BasisError):
    """No chain-map representative could be built; signals an internal bug."""


class NotOrientableError(BasisError):
    """A one-degree graph map admits no compatible orientation; signals an
    invalid basis map and must not occur on enumerator output."""


class DegenerateBandOverlapError(BasisError):
    """A band side leaves fewer than two letters outside the overlap; the
    word formulas do not cover this shape."""


@dataclass(frozen=True)
class Strand:
    """A linear view of a string or band, possibly inverted."""

    obj: object  # HomotopyString | HomotopyBand, as presented
    inverted: bool = False

    @property
    def is_band(self):
        return self.obj.is_band

    @property
    def n_letters(self):
        return len(self.obj.letters)

    @property
    def n_nodes(self):
        return self.n_letters if self.is_band else self.n_letters + 1

    def has_letter(self, i):
        if self.is_band:
            return self.n_letters > 0
        return 0 <= i < self.n_letters

    def letter(self, i) -> Letter:
        if self.is_band:
            return self.obj.letters[i % self.n_letters]
        return self.obj.letters[i]

    def node(self, i):
        """(vertex, degree) of node i (band nodes are cyclic)."""
        nodes = self.obj.nodes()
        if self.is_band:
            return nodes[i % self.n_letters]
        return nodes[i]

    def original_node(self, i):
        """Translate a presentation node index to the unpresented object."""
        if not self.inverted:
            return i % self.n_letters if self.is_band else i
        if self.is_band:
            return (-i) % self.n_letters
        return self.n_letters - i


def _strands(obj):
    return (Strand(obj, False), Strand(invert(obj), True))


@dataclass(frozen=True)
class Overlap:
    """A maximal common graded substring between two presented strands.

    ``i0``/``j0`` index the leftmost shared node in the source / target
    presentation; ``k`` counts the shared letters.
    """

    source: Strand
    target: Strand
    i0: int
    j0: int
    k: int

    def sigma_letter(self, side):
        st = self.source
        idx = self.i0 - 1 if side == "L" else self.i0 + self.k
        if st.is_band or 0 <= idx < st.n_letters:
            return st.letter(idx)
        return None

    def tau_letter(self, side):
        st = self.target
        idx = self.j0 - 1 if side == "L" else self.j0 + self.k
        if st.is_band or 0 <= idx < st.n_letters:
            return st.letter(idx)
        return None

    def node_pairs(self):
        return tuple(
            (self.source.original_node(self.i0 + t), self.target.original_node(self.j0 + t))
            for t in range(self.k + 1)
        )


def _window_cap(A: Strand, B: Strand):
    # a common substring may wind around a band when the other side is a
    # string (the walk is still finite); only band-band windows need a cap
    if A.is_band and B.is_band:
        return A.n_letters + B.n_letters
    return None


def find_graded_overlaps(sigma, tau):
    """All maximal common graded substrings across the two presentations
    (target as given and inverted), trivial overlaps included.

    Returns (overlaps, identity_alignments, wound) where
    ``identity_alignments`` lists full band self-matches (candidate identity
    maps) and ``wound`` counts windows discarded because a band side would
    wrap completely.
    """
    A = Strand(sigma, False)
    overlaps = []
    identities = []
    wound = 0
    for B in _strands(tau):
        seen = set()
        full_diagonals = set()
        if A.is_band and B.is_band and A.n_letters == B.n_letters:
            n = A.n_letters
            for off in range(n):
                if all(A.letter(t) == B.letter(off + t) for t in range(n)) and A.node(
                    0
                ) == B.node(off):
                    full_diagonals.add(off % n)
                    identities.append((B, off))
        cap = _window_cap(A, B)
        for i in range(A.n_nodes):
            vi, di = A.node(i)
            for j in range(B.n_nodes):
                if (vi, di) != B.node(j):
                    continue
                if A.is_band and B.is_band and (j - i) % B.n_letters in full_diagonals \
                        and A.n_letters == B.n_letters:
                    continue
                r = 0
                while (
                    A.has_letter(i + r)
                    and B.has_letter(j + r)
                    and A.letter(i + r) == B.letter(j + r)
                ):
                    r += 1
                    if cap is not None and r > cap + 1:
                        break
                l = 0
                while (
                    A.has_letter(i - 1 - l)
                    and B.has_letter(j - 1 - l)
                    and A.letter(i - 1 - l) == B.letter(j - 1 - l)
                ):
                    l += 1
                    if cap is not None and l > cap + 1:
                        break
                k = l + r
                if cap is not None and k > cap:
                    wound += 1
                    continue
                i0, j0 = i - l, j - l
                key = (
                    B.inverted,
                    i0 % A.n_letters if A.is_band else i0,
                    j0 % B.n_letters if B.is_band else j0,
                    k,
                )
                if key in seen:
                    continue
                seen.add(key)
                overlaps.append(Overlap(A, B, i0, j0, k))
    return overlaps, identities, wound


# -- endpoint classification --------------------------------------------------


def _is_prefix(short, long):
    return len(short) < len(long) and long[: len(short)] == short


def _is_suffix(short, long):
    return len(short) < len(long) and long[len(long) - len(short):] == short


def classify_left_end(pres, sl: Letter | None, tl: Letter | None):
    """Classify (sigma_L, tau_L); returns (family, kind, f_L-or-product).

    family is 'G' (graph), 'Q' (quasi) or None.  For LG1/LG2 the third item
    is the endpoint component f_L; for LG3/LQ3 it is the merged/compat path
    product (None when the product vanishes, which disqualifies LQ3).
    """
    if sl is None and tl is None:
        return ("G", "LG0", None)
    if sl is None:
        if not tl.inverse:
            return ("G", "LG3", None)
        return ("Q", "LQ3", True)
    if tl is None:
        if sl.inverse:
            return ("G", "LG3", None)
        return ("Q", "LQ3", True)
    u, v = sl.path, tl.path
    if not sl.inverse and not tl.inverse:
        # both paths start at the shared vertex
        if _is_suffix(v.arrows, u.arrows):
            f_L = Path(v.target, u.target, u.arrows[: len(u.arrows) - len(v.arrows)])
            return ("G", "LG1", f_L)
        if _is_suffix(u.arrows, v.arrows):
            return ("Q", "LQ2", None)
        return (None, None, None)
    if sl.inverse and tl.inverse:
        # both paths end at the shared vertex
        if _is_prefix(u.arrows, v.arrows):
            f_L = Path(v.source, u.source, v.arrows[len(u.arrows):])
            return ("G", "LG2", f_L)
        if _is_prefix(v.arrows, u.arrows):
            return ("Q", "LQ1", None)
        return (None, None, None)
    if sl.inverse and not tl.inverse:
        return ("G", "LG3", pres.mul(v, u))
    # sigma_L direct, tau_L inverse: quasi iff the compat product is nonzero
    prod = pres.mul(u, v)
    return ("Q", "LQ3", prod) if prod is not None else (None, None, None)


def classify_right_end(pres, sr: Letter | None, tr: Letter | None):
    if sr is None and tr is None:
        return ("G", "RG0", None)
    if sr is None:
        if tr.inverse:
            return ("G", "RG3", None)
        return ("Q", "RQ3", True)
    if tr is None:
        if not sr.inverse:
            return ("G", "RG3", None)
        return ("Q", "RQ3", True)
    u, v = sr.path, tr.path
    if not sr.inverse and not tr.inverse:
        # both paths end at the shared vertex
        if _is_prefix(u.arrows, v.arrows):
            f_R = Path(v.source, u.source, v.arrows[len(u.arrows):])
            return ("G", "RG1", f_R)
        if _is_prefix(v.arrows, u.arrows):
            return ("Q", "RQ1", None)
        return (None, None, None)
    if sr.inverse and tr.inverse:
        # both paths start at the shared vertex
        if _is_suffix(v.arrows, u.arrows):
            f_R = Path(v.target, u.target, u.arrows[: len(u.arrows) - len(v.arrows)])
            return ("G", "RG2", f_R)
        if _is_suffix(u.arrows, v.arrows):
            return ("Q", "RQ2", None)
        return (None, None, None)
    if not sr.inverse and tr.inverse:
        return ("G", "RG3", pres.mul(v, u))
    prod = pres.mul(u, v)
    return ("Q", "RQ3", prod) if prod is not None else (None, None, None)


@dataclass(frozen=True)
class StandardBasisMap:
    """One standard-basis morphism Q_sigma -> Q_tau with its diagram data."""

    kind: str  # 'graph' | 'single' | 'double' | 'quasi'
    sigma: object
    tau: object
    payload: object
    signature: tuple

    def __repr__(self):
        return f"StandardBasisMap({self.kind}, {self.signature})"


@dataclass(frozen=True)
class GraphData:
    overlap: Overlap
    left_kind: str
    right_kind: str
    f_L: Path | None
    f_R: Path | None
    is_identity: bool = False


@dataclass(frozen=True)
class QuasiData:
    overlap: Overlap  # between sigma and shift(tau, -1) presentations
    left_kind: str
    right_kind: str


@dataclass(frozen=True)
class QuasiIdentityData:
    """The self-extension class of a band: the full (periodic) overlap of a
    band with its own shift.  Its cone is the multiplicity-two band complex."""

    target: Strand  # presentation of shift(tau, -1) matching sigma
    offset: int


@dataclass(frozen=True)
class SingleData:
    src: Strand
    tgt: Strand
    s_node: int
    t_node: int
    f: Path
    f_R: Path  # sigma_R = f * f_R when sigma_R exists
    f_L: Path  # tau_R-bar = f_L * f when tau_R exists


@dataclass(frozen=True)
class DoubleData:
    src: Strand
    tgt: Strand
    cs: int  # sigma_C letter index (spans nodes cs, cs+1)
    ct: int
    f_L: Path
    f_prime: Path
    f_R: Path


def _graph_signature(ov: Overlap, f_L, f_R):
    pairs = list(ov.node_pairs())
    comps = [(a, b, "1") for a, b in pairs]
    if f_L is not None:
        comps.append(
            (
                ov.source.original_node(ov.i0 - 1),
                ov.target.original_node(ov.j0 - 1),
                f_L.word(),
            )
        )
    if f_R is not None:
        comps.append(
            (
                ov.source.original_node(ov.i0 + ov.k + 1),
                ov.target.original_node(ov.j0 + ov.k + 1),
                f_R.word(),
            )
        )
    return ("graph", tuple(sorted(comps)))


def classify_overlap(ov: Overlap, identity=False):
    """Turn an overlap into a GraphData / QuasiData / None verdict."""
    pres = ov.source.obj.pres
    if identity:
        return GraphData(ov, "LG0", "RG0", None, None, True)
    fam_l, kind_l, extra_l = classify_left_end(pres, ov.sigma_letter("L"), ov.tau_letter("L"))
    fam_r, kind_r, extra_r = classify_right_end(pres, ov.sigma_letter("R"), ov.tau_letter("R"))
    if fam_l == "G" and fam_r == "G":
        f_L = extra_l if kind_l in ("LG1", "LG2") else None
        f_R = extra_r if kind_r in ("RG1", "RG2") else None
        return GraphData(ov, kind_l, kind_r, f_L, f_R)
    if fam_l == "Q" and fam_r == "Q":
        if ov.k == 0:
            # with a trivial overlap the cone words join sigma_L|tau_R and
            # tau_L|sigma_R directly; invalid junctions mean a null family
            sl, tl = ov.sigma_letter("L"), ov.tau_letter("L")
            sr, tr = ov.sigma_letter("R"), ov.tau_letter("R")
            if sl is not None and tr is not None and not junction_ok(pres, sl, tr):
                return None
            if tl is not None and sr is not None and not junction_ok(pres, tl, sr):
                return None
        return QuasiData(ov, kind_l, kind_r)
    return None


def _orient_one_degree_graph(data: GraphData) -> GraphData:
    """For graph maps concentrated in one degree, pick the presentation in
    which both merged endpoint products are nonzero (invert tau if needed)."""
    ov = data.overlap
    if data.is_identity or ov.k > 0 or data.f_L is not None or data.f_R is not None:
        return data

    def compatible(d: GraphData):
        # the eliminations at a one-degree graph map create the two merged
        # endpoint letters and two cross terms; compatibility asks the merged
        # products to be nonzero and the cross products to vanish
        o = d.overlap
        pres = o.source.obj.pres
        sl, tl = o.sigma_letter("L"), o.tau_letter("L")
        sr, tr = o.sigma_letter("R"), o.tau_letter("R")
        ok = True
        if sl is not None and tl is not None:
            ok = ok and pres.mul(tl.path, sl.path) is not None
        if sr is not None and tr is not None:
            ok = ok and pres.mul(tr.path, sr.path) is not None
        if tl is not None and sr is not None:
            ok = ok and pres.mul(tl.path, sr.path) is None
        if tr is not None and sl is not None:
            ok = ok and pres.mul(tr.path, sl.path) is None
        return ok

    if compatible(data):
        return data
    flipped = _flip_target_presentation(ov)
    new = classify_overlap(flipped)
    if isinstance(new, GraphData) and compatible(new):
        return new
    raise NotOrientableError("one-degree graph map admits no compatible orientation")


def _flip_target_presentation(ov: Overlap) -> Overlap:
    B = ov.target
    newB = Strand(invert(B.obj), not B.inverted)
    if B.is_band:
        j0_new = (-(ov.j0 + ov.k)) % B.n_letters
    else:
        j0_new = B.n_letters - (ov.j0 + ov.k)
    return Overlap(ov.source, newB, ov.i0, j0_new, ov.k)


def normalize_orientation(m: StandardBasisMap) -> StandardBasisMap:
    """Re-present the defining diagram so the cone word formulas apply."""
    if m.kind == "graph":
        data = _orient_one_degree_graph(m.payload)
        if data is not m.payload:
            return StandardBasisMap("graph", m.sigma, m.tau, data, m.signature)
    return m


# -- singleton singles and doubles ---------------------------------------------


def _path_contains(container: Path, piece: Path):
    a, b = container.arrows, piece.arrows
    return any(a[i: i + len(b)] == b for i in range(len(a) - len(b) + 1))


def _is_word_suffix(short, long):
    return len(short) <= len(long) and long[len(long) - len(short):] == short


def _enumerate_singles_presentation(src: Strand, tgt: Strand):
    pres = src.obj.pres
    out = []
    for S in range(src.n_nodes):
        vS, dS = src.node(S)
        for T in range(tgt.n_nodes):
            vT, dT = tgt.node(T)
            if dS != dT:
                continue
            for f in pres.paths_from_to(vT, vS):
                sr = src.letter(S) if src.has_letter(S) else None
                tr = tgt.letter(T) if tgt.has_letter(T) else None
                sl = src.letter(S - 1) if src.has_letter(S - 1) else None
                tl = tgt.letter(T - 1) if tgt.has_letter(T - 1) else None
                # shape: sigma_R = f*f_R direct, tau_R inverse with path f_L*f
                if sr is not None:
                    if sr.inverse or not _is_prefix(f.arrows, sr.path.arrows):
                        continue
                    f_R = Path(sr.path.source, f.source, sr.path.arrows[len(f.arrows):])
                else:
                    f_R = pres.trivial_path(f.source)
                if tr is not None:
                    if not tr.inverse or not _is_suffix(f.arrows, tr.path.arrows):
                        continue
                    f_L = Path(
                        f.target,
                        tr.path.target,
                        tr.path.arrows[: len(tr.path.arrows) - len(f.arrows)],
                    )
                else:
                    f_L = pres.trivial_path(f.target)
                # flush factorizations belong to quasi classes, not here
                if sr is not None and f_R.is_trivial:
                    continue
                if tr is not None and f_L.is_trivial:
                    continue
                # L1/L2: commutation past the left flanks
                if sl is not None and not sl.inverse and pres.mul(sl.path, f) is not None:
                    continue
                if tl is not None and tl.inverse and pres.mul(f, tl.path) is not None:
                    continue
                # subletter exclusions: f and the flanking letters must not
                # contain one another (underlying paths, either orientation);
                # violations are either null-homotopic or presented wrongly
                skip = False
                for flank in (sl, tl):
                    if flank is not None:
                        if _path_contains(f, flank.path) or _path_contains(flank.path, f):
                            skip = True
                if skip:
                    continue
                out.append(SingleData(src, tgt, S, T, f, f_R, f_L))
    return out


def enumerate_singleton_singles(sigma, tau):
    found = {}
    for src in _strands(sigma):
        for tgt in _strands(tau):
            for data in _enumerate_singles_presentation(src, tgt):
                sig = (
                    "single",
                    src.original_node(data.s_node),
                    tgt.original_node(data.t_node),
                    data.f.word(),
                )
                if sig not in found:
                    found[sig] = StandardBasisMap("single", sigma, tau, data, sig)
    return [found[s] for s in sorted(found)]


def _enumerate_doubles_presentation(src: Strand, tgt: Strand):
    pres = src.obj.pres
    out = []
    n_src = src.n_letters if src.is_band else src.n_letters
    n_tgt = tgt.n_letters
    for cs in range(n_src):
        sC = src.letter(cs)
        if sC.inverse or len(sC.path) < 2:
            continue
        vS1, dS1 = src.node(cs)
        for ct in range(n_tgt):
            tC = tgt.letter(ct)
            if tC.inverse or len(tC.path) < 2:
                continue
            vT1, dT1 = tgt.node(ct)
            if dS1 != dT1:
                continue
            a, b = sC.path.arrows, tC.path.arrows
            for L in range(1, min(len(a), len(b))):
                if a[len(a) - L:] != b[:L]:
                    continue
                f_prime = Path(sC.path.source, tC.path.target, b[:L])
                f_L = Path(f_prime.target, sC.path.target, a[: len(a) - L])
                f_R = Path(tC.path.source, f_prime.source, b[L:])
                if pres.mul(f_L, tC.path) is None:
                    continue
                sl = src.letter(cs - 1) if src.has_letter(cs - 1) else None
                tl = tgt.letter(ct - 1) if tgt.has_letter(ct - 1) else None
                sr = src.letter(cs + 1) if src.has_letter(cs + 1) else None
                tr = tgt.letter(ct + 1) if tgt.has_letter(ct + 1) else None
                if sl is not None and not sl.inverse and pres.mul(sl.path, f_L) is not None:
                    continue
                if tl is not None and tl.inverse and pres.mul(f_L, tl.path) is not None:
                    continue
                if sr is not None and sr.inverse and pres.mul(sr.path, f_R) is not None:
                    continue
                if tr is not None and not tr.inverse and pres.mul(f_R, tr.path) is not None:
                    continue
                out.append(DoubleData(src, tgt, cs, ct, f_L, f_prime, f_R))
    return out


def enumerate_singleton_doubles(sigma, tau):
    found = {}
    for src in _strands(sigma):
        for tgt in _strands(tau):
            for data in _enumerate_doubles_presentation(src, tgt):
                sig = (
                    "double",
                    tuple(
                        sorted(
                            [
                                (
                                    src.original_node(data.cs),
                                    tgt.original_node(data.ct),
                                    data.f_L.word(),
                                ),
                                (
                                    src.original_node(data.cs + 1),
                                    tgt.original_node(data.ct + 1),
                                    data.f_R.word(),
                                ),
                            ]
                        )
                    ),
                )
                if sig not in found:
                    found[sig] = StandardBasisMap("double", sigma, tau, data, sig)
    return [found[s] for s in sorted(found)]


# -- the standard basis ---------------------------------------------------------


def standard_basis_with_warnings(sigma, tau):
    out = {}
    wound_total = 0

    overlaps, identities, wound = find_graded_overlaps(sigma, tau)
    wound_total += wound
    for B, off in identities:
        scal_eq = (not sigma.is_band) or sigma.scalar == B.obj.scalar
        if scal_eq:
            ov = Overlap(Strand(sigma, False), B, 0, off, sigma_full_length(sigma))
            data = GraphData(ov, "LG0", "RG0", None, None, True)
            n = sigma_full_length(sigma)
            pairs = tuple(sorted((t % n, B.original_node(off + t)) for t in range(n)))
            sig = ("graph", "identity", pairs)
            out.setdefault(sig, StandardBasisMap("graph", sigma, tau, data, sig))
    for ov in overlaps:
        verdict = classify_overlap(ov)
        if isinstance(verdict, GraphData):
            sig = _graph_signature(ov, verdict.f_L, verdict.f_R)
            out.setdefault(sig, StandardBasisMap("graph", sigma, tau, verdict, sig))

    shifted = shift(tau, -1)
    q_overlaps, q_identities, wound = find_graded_overlaps(sigma, shifted)
    wound_total += wound
    for B, off in q_identities:
        # the full periodic overlap of a band with its own shift: the
        # self-extension (touching) morphism; it exists iff the scalars agree
        if sigma.is_band and sigma.scalar == B.obj.scalar:
            n = len(sigma.letters)
            pairs = tuple(sorted((t % n, B.original_node(off + t)) for t in range(n)))
            sig = ("quasi", "identity", pairs)
            out.setdefault(
                sig,
                StandardBasisMap("quasi", sigma, tau, QuasiIdentityData(B, off), sig),
            )
    for ov in q_overlaps:
        verdict = classify_overlap(ov)
        if isinstance(verdict, QuasiData):
            sig = ("quasi", tuple(sorted(ov.node_pairs())))
            out.setdefault(sig, StandardBasisMap("quasi", sigma, tau, verdict, sig))

    for m in enumerate_singleton_singles(sigma, tau):
        out.setdefault(m.signature, m)
    for m in enumerate_singleton_doubles(sigma, tau):
        out.setdefault(m.signature, m)

    order = {"graph": 0, "single": 1, "double": 2, "quasi": 3}
    maps = sorted(out.values(), key=lambda m: (order[m.kind], m.signature))
    return maps, wound_total


def sigma_full_length(sigma):
    return len(sigma.letters)


def standard_basis(sigma, tau):
    """All standard-basis morphisms Q_sigma -> Q_tau at the given gradings."""
    maps, wound = standard_basis_with_warnings(sigma, tau)
    if wound:
        raise BasisError(
            f"{wound} overlap(s) wind around a band; enumeration incomplete"
        )
    return maps


def basis_over_shifts(sigma, tau, window=None):
    """Convenience wrapper: {n: basis(sigma, shift(tau, n))} for |n| <= window."""
    if window is None:
        window = len(sigma.letters) + len(tau.letters) + 1
    table = {}
    for n in range(-window, window + 1):
        maps = standard_basis(sigma, shift(tau, n))
        if maps:
            table[n] = maps
    return table


# -- chain-map representatives ----------------------------------------------------


def _node_slot_index(obj):
    """node index -> (degree, position) in the built complex slot lists."""
    count = {}
    out = []
    for v, d in obj.nodes():
        pos = count.get(d, 0)
        count[d] = pos + 1
        out.append((d, pos))
    return out


def _support_solve(S, T, support, field):
    """Solve for coefficients making the supported components a chain map.

    ``support`` is a list of (degree, i, j, Path).  Returns a ChainMap or
    None when only the zero map is supported.
    """
    pres = S.pres
    var_index = {v: i for i, v in enumerate(support)}
    eq_rows = {}

    def add_term(eq_key, var_key, coeff):
        idx = var_index.get(var_key)
        if idx is None:
            return
        row = eq_rows.setdefault(eq_key, {})
        s = field.add(row.get(idx, field.zero), coeff)
        if field.is_zero(s):
            row.pop(idx, None)
        else:
            row[idx] = s

    for (d, i, j, p) in support:
        for (jj, k), e in T.diff.get(d, {}).items():
            if jj != j:
                continue
            for q, c in e.items():
                pq = pres.mul(p, q)
                if pq is not None:
                    add_term((d, i, k, pq), (d, i, j, p), c)
    for d, entries in S.diff.items():
        for (i, j), e in entries.items():
            for (dd, jj, k, p2) in support:
                if dd != d + 1 or jj != j:
                    continue
                for q, c in e.items():
                    qp = pres.mul(q, p2)
                    if qp is not None:
                        add_term((d, i, k, qp), (d + 1, j, k, p2), field.neg(c))

    rows = []
    for _key, row in sorted(eq_rows.items(), key=lambda kv: str(kv[0])):
        dense = [field.zero] * len(support)
        for idx, c in row.items():
            dense[idx] = c
        rows.append(dense)
    basis = linalg.nullspace(field, rows, len(support))
    if not basis:
        return None
    # normalise: make the first support coefficient that can be 1 equal 1
    vec = None
    for anchor in range(len(support)):
        for b in basis:
            if not field.is_zero(b[anchor]):
                inv = field.inv(b[anchor])
                vec = [field.mul(x, inv) for x in b]
                break
        if vec is not None:
            break
    if vec is None:
        return None
    comps = {}
    for (d, i, j, p), c in zip(support, vec):
        if field.is_zero(c):
            continue
        entry = comps.setdefault(d, {}).setdefault((i, j), {})
        entry[p] = field.add(entry.get(p, field.zero), c)
    return ChainMap(S, T, comps)


def _component(src_slotmap, tgt_slotmap, src_node, tgt_node, path):
    (d, i) = src_slotmap[src_node]
    (d2, j) = tgt_slotmap[tgt_node]
    if d != d2:
        raise NoRepresentativeError(f"component degrees differ: {d} vs {d2}")
    return (d, i, j, path)


def representative_chain_map(m: StandardBasisMap, field=RATIONALS, space=None) -> ChainMap:
    """An explicit chain map on the built complexes representing ``m``.

    Graph maps use their identity / endpoint components; singles and
    doubles their path components; quasi-graph maps return one member of
    the homotopy class (a single map when one exists, else a double map),
    verified non-null-homotopic before return.
    """
    sigma, tau = m.sigma, m.tau
    S = build(sigma, field)
    T = build(tau, field)
    s_slots = _node_slot_index(sigma)
    t_slots = _node_slot_index(tau)
    pres = sigma.pres

    def orig(strand, idx):
        return strand.original_node(idx)

    if m.kind == "graph":
        data = m.payload
        ov = data.overlap
        support = []
        rng_k = ov.k if not data.is_identity else ov.k - 1
        for t in range(rng_k + 1):
            a = orig(ov.source, ov.i0 + t)
            b = orig(ov.target, ov.j0 + t)
            va, _ = ov.source.node(ov.i0 + t)
            support.append(_component(s_slots, t_slots, a, b, pres.trivial_path(va)))
        if data.f_L is not None:
            support.append(
                _component(
                    s_slots,
                    t_slots,
                    orig(ov.source, ov.i0 - 1),
                    orig(ov.target, ov.j0 - 1),
                    data.f_L,
                )
            )
        if data.f_R is not None:
            support.append(
                _component(
                    s_slots,
                    t_slots,
                    orig(ov.source, ov.i0 + ov.k + 1),
                    orig(ov.target, ov.j0 + ov.k + 1),
                    data.f_R,
                )
            )
        f = _support_solve(S, T, _dedup_support(support), field)
        if f is None:
            raise NoRepresentativeError(f"graph map support admits no chain map: {m}")
        return f.validate()

    if m.kind == "single":
        data = m.payload
        support = [
            _component(
                s_slots,
                t_slots,
                orig(data.src, data.s_node),
                orig(data.tgt, data.t_node),
                data.f,
            )
        ]
        f = _support_solve(S, T, support, field)
        if f is None:
            raise NoRepresentativeError(f"single map is not a chain map: {m}")
        return f.validate()

    if m.kind == "double":
        data = m.payload
        support = [
            _component(
                s_slots,
                t_slots,
                orig(data.src, data.cs),
                orig(data.tgt, data.ct),
                data.f_L,
            ),
            _component(
                s_slots,
                t_slots,
                orig(data.src, data.cs + 1),
                orig(data.tgt, data.ct + 1),
                data.f_R,
            ),
        ]
        f = _support_solve(S, T, _dedup_support(support), field)
        if f is None:
            raise NoRepresentativeError(f"double map is not a chain map: {m}")
        return f.validate()

    if m.kind == "quasi":
        if isinstance(m.payload, QuasiIdentityData):
            return _quasi_identity_representative(m, S, T, s_slots, t_slots, field, space)
        return _quasi_representative(m, S, T, s_slots, t_slots, field, space)

    raise BasisError(f"unknown kind {m.kind}")


def _dedup_support(support):
    seen = {}
    for item in support:
        seen[item] = True
    return list(seen)


def _quasi_identity_candidates(sigma, data: QuasiIdentityData):
    """One candidate single-component support per band letter."""
    B, off = data.target, data.offset
    n = len(sigma.letters)
    out = []
    for j, letter in enumerate(sigma.letters):
        if letter.inverse:
            out.append((f"id{j}", [(j + 1, off + j, letter.path)]))
        else:
            out.append((f"id{j}", [(j, off + j + 1, letter.path)]))
    return out


def _quasi_identity_representative(m, S, T, s_slots, t_slots, field, space=None):
    data = m.payload
    sigma = m.sigma
    if space is None:
        variables, basis_vecs = chain_map_space(S, T)
        images = homotopy_image(S, T, variables)
    else:
        variables, basis_vecs, images = space
    null_rank = linalg.rank(field, images)
    var_index = {v: i for i, v in enumerate(variables)}
    n = len(sigma.letters)
    for tag, comps in _quasi_identity_candidates(sigma, data):
        support = [
            _component(
                s_slots, t_slots, a % n, data.target.original_node(b), p
            )
            for (a, b, p) in comps
        ]
        f = _support_solve(S, T, _dedup_support(support), field)
        if f is None:
            continue
        vec = [field.zero] * len(variables)
        ok = True
        for d, entries in f.comps.items():
            for (i, j), e in entries.items():
                for p, c in e.items():
                    idx = var_index.get((d, i, j, p))
                    if idx is None:
                        ok = False
                        break
                    vec[idx] = c
        if not ok:
            continue
        if linalg.rank(field, images + [vec]) == null_rank:
            continue
        return f.validate()
    raise NoRepresentativeError(f"no representative for the self-extension {m}")


def _quasi_candidates(data: QuasiData):
    """Candidate single / double supports for one representative of the class.

    Candidates are (tag, [(src_node, tgt_node, path), ...]); singles first,
    ordered by path length for the deterministic preference rule.
    """
    ov = data.overlap
    A, B = ov.source, ov.target
    i0, j0, k = ov.i0, ov.j0, ov.k
    singles = []
    sl, tl = ov.sigma_letter("L"), ov.tau_letter("L")
    sr, tr = ov.sigma_letter("R"), ov.tau_letter("R")
    if sl is not None and not sl.inverse:
        singles.append(("sL", [(i0 - 1, j0, sl.path)]))
    if sr is not None and sr.inverse:
        singles.append(("sR", [(i0 + k + 1, j0 + k, sr.path)]))
    if tl is not None and tl.inverse:
        singles.append(("tL", [(i0, j0 - 1, tl.path)]))
    if tr is not None and not tr.inverse:
        singles.append(("tR", [(i0 + k, j0 + k + 1, tr.path)]))
    for t in range(k):
        rho = A.letter(i0 + t)
        if not rho.inverse:
            singles.append((f"rho{t}", [(i0 + t, j0 + t + 1, rho.path)]))
        else:
            singles.append((f"rho{t}", [(i0 + t + 1, j0 + t, rho.path)]))
    singles.sort(key=lambda c: (len(c[1][0][2]), c[0]))
    doubles = []
    if sl is not None and tl is not None and not sl.inverse and tl.inverse:
        doubles.append(
            ("dL", [(i0 - 1, j0, sl.path), (i0, j0 - 1, tl.path)])
        )
    if sr is not None and tr is not None and sr.inverse and not tr.inverse:
        doubles.append(
            ("dR", [(i0 + k, j0 + k + 1, tr.path), (i0 + k + 1, j0 + k, sr.path)])
        )
    return singles + doubles


def _quasi_representative(m, S, T, s_slots, t_slots, field, space=None):
    data = m.payload
    ov = data.overlap
    if space is None:
        variables, basis_vecs = chain_map_space(S, T)
        images = homotopy_image(S, T, variables)
    else:
        variables, basis_vecs, images = space
    null_rank = linalg.rank(field, images)
    var_index = {v: i for i, v in enumerate(variables)}

    for tag, comps in _quasi_candidates(data):
        try:
            support = [
                _component(
                    s_slots,
                    t_slots,
                    ov.source.original_node(a),
                    ov.target.original_node(b),
                    p,
                )
                for (a, b, p) in comps
            ]
        except NoRepresentativeError:
            continue
        f = _support_solve(S, T, _dedup_support(support), field)
        if f is None:
            continue
        vec = [field.zero] * len(variables)
        ok = True
        for d, entries in f.comps.items():
            for (i, j), e in entries.items():
                for p, c in e.items():
                    idx = var_index.get((d, i, j, p))
                    if idx is None:
                        ok = False
                        break
                    vec[idx] = c
        if not ok:
            continue
        if linalg.rank(field, images + [vec]) == null_rank:
            continue  # null-homotopic: not a representative of the class
        return f.validate()
    raise NoRepresentativeError(f"no representative found for quasi map {m}")
