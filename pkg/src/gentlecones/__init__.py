"""Mapping cones of standard-basis morphisms over gentle algebras.

The package computes, for a gentle algebra given by a quiver with
length-two monomial relations, the standard basis of morphisms between
string and band complexes in the bounded homotopy category and the
indecomposable summands of the mapping cone of each basis morphism,
cross-checked by an exact-arithmetic linear-algebra oracle.
"""

__version__ = "0.1.0"

from .fields import RATIONALS, PrimeField, Rationals, parse_field_spec
from .presentation import (
    GentlePresentation,
    NotGentleError,
    ParseError,
    Path,
    check_gentle,
    compose_paths,
    enumerate_paths,
    parse_presentation,
    serialize_presentation,
)
from .words import (
    EMPTY_STRING,
    HomotopyBand,
    HomotopyString,
    Letter,
    canonical_band,
    canonical_string,
    degree_profile,
    invert,
    make_band,
    make_string,
    parse_band,
    parse_string,
    rotate_band,
    shift,
    trivial_string,
    validate_band,
)
from .complexes import ChainMap, ProjectiveComplex, build, build_band_complex, build_string_complex
from .oracle import (
    decompose_minimal,
    hom_dimension,
    is_isomorphic,
    mapping_cone,
    minimize,
)
from .basis import (
    StandardBasisMap,
    basis_over_shifts,
    enumerate_singleton_doubles,
    enumerate_singleton_singles,
    find_graded_overlaps,
    normalize_orientation,
    representative_chain_map,
    standard_basis,
)
from .cones import ConeSummand, cone, render_unfolded
