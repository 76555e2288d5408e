"""Exact tools for annihilators, periodizers and expansive subspaces of algebraic subshifts."""

__version__ = "0.1.0"

from .lattice_poly import LaurentPoly, LatticeBasis, difference_binomial, reexpress, sublattice_basis
from .configurations import (
    PeriodizerSet,
    TorusConfig,
    WindowConfig,
    is_annihilated,
    is_tiling,
    pattern_complexity,
    torus_product,
    translate,
    window_product,
)
from .annihilators import (
    SpecialAnnihilator,
    find_annihilators,
    integerize,
    search_special_annihilator,
    verify_special_annihilator,
)
from .tiles import Tile, box_minus_corner, char_poly, enumerate_torus_tilings, lee_sphere, negate
from .expansivity import (
    Direction,
    certify_all,
    certify_direction,
    certify_directions,
    enumerate_flats,
    fiber_polys,
    level_partition,
    monomial_certificate,
    nonexpansive_line_candidates,
    unique_level_point,
)
from .verify import verify_certificate
