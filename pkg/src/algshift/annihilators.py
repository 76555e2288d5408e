"""Integer annihilators of torus configurations.

``find_annihilators`` solves the homogeneous convolution system exactly over
the rationals and clears denominators; ``search_special_annihilator`` looks
for products of difference binomials ``(x^t1 - 1)...(x^tm - 1)`` whose
vectors are multiples of differences of support points of a known
annihilator.  The search is bounded: a None result is not a proof that no
such product exists.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg
from .configurations import is_annihilated
from .lattice_poly import LaurentPoly, canonical_line, difference_binomial, vsub

__all__ = [
    "AnnihilatorBasis",
    "SpecialAnnihilator",
    "find_annihilators",
    "integerize",
    "verify_special_annihilator",
    "search_special_annihilator",
    "DEFAULT_MULTIPLIER_BOUND",
]

DEFAULT_MULTIPLIER_BOUND = 8


@dataclass(frozen=True)
class AnnihilatorBasis:
    """Integer basis of annihilators ``g`` of a configuration with ``-Supp(g)`` inside ``shape``."""

    shape: tuple
    basis: tuple

    @property
    def rank(self):
        return len(self.basis)

    def __bool__(self):
        return bool(self.basis)

    def to_json(self):
        return {
            "shape": [list(u) for u in self.shape],
            "basis": [g.to_json() for g in self.basis],
        }


def _rank_of(vectors):
    return _linalg.rank([{i: a for i, a in enumerate(v) if a} for v in vectors])


@dataclass(frozen=True)
class SpecialAnnihilator:
    """Nonzero, pairwise linearly independent vectors ``t_1..t_m``."""

    vectors: tuple

    def __post_init__(self):
        vecs = tuple(tuple(int(a) for a in t) for t in self.vectors)
        if not vecs:
            raise ValueError("special annihilator needs at least one vector")
        if len({len(t) for t in vecs}) != 1:
            raise ValueError("vectors have mixed lengths")
        if any(not any(t) for t in vecs):
            raise ValueError("vectors must be nonzero")
        for a, b in itertools.combinations(vecs, 2):
            if _rank_of([a, b]) < 2:
                raise ValueError(f"{a} and {b} are linearly dependent")
        object.__setattr__(self, "vectors", vecs)

    @property
    def dim(self):
        return len(self.vectors[0])

    def expand(self):
        prod = LaurentPoly.constant(self.dim, 1)
        for t in self.vectors:
            prod = prod * difference_binomial(t)
        return prod

    def to_json(self):
        return {"vectors": [list(t) for t in self.vectors]}


def integerize(coeffs, dim=None):
    """Scale a rational-coefficient polynomial to coprime integers, same support.

    ``coeffs`` is a mapping ``exponent -> number`` (or a LaurentPoly).
    """
    if isinstance(coeffs, LaurentPoly):
        dim = coeffs.dim
        coeffs = coeffs.terms
    items = [(tuple(e), Fraction(c)) for e, c in coeffs.items() if c]
    if not items:
        raise ValueError("cannot integerize the zero polynomial")
    if dim is None:
        dim = len(items[0][0])
    ints, _ = _linalg.clear_denominators([c for _, c in items])
    return LaurentPoly(dim, {e: c for (e, _), c in zip(items, ints)})


def find_annihilators(c, shape):
    """Integer nullspace basis of ``{g : g c = 0, -Supp(g) in shape}``.

    One equation per torus cell; unknowns are the coefficients ``g_v`` for
    ``v`` in ``-shape``, ordered lexicographically.
    """
    shape = sorted({tuple(u) for u in shape})
    if not shape:
        raise ValueError("shape must be nonempty")
    if any(len(u) != c.dim for u in shape):
        raise ValueError("shape dimension does not match configuration")
    exps = sorted(tuple(-a for a in u) for u in shape)
    rows = []
    for u in c.cells():
        row = {}
        for j, v in enumerate(exps):
            val = int(c[tuple(a - b for a, b in zip(u, v))])
            if val:
                row[j] = val
        if row:
            rows.append(row)
    basis = []
    for vec in _linalg.nullspace(rows, len(exps)):
        basis.append(integerize({e: x for e, x in zip(exps, vec) if x}, c.dim))
    return AnnihilatorBasis(shape=tuple(shape), basis=tuple(basis))


def verify_special_annihilator(c, s):
    return is_annihilated(s.expand(), c)


def _lines_from(anchor, support):
    return sorted({canonical_line(vsub(u, anchor)) for u in support if u != anchor})


def search_special_annihilator(c, f, multiplier_bound=DEFAULT_MULTIPLIER_BOUND, max_factors=None):
    """Bounded search for a product of difference binomials annihilating ``c``.

    Anchors ``u`` run over ``Supp(f)`` in lexicographic order.  For each
    anchor the candidate lines are those through ``u`` and another support
    point.  Candidates are tried with fewer factors first, then line
    combinations in lexicographic order, then multipliers ``1..bound`` per
    line; the first annihilating product is returned.
    """
    if multiplier_bound < 1:
        raise ValueError("multiplier_bound must be at least 1")
    if f.is_zero() or not is_annihilated(f, c):
        raise ValueError("f does not annihilate the configuration")
    support = sorted(f.support)
    tried = set()
    for anchor in support:
        lines = _lines_from(anchor, support)
        top = len(lines) if max_factors is None else min(max_factors, len(lines))
        for m in range(1, top + 1):
            for combo in itertools.combinations(lines, m):
                for mults in itertools.product(range(1, multiplier_bound + 1), repeat=m):
                    vecs = tuple(tuple(k * a for a in line) for k, line in zip(mults, combo))
                    if vecs in tried:
                        continue
                    tried.add(vecs)
                    cand = SpecialAnnihilator(vecs)
                    if verify_special_annihilator(c, cand):
                        return cand
    return None
