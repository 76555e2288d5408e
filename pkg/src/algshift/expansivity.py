"""Expansive subspaces from periodizers via fibers.

For a direction ``u`` let ``S = <u>^perp``.  The support of a periodizer
``f`` splits into level classes of equal ``<v, u>``; each class, shifted to
contain the origin, is an S-fiber of ``f``.  ``S`` is expansive as soon as
some combination of fibers (with S-supported multipliers) is a nonzero
monomial.  The simplest instance is a singleton class: ``x^-v f`` then meets
``S`` only at the origin.

Level classes only depend on which support differences are orthogonal to
``u``, so directions are grouped into *flats*: a flat is a set of difference
lines closed under linear span, and all directions orthogonal to exactly
those lines share the same fibers.  Certifying one representative per flat
certifies every direction, and with it (Boyle-Lind) finiteness of the
subshift.

The procedure is one-sided.  A flat that is not certified is reported as
such; nothing here ever claims a subspace is non-expansive.
"""

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import _linalg
from .configurations import PeriodizerSet
from .lattice_poly import (
    LaurentPoly,
    LatticeBasis,
    canonical_line,
    expand,
    hermite_rows,
    inner,
    primitive,
    reexpress,
    sublattice_basis,
    vneg,
    vsub,
)

__all__ = [
    "Direction",
    "LevelPartition",
    "Flat",
    "Certificate",
    "FlatVerdict",
    "ExpansivityReport",
    "DimensionGuardError",
    "level_partition",
    "fiber_polys",
    "unique_level_point",
    "monomial_certificate",
    "difference_lines",
    "enumerate_flats",
    "flat_of",
    "certify_direction",
    "certify_all",
    "certify_directions",
    "nonexpansive_line_candidates",
    "DEFAULT_RADIUS_SCHEDULE",
    "DEFAULT_MAX_DIM",
]

DEFAULT_RADIUS_SCHEDULE = (0, 1, 2, 3)
DEFAULT_MAX_DIM = 4

SINGLETON = "singleton-level"
CERTIFICATE = "certificate"
UNCERTIFIED = "uncertified"

INFERENCE = {
    SINGLETON: "a periodizer has a point with a unique level; shifted to the origin it meets S only there",
    CERTIFICATE: "S-fibers of the periodizers combine to a nonzero monomial, so the periodizer ideal meets S only at a unit",
    UNCERTIFIED: "no singleton level and no certificate within the radius schedule; inconclusive",
}
DIRECTION_NOTE = (
    "directions are rational: flats are cut out by integer difference vectors, so every flat "
    "with a real direction has a rational one"
)


class DimensionGuardError(ValueError):
    pass


def _as_set(fs):
    if isinstance(fs, PeriodizerSet):
        return fs
    if isinstance(fs, LaurentPoly):
        return PeriodizerSet([fs])
    return PeriodizerSet(list(fs))


@dataclass(frozen=True)
class Direction:
    """A nonzero direction, stored as a primitive integer vector with first nonzero entry positive."""

    vector: tuple

    def __post_init__(self):
        v = [Fraction(a) for a in self.vector]
        den = math.lcm(*(a.denominator for a in v)) if v else 1
        v = tuple(int(a * den) for a in v)
        if not any(v):
            raise ValueError("direction must be nonzero")
        object.__setattr__(self, "vector", canonical_line(v))

    @property
    def dim(self):
        return len(self.vector)

    def level(self, point):
        return inner(point, self.vector)


def _direction(u):
    return u if isinstance(u, Direction) else Direction(tuple(u))


@dataclass(frozen=True)
class LevelPartition:
    """Support of ``source`` grouped by ``<v, u>``; ``classes`` is ``((level, points), ...)`` by level."""

    source: LaurentPoly
    direction: Direction
    classes: tuple

    def levels(self):
        return [lv for lv, _ in self.classes]

    def class_at(self, level):
        for lv, pts in self.classes:
            if lv == level:
                return pts
        raise KeyError(level)

    def blocks(self):
        """The partition as a set of frozensets (levels forgotten)."""
        return frozenset(frozenset(pts) for _, pts in self.classes)


def level_partition(f, u):
    if f.is_zero():
        raise ValueError("the zero polynomial has no level partition")
    u = _direction(u)
    if u.dim != f.dim:
        raise ValueError(f"direction has dim {u.dim}, polynomial has dim {f.dim}")
    groups = {}
    for v in f.support:
        groups.setdefault(u.level(v), []).append(v)
    classes = tuple((lv, tuple(sorted(groups[lv]))) for lv in sorted(groups))
    return LevelPartition(source=f, direction=u, classes=classes)


def _fiber(f, points):
    shift = points[0]  # points are sorted: lexicographically least first
    poly = LaurentPoly(f.dim, {vsub(p, shift): f.coeff(p) for p in points})
    return shift, poly


def fiber_polys(partition):
    """One fiber per level class, shifted so its least point sits at the origin."""
    return [_fiber(partition.source, pts)[1] for _, pts in partition.classes]


def _level_order(levels):
    # extremal levels first (corner determinism), then the rest ascending
    if len(levels) <= 2:
        return list(reversed(levels))
    return [levels[-1], levels[0]] + list(levels[1:-1])


def unique_level_point(fs, u):
    """First ``(periodizer index, point)`` whose level class is a singleton, or None."""
    fs = _as_set(fs)
    u = _direction(u)
    for i, f in enumerate(fs):
        part = level_partition(f, u)
        by_level = dict(part.classes)
        for lv in _level_order(part.levels()):
            if len(by_level[lv]) == 1:
                return i, by_level[lv][0]
    return None


# --- certificates -----------------------------------------------------------


@dataclass
class Certificate:
    """``sum(multipliers[i] * fibers[i]) == coef * x^exp`` with S-supported multipliers.

    ``sources`` optionally labels each fiber with ``(periodizer index, level,
    shift)`` where ``fiber = x^-shift * (class of the periodizer at level)``.
    """

    fibers: list
    multipliers: list
    exp: tuple
    coef: int
    radius: int
    lattice: LatticeBasis
    sources: list = None

    def combination(self):
        dim = self.fibers[0].dim
        total = LaurentPoly.zero(dim)
        for p, g in zip(self.multipliers, self.fibers):
            total = total + p * g
        return total

    def check(self):
        if self.coef == 0:
            return False
        if self.combination() != LaurentPoly.monomial(self.exp, self.coef):
            return False
        return all(self.lattice.contains(e) for p in self.multipliers for e in p.support)

    def to_json(self):
        fibers = []
        for k, g in enumerate(self.fibers):
            entry = {"poly": g.to_json()}
            if self.sources is not None:
                idx, level, shift = self.sources[k]
                entry.update({"periodizer": idx, "level": level, "shift": list(shift)})
            fibers.append(entry)
        return {
            "fibers": fibers,
            "multipliers": [p.to_json() for p in self.multipliers],
            "result": {"exp": list(self.exp), "coef": self.coef},
            "radius": self.radius,
            "lattice_basis": [list(b) for b in self.lattice.vectors],
        }


def monomial_certificate(fibers, radius):
    """Search ``sum p_i f_i = const != 0`` with each ``p_i`` in the radius box of the fiber lattice.

    Each fiber is first shifted so its least point is the origin; the
    returned certificate refers to these shifted fibers.  Fibers are
    re-expressed in coordinates of the lattice generated by their
    within-fiber differences; every ``p_i`` ranges over polynomials with
    exponents in ``[-radius, radius]^rank``.  The exact rational system is
    solved with free variables at zero and the solution scaled to integers.
    Returns None if the system is inconsistent at this radius.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    fibers = list(fibers)
    if not fibers:
        raise ValueError("need at least one fiber")
    dim = fibers[0].dim
    if any(g.dim != dim for g in fibers):
        raise ValueError("fibers have mixed dimensions")
    live = [k for k, g in enumerate(fibers) if not g.is_zero()]
    if not live:
        return None

    shifts, normed = {}, {}
    for k in live:
        m = min(fibers[k].support)
        shifts[k] = m
        normed[k] = fibers[k].shift(vneg(m))
    points = [e for k in live for e in normed[k].support]
    lattice = sublattice_basis(points)
    coords = {k: reexpress(normed[k], lattice) for k in live}
    rank = lattice.rank

    box = list(itertools.product(range(-radius, radius + 1), repeat=rank))
    columns = [(k, b) for k in live for b in box]
    positions = {}
    rows = []
    for col, (k, b) in enumerate(columns):
        for e, c in coords[k].items():
            pos = tuple(x + y for x, y in zip(b, e))
            r = positions.get(pos)
            if r is None:
                r = positions[pos] = len(rows)
                rows.append({})
            rows[r][col] = rows[r].get(col, 0) + c
    origin = (0,) * rank
    if origin not in positions:
        return None
    sol = _linalg.solve(rows, {positions[origin]: 1}, len(columns))
    if sol is None:
        return None
    ints, scale = _linalg.clear_denominators(sol)
    assert scale.denominator == 1
    mult_coords = {k: {} for k in live}
    for (k, b), a in zip(columns, ints):
        if a:
            mult_coords[k][b] = a
    multipliers = []
    for k in range(len(fibers)):
        if mult_coords.get(k):
            multipliers.append(expand(LaurentPoly(rank, mult_coords[k]), lattice))
        else:
            multipliers.append(LaurentPoly.zero(dim))
    cert = Certificate(
        fibers=[normed.get(k, g) for k, g in enumerate(fibers)],
        multipliers=multipliers,
        exp=(0,) * dim,
        coef=int(scale),
        radius=radius,
        lattice=lattice,
    )
    if not cert.combination() == LaurentPoly.constant(dim, cert.coef):
        raise AssertionError("certificate identity failed to re-verify")
    return cert


# --- flats ------------------------------------------------------------------


def difference_lines(fs):
    """Canonical primitive lines of all pairwise differences within each periodizer's support."""
    fs = _as_set(fs)
    lines = set()
    for f in fs:
        supp = sorted(f.support)
        for a, b in itertools.combinations(supp, 2):
            lines.add(canonical_line(vsub(b, a)))
    return sorted(lines)


def _orth_complement(vectors, dim):
    """Integer basis (Hermite form) of the vectors orthogonal to all of ``vectors``."""
    rows = [{i: a for i, a in enumerate(v) if a} for v in vectors]
    basis = []
    for vec in _linalg.nullspace(rows, dim):
        ints, _ = _linalg.clear_denominators(vec)
        basis.append(tuple(ints))
    return hermite_rows(basis, dim)


@dataclass(frozen=True)
class Flat:
    """Difference lines orthogonal to the flat's directions, with one representative direction."""

    annihilated: tuple
    rank: int
    representative: Direction

    def contains_direction(self, u, lines):
        u = _direction(u).vector
        return tuple(m for m in lines if inner(m, u) == 0) == self.annihilated


def _closure(gens, lines, dim):
    normal = _orth_complement(gens, dim)
    return frozenset(m for m in lines if all(inner(n, m) == 0 for n in normal))


def _representative(closed, lines, dim, search_bound=64):
    normal = _orth_complement(list(closed), dim) if closed else hermite_rows(
        [tuple(int(i == j) for j in range(dim)) for i in range(dim)], dim
    )
    others = [m for m in lines if m not in closed]
    k = len(normal)
    for bound in range(1, search_bound + 1):
        for cs in itertools.product(range(-bound, bound + 1), repeat=k):
            if max(map(abs, cs)) != bound:
                continue
            u = tuple(sum(c * n[i] for c, n in zip(cs, normal)) for i in range(dim))
            if not any(u):
                continue
            if all(inner(u, m) != 0 for m in others):
                return Direction(primitive(u))
    return None


def enumerate_flats(fs, max_dim=DEFAULT_MAX_DIM):
    """Every flat of the difference-line arrangement of rank at most ``d - 1``.

    Flats are closed sets of difference lines (everything in their span);
    each gets a rational representative orthogonal to exactly its lines.
    The generic flat (no lines) is always included.  Sorted by rank, then by
    line set.
    """
    fs = _as_set(fs)
    dim = fs.dim
    if dim > max_dim:
        raise DimensionGuardError(f"dimension {dim} exceeds the configured maximum {max_dim}")
    lines = difference_lines(fs)
    found = {frozenset(): 0}
    layer = [frozenset()]
    for rank in range(1, dim):
        nxt = set()
        for F in layer:
            covered = set(F)
            for m in lines:
                if m in covered:
                    continue
                closed = _closure(list(F) + [m], lines, dim)
                covered |= closed
                nxt.add(closed)
        for F in nxt:
            found.setdefault(F, rank)
        layer = sorted(nxt, key=sorted)
    flats = []
    for F, rank in found.items():
        rep = _representative(F, lines, dim)
        if rep is None:
            continue
        flats.append(Flat(annihilated=tuple(sorted(F)), rank=rank, representative=rep))
    flats.sort(key=lambda fl: (fl.rank, fl.annihilated))
    return flats


def flat_of(u, lines):
    """The annihilated line set of the flat containing direction ``u``."""
    u = _direction(u).vector
    return tuple(m for m in lines if inner(m, u) == 0)


# --- verdicts and reports ---------------------------------------------------


@dataclass
class FlatVerdict:
    flat: Flat
    kind: str
    witness: tuple = None  # (periodizer index, point, level) for singleton levels
    certificate: Certificate = None
    radius_schedule: tuple = ()

    @property
    def certified(self):
        return self.kind in (SINGLETON, CERTIFICATE)

    def to_json(self):
        out = {
            "annihilated_differences": [list(m) for m in self.flat.annihilated],
            "rank": self.flat.rank,
            "representative": list(self.flat.representative.vector),
            "verdict": self.kind,
            "inference": INFERENCE[self.kind],
        }
        if self.kind == SINGLETON:
            idx, point, level = self.witness
            out["witness"] = {"periodizer": idx, "point": list(point), "level": level}
        elif self.kind == CERTIFICATE:
            out["certificate"] = self.certificate.to_json()
        else:
            out["radius_schedule"] = list(self.radius_schedule)
        return out


@dataclass
class ExpansivityReport:
    periodizers: PeriodizerSet
    verdicts: list
    radius_schedule: tuple
    complete: bool = True  # False when only selected directions were analyzed
    provenance: dict = field(default_factory=dict)

    @property
    def flats(self):
        return [v.flat for v in self.verdicts]

    @property
    def all_certified(self):
        return all(v.certified for v in self.verdicts)

    @property
    def conclusion(self):
        if self.complete and self.verdicts and self.all_certified:
            return "strongly-periodic"
        return "partial"

    def uncertified(self):
        return [v for v in self.verdicts if not v.certified]

    def counts(self):
        out = {SINGLETON: 0, CERTIFICATE: 0, UNCERTIFIED: 0}
        for v in self.verdicts:
            out[v.kind] += 1
        return out

    def verdict_for(self, u):
        """Verdict of the flat containing direction ``u``."""
        key = flat_of(u, difference_lines(self.periodizers))
        for v in self.verdicts:
            if v.flat.annihilated == key:
                return v
        raise KeyError(f"no flat for direction {u}")

    def to_json(self):
        conclusion = self.conclusion
        if conclusion == "strongly-periodic":
            inference = (
                "every (d-1)-dimensional subspace is expansive, so the subshift is deterministic "
                "in every direction; by Boyle-Lind it is finite and all its configurations are "
                "strongly periodic"
            )
        elif not self.complete:
            inference = "only selected directions were analyzed; no conclusion about finiteness"
        else:
            inference = "some flats are uncertified; no conclusion about finiteness (the method is one-sided)"
        return {
            "format": "algshift-expansivity-report/1",
            "dim": self.periodizers.dim,
            "periodizers": [p.to_json() for p in self.periodizers],
            "radius_schedule": list(self.radius_schedule),
            "scope": "all-flats" if self.complete else "selected-directions",
            "direction_domain": DIRECTION_NOTE,
            "flats": [v.to_json() for v in self.verdicts],
            "counts": self.counts(),
            "conclusion": conclusion,
            "inference": inference,
            "provenance": dict(self.provenance),
        }


def _fibers_for(fs, u):
    fibers, sources, seen = [], [], set()
    for i, f in enumerate(fs):
        for level, pts in level_partition(f, u).classes:
            shift, poly = _fiber(f, pts)
            if poly in seen:
                continue
            seen.add(poly)
            fibers.append(poly)
            sources.append((i, level, shift))
    return fibers, sources


def certify_direction(fs, u, radius_schedule=DEFAULT_RADIUS_SCHEDULE, flat=None):
    """Verdict for the hyperplane orthogonal to ``u``."""
    fs = _as_set(fs)
    u = _direction(u)
    if flat is None:
        lines = difference_lines(fs)
        ann = flat_of(u, lines)
        rank = _linalg.rank([{i: a for i, a in enumerate(m) if a} for m in ann])
        flat = Flat(annihilated=ann, rank=rank, representative=u)
    hit = unique_level_point(fs, u)
    if hit is not None:
        idx, point = hit
        return FlatVerdict(flat=flat, kind=SINGLETON, witness=(idx, point, u.level(point)))
    fibers, sources = _fibers_for(fs, u)
    for radius in radius_schedule:
        cert = monomial_certificate(fibers, radius)
        if cert is not None:
            keep = [k for k, p in enumerate(cert.multipliers) if not p.is_zero()]
            cert.fibers = [cert.fibers[k] for k in keep]
            cert.multipliers = [cert.multipliers[k] for k in keep]
            cert.sources = [sources[k] for k in keep]
            return FlatVerdict(flat=flat, kind=CERTIFICATE, certificate=cert)
    return FlatVerdict(flat=flat, kind=UNCERTIFIED, radius_schedule=tuple(radius_schedule))


def certify_all(fs, radius_schedule=DEFAULT_RADIUS_SCHEDULE, max_dim=DEFAULT_MAX_DIM):
    """Certify every flat; the conclusion is strongly periodic only if all flats are certified."""
    fs = _as_set(fs)
    radius_schedule = tuple(radius_schedule)
    verdicts = [
        certify_direction(fs, fl.representative, radius_schedule, flat=fl)
        for fl in enumerate_flats(fs, max_dim=max_dim)
    ]
    return ExpansivityReport(periodizers=fs, verdicts=verdicts, radius_schedule=radius_schedule)


def certify_directions(fs, directions, radius_schedule=DEFAULT_RADIUS_SCHEDULE):
    """Verdicts for chosen directions only (no flat enumeration, no dimension guard)."""
    fs = _as_set(fs)
    radius_schedule = tuple(radius_schedule)
    verdicts = [certify_direction(fs, u, radius_schedule) for u in directions]
    return ExpansivityReport(
        periodizers=fs, verdicts=verdicts, radius_schedule=radius_schedule, complete=False
    )


def nonexpansive_line_candidates(s):
    """Lines ``<t_i>`` of a special annihilator; a non-expansive hyperplane must contain one."""
    return sorted({canonical_line(t) for t in s.vectors})
