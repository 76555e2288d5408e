import itertools
import json
import random

import pytest

from algshift import LaurentPoly, Tile
from algshift.annihilators import SpecialAnnihilator
from algshift.expansivity import (
    CERTIFICATE,
    SINGLETON,
    UNCERTIFIED,
    DimensionGuardError,
    Direction,
    certify_all,
    certify_direction,
    certify_directions,
    difference_lines,
    enumerate_flats,
    fiber_polys,
    flat_of,
    level_partition,
    monomial_certificate,
    nonexpansive_line_candidates,
    unique_level_point,
)
from algshift.lattice_poly import inner, sublattice_basis
from algshift.tiles import box_minus_corner, char_poly, lee_sphere, negate
from algshift.verify import check_report

LEE32 = char_poly(lee_sphere(3, 2))


def X(dim, i):
    return LaurentPoly.variable(dim, i)


def four_cell_binomial_set():
    D = Tile([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    return [
        char_poly(D),
        char_poly(negate(D)),
        LaurentPoly.monomial((1, 1, 1)) - 1,
        LaurentPoly.monomial((-1, -1, -1)) - 1,
    ]


# --- directions and level partitions -----------------------------------------


def test_direction_canonical():
    assert Direction((-2, 4, 0)).vector == (1, -2, 0)
    assert Direction((0, "1/2", "-1/3")).vector == (0, 3, -2)
    with pytest.raises(ValueError):
        Direction((0, 0))


def test_lee_levels_along_diagonal():
    part = level_partition(LEE32, (1, 1, 1))
    assert part.levels() == [-2, -1, 0, 1, 2]
    assert set(part.class_at(1)) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    assert len(part.class_at(0)) == 7


def test_constant_single_class():
    part = level_partition(LaurentPoly.constant(2, 1), (3, -1))
    assert part.classes == ((0, ((0, 0),)),)


def test_level_partition_rejects_zero():
    with pytest.raises(ValueError):
        level_partition(LaurentPoly.zero(2), (1, 0))


def test_fiber_shift_to_least_point():
    part = level_partition(LEE32, (1, 1, 1))
    fibers = dict(zip(part.levels(), fiber_polys(part)))
    x1, x2, x3 = (X(3, i) for i in range(3))
    assert fibers[1] == x1 * x3 ** -1 + x2 * x3 ** -1 + 1


def test_singleton_fiber_is_one():
    part = level_partition(LEE32, (1, 0, 0))
    fibers = dict(zip(part.levels(), fiber_polys(part)))
    assert fibers[2] == 1 and fibers[-2] == 1


def _equal_up_to_shift(a, b):
    sa, sb = sorted(a.support), sorted(b.support)
    if len(sa) != len(sb):
        return False
    d = tuple(x - y for x, y in zip(sa[0], sb[0]))
    return a == b.shift(d)


def test_lee_fibers_at_110():
    x1, x2, x3 = (X(3, i) for i in range(3))
    f = x1 ** 2 + x1 * x2 + x2 ** 2
    g = x1 + x2 + x1 * x3 + x2 * x3 + x1 * x3 ** -1 + x2 * x3 ** -1
    h = x3 ** 2 + x3 + 1 + x3 ** -1 + x3 ** -2 + x1 * x2 ** -1 + x1 ** -1 * x2
    fibers = fiber_polys(level_partition(LEE32, (1, 1, 0)))
    for target in (f, g, h):
        assert any(_equal_up_to_shift(fb, target) for fb in fibers)


# --- unique level points ------------------------------------------------------


def test_unique_level_examples():
    assert unique_level_point(LEE32, (1, 0, 0)) == (0, (2, 0, 0))
    assert unique_level_point(LEE32, (1, 1, 1)) is None
    assert unique_level_point(X(1, 0) + 2, (1,)) == (0, (1,))


def test_unique_level_satisfies_support_condition():
    # shifted so the unique point is at the origin, the periodizer meets
    # the hyperplane u-perp only at the origin
    rng = random.Random(2)
    fs = four_cell_binomial_set() + [LEE32, char_poly(box_minus_corner(2, 2, 2))]
    hits = 0
    for _ in range(500):
        u = tuple(rng.randint(-5, 5) for _ in range(3))
        if not any(u):
            continue
        for f in fs:
            hit = unique_level_point(f, u)
            if hit is None:
                continue
            hits += 1
            _, v = hit
            shifted = f.shift(tuple(-a for a in v))
            assert {w for w in shifted.support if inner(w, u) == 0} == {(0, 0, 0)}
    assert hits > 500


# --- monomial certificates ----------------------------------------------------


def _lee_diagonal_fibers(d):
    part = level_partition(char_poly(lee_sphere(d, 2)), (1,) * d)
    return dict(zip(part.levels(), fiber_polys(part)))


def test_lee_diagonal_certificate_found_and_sound():
    fibers = _lee_diagonal_fibers(3)
    cert = monomial_certificate([fibers[0], fibers[1]], 1)
    assert cert is not None and cert.check()
    assert cert.coef != 0 and cert.exp == (0, 0, 0)


def test_lee_diagonal_hand_combination_on_tool_fibers():
    # (x1^-1 + x2^-1 + x3^-1) g - f = 2, with g = x^(0,0,1) * (tool level-1 fiber)
    fibers = _lee_diagonal_fibers(3)
    xs = [X(3, i) for i in range(3)]
    g = fibers[1] * xs[2]
    zero = min(p for p in level_partition(LEE32, (1, 1, 1)).class_at(0))
    f = fibers[0].shift(zero)
    assert sum((x ** -1 for x in xs), LaurentPoly.zero(3)) * g - f == 2


def test_trivial_certificate():
    cert = monomial_certificate([LaurentPoly.constant(2, 1)], 0)
    assert cert.multipliers == [LaurentPoly.constant(2, 1)] and cert.coef == 1


def test_no_certificate_for_single_binomial():
    # x - 1 alone generates a proper ideal; no radius helps
    for r in range(4):
        assert monomial_certificate([X(1, 0) - 1], r) is None


def test_certificate_zero_fibers_and_bad_radius():
    assert monomial_certificate([LaurentPoly.zero(2)], 2) is None
    with pytest.raises(ValueError):
        monomial_certificate([LaurentPoly.constant(2, 1)], -1)
    with pytest.raises(ValueError):
        monomial_certificate([], 0)


def test_certificate_multipliers_in_fiber_lattice():
    fibers = fiber_polys(level_partition(LEE32, (1, 1, 0)))
    cert = monomial_certificate(fibers, 2)
    lattice = sublattice_basis([e for g in cert.fibers for e in g.support])
    assert all(lattice.contains(e) for p in cert.multipliers for e in p.support)
    assert all(inner(e, (1, 1, 0)) == 0 for p in cert.multipliers for e in p.support)


def test_radius_monotonicity():
    cases = [
        fiber_polys(level_partition(LEE32, (1, 1, 0))),
        fiber_polys(level_partition(LEE32, (1, 1, 1))),
        fiber_polys(level_partition(LEE32, (2, 2, 1))),
        fiber_polys(level_partition(char_poly(box_minus_corner(2, 2, 2)), (1, 0, 0))),
        fiber_polys(level_partition(char_poly(box_minus_corner(2, 3, 2)), (1, 1, 0))),
    ]
    for fibers in cases:
        ok = [monomial_certificate(fibers, r) is not None for r in range(4)]
        first = ok.index(True)
        assert all(ok[first:])


# --- flats ----------------------------------------------------------------------


def test_single_generic_flat_in_dim_one():
    flats = enumerate_flats([X(1, 0) - 1])
    assert len(flats) == 1 and flats[0].annihilated == () and flats[0].rank == 0


def test_four_cell_binomial_flats():
    flats = enumerate_flats(four_cell_binomial_set())
    by_lines = {fl.annihilated: fl for fl in flats}
    assert () in by_lines
    target = by_lines[((1, 0, 0), (1, 1, 1))]
    assert target.representative.vector == (0, 1, -1)
    # mixed-sign classes: directions orthogonal to (1,1,1) with all entries nonzero
    mixed = [fl for fl in flats if (1, 1, 1) in fl.annihilated and all(fl.representative.vector)]
    assert mixed


def test_lee_flats_cover_sign_cases():
    flats = enumerate_flats(LEE32)
    lines = difference_lines(LEE32)
    keys = {fl.annihilated for fl in flats}
    for u in [(3, 1, 0), (2, 1, 1), (5, 2, 1), (2, 2, 1), (1, 1, 0), (1, 1, 1), (1, 0, 0)]:
        assert flat_of(u, lines) in keys


def test_representatives_are_exact():
    for fs in (four_cell_binomial_set(), [LEE32], [char_poly(box_minus_corner(2, 2, 2))]):
        lines = difference_lines(fs)
        for fl in enumerate_flats(fs):
            assert flat_of(fl.representative, lines) == fl.annihilated


def test_flats_are_distinct_and_sorted():
    flats = enumerate_flats(LEE32)
    keys = [(fl.rank, fl.annihilated) for fl in flats]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)


def test_dimension_guard():
    with pytest.raises(DimensionGuardError):
        enumerate_flats(char_poly(lee_sphere(5, 1)))
    flats = enumerate_flats(char_poly(lee_sphere(2, 1)), max_dim=2)
    assert flats


def _random_direction(rng, d, lo=-9, hi=9):
    while True:
        u = tuple(rng.randint(lo, hi) for _ in range(d))
        if any(u):
            return u


def test_flat_coverage_sample():
    rng = random.Random(17)
    fs = [LEE32]
    lines = difference_lines(fs)
    flats = {fl.annihilated: fl for fl in enumerate_flats(fs)}
    for _ in range(500):
        u = _random_direction(rng, 3)
        key = flat_of(u, lines)
        assert key in flats
        rep = flats[key].representative
        assert level_partition(LEE32, u).blocks() == level_partition(LEE32, rep).blocks()


def test_level_partition_constant_on_flats():
    rng = random.Random(23)
    fs = [char_poly(box_minus_corner(2, 2, 2))]
    lines = difference_lines(fs)
    for fl in enumerate_flats(fs):
        ref = [level_partition(f, fl.representative).blocks() for f in fs]
        # directions of the flat: integer points of its orthogonal complement
        members = [u for u in itertools.product(range(-4, 5), repeat=3)
                   if any(u) and flat_of(u, lines) == fl.annihilated]
        assert members, fl
        for u in (rng.choice(members) for _ in range(100)):
            assert [level_partition(f, u).blocks() for f in fs] == ref


# --- certify_all ------------------------------------------------------------


def test_four_cell_binomial_all_singleton():
    report = certify_all(four_cell_binomial_set())
    assert report.counts()[CERTIFICATE] == 0 and report.counts()[UNCERTIFIED] == 0
    assert report.conclusion == "strongly-periodic"


def test_box_minus_corner_examples():
    for sizes in [(2, 2, 2), (2, 3, 2)]:
        report = certify_all(char_poly(box_minus_corner(*sizes)))
        assert report.conclusion == "strongly-periodic"
        # every direction with all coordinates nonzero is settled by a corner
        for v in report.verdicts:
            if all(v.flat.representative.vector):
                assert v.kind == SINGLETON


def test_lee_report_verdicts():
    report = certify_all(LEE32)
    assert report.conclusion == "strongly-periodic"
    assert report.verdict_for((3, 1, 0)).kind == SINGLETON
    for u in [(2, 2, 1), (1, 1, 0), (1, 1, 1)]:
        v = report.verdict_for(u)
        assert v.kind == CERTIFICATE and v.certificate.check()
        assert v.certificate.radius <= 3
    ok, problems = check_report(report.to_json())
    assert ok, problems


def test_one_sided_report():
    report = certify_all(LEE32, radius_schedule=(0,))
    assert report.conclusion == "partial"
    unc = report.uncertified()
    assert unc and all(v.radius_schedule == (0,) for v in unc)
    text = json.dumps(report.to_json())
    assert "non-expansive" not in text and "not expansive" not in text
    assert all(entry["radius_schedule"] == [0] for entry in report.to_json()["flats"]
               if entry["verdict"] == UNCERTIFIED)


def test_selected_directions_are_partial():
    report = certify_directions(char_poly(lee_sphere(4, 2)), [(1, 1, 1, 1)])
    assert report.verdicts[0].kind == CERTIFICATE
    assert report.conclusion == "partial"
    assert report.to_json()["scope"] == "selected-directions"


def test_certify_direction_drops_unused_fibers():
    v = certify_direction(LEE32, (1, 1, 1))
    cert = v.certificate
    assert all(not p.is_zero() for p in cert.multipliers)
    assert len(cert.sources) == len(cert.fibers)


# --- candidate non-expansive lines ----------------------------------------------


def test_candidate_examples():
    assert nonexpansive_line_candidates(SpecialAnnihilator([(2, 0), (0, 2)])) == [(0, 1), (1, 0)]
    assert nonexpansive_line_candidates(SpecialAnnihilator([(1, 1, -1)])) == [(1, 1, -1)]


def test_candidates_match_four_cell_split():
    # flats whose lines miss every candidate are decided by a binomial's singleton level
    cands = nonexpansive_line_candidates(SpecialAnnihilator([(1, 1, 1)]))
    fs = four_cell_binomial_set()
    for fl in enumerate_flats(fs):
        if not any(c in fl.annihilated for c in cands):
            idx, _ = unique_level_point(fs[2:], fl.representative)
            assert idx in (0, 1)
