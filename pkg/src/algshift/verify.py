"""Independent re-check of expansivity reports.

Only polynomial arithmetic and inner products are used here; none of the
search code in :mod:`algshift.expansivity` is called.  For every flat the
checker recomputes

* that the listed differences are exactly the difference lines orthogonal
  to the representative,
* for a singleton verdict, that the witness point is alone on its level,
* for a certificate, that each fiber is the stated level class of the stated
  periodizer shifted by the stated point, that every multiplier is supported
  in the lattice generated by the fibers' supports, and that the combination
  equals the stated nonzero monomial.
"""

import itertools
import warnings

from .lattice_poly import LaurentPoly, canonical_line, inner, sublattice_basis, vsub


class ReportError(ValueError):
    pass


def _lines(periodizers):
    out = set()
    for f in periodizers:
        for a, b in itertools.combinations(sorted(f.support), 2):
            out.add(canonical_line(vsub(b, a)))
    return sorted(out)


def _check_singleton(entry, periodizers, rep):
    w = entry["witness"]
    f = periodizers[w["periodizer"]]
    point = tuple(w["point"])
    if point not in f.support or inner(point, rep) != w["level"]:
        return False
    return sum(1 for v in f.support if inner(v, rep) == w["level"]) == 1


def _check_certificate(entry, periodizers, rep):
    cert = entry["certificate"]
    fibers = []
    for fb in cert["fibers"]:
        f = periodizers[fb["periodizer"]]
        shift = tuple(fb["shift"])
        cls = [v for v in f.support if inner(v, rep) == fb["level"]]
        expected = LaurentPoly(f.dim, {vsub(v, shift): f.coeff(v) for v in cls})
        poly = LaurentPoly.from_json(fb["poly"])
        if poly != expected or not cls:
            return False
        fibers.append(poly)
    mults = [LaurentPoly.from_json(p) for p in cert["multipliers"]]
    if len(mults) != len(fibers) or not fibers:
        return False
    lattice = sublattice_basis([e for g in fibers for e in g.support])
    for p in mults:
        if not all(lattice.contains(e) for e in p.support):
            return False
    total = LaurentPoly.zero(fibers[0].dim)
    for p, g in zip(mults, fibers):
        total = total + p * g
    res = cert["result"]
    if res["coef"] == 0:
        return False
    return total == LaurentPoly.monomial(res["exp"], res["coef"])


def check_report(report):
    """Return ``(ok, problems)`` for a parsed report dict."""
    try:
        periodizers = [LaurentPoly.from_json(p) for p in report["periodizers"]]
        flats = report["flats"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ReportError(f"malformed report: {exc}") from None
    if not flats:
        warnings.warn("report has no flats; vacuously valid", stacklevel=2)
        return True, []
    lines = _lines(periodizers)
    problems = []
    all_certified = True
    for k, entry in enumerate(flats):
        try:
            rep = tuple(entry["representative"])
            listed = sorted(tuple(m) for m in entry["annihilated_differences"])
            if listed != [m for m in lines if inner(m, rep) == 0]:
                problems.append(f"flat {k}: annihilated differences do not match representative")
                continue
            kind = entry["verdict"]
            if kind == "singleton-level":
                ok = _check_singleton(entry, periodizers, rep)
            elif kind == "certificate":
                ok = _check_certificate(entry, periodizers, rep)
            elif kind == "uncertified":
                ok = True
                all_certified = False
            else:
                ok = False
        except (KeyError, TypeError, IndexError, ValueError) as exc:
            problems.append(f"flat {k}: malformed entry ({exc})")
            continue
        if not ok:
            problems.append(f"flat {k}: {kind} does not re-verify")
    if report.get("conclusion") == "strongly-periodic" and not all_certified:
        problems.append("conclusion claims strong periodicity but some flats are uncertified")
    return not problems, problems


def verify_certificate(report):
    """True iff every verdict in the report re-verifies."""
    return check_report(report)[0]
