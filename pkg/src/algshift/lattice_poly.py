"""Integer Laurent polynomials in ``d`` variables and integer lattice bases.

A :class:`LaurentPoly` is a finitely supported map from exponent vectors
(tuples of ``d`` Python ints) to nonzero integer coefficients.  Zero
coefficients are never stored, so ``poly.support`` is just the key set.

>>> x1, x2 = LaurentPoly.variable(2, 0), LaurentPoly.variable(2, 1)
>>> str((x1 - 1) * (x1 ** -1 - 1))
'2 - x1 - x1^-1'
"""

from math import gcd

__all__ = [
    "LaurentPoly",
    "LatticeBasis",
    "add",
    "mul",
    "difference_binomial",
    "sublattice_basis",
    "reexpress",
    "expand",
    "inner",
    "primitive",
    "canonical_line",
]


def inner(u, v):
    return sum(a * b for a, b in zip(u, v))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vneg(u):
    return tuple(-a for a in u)


def primitive(v):
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for a in v:
        g = gcd(g, a)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(a // g for a in v)


def canonical_line(v):
    """Primitive representative of the line through ``v``, first nonzero entry positive."""
    p = primitive(v)
    for a in p:
        if a:
            return p if a > 0 else vneg(p)
    raise AssertionError("unreachable")


def _check_exp(exp, dim):
    exp = tuple(exp)
    if len(exp) != dim:
        raise ValueError(f"exponent {exp} does not have length {dim}")
    for a in exp:
        if not isinstance(a, int) or isinstance(a, bool):
            raise TypeError(f"exponent entries must be int, got {a!r}")
    return exp


class LaurentPoly:
    """Immutable integer Laurent polynomial.

    ``dim`` may be 0, in which case the only exponent is ``()`` and the ring
    is just the integers; this shows up when fibers are re-expressed over a
    rank-0 lattice.
    """

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim, terms=None):
        if not isinstance(dim, int) or dim < 0:
            raise ValueError(f"dim must be a non-negative int, got {dim!r}")
        self.dim = dim
        clean = {}
        for exp, coef in (terms or {}).items():
            if not isinstance(coef, int) or isinstance(coef, bool):
                raise TypeError(f"coefficients must be int, got {coef!r}")
            if coef:
                clean[_check_exp(exp, dim)] = coef
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, dim, terms):
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.dim = dim
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, dim):
        return cls._raw(dim, {})

    @classmethod
    def constant(cls, dim, c=1):
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def monomial(cls, exp, coef=1):
        exp = tuple(exp)
        return cls(len(exp), {exp: coef})

    @classmethod
    def variable(cls, dim, i):
        exp = [0] * dim
        exp[i] = 1
        return cls(dim, {tuple(exp): 1})

    @classmethod
    def from_support(cls, points, dim=None):
        """Sum of ``x^u`` over distinct points ``u``."""
        points = [tuple(p) for p in points]
        if dim is None:
            if not points:
                raise ValueError("cannot infer dim from an empty support")
            dim = len(points[0])
        if len(set(points)) != len(points):
            raise ValueError("duplicate support points")
        return cls(dim, {p: 1 for p in points})

    # --- inspection -----------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    @property
    def support(self):
        return frozenset(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exp):
        return self._terms.get(tuple(exp), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_monomial(self):
        return len(self._terms) == 1

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and (0,) * self.dim in self._terms)

    def sorted_items(self):
        return sorted(self._terms.items())

    # --- arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.dim != self.dim:
                raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return LaurentPoly.constant(self.dim, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return LaurentPoly._raw(self.dim, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.dim, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return LaurentPoly._raw(self.dim, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial() or abs(next(iter(self._terms.values()))) != 1:
                raise ValueError("only unit monomials can be inverted")
            (e, c), = self._terms.items()
            return LaurentPoly._raw(self.dim, {tuple(n * a for a in e): c ** (-n)})
        result = LaurentPoly.constant(self.dim, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, t):
        """Multiply by the monomial ``x^t``."""
        t = _check_exp(t, self.dim)
        return LaurentPoly._raw(self.dim, {vadd(e, t): c for e, c in self._terms.items()})

    def reflect(self):
        """Substitute ``x -> x^-1`` (negate every exponent)."""
        return LaurentPoly._raw(self.dim, {vneg(e): c for e, c in self._terms.items()})

    def scale(self, k):
        if k == 0:
            return LaurentPoly.zero(self.dim)
        return LaurentPoly._raw(self.dim, {e: c * k for e, c in self._terms.items()})

    def content(self):
        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    # --- equality / display -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = LaurentPoly.constant(self.dim, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self.dim}, {dict(self.sorted_items())!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        # constant first, then by total degree descending, then exponent
        def key(item):
            e = item[0]
            return (any(e), -sum(e), tuple(-a for a in e))

        out = []
        for e, c in sorted(self._terms.items(), key=key):
            factors = []
            for i, a in enumerate(e):
                if a == 1:
                    factors.append(f"x{i + 1}")
                elif a:
                    factors.append(f"x{i + 1}^{a}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not out:
                out.append(body if c > 0 else "-" + body)
            else:
                out.append(("+ " if c > 0 else "- ") + body)
        return " ".join(out)

    # --- JSON -----------------------------------------------------------

    def to_json(self):
        return {
            "dim": self.dim,
            "terms": [{"exp": list(e), "coef": c} for e, c in self.sorted_items()],
        }

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise ValueError("polynomial JSON must be an object")
        extra = set(data) - {"dim", "terms"}
        if extra:
            raise ValueError(f"unknown polynomial fields: {sorted(extra)}")
        if "dim" not in data or "terms" not in data:
            raise ValueError("polynomial JSON needs 'dim' and 'terms'")
        dim = data["dim"]
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
            raise ValueError(f"bad dim {dim!r}")
        if not isinstance(data["terms"], list):
            raise ValueError("'terms' must be a list")
        terms = {}
        for t in data["terms"]:
            if not isinstance(t, dict) or set(t) != {"exp", "coef"}:
                raise ValueError(f"bad term {t!r}")
            if not isinstance(t["exp"], list):
                raise ValueError(f"bad exponent {t['exp']!r}")
            exp = _check_exp(t["exp"], dim)
            if exp in terms:
                raise ValueError(f"duplicate exponent {list(exp)}")
            coef = t["coef"]
            if not isinstance(coef, int) or isinstance(coef, bool):
                raise ValueError(f"coefficient must be an integer, got {coef!r}")
            terms[exp] = coef
        return cls(dim, terms)


def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def difference_binomial(t):
    """The binomial ``x^t - 1``; it annihilates exactly the t-periodic configurations."""
    t = tuple(t)
    if not any(t):
        raise ValueError("difference binomial needs a nonzero vector")
    return LaurentPoly(len(t), {t: 1, (0,) * len(t): -1})


# --- lattices -------------------------------------------------------------


class LatticeBasis:
    """Row-style Hermite normal form basis of a sublattice of Z^dim.

    Rows have strictly increasing pivot columns, positive pivots, and entries
    above each pivot reduced into ``[0, pivot)``.  Equal lattices therefore
    have identical bases.
    """

    __slots__ = ("dim", "vectors", "pivots")

    def __init__(self, dim, vectors):
        self.dim = dim
        self.vectors = tuple(tuple(v) for v in vectors)
        self.pivots = tuple(next(i for i, a in enumerate(v) if a) for v in self.vectors)

    @property
    def rank(self):
        return len(self.vectors)

    def __eq__(self, other):
        return isinstance(other, LatticeBasis) and (self.dim, self.vectors) == (other.dim, other.vectors)

    def __hash__(self):
        return hash((self.dim, self.vectors))

    def __repr__(self):
        return f"LatticeBasis(dim={self.dim}, vectors={list(self.vectors)})"

    def coordinates(self, v):
        """Integer coordinates of ``v`` in this basis; ValueError if ``v`` is outside the lattice."""
        rest = list(v)
        if len(rest) != self.dim:
            raise ValueError(f"vector {tuple(v)} does not have length {self.dim}")
        coords = []
        for b, p in zip(self.vectors, self.pivots):
            q, r = divmod(rest[p], b[p])
            if r:
                raise ValueError(f"{tuple(v)} is not in the lattice")
            coords.append(q)
            if q:
                rest = [x - q * y for x, y in zip(rest, b)]
        if any(rest):
            raise ValueError(f"{tuple(v)} is not in the lattice")
        return tuple(coords)

    def contains(self, v):
        try:
            self.coordinates(v)
        except ValueError:
            return False
        return True

    def point(self, coords):
        """Inverse of :meth:`coordinates`."""
        out = [0] * self.dim
        for c, b in zip(coords, self.vectors):
            if c:
                out = [x + c * y for x, y in zip(out, b)]
        return tuple(out)


def hermite_rows(rows, dim):
    """Hermite normal form (row style) of the integer row span of ``rows``."""
    rows = [list(r) for r in rows if any(r)]
    out = []
    col = 0
    while rows and col < dim:
        # Euclid on column `col` until at most one row is nonzero there
        while True:
            nz = [r for r in rows if r[col]]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for j in range(col, dim):
                    r[j] -= q * piv[j]
            rows = [r for r in rows if any(r)]
        nz = [r for r in rows if r[col]]
        if nz:
            piv = nz[0]
            rows = [r for r in rows if r is not piv]
            if piv[col] < 0:
                piv = [-a for a in piv]
            for r in out:
                q = r[col] // piv[col]
                if q:
                    for j in range(col, dim):
                        r[j] -= q * piv[j]
            out.append(piv)
        col += 1
    return [tuple(r) for r in out]


def sublattice_basis(points):
    """Canonical basis of the integer lattice generated by ``points``."""
    points = [tuple(p) for p in points]
    if not points:
        raise ValueError("need at least one point")
    dim = len(points[0])
    return LatticeBasis(dim, hermite_rows(points, dim))


def reexpress(f, basis):
    """Rewrite ``f`` with exponents in ``basis`` coordinates (``dim == basis.rank``)."""
    if f.dim != basis.dim:
        raise ValueError(f"dimension mismatch: {f.dim} vs {basis.dim}")
    return LaurentPoly._raw(basis.rank, {basis.coordinates(e): c for e, c in f.items()})


def expand(g, basis):
    """Inverse of :func:`reexpress`."""
    if g.dim != basis.rank:
        raise ValueError(f"dimension mismatch: {g.dim} vs rank {basis.rank}")
    return LaurentPoly._raw(basis.dim, {basis.point(e): c for e, c in g.items()})
