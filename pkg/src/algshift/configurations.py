"""Finite exact stand-ins for configurations ``c: Z^d -> A``.

Two representations are provided:

* :class:`TorusConfig` -- values on ``Z^d / (n_1 Z x ... x n_d Z)``.  It lifts
  to a strongly periodic configuration of ``Z^d``.
* :class:`WindowConfig` -- values on a finite box ``[lo, hi]``, for local
  checks of configurations that are not periodic.

Products follow the formal power series convention
``(fc)_u = sum_v f_v c_{u-v}``, so the value at ``u`` depends on the pattern
of shape ``-Supp(f)`` around ``u``.
"""

import itertools

import numpy as np

from .lattice_poly import LaurentPoly, difference_binomial

__all__ = [
    "TorusConfig",
    "WindowConfig",
    "PeriodizerSet",
    "torus_product",
    "is_annihilated",
    "window_product",
    "is_tiling",
    "pattern_complexity",
    "translate",
    "reflect",
    "is_periodic",
]


def _int_array(values, shape):
    arr = np.asarray(values)
    if arr.dtype == object:
        if not all(isinstance(v, (int, np.integer)) and not isinstance(v, bool) for v in arr.flat):
            raise TypeError("configuration values must be integers")
    elif not np.issubdtype(arr.dtype, np.integer):
        raise TypeError(f"configuration values must be integers, got dtype {arr.dtype}")
    if arr.size != int(np.prod(shape)):
        raise ValueError(f"expected {int(np.prod(shape))} values, got {arr.size}")
    # object dtype keeps arbitrary precision through products
    return np.array([int(v) for v in arr.flat], dtype=object).reshape(shape)


class TorusConfig:
    """A configuration on a d-dimensional torus, stored row-major."""

    __slots__ = ("dims", "values")

    def __init__(self, dims, values):
        dims = tuple(int(n) for n in dims)
        if not dims or any(n < 1 for n in dims):
            raise ValueError(f"torus dims must be positive, got {dims}")
        self.dims = dims
        self.values = _int_array(values, dims)
        self.values.setflags(write=False)

    @property
    def dim(self):
        return len(self.dims)

    @property
    def size(self):
        return self.values.size

    @classmethod
    def constant(cls, dims, value):
        return cls(dims, np.full(tuple(dims), value, dtype=object))

    @classmethod
    def from_cells(cls, dims, cells, value=1):
        """Zero configuration with ``value`` at the given cells (taken mod dims)."""
        arr = np.zeros(tuple(dims), dtype=object)
        for u in cells:
            arr[tuple(a % n for a, n in zip(u, dims))] = value
        return cls(dims, arr)

    @classmethod
    def from_function(cls, dims, fn):
        arr = np.zeros(tuple(dims), dtype=object)
        for u in itertools.product(*(range(n) for n in dims)):
            arr[u] = int(fn(u))
        return cls(dims, arr)

    def __getitem__(self, u):
        return self.values[tuple(a % n for a, n in zip(u, self.dims))]

    def cells(self):
        return itertools.product(*(range(n) for n in self.dims))

    def ones(self):
        """Cells holding a nonzero value, in row-major order."""
        return [u for u in self.cells() if self.values[u]]

    def alphabet(self):
        return sorted(set(int(v) for v in self.values.flat))

    def is_zero(self):
        return not any(self.values.flat)

    def __eq__(self, other):
        if not isinstance(other, TorusConfig):
            return NotImplemented
        return self.dims == other.dims and bool(np.all(self.values == other.values))

    def __hash__(self):
        return hash((self.dims, tuple(self.values.flat)))

    def __repr__(self):
        return f"TorusConfig(dims={self.dims}, values={[int(v) for v in self.values.flat]})"

    def to_json(self):
        return {"dims": list(self.dims), "values": [int(v) for v in self.values.flat]}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise ValueError("torus JSON must be an object")
        extra = set(data) - {"dims", "values"}
        if extra:
            raise ValueError(f"unknown torus fields: {sorted(extra)}")
        try:
            dims, values = data["dims"], data["values"]
        except KeyError as exc:
            raise ValueError(f"torus JSON missing {exc}") from None
        if not isinstance(dims, list) or not isinstance(values, list):
            raise ValueError("'dims' and 'values' must be lists")
        return cls(dims, values)


class WindowConfig:
    """Values of a configuration on the box ``lo <= u <= hi`` (inclusive)."""

    __slots__ = ("lo", "hi", "values")

    def __init__(self, lo, hi, values):
        lo, hi = tuple(int(a) for a in lo), tuple(int(a) for a in hi)
        if len(lo) != len(hi) or not lo:
            raise ValueError("lo and hi must have the same positive length")
        if any(a > b for a, b in zip(lo, hi)):
            raise ValueError(f"empty window: lo={lo}, hi={hi}")
        self.lo, self.hi = lo, hi
        self.values = _int_array(values, self.shape)
        self.values.setflags(write=False)

    @property
    def dim(self):
        return len(self.lo)

    @property
    def shape(self):
        return tuple(b - a + 1 for a, b in zip(self.lo, self.hi))

    @classmethod
    def from_function(cls, lo, hi, fn):
        shape = tuple(b - a + 1 for a, b in zip(lo, hi))
        arr = np.zeros(shape, dtype=object)
        for idx in itertools.product(*(range(n) for n in shape)):
            arr[idx] = int(fn(tuple(i + a for i, a in zip(idx, lo))))
        return cls(lo, hi, arr)

    @classmethod
    def cut(cls, torus, lo, hi):
        """Window of the periodic lift of ``torus``."""
        return cls.from_function(lo, hi, lambda u: torus[u])

    def __getitem__(self, u):
        idx = tuple(a - b for a, b in zip(u, self.lo))
        if any(i < 0 or i >= n for i, n in zip(idx, self.shape)):
            raise IndexError(f"{tuple(u)} outside window")
        return self.values[idx]

    def __eq__(self, other):
        if not isinstance(other, WindowConfig):
            return NotImplemented
        return (self.lo, self.hi) == (other.lo, other.hi) and bool(np.all(self.values == other.values))

    def __repr__(self):
        return f"WindowConfig(lo={self.lo}, hi={self.hi})"

    def is_constant(self, value):
        return all(v == value for v in self.values.flat)

    def to_json(self):
        return {
            "dims": list(self.shape),
            "lo": list(self.lo),
            "hi": list(self.hi),
            "values": [int(v) for v in self.values.flat],
        }

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise ValueError("window JSON must be an object")
        extra = set(data) - {"dims", "values", "lo", "hi"}
        if extra:
            raise ValueError(f"unknown window fields: {sorted(extra)}")
        try:
            win = cls(data["lo"], data["hi"], data["values"])
        except KeyError as exc:
            raise ValueError(f"window JSON missing {exc}") from None
        if "dims" in data and tuple(data["dims"]) != win.shape:
            raise ValueError(f"dims {data['dims']} disagree with lo/hi box {win.shape}")
        return win


class PeriodizerSet:
    """A nonempty list of known periodizers sharing one dimension.

    Nothing is closed under ideal operations; this is just the input list.
    """

    __slots__ = ("polys",)

    def __init__(self, polys):
        polys = tuple(polys)
        if not polys:
            raise ValueError("periodizer set must be nonempty")
        dims = {p.dim for p in polys}
        if len(dims) != 1:
            raise ValueError(f"periodizers have mixed dimensions {sorted(dims)}")
        if any(p.is_zero() for p in polys):
            raise ValueError("the zero polynomial carries no information")
        self.polys = polys

    @property
    def dim(self):
        return self.polys[0].dim

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    def __repr__(self):
        return f"PeriodizerSet({[str(p) for p in self.polys]})"


def _check_dim(f, c):
    if f.dim != c.dim:
        raise ValueError(f"polynomial has dim {f.dim}, configuration has dim {c.dim}")


def torus_product(f, c):
    """``f * c`` on the torus: ``(fc)_u = sum_v f_v c_{u-v}`` with indices mod dims."""
    _check_dim(f, c)
    out = np.zeros(c.dims, dtype=object)
    for v, coef in f.items():
        out = out + coef * np.roll(c.values, shift=v, axis=tuple(range(c.dim)))
    return TorusConfig(c.dims, out)


def is_annihilated(f, c):
    return torus_product(f, c).is_zero()


def translate(c, t):
    """``tau^t``: the value at ``u`` becomes the old value at ``u + t``."""
    t = tuple(t)
    if len(t) != c.dim:
        raise ValueError("translation vector has wrong length")
    return TorusConfig(c.dims, np.roll(c.values, shift=tuple(-a for a in t), axis=tuple(range(c.dim))))


def reflect(c):
    """The configuration ``u -> c_{-u}``."""
    return TorusConfig.from_function(c.dims, lambda u: c[tuple(-a for a in u)])


def is_periodic(c, t):
    return translate(c, t) == c


def window_product(f, c):
    """``f * c`` on the eroded box where every needed input lies in the window."""
    if f.dim != c.dim:
        raise ValueError(f"polynomial has dim {f.dim}, window has dim {c.dim}")
    if f.is_zero():
        raise ValueError("window product with the zero polynomial is undefined")
    supp = list(f.support)
    vmax = [max(v[i] for v in supp) for i in range(f.dim)]
    vmin = [min(v[i] for v in supp) for i in range(f.dim)]
    lo = tuple(a + m for a, m in zip(c.lo, vmax))
    hi = tuple(b + m for b, m in zip(c.hi, vmin))
    if any(a > b for a, b in zip(lo, hi)):
        raise ValueError("eroded window is empty: polynomial support too wide for the window")
    shape = tuple(b - a + 1 for a, b in zip(lo, hi))
    out = np.zeros(shape, dtype=object)
    for v, coef in f.items():
        start = tuple(a - b - w for a, b, w in zip(lo, c.lo, v))
        sl = tuple(slice(s, s + n) for s, n in zip(start, shape))
        out = out + coef * c.values[sl]
    return WindowConfig(lo, hi, out)


def is_tiling(c, tile):
    """True iff the 1-cells of binary ``c`` are translates tiling the torus: ``c f_D = 1``."""
    from .tiles import char_poly

    if any(v not in (0, 1) for v in c.values.flat):
        raise ValueError("tiling check needs a binary configuration")
    prod = torus_product(char_poly(tile), c)
    return all(v == 1 for v in prod.values.flat)


def pattern_complexity(c, shape):
    """Number of distinct patterns of the given shape over all torus positions."""
    shape = sorted(tuple(p) for p in shape)
    if not shape:
        raise ValueError("shape must be nonempty")
    seen = set()
    for t in c.cells():
        seen.add(tuple(c[tuple(a + b for a, b in zip(t, d))] for d in shape))
    return len(seen)


def binomial_annihilates(c, t):
    """Shortcut for ``is_annihilated(x^t - 1, c)``."""
    return is_annihilated(difference_binomial(t), c)
