"""Tiles, their characteristic polynomials, and tilings of finite tori.

A tiling of the torus by a tile ``D`` is encoded as the binary configuration
whose 1-cells are the translation vectors of the placed copies, so that
``c * f_D`` is the all-ones configuration.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .configurations import TorusConfig
from .lattice_poly import LaurentPoly, vneg, vsub

__all__ = [
    "Tile",
    "TilingSearch",
    "lee_sphere",
    "box_minus_corner",
    "char_poly",
    "negate",
    "enumerate_torus_tilings",
    "DEFAULT_NODE_BUDGET",
]

DEFAULT_NODE_BUDGET = 10**7


class Tile:
    """A finite nonempty set of cells in Z^d."""

    __slots__ = ("dim", "cells")

    def __init__(self, cells, dim=None):
        cells = [tuple(int(a) for a in c) for c in cells]
        if not cells:
            raise ValueError("a tile needs at least one cell")
        if dim is None:
            dim = len(cells[0])
        if any(len(c) != dim for c in cells):
            raise ValueError(f"all cells must have length {dim}")
        if len(set(cells)) != len(cells):
            raise ValueError("duplicate cells in tile")
        self.dim = dim
        self.cells = frozenset(cells)

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(sorted(self.cells))

    def __eq__(self, other):
        return isinstance(other, Tile) and self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)

    def __repr__(self):
        return f"Tile({sorted(self.cells)})"

    def normalized(self):
        """Translate so the lexicographically least cell sits at the origin."""
        m = min(self.cells)
        return Tile([vsub(c, m) for c in self.cells], self.dim)

    def to_json(self):
        return {"dim": self.dim, "cells": [list(c) for c in sorted(self.cells)]}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise ValueError("tile JSON must be an object")
        extra = set(data) - {"dim", "cells"}
        if extra:
            raise ValueError(f"unknown tile fields: {sorted(extra)}")
        if "dim" not in data or "cells" not in data:
            raise ValueError("tile JSON needs 'dim' and 'cells'")
        dim, cells = data["dim"], data["cells"]
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise ValueError(f"bad dim {dim!r}")
        if not isinstance(cells, list) or not all(
            isinstance(c, list) and all(isinstance(a, int) and not isinstance(a, bool) for a in c)
            for c in cells
        ):
            raise ValueError("'cells' must be a list of integer lists")
        return cls(cells, dim)


def lee_sphere(d, r):
    """Integer points of l1-norm at most ``r`` in dimension ``d``."""
    if d < 1 or r < 0:
        raise ValueError("need d >= 1 and r >= 0")
    cells = [p for p in itertools.product(range(-r, r + 1), repeat=d) if sum(map(abs, p)) <= r]
    return Tile(cells, d)


def box_minus_corner(*sizes):
    """``{1..n_1} x ... x {1..n_d}`` without the far corner ``(n_1, ..., n_d)``."""
    if len(sizes) == 1 and isinstance(sizes[0], (tuple, list)):
        sizes = tuple(sizes[0])
    if not sizes or any(n < 2 for n in sizes):
        raise ValueError(f"every side must be at least 2, got {sizes}")
    corner = tuple(sizes)
    cells = [p for p in itertools.product(*(range(1, n + 1) for n in sizes)) if p != corner]
    return Tile(cells, len(sizes))


def char_poly(tile):
    """``f_D = sum_{u in D} x^u``."""
    return LaurentPoly(tile.dim, {c: 1 for c in tile.cells})


def negate(tile):
    return Tile([vneg(c) for c in tile.cells], tile.dim)


@dataclass
class TilingSearch:
    """Outcome of a torus tiling enumeration.

    ``exhaustive`` is False when the search stopped early, either because
    ``limit`` tilings were found or because the node budget ran out; the
    latter also sets ``budget_exhausted``.
    """

    tile: Tile
    dims: tuple
    tilings: list = field(default_factory=list)
    exhaustive: bool = True
    budget_exhausted: bool = False
    nodes: int = 0
    diagnostic: str = None

    @property
    def count(self):
        return len(self.tilings)


class _Budget(Exception):
    pass


class _Limit(Exception):
    pass


def enumerate_torus_tilings(tile, dims, limit=None, node_budget=DEFAULT_NODE_BUDGET):
    """All tilings of the torus ``dims`` by translates of ``tile``.

    Exact cover by backtracking: at every node the uncovered cell with the
    fewest compatible placements is branched on (lowest cell index on ties),
    placements tried in increasing translation order.  Results are returned
    sorted by their placement sets.  ``node_budget`` counts placements tried.
    """
    dims = tuple(int(n) for n in dims)
    if len(dims) != tile.dim:
        raise ValueError(f"torus has dim {len(dims)}, tile has dim {tile.dim}")
    result = TilingSearch(tile=tile, dims=dims)
    ncells = math.prod(dims)
    reduced = {tuple(a % n for a, n in zip(c, dims)) for c in tile.cells}
    if len(reduced) != len(tile):
        result.diagnostic = "tile overlaps itself on this torus"
        return result
    if ncells % len(tile):
        result.diagnostic = f"tile size {len(tile)} does not divide torus size {ncells}"
        return result

    strides = [math.prod(dims[i + 1:]) for i in range(len(dims))]
    cells = list(itertools.product(*(range(n) for n in dims)))

    def index(u):
        return sum((a % n) * s for a, n, s in zip(u, dims, strides))

    # placement t covers {t + v}; masks indexed by the flat index of t
    masks = []
    for t in cells:
        m = 0
        for v in tile.cells:
            m |= 1 << index(tuple(a + b for a, b in zip(t, v)))
        masks.append(m)
    covering = [[] for _ in range(ncells)]
    for p, m in enumerate(masks):
        for i in range(ncells):
            if m >> i & 1:
                covering[i].append(p)

    full = (1 << ncells) - 1
    found = []
    chosen = []
    nodes = 0

    def search(covered):
        nonlocal nodes
        if covered == full:
            found.append(tuple(sorted(chosen)))
            if limit is not None and len(found) >= limit:
                raise _Limit
            return
        best = None
        free = ~covered & full
        while free:
            low = free & -free
            i = low.bit_length() - 1
            free ^= low
            opts = [p for p in covering[i] if not masks[p] & covered]
            if best is None or len(opts) < len(best):
                best = opts
                if not opts:
                    return
        for p in best:
            nodes += 1
            if nodes > node_budget:
                raise _Budget
            chosen.append(p)
            search(covered | masks[p])
            chosen.pop()

    try:
        search(0)
    except _Budget:
        result.exhaustive = False
        result.budget_exhausted = True
        result.diagnostic = f"node budget {node_budget} exhausted; result is partial"
    except _Limit:
        result.exhaustive = False
        result.diagnostic = f"stopped after limit={limit} tilings"
    result.nodes = min(nodes, node_budget)
    result.tilings = []
    for placement in sorted(found):
        arr = np.zeros(ncells, dtype=object)
        arr[list(placement)] = 1
        result.tilings.append(TorusConfig(dims, arr.reshape(dims)))
    return result
