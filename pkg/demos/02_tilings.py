"""
Tilings by translation
======================

A binary configuration ``c`` is a tiling by ``D`` exactly when
``c * f_D = 1``, with ``f_D`` the characteristic polynomial of the tile.
Here the exact-cover search enumerates torus tilings and every result is
checked against that identity.
"""

# %%
from algshift import Tile, WindowConfig, is_tiling, window_product
from algshift.tiles import char_poly, enumerate_torus_tilings, lee_sphere

plus = lee_sphere(2, 1)
res = enumerate_torus_tilings(plus, (5, 5))
print(res.count, "tilings of the 5x5 torus by the plus shape; exhaustive:", res.exhaustive)
print(res.tilings[0].values)

# %%
# Radius-2 Lee sphere: 13 cells, perfect codes on the 13x13 torus.
ball = lee_sphere(2, 2)
res = enumerate_torus_tilings(ball, (13, 13))
print(res.count, "tilings, all verified:", all(is_tiling(c, ball) for c in res.tilings))

# %%
# The four-cell tile {0, e1, e2, e3} admits layered tilings of Z^3 built from any
# tiling a of the plane by 2x2 squares: c(x1, x2, x3) = a(x1 + x3, x2 + x3).
four = Tile([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])


def a(x, y):
    # square tiling whose row of blocks through the origin is shifted by one
    return int(y % 2 == 0 and (x % 2 == 0 if y != 0 else x % 2 == 1))


window = WindowConfig.from_function((-4, -4, -3), (5, 5, 3), lambda u: a(u[0] + u[2], u[1] + u[2]))
prod = window_product(char_poly(four), window)
print("eroded window", prod.lo, prod.hi, "all ones:", prod.is_constant(1))

# %%
# On tori the same tile only fits when it does not wrap onto itself.
for dims in [(2, 2, 2), (4, 4, 2), (4, 4, 4), (2, 2, 1)]:
    r = enumerate_torus_tilings(four, dims)
    print(dims, r.count, r.diagnostic or "")
