"""
Laurent polynomials acting on periodic configurations
=====================================================

A configuration on a torus is a finite array read periodically.  A Laurent
polynomial acts on it by the product ``(fc)_u = sum_v f_v c_{u-v}``; ``f``
annihilates ``c`` when the product is identically zero.
"""

# %%
from algshift import (
    LaurentPoly,
    TorusConfig,
    difference_binomial,
    find_annihilators,
    is_annihilated,
    pattern_complexity,
    search_special_annihilator,
    torus_product,
)

x1, x2 = LaurentPoly.variable(2, 0), LaurentPoly.variable(2, 1)
f = (x1 - 1) * (x1 ** -1 - 1)
print("f =", f)

# %%
# The aligned 2x2 block tiling of the 4x4 torus: a 1 marks each block's corner.
c = TorusConfig.from_function((4, 4), lambda u: int(u[0] % 2 == 0 and u[1] % 2 == 0))
print(c.values)

# The 2x2 square polynomial turns the tiling into the all-ones array.
square = 1 + x1 + x2 + x1 * x2
print(torus_product(square, c).values)

# %%
# Periodicity is annihilation by a difference binomial.
for t in [(1, 0), (2, 0), (0, 2), (1, 1)]:
    print(t, is_annihilated(difference_binomial(t), c))

# %%
# Low pattern complexity: only four 2x2 patterns occur, no more than the window size.
print("patterns:", pattern_complexity(c, [(0, 0), (-1, 0), (0, -1), (-1, -1)]))

# %%
# All annihilators with support in {0, e1, 2e1}, found by exact linear algebra.
basis = find_annihilators(c, [(0, 0), (-1, 0), (-2, 0)])
print([str(g) for g in basis.basis])

# A product of difference binomials that also annihilates c, searched with multipliers up to 2.
special = search_special_annihilator(c, (x1 ** 2 - 1) * (x2 ** 2 - 1), 2)
print("special annihilator vectors:", special.vectors)
