"""
Certifying expansive directions
===============================

For a direction ``u`` the support of a periodizer splits into level classes
by ``<v, u>``.  A class with a single point settles ``u`` at once.  Otherwise
the classes (fibers) are combined with multipliers that stay inside the
hyperplane; reaching a nonzero constant certifies the hyperplane.  When every
hyperplane is certified, all configurations with these periodizers are
strongly periodic.
"""

# %%
from algshift import verify_certificate
from algshift.expansivity import certify_all, fiber_polys, level_partition, monomial_certificate
from algshift.tiles import box_minus_corner, char_poly, lee_sphere

f = char_poly(lee_sphere(3, 2))
part = level_partition(f, (1, 1, 1))
for level, points in part.classes:
    print(level, len(points))

# %%
# Levels 0 and 1 generate a constant already with multipliers of radius 1.
fibers = dict(zip(part.levels(), fiber_polys(part)))
cert = monomial_certificate([fibers[0], fibers[1]], radius=1)
for p, g in zip(cert.multipliers, cert.fibers):
    print(f"({p}) * ({g})")
print("sum =", cert.coef)

# %%
# The full analysis visits one direction per flat of the difference arrangement.
report = certify_all(f)
print(report.counts(), report.conclusion)
v = report.verdict_for((1, 1, 0))
print("(1,1,0):", v.kind, "radius", v.certificate.radius, "sources", v.certificate.sources)

# %%
# Reports are plain JSON and are re-checked without the search code.
print("independent check:", verify_certificate(report.to_json()))

# %%
for sizes in [(2, 2, 2), (2, 3, 2), (3, 3, 3)]:
    r = certify_all(char_poly(box_minus_corner(*sizes)))
    print(sizes, r.counts(), r.conclusion)
