"""
Radius-2 Lee sphere in dimension four
=====================================

Flat enumeration is guarded to d <= 4 and grows quickly, so this script
probes chosen directions only.  A direction without a certificate is
inconclusive: a larger radius or other periodizers might still settle it.
Expect the last direction to take on the order of twenty seconds.
"""

# %%
import time

from algshift.expansivity import certify_directions
from algshift.tiles import char_poly, lee_sphere

f = char_poly(lee_sphere(4, 2))
for u in [(1, 1, 1, 1), (2, 1, 1, 0), (1, 1, 0, 0)]:
    start = time.perf_counter()
    v = certify_directions(f, [u]).verdicts[0]
    extra = f"radius {v.certificate.radius}" if v.certificate else ""
    print(u, v.kind, extra, f"{time.perf_counter() - start:.1f}s")
