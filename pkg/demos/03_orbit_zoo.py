"""Map of orbit types over the (E, p) plane.

The turning roots p -+ sqrt(2E) against the interval [-1, 1] decide
everything: trapped ovals (both inside), crossing librators (one inside),
winding orbits (none inside, all of [-1,1] allowed), the vertical lines
x = +-pi/2 on the boundary parabolas (p -+ 1)^2 = 2E, and empty level
sets beyond |p| = 1 + sqrt(2E).  Trapped orbits close up exactly at
p = 0; otherwise they drift in y by Delta_y per cycle, opposite in sign
to p.
"""

import numpy as np

from magflow import OrbitKind, classify

GLYPH = {
    OrbitKind.TRAPPED_OVAL: "o",
    OrbitKind.CROSSING_LIBRATOR: "c",
    OrbitKind.WINDING: "w",
    OrbitKind.SEPARATRIX: "s",
    OrbitKind.VERTICAL_LINE: "|",
    OrbitKind.FORBIDDEN: ".",
}

es = np.linspace(0.02, 1.2, 24)
ps = np.linspace(-2.2, 2.2, 67)
print("orbit-type map (rows: E bottom-up; columns: p left-right)")
print("  o trapped oval   c crossing   w winding   s separatrix   "
      "| vertical line   . forbidden\n")
for E in es[::-1]:
    row = "".join(GLYPH[classify(float(E), float(p)).kind] for p in ps)
    print(f"  E={E:5.3f}  {row}")

print("\ny-drift per cycle on a trapped family (E = 0.125):")
for p in (-0.4, -0.2, 0.0, 0.2, 0.4):
    c = classify(0.125, p)
    print(f"  p = {p:+.1f}:  Delta_y = {c.delta_y:+.6f}   period = {c.period:.6f}"
          f"   contractible = {c.contractible}")
