"""Films, their action, and the critical energy 1/2.

A film is an embedded surface with boundary; it carries the action
sqrt(2E) length(boundary) + flux of the field through it.  Below the
critical level E = 1/2 this functional goes negative, and within the
cylinder-strip family its minimum sits on the strip pi/2 <= x <= 3pi/2
(the closure of the region of negative field), bounded by the two
vertical-line orbits, with value 4 pi (sqrt(2E) - 1).  Discs bounded by
contractible orbits, by contrast, always carry positive action.
"""

import math

import numpy as np

from magflow import (
    CylinderStrip,
    OrbitDisc,
    contractible_orbit,
    film_action,
    film_strip_grid_search,
    lagrangian_sign_scan,
    mane_level_scan,
)

print("strip actions at E = 1/8 (width pi, varying position):")
for xa in np.linspace(0.0, math.pi, 7):
    strip = CylinderStrip(xa, xa + math.pi, 0.125)
    mark = "   <- minimizer" if abs(xa - math.pi / 2) < 1e-12 else ""
    print(f"  x_a = {xa:8.5f}:  S = {film_action(strip):+.6f}{mark}")

print("\ngrid search over all strips (200 x 200):")
for E in (0.125, 0.3, 0.5):
    res = film_strip_grid_search(E, n=200)
    print(f"  E = {E}: min at x_a = {res.x_a:.4f}, x_b = {res.x_b:.4f}, "
          f"S = {res.action:+.6f}   [4 pi (sqrt(2E)-1) = "
          f"{4 * math.pi * (math.sqrt(2 * E) - 1):+.6f}]")

print("\ndisc films over contractible orbits stay positive:")
for E in (0.125, 0.4):
    disc = OrbitDisc(contractible_orbit(E))
    print(f"  E = {E}: S(disc) = {film_action(disc):+.6f}")

print(f"\ncritical level from the optimal gauge: {mane_level_scan(256)}")
print("sign census of the reduced Lagrangian over random level states:")
for E in (0.4, 0.5, 0.6):
    scan = lagrangian_sign_scan(E, n_samples=2000)
    print(f"  E = {E}: {scan.n_negative:4d} negative values, "
          f"min L_E = {scan.min_value:+.6e}")
print("L_E dips negative precisely below E = 1/2, vanishing at the "
      "configuration sin x = -1, xdot = 0 when E = 1/2: that is the "
      "threshold where the film action stops being negative.")
