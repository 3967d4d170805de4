"""The two S^1-families of simple contractible periodic orbits.

For 0 < E < 1/2 the p = 0 trapped orbits close up: sin x oscillates with
amplitude sqrt(2E) inside one strip of fixed cos-x sign, and ydot = -sin x
brings y back after each cycle.  The family parameter is a phase (any
time translate / x-translate of the same loop), one family per strip.
Their action is positive and has a one-dimensional closed expression,
which this script compares against quadrature of L_E along the orbit and
against the increment identity int xdot^2 dt.
"""

import math

import numpy as np

from magflow import (
    action_contractible_formula,
    action_direct,
    action_increment,
    contractible_orbit,
    eval_solution,
)

print(f"{'E':>6} {'amplitude':>10} {'period':>10} {'S (direct)':>12} "
      f"{'S (xdot^2)':>12} {'S (formula)':>12}")
for E in (0.01, 0.05, 0.125, 0.25, 0.4, 0.49, 0.499):
    sol = contractible_orbit(E, strip=1, phase_x0=0.0)
    amp = math.asin(math.sqrt(2.0 * E))
    print(f"{E:6.3f} {amp:10.6f} {sol.x_period:10.6f} "
          f"{action_direct(sol):12.8f} {action_increment(sol):12.8f} "
          f"{action_contractible_formula(E):12.8f}")

print("\nAs E -> 0 the loops shrink onto the zero circles of the field "
      "(sin x = 0) and S ~ 2 pi E;")
print("as E -> 1/2 the amplitude reaches arcsin(1) = pi/2 and the family "
      "dies on the separatrix: no contractible closed orbits exist at or "
      "above E = 1/2.")

# the loop is closed: one full cycle returns both coordinates
sol = contractible_orbit(0.2, strip=2, phase_x0=0.3)
a = eval_solution(sol, np.array([0.0]))
b = eval_solution(sol, np.array([sol.x_period]))
print(f"\nstrip-2 member at E=0.2: |x(T)-x(0)| = {abs(b[0][0]-a[0][0]):.2e}, "
      f"|y(T)-y(0)| = {abs(b[1][0]-a[1][0]):.2e}")
