"""Orbit classification, y-increments, action functionals and films.

Classification over the integral values (E, p) follows the position of the
turning roots z1,2 = p -+ sqrt(2E) of xdot relative to [-1, 1]:

* both inside      -> trapped oval (closes up exactly when p = 0)
* exactly one      -> crossing librator (never closes in the plane;
                      its y-increment per sin-x cycle is reported as a
                      rotation datum without asserting torus closure)
* none, all of [-1,1] allowed -> winding orbit
* double root      -> vertical line x = +-pi/2 (exact) or separatrix (band)
* |p| > 1+sqrt(2E) -> forbidden (empty level set)

The y-increment per cycle is Delta_y = 2 int_{z1}^{z2} (p-z) dz / w, which
is 0 for p = 0 and has sign opposite to p.  The action of a closed curve
on the level E is S_E = int L_E dt; for closed curves it also equals
int xdot^2 dt + p Delta_y, and for the simple contractible orbits it has
the closed expression 2 int_{-a}^{a} sqrt(2E - sin^2 x) dx, a = arcsin
sqrt(2E).  Films (embedded surfaces with boundary) carry the action
sqrt(2E) length(boundary) + flux of F; within the cylinder-strip family
the minimizer is the strip between x = pi/2 and x = 3*pi/2, with value
4*pi*(sqrt(2E) - 1).  Energy 1/2 is the Mane critical level: below it the
reduced Lagrangian takes negative values and the film action can be
negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .closedform import ClosedFormSolution, build_solution, eval_solution
from .dynamics import PhaseState, TWO_PI, energy, momentum, reduced_lagrangian
from .errors import DomainError, MagflowError, OpenCurve, WrongRegime
from .integrate import Trajectory
from .legendre import EPS_DEGENERATE, OvalKind, QuarticCurve, quartic_from_params
from .quadrature import oval_quad

#: absolute tolerance under which a near-double root is the exact line orbit
EPS_VERTICAL = 1e-12

#: joint tolerance of the contractibility test (|p| and |Delta_y| together,
#: so quadrature noise cannot flip the verdict)
EPS_CONTRACTIBLE = 1e-10


class OrbitKind(str, Enum):
    TRAPPED_OVAL = "TrappedOval"
    CROSSING_LIBRATOR = "CrossingLibrator"
    WINDING = "Winding"
    SEPARATRIX = "Separatrix"
    VERTICAL_LINE = "VerticalLine"
    FORBIDDEN = "Forbidden"


@dataclass(frozen=True)
class OrbitClassification:
    """Orbit type of the level set (E, p) with its cycle data."""

    E: float
    p: float
    kind: OrbitKind
    turning_roots: tuple[float, float]
    strip: str | None
    delta_y: float | None
    period: float | None
    contractible: bool

    def to_dict(self) -> dict:
        return {
            "E": self.E,
            "p": self.p,
            "kind": self.kind.value,
            "turning_roots": list(self.turning_roots),
            "strip": self.strip,
            "delta_y": self.delta_y,
            "period": self.period,
            "contractible": self.contractible,
        }


def _cycle_integrals(curve: QuarticCurve) -> tuple[float, float]:
    """(period, Delta_y) of one full sin-x cycle over the bounded oval."""
    T = 2.0 * oval_quad(lambda z: np.ones_like(z), curve.a1, curve.a2,
                        curve.a3, curve.a4)
    dy = 2.0 * oval_quad(lambda z: curve.p - z, curve.a1, curve.a2,
                         curve.a3, curve.a4)
    return T, dy


def cycle_action(E: float, p: float) -> float:
    """Action int L_E dt accumulated over one sin-x cycle.

    Uses the closed-curve identity int L_E dt = int xdot^2 dt + p Delta_y,
    whose right side is well defined per cycle even when the orbit does
    not close up.
    """
    curve = quartic_from_params(E, p)
    curve.oval_kind()  # raises DegenerateCurve on separatrices
    sq = 2.0 * oval_quad(lambda z: 2.0 * E - (p - z) ** 2,
                         curve.a1, curve.a2, curve.a3, curve.a4)
    _, dy = _cycle_integrals(curve)
    return sq + p * dy


def vertical_line_action(E: float, p: float) -> float:
    """Action of the vertical-line orbit at a level with a double root at z = +-1."""
    a = math.sqrt(2.0 * E)
    d_plus = min(abs(p + a - 1.0), abs(p - a - 1.0))
    d_minus = min(abs(p + a + 1.0), abs(p - a + 1.0))
    if min(d_plus, d_minus) > EPS_DEGENERATE:
        raise WrongRegime(f"(E={E}, p={p}) carries no vertical-line orbit")
    s = 1.0 if d_plus <= d_minus else -1.0
    return TWO_PI * (a + s * math.copysign(1.0, p - s))


def classify(E: float, p: float) -> OrbitClassification:
    """Classify the level set (E, p); total on E > 0, never raises."""
    if not E > 0.0:
        raise DomainError(f"energy must be positive, got {E}")
    a = math.sqrt(2.0 * E)
    z1, z2 = p - a, p + a
    scale = max(1.0, a, abs(p))
    line_gap = min(abs(z1 - 1.0), abs(z1 + 1.0), abs(z2 - 1.0), abs(z2 + 1.0))

    kind: OrbitKind
    delta: float | None = None
    period: float | None = None
    strip: str | None = None

    if line_gap < EPS_VERTICAL * scale:
        kind = OrbitKind.VERTICAL_LINE
        period = math.pi * math.sqrt(2.0 / E)  # one y-circuit of the line
    elif line_gap < EPS_DEGENERATE or 2.0 * a < EPS_DEGENERATE:
        kind = OrbitKind.SEPARATRIX
    elif abs(p) > 1.0 + a:
        kind = OrbitKind.FORBIDDEN
    else:
        curve = quartic_from_params(E, p)
        oval = curve.oval_kind()
        if oval is OvalKind.TRAPPED:
            kind = OrbitKind.TRAPPED_OVAL
        elif oval is OvalKind.WINDING:
            kind = OrbitKind.WINDING
            strip = "crossing"
        else:
            kind = OrbitKind.CROSSING_LIBRATOR
            strip = "crossing"
        period, delta = _cycle_integrals(curve)

    contractible = (
        kind is OrbitKind.TRAPPED_OVAL
        and abs(p) < EPS_CONTRACTIBLE
        and delta is not None
        and abs(delta) < EPS_CONTRACTIBLE
    )
    return OrbitClassification(
        E=float(E), p=float(p), kind=kind, turning_roots=(z1, z2),
        strip=strip, delta_y=delta, period=period, contractible=contractible,
    )


def delta_y(E: float, p: float) -> float:
    """y-increment per x-cycle of a trapped oval orbit.

    Evaluated with the singularity-removing substitution
    z = p + sqrt(2E) sin(theta); by the symmetry of the substituted
    integrand the sign is -sign(p), and exactly 0 at p = 0.
    """
    curve = quartic_from_params(E, p)
    if curve.degenerate or curve.oval_kind() is not OvalKind.TRAPPED:
        raise WrongRegime(
            f"Delta_y is defined for trapped ovals only; (E={E}, p={p}) is not"
        )
    _, dy = _cycle_integrals(curve)
    return dy


def contractible_orbit(
    E: float, strip: int = 1, phase_x0: float = 0.0
) -> ClosedFormSolution:
    """One member of the S^1-family of simple contractible orbits at level E.

    Exists only for 0 < E < 1/2; the two families live in the strips
    cos x > 0 (strip=1, centered at x=0) and cos x < 0 (strip=2, centered
    at x=pi, the mirror image under x -> pi - x).  phase_x0 fixes the
    family parameter: the orbit passes through x0 = phase_x0 (strip 1)
    or pi - phase_x0 (strip 2), requiring |sin phase_x0| <= sqrt(2E).
    """
    if not 0.0 < E < 0.5:
        raise DomainError(
            f"no contractible closed orbits exist at E = {E}: "
            "they require 0 < E < 1/2"
        )
    if strip not in (1, 2):
        raise DomainError(f"strip must be 1 or 2, got {strip}")
    amp = math.sqrt(2.0 * E)
    if abs(math.sin(phase_x0)) > amp + 1e-12:
        raise DomainError(
            f"|sin phase_x0| = {abs(math.sin(phase_x0)):.6g} exceeds the "
            f"orbit amplitude sqrt(2E) = {amp:.6g}"
        )
    if not math.cos(phase_x0) > 0.0:
        raise DomainError("phase_x0 must lie in the strip |x| < pi/2 mod 2*pi")
    if strip == 1:
        return build_solution(phase_x0, 0.0, E, 0.0, +1)
    return build_solution(math.pi - phase_x0, 0.0, E, 0.0, -1)


# ---------------------------------------------------------------------------
# action functionals


def _circ_dist(a: float, b: float) -> float:
    return abs(math.remainder(a - b, TWO_PI))


def _orbit_eval(orbit, ts: np.ndarray):
    if isinstance(orbit, ClosedFormSolution):
        return eval_solution(orbit, ts)
    if isinstance(orbit, Trajectory):
        return orbit.eval(ts)
    raise DomainError(f"unsupported orbit type {type(orbit).__name__}")


def _orbit_period(orbit, T: float | None) -> float:
    if T is not None:
        return float(T)
    if isinstance(orbit, ClosedFormSolution):
        return orbit.recurrence_time
    if isinstance(orbit, Trajectory):
        return orbit.duration
    raise DomainError(f"unsupported orbit type {type(orbit).__name__}")


def _check_closed(orbit, T: float, tol: float = 1e-6) -> None:
    x, y, xd, yd = _orbit_eval(orbit, np.array([0.0, T]))
    gap = max(
        _circ_dist(x[1], x[0]), _circ_dist(y[1], y[0]),
        abs(xd[1] - xd[0]), abs(yd[1] - yd[0]),
    )
    if gap > tol:
        raise OpenCurve(
            f"endpoints differ by {gap:.3g} on the torus (tolerance {tol})"
        )


def _simpson_refine(f, T: float, tol: float = 1e-8, n0: int = 64) -> float:
    """Composite Simpson on [0, T], doubling n until the value is stable."""
    n = n0
    prev = None
    for _ in range(16):
        ts = np.linspace(0.0, T, n + 1)
        vals = f(ts)
        h = T / n
        s = (h / 3.0) * (vals[0] + vals[-1]
                         + 4.0 * vals[1:-1:2].sum() + 2.0 * vals[2:-2:2].sum())
        if prev is not None and abs(s - prev) < tol:
            return s
        prev = s
        n *= 2
    raise MagflowError(f"Simpson refinement did not stabilize to {tol}")


def action_direct(orbit, E: float | None = None, T: float | None = None) -> float:
    """S_E = int L_E dt over one closed circuit of the orbit.

    Accepts a closed-form solution (period inferred) or an integrated
    trajectory spanning exactly one circuit.  The endpoints must agree on
    the torus to 1e-6, else OpenCurve.
    """
    T = _orbit_period(orbit, T)
    if T == 0.0:
        return 0.0
    _check_closed(orbit, T)
    if E is None:
        x, y, xd, yd = _orbit_eval(orbit, np.array([0.0]))
        E = 0.5 * float(xd[0] ** 2 + yd[0] ** 2)

    def integrand(ts):
        x, _, xd, yd = _orbit_eval(orbit, ts)
        return math.sqrt(2.0 * E) * np.hypot(xd, yd) + np.sin(x) * yd

    return _simpson_refine(integrand, T)


def action_increment(orbit, p: float | None = None, T: float | None = None) -> float:
    """S_E via the closed-curve identity int xdot^2 dt + p Delta_y."""
    T = _orbit_period(orbit, T)
    if T == 0.0:
        return 0.0
    _check_closed(orbit, T)
    x, y, xd, yd = _orbit_eval(orbit, np.array([0.0, T]))
    if p is None:
        p = float(yd[0] + np.sin(x[0]))
    dy = float(y[1] - y[0])  # lifted increment, not reduced mod 2*pi

    def integrand(ts):
        _, _, xd, _ = _orbit_eval(orbit, ts)
        return xd * xd

    return _simpson_refine(integrand, T) + p * dy


def action_contractible_formula(E: float) -> float:
    """Closed expression 2 int_{-a}^{a} sqrt(2E - sin^2 x) dx, a = arcsin sqrt(2E).

    Computed after the substitution sin x = sqrt(2E) sin(theta), which makes
    the integrand smooth: S = 2 int 2E cos^2(theta)/sqrt(1 - 2E sin^2 theta).
    """
    if not 0.0 < E < 0.5:
        raise DomainError(
            f"the contractible-orbit action requires 0 < E < 1/2, got E = {E}"
        )
    from scipy.integrate import quad

    twoE = 2.0 * E

    def integrand(theta):
        s = np.sin(theta)
        c = np.cos(theta)
        return twoE * c * c / np.sqrt(1.0 - twoE * s * s)

    val, _ = quad(integrand, -0.5 * math.pi, 0.5 * math.pi,
                  epsabs=1e-10, epsrel=1e-10, limit=200)
    return 2.0 * val


# ---------------------------------------------------------------------------
# films


@dataclass(frozen=True)
class CylinderStrip:
    """Embedded cylinder x_a <= x <= x_b (full y-circle) on the level E."""

    x_a: float
    x_b: float
    E: float

    def __post_init__(self):
        if not 0.0 < self.x_b - self.x_a < TWO_PI:
            raise DomainError(
                f"strip width must lie in (0, 2*pi), got {self.x_b - self.x_a:.6g}"
            )
        if self.E < 0.0:
            raise DomainError(f"energy must be nonnegative, got {self.E}")


@dataclass(frozen=True)
class OrbitDisc:
    """Disc bounded by a contractible closed orbit, with integer multiplicity."""

    orbit: ClosedFormSolution
    multiplicity: int = 1

    def __post_init__(self):
        if self.multiplicity < 1:
            raise DomainError("multiplicity must be a positive integer")
        if abs(self.orbit.p) > EPS_CONTRACTIBLE or (
            abs(self.orbit.delta_y_per_cycle) > 1e-8
        ):
            raise DomainError("the boundary orbit is not contractible")


def film_action(film) -> float:
    """sqrt(2E) length(boundary) + flux of F through the film.

    For a cylinder strip the boundary is two y-circles (length 4*pi) and
    the flux is 2*pi (sin x_b - sin x_a).  For an orbit disc, exactness of
    F reduces the film action to the boundary orbit's action (times the
    multiplicity for iterated orbits).
    """
    if isinstance(film, CylinderStrip):
        return (math.sqrt(2.0 * film.E) * 2.0 * TWO_PI
                + TWO_PI * (math.sin(film.x_b) - math.sin(film.x_a)))
    if isinstance(film, OrbitDisc):
        return film.multiplicity * action_direct(film.orbit)
    raise DomainError(f"unsupported film type {type(film).__name__}")


@dataclass(frozen=True)
class StripSearchResult:
    x_a: float
    x_b: float
    action: float
    grid_step: float


def film_strip_grid_search(E: float, n: int = 200) -> StripSearchResult:
    """Grid minimization of the strip action over (x_a, width).

    The minimizing strip is the one between the vertical lines x = pi/2
    and x = 3*pi/2 (closure of the region where the field is negative),
    up to 2*pi translation; the grid resolution is 2*pi/(n+1).
    """
    if n < 2:
        raise DomainError("grid must have at least 2 points per axis")
    base = math.sqrt(2.0 * E) * 2.0 * TWO_PI
    xa = np.linspace(0.0, TWO_PI, n, endpoint=False)
    width = np.arange(1, n + 1) * (TWO_PI / (n + 1))
    sin_xa = np.sin(xa)
    best_val = math.inf
    best = (0.0, 0.0)
    # row-chunked scan keeps memory flat for fine grids
    chunk = max(1, int(4e6 // n))
    for lo in range(0, n, chunk):
        xa_c = xa[lo:lo + chunk]
        flux = TWO_PI * (np.sin(xa_c[:, None] + width[None, :])
                         - np.sin(xa_c)[:, None])
        i, j = np.unravel_index(np.argmin(flux), flux.shape)
        if float(flux[i, j]) < best_val:
            best_val = float(flux[i, j])
            best = (float(xa_c[i]), float(xa_c[i] + width[j]))
    return StripSearchResult(
        x_a=best[0], x_b=best[1], action=base + best_val,
        grid_step=TWO_PI / (n + 1),
    )


# ---------------------------------------------------------------------------
# critical level


def mane_level_scan(grid_n: int = 64) -> float:
    """Critical energy from the optimal gauge: sup over x of sin^2(x)/2.

    With the zero gauge function the Hamiltonian of the shifted one-form
    sin(x) dy is sin^2(x)/2, whose supremum 1/2 is attained at x = +-pi/2;
    those two points are always included in the scan grid.
    """
    if grid_n < 8:
        raise DomainError(f"grid_n must be at least 8, got {grid_n}")
    xs = np.concatenate([
        np.linspace(0.0, TWO_PI, grid_n),
        [0.5 * math.pi, 1.5 * math.pi],
    ])
    return float(np.max(0.5 * np.sin(xs) ** 2))


@dataclass(frozen=True)
class SignScanResult:
    E: float
    n_samples: int
    n_negative: int
    min_value: float
    min_state: PhaseState


def lagrangian_sign_scan(
    E: float, n_samples: int = 1000, seed: int = 0
) -> SignScanResult:
    """Sign census of L_E over random level-E states.

    Velocities are scaled to the level (|qdot| = sqrt(2E), random
    direction); the analytic minimizer direction (sin x = -1, xdot = 0,
    ydot > 0) and its mirror are always included, so the scan attains the
    true minimum 2E - sqrt(2E) of L_E on the level.
    """
    if E < 0.0:
        raise DomainError(f"energy must be nonnegative, got {E}")
    rng = np.random.default_rng(seed)
    speed = math.sqrt(2.0 * E)
    xs = rng.uniform(-math.pi, math.pi, n_samples)
    psi = rng.uniform(0.0, TWO_PI, n_samples)
    states = [PhaseState(float(x), 0.0, speed * math.cos(a), speed * math.sin(a))
              for x, a in zip(xs, psi)]
    states.append(PhaseState(-0.5 * math.pi, 0.0, 0.0, speed))
    states.append(PhaseState(0.5 * math.pi, 0.0, 0.0, -speed))
    values = np.array([reduced_lagrangian(s, E) for s in states])
    i_min = int(np.argmin(values))
    return SignScanResult(
        E=float(E), n_samples=len(states),
        n_negative=int(np.sum(values < 0.0)),
        min_value=float(values[i_min]), min_state=states[i_min],
    )
