"""Independent numerical verification of the closed-form bound states.

Two oracles that share no special-function code with the closed forms:

* ``shoot_radial_eigenvalue`` integrates the radial equation

      R'' + R'/r + [2 mu E + 2 mu kappa / r - (m+nu)^2 / r^2] R = 0

  outward from the indicial behavior R ~ r^{|m+nu|} and bisects on the
  interior node count.  The integration runs in the log radial variable
  x = ln s (s the Coulomb-unit radius), where the equation collapses to
  R_xx = (w^2 - 2 e^x - 2 e e^{2x}) R with no first-derivative term and no
  stiffness at the origin.  A Cash-Karp 5(4) embedded pair supplies the
  per-step error control; the state is renormalized whenever it grows large
  (the ODE is linear) and integration stops early once the solution has
  entered irreversible exponential growth past the outer turning point.

* ``quad_norm`` integrates |psi|^2 over the plane with adaptive quadrature on
  the compactified variable u = rho / (1 + rho); the angular integral is
  exactly 2 pi.

The ODE path never touches the confluent hypergeometric code, so agreement
with the closed-form energies is a genuine cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from .bound import QuantumNumbers, effective_exponent, energy, eval_bound_wavefunction
from .errors import NoBoundStates, NoConvergence, QuadratureFailure, StiffnessFailure
from .reduction import RelativeProblem

# Cash-Karp 5(4) tableau.
_A2 = (0.2,)
_A3 = (3.0 / 40.0, 9.0 / 40.0)
_A4 = (0.3, -0.9, 1.2)
_A5 = (-11.0 / 54.0, 2.5, -70.0 / 27.0, 35.0 / 27.0)
_A6 = (1631.0 / 55296.0, 175.0 / 512.0, 575.0 / 13824.0,
       44275.0 / 110592.0, 253.0 / 4096.0)
_B5 = (37.0 / 378.0, 0.0, 250.0 / 621.0, 125.0 / 594.0, 0.0, 512.0 / 1771.0)
_B4 = (2825.0 / 27648.0, 0.0, 18575.0 / 48384.0, 13525.0 / 55296.0,
       277.0 / 14336.0, 0.25)

# Stop integrating once log |R| has climbed this far above its value at the
# outer turning point: the growing mode then dominates irreversibly, no
# further node can occur, and the tail would only overflow.  Kept below the
# ~73 e-folds at which local roundoff could seed a spurious sign flip.
_GROWTH_STOP_LOG = 60.0
_RESCALE_AT = 1e100


@dataclass(frozen=True)
class ShootingConfig:
    """Discretization knobs for the shooting solver.

    r_start is in units of the closed-form inverse decay scale 1/alpha;
    r_max in units of the outer classical turning point.
    """

    r_start: float = 1e-6
    r_max: float = 60.0
    ode_tol: float = 1e-10
    bisect_tol: float = 1e-10

    def __post_init__(self) -> None:
        if not (self.r_start > 0.0 and self.r_max > 0.0):
            raise ValueError("radii must be positive")
        if self.r_start >= self.r_max:
            raise ValueError("r_start must be below r_max")
        if not (self.ode_tol > 0.0 and self.bisect_tol > 0.0):
            raise ValueError("tolerances must be positive")


def _outer_turning_point(e: float, w: float) -> float:
    """Largest root of 2 e s^2 + 2 s - w^2 = 0 for e < 0 (Coulomb units)."""
    disc = 1.0 + 2.0 * e * w * w
    if disc <= 0.0:
        return 1.0 / (-e)
    return (1.0 + math.sqrt(disc)) / (-2.0 * e)


def _shoot_once(w: float, e: float, x0: float, x1: float, y0: float, dy0: float,
                tol: float) -> tuple[int, float, bool]:
    """Integrate outward at trial energy e; return (nodes, end sign, diverged)."""
    w2 = w * w
    te = 2.0 * e
    x = x0
    y, dy = y0, dy0
    h = 1e-4
    nodes = 0
    log_scale = 0.0
    x_tp = math.log(_outer_turning_point(e, w))
    log_at_tp = None
    span = x1 - x0
    while x < x1:
        if x + h > x1:
            h = x1 - x
        s1 = math.exp(x)
        k1y = dy
        k1d = (w2 - 2.0 * s1 - te * s1 * s1) * y

        yy = y + h * _A2[0] * k1y
        dd = dy + h * _A2[0] * k1d
        s = math.exp(x + 0.2 * h)
        k2y = dd
        k2d = (w2 - 2.0 * s - te * s * s) * yy

        yy = y + h * (_A3[0] * k1y + _A3[1] * k2y)
        dd = dy + h * (_A3[0] * k1d + _A3[1] * k2d)
        s = math.exp(x + 0.3 * h)
        k3y = dd
        k3d = (w2 - 2.0 * s - te * s * s) * yy

        yy = y + h * (_A4[0] * k1y + _A4[1] * k2y + _A4[2] * k3y)
        dd = dy + h * (_A4[0] * k1d + _A4[1] * k2d + _A4[2] * k3d)
        s = math.exp(x + 0.6 * h)
        k4y = dd
        k4d = (w2 - 2.0 * s - te * s * s) * yy

        yy = y + h * (_A5[0] * k1y + _A5[1] * k2y + _A5[2] * k3y + _A5[3] * k4y)
        dd = dy + h * (_A5[0] * k1d + _A5[1] * k2d + _A5[2] * k3d + _A5[3] * k4d)
        s = math.exp(x + h)
        k5y = dd
        k5d = (w2 - 2.0 * s - te * s * s) * yy

        yy = y + h * (_A6[0] * k1y + _A6[1] * k2y + _A6[2] * k3y
                      + _A6[3] * k4y + _A6[4] * k5y)
        dd = dy + h * (_A6[0] * k1d + _A6[1] * k2d + _A6[2] * k3d
                       + _A6[3] * k4d + _A6[4] * k5d)
        s = math.exp(x + 0.875 * h)
        k6y = dd
        k6d = (w2 - 2.0 * s - te * s * s) * yy

        y5 = y + h * (_B5[0] * k1y + _B5[2] * k3y + _B5[3] * k4y + _B5[5] * k6y)
        d5 = dy + h * (_B5[0] * k1d + _B5[2] * k3d + _B5[3] * k4d + _B5[5] * k6d)
        y4 = y + h * (_B4[0] * k1y + _B4[2] * k3y + _B4[3] * k4y
                      + _B4[4] * k5y + _B4[5] * k6y)
        d4 = dy + h * (_B4[0] * k1d + _B4[2] * k3d + _B4[3] * k4d
                       + _B4[4] * k5d + _B4[5] * k6d)

        scale = abs(y5) + abs(h * d5) + 1e-300
        err = max(abs(y5 - y4), abs(h * (d5 - d4))) / (scale * tol)
        if err <= 1.0:
            x += h
            prev = y
            y, dy = y5, d5
            if prev != 0.0 and y != 0.0 and (prev < 0.0) != (y < 0.0):
                nodes += 1
            m = max(abs(y), abs(dy))
            if m > _RESCALE_AT:
                y /= m
                dy /= m
                log_scale += math.log(m)
            log_mag = math.log(max(abs(y), abs(dy), 1e-300)) + log_scale
            if log_at_tp is None and x >= x_tp:
                log_at_tp = log_mag
            elif log_at_tp is not None and log_mag > log_at_tp + _GROWTH_STOP_LOG:
                return nodes, math.copysign(1.0, y), True
        h *= max(0.2, min(5.0, 0.9 * err**-0.2)) if err > 0.0 else 5.0
        if h < 1e-14 * span:
            raise StiffnessFailure("step size underflow in radial integration")
    return nodes, math.copysign(1.0, y), False


def _solve_scaled(w: float, n_r: int, cfg: ShootingConfig) -> tuple[float, int]:
    """Find the Coulomb-unit eigenvalue with n_r interior nodes.

    Returns (e, nodes measured just below the eigenvalue).  The search window
    is [1.5 e_closed, 0.5 e_closed] around the closed-form prediction; the
    bisection predicate is "at least n_r + 1 interior nodes", which flips
    exactly at the eigenvalue.
    """
    lam = n_r + w + 0.5
    e_closed = -1.0 / (2.0 * lam * lam)
    alpha = math.sqrt(-8.0 * e_closed)
    s0 = cfg.r_start / alpha
    x0 = math.log(s0)
    x1 = math.log(cfg.r_max * _outer_turning_point(e_closed, w))
    # Frobenius start R = s^w (1 - 2 s/(2w+1)), normalized at s0; in the log
    # variable the slope is d ln R/dx times R.
    c1 = -2.0 / (2.0 * w + 1.0)
    y0 = 1.0 + c1 * s0
    dy0 = w * (1.0 + c1 * s0) + c1 * s0

    def nodes_at(e: float) -> int:
        nodes, _, _ = _shoot_once(w, e, x0, x1, y0, dy0, cfg.ode_tol)
        return nodes

    lo, hi = 1.5 * e_closed, 0.5 * e_closed
    n_lo, n_hi = nodes_at(lo), nodes_at(hi)
    if n_lo > n_r or n_hi < n_r + 1:
        raise NoConvergence(
            f"no eigenvalue bracket in [{lo}, {hi}]: node counts "
            f"({n_lo}, {n_hi}) vs target {n_r}"
        )
    for _ in range(300):
        if hi - lo <= cfg.bisect_tol * abs(lo):
            break
        mid = 0.5 * (lo + hi)
        if nodes_at(mid) >= n_r + 1:
            hi = mid
        else:
            lo = mid
    else:
        raise NoConvergence("bisection failed to converge")
    return 0.5 * (lo + hi), nodes_at(lo)


def shoot_radial_eigenvalue(
    problem: RelativeProblem, m: int, n_r: int,
    cfg: ShootingConfig = ShootingConfig(),
) -> float:
    """ODE eigenvalue with exactly n_r interior nodes, in physical units."""
    e, _ = shoot_with_nodes(problem, m, n_r, cfg)
    return e


def shoot_with_nodes(
    problem: RelativeProblem, m: int, n_r: int,
    cfg: ShootingConfig = ShootingConfig(),
) -> tuple[float, int]:
    """Like shoot_radial_eigenvalue but also reports the measured node count."""
    if problem.kappa <= 0.0:
        raise NoBoundStates("shooting requires attraction (kappa > 0)")
    if n_r < 0:
        raise ValueError("n_r must be non-negative")
    w = effective_exponent(m, problem.nu)
    e_scaled, nodes = _solve_scaled(w, n_r, cfg)
    unit = problem.reduced_mass * problem.kappa**2
    return e_scaled * unit, nodes


def quad_norm(
    qn: QuantumNumbers, problem: RelativeProblem, amplitude_scale: float = 1.0
) -> float:
    """Numerical norm integral |psi|^2 over the plane.

    The angular factor has unit modulus so the theta integral is exactly
    2 pi; the radial integral runs over u = rho/(1+rho) in (0, 1) with the
    decaying integrand evaluated through eval_bound_wavefunction.
    amplitude_scale multiplies psi (a hook for scaling checks).
    """
    e = energy(qn, problem)
    alpha = math.sqrt(-8.0 * problem.reduced_mass * e)

    def integrand(u: float) -> float:
        rho = u / (1.0 - u)
        r = rho / alpha
        psi = eval_bound_wavefunction(qn, problem, r, 0.0) * amplitude_scale
        return abs(psi) ** 2 * r / (alpha * (1.0 - u) ** 2)

    value, err_est = quad(integrand, 0.0, 1.0, epsabs=1e-10, epsrel=1e-10, limit=200)
    if err_est > 1e-7:
        raise QuadratureFailure(f"norm quadrature error estimate {err_est:.2e}")
    return 2.0 * math.pi * value
