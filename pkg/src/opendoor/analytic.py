"""Double precision evaluation of h_c, Li_2, chi_2 and q_c.

q_c is obtained from the integral representation

    1/q_c(z) = int_0^1 exp(c [chi_2(t z) - chi_2(z)]) dt

with Gauss-Legendre quadrature.  The dilogarithm is vectorised over numpy
arrays because the geometry layer evaluates q_c on large boundary grids.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np
from scipy.integrate import solve_ivp

from .exact import qc_coefficients_at, to_rational

__all__ = [
    "EvalConfig",
    "DEFAULT_CONFIG",
    "SingularPointError",
    "BranchCutError",
    "EvaluationError",
    "h_c_eval",
    "dilog",
    "chi2",
    "qc_eval",
    "theta_c",
    "F_eval",
    "ode_ray",
]

PI2_6 = math.pi ** 2 / 6
# points closer than this to +1 or -1 are rejected
SINGULAR_RADIUS = 1e-3


class EvaluationError(ArithmeticError):
    """Numerical evaluation failed (non-finite value, no convergence)."""


class SingularPointError(EvaluationError, ValueError):
    """Argument sits on (or too close to) a singularity of h_c at +-1."""


class BranchCutError(EvaluationError, ValueError):
    """Argument lies on the principal branch cut of the dilogarithm."""


@dataclass(frozen=True)
class EvalConfig:
    quad_nodes: int = 64
    dilog_tol: float = 1e-12
    ode_step_tol: float = 1e-12
    max_quad_nodes: int = 8192

    def __post_init__(self):
        if self.quad_nodes < 8:
            raise ValueError("quad_nodes must be >= 8")
        for name in ("dilog_tol", "ode_step_tol"):
            tol = getattr(self, name)
            if not (0 < tol <= 1e-4):
                raise ValueError(f"{name} must lie in (0, 1e-4]")
        if self.max_quad_nodes < self.quad_nodes:
            raise ValueError("max_quad_nodes must be >= quad_nodes")


DEFAULT_CONFIG = EvalConfig()


def h_c_eval(c: float, z) -> complex | np.ndarray:
    """1 + c artanh z = 1 + (c/2) log((1+z)/(1-z)), principal branch."""
    za = np.asarray(z, dtype=complex)
    if np.any((za == 1) | (za == -1)):
        raise SingularPointError("h_c has logarithmic poles at z = +1 and z = -1")
    # log(1+z) - log(1-z) is the principal log of the ratio inside the closed disk
    w = 1 + 0.5 * c * (np.log1p(za) - np.log1p(-za))
    return complex(w) if np.ndim(z) == 0 else w


@lru_cache(maxsize=None)
def _bernoulli_coefficients(count: int = 40) -> np.ndarray:
    """B_n / (n+1)! for n < count."""
    bern = [Fraction(1)]
    for m in range(1, count):
        bern.append(-sum(comb(m + 1, k) * bern[k] for k in range(m)) / (m + 1))
    return np.array([float(bern[n] / factorial(n + 1)) for n in range(count)])


def _dilog_power_series(z: np.ndarray, tol: float) -> np.ndarray:
    # |z| <= 0.1
    out = np.zeros_like(z)
    p = np.ones_like(z)
    n = 1
    while True:
        p = p * z
        term = p / (n * n)
        out += term
        if n > 2 and np.all(np.abs(term) <= tol * 1e-3):
            return out
        n += 1


def _dilog_bernoulli(u: np.ndarray, tol: float) -> np.ndarray:
    # Li2(z) = sum_n B_n u^(n+1)/(n+1)!,  u = -log(1-z),  valid for |u| < 2 pi
    coef = _bernoulli_coefficients()
    u2 = u * u
    out = coef[0] * u + coef[1] * u2
    p = u.copy()
    for k in range(1, len(coef) // 2):
        p = p * u2
        term = coef[2 * k] * p
        out += term
        if np.all(np.abs(term) <= tol * 1e-3):
            break
    return out


def _dilog_core(z: np.ndarray, tol: float) -> np.ndarray:
    # |z| <= 1 and Re z <= 1/2, so |1 - z| >= 1/2 and |u| stays well inside 2 pi
    out = np.empty_like(z)
    small = np.abs(z) <= 0.1
    if np.any(small):
        out[small] = _dilog_power_series(z[small], tol)
    rest = ~small
    if np.any(rest):
        out[rest] = _dilog_bernoulli(-np.log1p(-z[rest]), tol)
    return out


def _dilog_unit_disk(z: np.ndarray, tol: float) -> np.ndarray:
    out = np.empty_like(z)
    right = z.real > 0.5
    if np.any(~right):
        out[~right] = _dilog_core(z[~right], tol)
    if np.any(right):
        zr = z[right]
        w = 1 - zr
        one = w == 0
        # placeholder for z = 1, overwritten below
        w_safe = np.where(one, 0.5, w)
        # Li2(z) = pi^2/6 - log z log(1-z) - Li2(1-z)
        val = PI2_6 - np.log(zr) * np.log(w_safe) - _dilog_core(w_safe, tol)
        val[one] = PI2_6
        out[right] = val
    return out


def dilog(z, tol: float = DEFAULT_CONFIG.dilog_tol):
    """Principal branch of Li_2(z) = sum z^n / n^2.

    The argument is moved into |z| <= 1 by the inversion formula and into
    Re z <= 1/2 by the reflection z -> 1 - z; the remaining region is summed
    either directly (|z| <= 0.1) or as a Bernoulli series in -log(1 - z).
    Accepts scalars or arrays.
    """
    za = np.atleast_1d(np.asarray(z, dtype=complex))
    if not np.all(np.isfinite(za)):
        raise EvaluationError("dilog argument must be finite")
    if np.any((za.imag == 0) & (za.real > 1)):
        raise BranchCutError("z lies on the branch cut (1, +inf) of Li_2")
    out = np.empty_like(za)
    inside = np.abs(za) <= 1
    if np.any(inside):
        out[inside] = _dilog_unit_disk(za[inside], tol)
    if np.any(~inside):
        zo = za[~inside]
        # Li2(z) = -pi^2/6 - log(-z)^2 / 2 - Li2(1/z)
        out[~inside] = -PI2_6 - 0.5 * np.log(-zo) ** 2 - _dilog_unit_disk(1 / zo, tol)
    return complex(out[0]) if np.ndim(z) == 0 else out.reshape(np.shape(z))


def chi2(z, tol: float = DEFAULT_CONFIG.dilog_tol):
    """Legendre chi function (Li_2(z) - Li_2(-z)) / 2."""
    za = np.asarray(z, dtype=complex)
    if np.any(np.abs(za) > 1 + 1e-12):
        raise ValueError("chi2 is only evaluated on the closed unit disk")
    flat = za.reshape(-1)
    # one dilog call on the stacked arguments keeps the vector path hot
    both = dilog(np.concatenate([flat, -flat]), tol)
    out = 0.5 * (both[: flat.size] - both[flat.size:])
    return complex(out[0]) if np.ndim(z) == 0 else out.reshape(za.shape)


@lru_cache(maxsize=32)
def _gauss_legendre_01(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1), 0.5 * w


def _check_disk_points(z: np.ndarray, radius: float = SINGULAR_RADIUS) -> None:
    if not np.all(np.isfinite(z)):
        raise EvaluationError("z must be finite")
    if np.any(np.abs(z) > 1 + 1e-12):
        raise ValueError("q_c is only evaluated on the closed unit disk")
    if np.any((z == 1) | (z == -1)):
        raise SingularPointError("q_c is not evaluated at the singular points +-1")
    if np.any((np.abs(z - 1) < radius) | (np.abs(z + 1) < radius)):
        raise SingularPointError(
            f"z within {radius:g} of a singular point +-1 is rejected"
        )


def _reciprocal_integral(c: float, z: np.ndarray, n: int, tol: float) -> np.ndarray:
    t, w = _gauss_legendre_01(n)
    chi_z = chi2(z, tol)
    chi_tz = chi2(np.multiply.outer(z, t), tol)
    return np.exp(c * (chi_tz - chi_z[:, None])) @ w


def qc_eval(c: float, z, cfg: EvalConfig = DEFAULT_CONFIG, *,
            singular_radius: float = SINGULAR_RADIUS):
    """q_c(z) on the closed unit disk, excluding small discs around +-1.

    The node count starts at ``cfg.quad_nodes`` and doubles until two
    successive rules agree to ``cfg.dilog_tol`` (relative), for every point
    when ``z`` is an array.  Points closer than ``singular_radius`` to +-1
    are rejected.
    """
    if not c > 0:
        raise ValueError("c must be positive")
    za = np.atleast_1d(np.asarray(z, dtype=complex)).reshape(-1)
    _check_disk_points(za, singular_radius)
    n = cfg.quad_nodes
    prev = _reciprocal_integral(c, za, n, cfg.dilog_tol)
    while True:
        n *= 2
        cur = _reciprocal_integral(c, za, n, cfg.dilog_tol)
        if np.all(np.abs(cur - prev) <= cfg.dilog_tol * np.abs(cur)):
            break
        if n >= cfg.max_quad_nodes:
            raise EvaluationError(f"quadrature did not converge with {n} nodes")
        prev = cur
    if not np.all(np.isfinite(cur)) or np.any(cur == 0):
        raise EvaluationError("integral for 1/q_c is not finite and non-zero")
    q = 1 / cur
    return complex(q[0]) if np.ndim(z) == 0 else q.reshape(np.shape(z))


def theta_c(c: float) -> float:
    """2 arctan(exp(2/c)), the boundary angle where Re h_c vanishes."""
    if not c > 0:
        raise ValueError("c must be positive")
    # for small c the value rounds to pi; keep it strictly inside (pi/2, pi)
    below_pi = math.nextafter(math.pi, 0)
    if 2 / c > 709:
        return below_pi
    return min(2 * math.atan(math.exp(2 / c)), below_pi)


def F_eval(c: float, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """F(c) = q_c(exp(i theta_c)) through the integral representation.

    For small c the point exp(i theta_c) is exponentially close to -1; the
    boundary value is still finite there, so only the exact singular points
    are refused.
    """
    return qc_eval(c, cmath.exp(1j * theta_c(c)), cfg, singular_radius=0.0)


def ode_ray(
    c: float,
    theta: float,
    cfg: EvalConfig = DEFAULT_CONFIG,
    t_switch: float = 0.1,
    n_series: int = 40,
) -> complex:
    """v(1) for t v' = v (h_c(t e^{i theta}) - v), v(0) = 1.

    The regular singular point t = 0 is bridged with the exact Taylor
    series of q_c (so v(t_switch) = q_c(t_switch e^{i theta})); the rest of
    the ray is integrated with an adaptive Dormand-Prince 8(5,3) scheme.
    """
    if not c > 0:
        raise ValueError("c must be positive")
    if not 0 < theta < math.pi:
        raise ValueError("theta must lie in (0, pi)")
    e = cmath.exp(1j * theta)
    b = [float(x) for x in qc_coefficients_at(to_rational(float(c)), n_series)]
    v0 = 0j
    for coef in reversed(b):
        v0 = v0 * (t_switch * e) + coef
    cc = float(c)

    def rhs(t, v):
        x = t * e
        h = 1 + 0.5 * cc * (cmath.log(1 + x) - cmath.log(1 - x))
        return v * (h - v) / t

    sol = solve_ivp(
        rhs,
        (t_switch, 1.0),
        np.array([v0], dtype=complex),
        method="DOP853",
        rtol=cfg.ode_step_tol,
        atol=cfg.ode_step_tol,
    )
    if sol.status != 0:
        raise EvaluationError(f"ODE integration failed: {sol.message}")
    v1 = complex(sol.y[0, -1])
    if not cmath.isfinite(v1):
        raise EvaluationError("ODE solution is not finite")
    return v1
