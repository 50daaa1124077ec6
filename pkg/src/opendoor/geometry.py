"""Boundary geometry of q_c and the starlikeness constants derived from it."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .analytic import (
    DEFAULT_CONFIG,
    EvalConfig,
    EvaluationError,
    F_eval,
    h_c_eval,
    qc_eval,
)

__all__ = [
    "EDGE_GAP",
    "BoundarySample",
    "GammaCurvePoint",
    "BracketError",
    "boundary_grid",
    "graded_grid",
    "trace_boundary",
    "tangent_angle",
    "fd_tangent_angle",
    "max_arg",
    "c_alpha",
    "c_zero",
    "g_lower",
    "gamma_upper",
    "gamma_curve",
]

# width of the excluded neighbourhoods of theta = 0 and theta = pi
EDGE_GAP = 1e-3
TWO_PI = 2 * math.pi
_GOLDEN = (math.sqrt(5) - 1) / 2


class BracketError(EvaluationError):
    """A root bracket could not be established."""


@dataclass(frozen=True)
class BoundarySample:
    theta: float
    R: float
    Theta: float
    beta: float

    @property
    def q(self) -> complex:
        return self.R * complex(math.cos(self.Theta), math.sin(self.Theta))


@dataclass(frozen=True)
class GammaCurvePoint:
    alpha: float
    gamma: float
    lower: float
    upper: float


def boundary_grid(m: int, gap: float = EDGE_GAP) -> np.ndarray:
    """m angles in [t0, pi - t0], where t0 >= gap is chosen so that the chord
    from e^{i t0} to 1 equals gap (q_c rejects points closer than that)."""
    if m < 16:
        raise ValueError("grid size must be >= 16")
    t0 = 2 * math.asin(gap / 2) * (1 + 1e-12)
    return np.linspace(t0, math.pi - t0, m)


def graded_grid(m: int, gap: float = EDGE_GAP) -> np.ndarray:
    """m angles on the same interval as :func:`boundary_grid`, graded so that
    the spacing is proportional to theta near 0 and to pi - theta near pi.

    theta = pi / (1 + exp(-s)) with s uniform; this resolves the logarithmic
    endpoint behaviour of Theta and R for finite differences.
    """
    if m < 16:
        raise ValueError("grid size must be >= 16")
    t0 = 2 * math.asin(gap / 2) * (1 + 1e-12)
    s0 = math.log(t0 / (math.pi - t0))
    s = np.linspace(s0, -s0, m)
    return math.pi / (1 + np.exp(-s))


def _tangent_from_values(q: np.ndarray, h: np.ndarray) -> np.ndarray:
    diff = h - q
    if np.any(np.abs(diff) < 1e-12):
        raise EvaluationError("q_c = h_c on the boundary; the tangent formula degenerates")
    # Im(h - q) >= 0 on the upper arc, so principal arguments are continuous there
    return np.angle(q) + np.angle(diff) + math.pi / 2


def tangent_angle(c: float, theta: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Direction of the tangent vector d/dtheta q_c(e^{i theta}), in [0, 2 pi).

    Away from +-1 this is arg q + arg(h_c - q) + pi/2.  At the logarithmic
    endpoints h_c ~ -A log(zeta - z) with A = c/2 at zeta = 1 and A = -c/2 at
    zeta = -1, and q_c(+-1) > 0, which gives pi/2 at theta = 0 and 3 pi/2 at
    theta = pi (the curve runs upward through q_c(1) and downward through
    q_c(-1)).
    """
    theta = float(theta)
    if not -math.pi <= theta <= math.pi:
        raise ValueError("theta must lie in [-pi, pi]")
    if theta == 0:
        return math.pi / 2
    if abs(theta) == math.pi:
        return 3 * math.pi / 2
    z = complex(math.cos(theta), math.sin(theta))
    q = qc_eval(c, z, cfg)
    beta = float(_tangent_from_values(np.array([q]), np.array([h_c_eval(c, z)]))[0])
    return beta % TWO_PI


def fd_tangent_angle(c: float, theta: float, step: float = 1e-5,
                     cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Tangent direction from a centred difference of theta -> q_c(e^{i theta})."""
    ts = np.array([theta - step, theta + step])
    q = qc_eval(c, np.exp(1j * ts), cfg)
    return float(np.angle(q[1] - q[0]) % TWO_PI)


def trace_boundary(c: float, m: int = 512, cfg: EvalConfig = DEFAULT_CONFIG,
                   gap: float = EDGE_GAP) -> list[BoundarySample]:
    """Sample u(theta) = q_c(e^{i theta}) = R e^{i Theta} on the upper arc,
    on the endpoint-graded grid of :func:`graded_grid`."""
    thetas = graded_grid(m, gap)
    z = np.exp(1j * thetas)
    q = qc_eval(c, z, cfg)
    R = np.abs(q)
    # Theta(0) = 0 and the first sample is close to theta = 0
    Theta = np.unwrap(np.angle(q))
    beta = np.unwrap(_tangent_from_values(q, h_c_eval(c, z)))
    # pick the branch of beta that starts next to its endpoint value pi/2
    beta -= TWO_PI * round((beta[0] - math.pi / 2) / TWO_PI)
    return [
        BoundarySample(float(t), float(r), float(a), float(b))
        for t, r, a, b in zip(thetas, R, Theta, beta)
    ]


def _golden_max(f, a: float, b: float, tol: float = 1e-10) -> tuple[float, float]:
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
    x = 0.5 * (a + b)
    return x, f(x)


def max_arg(c: float, cfg: EvalConfig = DEFAULT_CONFIG, grid: int = 1024) -> float:
    """Maximum of Theta(theta) = arg q_c(e^{i theta}) over the upper arc.

    arg q_c is harmonic, so this is also the supremum of arg q_c over the
    disk.  A grid scan picks the best cell and golden-section search refines
    it.
    """
    thetas = boundary_grid(grid)
    q = qc_eval(c, np.exp(1j * thetas), cfg)
    Theta = np.unwrap(np.angle(q))
    i = int(np.argmax(Theta))
    lo = thetas[max(i - 1, 0)]
    hi = thetas[min(i + 1, grid - 1)]
    ref = Theta[i]

    def arg_at(t: float) -> float:
        val = qc_eval(c, complex(math.cos(t), math.sin(t)), cfg)
        # stay on the branch of the grid maximiser
        return ref + math.atan2((val * complex(math.cos(ref), -math.sin(ref))).imag,
                                (val * complex(math.cos(ref), -math.sin(ref))).real)

    _, best = _golden_max(arg_at, lo, hi)
    return max(best, float(ref))


def c_zero(tol: float = 1e-10, cfg: EvalConfig = DEFAULT_CONFIG,
           scan_step: float = 0.05) -> tuple[float, float, float]:
    """First positive zero of Re F(c).  Returns (estimate, lo, hi)."""
    re_f = lambda c: F_eval(c, cfg).real  # noqa: E731
    lo = 0.1
    if re_f(lo) <= 0:
        raise BracketError("Re F is not positive at c = 0.1")
    hi = lo
    while True:
        hi = round(hi + scan_step, 12)
        if re_f(hi) <= 0:
            break
        if hi > 8:
            raise BracketError("no sign change of Re F found on [0.1, 8]")
        lo = hi
    # invariant: Re F(lo) > 0 >= Re F(hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if re_f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), lo, hi


def c_alpha(alpha: float, tol: float = 1e-8, cfg: EvalConfig = DEFAULT_CONFIG,
            grid: int = 1024) -> float:
    """Largest c such that |arg q_c| < pi alpha / 2 on the disk.

    For alpha = 1 this is the first zero of Re F(c); for alpha < 1 the level
    crossing max_arg(c) = pi alpha / 2 is bisected on a bracket grown from
    [0.1, 4].
    """
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    if alpha == 1:
        return c_zero(tol, cfg)[0]
    level = math.pi * alpha / 2
    f = lambda c: max_arg(c, cfg, grid) - level  # noqa: E731
    lo, hi = 0.1, 4.0
    while f(lo) >= 0:
        lo /= 2
        if lo < 1e-6:
            raise BracketError(f"max_arg stays above {level} for small c")
    fhi = f(hi)
    while fhi <= 0:
        lo, hi = hi, hi * 1.25
        if hi > 8:
            raise BracketError(f"max_arg stays below {level} up to c = 8")
        fhi = f(hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def g_lower(alpha: float) -> float:
    """(alpha + (1 + alpha) sin(pi alpha/2)) / sqrt(1 + 2 sin(pi alpha/2))."""
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    s = math.sin(math.pi * alpha / 2)
    return (alpha + (1 + alpha) * s) / math.sqrt(1 + 2 * s)


def gamma_upper(alpha: float) -> float:
    """sqrt(3) pi alpha / sqrt(3 + alpha)."""
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    return math.sqrt(3) * math.pi * alpha / math.sqrt(3 + alpha)


def gamma_curve(alphas: Iterable[float], tol: float = 1e-8,
                cfg: EvalConfig = DEFAULT_CONFIG) -> list[GammaCurvePoint]:
    out = []
    for a in alphas:
        a = float(a)
        out.append(GammaCurvePoint(a, math.pi * c_alpha(a, tol, cfg) / 4,
                                   g_lower(a), gamma_upper(a)))
    return out
