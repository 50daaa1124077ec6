"""Caratheodory-Toeplitz determinants of q_c and their first positive roots.

For p = 1 + b_1 z + b_2 z^2 + ... the determinant Delta_n(p) is that of the
(n+1) x (n+1) Hermitian Toeplitz matrix with 2 on the diagonal and b_k on
the k-th super-diagonal.  The coefficients of q_c are real, so the matrix is
real symmetric.  Re p > 0 on the disk forces Delta_n(p) >= 0 for every n,
hence each positive root rho_n of Delta_n(q_c) in c bounds c_1 from above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

try:
    from gmpy2 import mpz
except ImportError:  # plain ints are exact too, only slower
    mpz = int

from .exact import (
    ParamPoly,
    qc_coefficients_at,
    qc_coefficients_float,
    qc_series,
    to_rational,
)

__all__ = [
    "SYMBOLIC_MAX_N",
    "EXACT_MAX_N",
    "ToeplitzSpec",
    "RootBracket",
    "RootSearchError",
    "bareiss_det",
    "delta_symbolic",
    "delta_at",
    "delta_float",
    "min_eigenvalue",
    "rho",
    "delta2_fractional",
]

SYMBOLIC_MAX_N = 8
EXACT_MAX_N = 30
SCAN_HI = Fraction(4)
COARSE_STEP = Fraction(1, 16)
FINE_STEP = Fraction(1, 8192)


class RootSearchError(RuntimeError):
    """No certified sign change could be found."""


@dataclass(frozen=True)
class ToeplitzSpec:
    """Bordered Toeplitz form of order n built from b_1..b_n."""

    n: int
    entries: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if len(self.entries) != self.n:
            raise ValueError("need exactly n entries b_1..b_n")

    def matrix(self, diagonal=2) -> list[list]:
        b = (diagonal,) + tuple(self.entries)
        size = self.n + 1
        return [[b[abs(i - j)] for j in range(size)] for i in range(size)]


@dataclass(frozen=True)
class RootBracket:
    """[lo, hi] with Delta_n(lo) > 0 > Delta_n(hi), both signs exact."""

    lo: Fraction
    hi: Fraction
    n: int

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("bracket needs lo < hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= to_rational(x) <= self.hi


def bareiss_det(matrix, divide=None):
    """Fraction-free Gaussian elimination determinant.

    Works over any exact integral domain: Python ints by default, or
    ParamPoly when ``divide`` performs exact division in that ring.
    Zero pivots are handled by row exchange.
    """
    m = [list(row) for row in matrix]
    size = len(m)
    if size == 0:
        return 1
    if divide is None:
        divide = lambda a, b: a // b  # noqa: E731 - exact integer division
    zero = m[0][0] * 0
    sign = 1
    prev = None
    for k in range(size - 1):
        if m[k][k] == zero:
            for i in range(k + 1, size):
                if m[i][k] != zero:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return zero
        pivot = m[k][k]
        for i in range(k + 1, size):
            row = m[i]
            lead = row[k]
            for j in range(k + 1, size):
                val = row[j] * pivot - lead * m[k][j]
                row[j] = val if prev is None else divide(val, prev)
            row[k] = zero
        prev = pivot
    det = m[size - 1][size - 1]
    return det if sign > 0 else -det


def delta_symbolic(n: int) -> ParamPoly:
    """Delta_n(q_c) as an exact polynomial in c, for 1 <= n <= 8."""
    if not 1 <= n <= SYMBOLIC_MAX_N:
        raise ValueError(f"symbolic determinants are limited to 1 <= n <= {SYMBOLIC_MAX_N}")
    s = qc_series(n)
    spec = ToeplitzSpec(n, tuple(s.coeffs[1:]))
    mat = spec.matrix(ParamPoly.constant(2))
    return bareiss_det(mat, divide=lambda a, b: a.exact_div(b))


def _integer_toeplitz(n: int, c: Fraction) -> tuple[list[list[int]], int]:
    b = qc_coefficients_at(c, n)
    scale = math.lcm(*(x.denominator for x in b[1:]))
    ints = [2 * scale] + [x.numerator * (scale // x.denominator) for x in b[1:]]
    return ToeplitzSpec(n, tuple(ints[1:])).matrix(ints[0]), scale


def delta_at(n: int, c) -> Fraction:
    """Exact value of Delta_n(q_c) at a rational c >= 0.

    Denominators are cleared with one common multiple before integer
    Bareiss elimination, so the sign of the result is rigorous.
    """
    if not 1 <= n <= EXACT_MAX_N:
        raise ValueError(f"n must lie in 1..{EXACT_MAX_N}")
    c = to_rational(c)
    if c < 0:
        raise ValueError("c must be >= 0")
    mat, scale = _integer_toeplitz(n, c)
    det = bareiss_det([[mpz(x) for x in row] for row in mat])
    return Fraction(int(det), scale ** (n + 1))


def delta_float(n: int, cs) -> np.ndarray:
    """Floating-point Delta_n(q_c) on an array of c values."""
    return np.linalg.det(_float_toeplitz(n, cs))


def min_eigenvalue(n: int, cs) -> np.ndarray:
    """Smallest eigenvalue of the order-n Toeplitz matrix on an array of c values.

    Unlike the determinant, this does not change sign back when a second
    eigenvalue crosses zero, so its first negative point locates the first
    root of Delta_n reliably.
    """
    return np.linalg.eigvalsh(_float_toeplitz(n, cs))[:, 0]


def _float_toeplitz(n: int, cs) -> np.ndarray:
    cs = np.atleast_1d(np.asarray(cs, dtype=float))
    b = qc_coefficients_float(cs, n).reshape(cs.size, n + 1)
    b[:, 0] = 2.0
    idx = np.abs(np.subtract.outer(np.arange(n + 1), np.arange(n + 1)))
    return b[:, idx]


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _dyadic_halfwidth(tol: Fraction) -> Fraction:
    h = Fraction(1)
    while 2 * h > tol:
        h /= 2
    return h


def _bracket_exact_zero(n: int, c: Fraction, tol: Fraction) -> RootBracket:
    h = _dyadic_halfwidth(tol)
    while h > 0:
        lo, hi = c - h, c + h
        if lo >= 0 and _sign(delta_at(n, lo)) > 0 and _sign(delta_at(n, hi)) < 0:
            return RootBracket(lo, hi, n)
        h /= 2
        if h < Fraction(1, 2 ** 200):
            break
    raise RootSearchError(f"exact zero of Delta_{n} at c={c} without a sign change")


def _bisect(n: int, lo: Fraction, hi: Fraction, tol: Fraction) -> RootBracket:
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s = _sign(delta_at(n, mid))
        if s == 0:
            return _bracket_exact_zero(n, mid, tol)
        if s > 0:
            lo = mid
        else:
            hi = mid
    return RootBracket(lo, hi, n)


def _first_negative(n: int, lo: float, hi: float, points: int) -> int | None:
    grid = np.linspace(lo, hi, points)
    neg = np.nonzero(min_eigenvalue(n, grid) < 0)[0]
    return int(neg[0]) if neg.size else None


def rho(n: int, tol=Fraction(1, 10**8)) -> RootBracket:
    """Certified bracket around the first positive root of Delta_n(q_c).

    A float scan of the smallest Toeplitz eigenvalue over [0, 4] on a 1/8192
    grid proposes the cell where positivity is first lost.  Every sign used
    for the returned bracket, and for the dyadic bisection that narrows it,
    comes from :func:`delta_at` and is exact.  The coarse 1/16 grid below the
    bracket is also checked exactly for positivity.
    """
    if not 1 <= n <= EXACT_MAX_N:
        raise ValueError(f"n must lie in 1..{EXACT_MAX_N}")
    tol = to_rational(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")

    steps = int(SCAN_HI / FINE_STEP)
    exact_cache: dict[int, int] = {}

    def sign_at(k: int) -> int:
        if k not in exact_cache:
            exact_cache[k] = _sign(delta_at(n, k * FINE_STEP))
        return exact_cache[k]

    k = _first_negative(n, 0.0, float(SCAN_HI), steps + 1)
    if k is None:
        # the root may sit exactly on the right end of the scan
        k = steps
    # exact positivity on the coarse grid; an exact non-positive point
    # below the float proposal takes precedence
    ratio = int(COARSE_STEP / FINE_STEP)
    for j in range(ratio, k, ratio):
        if sign_at(j) <= 0:
            k = j
            break
    while k > 0 and sign_at(k) > 0:
        # float proposal was early by a cell or so; walk forward
        k += 1
        if k > steps + ratio:
            raise RootSearchError(f"no sign change of Delta_{n} found on [0, {SCAN_HI}]")
    while k > 0 and sign_at(k - 1) <= 0:
        k -= 1
    if k == 0:
        raise RootSearchError(f"Delta_{n} is not positive near c = 0")
    if sign_at(k) == 0:
        return _bracket_exact_zero(n, k * FINE_STEP, tol)
    return _bisect(n, (k - 1) * FINE_STEP, k * FINE_STEP, tol)


def delta2_fractional(alpha: float, c: float) -> float:
    """Delta_2 of p = q_c^(1/alpha) in closed form.

    ((9 - a^2) c^4 - 288 a^2 c^2 + 2304 a^4) / (288 a^4); its smallest
    positive zero is 4 sqrt(3) a / sqrt(3 + a).
    """
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    a2 = alpha * alpha
    return ((9 - a2) * c**4 - 288 * a2 * c**2 + 2304 * a2 * a2) / (288 * a2 * a2)
