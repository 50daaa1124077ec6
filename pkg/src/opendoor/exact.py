"""Exact arithmetic for the power series of q_c.

Rationals are :class:`fractions.Fraction`.  Polynomials in the strip
parameter ``c`` are :class:`ParamPoly`; the Taylor coefficients of q_c are
produced as ParamPoly values by a quadratic recurrence obtained from

    z q'(z) = q(z) (h_c(z) - q(z)),    h_c(z) - 1 = sum_{k odd} (c/k) z^k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction

__all__ = [
    "Rational",
    "ParamPoly",
    "QcSeries",
    "qc_series",
    "qc_coefficients_at",
    "qc_coefficients_float",
    "series_eval",
    "series_pow",
    "to_rational",
    "format_rational",
    "parse_rational",
]


def to_rational(x) -> Fraction:
    """Convert an int, Fraction, decimal string or float to an exact Fraction.

    Floats are converted exactly (binary value), strings like ``"3.02756"`` or
    ``"7/2"`` are parsed as the decimal/ratio they spell.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"cannot convert {x!r} to a rational")
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def format_rational(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


class ParamPoly:
    """Polynomial in ``c`` with Fraction coefficients, ``coeffs[k]`` of ``c**k``.

    Instances are immutable and kept canonical (no trailing zeros), so
    equality is structural.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_rational(a) for a in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def constant(cls, a) -> "ParamPoly":
        return cls([a])

    @classmethod
    def monomial(cls, k: int, a=1) -> "ParamPoly":
        return cls([0] * k + [a])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial."""
        return len(self._coeffs) - 1 if self._coeffs else None

    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, k: int) -> Fraction:
        return self._coeffs[k] if 0 <= k < len(self._coeffs) else Fraction(0)

    @staticmethod
    def _lift(other) -> "ParamPoly":
        if isinstance(other, ParamPoly):
            return other
        return ParamPoly.constant(other)

    def __add__(self, other) -> "ParamPoly":
        other = self._lift(other)
        n = max(len(self._coeffs), len(other._coeffs))
        return ParamPoly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly(-a for a in self._coeffs)

    def __sub__(self, other) -> "ParamPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "ParamPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "ParamPoly":
        if not isinstance(other, ParamPoly):
            s = to_rational(other)
            return ParamPoly(a * s for a in self._coeffs)
        if self.is_zero() or other.is_zero():
            return ParamPoly()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return ParamPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "ParamPoly":
        s = to_rational(scalar)
        return ParamPoly(a / s for a in self._coeffs)

    def divmod(self, other: "ParamPoly") -> tuple["ParamPoly", "ParamPoly"]:
        """Polynomial long division: self = q * other + r, deg r < deg other."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self._coeffs)
        dv = other._coeffs
        lead = dv[-1]
        quo = [Fraction(0)] * max(len(rem) - len(dv) + 1, 0)
        for k in range(len(rem) - len(dv), -1, -1):
            f = rem[k + len(dv) - 1] / lead
            quo[k] = f
            if f:
                for i, a in enumerate(dv):
                    rem[k + i] -= f * a
        return ParamPoly(quo), ParamPoly(rem)

    def exact_div(self, other: "ParamPoly") -> "ParamPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def __pow__(self, k: int) -> "ParamPoly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = ParamPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, c):
        """Evaluate at ``c`` by Horner's rule.

        Exact for rational ``c``; floats/complex are evaluated in floating
        point from the float values of the coefficients.
        """
        if isinstance(c, (float, complex, np.floating, np.complexfloating)):
            acc = 0.0
            for a in reversed(self._coeffs):
                acc = acc * c + float(a)
            return acc
        c = to_rational(c)
        acc = Fraction(0)
        for a in reversed(self._coeffs):
            acc = acc * c + a
        return acc

    def reflect(self) -> "ParamPoly":
        """Return p(-c)."""
        return ParamPoly(a if k % 2 == 0 else -a for k, a in enumerate(self._coeffs))

    def __eq__(self, other) -> bool:
        if isinstance(other, ParamPoly):
            return self._coeffs == other._coeffs
        try:
            return self._coeffs == ParamPoly.constant(other)._coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        if not self._coeffs:
            return "ParamPoly(0)"
        terms = []
        for k, a in enumerate(self._coeffs):
            if a == 0:
                continue
            terms.append(f"{a}" if k == 0 else f"({a})*c^{k}")
        return "ParamPoly(" + " + ".join(terms) + ")"

    def to_json(self) -> list[str]:
        return [format_rational(a) for a in self._coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "ParamPoly":
        return cls(parse_rational(s) for s in data)


def _hc_minus_one(n_max: int) -> list[ParamPoly]:
    # a_k = c/k for odd k, 0 for even k (a_0 = 0)
    c = ParamPoly.monomial(1)
    return [ParamPoly()] + [c / k if k % 2 else ParamPoly() for k in range(1, n_max + 1)]


@dataclass(frozen=True)
class QcSeries:
    """Taylor coefficients b_0..b_{n_max} of q_c as polynomials in c."""

    n_max: int
    coeffs: tuple[ParamPoly, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n_max + 1:
            raise ValueError("coeffs must hold n_max + 1 entries")

    def __getitem__(self, n: int) -> ParamPoly:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def at(self, c) -> list[Fraction]:
        """Exact coefficients at a rational value of c."""
        return [b(to_rational(c)) for b in self.coeffs]

    def to_json(self) -> list[list[str]]:
        return [b.to_json() for b in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]]) -> "QcSeries":
        coeffs = tuple(ParamPoly.from_json(row) for row in data)
        return cls(len(coeffs) - 1, coeffs)


def qc_series(n_max: int) -> QcSeries:
    """Coefficients of q_c up to z**n_max as exact polynomials in c.

    Comparing z^n in z q' = q (h_c - q) gives

        (n + 1) b_n = a_n + sum_{j=1}^{n-1} b_j (a_{n-j} - b_{n-j}).
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    a = _hc_minus_one(n_max)
    b = [ParamPoly.constant(1)]
    # d_k = a_k - b_k, cached since it is reused in every later step
    d = [ParamPoly()]
    for n in range(1, n_max + 1):
        acc = a[n]
        for j in range(1, n):
            acc = acc + b[j] * d[n - j]
        bn = acc / (n + 1)
        b.append(bn)
        d.append(a[n] - bn)
    return QcSeries(n_max, tuple(b))


def qc_coefficients_at(c, n_max: int) -> list[Fraction]:
    """Exact b_0..b_{n_max} at a fixed rational c (same recurrence, scalar ring)."""
    c = to_rational(c)
    a = [Fraction(0)] + [c / k if k % 2 else Fraction(0) for k in range(1, n_max + 1)]
    b = [Fraction(1)]
    d = [Fraction(0)]
    for n in range(1, n_max + 1):
        acc = a[n]
        for j in range(1, n):
            acc += b[j] * d[n - j]
        bn = acc / (n + 1)
        b.append(bn)
        d.append(a[n] - bn)
    return b


def qc_coefficients_float(c, n_max: int) -> np.ndarray:
    """Float b_0..b_{n_max}; ``c`` may be a scalar or a 1-d array (one row per c)."""
    cs = np.atleast_1d(np.asarray(c, dtype=float))
    m = cs.shape[0]
    a = np.zeros((m, n_max + 1))
    for k in range(1, n_max + 1, 2):
        a[:, k] = cs / k
    b = np.zeros((m, n_max + 1))
    b[:, 0] = 1.0
    d = np.zeros((m, n_max + 1))
    for n in range(1, n_max + 1):
        acc = a[:, n] + np.einsum("ij,ij->i", b[:, 1:n], d[:, n - 1:0:-1])
        b[:, n] = acc / (n + 1)
        d[:, n] = a[:, n] - b[:, n]
    return b[0] if np.ndim(c) == 0 else b


def series_eval(s: QcSeries, c, z) -> complex:
    """Evaluate the truncated series sum_n b_n(c) z^n.

    Each b_n is evaluated exactly at rational c before the Horner pass in z.
    """
    coeffs = [float(x) for x in s.at(c)]
    z = complex(z)
    acc = 0j
    for b in reversed(coeffs):
        acc = acc * z + b
    return acc


def series_pow(coeffs: Sequence, exponent: float) -> np.ndarray:
    """Truncated coefficients of p(z)**exponent for p(0) = 1.

    Computed as exp(exponent * log p) with the usual coefficient recurrences
    for the logarithm and exponential of a power series.
    """
    p = np.asarray(coeffs, dtype=complex if np.iscomplexobj(coeffs) else float)
    if p.ndim != 1 or p.size == 0:
        raise ValueError("expected a non-empty 1-d coefficient sequence")
    if not math.isfinite(exponent):
        raise ValueError("exponent must be finite")
    if abs(p[0] - 1) > 1e-14:
        raise ValueError(f"constant term must be 1, got {p[0]!r}")
    n = p.size - 1
    k = np.arange(n + 1)
    # log: n L_n = n p_n - sum_{k=1}^{n-1} k L_k p_{n-k}
    log = np.zeros_like(p)
    for m in range(1, n + 1):
        log[m] = p[m] - np.dot(k[1:m] * log[1:m], p[m - 1:0:-1]) / m
    g = exponent * log
    # exp: m E_m = sum_{k=1}^{m} k g_k E_{m-k}
    out = np.zeros_like(p)
    out[0] = 1.0
    for m in range(1, n + 1):
        out[m] = np.dot(k[1:m + 1] * g[1:m + 1], out[m - 1::-1]) / m
    return out
