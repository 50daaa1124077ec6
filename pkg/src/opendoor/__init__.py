"""Open door function q_c of q + z q'/q = 1 + c artanh z.

Exact series and Caratheodory-Toeplitz determinants, numerical evaluation of
q_c through Legendre's chi function, and the starlikeness constants
gamma(SS_alpha) and gamma(S*) derived from its boundary behaviour.
"""

from .analytic import (
    DEFAULT_CONFIG,
    EvalConfig,
    F_eval,
    chi2,
    dilog,
    h_c_eval,
    ode_ray,
    qc_eval,
    theta_c,
)
from .exact import ParamPoly, QcSeries, qc_series, series_eval, series_pow
from .geometry import (
    c_alpha,
    c_zero,
    g_lower,
    gamma_curve,
    gamma_upper,
    max_arg,
    tangent_angle,
    trace_boundary,
)
from .toeplitz import delta2_fractional, delta_at, delta_symbolic, rho

__version__ = "0.1.0"
