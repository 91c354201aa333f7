"""Closed-form form factors, Debye functions, asymptotics and gyration radii.

All three Debye functions live in the scaled variable y with
y**2 = (k**2 / 2) (L/2)**(2H), which removes the circle length from the
curve.  The general-class series sum (-y**2)**n / ((1+2Hn) Gamma(1+beta n))
is evaluated like the Mittag-Leffler series (see specfn); once the scale-free
variable (y**2)**(1/beta) leaves the series band it is computed instead as
the equivalent Euler integral of E_beta over the circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate, special

from . import specfn
from .errors import ConvergenceError, DomainError, UnsupportedParameterError
from .process import ProcessClass, ProcessSpec

__all__ = [
    "Transform",
    "DebyeCurve",
    "GyrationReport",
    "y_from_k",
    "debye_pfbm",
    "debye_pgbm",
    "debye_pggbm",
    "debye_value",
    "debye_asymptote",
    "pgbm_tail_coefficients",
    "kratky",
    "form_factor",
    "form_factor_mc",
    "radius_of_gyration_sq",
    "end_to_halftime_sq",
    "gyration_relation",
    "linear_fbm_gyration_sq",
    "debye_curve",
    "write_curve_csv",
]


class Transform(str, Enum):
    LINEAR = "linear"
    LOGLOG = "loglog"
    KRATKY = "kratky"


@dataclass
class DebyeCurve:
    """Table of (y, f(y)) values plus scale/transform tag.

    For the KRATKY transform ``f_values`` stores y**2 f(y).
    """

    process_class: ProcessClass
    hurst: float
    beta: float
    y_values: np.ndarray
    f_values: np.ndarray
    transform: Transform = Transform.LINEAR


@dataclass(frozen=True)
class GyrationReport:
    r_g_squared: float
    r_e_squared: float
    relation_residual: float


def _check_hurst(hurst):
    if not 0 < hurst <= 0.5:
        raise DomainError(f"hurst must be in (0, 1/2], got {hurst}")


def y_from_k(k, hurst, circle_length):
    """Scaled wavenumber y = |k| (L/2)**H / sqrt(2)."""
    return abs(k) * (circle_length / 2.0) ** hurst / math.sqrt(2.0)


def debye_pfbm(y, hurst):
    """Gaussian-class Debye function via the regularized lower incomplete gamma.

    Equals [Gamma(a) - Gamma(a, y**2)] / (2H y**(1/H)) with a = 1/(2H), but
    evaluated through the lower-tail routine so small y loses no digits.
    """
    _check_hurst(hurst)
    if y < 0:
        raise DomainError(f"y must be >= 0, got {y}")
    if y == 0:
        return 1.0
    a = 1.0 / (2.0 * hurst)
    p = float(special.gammainc(a, y * y))
    if p == 0.0:
        # below the underflow edge the integrand is flat: f -> 1
        return 1.0
    return float(special.gamma(a)) * p / (2.0 * hurst * y ** (1.0 / hurst))


def debye_pgbm(y, hurst):
    """Grey-class Debye function E_{2H,2}(-y**2)."""
    _check_hurst(hurst)
    if y < 0:
        raise DomainError(f"y must be >= 0, got {y}")
    return specfn.mittag_leffler_general(2.0 * hurst, 2.0, -y * y)


def _pggbm_series(x, beta, hurst, policy):
    """sum (-x)**n / ((1+2Hn) Gamma(1+beta n)) inside the series band."""
    u = x ** (1.0 / beta)

    def denom(n):
        return 1.0 + beta * n

    n_peak = int(u / beta) + 1
    n_max = max(policy.max_terms, 8 * n_peak + 100)
    h2 = 2.0 * hurst
    if u <= specfn._DOUBLE_MAX_U:
        s = 0.0
        p = 1.0
        for n in range(n_max):
            t = p * special.rgamma(denom(n)) / (1.0 + h2 * n)
            s += t
            p *= -x
            if n > n_peak and abs(t) < 1e-17 * (abs(s) + 1.0):
                return s
        raise ConvergenceError(
            f"general-class Debye series not converged in {n_max} terms "
            f"(last term {t:.3e})"
        )
    import mpmath

    def denom_mp(n):
        return 1 + mpmath.mpf(beta) * n

    table = specfn._denominator_gammas(("pggbm", beta), denom_mp, n_max - 1)
    with mpmath.workdps(specfn._BAND_DPS):
        zm = mpmath.mpf(-x)
        h2m = mpmath.mpf(h2)
        s = mpmath.mpf(0)
        p = mpmath.mpf(1)
        tol = mpmath.mpf(10) ** (-specfn._BAND_DPS + 10)
        for n in range(n_max):
            g = table[n]
            if g is not None:
                t = p / (g * (1 + h2m * n))
                s += t
                if n > n_peak and abs(t) < tol * (abs(s) + 1):
                    return float(s)
            p *= zm
    raise ConvergenceError(
        f"general-class Debye series not converged in {n_max} terms"
    )


# Cached head integrals int_0^w0 v**(a-1) E_beta(-v) dv, keyed by (beta, a).
_HEAD_CACHE: dict = {}


def _pggbm_head(beta, a):
    w0 = specfn._ASYMPTOTIC_MIN_U**beta
    key = (beta, a)
    if key not in _HEAD_CACHE:
        seam = specfn._DOUBLE_MAX_U**beta

        def integrand(v):
            return v ** (a - 1.0) * specfn.mittag_leffler(beta, -v)

        lo, _ = integrate.quad(
            integrand, 0.0, seam, limit=200, epsabs=1e-13, epsrel=1e-12
        )
        hi, _ = integrate.quad(
            integrand, seam, w0, limit=200, epsabs=1e-13, epsrel=1e-12
        )
        _HEAD_CACHE[key] = lo + hi
    return _HEAD_CACHE[key], w0


def _pggbm_large(x, beta, hurst):
    """Large-argument route via the exact Euler integral of E_beta.

    With a = 1/(2H) and v = x t**(2H):

        f = a x**(-a) int_0^x v**(a-1) E_beta(-v) dv.

    The head [0, w0] is a fixed integral cached per (beta, H); on [w0, x]
    the tail expansion of E_beta is integrated term by term in closed form,
    with the truncation chosen at the expansion's optimum for v = w0.
    """
    a = 1.0 / (2.0 * hurst)
    head, w0 = _pggbm_head(beta, a)
    m = min(int(specfn._ASYMPTOTIC_MIN_U / beta) + 1, 200)
    tail = 0.0
    for n in range(1, m + 1):
        coef = float(special.rgamma(1.0 - beta * n))
        if coef == 0.0:
            continue
        e = a - n
        if e == 0.0:
            piece = math.log(x / w0)
        else:
            piece = (x**e - w0**e) / e
        tail += (-1.0) ** (n + 1) * coef * piece
    return a * x ** (-a) * (head + tail)


def debye_pggbm(y, beta, hurst, policy=None):
    """General-class Debye function for envelope index beta and Hurst H."""
    policy = policy or specfn.DEFAULT_POLICY
    _check_hurst(hurst)
    if not 0 < beta <= 1:
        raise DomainError(f"beta must be in (0, 1], got {beta}")
    if y < 0:
        raise DomainError(f"y must be >= 0, got {y}")
    if y == 0:
        return 1.0
    x = y * y
    u = x ** (1.0 / beta)
    if u < policy.crossover_threshold:
        return _pggbm_series(x, beta, hurst, policy)
    return _pggbm_large(x, beta, hurst)


def debye_value(process_class, y, hurst, beta=None, policy=None):
    """Dispatch to the Debye function of the given class."""
    pc = ProcessClass(process_class)
    if pc is ProcessClass.PFBM:
        return debye_pfbm(y, hurst)
    if pc is ProcessClass.PGBM:
        return debye_pgbm(y, hurst)
    if beta is None:
        raise DomainError("pggbm requires an explicit beta")
    return debye_pggbm(y, beta, hurst, policy)


def pgbm_tail_coefficients(hurst):
    """Leading y**-2 tail coefficient of the grey-class Debye function.

    Returns ``(derived, printed, discrepant)``: the value obtained from the
    tail expansion of E_{2H,2} is 1/Gamma(2-2H); a coefficient 1/Gamma(2H+2)
    also circulates and disagrees except where the two gammas coincide.
    """
    _check_hurst(hurst)
    derived = float(special.rgamma(2.0 - 2.0 * hurst))
    printed = float(special.rgamma(2.0 * hurst + 2.0))
    return derived, printed, not math.isclose(derived, printed, rel_tol=1e-12)


def debye_asymptote(process_class, y, hurst, beta=None):
    """Leading large-y term of the Debye function for the given class."""
    pc = ProcessClass(process_class)
    _check_hurst(hurst)
    if not y > 0:
        raise DomainError(f"y must be positive, got {y}")
    if pc is ProcessClass.PFBM:
        return float(special.gamma(1.0 / (2.0 * hurst))) * y ** (-1.0 / hurst) / (2.0 * hurst)
    if pc is ProcessClass.PGBM:
        derived, _, _ = pgbm_tail_coefficients(hurst)
        return derived / (y * y)
    if beta is not None and math.isclose(beta, 1.0):
        return debye_asymptote(ProcessClass.PFBM, y, hurst)
    if beta is not None and math.isclose(beta, 2.0 * hurst):
        return debye_asymptote(ProcessClass.PGBM, y, hurst)
    raise UnsupportedParameterError(
        f"no closed asymptote for the general class with beta={beta}"
    )


def kratky(curve):
    """Pointwise y**2 f(y) of a LINEAR curve, retagged KRATKY."""
    if curve.transform is not Transform.LINEAR:
        raise DomainError("kratky expects a LINEAR input curve")
    return DebyeCurve(
        process_class=curve.process_class,
        hurst=curve.hurst,
        beta=curve.beta,
        y_values=curve.y_values.copy(),
        f_values=curve.y_values**2 * curve.f_values,
        transform=Transform.KRATKY,
    )


def form_factor(spec, k):
    """Exact form factor S(k): the class Debye function at the scaled y."""
    y = y_from_k(k, spec.hurst, spec.circle_length)
    return debye_value(spec.process_class, y, spec.hurst, spec.beta)


def form_factor_mc(ensemble, k):
    """Monte Carlo form-factor estimate and its standard error.

    Per path: (1/N**2) sum_ij cos(k (X_i - X_j)), computed as
    (cos-sum**2 + sin-sum**2)/N**2; the standard error comes from the
    path-to-path spread.
    """
    paths = ensemble.paths
    if paths.size == 0:
        raise DomainError("ensemble is empty")
    m, n = paths.shape
    c = np.cos(k * paths).sum(axis=1)
    s = np.sin(k * paths).sum(axis=1)
    per_path = (c * c + s * s) / (n * n)
    estimate = float(per_path.mean())
    std_error = float(per_path.std(ddof=1) / math.sqrt(m)) if m > 1 else 0.0
    return estimate, std_error


def radius_of_gyration_sq(spec):
    """Squared radius of gyration L**2H / ((2H+1) 2**(2H+1) Gamma(beta+1))."""
    h2 = 2.0 * spec.hurst
    base = spec.circle_length**h2 / ((h2 + 1.0) * 2.0 ** (h2 + 1.0))
    return base / float(special.gamma(spec.beta + 1.0))


def end_to_halftime_sq(spec):
    """Squared end-to-halftime length (L/2)**2H / Gamma(beta+1)."""
    h2 = 2.0 * spec.hurst
    return (spec.circle_length / 2.0) ** h2 / float(special.gamma(spec.beta + 1.0))


def gyration_relation(spec):
    """Report R_g**2, R_e**2 and the residual of R_e**2/(2(2H+1)) = R_g**2."""
    rg2 = radius_of_gyration_sq(spec)
    re2 = end_to_halftime_sq(spec)
    return GyrationReport(
        r_g_squared=rg2,
        r_e_squared=re2,
        relation_residual=re2 / (2.0 * (2.0 * spec.hurst + 1.0)) - rg2,
    )


def linear_fbm_gyration_sq(hurst, length):
    """Squared gyration radius of line-segment fractional Brownian motion."""
    if not length > 0:
        raise DomainError(f"length must be positive, got {length}")
    h2 = 2.0 * hurst
    return length**h2 / ((h2 + 1.0) * (h2 + 2.0))


def debye_curve(process_class, hurst, beta, y_values, transform=Transform.LINEAR, policy=None):
    """Tabulate the Debye function of a class on a y grid."""
    y = np.asarray(y_values, dtype=float)
    if y.size and np.any(np.diff(y) <= 0):
        raise DomainError("y_values must be strictly increasing")
    f = np.array([debye_value(process_class, v, hurst, beta, policy) for v in y])
    curve = DebyeCurve(
        process_class=ProcessClass(process_class),
        hurst=hurst,
        beta=beta if beta is not None else 1.0,
        y_values=y,
        f_values=f,
        transform=Transform.LINEAR,
    )
    if Transform(transform) is Transform.KRATKY:
        return kratky(curve)
    curve.transform = Transform(transform)
    return curve


def write_curve_csv(curve, fh):
    """Delimited output: header y,f (or y,y2f for Kratky), 17 digits, LF."""
    header = "y,y2f" if curve.transform is Transform.KRATKY else "y,f"
    fh.write(header + "\n")
    for y, f in zip(curve.y_values, curve.f_values):
        fh.write(f"{y:.17g},{f:.17g}\n")
