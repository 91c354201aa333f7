"""Special-function stack: gamma family, Mittag-Leffler, M-Wright, Fox-Wright.

Everything here is evaluated on the negative real axis (Mittag-Leffler
arguments) or the positive half-line (M-Wright), which is all the rest of
the package needs.

The Mittag-Leffler series is alternating for negative arguments and the
intermediate terms grow roughly like exp(u) with u = |z|**(1/beta), so the
evaluation is regime-switched on u rather than on |z|:

* u <= 12         -- double-precision power series (cancellation harmless),
* 12 < u < 28     -- for E_beta itself a cancellation-free spectral
                     integral; otherwise 50-digit software floats (the peak
                     term has < 13 digits there),
* u >= 28         -- tail expansion, optimally truncated; the first omitted
                     term is ~exp(-u), below the 1e-10 working tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import special

from .errors import ConvergenceError, DomainError

__all__ = [
    "SeriesPolicy",
    "DEFAULT_POLICY",
    "gamma_fn",
    "gamma_upper_incomplete",
    "mittag_leffler",
    "mittag_leffler_general",
    "mittag_leffler_asymptotic",
    "m_wright",
    "fox_wright_2psi2",
]

# Regime boundaries in u = |z|**(1/beta); see module docstring.
_DOUBLE_MAX_U = 12.0
_ASYMPTOTIC_MIN_U = 28.0
_BAND_DPS = 50


@dataclass(frozen=True)
class SeriesPolicy:
    """Truncation policy for the series evaluations.

    ``crossover_threshold`` is expressed in the scale-free variable
    u = |z|**(1/beta); above it the tail expansion replaces the series.
    """

    max_terms: int = 700
    abs_tol: float = 1e-10
    crossover_threshold: float = _ASYMPTOTIC_MIN_U

    def __post_init__(self):
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")
        if not self.abs_tol > 0:
            raise DomainError("abs_tol must be positive")
        if not self.crossover_threshold > 0:
            raise DomainError("crossover_threshold must be positive")


DEFAULT_POLICY = SeriesPolicy()

# Denominator-gamma tables for the 50-digit band, keyed by the series family
# and its parameters.  Values are mpf at _BAND_DPS + 10 digits; ``None``
# marks a pole (the term is taken as exactly zero there).
_GAMMA_CACHE: dict = {}


def gamma_fn(a):
    """Gamma function for a > 0."""
    if not a > 0:
        raise DomainError(f"gamma_fn requires a > 0, got {a}")
    return float(special.gamma(a))


def gamma_upper_incomplete(a, x):
    """Upper incomplete gamma integral of t**(a-1) exp(-t) over [x, inf)."""
    if not a > 0:
        raise DomainError(f"gamma_upper_incomplete requires a > 0, got {a}")
    if x < 0:
        raise DomainError(f"gamma_upper_incomplete requires x >= 0, got {x}")
    return float(special.gammaincc(a, x) * special.gamma(a))


def _is_nonpositive_int(a, tol=1e-9):
    return a < 0.5 and abs(a - round(a)) < tol


def _denominator_gammas(key, arg_of_n, n):
    """Cached mpf values of Gamma(arg_of_n(m)) for m <= n (None at poles).

    ``arg_of_n`` should return an mpf: with peak terms ~exp(u) the sum
    cancels down by u/ln(10) digits, so even one ulp of double rounding in
    the gamma argument would leak through amplified by exp(u).
    """
    table = _GAMMA_CACHE.setdefault(key, [])
    if len(table) <= n:
        with mpmath.workdps(_BAND_DPS + 10):
            while len(table) <= n:
                a = arg_of_n(len(table))
                table.append(
                    None if _is_nonpositive_int(float(a)) else mpmath.gamma(a)
                )
    return table


def _series_double(z, denom, n_peak, n_max):
    """Sum z**n / Gamma(denom(n)) in doubles; safe only for small peak terms."""
    s = 0.0
    p = 1.0
    for n in range(n_max):
        t = p * special.rgamma(denom(n))
        s += t
        p *= z
        if n > n_peak and abs(t) < 1e-17 * (abs(s) + 1.0):
            return s
    raise ConvergenceError(
        f"power series did not converge within {n_max} terms (last term {t:.3e})"
    )


def _series_band(z, key, denom, n_peak, n_max):
    """Sum z**n / Gamma(denom(n)) at 50 digits for the intermediate band."""
    table = _denominator_gammas(key, denom, n_max - 1)
    with mpmath.workdps(_BAND_DPS):
        zm = mpmath.mpf(z)
        s = mpmath.mpf(0)
        p = mpmath.mpf(1)
        tol = mpmath.mpf(10) ** (-_BAND_DPS + 10)
        for n in range(n_max):
            g = table[n]
            if g is not None:
                t = p / g
                s += t
                if n > n_peak and abs(t) < tol * (abs(s) + 1):
                    return float(s)
            p *= zm
    raise ConvergenceError(
        f"extended-precision series did not converge within {n_max} terms"
    )


def _spectral_neg(beta, x):
    """Cancellation-free evaluation of E_beta(-x) for 0 < beta < 1, x > 0.

    Complete monotonicity gives E_beta(-t**beta) as the Laplace transform in
    t of a positive spectral density; substituting r = q**(1/beta) removes
    the endpoint singularity and leaves, with u = x**(1/beta),

        E_beta(-x) = sin(pi beta)/(pi beta)
                     * int_0^inf exp(-u q**(1/beta)) / (q**2 + 2 q cos(pi beta) + 1) dq.
    """
    from scipy import integrate

    c = math.cos(math.pi * beta)
    pref = math.sin(math.pi * beta) / (math.pi * beta)
    inv_beta = 1.0 / beta
    u = x**inv_beta

    def integrand(q):
        return math.exp(-u * q**inv_beta) / (q * q + 2.0 * c * q + 1.0)

    # the denominator can dip sharply near q = 1 when beta -> 1
    head, _ = integrate.quad(integrand, 0.0, 2.0, points=[1.0], limit=100,
                             epsabs=1e-14, epsrel=1e-12)
    tail, _ = integrate.quad(integrand, 2.0, np.inf, limit=100,
                             epsabs=1e-14, epsrel=1e-12)
    return pref * (head + tail)


def _asymptotic_auto(beta, rho, z, abs_tol):
    """Optimally truncated tail expansion of E_{beta,rho}(z) for z << 0.

    Terms are -z**(-n) / Gamma(rho - beta*n); their envelope shrinks until
    beta*n ~ u = |z|**(1/beta) and then diverges.  The reflection factor
    sin(pi*(rho - beta*n)) makes individual |t_n| non-monotonic (exactly
    zero on gamma poles), so the truncation point and the error estimate
    come from the smooth envelope |z|**(-n) Gamma(beta*n + 1 - rho) / pi,
    i.e. the term magnitude with |sin| replaced by 1.  The envelope minimum
    is ~exp(-u).
    """
    log_az = math.log(-z)
    n = np.arange(1.0, 400.0)
    arg = beta * n + 1.0 - rho
    with np.errstate(invalid="ignore"):
        log_env = np.where(
            arg > 0,
            -n * log_az + special.gammaln(arg) - math.log(math.pi),
            -n * log_az - special.gammaln(rho - beta * n),
        )
    cut = int(np.argmin(log_env)) + 1
    err = math.exp(log_env[cut - 1])
    if err > abs_tol:
        raise ConvergenceError(
            f"asymptotic expansion stalled at term magnitude {err:.3e} "
            f"(requested {abs_tol:.3e}); series partial sum unavailable in this regime"
        )
    s = 0.0
    p = 1.0
    for k in range(1, cut + 1):
        p /= z
        if p == 0.0:
            break
        t = p * special.rgamma(rho - beta * k)
        s -= t
        if t != 0.0 and abs(t) < 1e-18 * abs(s):
            break
    return s


def mittag_leffler_general(beta, rho, z, policy=None):
    """Generalized Mittag-Leffler E_{beta,rho}(z) for z <= 0.

    Power series sum z**n / Gamma(beta*n + rho), regime-switched as
    described in the module docstring.
    """
    policy = policy or DEFAULT_POLICY
    if not 0 < beta < 2:
        raise DomainError(f"beta must be in (0, 2), got {beta}")
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho}")
    if z > 0:
        raise DomainError(f"only z <= 0 is supported, got {z}")
    if z == 0:
        return float(special.rgamma(rho))
    if beta == 1.0 and rho == 1.0:
        return math.exp(z)
    x = -z
    u = x ** (1.0 / beta)

    def denom(n):
        return beta * n + rho

    def denom_mp(n):
        return mpmath.mpf(beta) * n + rho

    if u >= policy.crossover_threshold:
        try:
            return _asymptotic_auto(beta, rho, z, policy.abs_tol)
        except ConvergenceError:
            # just past the crossover the optimal truncation error can sit
            # slightly above abs_tol; the extended-precision series still
            # converges there, only more slowly
            n_peak = int(u / beta) + 1
            n_max = max(policy.max_terms, 8 * n_peak + 100)
            return _series_band(z, ("ml", beta, rho), denom_mp, n_peak, n_max)

    n_peak = int(u / beta) + 1
    n_max = max(policy.max_terms, 8 * n_peak + 100)
    if u <= _DOUBLE_MAX_U:
        return _series_double(z, denom, n_peak, n_max)
    if rho == 1.0 and beta < 1.0:
        return _spectral_neg(beta, x)
    return _series_band(z, ("ml", beta, rho), denom_mp, n_peak, n_max)


def mittag_leffler(beta, z, policy=None):
    """Mittag-Leffler E_beta(z) for 0 < beta <= 1 and z <= 0."""
    if not 0 < beta <= 1:
        raise DomainError(f"beta must be in (0, 1], got {beta}")
    return mittag_leffler_general(beta, 1.0, z, policy)


def mittag_leffler_asymptotic(beta, rho, z, m):
    """m-term tail expansion -sum_{n=1..m} z**(-n) / Gamma(rho - beta*n).

    Terms whose gamma argument is a non-positive integer vanish
    (reciprocal-gamma convention).
    """
    if not 0 < beta < 2:
        raise DomainError(f"beta must be in (0, 2), got {beta}")
    if not z < 0:
        raise DomainError(f"z must be strictly negative, got {z}")
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    n = np.arange(1, m + 1)
    return float(-np.sum(z ** (-n.astype(float)) * special.rgamma(rho - beta * n)))


def _m_wright_log_bound(beta, x, n):
    # Reflection bound |1/Gamma(1 - beta*(n+1))| <= Gamma(beta*(n+1)) / pi.
    if x == 0:
        return -math.inf if n > 0 else 0.0
    return (
        n * math.log(x)
        - special.gammaln(n + 1)
        + special.gammaln(beta * (n + 1))
        - math.log(math.pi)
    )


def m_wright(beta, x, policy=None):
    """M-Wright probability density M_beta(x) on x >= 0, 0 < beta < 1.

    Alternating series sum (-x)**n / (n! Gamma(1 - beta*(n+1))).  Falls back
    to software floats when the intermediate terms are large enough to eat
    the double-precision budget.
    """
    policy = policy or DEFAULT_POLICY
    if not 0 < beta < 1:
        raise DomainError(f"beta must be in (0, 1), got {beta}")
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    if x == 0:
        return float(special.rgamma(1.0 - beta))

    # Saddle-point size estimate: ln M_beta(x) ~ -(1-b) b**(b/(1-b)) x**(1/(1-b)).
    # The series cancels from its peak term down to this value, so the digit
    # budget must cover the whole drop, not just the peak.
    ln_est = (
        -(1.0 - beta) * beta ** (beta / (1.0 - beta)) * x ** (1.0 / (1.0 - beta))
    )
    if ln_est < -800.0:
        return 0.0  # below double-precision underflow

    n_cap = 20000
    peak_log = 0.0
    n_tail = 0
    for n in range(n_cap):
        b = _m_wright_log_bound(beta, x, n)
        if b > peak_log:
            peak_log = b
        if b < min(0.0, ln_est) - 45.0 and n > 2:
            n_tail = n
            break
    else:
        raise ConvergenceError(
            f"M-Wright series bound did not decay within {n_cap} terms "
            f"(largest term bound exp({peak_log:.1f}))"
        )

    drop = peak_log - min(0.0, ln_est)
    if drop < math.log(1e4):
        s = 0.0
        p = 1.0
        for n in range(n_tail + 1):
            s += p * special.rgamma(1.0 - beta * (n + 1))
            p *= -x / (n + 1)
        return 0.0 if abs(s) < policy.abs_tol and s < 0 else s

    dps = 25 + int(drop / math.log(10))
    if dps > 800:
        raise ConvergenceError(
            f"M-Wright series needs {dps} digits at x={x} "
            f"(largest term ~exp({peak_log:.1f})); refusing"
        )
    key = ("mw", beta)
    table = _GAMMA_CACHE.setdefault(key, [])
    if len(table) <= n_tail:
        with mpmath.workdps(810):
            while len(table) <= n_tail:
                a = 1 - mpmath.mpf(beta) * (len(table) + 1)
                # only an exactly integer argument is a true pole; a nearby
                # one gives a huge-but-finite gamma whose tiny reciprocal
                # still participates in the cancellation
                pole = a < 0.5 and a == mpmath.nint(a)
                table.append(None if pole else mpmath.gamma(a))
    with mpmath.workdps(dps):
        s = mpmath.mpf(0)
        p = mpmath.mpf(1)
        xm = mpmath.mpf(x)
        for n in range(n_tail + 1):
            g = table[n]
            if g is not None:
                s += p / g
            p *= -xm / (n + 1)
        out = float(s)
    return 0.0 if abs(out) < policy.abs_tol and out < 0 else out


def fox_wright_2psi2(a1, b1, a2, b2, c1, d1, c2, d2, x, policy=None):
    """Fox-Wright 2Psi2 partial sum for x <= 0.

    Returns ``(value, terms_used)``.  Terms whose denominator gamma hits a
    pole contribute zero; a numerator pole raises a domain error.
    """
    policy = policy or DEFAULT_POLICY
    if x > 0:
        raise DomainError(f"only x <= 0 is supported, got {x}")
    s = 0.0
    term = math.inf
    for n in range(policy.max_terms):
        num = (a1 + b1 * n, a2 + b2 * n)
        den = (c1 + d1 * n, c2 + d2 * n)
        if any(_is_nonpositive_int(a) for a in num):
            raise DomainError(
                f"numerator gamma argument hits a pole at n={n}: {num}"
            )
        if x == 0.0 and n >= 1:
            term = 0.0
        elif any(_is_nonpositive_int(a) for a in den):
            term = 0.0
        else:
            lt = (
                special.gammaln(num[0])
                + special.gammaln(num[1])
                - special.gammaln(den[0])
                - special.gammaln(den[1])
                - special.gammaln(n + 1)
            )
            sg = (
                special.gammasgn(num[0])
                * special.gammasgn(num[1])
                * special.gammasgn(den[0])
                * special.gammasgn(den[1])
            )
            if n > 0:
                lt += n * math.log(-x)
                sg *= (-1.0) ** n
            term = sg * math.exp(lt)
        s += term
        if abs(term) < policy.abs_tol:
            return s, n + 1
    raise ConvergenceError(
        f"2Psi2 partial sum not converged after {policy.max_terms} terms "
        f"(last term magnitude {abs(term):.3e})"
    )
