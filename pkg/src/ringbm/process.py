"""Process parametrization and exact second-order structure on the circle.

The three classes share the same underlying Gaussian covariance; the grey
variants only rescale moments by 1/Gamma(beta+1) and replace the Gaussian
characteristic function by a Mittag-Leffler one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import specfn
from .errors import DomainError

__all__ = [
    "ProcessClass",
    "ProcessSpec",
    "CircleGrid",
    "CovarianceMatrix",
    "geodesic_variance",
    "covariance",
    "covariance_matrix",
    "psd_check",
    "increment_char_fn",
    "increment_second_moment",
    "multivariate_char_fn",
    "self_similarity_check",
]


class ProcessClass(str, Enum):
    PFBM = "pfbm"
    PGBM = "pgbm"
    PGGBM = "pggbm"


@dataclass(frozen=True)
class ProcessSpec:
    """Which process class, plus its parameters (H, beta, L).

    ``beta`` is forced to 1 for pfBm and to 2H for pgBm; it must be supplied
    explicitly for pggBm.  H > 1/2 is only constructible behind
    ``allow_unstable`` (the covariance stops being positive semi-definite
    there) and sampling refuses such specs.
    """

    process_class: ProcessClass
    hurst: float
    circle_length: float = 1.0
    beta: float | None = None
    allow_unstable: bool = False

    def __post_init__(self):
        pc = ProcessClass(self.process_class)
        object.__setattr__(self, "process_class", pc)
        if not self.hurst > 0:
            raise DomainError(f"hurst must be positive, got {self.hurst}")
        if self.hurst > 0.5 and not self.allow_unstable:
            raise DomainError(
                f"hurst={self.hurst} > 1/2 is not positive semi-definite on the "
                "circle; pass allow_unstable=True for covariance experiments only"
            )
        if not self.circle_length > 0:
            raise DomainError(f"circle_length must be positive, got {self.circle_length}")
        if pc is ProcessClass.PFBM:
            if self.beta is not None and self.beta != 1.0:
                raise DomainError("pfbm has beta = 1 by definition")
            object.__setattr__(self, "beta", 1.0)
        elif pc is ProcessClass.PGBM:
            forced = 2.0 * self.hurst
            if self.beta is not None and not math.isclose(self.beta, forced):
                raise DomainError(f"pgbm has beta = 2H = {forced}, got {self.beta}")
            object.__setattr__(self, "beta", forced)
        else:
            if self.beta is None:
                raise DomainError("pggbm requires an explicit beta")
            if not 0 < self.beta <= 1:
                raise DomainError(f"beta must be in (0, 1], got {self.beta}")


@dataclass(frozen=True)
class CircleGrid:
    """N uniform sample times t_i = i L / N on [0, L)."""

    n_points: int
    circle_length: float = 1.0

    def __post_init__(self):
        if self.n_points < 1:
            raise DomainError(f"n_points must be >= 1, got {self.n_points}")
        if not self.circle_length > 0:
            raise DomainError(f"circle_length must be positive, got {self.circle_length}")

    @property
    def times(self):
        return np.arange(self.n_points) * (self.circle_length / self.n_points)


@dataclass
class CovarianceMatrix:
    """Symmetric N x N Gaussian covariance with PSD metadata."""

    values: np.ndarray
    grid: CircleGrid
    hurst: float
    min_eigenvalue: float | None = None


def geodesic_variance(tau, hurst, circle_length):
    """Increment variance min(|tau|**2H, (L-|tau|)**2H) on the circle."""
    a = abs(tau)
    if a > circle_length:
        raise DomainError(f"|tau|={a} exceeds circle length {circle_length}")
    if not hurst > 0:
        raise DomainError(f"hurst must be positive, got {hurst}")
    h2 = 2.0 * hurst
    return float(min(a**h2, (circle_length - a) ** h2))


def _geodesic_array(tau, hurst, circle_length):
    a = np.abs(tau)
    h2 = 2.0 * hurst
    return np.minimum(a**h2, (circle_length - a) ** h2)


def covariance(t, s, hurst, circle_length):
    """Covariance of the pinned Gaussian process at times t, s in [0, L)."""
    for v in (t, s):
        if not 0 <= v < circle_length:
            raise DomainError(f"time {v} outside [0, {circle_length})")
    return 0.5 * (
        geodesic_variance(t, hurst, circle_length)
        + geodesic_variance(s, hurst, circle_length)
        - geodesic_variance(t - s, hurst, circle_length)
    )


def covariance_matrix(grid, hurst):
    """Full covariance matrix on a grid; exactly symmetric by construction."""
    if not hurst > 0:
        raise DomainError(f"hurst must be positive, got {hurst}")
    t = grid.times
    L = grid.circle_length
    diag = _geodesic_array(t, hurst, L)
    cross = _geodesic_array(np.abs(t[:, None] - t[None, :]), hurst, L)
    values = 0.5 * (diag[:, None] + diag[None, :] - cross)
    return CovarianceMatrix(values=values, grid=grid, hurst=hurst)


def psd_check(cov, tol=1e-8):
    """(min eigenvalue, is_psd) with tolerance relative to the largest diagonal."""
    evs = np.linalg.eigvalsh(cov.values)
    min_ev = float(evs[0])
    scale = float(np.max(np.diag(cov.values)))
    cov.min_eigenvalue = min_ev
    return min_ev, min_ev >= -tol * scale


def _char_value(spec, quad):
    """Characteristic-function value at Gaussian quadratic form ``quad`` >= 0."""
    arg = -quad
    if spec.process_class is ProcessClass.PFBM:
        return math.exp(arg)
    return specfn.mittag_leffler(spec.beta, arg)


def increment_char_fn(spec, k, t, s):
    """Characteristic function of the increment X(t) - X(s) at wavenumber k."""
    d = geodesic_variance(t - s, spec.hurst, spec.circle_length)
    for v in (t, s):
        if not 0 <= v < spec.circle_length:
            raise DomainError(f"time {v} outside [0, {spec.circle_length})")
    return _char_value(spec, 0.5 * k * k * d)


def increment_second_moment(spec, t, s):
    """Second moment of the increment: d_H(t-s; L) / Gamma(beta + 1)."""
    for v in (t, s):
        if not 0 <= v < spec.circle_length:
            raise DomainError(f"time {v} outside [0, {spec.circle_length})")
    d = geodesic_variance(t - s, spec.hurst, spec.circle_length)
    return d / specfn.gamma_fn(spec.beta + 1.0)


def multivariate_char_fn(spec, lambdas, times):
    """Joint characteristic function E_beta(-(1/2) lambda' Sigma lambda).

    Sigma is the covariance of the underlying Gaussian process; the grey
    envelope enters only through the Mittag-Leffler wrapper, consistently
    with the increment characteristic functions.
    """
    lam = np.asarray(lambdas, dtype=float)
    ts = np.asarray(times, dtype=float)
    if lam.shape != ts.shape:
        raise DomainError("lambdas and times must have the same length")
    L = spec.circle_length
    if np.any((ts < 0) | (ts >= L)):
        raise DomainError(f"times must lie in [0, {L})")
    diag = _geodesic_array(ts, spec.hurst, L)
    cross = _geodesic_array(np.abs(ts[:, None] - ts[None, :]), spec.hurst, L)
    sigma = 0.5 * (diag[:, None] + diag[None, :] - cross)
    quad = float(lam @ sigma @ lam)
    return _char_value(spec, 0.5 * quad)


def self_similarity_check(hurst, a, t, s, circle_length, rel_tol=1e-12):
    """Check R(at, as; aL) = a**2H R(t, s; L) to relative tolerance."""
    if not a > 0:
        raise DomainError(f"scale a must be positive, got {a}")
    lhs = covariance(a * t, a * s, hurst, a * circle_length)
    rhs = a ** (2.0 * hurst) * covariance(t, s, hurst, circle_length)
    return abs(lhs - rhs) <= rel_tol * a ** (2.0 * hurst) * max(1.0, abs(rhs))
