"""Exact-in-distribution path sampling for the three process classes.

Gaussian paths come from either a (jittered) Cholesky factorization of the
covariance matrix or an O(N log N) circulant/FFT fast path that samples a
stationary vector with kernel c - d_H/2 and pins it by subtracting the value
at index 0.  The grey envelope sqrt(Y_beta) is drawn via the inverse-stable
representation Y_beta = S**(-beta), with S a one-sided beta-stable variate
from Kanter's formula.

Reproducibility: one Philox substream per path plus one reserved substream
for the envelope, all spawned from a single SeedSequence, so results do not
depend on scheduling.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, FactorizationError
from .process import CircleGrid, ProcessClass, ProcessSpec, covariance_matrix, _geodesic_array

__all__ = [
    "SamplingMethod",
    "PathEnsemble",
    "sample_gaussian_paths",
    "sample_mwright",
    "sample_process",
    "export_ensemble",
]

_JITTERS = (0.0, 1e-14, 1e-13, 1e-12, 1e-11, 1e-10)
_CIRCULANT_EIG_TOL = 1e-10


class SamplingMethod(str, Enum):
    CHOLESKY = "cholesky"
    CIRCULANT = "circulant"


@dataclass
class PathEnsemble:
    """M sampled paths on a grid, with RNG provenance.

    ``envelope_values`` holds the per-path Y_beta draws (all 1 for pfBm);
    ``circulant_fallback`` records whether a circulant request fell back to
    Cholesky because of a negative Fourier eigenvalue.
    """

    spec: ProcessSpec
    grid: CircleGrid
    paths: np.ndarray
    seed: int
    method: SamplingMethod
    envelope_values: np.ndarray
    circulant_fallback: bool = False


def _path_generators(children):
    return [np.random.Generator(np.random.Philox(c)) for c in children]


def _cholesky_factor(grid, hurst):
    """Lower factor of the (N-1) x (N-1) covariance block, with jitter."""
    cov = covariance_matrix(grid, hurst).values
    sub = cov[1:, 1:]
    scale = float(np.max(np.diag(sub))) if sub.size else 0.0
    for eps in _JITTERS:
        try:
            return np.linalg.cholesky(sub + eps * scale * np.eye(sub.shape[0]))
        except np.linalg.LinAlgError:
            continue
    min_ev = float(np.linalg.eigvalsh(sub)[0]) if sub.size else 0.0
    raise FactorizationError(
        f"covariance factorization failed beyond jitter budget; most negative "
        f"pivot/eigenvalue {min_ev:.6e}"
    )


def _gaussian_paths(grid, hurst, children, method):
    """Pinned Gaussian paths, one RNG substream per path."""
    n_paths = len(children)
    n = grid.n_points
    gens = _path_generators(children)
    if n == 1:
        return np.zeros((n_paths, 1)), method, False

    fallback = False
    if method is SamplingMethod.CIRCULANT:
        d = _geodesic_array(grid.times, hurst, grid.circle_length)
        kernel = 0.5 * d.max() - 0.5 * d
        lam = np.fft.fft(kernel).real
        if lam.min() < -_CIRCULANT_EIG_TOL * lam.max():
            method = SamplingMethod.CHOLESKY
            fallback = True
        else:
            coef = np.sqrt(np.clip(lam, 0.0, None) / n)
            noise = np.empty((n_paths, 2 * n))
            for m, g in enumerate(gens):
                noise[m] = g.standard_normal(2 * n)
            z = np.fft.fft(coef * (noise[:, :n] + 1j * noise[:, n:]), axis=1).real
            return z - z[:, :1], SamplingMethod.CIRCULANT, False

    factor = _cholesky_factor(grid, hurst)
    noise = np.empty((n_paths, n - 1))
    for m, g in enumerate(gens):
        noise[m] = g.standard_normal(n - 1)
    paths = np.zeros((n_paths, n))
    paths[:, 1:] = noise @ factor.T
    return paths, SamplingMethod.CHOLESKY, fallback


def sample_gaussian_paths(grid, hurst, n_paths, seed, method=SamplingMethod.CIRCULANT):
    """Independent pinned Gaussian paths with the circle covariance."""
    if hurst > 0.5:
        raise DomainError(
            f"hurst={hurst} > 1/2: covariance not positive semi-definite, refusing to sample"
        )
    if n_paths < 1:
        raise DomainError(f"n_paths must be >= 1, got {n_paths}")
    method = SamplingMethod(method)
    children = np.random.SeedSequence(seed).spawn(n_paths + 1)
    paths, used, fallback = _gaussian_paths(grid, hurst, children[:n_paths], method)
    spec = ProcessSpec(ProcessClass.PFBM, hurst, grid.circle_length)
    return PathEnsemble(
        spec=spec,
        grid=grid,
        paths=paths,
        seed=seed,
        method=used,
        envelope_values=np.ones(n_paths),
        circulant_fallback=fallback,
    )


def _mwright_from_rng(beta, n, rng):
    """I.i.d. Y_beta draws via Kanter's one-sided stable formula.

    S = (a(U)/W)**((1-beta)/beta) with U ~ U(0, pi), W ~ Exp(1) satisfies
    E exp(-lam S) = exp(-lam**beta); Y_beta = S**(-beta) then has density
    M_beta.
    """
    if beta == 1.0:
        return np.ones(n)
    u = rng.uniform(0.0, np.pi, n)
    w = rng.standard_exponential(n)
    a = (
        np.sin((1.0 - beta) * u)
        * np.sin(beta * u) ** (beta / (1.0 - beta))
        / np.sin(u) ** (1.0 / (1.0 - beta))
    )
    s = (a / w) ** ((1.0 - beta) / beta)
    return s ** (-beta)


def sample_mwright(beta, n, seed):
    """n i.i.d. draws from the M-Wright density M_beta (point mass 1 at beta=1)."""
    if not 0 < beta <= 1:
        raise DomainError(f"beta must be in (0, 1], got {beta}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    return _mwright_from_rng(beta, n, rng)


def sample_process(spec, grid, n_paths, seed, method=SamplingMethod.CIRCULANT):
    """Paths of the requested class: sqrt(Y_beta) times a Gaussian path.

    The envelope uses its own reserved RNG substream, so pfBm ensembles are
    bit-identical whether drawn here or via ``sample_gaussian_paths``.
    """
    if spec.hurst > 0.5:
        raise DomainError(
            f"hurst={spec.hurst} > 1/2: covariance not positive semi-definite, refusing to sample"
        )
    if n_paths < 1:
        raise DomainError(f"n_paths must be >= 1, got {n_paths}")
    if grid.circle_length != spec.circle_length:
        raise DomainError("grid and spec disagree on the circle length")
    method = SamplingMethod(method)
    children = np.random.SeedSequence(seed).spawn(n_paths + 1)
    paths, used, fallback = _gaussian_paths(grid, spec.hurst, children[:n_paths], method)
    if spec.process_class is ProcessClass.PFBM:
        envelope = np.ones(n_paths)
    else:
        env_rng = np.random.Generator(np.random.Philox(children[n_paths]))
        envelope = _mwright_from_rng(spec.beta, n_paths, env_rng)
        paths = paths * np.sqrt(envelope)[:, None]
    return PathEnsemble(
        spec=spec,
        grid=grid,
        paths=paths,
        seed=seed,
        method=used,
        envelope_values=envelope,
        circulant_fallback=fallback,
    )


def export_ensemble(ensemble, csv_path):
    """Write paths as CSV (one row per path) plus a JSON sidecar.

    Returns the sidecar path.  Floats use 17 significant digits and LF line
    endings so repeated runs are byte-identical.
    """
    csv_path = str(csv_path)
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([f"t{i}" for i in range(ensemble.grid.n_points)])
        for row in ensemble.paths:
            writer.writerow([f"{v:.17g}" for v in row])
    sidecar = csv_path.rsplit(".", 1)[0] + ".json"
    meta = {
        "spec": {
            "process_class": ensemble.spec.process_class.value,
            "hurst": ensemble.spec.hurst,
            "beta": ensemble.spec.beta,
            "circle_length": ensemble.spec.circle_length,
        },
        "grid": {
            "n_points": ensemble.grid.n_points,
            "circle_length": ensemble.grid.circle_length,
        },
        "n_paths": int(ensemble.paths.shape[0]),
        "seed": int(ensemble.seed),
        "method": ensemble.method.value,
        "circulant_fallback": ensemble.circulant_fallback,
    }
    with open(sidecar, "w", newline="") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return sidecar
