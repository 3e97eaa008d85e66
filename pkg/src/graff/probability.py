"""Uniform, Langevin, and Langevin-Gaussian distributions on spaces of flats.

The uniform measure is the pushforward of the invariant measure on the
Grassmannian of (k+1)-planes in R^(n+1) through the embedding of flats; the
complement of the embedded image has measure zero, so rejection is a
probability-zero event.  The Langevin density is exp(tr(S P)) in projection
coordinates, normalized by a constant that we estimate by Monte Carlo as a
uniform expectation.  The Langevin-Gaussian density factors into a Langevin
density on the linear part and a spherical Gaussian on the displacement
within the orthogonal complement.

All samplers take an explicit ``numpy.random.Generator``; there is no
hidden global state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coords import AffineFlat, projection_coords, stiefel_coords, unembed
from .errors import DimensionError, InternalError, NotAFlat

__all__ = [
    "RandomStream",
    "random_stream",
    "LangevinParams",
    "LangevinGaussianParams",
    "MHConfig",
    "sample_uniform",
    "langevin_log_density_unnormalized",
    "langevin_normalizer",
    "grassmann_normalizer",
    "sample_langevin",
    "langevin_mh_run",
    "langevin_gaussian_log_density",
    "sample_langevin_gaussian",
    "langevin_gaussian_run",
]

RandomStream = np.random.Generator


def random_stream(seed=None) -> RandomStream:
    """A seedable random generator; equal seeds give equal sample sequences."""
    return np.random.default_rng(seed)


def _symmetric_matrix(S, size: int, name: str) -> np.ndarray:
    S = np.asarray(S, dtype=float)
    if S.shape != (size, size):
        raise DimensionError(f"{name} must be {size} x {size}, got {S.shape}")
    if not np.all(np.isfinite(S)):
        raise ValueError(f"{name} contains non-finite entries")
    return 0.5 * (S + S.T)


@dataclass(frozen=True, eq=False)
class LangevinParams:
    """Parameters of the Langevin (von Mises-Fisher) density on k-flats in R^n.

    ``S`` is an (n+1) x (n+1) symmetric concentration matrix; it is
    symmetrized on construction.  S = 0 gives the uniform distribution.
    """

    S: np.ndarray
    k: int
    n: int

    def __post_init__(self):
        k, n = int(self.k), int(self.n)
        if not 0 <= k < n:
            raise DimensionError(f"need 0 <= k < n, got k={k}, n={n}")
        S = _symmetric_matrix(self.S, n + 1, "S")
        S.setflags(write=False)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n", n)


@dataclass(frozen=True, eq=False)
class LangevinGaussianParams:
    """Parameters of the Langevin-Gaussian density on k-flats in R^n.

    ``S`` is an n x n symmetric concentration matrix for the linear part and
    ``sigma2`` the variance of the spherical Gaussian on the displacement.
    """

    S: np.ndarray
    sigma2: float
    k: int
    n: int

    def __post_init__(self):
        k, n = int(self.k), int(self.n)
        if not 0 <= k < n:
            raise DimensionError(f"need 0 <= k < n, got k={k}, n={n}")
        sigma2 = float(self.sigma2)
        if not sigma2 > 0.0:
            raise ValueError(f"sigma2 must be positive, got {sigma2}")
        S = _symmetric_matrix(self.S, n, "S")
        S.setflags(write=False)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "sigma2", sigma2)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n", n)


@dataclass(frozen=True)
class MHConfig:
    """Metropolis-Hastings settings: geodesic step scale, burn-in, thinning."""

    step_size: float = 0.1
    burn_in: int = 1000
    thin: int = 10

    def __post_init__(self):
        if not self.step_size > 0.0:
            raise ValueError("step_size must be positive")
        if self.burn_in < 0 or self.thin < 1:
            raise ValueError("burn_in must be >= 0 and thin >= 1")


def _uniform_frame(rows: int, cols: int, rng: RandomStream) -> np.ndarray:
    """Orthonormal basis of a uniformly distributed cols-plane in R^rows."""
    if cols == 0:
        return np.zeros((rows, 0))
    G = rng.standard_normal((rows, cols))
    Q, _ = np.linalg.qr(G)
    return Q


def sample_uniform(k: int, n: int, rng: RandomStream) -> AffineFlat:
    """Draw a flat from the uniform distribution on k-flats in R^n.

    A Gaussian (n+1) x (k+1) matrix is orthonormalized and unembedded; the
    resulting distribution is invariant under the orthogonal group of
    R^(n+1).  The measure-zero event that the span is not a flat is retried,
    at most 100 times.
    """
    k, n = int(k), int(n)
    if not 0 <= k < n:
        raise DimensionError(f"need 0 <= k < n, got k={k}, n={n}")
    for _ in range(100):
        try:
            return unembed(_uniform_frame(n + 1, k + 1, rng))
        except NotAFlat:
            continue
    raise InternalError("100 consecutive uniform draws landed outside the flat locus")


def _check_params(flat: AffineFlat, params) -> None:
    if flat.n != params.n or flat.k != params.k:
        raise DimensionError(
            f"flat is in Graff({flat.k}, {flat.n}) but parameters are for"
            f" Graff({params.k}, {params.n})"
        )


def langevin_log_density_unnormalized(flat: AffineFlat, params: LangevinParams) -> float:
    """Log of the unnormalized Langevin density: tr(S P) in projection coordinates."""
    _check_params(flat, params)
    return float(np.sum(params.S * projection_coords(flat).P))


def langevin_normalizer(
    params: LangevinParams, n_samples: int, rng: RandomStream
) -> tuple[float, float]:
    """Monte Carlo estimate of the Langevin normalizing constant.

    The normalizer is the uniform expectation of exp(tr(S P)); returns the
    sample mean over ``n_samples`` uniform draws and its standard error.
    Exact (zero variance) whenever tr(S P) is constant, e.g. S = c I.
    """
    n_samples = int(n_samples)
    if n_samples < 100:
        raise ValueError(f"n_samples must be at least 100, got {n_samples}")
    values = np.empty(n_samples)
    for i in range(n_samples):
        flat = sample_uniform(params.k, params.n, rng)
        values[i] = math.exp(float(np.sum(params.S * projection_coords(flat).P)))
    estimate = float(values.mean())
    std_error = float(values.std(ddof=1) / math.sqrt(n_samples))
    return estimate, std_error


def grassmann_normalizer(S, k: int, n: int, n_samples: int, rng: RandomStream) -> tuple[float, float]:
    """Normalizer of the Langevin density on k-planes in R^n (no affine part).

    Same estimator as :func:`langevin_normalizer` but over the uniform
    measure on linear k-planes; used for the linear factor of the
    Langevin-Gaussian density.
    """
    k, n = int(k), int(n)
    if not 0 <= k <= n:
        raise DimensionError(f"need 0 <= k <= n, got k={k}, n={n}")
    n_samples = int(n_samples)
    if n_samples < 100:
        raise ValueError(f"n_samples must be at least 100, got {n_samples}")
    S = _symmetric_matrix(S, n, "S")
    values = np.empty(n_samples)
    for i in range(n_samples):
        A = _uniform_frame(n, k, rng)
        values[i] = math.exp(float(np.sum(S * (A @ A.T))))
    estimate = float(values.mean())
    std_error = float(values.std(ddof=1) / math.sqrt(n_samples))
    return estimate, std_error


def _geodesic_step(Y: np.ndarray, tangent: np.ndarray) -> np.ndarray:
    """Move from span(Y) along a horizontal tangent, distance ||tangent||_F."""
    Qh, d, Wt = np.linalg.svd(tangent, full_matrices=False)
    Z = Y @ Wt.T @ np.diag(np.cos(d)) + Qh @ np.diag(np.sin(d))
    # Re-orthonormalize to stop drift over long chains.
    Q, _ = np.linalg.qr(Z)
    return Q


def _frame_mh_states(log_density, Y0: np.ndarray, n_steps: int, step_size: float,
                     rng: RandomStream, require_flat: bool):
    """Metropolis-Hastings chain on spans of orthonormal frames.

    Proposals are geodesic steps along isotropic Gaussian horizontal tangents
    scaled by ``step_size``; the proposal law depends only on the principal
    angles between current and proposed span, hence is symmetric.  With
    ``require_flat`` the chain auto-rejects proposals whose last row is
    numerically zero (spans that are not flats).  Yields (Y, accepted).
    """
    Y = Y0
    current = log_density(Y)
    for _ in range(n_steps):
        G = rng.standard_normal(Y.shape)
        tangent = step_size * (G - Y @ (Y.T @ G))
        proposal = _geodesic_step(Y, tangent)
        accepted = False
        if not (require_flat and np.linalg.norm(proposal[-1]) < 1e-10):
            new = log_density(proposal)
            if math.log(max(rng.uniform(), 1e-300)) <= new - current:
                Y, current, accepted = proposal, new, True
        yield Y, accepted


def langevin_mh_run(
    params: LangevinParams,
    n_steps: int,
    step_size: float,
    rng: RandomStream,
    burn_in: int = 0,
    thin: int = 1,
    init: AffineFlat | None = None,
) -> tuple[list[AffineFlat], float]:
    """Run a Metropolis-Hastings chain targeting the Langevin density.

    Returns the retained flats (after ``burn_in``, every ``thin``-th state)
    and the overall acceptance rate.  The chain lives on spans of Stiefel
    coordinates; tr(S P) is basis-free, so the density needs no
    canonicalization per step.
    """
    n_steps = int(n_steps)
    if n_steps < 1:
        raise ValueError("n_steps must be at least 1")
    if not step_size > 0.0:
        raise ValueError("step_size must be positive")
    if init is None:
        init = sample_uniform(params.k, params.n, rng)
    _check_params(init, params)
    Y0 = np.array(stiefel_coords(init).Y)

    def log_density(Y):
        return float(np.sum(params.S * (Y @ Y.T)))

    samples: list[AffineFlat] = []
    accepted_count = 0
    for step, (Y, accepted) in enumerate(
        _frame_mh_states(log_density, Y0, n_steps, step_size, rng, require_flat=True)
    ):
        accepted_count += accepted
        if step >= burn_in and (step - burn_in) % thin == 0:
            samples.append(unembed(Y))
    return samples, accepted_count / n_steps


def sample_langevin(
    params: LangevinParams,
    n_steps: int,
    step_size: float,
    rng: RandomStream,
    init: AffineFlat | None = None,
) -> AffineFlat:
    """Final state of an ``n_steps``-long Metropolis-Hastings Langevin chain."""
    samples, _ = langevin_mh_run(
        params, n_steps, step_size, rng, burn_in=int(n_steps) - 1, thin=1, init=init
    )
    return samples[-1]


def langevin_gaussian_log_density(
    flat: AffineFlat,
    params: LangevinGaussianParams,
    unnormalized: bool = False,
    n_samples: int = 2000,
    rng: RandomStream | None = None,
) -> float:
    """Log density of the Langevin-Gaussian distribution at a flat.

    The value is tr(S A A^T) - |b0|^2 / (2 sigma^2) - ((n-k)/2) log(2 pi
    sigma^2) minus the log normalizer of the Langevin factor on linear
    k-planes in R^n.  That normalizer is estimated by Monte Carlo, so a
    generator must be supplied unless ``unnormalized`` is set; for S = 0 the
    estimate is exactly 1.
    """
    _check_params(flat, params)
    n, k = params.n, params.k
    value = float(np.sum(params.S * (flat.A @ flat.A.T)))
    value -= float(flat.b0 @ flat.b0) / (2.0 * params.sigma2)
    value -= 0.5 * (n - k) * math.log(2.0 * math.pi * params.sigma2)
    if not unnormalized:
        if rng is None:
            raise ValueError("a random stream is required to estimate the normalizer")
        normalizer, _ = grassmann_normalizer(params.S, k, n, n_samples, rng)
        value -= math.log(normalizer)
    return value


def _conditional_displacement(A: np.ndarray, sigma2: float, rng: RandomStream) -> np.ndarray:
    """Spherical Gaussian on the orthogonal complement of span(A)."""
    n = A.shape[0]
    z = math.sqrt(sigma2) * rng.standard_normal(n)
    if A.shape[1]:
        z = z - A @ (A.T @ z)
    return z


def langevin_gaussian_run(
    params: LangevinGaussianParams,
    count: int,
    config: MHConfig,
    rng: RandomStream,
) -> list[AffineFlat]:
    """Draw ``count`` flats from the Langevin-Gaussian distribution.

    The linear parts come from one Metropolis-Hastings chain on k-planes in
    R^n (burn-in then thinning per ``config``); each retained plane gets an
    independent Gaussian displacement in its orthogonal complement.
    """
    count = int(count)
    if count < 1:
        raise ValueError("count must be at least 1")
    n, k = params.n, params.k
    flats: list[AffineFlat] = []
    if k == 0:
        A = np.zeros((n, 0))
        for _ in range(count):
            flats.append(AffineFlat(A, _conditional_displacement(A, params.sigma2, rng)))
        return flats

    def log_density(Y):
        return float(np.sum(params.S * (Y @ Y.T)))

    Y0 = _uniform_frame(n, k, rng)
    n_steps = config.burn_in + 1 + (count - 1) * config.thin
    for step, (Y, _) in enumerate(
        _frame_mh_states(log_density, Y0, n_steps, config.step_size, rng, require_flat=False)
    ):
        if step >= config.burn_in and (step - config.burn_in) % config.thin == 0:
            flats.append(AffineFlat(Y, _conditional_displacement(Y, params.sigma2, rng)))
            if len(flats) == count:
                break
    return flats


def sample_langevin_gaussian(
    params: LangevinGaussianParams,
    config: MHConfig | None = None,
    rng: RandomStream | None = None,
) -> AffineFlat:
    """Draw one flat from the Langevin-Gaussian distribution."""
    if rng is None:
        raise ValueError("a random stream is required")
    return langevin_gaussian_run(params, 1, config or MHConfig(), rng)[0]
