"""Reproducible sampling of Gaussian, Wishart and random reduced density matrices.

Random streams come from the counter-based Philox generator.  The stream for
trial ``k`` of a run seeded with ``seed`` is keyed by ``SeedSequence(seed,
spawn_key=(k,))``, so any trial can be regenerated on its own and trials can be
farmed out to workers in any order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import blas

from wre.errors import DegenerateInputError, ParameterError

_SEED_LIMIT = 2**64

TRACE_RTOL = 1e-12
PSD_ATOL = 1e-10


def seed_sequence(seed, *keys: int) -> np.random.SeedSequence:
    """Return the seed sequence for ``seed`` refined by integer ``keys``."""
    if isinstance(seed, np.random.SeedSequence):
        if keys:
            return np.random.SeedSequence(
                seed.entropy, spawn_key=tuple(seed.spawn_key) + tuple(keys)
            )
        return seed
    seed = int(seed)
    if not 0 <= seed < _SEED_LIMIT:
        raise ParameterError(f"seed must be a 64-bit unsigned integer, got {seed}")
    for k in keys:
        if int(k) < 0:
            raise ParameterError(f"stream keys must be non-negative, got {k}")
    return np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in keys))


def generator(seed, *keys: int) -> np.random.Generator:
    """Philox generator for ``seed`` and optional stream ``keys``."""
    return np.random.Generator(np.random.Philox(seed_sequence(seed, *keys)))


def sample_gaussian_matrix(
    rows: int, cols: int, mean: float, stddev: float, seed
) -> np.ndarray:
    """Draw a ``rows x cols`` matrix of i.i.d. complex Gaussians.

    Each entry is ``(g1 + i g2) / sqrt(2) * stddev + mean`` with ``g1, g2``
    standard normal, so ``E|x - mean|^2 = stddev**2``.

    Parameters
    ----------
    rows, cols : int
        Matrix shape, both at least 1.
    mean : float
        Entry mean (real).
    stddev : float
        Complex standard deviation, strictly positive.
    seed : int or numpy.random.SeedSequence
        Stream identifier; equal inputs give bit-identical output.

    Returns
    -------
    numpy.ndarray
        Complex128 array of shape ``(rows, cols)``.
    """
    rows, cols = int(rows), int(cols)
    if rows < 1 or cols < 1:
        raise ParameterError(f"dimensions must be positive, got {rows}x{cols}")
    if not stddev > 0 or not np.isfinite(stddev):
        raise ParameterError(f"stddev must be positive and finite, got {stddev}")
    if not np.isfinite(mean):
        raise ParameterError(f"mean must be finite, got {mean}")
    rng = generator(seed)
    g = rng.standard_normal((rows, cols, 2))
    scale = stddev / np.sqrt(2.0)
    out = np.empty((rows, cols), dtype=np.complex128)
    out.real = g[..., 0] * scale + mean
    out.imag = g[..., 1] * scale
    return out


def _gram_upper(X: np.ndarray, scale: float) -> np.ndarray:
    """``scale * X X^dagger`` from its upper triangle, mirrored to be exactly Hermitian."""
    if np.iscomplexobj(X):
        upper = blas.zherk(scale, np.asarray(X, dtype=np.complex128), lower=0)
        upper = np.triu(upper)
        out = upper + np.triu(upper, 1).conj().T
        out[np.diag_indices_from(out)] = out.diagonal().real
    else:
        upper = blas.dsyrk(scale, np.asarray(X, dtype=np.float64), lower=0)
        upper = np.triu(upper)
        out = (upper + np.triu(upper, 1).T).astype(np.complex128)
    return out


def wishart(X: np.ndarray, beta: int) -> np.ndarray:
    """Return ``Y = X X^dagger / beta``.

    ``beta`` must equal the number of columns of ``X``; only the upper
    triangle is computed and then mirrored, so ``Y`` is exactly Hermitian.
    """
    X = np.asarray(X)
    if X.ndim != 2:
        raise ParameterError(f"X must be a matrix, got shape {X.shape}")
    if int(beta) != X.shape[1]:
        raise ParameterError(f"beta={beta} does not match X.cols={X.shape[1]}")
    if not np.all(np.isfinite(X)):
        raise ParameterError("X contains non-finite entries")
    return _gram_upper(X, 1.0 / beta)


def trace_gram(Z: np.ndarray) -> float:
    """``Tr(Z Z^dagger)`` computed as the direct sum of ``|Z_ij|^2``."""
    Z = np.asarray(Z)
    return float(np.sum(Z.real**2) + np.sum(Z.imag**2)) if np.iscomplexobj(Z) else float(
        np.sum(Z**2)
    )


def reduced_density(Z: np.ndarray) -> np.ndarray:
    """Trace-normalised Gram matrix ``rho = Z Z^dagger / Tr(Z Z^dagger)``."""
    Z = np.asarray(Z)
    if Z.ndim == 1:
        Z = Z[None, :]
    if Z.ndim != 2:
        raise ParameterError(f"Z must be a matrix, got shape {Z.shape}")
    if not np.all(np.isfinite(Z)):
        raise ParameterError("Z contains non-finite entries")
    tr = trace_gram(Z)
    if tr == 0.0:
        raise DegenerateInputError("Z is identically zero; rho is undefined")
    return _gram_upper(Z, 1.0 / tr)


def check_density_matrix(rho: np.ndarray) -> None:
    """Raise ``ParameterError`` unless ``rho`` is Hermitian, unit-trace and PSD."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ParameterError(f"density matrix must be square, got {rho.shape}")
    if not np.array_equal(rho, rho.conj().T):
        raise ParameterError("density matrix is not exactly Hermitian")
    tr = np.trace(rho)
    if abs(tr.imag) > TRACE_RTOL or abs(tr.real - 1.0) > TRACE_RTOL:
        raise ParameterError(f"density matrix trace is {tr}, expected 1")
    lo = np.linalg.eigvalsh(rho)[0]
    if lo < -PSD_ATOL:
        raise ParameterError(f"density matrix has negative eigenvalue {lo}")


@dataclass(frozen=True)
class EnsembleSpec:
    """Parameters of a decentralised complex Gaussian ensemble.

    ``gamma`` and ``sigma`` are the *sampling* mean and deviation of the raw
    entries.  Only the ratio ``gamma / sigma`` survives trace normalisation;
    the post-normalisation spread is fixed by ``alpha (gamma_n^2 + sigma_n^2) = 1``.
    """

    alpha: int
    beta: int
    gamma: float = 0.0
    sigma: float = 1.0
    seed: int = 0
    trials: int = 1

    def __post_init__(self):
        if self.alpha < 1 or self.beta < 1:
            raise ParameterError("alpha and beta must be positive")
        if self.alpha > self.beta:
            raise ParameterError(f"alpha={self.alpha} must not exceed beta={self.beta}")
        if not self.sigma > 0:
            raise ParameterError(f"sigma must be positive, got {self.sigma}")
        if not self.gamma >= 0:
            raise ParameterError(f"gamma must be non-negative, got {self.gamma}")
        if self.trials < 1:
            raise ParameterError(f"trials must be positive, got {self.trials}")
        seed_sequence(self.seed)


def sample_ensemble_matrix(spec: EnsembleSpec, trial_index: int) -> np.ndarray:
    """Raw ``alpha x beta`` sample ``Z`` for trial ``trial_index`` of ``spec``."""
    return sample_gaussian_matrix(
        spec.alpha, spec.beta, spec.gamma, spec.sigma, seed_sequence(spec.seed, trial_index)
    )


def random_reduced_density(spec: EnsembleSpec, trial_index: int) -> np.ndarray:
    """Random reduced density matrix for trial ``trial_index`` of ``spec``."""
    return reduced_density(sample_ensemble_matrix(spec, trial_index))


def sampling_mean_for_lambda0(lambda0: float) -> float:
    """Sampling mean (with unit deviation) whose ensemble has dominant eigenvalue ``lambda0``.

    After normalisation the entry mean ``g`` and variance ``s^2`` satisfy
    ``lambda0 = alpha g^2`` and ``alpha (g^2 + s^2) = 1``, giving a raw
    mean-to-deviation ratio of ``sqrt(lambda0 / (1 - lambda0))``.
    """
    if not 0.0 <= lambda0 < 1.0:
        raise ParameterError(f"lambda0 must lie in [0, 1), got {lambda0}")
    return float(np.sqrt(lambda0 / (1.0 - lambda0)))


def normalized_moments(Z: np.ndarray) -> tuple[float, float]:
    """Mean and variance of the entries of ``sqrt(beta) Z / sqrt(Tr Z Z^dagger)``.

    These are the normalised parameters ``(gamma, sigma_gamma^2)`` for which
    ``rho = X X^dagger / beta``; they satisfy ``alpha (|gamma|^2 + sigma^2) = 1``.
    """
    Z = np.asarray(Z)
    X = Z * np.sqrt(Z.shape[1] / trace_gram(Z))
    g = X.mean()
    var = float(np.mean(np.abs(X - g) ** 2))
    return float(abs(g)), var
