"""Hermitian spectra, empirical spectral distributions and the Marchenko-Pastur law."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from wre.errors import ContractError, ParameterError
from wre.quadrature import adaptive_simpson
from wre.randmat import generator

HERMITIAN_ATOL = 1e-12
TRACE_RTOL = 1e-10
CDF_TOL = 1e-10


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted in descending order together with the source trace."""

    values: np.ndarray
    source_trace: float

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise ParameterError("spectrum values must be one-dimensional")
        if values.size > 1 and np.any(np.diff(values) > 0):
            raise ParameterError("spectrum values must be sorted in descending order")
        scale = max(abs(self.source_trace), float(np.sum(np.abs(values))), 1e-300)
        if abs(float(values.sum()) - self.source_trace) > TRACE_RTOL * scale:
            raise ParameterError(
                f"eigenvalue sum {values.sum()} does not match trace {self.source_trace}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_values(cls, values) -> "Spectrum":
        """Spectrum of arbitrary values; sorts them and uses their sum as the trace."""
        v = np.sort(np.asarray(values, dtype=np.float64))[::-1]
        return cls(v, float(v.sum()))

    def __len__(self) -> int:
        return self.values.size

    @property
    def lambda0(self) -> float:
        return float(self.values[0])


def hermitian_eigenvalues(M: np.ndarray, atol: float = HERMITIAN_ATOL) -> Spectrum:
    """Eigenvalues of a Hermitian matrix, descending.

    Raises
    ------
    ContractError
        If ``M`` is not square or deviates from Hermiticity by more than ``atol``.
    """
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ContractError(f"expected a square matrix, got shape {M.shape}")
    dev = np.max(np.abs(M - M.conj().T)) if M.size else 0.0
    if dev > atol:
        raise ContractError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    values = np.linalg.eigvalsh(M)[::-1]
    return Spectrum(values.copy(), float(np.trace(M).real))


@dataclass(frozen=True)
class MpdParams:
    """Marchenko-Pastur law with scale ``sigma_sq`` and ratio ``lambda_ratio = alpha/beta``."""

    sigma_sq: float
    lambda_ratio: float
    lambda_minus: float
    lambda_plus: float
    point_mass: float

    @classmethod
    def from_ratio(cls, sigma_sq: float, lambda_ratio: float) -> "MpdParams":
        lo, hi = mpd_edges(sigma_sq, lambda_ratio)
        return cls(sigma_sq, lambda_ratio, lo, hi, max(0.0, 1.0 - 1.0 / lambda_ratio))

    @property
    def bulk_mass(self) -> float:
        """Mass carried by the continuous part, ``1 - point_mass``."""
        return 1.0 - self.point_mass


def mpd_edges(sigma_sq: float, lambda_ratio: float) -> tuple[float, float]:
    """Support edges ``sigma^2 (1 -/+ sqrt(lambda))^2`` of the bulk."""
    if not sigma_sq > 0 or not lambda_ratio > 0:
        raise ParameterError("sigma_sq and lambda_ratio must be positive")
    r = math.sqrt(lambda_ratio)
    return sigma_sq * (1.0 - r) ** 2, sigma_sq * (1.0 + r) ** 2


def mpd_pdf(x, params: MpdParams):
    """Continuous Marchenko-Pastur density; zero outside ``[lambda_-, lambda_+]``.

    The atom at zero for ``lambda_ratio > 1`` is not part of this density; see
    ``params.point_mass``.
    """
    x_arr = np.asarray(x, dtype=np.float64)
    lo, hi = params.lambda_minus, params.lambda_plus
    inside = (x_arr >= lo) & (x_arr <= hi) & (x_arr > 0)
    out = np.zeros_like(x_arr)
    xi = x_arr[inside]
    out[inside] = np.sqrt(np.maximum((hi - xi) * (xi - lo), 0.0)) / (
        2.0 * math.pi * params.sigma_sq * params.lambda_ratio * xi
    )
    return float(out) if out.ndim == 0 else out


def _theta_of(x: np.ndarray, lo: float, hi: float) -> np.ndarray:
    u = np.clip((x - lo) / (hi - lo), 0.0, 1.0)
    return np.arcsin(np.sqrt(u))


def _bulk_integrand(params: MpdParams):
    # Density in the angle variable x = lo + (hi - lo) sin^2(theta); smooth at both edges.
    lo, hi = params.lambda_minus, params.lambda_plus
    width = hi - lo
    pref = 2.0 * width / (2.0 * math.pi * params.sigma_sq * params.lambda_ratio)
    if lo == 0.0:
        return lambda t: pref * math.cos(t) ** 2
    def g(t):
        s2 = math.sin(t) ** 2
        return pref * width * s2 * (1.0 - s2) / (lo + width * s2)
    return g


def mpd_cdf(x, params: MpdParams, tol: float = CDF_TOL):
    """Cumulative Marchenko-Pastur distribution including the atom at zero.

    Array inputs are integrated piecewise between consecutive sorted points with
    adaptive Simpson, so the cost is one pass over the support.
    """
    x_arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    lo, hi = params.lambda_minus, params.lambda_plus
    thetas = _theta_of(x_arr, lo, hi)
    order = np.argsort(thetas, kind="stable")
    g = _bulk_integrand(params)
    half_pi = math.pi / 2.0
    cumulative = np.empty_like(thetas)
    acc, prev = 0.0, 0.0
    for idx in order:
        t = float(thetas[idx])
        if t > prev:
            acc += adaptive_simpson(g, prev, t, max(tol * (t - prev) / half_pi, 1e-15))
            prev = t
        cumulative[idx] = acc
    out = cumulative + params.point_mass * (x_arr >= 0.0)
    out = np.where(x_arr < 0.0, 0.0, np.clip(out, 0.0, 1.0))
    return float(out[0]) if np.ndim(x) == 0 else out


def mpd_bulk_mass(params: MpdParams, tol: float = CDF_TOL) -> float:
    """Integral of ``mpd_pdf`` over its support."""
    return adaptive_simpson(_bulk_integrand(params), 0.0, math.pi / 2.0, tol)


@dataclass(frozen=True)
class Histogram:
    """Density-normalised histogram: ``sum(densities * widths) == 1``."""

    bin_edges: np.ndarray
    densities: np.ndarray

    def __post_init__(self):
        if len(self.bin_edges) != len(self.densities) + 1:
            raise ParameterError("need exactly one more edge than densities")

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.bin_edges)

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[1:] + self.bin_edges[:-1])


def default_bins(n_values: int) -> int:
    return max(1, math.ceil(math.sqrt(n_values)))


def _values_of(spectrum) -> np.ndarray:
    if isinstance(spectrum, Spectrum):
        return spectrum.values
    return np.asarray(spectrum, dtype=np.float64)


def esd(spectrum, bins: int | None = None) -> Histogram:
    """Empirical spectral distribution as a density histogram (``ceil(sqrt(n))`` bins by default)."""
    values = _values_of(spectrum)
    if values.size == 0:
        raise ParameterError("empty spectrum")
    bins = default_bins(values.size) if bins is None else int(bins)
    if bins < 1:
        raise ParameterError(f"bins must be >= 1, got {bins}")
    densities, edges = np.histogram(values, bins=bins, density=True)
    return Histogram(edges, densities)


def ks_distance(spectrum, params: MpdParams) -> float:
    """Sup-distance between the empirical CDF of ``spectrum`` and ``mpd_cdf``.

    Descriptive only: eigenvalues are strongly correlated, so no p-value applies.
    """
    values = np.sort(_values_of(spectrum))
    n = values.size
    if n == 0:
        raise ParameterError("empty spectrum")
    F = mpd_cdf(values, params)
    upper = np.arange(1, n + 1) / n
    lower = np.arange(0, n) / n
    return float(max(np.max(upper - F), np.max(F - lower)))


def laguerre_spectrum(alpha: int, beta: int, sigma_sq: float, seed) -> Spectrum:
    """Eigenvalues of ``X X^dagger / beta`` sampled through the bidiagonal Laguerre model.

    For complex Gaussian ``X`` (``alpha <= beta``) the eigenvalues of ``X X^dagger``
    have the same joint law as those of ``B B^T`` with ``B`` lower bidiagonal,
    ``B_ii ~ chi_{2(beta-i)}/sqrt 2`` and ``B_{i+1,i} ~ chi_{2(alpha-1-i)}/sqrt 2``.
    Costs ``O(alpha^2)`` instead of ``O(alpha^2 beta)``.
    """
    if not 1 <= alpha <= beta:
        raise ParameterError("laguerre_spectrum requires 1 <= alpha <= beta")
    if not sigma_sq > 0:
        raise ParameterError("sigma_sq must be positive")
    rng = generator(seed)
    i = np.arange(alpha)
    d2 = rng.gamma(beta - i)
    e2 = rng.gamma(alpha - 1 - i[:-1]) if alpha > 1 else np.empty(0)
    diag = d2.copy()
    diag[1:] += e2
    off = np.sqrt(e2 * d2[:-1])
    values = eigvalsh_tridiagonal(diag, off)[::-1] * (sigma_sq / beta)
    return Spectrum(values.copy(), float(diag.sum() * sigma_sq / beta))


def dominant_eigenvalue_prediction(
    alpha: int, gamma: float, sigma_sq_gamma: float | None = None
) -> float:
    """Predicted dominant eigenvalue ``alpha * gamma^2`` of a decentralised Wishart matrix.

    Only meaningful when the prediction sits well above the bulk edge.  If
    ``sigma_sq_gamma`` is given, ``(gamma, sigma_sq_gamma)`` are taken as the
    normalised entry parameters and must satisfy ``alpha (gamma^2 + sigma^2) = 1``.
    """
    if alpha < 1:
        raise ParameterError("alpha must be >= 1")
    if gamma < 0:
        raise ParameterError("gamma must be non-negative")
    pred = alpha * gamma * gamma
    if sigma_sq_gamma is not None:
        if sigma_sq_gamma < 0:
            raise ParameterError("sigma_sq_gamma must be non-negative")
        if abs(alpha * (gamma * gamma + sigma_sq_gamma) - 1.0) > 1e-9:
            raise ParameterError("normalised parameters violate alpha (gamma^2 + sigma^2) = 1")
    return pred


def bulk_edge(alpha: int, beta: float, lambda0: float) -> float:
    """Right bulk edge ``((1 - lambda0) / alpha) (1 + sqrt(alpha / beta))^2`` of a normalised rho."""
    ratio = 0.0 if math.isinf(beta) else alpha / beta
    return (1.0 - lambda0) / alpha * (1.0 + math.sqrt(ratio)) ** 2
