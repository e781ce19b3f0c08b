"""Entropies of spectra and their closed forms in terms of the dominant eigenvalue.

All logarithms are natural.  In the closed forms the dominant eigenvalue
``lambda0`` is separated from a Marchenko-Pastur bulk with normalised variance
``sigma^2 = (1 - lambda0) / alpha``; ``beta = math.inf`` selects the infinite
environment limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from wre.errors import ContractError, DegenerateInputError, DomainError, ParameterError
from wre.spectral import Spectrum, bulk_edge, mpd_edges

NEG_CLAMP = 1e-10
SUM_TOL = 1e-8
LAMBDA0_SLACK = 1e-9


def _normalized_values(spectrum) -> np.ndarray:
    v = spectrum.values if isinstance(spectrum, Spectrum) else np.asarray(spectrum, float)
    v = np.asarray(v, dtype=np.float64)
    if v.size == 0:
        raise ParameterError("empty spectrum")
    if np.min(v) < -NEG_CLAMP:
        raise ContractError(f"spectrum has negative eigenvalue {np.min(v):.3e}")
    total = float(v.sum())
    if abs(total - 1.0) > SUM_TOL:
        raise ContractError(f"spectrum sums to {total}, expected 1")
    return np.clip(v, 0.0, None)


def von_neumann(spectrum) -> float:
    """``-sum(l ln l)`` with ``0 ln 0 = 0``."""
    v = _normalized_values(spectrum)
    v = v[v > 0]
    return max(float(-np.sum(v * np.log(v))), 0.0) + 0.0


def renyi(spectrum, d: float) -> float:
    """Renyi entropy ``ln(sum l^d) / (1 - d)`` for ``d > 0``, ``d != 1``."""
    if d == 1:
        raise ParameterError("d = 1 is the von Neumann entropy; call von_neumann")
    if not d > 0:
        raise ParameterError(f"Renyi degree must be positive, got {d}")
    v = _normalized_values(spectrum)
    v = v[v > 0]
    top = float(v.max())
    # ln sum l^d = d ln top + ln sum (l/top)^d, stable for large d
    log_sum = d * math.log(top) + math.log(float(np.sum((v / top) ** d)))
    return max(log_sum / (1.0 - d), 0.0) + 0.0


def renyi_min(spectrum) -> float:
    """Min-entropy ``-ln lambda0``."""
    v = _normalized_values(spectrum)
    top = float(v.max())
    if top <= 0:
        raise DegenerateInputError("dominant eigenvalue must be positive")
    return max(-math.log(top), 0.0) + 0.0


def gap_empirical(spectrum) -> float:
    """Entanglement gap ``xi_1 - xi_0 = ln lambda0 - ln lambda1``."""
    v = np.sort(spectrum.values if isinstance(spectrum, Spectrum) else np.asarray(spectrum))[::-1]
    if v.size < 2:
        raise ParameterError("gap needs at least two eigenvalues")
    if v[1] <= 0:
        raise DegenerateInputError(f"second eigenvalue {v[1]} is not positive")
    return float(math.log(v[0]) - math.log(v[1]))


def page_entropy(alpha: int, beta: float) -> float:
    """Average subsystem entropy ``ln alpha - alpha / (2 beta)``."""
    if alpha < 1:
        raise ParameterError("alpha must be >= 1")
    if alpha > beta:
        raise ParameterError(f"alpha={alpha} exceeds beta={beta}")
    return math.log(alpha) - (0.0 if math.isinf(beta) else alpha / (2.0 * beta))


def _check_closed_form(alpha, beta, lambda0):
    if alpha < 1:
        raise ParameterError("alpha must be >= 1")
    if alpha > beta:
        raise ParameterError(f"alpha={alpha} exceeds beta={beta}")
    if not -LAMBDA0_SLACK <= lambda0 <= 1.0 + LAMBDA0_SLACK:
        raise ParameterError(f"lambda0 must lie in [0, 1], got {lambda0}")


def entropy_given_lambda0(alpha: int, beta: float, lambda0: float) -> float:
    """Von Neumann entropy of a random reduced density matrix with dominant eigenvalue ``lambda0``.

    Parameters
    ----------
    alpha : int
        Subsystem dimension.
    beta : int or float
        Environment dimension, ``alpha <= beta``; ``math.inf`` for the limit.
    lambda0 : float
        Dominant eigenvalue.  ``lambda0 <= 0`` returns the Page entropy and
        ``lambda0 >= 1`` returns 0 (pure state).

    Raises
    ------
    DomainError
        If the logarithm argument of the closed form is not positive.
    """
    _check_closed_form(alpha, beta, lambda0)
    if lambda0 <= 0.0:
        return page_entropy(alpha, beta)
    if lambda0 >= 1.0:
        return 0.0
    a, l0, q = float(alpha), lambda0, 1.0 - lambda0
    if math.isinf(beta):
        return (
            (-2.0 * math.log(2.0) - math.log(a) - math.log(l0)) * l0
            + (l0 - 1.0) * math.log(4.0 - 4.0 * l0)
            + 2.0 * math.log(2.0)
            + math.log(a)
        )
    b = float(beta)
    arg = -2.0 * ((a + b) * l0 - (b - a) * q - a - b) / (a * b)
    if not arg > 0:
        raise DomainError(f"log argument {arg} <= 0 at alpha={alpha}, beta={beta}, lambda0={l0}")
    total = (
        -4.0 * a * b * l0 * math.log(l0)
        + (8.0 * a * b * math.log(2.0) - a * a - b * b) * q
        - 4.0 * a * b * q * math.log(arg)
        + (a + b) * (b - a) * q
    )
    return total / (4.0 * a * b)


def gap_given_lambda0(alpha: int, beta: float, lambda0: float) -> float:
    """Entanglement gap when the second eigenvalue sits at the bulk edge."""
    _check_closed_form(alpha, beta, lambda0)
    if not 0.0 < lambda0 < 1.0:
        raise ParameterError(f"gap closed form needs 0 < lambda0 < 1, got {lambda0}")
    return math.log(lambda0) - math.log(bulk_edge(alpha, beta, lambda0))


def renyi1_analytic(alpha: int, lambda0: float) -> float:
    """Von Neumann entropy versus ``lambda0`` for the square case ``beta = alpha``."""
    _check_closed_form(alpha, alpha, lambda0)
    if lambda0 <= 0.0:
        return math.log(alpha) - 0.5
    if lambda0 >= 1.0:
        return 0.0
    l0, q = lambda0, 1.0 - lambda0
    return (
        q * math.log(alpha / (4.0 * q))
        - 0.5 * l0 * (4.0 * math.log(2.0) - 1.0)
        - l0 * math.log(l0)
        + 2.0 * math.log(2.0)
        - 0.5
    )


def renyi2_analytic(alpha: int, lambda0: float) -> float:
    """Collision entropy versus ``lambda0`` for ``beta = alpha``."""
    _check_closed_form(alpha, alpha, lambda0)
    l0 = min(max(lambda0, 0.0), 1.0)
    arg = (l0 * l0 * (alpha + 2) - 4.0 * l0 + 2.0) / alpha
    if not arg > 0:
        raise DomainError(f"collision-entropy argument {arg} <= 0")
    return -math.log(arg)


def catalan(d: int) -> int:
    return math.comb(2 * d, d) // (d + 1)


def moment_coefficient(d: int) -> Fraction:
    """``c_d`` in ``int_0^t x^(d-1) sqrt((t-x) x) dx = c_d pi t^(d+1)``, i.e. ``Catalan(d) / 2^(2d+1)``."""
    if d < 1:
        raise ParameterError("moment degree must be >= 1")
    return Fraction(catalan(d), 2 ** (2 * d + 1))


MOMENT_TABLE = {2: Fraction(1, 16), 3: Fraction(5, 128), 4: Fraction(7, 256),
                5: Fraction(21, 1024), 6: Fraction(33, 2048)}


def moment_integral(t: float, d: int) -> float:
    """Closed form of ``int_0^t x^(d-1) sqrt((t-x) x) dx``."""
    return float(moment_coefficient(d)) * math.pi * t ** (d + 1)


def renyi_d_analytic(alpha: int, lambda0: float, d: int) -> float:
    """Integer-degree Renyi entropy versus ``lambda0`` for ``beta = alpha``, ``2 <= d <= 12``."""
    if int(d) != d or not 2 <= d <= 12:
        raise ParameterError(f"degree must be an integer in [2, 12], got {d}")
    d = int(d)
    _check_closed_form(alpha, alpha, lambda0)
    l0 = min(max(lambda0, 0.0), 1.0)
    sigma_sq = (1.0 - l0) / alpha
    t = 4.0 * sigma_sq
    if sigma_sq == 0.0:
        bulk = 0.0
    else:
        bulk = alpha / (2.0 * math.pi * sigma_sq) * moment_integral(t, d)
    return math.log(bulk + l0**d) / (1.0 - d) + 0.0


def integral_A1(a: float, b: float) -> float:
    """``int_a^b sqrt((b-x)(x-a)) dx = pi (b-a)^2 / 8``."""
    if b < a:
        raise ParameterError("need b >= a")
    return math.pi * (b - a) ** 2 / 8.0


def integral_A2(a: float, b: float) -> float:
    """``int_a^b ln(x) sqrt((b-x)(x-a)) dx`` for ``0 < a <= b``."""
    if not a > 0:
        raise DomainError(f"integral_A2 needs a > 0, got {a}")
    if b < a:
        raise ParameterError("need b >= a")
    r = math.sqrt(a * b)
    diff2 = (a - b) ** 2
    return (math.pi / 16.0) * (
        a * a + 6.0 * a * b + b * b
        - 4.0 * r * (a + b)
        - 4.0 * diff2 * math.log(2.0)
        + 2.0 * diff2 * math.log(a + b + 2.0 * r)
    )


def integral_A4(b: float) -> float:
    """``int_0^b ln(x) sqrt(x (b-x)) dx`` for ``b > 0``."""
    if not b > 0:
        raise DomainError(f"integral_A4 needs b > 0, got {b}")
    return (math.pi / 16.0) * (2.0 * b * b * math.log(b) - b * b * (4.0 * math.log(2.0) - 1.0))


def entropy_from_bulk_integral(alpha: int, beta: float, lambda0: float) -> float:
    """Entropy assembled from the bulk log-integral instead of the reduced closed form.

    ``lambda0 = 0`` gives the Page entropy via the same route.
    """
    _check_closed_form(alpha, beta, lambda0)
    if math.isinf(beta):
        raise ParameterError("finite beta required")
    l0 = min(max(lambda0, 0.0), 1.0)
    if l0 == 1.0:
        return 0.0
    sigma_sq = (1.0 - l0) / alpha
    ratio = alpha / beta
    lo, hi = mpd_edges(sigma_sq, ratio)
    if lo > 0:
        log_integral = integral_A2(lo, hi)
    else:
        log_integral = integral_A4(hi)
    head = -l0 * math.log(l0) if l0 > 0 else 0.0
    return -alpha / (2.0 * math.pi * sigma_sq * ratio) * log_integral + head


def bulk_mass_prediction(alpha: int, beta: float, sigma_sq: float) -> float:
    """Bulk eigenvalue mass ``alpha * int x dnu`` evaluated with the A1 integral (``= alpha sigma^2``)."""
    ratio = 0.0 if math.isinf(beta) else alpha / beta
    if ratio == 0.0:
        return alpha * sigma_sq
    lo, hi = mpd_edges(sigma_sq, ratio)
    return alpha / (2.0 * math.pi * ratio * sigma_sq) * integral_A1(lo, hi)


CROSSOVER_FACTOR = 1.5


def is_crossover(alpha: int, beta: float, lambda0: float) -> bool:
    """True when ``lambda0`` is within ``1.5x`` of the bulk edge (closed forms not expected to hold)."""
    return lambda0 < CROSSOVER_FACTOR * bulk_edge(alpha, beta, lambda0)


@dataclass
class EntropyReport:
    """Entropies of one spectrum."""

    lambda0: float
    von_neumann: float
    gap: float
    alpha: int
    beta: float
    renyi: dict[float, float] = field(default_factory=dict)


def entropy_report(spectrum, alpha: int, beta: float, degrees=(2.0,)) -> EntropyReport:
    v = _normalized_values(spectrum)
    v = np.sort(v)[::-1]
    gap = gap_empirical(v) if v.size > 1 and v[1] > 0 else math.inf
    return EntropyReport(
        lambda0=float(v[0]),
        von_neumann=von_neumann(v),
        gap=gap,
        alpha=alpha,
        beta=beta,
        renyi={d: renyi(v, d) for d in degrees},
    )


def to_log2(value_nats: float) -> float:
    return value_nats / math.log(2.0)
