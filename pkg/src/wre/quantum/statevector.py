"""Dense statevector utilities.

Qubit ``q`` is bit ``q`` of the basis index (qubit 0 least significant), so
``|p> = |p_{n-1} ... p_0>`` with ``p = sum_q p_q 2^q``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from wre.entropy import von_neumann
from wre.errors import ParameterError
from wre.randmat import sample_gaussian_matrix
from wre.spectral import Spectrum, hermitian_eigenvalues

NORM_TOL = 1e-10
RANK_TOL = 1e-10


def n_qubits_of(state: np.ndarray) -> int:
    """Number of qubits of a normalised state; raises ``ParameterError`` otherwise."""
    state = np.asarray(state)
    if state.ndim != 1 or state.size < 2 or state.size & (state.size - 1):
        raise ParameterError(f"state length must be a power of two >= 2, got {state.shape}")
    norm = float(np.vdot(state, state).real)
    if abs(norm - 1.0) > NORM_TOL:
        raise ParameterError(f"state is not normalised (norm^2 = {norm})")
    return state.size.bit_length() - 1


def normalize(state: np.ndarray) -> np.ndarray:
    state = np.asarray(state, dtype=np.complex128)
    return state / np.linalg.norm(state)


def qft(state: np.ndarray) -> np.ndarray:
    """Quantum Fourier transform ``b_k = N^{-1/2} sum_j e^{2 pi i jk/N} a_j``."""
    n_qubits_of(state)
    return np.fft.ifft(np.asarray(state, dtype=np.complex128), norm="ortho")


def inverse_qft(state: np.ndarray) -> np.ndarray:
    n_qubits_of(state)
    return np.fft.fft(np.asarray(state, dtype=np.complex128), norm="ortho")


def _check_subset(keep, n: int) -> tuple[int, ...]:
    keep = tuple(sorted(set(int(q) for q in keep)))
    if not keep or len(keep) >= n:
        raise ParameterError(f"subset must be non-empty and proper, got {keep} of {n} qubits")
    if keep[0] < 0 or keep[-1] >= n:
        raise ParameterError(f"qubit indices must lie in [0, {n}), got {keep}")
    return keep


def bipartite_matrix(state: np.ndarray, keep) -> np.ndarray:
    """Reshape ``state`` into a ``2^|keep| x 2^(n-|keep|)`` coefficient matrix.

    Row index bit ``j`` corresponds to the ``j``-th smallest qubit in ``keep``;
    the column index uses the remaining qubits in the same order.
    """
    n = n_qubits_of(state)
    keep = _check_subset(keep, n)
    rest = tuple(q for q in range(n) if q not in keep)
    # Tensor axis k holds qubit n-1-k (row-major, most significant first).
    tensor = np.asarray(state).reshape((2,) * n)
    axes = [n - 1 - q for q in reversed(keep)] + [n - 1 - q for q in reversed(rest)]
    return tensor.transpose(axes).reshape(2 ** len(keep), 2 ** len(rest))


def partial_trace(state: np.ndarray, keep) -> np.ndarray:
    """Reduced density matrix on the qubits in ``keep`` (complement traced out)."""
    M = bipartite_matrix(state, keep)
    rho = M @ M.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return rho


def reduced_spectrum(state: np.ndarray, keep) -> Spectrum:
    return hermitian_eigenvalues(partial_trace(state, keep))


def schmidt_rank(spectrum: Spectrum, tol: float = RANK_TOL) -> int:
    return int(np.count_nonzero(spectrum.values > tol))


def random_state(n: int, gamma: float, seed) -> np.ndarray:
    """Normalised state with i.i.d. complex Gaussian amplitudes of mean ``gamma`` and unit variance."""
    if n < 2:
        raise ParameterError("random_state needs n >= 2")
    amps = sample_gaussian_matrix(1, 2**n, gamma, 1.0, seed)[0]
    return normalize(amps)


def primes_below(limit: int) -> np.ndarray:
    """Primes ``p < limit`` by the sieve of Eratosthenes."""
    if limit < 3:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(limit, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(limit - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.flatnonzero(sieve)


def prime_state(n: int) -> np.ndarray:
    """Equal superposition of the primes below ``2^n``."""
    if n < 2:
        raise ParameterError("prime_state needs n >= 2")
    primes = primes_below(2**n)
    state = np.zeros(2**n, dtype=np.complex128)
    state[primes] = 1.0 / math.sqrt(primes.size)
    return state


@dataclass(frozen=True)
class BipartitionReport:
    partition: tuple[int, ...]
    lambda0: float
    entropy: float
    schmidt_rank: int


def canonical_bipartitions(n: int, half_size: int):
    """Subsets of size ``half_size`` containing qubit 0, one per subset/complement pair."""
    if 2 * half_size != n:
        raise ParameterError(f"half_size must be n/2, got {half_size} for n={n}")
    for rest in itertools.combinations(range(1, n), half_size - 1):
        yield (0,) + rest


def bipartition_sweep(
    state: np.ndarray, half_size: int, rank_tol: float = RANK_TOL
) -> list[BipartitionReport]:
    """Dominant eigenvalue, entropy and Schmidt rank for every balanced bipartition."""
    n = n_qubits_of(state)
    if n % 2:
        raise ParameterError("bipartition sweep needs an even number of qubits")
    reports = []
    for part in canonical_bipartitions(n, half_size):
        spec = reduced_spectrum(state, part)
        reports.append(
            BipartitionReport(part, spec.lambda0, von_neumann(spec), schmidt_rank(spec, rank_tol))
        )
    return reports
