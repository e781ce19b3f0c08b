"""Grover search for pre-images of a toy sponge hash on an 18-qubit register.

Register layout (qubit 0 least significant):

* qubits 0-7: message / search register ``A``
* qubits 8-15: digest register, holds ``H(m)`` between the hash and its inverse
* qubit 16: oracle target, prepared in ``|->`` so the multi-Toffoli kicks back a phase
* qubit 17: clean ancilla of the multi-controlled gate, stays ``|0>``

The toy hash is a sponge over a 12-bit state of three 4-bit words
``(rate, cap0, cap1)``.  The message is absorbed in two nibbles (low first),
each followed by a 3-round add-rotate-xor permutation; two nibbles are then
squeezed with a permutation in between.  Round constants and the capacity IV
are consecutive digits of pi, picked so that the default ciphertext
``10100011`` has exactly two pre-images.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from wre.entropy import von_neumann
from wre.errors import ConfigurationError
from wre.quantum.statevector import reduced_spectrum

ROUND_CONSTANTS = (4, 1, 5)
CAPACITY_IV = (9, 2)
DEFAULT_CIPHERTEXT = "10100011"

MESSAGE_BITS = 8
TOTAL_QUBITS = 18
SEARCH_QUBITS = tuple(range(MESSAGE_BITS))
DIGEST_SHIFT = 8
ORACLE_QUBIT = 16
CHECKPOINTS = ("hash", "multi_toffoli", "inverse_hash", "diffusion")


def _rotl4(x: int, r: int) -> int:
    return ((x << r) | (x >> (4 - r))) & 0xF


def _rotr4(x: int, r: int) -> int:
    return ((x >> r) | (x << (4 - r))) & 0xF


def arx_permutation(words: tuple[int, int, int]) -> tuple[int, int, int]:
    """Three add-rotate-xor rounds on three 4-bit words."""
    w0, w1, w2 = words
    for c in ROUND_CONSTANTS:
        w0 = (w0 + w1) & 0xF
        w2 = _rotl4(w2 ^ w0, 1)
        w1 = (w1 + w2) & 0xF
        w0 = _rotl4(w0 ^ w1, 3)
        w2 ^= c
    return w0, w1, w2


def arx_permutation_inverse(words: tuple[int, int, int]) -> tuple[int, int, int]:
    w0, w1, w2 = words
    for c in reversed(ROUND_CONSTANTS):
        w2 ^= c
        w0 = _rotr4(w0, 3) ^ w1
        w1 = (w1 - w2) & 0xF
        w2 = _rotr4(w2, 1) ^ w0
        w0 = (w0 - w1) & 0xF
    return w0, w1, w2


def toy_sponge_hash(message: int) -> int:
    """8-bit digest of an 8-bit message."""
    if not 0 <= message < 256:
        raise ConfigurationError(f"message must be an 8-bit integer, got {message}")
    state = (0, *CAPACITY_IV)
    for block in (message & 0xF, message >> 4):
        state = arx_permutation((state[0] ^ block, state[1], state[2]))
    low = state[0]
    state = arx_permutation(state)
    return low | (state[0] << 4)


def digest_table() -> np.ndarray:
    """Digest of every message, indexed by message."""
    return np.array([toy_sponge_hash(m) for m in range(256)], dtype=np.int64)


def parse_ciphertext(ciphertext: str) -> int:
    """Integer value of a big-endian 8-character bit string (``"10100011"`` -> 163)."""
    if len(ciphertext) != MESSAGE_BITS or set(ciphertext) - {"0", "1"}:
        raise ConfigurationError(f"ciphertext must be an 8-bit string, got {ciphertext!r}")
    return int(ciphertext, 2)


def preimages(ciphertext: str) -> np.ndarray:
    return np.flatnonzero(digest_table() == parse_ciphertext(ciphertext))


def grover_angle(n_marked: int, n_items: int) -> float:
    return math.asin(math.sqrt(n_marked / n_items))


def optimal_iterations(n_marked: int, n_items: int) -> int:
    """``round(pi / (4 theta) - 1/2)`` with ``sin theta = sqrt(M/N)``."""
    return int(round(math.pi / (4.0 * grover_angle(n_marked, n_items)) - 0.5))


def success_probability(k: int, n_marked: int, n_items: int) -> float:
    return math.sin((2 * k + 1) * grover_angle(n_marked, n_items)) ** 2


# --- register-level unitaries, all basis-state permutations -----------------

_N_STATES = 2**TOTAL_QUBITS
_INDEX = np.arange(_N_STATES, dtype=np.int64)


def hash_permutation() -> np.ndarray:
    """Index map of ``|m>|w> -> |m>|w xor H(m)>`` on the full register."""
    msg = _INDEX & 0xFF
    dig = (_INDEX >> DIGEST_SHIFT) & 0xFF
    high = _INDEX >> (DIGEST_SHIFT + 8)
    table = digest_table()
    return msg | ((dig ^ table[msg]) << DIGEST_SHIFT) | (high << (DIGEST_SHIFT + 8))


def multi_toffoli_permutation(ciphertext: str) -> np.ndarray:
    """Flip the oracle qubit where the digest register equals ``ciphertext``."""
    target = parse_ciphertext(ciphertext)
    dig = (_INDEX >> DIGEST_SHIFT) & 0xFF
    return np.where(dig == target, _INDEX ^ (1 << ORACLE_QUBIT), _INDEX)


def apply_permutation(state: np.ndarray, perm: np.ndarray) -> np.ndarray:
    """Apply the basis permutation ``|i> -> |perm[i]>``."""
    out = np.empty_like(state)
    out[perm] = state
    return out


def inverse_permutation(perm: np.ndarray) -> np.ndarray:
    inv = np.empty_like(perm)
    inv[perm] = np.arange(perm.size, dtype=perm.dtype)
    return inv


def diffusion(state: np.ndarray) -> np.ndarray:
    """``2|s><s| - 1`` on the search register, identity elsewhere."""
    M = state.reshape(-1, 2**MESSAGE_BITS)
    return (2.0 * M.mean(axis=1, keepdims=True) - M).reshape(-1)


def initial_state() -> np.ndarray:
    """Uniform search register, zero digest, oracle qubit in ``|->``."""
    state = np.zeros(_N_STATES, dtype=np.complex128)
    amp = 1.0 / math.sqrt(2**MESSAGE_BITS * 2)
    state[: 2**MESSAGE_BITS] = amp
    state[(1 << ORACLE_QUBIT) : (1 << ORACLE_QUBIT) + 2**MESSAGE_BITS] = -amp
    return state


def search_distribution(state: np.ndarray) -> np.ndarray:
    """Measurement distribution of the search register."""
    return np.sum(np.abs(state.reshape(-1, 2**MESSAGE_BITS)) ** 2, axis=0)


@dataclass(frozen=True)
class GroverConfig:
    total_qubits: int = TOTAL_QUBITS
    search_qubits: int = MESSAGE_BITS
    ciphertext: str = DEFAULT_CIPHERTEXT
    iterations: int | None = None

    def __post_init__(self):
        if self.total_qubits != TOTAL_QUBITS or self.search_qubits != MESSAGE_BITS:
            raise ConfigurationError("the toy-hash circuit has 18 qubits with 8 search qubits")
        parse_ciphertext(self.ciphertext)
        if self.iterations is not None and self.iterations < 1:
            raise ConfigurationError("iterations must be positive")


@dataclass(frozen=True)
class Checkpoint:
    iteration: int
    label: str
    lambda0: float
    entropy: float


@dataclass
class GroverResult:
    config: GroverConfig
    preimages: tuple[int, ...]
    iterations: int
    checkpoints: list[Checkpoint] = field(default_factory=list)
    success_probabilities: list[float] = field(default_factory=list)
    final_distribution: np.ndarray | None = None


def grover_experiment(config: GroverConfig = GroverConfig()) -> GroverResult:
    """Run Grover's search and record (lambda0, entropy) of the search register at every checkpoint."""
    marked = preimages(config.ciphertext)
    if marked.size == 0:
        raise ConfigurationError(f"ciphertext {config.ciphertext} has no pre-image")
    n_items = 2**MESSAGE_BITS
    r = config.iterations or optimal_iterations(marked.size, n_items)
    hash_perm = hash_permutation()
    unhash_perm = inverse_permutation(hash_perm)
    toffoli = multi_toffoli_permutation(config.ciphertext)

    result = GroverResult(config, tuple(int(m) for m in marked), r)
    state = initial_state()
    for it in range(1, r + 1):
        stages = (
            lambda s: apply_permutation(s, hash_perm),
            lambda s: apply_permutation(s, toffoli),
            lambda s: apply_permutation(s, unhash_perm),
            diffusion,
        )
        for label, stage in zip(CHECKPOINTS, stages):
            state = stage(state)
            spec = reduced_spectrum(state, SEARCH_QUBITS)
            result.checkpoints.append(Checkpoint(it, label, spec.lambda0, von_neumann(spec)))
        result.success_probabilities.append(float(search_distribution(state)[marked].sum()))
    result.final_distribution = search_distribution(state)
    return result
