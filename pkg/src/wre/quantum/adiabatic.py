"""Instantaneous ground states of the adiabatic Exact Cover interpolation.

``H(s) = (1 - s) H0 + s Hp`` with ``H0 = sum_i (1 - X_i) / 2`` and ``Hp``
diagonal, counting the clauses a basis state violates.  A clause ``(i, j, k)``
is satisfied iff exactly one of its three bits is 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from wre.entropy import von_neumann
from wre.errors import ConfigurationError, ParameterError
from wre.quantum.statevector import reduced_spectrum
from wre.randmat import generator

DEGENERACY_TOL = 1e-10
DENSE_LIMIT = 256
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class ExactCoverInstance:
    n: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.n < 3:
            raise ParameterError("Exact Cover needs at least 3 bits")
        clauses = tuple(tuple(int(q) for q in c) for c in self.clauses)
        for c in clauses:
            if len(c) != 3 or len(set(c)) != 3:
                raise ParameterError(f"clause {c} must have 3 distinct indices")
            if min(c) < 0 or max(c) >= self.n:
                raise ParameterError(f"clause {c} has an index outside [0, {self.n})")
        object.__setattr__(self, "clauses", clauses)

    def to_json(self) -> dict:
        return {"n": self.n, "clauses": [list(c) for c in self.clauses]}

    @classmethod
    def from_json(cls, data: dict) -> "ExactCoverInstance":
        return cls(int(data["n"]), tuple(tuple(c) for c in data["clauses"]))


def violation_counts(instance: ExactCoverInstance) -> np.ndarray:
    """Number of violated clauses for every basis state."""
    idx = np.arange(2**instance.n, dtype=np.int64)
    counts = np.zeros(idx.size, dtype=np.int64)
    for i, j, k in instance.clauses:
        ones = ((idx >> i) & 1) + ((idx >> j) & 1) + ((idx >> k) & 1)
        counts += ones != 1
    return counts


def solutions(instance: ExactCoverInstance) -> np.ndarray:
    return np.flatnonzero(violation_counts(instance) == 0)


def transverse_field(n: int) -> sp.csr_matrix:
    """Sparse ``H0 = sum_i (1 - X_i) / 2``; ground state is the uniform superposition."""
    N = 2**n
    idx = np.arange(N)
    H = sp.diags(np.full(N, n / 2.0), format="csr")
    for q in range(n):
        H = H - 0.5 * sp.csr_matrix((np.ones(N), (idx, idx ^ (1 << q))), shape=(N, N))
    return H.tocsr()


def exact_cover_hamiltonians(instance: ExactCoverInstance) -> tuple[sp.csr_matrix, np.ndarray]:
    """``(H0, diag(Hp))``."""
    return transverse_field(instance.n), violation_counts(instance).astype(np.float64)


def generate_unique_instance(n: int, seed, max_restarts: int = 10_000) -> ExactCoverInstance:
    """Add random 3-subsets as clauses until at most one assignment survives; retry if none."""
    rng = generator(seed)
    idx = np.arange(2**n, dtype=np.int64)
    for _ in range(max_restarts):
        clauses: list[tuple[int, int, int]] = []
        counts = np.zeros(idx.size, dtype=np.int64)
        while True:
            c = tuple(int(q) for q in np.sort(rng.choice(n, size=3, replace=False)))
            clauses.append(c)
            ones = ((idx >> c[0]) & 1) + ((idx >> c[1]) & 1) + ((idx >> c[2]) & 1)
            counts += ones != 1
            n_sol = int(np.count_nonzero(counts == 0))
            if n_sol <= 1:
                break
        if n_sol == 1:
            return ExactCoverInstance(n, tuple(clauses))
    raise ConfigurationError(f"no unique-solution instance found after {max_restarts} restarts")


def load_default_instance() -> ExactCoverInstance:
    """The shipped 12-bit instance with a unique satisfying assignment."""
    text = resources.files("wre.data").joinpath("exact_cover_n12.json").read_text()
    return ExactCoverInstance.from_json(json.loads(text))


@dataclass(frozen=True)
class GroundState:
    energy: float
    gap: float
    vector: np.ndarray

    @property
    def degenerate(self) -> bool:
        return self.gap < DEGENERACY_TOL


def _fix_sign(v: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(v)))
    return v if v[k] >= 0 else -v


def _dense_ground(H) -> GroundState:
    H = H.toarray() if sp.issparse(H) else np.asarray(H)
    w, v = sla.eigh(H, subset_by_index=[0, 1])
    return GroundState(float(w[0]), float(w[1] - w[0]), _fix_sign(v[:, 0]))


def ground_state(H0: sp.csr_matrix, hp: np.ndarray, s: float) -> GroundState:
    """Lowest eigenpair of ``(1 - s) H0 + s diag(hp)`` and the gap to the next level.

    Degenerate ground spaces resolve to the lowest-index eigenvector
    (lowest-index basis state at ``s = 1``); check ``GroundState.degenerate``.
    """
    if not 0.0 <= s <= 1.0:
        raise ParameterError(f"s must lie in [0, 1], got {s}")
    N = hp.size
    if s == 1.0:
        order = np.argsort(hp, kind="stable")
        vec = np.zeros(N)
        vec[order[0]] = 1.0
        return GroundState(float(hp[order[0]]), float(hp[order[1]] - hp[order[0]]), vec)
    H = ((1.0 - s) * H0 + s * sp.diags(hp)).tocsr()
    if N <= DENSE_LIMIT:
        return _dense_ground(H)
    v0 = generator(0).standard_normal(N)
    w, v = spla.eigsh(H, k=2, which="SA", v0=v0, tol=0.0)
    order = np.argsort(w)
    w, v = w[order], v[:, order]
    resid = np.linalg.norm(H @ v[:, 0] - w[0] * v[:, 0])
    scale = max(1.0, abs(w[0]), abs(w[1]))
    if resid > RESIDUAL_TOL * scale or w[1] - w[0] < 1e-8:
        return _dense_ground(H)
    return GroundState(float(w[0]), float(w[1] - w[0]), _fix_sign(v[:, 0]))


@dataclass(frozen=True)
class AdiabaticPoint:
    s: float
    energy: float
    gap: float
    degenerate: bool
    lambda0: float
    entropy: float


def default_s_grid(points: int = 51) -> np.ndarray:
    return np.linspace(0.0, 1.0, points)


def adiabatic_experiment(instance: ExactCoverInstance, s_grid=None) -> list[AdiabaticPoint]:
    """Entanglement of the instantaneous ground state across the half/half bipartition."""
    if instance.n % 2:
        raise ParameterError("adiabatic experiment needs an even number of qubits")
    s_grid = default_s_grid() if s_grid is None else np.asarray(s_grid, dtype=np.float64)
    H0, hp = exact_cover_hamiltonians(instance)
    half = tuple(range(instance.n // 2))
    points = []
    for s in s_grid:
        gs = ground_state(H0, hp, float(s))
        spec = reduced_spectrum(gs.vector.astype(np.complex128), half)
        points.append(
            AdiabaticPoint(float(s), gs.energy, gs.gap, gs.degenerate, spec.lambda0, von_neumann(spec))
        )
    return points


def half_dimension(instance: ExactCoverInstance) -> int:
    return 2 ** (instance.n // 2)

