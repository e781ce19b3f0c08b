"""Statevector experiments: QFT, Grover toy-hash search, adiabatic Exact Cover, Prime state."""

from wre.quantum.adiabatic import (
    ExactCoverInstance,
    adiabatic_experiment,
    exact_cover_hamiltonians,
    generate_unique_instance,
    load_default_instance,
)
from wre.quantum.grover import GroverConfig, grover_experiment, toy_sponge_hash
from wre.quantum.statevector import (
    BipartitionReport,
    bipartition_sweep,
    partial_trace,
    prime_state,
    qft,
    random_state,
    reduced_spectrum,
)

__all__ = [
    "BipartitionReport",
    "ExactCoverInstance",
    "GroverConfig",
    "adiabatic_experiment",
    "bipartition_sweep",
    "exact_cover_hamiltonians",
    "generate_unique_instance",
    "grover_experiment",
    "load_default_instance",
    "partial_trace",
    "prime_state",
    "qft",
    "random_state",
    "reduced_spectrum",
    "toy_sponge_hash",
]
