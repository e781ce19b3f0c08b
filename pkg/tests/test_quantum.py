import csv
import io
import itertools
import math
from importlib import resources

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from wre.entropy import von_neumann
from wre.errors import ConfigurationError, ParameterError
from wre.quantum import adiabatic as ad
from wre.quantum import grover as gr
from wre.quantum.statevector import (
    bipartite_matrix,
    bipartition_sweep,
    canonical_bipartitions,
    inverse_qft,
    n_qubits_of,
    normalize,
    partial_trace,
    prime_state,
    primes_below,
    qft,
    random_state,
    reduced_spectrum,
    schmidt_rank,
)


def haar_like(n, seed):
    return random_state(n, 0.0, seed)


# --- statevector -------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 7))
def test_qft_matches_dft_matrix(n):
    N = 2**n
    j, k = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    F = np.exp(2j * np.pi * j * k / N) / math.sqrt(N)
    psi = normalize(np.arange(1, N + 1) + 1j * np.cos(np.arange(N)))
    np.testing.assert_allclose(qft(psi), F @ psi, atol=1e-12)
    np.testing.assert_allclose(inverse_qft(qft(psi)), psi, atol=1e-12)


def test_qft_fourth_power_is_identity():
    psi = haar_like(10, 3)
    out = psi
    for _ in range(4):
        out = qft(out)
    assert np.max(np.abs(out - psi)) < 1e-12


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 10), st.integers(0, 2**32))
def test_qft_is_unitary(n, seed):
    psi = haar_like(n, seed)
    assert abs(np.linalg.norm(qft(psi)) - 1.0) < 1e-12


def test_state_validation():
    with pytest.raises(ParameterError):
        n_qubits_of(np.ones(3) / math.sqrt(3))
    with pytest.raises(ParameterError):
        n_qubits_of(np.ones(4))
    assert n_qubits_of(np.eye(8)[5]) == 3


def partial_trace_brute(psi, keep, n):
    keep = sorted(keep)
    rest = [q for q in range(n) if q not in keep]
    da = 2 ** len(keep)
    rho = np.zeros((da, da), dtype=complex)

    def index(a, b):
        i = 0
        for pos, q in enumerate(keep):
            i |= ((a >> pos) & 1) << q
        for pos, q in enumerate(rest):
            i |= ((b >> pos) & 1) << q
        return i

    for a in range(da):
        for a2 in range(da):
            rho[a, a2] = sum(psi[index(a, b)] * psi[index(a2, b)].conj() for b in range(2 ** len(rest)))
    return rho


@pytest.mark.parametrize("keep", [(0,), (4,), (1, 3), (0, 2, 4), (3, 1, 2)])
def test_partial_trace_matches_brute_force(keep):
    psi = haar_like(5, 17)
    np.testing.assert_allclose(partial_trace(psi, keep), partial_trace_brute(psi, keep, 5), atol=1e-14)


def test_bipartite_matrix_of_high_qubits_is_plain_reshape():
    psi = haar_like(6, 2)
    np.testing.assert_array_equal(bipartite_matrix(psi, (3, 4, 5)), psi.reshape(8, 8))


def test_partial_trace_subset_checks():
    psi = haar_like(3, 0)
    for bad in [(), (0, 1, 2), (5,)]:
        with pytest.raises(ParameterError):
            partial_trace(psi, bad)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 8), st.data())
def test_schmidt_spectra_of_complements_agree(n, data):
    size = data.draw(st.integers(1, n - 1))
    keep = data.draw(st.lists(st.integers(0, n - 1), min_size=size, max_size=size, unique=True))
    psi = haar_like(n, data.draw(st.integers(0, 2**32)))
    rest = [q for q in range(n) if q not in keep]
    a = reduced_spectrum(psi, keep).values
    b = reduced_spectrum(psi, rest).values
    m = min(a.size, b.size)
    np.testing.assert_allclose(a[:m], b[:m], atol=1e-12)
    assert abs(von_neumann(a) - von_neumann(b)) < 1e-10


def test_known_entanglement():
    bell = np.zeros(4, complex)
    bell[[0, 3]] = 1 / math.sqrt(2)
    assert von_neumann(reduced_spectrum(bell, (0,))) == pytest.approx(math.log(2))
    product = np.kron([0.6, 0.8], [1 / math.sqrt(2), 1j / math.sqrt(2)])
    spec = reduced_spectrum(product, (0,))
    assert von_neumann(spec) < 1e-12
    assert schmidt_rank(spec) == 1


def test_primes():
    brute = [p for p in range(2, 200) if all(p % d for d in range(2, int(p**0.5) + 1))]
    assert primes_below(200).tolist() == brute
    assert primes_below(2).size == 0
    psi = prime_state(6)
    assert np.count_nonzero(psi) == 18
    assert abs(np.linalg.norm(psi) - 1) < 1e-15


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_prime_state_ranks(n):
    reports = bipartition_sweep(prime_state(n), n // 2)
    assert len(reports) == math.comb(n, n // 2) // 2
    assert {r.schmidt_rank for r in reports} == {2 ** (n // 2 - 1) + 1}


def test_canonical_bipartitions():
    parts = list(canonical_bipartitions(6, 3))
    assert len(parts) == 10
    assert all(p[0] == 0 for p in parts)
    with pytest.raises(ParameterError):
        list(canonical_bipartitions(6, 2))


# --- Grover toy hash ---------------------------------------------------------


def test_arx_permutation_is_invertible():
    seen = set()
    for w in itertools.product(range(16), repeat=3):
        out = gr.arx_permutation(w)
        assert gr.arx_permutation_inverse(out) == w
        seen.add(out)
    assert len(seen) == 4096


def test_hash_matches_shipped_vectors():
    text = resources.files("wre.data").joinpath("toy_hash_vectors.csv").read_text()
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 256
    for row in rows:
        m, d = int(row["message"]), int(row["digest"])
        assert gr.toy_sponge_hash(m) == d
        assert row["message_bits"] == format(m, "08b")
        assert row["digest_bits"] == format(d, "08b")


def test_default_ciphertext_preimages():
    assert gr.parse_ciphertext("10100011") == 163
    assert gr.preimages(gr.DEFAULT_CIPHERTEXT).tolist() == [98, 100]
    assert len(set(gr.digest_table().tolist())) == 157
    with pytest.raises(ConfigurationError):
        gr.parse_ciphertext("1010")
    with pytest.raises(ConfigurationError):
        gr.toy_sponge_hash(256)


def test_angle_formula():
    assert gr.optimal_iterations(2, 256) == 8
    assert gr.optimal_iterations(1, 4) == 1
    assert gr.success_probability(1, 1, 4) == pytest.approx(1.0)


def test_register_permutations_are_bijections():
    h = gr.hash_permutation()
    t = gr.multi_toffoli_permutation(gr.DEFAULT_CIPHERTEXT)
    for perm in (h, t):
        assert np.array_equal(np.sort(perm), np.arange(perm.size))
    assert np.array_equal(gr.inverse_permutation(h)[h], np.arange(h.size))
    assert np.array_equal(t[t], np.arange(t.size))


def test_hash_then_unhash_restores_state():
    state = gr.initial_state()
    h = gr.hash_permutation()
    out = gr.apply_permutation(gr.apply_permutation(state, h), gr.inverse_permutation(h))
    np.testing.assert_array_equal(out, state)


def test_initial_state_and_diffusion():
    state = gr.initial_state()
    assert abs(np.linalg.norm(state) - 1) < 1e-15
    assert np.allclose(gr.search_distribution(state), 1 / 256)
    # diffusion fixes the uniform search state and is an involution
    np.testing.assert_allclose(gr.diffusion(state), state, atol=1e-15)
    rng = np.random.default_rng(0)
    v = normalize(rng.standard_normal(2**18) + 0j)
    np.testing.assert_allclose(gr.diffusion(gr.diffusion(v)), v, atol=1e-14)


def test_diffusion_matches_explicit_operator():
    rng = np.random.default_rng(1)
    v = rng.standard_normal(2 * 256) + 1j * rng.standard_normal(2 * 256)
    D = 2 * np.full((256, 256), 1 / 256) - np.eye(256)
    expected = np.concatenate([D @ v[:256], D @ v[256:]])
    np.testing.assert_allclose(gr.diffusion(v), expected, atol=1e-12)


def test_grover_config_validation():
    with pytest.raises(ConfigurationError):
        gr.GroverConfig(total_qubits=16)
    with pytest.raises(ConfigurationError):
        gr.GroverConfig(iterations=0)


def test_short_grover_run():
    res = gr.grover_experiment(gr.GroverConfig(iterations=2))
    assert len(res.checkpoints) == 8
    assert [c.label for c in res.checkpoints[:4]] == list(gr.CHECKPOINTS)
    for k, p in enumerate(res.success_probabilities, start=1):
        assert abs(p - gr.success_probability(k, 2, 256)) < 1e-10
    # after the inverse hash the search register is disentangled again
    assert res.checkpoints[2].entropy < 1e-10


def test_grover_without_preimage_is_rejected():
    table = gr.digest_table()
    missing = next(d for d in range(256) if d not in set(table.tolist()))
    with pytest.raises(ConfigurationError):
        gr.grover_experiment(gr.GroverConfig(ciphertext=format(missing, "08b")))


# --- adiabatic Exact Cover ----------------------------------------------------


def test_violation_counts_brute_force():
    inst = ad.ExactCoverInstance(5, ((0, 1, 2), (1, 3, 4), (0, 2, 4)))
    counts = ad.violation_counts(inst)
    for x in range(32):
        bits = [(x >> q) & 1 for q in range(5)]
        expected = sum(sum(bits[q] for q in c) != 1 for c in inst.clauses)
        assert counts[x] == expected


def test_shipped_instance_is_unique():
    inst = ad.load_default_instance()
    assert inst.n == 12
    assert ad.solutions(inst).tolist() == [793]
    assert ad.ExactCoverInstance.from_json(inst.to_json()) == inst


def test_instance_validation():
    with pytest.raises(ParameterError):
        ad.ExactCoverInstance(4, ((0, 0, 1),))
    with pytest.raises(ParameterError):
        ad.ExactCoverInstance(4, ((0, 1, 4),))
    with pytest.raises(ParameterError):
        ad.ExactCoverInstance(2, ())


def test_generated_instances_are_unique():
    for seed in range(3):
        inst = ad.generate_unique_instance(6, seed)
        assert ad.solutions(inst).size == 1


def test_transverse_field_matches_kron():
    n = 3
    X, I = np.array([[0, 1], [1, 0]]), np.eye(2)
    H = np.zeros((8, 8))
    for q in range(n):
        # qubit q is bit q: the rightmost Kronecker factor is qubit 0
        ops = [X if n - 1 - k == q else I for k in range(n)]
        term = ops[0]
        for op in ops[1:]:
            term = np.kron(term, op)
        H += 0.5 * (np.eye(8) - term)
    np.testing.assert_array_equal(ad.transverse_field(n).toarray(), H)


def test_sparse_ground_state_matches_dense():
    inst = ad.generate_unique_instance(10, 5)
    H0, hp = ad.exact_cover_hamiltonians(inst)
    for s in (0.0, 0.3, 0.7):
        gs = ad.ground_state(H0, hp, s)
        H = ((1 - s) * H0 + s * sp.diags(hp)).toarray()
        w, v = np.linalg.eigh(H)
        assert abs(gs.energy - w[0]) < 1e-9
        assert abs(gs.gap - (w[1] - w[0])) < 1e-8
        assert abs(abs(np.vdot(gs.vector, v[:, 0])) - 1) < 1e-8


def test_ground_state_endpoints():
    inst = ad.load_default_instance()
    H0, hp = ad.exact_cover_hamiltonians(inst)
    start = ad.ground_state(H0, hp, 0.0)
    np.testing.assert_allclose(np.abs(start.vector), 1 / 64, atol=1e-10)
    end = ad.ground_state(H0, hp, 1.0)
    assert end.energy == 0.0
    assert np.argmax(np.abs(end.vector)) == 793
    with pytest.raises(ParameterError):
        ad.ground_state(H0, hp, 1.5)


def test_odd_register_rejected():
    with pytest.raises(ParameterError):
        ad.adiabatic_experiment(ad.ExactCoverInstance(5, ((0, 1, 2),)))
