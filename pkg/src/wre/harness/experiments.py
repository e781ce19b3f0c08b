"""Experiment runners behind the ``wre`` subcommands.

Each ``run_*`` function validates its parameters, evaluates independent
trials or grid points on the worker pool, and returns a ``RunRecord`` whose
rows carry both the empirical values and the closed-form prediction.
"""

from __future__ import annotations

import math
import time
from math import comb

import numpy as np
from scipy.optimize import brentq

from wre.entropy import (
    entropy_given_lambda0,
    gap_empirical,
    gap_given_lambda0,
    is_crossover,
    page_entropy,
    renyi,
    renyi1_analytic,
    renyi2_analytic,
    renyi_d_analytic,
    von_neumann,
)
from wre.errors import ParameterError
from wre.harness.pool import ordered_map
from wre.harness.records import RunRecord, Table
from wre.quantum.adiabatic import (
    ExactCoverInstance,
    adiabatic_experiment,
    default_s_grid,
    half_dimension,
    load_default_instance,
)
from wre.quantum.grover import (
    DEFAULT_CIPHERTEXT,
    MESSAGE_BITS,
    TOTAL_QUBITS,
    GroverConfig,
    grover_experiment,
    success_probability,
)
from wre.quantum.statevector import bipartition_sweep, prime_state, qft, random_state, reduced_spectrum
from wre.randmat import (
    EnsembleSpec,
    generator,
    random_reduced_density,
    sample_gaussian_matrix,
    sampling_mean_for_lambda0,
    seed_sequence,
    wishart,
)
from wre.spectral import (
    MpdParams,
    bulk_edge,
    esd,
    hermitian_eigenvalues,
    ks_distance,
    laguerre_spectrum,
    mpd_cdf,
    mpd_edges,
    mpd_pdf,
)

MPD_ALPHA_MAX = 10_000
GAMMA_MAX = 2.0
QFT_QUBITS_MAX = 20
ADIABATIC_QUBITS_MAX = 12
PRIME_QUBITS_MAX = 14
LAMBDA0_MAX = 0.95

# threshold used by each acceptance check, echoed into run metadata
THRESHOLDS = {
    "mpd": {"ks_max": 0.02},
    "dominant": {"rel_error_max": 0.03, "regime": "alpha*gamma^2 > 2*lambda_plus"},
    "lambda0-sweep": {"mae_max": 0.05},
    "gap-sweep": {"mae_max": 0.1, "root_tol": 1e-10},
    "renyi-sweep": {"mae_max": 0.05, "min_entropy_tol": 0.05},
    "qft": {"entropy_diff_max": 0.05, "lambda0_diff_max": 0.05},
    "grover": {"success_min": 0.99, "success_tol": 1e-6, "excess_max": 0.1},
    "adiabatic": {"endpoint_tol": 1e-8, "excess_max": 0.1},
    "prime": {"residual_mae_max": 0.15},
}


def _mae(rows, empirical: str, analytic: str = "analytic") -> float | None:
    diffs = [
        abs(r[empirical] - r[analytic])
        for r in rows
        if not r["crossover"] and r.get(analytic) is not None
    ]
    return float(np.mean(diffs)) if diffs else None


def _check_int(name: str, value, lo: int = 1, hi: int | None = None) -> int:
    if int(value) != value or value < lo or (hi is not None and value > hi):
        bound = f"[{lo}, {hi}]" if hi is not None else f">= {lo}"
        raise ParameterError(f"{name} must be an integer in {bound}, got {value}")
    return int(value)


def _check_seed(seed) -> int:
    seed_sequence(seed)
    return int(seed)


def lambda0_targets(points: int, alpha: int, lambda0_max: float = LAMBDA0_MAX):
    """Uniform normalised-mean grid ``gamma_n in [0, sqrt(lambda0_max / alpha)]``.

    Returns ``(gamma_n, lambda0_target, sampling_gamma)``; the target dominant
    eigenvalue is ``alpha gamma_n^2`` and ``sampling_gamma`` is the raw entry
    mean (unit deviation) that produces it after trace normalisation.
    """
    if not 0.0 < lambda0_max < 1.0:
        raise ParameterError(f"lambda0_max must lie in (0, 1), got {lambda0_max}")
    scale = 0.0 if points == 1 else 1.0 / (points - 1)
    gn = np.arange(points) * scale * math.sqrt(lambda0_max / alpha)
    target = np.minimum(alpha * gn * gn, lambda0_max)
    return gn, target, np.array([sampling_mean_for_lambda0(t) for t in target])


# --- Marchenko-Pastur ------------------------------------------------------


def run_mpd(
    alpha: int = 2000,
    ratios=(0.25, 0.5, 1.0),
    sigma: float = 1.0,
    seed: int = 0,
    bins: int | None = None,
    sampler: str = "auto",
    threads: int = 1,
) -> RunRecord:
    """Empirical spectral density of ``X X^dagger / beta`` against the Marchenko-Pastur law."""
    alpha = _check_int("alpha", alpha, 1, MPD_ALPHA_MAX)
    seed = _check_seed(seed)
    if not sigma > 0:
        raise ParameterError(f"sigma must be positive, got {sigma}")
    if sampler not in ("auto", "dense", "laguerre"):
        raise ParameterError(f"unknown sampler {sampler!r}")
    if bins is not None:
        _check_int("bins", bins)
    ratios = [float(r) for r in ratios]
    if not ratios or any(not r > 0 for r in ratios):
        raise ParameterError("ratios must be positive")
    sigma_sq = sigma * sigma
    t0 = time.perf_counter()

    def one(k):
        ratio = ratios[k]
        beta = max(1, int(round(alpha / ratio)))
        use_laguerre = sampler == "laguerre" or (sampler == "auto" and alpha <= beta)
        if use_laguerre:
            if alpha > beta:
                raise ParameterError("the Laguerre sampler needs alpha <= beta")
            spec = laguerre_spectrum(alpha, beta, sigma_sq, seed_sequence(seed, k))
        else:
            X = sample_gaussian_matrix(alpha, beta, 0.0, sigma, seed_sequence(seed, k))
            spec = hermitian_eigenvalues(wishart(X, beta))
        params = MpdParams.from_ratio(sigma_sq, alpha / beta)
        return beta, "laguerre" if use_laguerre else "dense", spec, params

    results = ordered_map(one, range(len(ratios)), threads)
    record = RunRecord(
        "mpd",
        {"alpha": alpha, "ratios": ratios, "sigma": sigma, "seed": seed, "bins": bins,
         "sampler": sampler},
        thresholds=THRESHOLDS["mpd"],
    )
    ks = {}
    for ratio, (beta, used, spec, params) in zip(ratios, results):
        hist = esd(spec, bins)
        cdf = mpd_cdf(hist.bin_edges, params)
        table = Table(f"mpd_ratio_{ratio:g}", "wre.mpd.v1")
        for b, (lo, hi, c, dens) in enumerate(
            zip(hist.bin_edges[:-1], hist.bin_edges[1:], hist.centers, hist.densities)
        ):
            table.add(
                seed=seed, alpha=alpha, beta=beta, ratio=ratio, sigma_sq=sigma_sq, bin=b,
                left=float(lo), right=float(hi), center=float(c), empirical_density=float(dens),
                analytic_density=float(mpd_pdf(float(c), params)),
                analytic_bin_density=float((cdf[b + 1] - cdf[b]) / (hi - lo)),
            )
        record.tables.append(table)
        ks[f"{ratio:g}"] = {"beta": beta, "ks": ks_distance(spec, params), "sampler": used,
                            "edges": list(mpd_edges(sigma_sq, alpha / beta))}
    record.summary["ks"] = ks
    if alpha < MPD_ALPHA_MAX:
        record.deviations.append(f"alpha={alpha} instead of 10000 (desk scale)")
    record.wall_clock = time.perf_counter() - t0
    return record


# --- dominant eigenvalue ---------------------------------------------------


def dominant_trial(alpha, beta, gamma, seed, g_idx, t, real_entries=False):
    """Largest eigenvalue of ``Y = X X^dagger / beta`` and of its trace normalisation."""
    ss = seed_sequence(seed, g_idx, t)
    if real_entries:
        X = generator(ss).standard_normal((alpha, beta)) + gamma
    else:
        X = sample_gaussian_matrix(alpha, beta, gamma, 1.0, ss)
    spec = hermitian_eigenvalues(wishart(X, beta))
    return spec.lambda0, spec.lambda0 / spec.source_trace


def run_dominant(
    alpha: int = 100,
    beta: int = 200,
    gammas=None,
    trials: int = 500,
    seed: int = 0,
    real_entries: bool = False,
    threads: int = 1,
) -> RunRecord:
    """Trial-mean dominant eigenvalue of the decentralised ensemble against ``alpha gamma^2``."""
    alpha = _check_int("alpha", alpha)
    beta = _check_int("beta", beta)
    trials = _check_int("trials", trials)
    seed = _check_seed(seed)
    gammas = np.linspace(0.0, GAMMA_MAX, 21) if gammas is None else np.asarray(gammas, float)
    if gammas.size == 0 or gammas.min() < 0 or gammas.max() > GAMMA_MAX:
        raise ParameterError(f"gamma grid must lie in [0, {GAMMA_MAX}]")
    t0 = time.perf_counter()
    lam_plus = mpd_edges(1.0, alpha / beta)[1]
    jobs = [(g, t) for g in range(gammas.size) for t in range(trials)]
    values = ordered_map(
        lambda job: dominant_trial(alpha, beta, float(gammas[job[0]]), seed, *job, real_entries),
        jobs, threads,
    )
    raw = np.array(values).reshape(gammas.size, trials, 2)
    table = Table("dominant", "wre.dominant.v1")
    rel = {}
    for g, gamma in enumerate(gammas):
        lam = raw[g, :, 0]
        pred = alpha * gamma * gamma
        in_regime = pred > 2.0 * lam_plus
        err = abs(lam.mean() - pred) / pred if pred > 0 else None
        std = float(lam.std(ddof=1)) if trials > 1 else 0.0
        table.add(
            seed=seed, alpha=alpha, beta=beta, gamma=float(gamma), trials=trials,
            mean_lambda_max=float(lam.mean()), std_lambda_max=std,
            sem_lambda_max=std / math.sqrt(trials), analytic=float(pred), lambda_plus=lam_plus,
            rel_error=None if err is None else float(err), in_regime=bool(in_regime),
            mean_lambda0_normalized=float(raw[g, :, 1].mean()),
            analytic_normalized=float(gamma * gamma / (gamma * gamma + 1.0)),
        )
        if in_regime:
            rel[f"{gamma:g}"] = float(err)
    record = RunRecord(
        "dominant",
        {"alpha": alpha, "beta": beta, "gammas": [float(g) for g in gammas], "trials": trials,
         "seed": seed, "real_entries": real_entries},
        tables=[table],
        summary={"lambda_plus": lam_plus, "rel_error_in_regime": rel,
                 "units": "mean_lambda_max is for Y = X X^dagger / beta with unit-variance "
                          "raw entries; mean_lambda0_normalized is for Y / Tr Y"},
        thresholds=THRESHOLDS["dominant"],
    )
    record.wall_clock = time.perf_counter() - t0
    return record


# --- lambda0 / gap sweeps --------------------------------------------------


def _ensemble_point(alpha, beta, gamma, seed, trial_index):
    return hermitian_eigenvalues(random_reduced_density(EnsembleSpec(alpha, beta, gamma, 1.0, seed),
                                                        trial_index))


def _sweep(alpha, betas, points, seed, lambda0_max, threads):
    alpha = _check_int("alpha", alpha)
    points = _check_int("points", points)
    seed = _check_seed(seed)
    betas = [_check_int("beta", b, alpha) for b in betas]
    gn, _, gs = lambda0_targets(points, alpha, lambda0_max)
    jobs = [(b, i) for b in range(len(betas)) for i in range(points)]
    spectra = ordered_map(
        lambda job: _ensemble_point(alpha, betas[job[0]], float(gs[job[1]]), seed,
                                    job[0] * points + job[1]),
        jobs, threads,
    )
    return alpha, betas, points, seed, gn, gs, jobs, spectra


def run_lambda0_sweep(
    alpha: int = 128,
    betas=(192, 256, 512, 8192),
    points: int = 300,
    seed: int = 0,
    lambda0_max: float = LAMBDA0_MAX,
    curve_points: int = 200,
    threads: int = 1,
) -> RunRecord:
    """Von Neumann entropy against the dominant eigenvalue for several environment sizes."""
    t0 = time.perf_counter()
    alpha, betas, points, seed, gn, gs, jobs, spectra = _sweep(
        alpha, betas, points, seed, lambda0_max, threads)
    table = Table("lambda0_sweep", "wre.lambda0_sweep.v1")
    for (b, i), spec in zip(jobs, spectra):
        beta, l0 = betas[b], spec.lambda0
        table.add(
            seed=seed, alpha=alpha, beta=beta, point=i, gamma_normalized=float(gn[i]),
            gamma=float(gs[i]), lambda0=l0, entropy=von_neumann(spec),
            analytic=entropy_given_lambda0(alpha, beta, l0),
            analytic_inf=entropy_given_lambda0(alpha, math.inf, l0),
            bulk_edge=bulk_edge(alpha, beta, l0), crossover=is_crossover(alpha, beta, l0),
        )
    curve = Table("lambda0_curve", "wre.lambda0_curve.v1")
    grid = np.linspace(0.0, 0.999, curve_points)
    for beta in [*betas, math.inf]:
        for l0 in grid:
            curve.add(alpha=alpha, beta=beta, lambda0=float(l0),
                      analytic=entropy_given_lambda0(alpha, beta, float(l0)),
                      reference=math.log(alpha) - 0.5)
    summary = {"mae": {}, "mae_inf": {}, "crossover_points": {}, "page_entropy": {}}
    for beta in betas:
        rows = [r for r in table.rows if r["beta"] == beta]
        summary["mae"][str(beta)] = _mae(rows, "entropy")
        summary["mae_inf"][str(beta)] = _mae(rows, "entropy", "analytic_inf")
        summary["crossover_points"][str(beta)] = sum(r["crossover"] for r in rows)
        summary["page_entropy"][str(beta)] = page_entropy(alpha, beta)
    summary["lambda0_mapping"] = (
        "gamma_n uniform on [0, sqrt(lambda0_max/alpha)], target lambda0 = alpha*gamma_n^2, "
        "raw sampling mean sqrt(t/(1-t)) with unit deviation; trial index = beta_index*points + point"
    )
    record = RunRecord(
        "lambda0-sweep",
        {"alpha": alpha, "betas": betas, "points": points, "seed": seed,
         "lambda0_max": lambda0_max, "curve_points": curve_points},
        tables=[table, curve], summary=summary, thresholds=THRESHOLDS["lambda0-sweep"],
    )
    record.wall_clock = time.perf_counter() - t0
    return record


def gap_root(alpha: int, beta: float) -> float:
    """Dominant eigenvalue at which the closed-form gap vanishes (numerical root)."""
    return brentq(lambda l0: gap_given_lambda0(alpha, beta, l0), 1e-12, 1.0 - 1e-12, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def run_gap_sweep(
    alpha: int = 128,
    betas=(192, 256, 512, 65536),
    points: int = 300,
    seed: int = 0,
    lambda0_max: float = LAMBDA0_MAX,
    threads: int = 1,
) -> RunRecord:
    """Entanglement gap against the dominant eigenvalue."""
    t0 = time.perf_counter()
    alpha, betas, points, seed, gn, gs, jobs, spectra = _sweep(
        alpha, betas, points, seed, lambda0_max, threads)
    table = Table("gap_sweep", "wre.gap_sweep.v1")
    for (b, i), spec in zip(jobs, spectra):
        beta, l0 = betas[b], spec.lambda0
        table.add(
            seed=seed, alpha=alpha, beta=beta, point=i, gamma_normalized=float(gn[i]),
            gamma=float(gs[i]), lambda0=l0, gap=gap_empirical(spec),
            analytic=gap_given_lambda0(alpha, beta, l0),
            analytic_inf=gap_given_lambda0(alpha, math.inf, l0),
            bulk_edge=bulk_edge(alpha, beta, l0), crossover=is_crossover(alpha, beta, l0),
        )
    summary = {"mae": {}, "min_gap": {}, "roots": {}}
    for beta in [*betas, alpha]:
        k = (1.0 + math.sqrt(alpha / beta)) ** 2
        summary["roots"][str(beta)] = {"numerical": gap_root(alpha, beta), "closed_form": k / (alpha + k)}
    for beta in betas:
        rows = [r for r in table.rows if r["beta"] == beta]
        summary["mae"][str(beta)] = _mae(rows, "gap")
        summary["min_gap"][str(beta)] = min(r["gap"] for r in rows)
    record = RunRecord(
        "gap-sweep",
        {"alpha": alpha, "betas": betas, "points": points, "seed": seed,
         "lambda0_max": lambda0_max},
        tables=[table], summary=summary, thresholds=THRESHOLDS["gap-sweep"],
    )
    record.wall_clock = time.perf_counter() - t0
    return record


# --- Renyi -----------------------------------------------------------------

MIN_ENTROPY_DEGREE = 50.0


def renyi_prediction(alpha: int, lambda0: float, d: float) -> float | None:
    """Closed-form Renyi entropy at ``beta = alpha`` for degree ``d``, if one applies.

    ``d`` within 1e-2 of 1 uses the von Neumann form; integers 2-12 use the
    moment expansion; ``d >= 50`` uses the minimal-entropy limit ``-ln lambda0``.
    """
    if abs(d - 1.0) < 1e-2:
        return renyi1_analytic(alpha, lambda0)
    if d == 2:
        return renyi2_analytic(alpha, lambda0)
    if d == int(d) and 3 <= d <= 12:
        return renyi_d_analytic(alpha, lambda0, int(d))
    if d >= MIN_ENTROPY_DEGREE:
        return -math.log(lambda0)
    return None


def run_renyi_sweep(
    alpha: int = 128,
    degrees=(1.001, 2.0, 100.0),
    matrices: int = 100,
    seed: int = 0,
    lambda0_max: float = LAMBDA0_MAX,
    threads: int = 1,
) -> RunRecord:
    """Renyi entropies of one set of square-case matrices, evaluated for every degree."""
    t0 = time.perf_counter()
    degrees = [float(d) for d in degrees]
    if not degrees or any(d <= 0 or d == 1.0 for d in degrees):
        raise ParameterError("degrees must be positive and different from 1")
    alpha, betas, matrices, seed, gn, gs, jobs, spectra = _sweep(
        alpha, [alpha], matrices, seed, lambda0_max, threads)
    table = Table("renyi_sweep", "wre.renyi_sweep.v1")
    for d in degrees:
        for (_, m), spec in zip(jobs, spectra):
            l0 = spec.lambda0
            table.add(seed=seed, alpha=alpha, beta=alpha, matrix=m, gamma=float(gs[m]), degree=d,
                      lambda0=l0, renyi=renyi(spec, d), analytic=renyi_prediction(alpha, l0, d),
                      crossover=is_crossover(alpha, alpha, l0))
    summary = {"mae": {}, "max_min_entropy_deviation": {}}
    for d in degrees:
        rows = [r for r in table.rows if r["degree"] == d]
        summary["mae"][f"{d:g}"] = _mae(rows, "renyi")
        if d >= MIN_ENTROPY_DEGREE:
            summary["max_min_entropy_deviation"][f"{d:g}"] = max(
                abs(r["renyi"] + math.log(r["lambda0"])) for r in rows)
    record = RunRecord(
        "renyi-sweep",
        {"alpha": alpha, "beta": alpha, "degrees": degrees, "matrices": matrices, "seed": seed,
         "lambda0_max": lambda0_max},
        tables=[table], summary=summary, thresholds=THRESHOLDS["renyi-sweep"],
    )
    record.wall_clock = time.perf_counter() - t0
    return record


# --- statevector experiments -----------------------------------------------


def qft_state_pair(n, n_a, gamma, seed, b_idx, s_idx):
    """``(lambda0, E)`` of the top ``n_a`` qubits before and after the QFT."""
    keep = tuple(range(n - n_a, n))
    psi = random_state(n, gamma, seed_sequence(seed, b_idx, s_idx))
    before = reduced_spectrum(psi, keep)
    after = reduced_spectrum(qft(psi), keep)
    return before.lambda0, von_neumann(before), after.lambda0, von_neumann(after)


def run_qft(
    alpha: int = 128,
    betas=(256, 512, 8192),
    states: int = 10,
    seed: int = 0,
    lambda0_max: float = 0.9,
    threads: int = 1,
) -> RunRecord:
    """Entanglement of random states before and after the quantum Fourier transform."""
    t0 = time.perf_counter()
    alpha = _check_int("alpha", alpha, 2)
    states = _check_int("states", states)
    seed = _check_seed(seed)
    if alpha & (alpha - 1):
        raise ParameterError(f"alpha must be a power of two, got {alpha}")
    n_a = alpha.bit_length() - 1
    dims = []
    for beta in betas:
        beta = _check_int("beta", beta, alpha)
        if beta & (beta - 1):
            raise ParameterError(f"beta must be a power of two, got {beta}")
        n = n_a + beta.bit_length() - 1
        if n > QFT_QUBITS_MAX:
            raise ParameterError(f"QFT register of {n} qubits exceeds {QFT_QUBITS_MAX}")
        dims.append((beta, n))
    _, _, gs = lambda0_targets(states, alpha, lambda0_max)
    jobs = [(b, s) for b in range(len(dims)) for s in range(states)]
    out = ordered_map(
        lambda job: qft_state_pair(dims[job[0]][1], n_a, float(gs[job[1]]), seed, *job),
        jobs, threads,
    )
    table = Table("qft", "wre.qft.v1")
    for (b, s), (l0b, eb, l0a, ea) in zip(jobs, out):
        beta, n = dims[b]
        table.add(seed=seed, alpha=alpha, beta=beta, n_qubits=n, state=s, gamma=float(gs[s]),
                  lambda0_before=l0b, entropy_before=eb, lambda0_after=l0a, entropy_after=ea,
                  analytic=entropy_given_lambda0(alpha, beta, l0b),
                  crossover=is_crossover(alpha, beta, l0b))
    rows = table.rows
    record = RunRecord(
        "qft",
        {"alpha": alpha, "betas": [d[0] for d in dims], "states": states, "seed": seed,
         "lambda0_max": lambda0_max},
        tables=[table],
        summary={
            "max_entropy_diff": max(abs(r["entropy_before"] - r["entropy_after"]) for r in rows),
            "max_lambda0_diff": max(abs(r["lambda0_before"] - r["lambda0_after"]) for r in rows),
            "subsystem": f"the {n_a} most significant qubits",
        },
        thresholds=THRESHOLDS["qft"],
    )
    record.wall_clock = time.perf_counter() - t0
    return record


GROVER_ALPHA = 2**MESSAGE_BITS
GROVER_BETA = 2 ** (TOTAL_QUBITS - MESSAGE_BITS)


def run_grover(ciphertext: str = DEFAULT_CIPHERTEXT, iterations: int | None = None) -> RunRecord:
    """Search-register entanglement at the four checkpoints of every Grover iteration."""
    t0 = time.perf_counter()
    config = GroverConfig(ciphertext=ciphertext, iterations=iterations)
    result = grover_experiment(config)
    n_marked, n_items = len(result.preimages), 2**MESSAGE_BITS
    table = Table("grover", "wre.grover.v1")
    excess = []
    for k, cp in enumerate(result.checkpoints):
        analytic = entropy_given_lambda0(GROVER_ALPHA, GROVER_BETA, cp.lambda0)
        excess.append(cp.entropy - analytic)
        last = cp.label == "diffusion"
        table.add(
            alpha=GROVER_ALPHA, beta=GROVER_BETA, ciphertext=ciphertext, iteration=cp.iteration,
            checkpoint=k, label=cp.label, lambda0=cp.lambda0, entropy=cp.entropy, analytic=analytic,
            success_probability=result.success_probabilities[cp.iteration - 1] if last else None,
            predicted_success=success_probability(cp.iteration, n_marked, n_items) if last else None,
        )
    record = RunRecord(
        "grover",
        {"ciphertext": ciphertext, "iterations": result.iterations, "total_qubits": TOTAL_QUBITS,
         "search_qubits": MESSAGE_BITS},
        tables=[table],
        summary={
            "preimages": list(result.preimages),
            "iterations": result.iterations,
            "final_success": result.success_probabilities[-1],
            "predicted_success": success_probability(result.iterations, n_marked, n_items),
            "max_excess_over_analytic": max(excess),
            "bipartition": f"alpha={GROVER_ALPHA} (search register), beta={GROVER_BETA}",
        },
        thresholds=THRESHOLDS["grover"],
        deviations=[f"bipartition dimensions alpha={GROVER_ALPHA}, beta={GROVER_BETA} adopted"],
    )
    record.wall_clock = time.perf_counter() - t0
    return record


def run_adiabatic(instance: ExactCoverInstance | None = None, s_points: int = 51) -> RunRecord:
    """Half-chain entanglement of the instantaneous Exact Cover ground state."""
    t0 = time.perf_counter()
    instance = load_default_instance() if instance is None else instance
    if instance.n > ADIABATIC_QUBITS_MAX:
        raise ParameterError(f"adiabatic register of {instance.n} qubits exceeds {ADIABATIC_QUBITS_MAX}")
    s_points = _check_int("s_points", s_points, 2)
    alpha = half_dimension(instance)
    points = adiabatic_experiment(instance, default_s_grid(s_points))
    table = Table("adiabatic", "wre.adiabatic.v1")
    for p in points:
        table.add(alpha=alpha, beta=alpha, n_qubits=instance.n, s=p.s, energy=p.energy, gap=p.gap,
                  degenerate=p.degenerate, lambda0=p.lambda0, entropy=p.entropy,
                  analytic=renyi1_analytic(alpha, p.lambda0))
    rows = table.rows
    record = RunRecord(
        "adiabatic",
        {"instance": instance.to_json(), "s_points": s_points},
        tables=[table],
        summary={
            "entropy_start": rows[0]["entropy"],
            "entropy_end": rows[-1]["entropy"],
            "max_excess_over_analytic": max(r["entropy"] - r["analytic"] for r in rows),
            "min_gap": min(r["gap"] for r in rows),
            "degenerate_points": sum(r["degenerate"] for r in rows),
        },
        thresholds=THRESHOLDS["adiabatic"],
    )
    record.wall_clock = time.perf_counter() - t0
    return record


def prime_rank(n: int) -> int:
    return 2 ** (n // 2 - 1) + 1


def run_prime(n: int = 12) -> RunRecord:
    """Every balanced bipartition of the Prime state."""
    t0 = time.perf_counter()
    n = _check_int("n", n, 4, PRIME_QUBITS_MAX)
    if n % 2:
        raise ParameterError(f"n must be even, got {n}")
    reports = bipartition_sweep(prime_state(n), n // 2)
    alpha = 2 ** (n // 2)
    table = Table("prime", "wre.prime.v1")
    for rep in reports:
        a_rank = rep.schmidt_rank
        analytic = renyi1_analytic(a_rank, rep.lambda0) if a_rank > 1 else 0.0
        table.add(alpha=alpha, beta=alpha, n_qubits=n, partition="-".join(map(str, rep.partition)),
                  lambda0=rep.lambda0, entropy=rep.entropy, schmidt_rank=a_rank, alpha_rank=a_rank,
                  analytic=analytic, residual=rep.entropy - analytic)
    rows = table.rows
    record = RunRecord(
        "prime",
        {"n": n},
        tables=[table],
        summary={
            "partitions": len(rows),
            "expected_partitions": comb(n, n // 2) // 2,
            "ranks": sorted({r["schmidt_rank"] for r in rows}),
            "expected_rank": prime_rank(n),
            "residual_mae": float(np.mean([abs(r["residual"]) for r in rows])),
        },
        thresholds=THRESHOLDS["prime"],
    )
    if n < PRIME_QUBITS_MAX:
        record.deviations.append(f"n={n} instead of 14 (desk scale)")
    record.wall_clock = time.perf_counter() - t0
    return record
