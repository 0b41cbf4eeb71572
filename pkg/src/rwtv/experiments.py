"""Monte-Carlo harness: repeated generate/sample/recover pipelines.

Each trial draws a fresh planted-partition graph and clustered signal,
builds a walk-based sampling set, recovers the signal, and records the
normalized recovery error together with per-cluster sampling statistics.
Sweeps aggregate trials into mean/STD summaries and can dump per-trial
and summary CSV files.

Trial RNG streams derive from the spec's master seed plus the trial
index; sweep variants are offset by ``variant_index << 32``, so results
are reproducible and independent of worker scheduling.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .graph import cut_size
from .rng import RngSeed
from .sampling import SamplingBudgetError, WalkConfig, random_walk_sampling
from .slp import SlpConfig, nmse, slp_recover
from .synth import AppmSpec, generate_appm, random_clustered_signal

__all__ = [
    "TrialSpec",
    "TrialRow",
    "TrialSummary",
    "BENCHMARK_CLUSTER_SIZES",
    "BENCHMARK_P_INTRA",
    "BENCHMARK_Q_INTER",
    "BENCHMARK_WALK_LENGTH",
    "BENCHMARK_SLP",
    "TABLE1_BUDGETS",
    "TABLE2_LENGTHS",
    "TABLE2_BUDGET",
    "CLUSTER_STATS_BUDGET",
    "benchmark_trial_spec",
    "run_trial",
    "run_trials",
    "aggregate_rows",
    "run_table1",
    "run_table2",
    "run_cluster_stats",
    "write_trials_csv",
    "read_trials_csv",
    "write_summary_csv",
    "write_cluster_summary_csv",
]

# Reference benchmark setup: four clusters of sizes 10/20/30/40 with
# intra/inter edge probabilities 0.3/0.05, walk length 10.
BENCHMARK_CLUSTER_SIZES = (10, 20, 30, 40)
BENCHMARK_P_INTRA = 0.3
BENCHMARK_Q_INTER = 0.05
BENCHMARK_WALK_LENGTH = 10
TABLE1_BUDGETS = (10, 20, 30, 40, 50)
TABLE2_LENGTHS = (20, 40, 80, 160, 320)
TABLE2_BUDGET = 10
CLUSTER_STATS_BUDGET = 50

# Stopping parameters used by the benchmark sweeps. Calibrated so that
# mean NMSE over 1000-run sweeps stays within ~0.02 of fully converged
# solves while keeping a trial around 20 ms.
BENCHMARK_SLP = SlpConfig(max_iterations=5000, rel_change_tol=1e-5)

_VARIANT_STRIDE = 1 << 32


@dataclass(frozen=True)
class TrialSpec:
    """Full parameterization of one batch of simulation trials."""

    appm: AppmSpec
    walk: WalkConfig
    slp: SlpConfig
    runs: int
    master_seed: RngSeed

    def __post_init__(self):
        if int(self.runs) < 1:
            raise ValueError("runs must be >= 1")
        object.__setattr__(self, "runs", int(self.runs))
        if self.walk.budget > self.appm.node_count:
            raise ValueError(
                f"budget {self.walk.budget} exceeds node count "
                f"{self.appm.node_count}"
            )


@dataclass(frozen=True)
class TrialRow:
    """Per-trial record: recovery error plus cluster-level statistics."""

    index: int
    nmse: float
    samples_per_cluster: tuple[int, ...]
    cut_per_cluster: tuple[int, ...]


@dataclass(frozen=True)
class TrialSummary:
    """Aggregate over trials; STD is the population standard deviation
    (divisor n) of the per-trial NMSE values."""

    mean_nmse: float
    std_nmse: float
    per_cluster_mean_samples: tuple[float, ...]
    per_cluster_mean_cut: tuple[float, ...]
    failures: int = 0


def benchmark_trial_spec(runs=1000, seed=0, budget=CLUSTER_STATS_BUDGET,
                         walk_length=BENCHMARK_WALK_LENGTH, slp=BENCHMARK_SLP):
    """TrialSpec for the reference four-cluster benchmark setup."""
    return TrialSpec(
        appm=AppmSpec(BENCHMARK_CLUSTER_SIZES, BENCHMARK_P_INTRA, BENCHMARK_Q_INTER),
        walk=WalkConfig(length=walk_length, budget=budget),
        slp=slp,
        runs=runs,
        master_seed=seed if isinstance(seed, RngSeed) else RngSeed(seed),
    )


def run_trial(spec, trial_index):
    """One full pipeline pass: generate, sample, recover, score.

    Returns ``(nmse, per-cluster sample counts, per-cluster cut sizes)``.
    Deterministic in ``(spec.master_seed, trial_index)``.
    """
    gen = spec.master_seed.substream(trial_index).generator()
    g, part = generate_appm(spec.appm, gen)
    x_true = random_clustered_signal(part, gen)
    m = random_walk_sampling(g, spec.walk, gen)
    result = slp_recover(g, m, x_true[m.nodes], spec.slp)
    error = nmse(result.recovered, x_true)
    k = part.cluster_count
    counts = np.bincount(part.labels[m.nodes], minlength=k)
    cuts = np.array([cut_size(g, part, c) for c in range(k)])
    return error, counts, cuts


def _trial_worker(args):
    spec, index = args
    try:
        error, counts, cuts = run_trial(spec, index)
    except SamplingBudgetError:
        return None
    return TrialRow(
        index=index,
        nmse=error,
        samples_per_cluster=tuple(int(c) for c in counts),
        cut_per_cluster=tuple(int(c) for c in cuts),
    )


def run_trials(spec, workers=1):
    """Run all trials of a spec; returns ``(rows, failures)``.

    Trials whose sampling budget is unreachable are counted in
    ``failures`` and omitted from ``rows`` (their indices are skipped, so
    the gap stays visible in per-trial dumps). Rows come back ordered by
    trial index regardless of worker scheduling.
    """
    jobs = [(spec, i) for i in range(spec.runs)]
    if workers and int(workers) > 1:
        with ProcessPoolExecutor(max_workers=int(workers)) as pool:
            chunk = max(1, spec.runs // (int(workers) * 8))
            results = list(pool.map(_trial_worker, jobs, chunksize=chunk))
    else:
        results = [_trial_worker(job) for job in jobs]
    rows = [r for r in results if r is not None]
    return rows, spec.runs - len(rows)


def aggregate_rows(rows, cluster_count, failures=0):
    """Exact mean/STD aggregation of trial rows.

    Sums use ``math.fsum``, which is correctly rounded, so the summary is
    invariant under permutations of the rows.
    """
    if not rows:
        raise ValueError("cannot aggregate zero successful trials")
    n = len(rows)
    mean = math.fsum(r.nmse for r in rows) / n
    var = math.fsum((r.nmse - mean) ** 2 for r in rows) / n
    mean_samples = tuple(
        math.fsum(r.samples_per_cluster[c] for r in rows) / n
        for c in range(cluster_count)
    )
    mean_cut = tuple(
        math.fsum(r.cut_per_cluster[c] for r in rows) / n
        for c in range(cluster_count)
    )
    return TrialSummary(
        mean_nmse=mean,
        std_nmse=math.sqrt(var),
        per_cluster_mean_samples=mean_samples,
        per_cluster_mean_cut=mean_cut,
        failures=failures,
    )


def _sweep(base, variants, workers):
    """Run one spec per variant; each variant gets its own stream block."""
    out = []
    for i, spec in enumerate(variants):
        spec = replace(
            spec, master_seed=base.master_seed.substream(i * _VARIANT_STRIDE)
        )
        rows, failures = run_trials(spec, workers=workers)
        out.append((spec, rows, failures))
    return out


def run_table1(base, budgets=TABLE1_BUDGETS, workers=1, collect=None):
    """Sweep the sampling budget, all other parameters fixed.

    Returns one :class:`TrialSummary` per budget. When ``collect`` is a
    list, the per-variant ``(spec, rows, failures)`` tuples are appended
    to it for CSV dumping.
    """
    if not budgets:
        raise ValueError("budgets must be nonempty")
    variants = [
        replace(base, walk=WalkConfig(base.walk.length, int(b))) for b in budgets
    ]
    results = _sweep(base, variants, workers)
    if collect is not None:
        collect.extend(results)
    return [
        aggregate_rows(rows, base.appm.cluster_count, failures)
        for _, rows, failures in results
    ]


def run_table2(base, lengths=TABLE2_LENGTHS, workers=1, collect=None):
    """Sweep the walk length at a fixed budget of ``TABLE2_BUDGET``."""
    if not lengths:
        raise ValueError("lengths must be nonempty")
    variants = [
        replace(base, walk=WalkConfig(int(length), TABLE2_BUDGET))
        for length in lengths
    ]
    results = _sweep(base, variants, workers)
    if collect is not None:
        collect.extend(results)
    return [
        aggregate_rows(rows, base.appm.cluster_count, failures)
        for _, rows, failures in results
    ]


def run_cluster_stats(base, workers=1, collect=None):
    """Per-cluster sampling statistics of the base spec.

    The reference benchmark uses budget ``CLUSTER_STATS_BUDGET`` and walk
    length ``BENCHMARK_WALK_LENGTH``, which :func:`benchmark_trial_spec`
    provides by default.
    """
    results = _sweep(base, [base], workers)
    if collect is not None:
        collect.extend(results)
    _, rows, failures = results[0]
    return aggregate_rows(rows, base.appm.cluster_count, failures)


def write_trials_csv(fh, rows, cluster_count):
    """Per-trial dump; floats are written with shortest round-trip precision."""
    writer = csv.writer(fh)
    header = (
        ["trial_index", "nmse"]
        + [f"samples_c{c}" for c in range(cluster_count)]
        + [f"cut_c{c}" for c in range(cluster_count)]
    )
    writer.writerow(header)
    for r in rows:
        writer.writerow(
            [r.index, float(r.nmse), *r.samples_per_cluster, *r.cut_per_cluster]
        )


def read_trials_csv(fh):
    """Inverse of :func:`write_trials_csv`; round-trips values exactly."""
    reader = csv.reader(fh)
    header = next(reader)
    k = sum(1 for name in header if name.startswith("samples_c"))
    rows = []
    for rec in reader:
        rows.append(
            TrialRow(
                index=int(rec[0]),
                nmse=float(rec[1]),
                samples_per_cluster=tuple(int(v) for v in rec[2 : 2 + k]),
                cut_per_cluster=tuple(int(v) for v in rec[2 + k : 2 + 2 * k]),
            )
        )
    return rows


def write_summary_csv(fh, param_name, param_values, summaries):
    """One row per swept parameter value. The std column is the population
    standard deviation, as the column name records."""
    writer = csv.writer(fh)
    writer.writerow([param_name, "mean_nmse", "std_nmse_population", "failures"])
    for value, s in zip(param_values, summaries):
        writer.writerow([value, float(s.mean_nmse), float(s.std_nmse), s.failures])


def write_cluster_summary_csv(fh, summary):
    """Per-cluster mean sample counts and mean cut sizes."""
    writer = csv.writer(fh)
    writer.writerow(["cluster", "mean_samples", "mean_cut"])
    for c, (samples, cut) in enumerate(
        zip(summary.per_cluster_mean_samples, summary.per_cluster_mean_cut)
    ):
        writer.writerow([c, float(samples), float(cut)])
