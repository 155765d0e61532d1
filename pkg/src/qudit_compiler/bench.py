"""Benchmark harness: benchmark-table rows and the DAM optimality-rate experiment."""

from __future__ import annotations

import csv
import io
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .circuit import build_ccz_family
from .optimize import (
    LEGACY,
    MS,
    DamConfig,
    SearchExhausted,
    brute_force,
    dam,
    repetitions_needed,
    substitute,
)
from .phasepoly import random_implementation, random_signature, signature_of

CSV_HEADER = ["circuit", "d", "n", "m_leg", "m_ms", "m_dam", "t_leg_s", "t_ms_s", "t_dam_s"]

# key -> (label, family, size)
FAMILIES = {
    "ccz": ("CCZ", "tensor_power", 1),
    "ccz2": ("CCZ^2", "tensor_power", 2),
    "ccz3": ("CCZ^3", "tensor_power", 3),
    "cczs2": ("CCZ#2", "shared_control", 2),
    "cczs3": ("CCZ#3", "shared_control", 3),
}

# Deterministic rows of the benchmark table, (key, d).
TABLE1_ROWS = [
    ("ccz", 5), ("ccz2", 5), ("ccz3", 5),
    ("ccz", 7), ("ccz2", 7),
    ("ccz", 11), ("ccz2", 11),
    ("cczs2", 5), ("cczs3", 5),
    ("cczs2", 7), ("cczs3", 7),
    ("cczs2", 11),
]
TABLE1_RANDOM = [(5, 3), (5, 4), (7, 3), (7, 4), (11, 3)]

# Reference (m_leg, m_ms, m_dam); the first two are deterministic.
REFERENCE = {
    ("ccz", 5): (7, 4, 5), ("ccz2", 5): (14, 8, 10), ("ccz3", 5): (21, 12, 16),
    ("ccz", 7): (7, 4, 7), ("ccz2", 7): (14, 8, 10),
    ("ccz", 11): (7, 4, 7), ("ccz2", 11): (14, 8, 12),
    ("cczs2", 5): (13, 8, 8), ("cczs3", 5): (19, 12, 12),
    ("cczs2", 7): (13, 8, 8), ("cczs3", 7): (19, 12, 12),
    ("cczs2", 11): (13, 8, 8),
    ("random", 5, 3): (8.26, 11.38, 4.52), ("random", 5, 4): (16.93, 28.86, 7.21),
    ("random", 7, 3): (8.68, 11.59, 4.38), ("random", 7, 4): (16.88, 28.75, 7.13),
    ("random", 11, 3): (9.08, 12.05, 4.38),
}


@dataclass
class BenchRow:
    circuit: str
    d: int
    n: int
    m_legacy: float
    m_ms: float
    m_dam: float | None
    t_legacy_s: float
    t_ms_s: float
    t_dam_s: float | None

    def csv_fields(self, times: bool = True) -> list[str]:
        def num(v):
            if v is None:
                return ""
            return str(v) if isinstance(v, int) else f"{v:.2f}"

        def sec(v):
            if not times:
                return "NA"
            return "" if v is None else f"{v:.4f}"

        return [
            self.circuit, str(self.d), str(self.n),
            num(self.m_legacy), num(self.m_ms), num(self.m_dam),
            sec(self.t_legacy_s), sec(self.t_ms_s), sec(self.t_dam_s),
        ]


def row_seed(master_seed: int, label: str) -> np.random.SeedSequence:
    """Seed depending only on the master seed and the row label."""
    return np.random.SeedSequence([int(master_seed), zlib.crc32(label.encode())])


def _timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t


def dam_feasible(m: int, d: int, limit: int = 200_000) -> bool:
    """Whether one merge-system solve stays within ``limit`` enumerated vectors."""
    return d ** ((m - 2) // 2 + 1) <= limit


def _best_of(start, runs: int, ss: np.random.SeedSequence):
    best = None
    for child in ss.spawn(runs):
        out = dam(start, DamConfig(seed=int(child.generate_state(1)[0])))
        if best is None or out.m < best.m:
            best = out
    return best


def run_family_row(key: str, d: int, seed: int = 0, dam_runs: int = 10, with_dam: bool = True) -> BenchRow:
    label, family, size = FAMILIES[key]
    S = build_ccz_family(family, size, d)
    leg, t_leg = _timed(substitute, S, LEGACY)
    ms, t_ms = _timed(substitute, S, MS)
    m_dam = t_dam = None
    if with_dam and dam_feasible(leg.m, d):
        best, t_dam = _timed(_best_of, leg, dam_runs, row_seed(seed, f"{label}/{d}"))
        m_dam = best.m
    return BenchRow(label, d, S.n, leg.m, ms.m, m_dam, t_leg, t_ms, t_dam)


def run_random_row(
    d: int,
    n: int,
    seed: int = 0,
    instances: int = 100,
    dam_runs: int = 10,
    with_dam: bool = True,
    mode: str = "entries",
) -> BenchRow:
    """Means over ``instances`` random signature tensors."""
    ss = row_seed(seed, f"Random/{d}/{n}")
    legs, mss, dams = [], [], []
    t_leg = t_ms = t_dam = 0.0
    for child in ss.spawn(instances):
        tensor_seed, dam_seed = child.spawn(2)
        S = random_signature(n, d, tensor_seed, mode=mode)
        leg, t = _timed(substitute, S, LEGACY)
        t_leg += t
        ms, t = _timed(substitute, S, MS)
        t_ms += t
        legs.append(leg.m)
        mss.append(ms.m)
        if with_dam and dam_feasible(leg.m, d):
            best, t = _timed(_best_of, leg, dam_runs, dam_seed)
            t_dam += t
            dams.append(best.m)
    k = float(instances)
    m_dam = float(np.mean(dams)) if dams and len(dams) == instances else None
    return BenchRow(
        "Random", d, n, float(np.mean(legs)), float(np.mean(mss)), m_dam,
        t_leg / k, t_ms / k, (t_dam / k) if m_dam is not None else None,
    )


def _run_job(job):
    kind, args, kw = job
    return run_family_row(*args, **kw) if kind == "family" else run_random_row(*args, **kw)


def run_table1_subset(
    seed: int = 0,
    rows=("ccz", "ccz2", "cczs2", "random"),
    ds=(5, 7, 11),
    *,
    max_n: int = 6,
    random_params=((5, 3),),
    instances: int = 100,
    dam_runs: int = 10,
    with_dam: bool = True,
    threads: int = 1,
) -> list[BenchRow]:
    """Desk-scale subset of the benchmark table, in table order."""
    jobs = []
    for key, d in TABLE1_ROWS:
        if key in rows and d in ds:
            _, family, size = FAMILIES[key]
            n = 3 * size if family == "tensor_power" else 2 * size + 1
            if n <= max_n:
                jobs.append(("family", (key, d, seed), {"dam_runs": dam_runs, "with_dam": with_dam}))
    if "random" in rows:
        for d, n in random_params:
            jobs.append(("random", (d, n, seed), {"instances": instances, "dam_runs": dam_runs, "with_dam": with_dam}))
    if threads > 1:
        with ProcessPoolExecutor(threads) as ex:
            return list(ex.map(_run_job, jobs))
    return [_run_job(s) for s in jobs]


def rows_to_csv(rows: list[BenchRow], times: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.csv_fields(times))
    return buf.getvalue()


@dataclass
class POptResult:
    fractions: list[float]
    runs: int
    mu_checks: int = 0
    mu_violations: int = 0
    histograms: list[list[int]] = field(default_factory=list)

    @property
    def p_opt(self) -> float:
        return float(np.mean(self.fractions))

    @property
    def stderr(self) -> float:
        return float(np.std(self.fractions, ddof=1) / np.sqrt(len(self.fractions))) if len(self.fractions) > 1 else 0.0

    def repetitions(self, p_conf: float = 0.95) -> int:
        return repetitions_needed(min(max(self.p_opt, 1e-9), 1 - 1e-9), p_conf)


def measure_p_opt(
    instances: int = 20,
    runs: int = 100,
    seed: int = 0,
    d: int = 5,
    n: int = 3,
    m: int = 3,
) -> POptResult:
    """Rate at which one DAM run from the Legacy compilation reaches the optimum.

    Random ``(n, m, d)`` implementations are kept only when brute force certifies
    their optimum is exactly ``m``.
    """
    res = POptResult([], runs)

    def on_mu(mu, mm):
        res.mu_checks += 1
        res.mu_violations += mu > mm

    gen = np.random.SeedSequence(seed)
    while len(res.fractions) < instances:
        inst_ss, runs_ss = gen.spawn(2)
        imp = random_implementation(n, m, d, inst_ss)
        S = signature_of(imp)
        try:
            if brute_force(S, m - 1) is not None:
                continue
        except SearchExhausted:
            pass
        start = substitute(S, LEGACY)
        counts = []
        for child in runs_ss.spawn(runs):
            out = dam(start, DamConfig(seed=int(child.generate_state(1)[0])), on_mu=on_mu)
            counts.append(out.m)
        res.fractions.append(float(np.mean(np.array(counts) == m)))
        res.histograms.append(np.bincount(counts).tolist())
    return res
