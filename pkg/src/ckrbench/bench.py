"""Benchmark harness: timed closure runs over generated suites, CSV output.

Timing wraps the closure computation only; parsing and repository assembly
happen once per file before the clock starts, so results measure reasoning,
not setup.  Repeated runs of one configuration must agree on every triple
count; only the timing columns may differ.
"""
from __future__ import annotations

import csv
import logging
import re
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from ckrbench.engine.closure import DEFAULT_BUDGET_MILLIS, compute_closure
from ckrbench.engine.rules import instantiate_ruleset
from ckrbench.model.repository import assemble_repository
from ckrbench.rdf.trig import load_path

logger = logging.getLogger(__name__)

CSV_FIELDS = (
    "suite",
    "config",
    "regime",
    "asserted",
    "total",
    "inferred",
    "ms",
    "timedout",
    "seed",
    "run",
)


@dataclass
class BenchRecord:
    suite: str
    config: str
    regime: str
    asserted: int
    total: int
    inferred: int
    ms: float
    timedout: bool
    seed: int
    run: int | str

    def row(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config,
            "regime": self.regime,
            "asserted": self.asserted,
            "total": self.total,
            "inferred": self.inferred,
            "ms": f"{self.ms:.3f}",
            "timedout": str(self.timedout).lower(),
            "seed": self.seed,
            "run": self.run,
        }


_FILE_PATTERN = re.compile(r"^(?P<suite>ts1|ts2|ts3|[a-z0-9]+)-(?P<config>.+?)(?:-s(?P<seed>\d+))?$")


def describe_file(path: str | Path) -> tuple[str, str, int]:
    """(suite, config, seed) parsed from a suite file name."""
    stem = Path(path).stem
    m = _FILE_PATTERN.match(stem)
    if not m:
        return ("custom", stem, 0)
    return (m["suite"], m["config"], int(m["seed"] or 0))


def bench_file(
    path: str | Path,
    regime_ids: Sequence[str],
    runs: int = 3,
    timeout_millis: int = DEFAULT_BUDGET_MILLIS,
) -> list[BenchRecord]:
    """All (regime, run) records for one suite file, plus averaged rows."""
    suite, config, seed = describe_file(path)
    dataset = load_path(str(path))
    records: list[BenchRecord] = []
    for regime_id in regime_ids:
        regime = instantiate_ruleset(regime_id)
        per_regime: list[BenchRecord] = []
        for run in range(1, runs + 1):
            repo = assemble_repository(dataset)
            result = compute_closure(repo, regime, timeout_millis)
            inferred = 0 if result.timed_out else result.inferred_quad_count
            per_regime.append(
                BenchRecord(
                    suite=suite,
                    config=config,
                    regime=regime_id,
                    asserted=result.asserted_quad_count,
                    total=result.asserted_quad_count + inferred,
                    inferred=inferred,
                    ms=result.total_ms,
                    timedout=result.timed_out,
                    seed=seed,
                    run=run,
                )
            )
        counts = {(r.asserted, r.total, r.inferred, r.timedout) for r in per_regime}
        if len(counts) != 1:
            raise RuntimeError(
                f"non-deterministic triple counts for {path} under {regime_id}"
            )
        records.extend(per_regime)
        records.append(average_record(per_regime))
        logger.info(
            "%s %s %s: %d inferred, %.1f ms avg",
            suite,
            config,
            regime_id,
            per_regime[0].inferred,
            records[-1].ms,
        )
    return records


def average_record(run_records: Sequence[BenchRecord]) -> BenchRecord:
    first = run_records[0]
    return BenchRecord(
        suite=first.suite,
        config=first.config,
        regime=first.regime,
        asserted=first.asserted,
        total=first.total,
        inferred=first.inferred,
        ms=statistics.fmean(r.ms for r in run_records),
        timedout=any(r.timedout for r in run_records),
        seed=first.seed,
        run="avg",
    )


def _bench_file_task(args) -> list[BenchRecord]:
    return bench_file(*args)


def bench_suite(
    suite_dir: str | Path,
    regime_ids: Sequence[str],
    runs: int = 3,
    timeout_millis: int = DEFAULT_BUDGET_MILLIS,
    parallel: int = 0,
) -> list[BenchRecord]:
    """Benchmark every .trig file in a directory.

    ``parallel`` > 1 distributes *files* over worker processes; a timed run
    is never split.
    """
    files = sorted(Path(suite_dir).glob("*.trig"))
    if not files:
        raise FileNotFoundError(f"no .trig files under {suite_dir}")
    tasks = [(f, tuple(regime_ids), runs, timeout_millis) for f in files]
    records: list[BenchRecord] = []
    if parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            for result in pool.map(_bench_file_task, tasks):
                records.extend(result)
    else:
        for task in tasks:
            records.extend(_bench_file_task(task))
    return records


def write_csv(records: Iterable[BenchRecord], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        writer.writeheader()
        for record in records:
            writer.writerow(record.row())


def linear_fit(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float, float]:
    """Least-squares line fit: (slope, intercept, r_squared)."""
    n = len(xs)
    if n < 2:
        raise ValueError("need at least two points")
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    sxx = sum((x - mean_x) ** 2 for x in xs)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    if sxx == 0:
        raise ValueError("degenerate fit: all x values equal")
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    ss_tot = sum((y - mean_y) ** 2 for y in ys)
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return slope, intercept, r2


_K_PATTERN = re.compile(r"-k(\d+)$")


def connection_sweep_fit(records: Sequence[BenchRecord]) -> dict[str, tuple[float, float, float]]:
    """Per (suite, regime) fit of averaged time against the connection count
    encoded in the configuration label (``...-k<n>``)."""
    series: dict[str, list[tuple[int, float]]] = {}
    for r in records:
        if r.run != "avg" or r.timedout:
            continue
        m = _K_PATTERN.search(r.config)
        if not m:
            continue
        series.setdefault(f"{r.suite}/{r.regime}", []).append((int(m.group(1)), r.ms))
    out = {}
    for key, points in series.items():
        if len(points) >= 3:
            points.sort()
            xs = [float(k) for k, _ in points]
            ys = [ms for _, ms in points]
            out[key] = linear_fit(xs, ys)
    return out
