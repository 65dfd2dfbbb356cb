"""Benchmark harness: run the solver x problem grid over seeded trials and
summarise costs against the back-and-forth baseline.

Trial i of a stochastic solver uses seed base_seed + i; the deterministic
baseline runs once per problem. Reports persist as JSON lines plus a summary
JSON, both carrying "schema": 1. Everything except wall_time_ms is
reproducible bit for bit for a given map and configuration.
"""

from __future__ import annotations

import json
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path

from .aco import AcoParams
from .energy import EnergyModel
from .fleet import SOLVERS, FleetPlan, plan_fleet
from .world import FarmMap, generate_waypoints

SCHEMA_VERSION = 1
PROBLEMS = ("single", "dual")
_DRONES = {"single": 1, "dual": 2}


@dataclass(frozen=True, slots=True)
class TrialReport:
    solver: str
    problem: str
    seed: int
    valid: bool
    cost_kj: float
    distance_m: float
    turn_deg: float
    wall_time_ms: float

    def to_json_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "solver": self.solver,
            "problem": self.problem,
            "seed": self.seed,
            "valid": self.valid,
            "cost_kj": self.cost_kj,
            "distance_m": self.distance_m,
            "turn_deg": self.turn_deg,
            "wall_time_ms": self.wall_time_ms,
        }


@dataclass(frozen=True, slots=True)
class CellSummary:
    solver: str
    problem: str
    trials_run: int
    trials_valid: int
    mean_cost_kj: float | None
    min_cost_kj: float | None
    max_cost_kj: float | None
    stddev_cost_kj: float | None
    baseline_cost_kj: float | None
    improvement_pct: float | None
    error: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "solver": self.solver,
            "problem": self.problem,
            "trials_run": self.trials_run,
            "trials_valid": self.trials_valid,
            "mean_cost_kj": self.mean_cost_kj,
            "min_cost_kj": self.min_cost_kj,
            "max_cost_kj": self.max_cost_kj,
            "stddev_cost_kj": self.stddev_cost_kj,
            "baseline_cost_kj": self.baseline_cost_kj,
            "improvement_pct": self.improvement_pct,
            "error": self.error,
        }


@dataclass(frozen=True, slots=True)
class BenchSummary:
    cells: tuple[CellSummary, ...]
    n_trials: int | None = None
    base_seed: int | None = None

    def cell(self, solver: str, problem: str) -> CellSummary:
        for c in self.cells:
            if c.solver == solver and c.problem == problem:
                return c
        raise KeyError((solver, problem))

    def to_json_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "n_trials": self.n_trials,
            "base_seed": self.base_seed,
            "cells": [c.to_json_dict() for c in self.cells],
        }


@dataclass(frozen=True, slots=True)
class BenchConfig:
    solvers: tuple[str, ...] = SOLVERS
    problems: tuple[str, ...] = PROBLEMS
    n_trials: int = 30
    base_seed: int = 42
    model: EnergyModel = field(default_factory=EnergyModel)
    aco: AcoParams = field(default_factory=AcoParams)

    def __post_init__(self):
        for s in self.solvers:
            if s not in SOLVERS:
                raise ValueError(f"unknown solver {s!r}")
        for p in self.problems:
            if p not in PROBLEMS:
                raise ValueError(f"unknown problem {p!r}")
        if self.n_trials < 1:
            raise ValueError("n_trials must be at least 1")


def summarize(reports, cell_errors: dict | None = None,
              n_trials: int | None = None, base_seed: int | None = None,
              grid=None) -> BenchSummary:
    """Aggregate trial reports into per-cell statistics.

    Statistics cover valid trials only. The baseline cost for a problem comes
    from that problem's back-and-forth report when present; improvement_pct
    compares a solver's mean against it.
    """
    cell_errors = dict(cell_errors or {})
    keys = []
    if grid is not None:
        keys.extend(grid)
    for r in reports:
        if (r.solver, r.problem) not in keys:
            keys.append((r.solver, r.problem))
    for k in cell_errors:
        if k not in keys:
            keys.append(k)
    keys.sort()

    baseline_by_problem = {}
    for r in reports:
        if r.solver == "back-and-forth" and r.valid:
            baseline_by_problem[r.problem] = r.cost_kj

    cells = []
    for solver, problem in keys:
        rows = [r for r in reports if r.solver == solver and r.problem == problem]
        costs = [r.cost_kj for r in rows if r.valid]
        baseline = baseline_by_problem.get(problem)
        error = cell_errors.get((solver, problem))
        if costs:
            mean = statistics.fmean(costs)
            lo, hi = min(costs), max(costs)
            sd = statistics.pstdev(costs)
            improvement = None
            if baseline is not None and solver != "back-and-forth":
                improvement = (baseline - mean) / baseline * 100.0
        else:
            mean = lo = hi = sd = improvement = None
            if rows and error is None:
                error = "no valid solutions"
        cells.append(CellSummary(solver, problem, len(rows), len(costs),
                                 mean, lo, hi, sd, baseline, improvement, error))
    return BenchSummary(tuple(cells), n_trials, base_seed)


def run_benchmark(farm: FarmMap, config: BenchConfig | None = None,
                  out_dir=None):
    """Run the configured grid. Returns (summary, reports, best_plans) where
    best_plans maps (solver, problem) to the lowest-cost valid FleetPlan.

    A failure (disconnected half, impossible partition, ...) aborts only its
    cell; the error lands in that cell's summary row. With out_dir set,
    reports go to out_dir/trials.jsonl and the summary to out_dir/summary.json.
    """
    config = config or BenchConfig()
    waypoints = generate_waypoints(farm)
    reports: list[TrialReport] = []
    best_plans: dict[tuple[str, str], FleetPlan] = {}
    cell_errors: dict[tuple[str, str], str] = {}
    grid = [(s, p) for p in config.problems for s in config.solvers]

    for problem in config.problems:
        n_drones = _DRONES[problem]
        for solver in config.solvers:
            if solver == "back-and-forth":
                seeds = [config.base_seed]
            else:
                seeds = [config.base_seed + i for i in range(config.n_trials)]
            for seed in seeds:
                params = AcoParams(
                    variant=solver if solver != "back-and-forth" else "AS",
                    n_ants=config.aco.n_ants, n_iterations=config.aco.n_iterations,
                    alpha=config.aco.alpha, beta=config.aco.beta,
                    rho=config.aco.rho, q_deposit=config.aco.q_deposit, seed=seed)
                t0 = time.perf_counter()
                try:
                    plan = plan_fleet(farm, waypoints, n_drones, solver,
                                      config.model, params)
                except ValueError as exc:
                    cell_errors[(solver, problem)] = str(exc)
                    break
                wall_ms = (time.perf_counter() - t0) * 1000.0
                reports.append(TrialReport(solver, problem, seed, plan.valid,
                                           plan.total_cost_kj, plan.total_distance_m,
                                           plan.total_turn_deg, wall_ms))
                key = (solver, problem)
                if plan.valid and (key not in best_plans
                                   or plan.total_cost_kj < best_plans[key].total_cost_kj):
                    best_plans[key] = plan

    reports.sort(key=lambda r: (r.solver, r.problem, r.seed))
    summary = summarize(reports, cell_errors, config.n_trials, config.base_seed,
                        grid=grid)
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_reports(out / "trials.jsonl", reports)
        write_summary(out / "summary.json", summary)
    return summary, reports, best_plans


def write_reports(path, reports) -> None:
    lines = [json.dumps(r.to_json_dict()) for r in reports]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))


def write_summary(path, summary: BenchSummary) -> None:
    Path(path).write_text(json.dumps(summary.to_json_dict(), indent=2) + "\n")
