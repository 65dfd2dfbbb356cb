"""Ant colony solvers for the coverage tour.

Two variants share one construction engine:

* "AS" (ant system): every ant that completes a valid tour deposits
  q_deposit / cost on the edges it used.
* "MMAS" (max-min ant system): only the best tour found so far deposits
  (1 / best cost), and trails are clamped into [tau_min, tau_max] with
  tau_max = 1 / (rho * best_cost) and tau_min = tau_max / (2 * n_nodes).

Ants start at home, repeatedly pick an unvisited waypoint j among the current
node's neighbours with probability proportional to tau^alpha * eta^beta,
where eta = 1 / (lambda * d + gamma * turn) accounts for the heading change
the hop would require. An ant that strands on a node with no unvisited
neighbours, or that cannot close the loop back to home, yields an invalid
tour and deposits nothing.

All ants of an iteration are constructed in lockstep on numpy arrays; the
same engine runs single constructions (construct_tour) with a batch of one.
Randomness comes from random.Random (the stdlib Mersenne twister), so runs
are reproducible per seed across platforms.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .energy import EnergyModel, Tour, path_metrics, tour_cost
from .routegraph import RouteGraph

MAX_DEFAULT_ANTS = 50
# full (h, i, j) heuristic tables are only built while they stay small
_TABLE_NODE_LIMIT = 150


@dataclass(frozen=True, slots=True)
class AcoParams:
    variant: str = "AS"
    n_ants: int | None = None          # default: one per waypoint, capped at 50
    n_iterations: int = 300
    alpha: float = 1.0
    beta: float = 3.0
    rho: float | None = None           # default 0.5 for AS, 0.05 for MMAS
    q_deposit: float | None = None     # default: mean greedy nearest-neighbour cost
    seed: int = 0

    def __post_init__(self):
        if self.variant not in ("AS", "MMAS"):
            raise ValueError(f"unknown variant {self.variant!r}, expected 'AS' or 'MMAS'")
        if self.n_ants is not None and self.n_ants < 1:
            raise ValueError("n_ants must be at least 1")
        if self.n_iterations < 1:
            raise ValueError("n_iterations must be at least 1")
        if not (math.isfinite(self.alpha) and self.alpha >= 0):
            raise ValueError("alpha must be finite and >= 0")
        if not (math.isfinite(self.beta) and self.beta >= 0):
            raise ValueError("beta must be finite and >= 0")
        if self.rho is not None and not 0.0 < self.rho < 1.0:
            raise ValueError("rho must lie in (0, 1)")
        if self.q_deposit is not None and not self.q_deposit > 0:
            raise ValueError("q_deposit must be positive")


@dataclass(frozen=True, slots=True)
class SolverRun:
    """Outcome of one solve: the best tour, the per-iteration best-valid cost
    trace (inf before the first valid tour appears) and bookkeeping."""

    best_tour: Tour
    best_cost_history: tuple[float, ...]
    valid: bool
    seed: int
    iterations_executed: int


class _Space:
    """Precomputed arrays for fast construction on one graph + model."""

    def __init__(self, g: RouteGraph, model: EnergyModel, beta: float):
        if not model.lambda_kj_per_m > 0:
            raise ValueError("solver needs a positive distance coefficient")
        n = g.n_nodes
        self.n = n
        self.home = g.home
        self.adj = g.adj
        self.xy = g.xy
        self.beta = beta
        self.gamma = model.gamma_kj_per_deg
        d = g.dist
        with np.errstate(invalid="ignore", divide="ignore"):
            ux = np.where(d > 0, (g.xy[None, :, 0] - g.xy[:, None, 0]) / d, 0.0)
            uy = np.where(d > 0, (g.xy[None, :, 1] - g.xy[:, None, 1]) / d, 0.0)
        self.ux, self.uy = ux, uy
        # lambda * d with pruned pairs at infinity so their weight vanishes
        self.den = np.where(g.adj, model.lambda_kj_per_m * d, np.inf)
        self.eta_pow = None
        if n <= _TABLE_NODE_LIMIT:
            theta = self._theta_table()
            den_ext = np.empty((n + 1, n, n))
            den_ext[:n] = self.den[None, :, :] + self.gamma * theta
            den_ext[n] = self.den  # slot for "no approach heading yet"
            self.eta_pow = _pow_eta(den_ext, beta)

    def _theta_table(self) -> np.ndarray:
        # theta[h, i, j]: heading change at i coming from h and leaving to j
        ux, uy = self.ux, self.uy
        cross = np.abs(ux[:, :, None] * uy[None, :, :] - uy[:, :, None] * ux[None, :, :])
        dot = ux[:, :, None] * ux[None, :, :] + uy[:, :, None] * uy[None, :, :]
        return np.degrees(np.arctan2(cross, dot))

    def theta_rows(self, h: np.ndarray, i: np.ndarray) -> np.ndarray:
        """(m, n) heading changes at i[k] from heading h[k]->i[k]; zero rows
        where h[k] < 0 (no history)."""
        hs = np.where(h < 0, 0, h)
        ux_in = self.ux[hs, i][:, None]
        uy_in = self.uy[hs, i][:, None]
        cross = np.abs(ux_in * self.uy[i] - uy_in * self.ux[i])
        dot = ux_in * self.ux[i] + uy_in * self.uy[i]
        out = np.degrees(np.arctan2(cross, dot))
        out[h < 0] = 0.0
        return out

    def eta_pow_rows(self, h: np.ndarray, i: np.ndarray) -> np.ndarray:
        """(m, n) values of eta^beta for hops i[k] -> j given history h[k]."""
        if self.eta_pow is not None:
            hs = np.where(h < 0, self.n, h)
            return self.eta_pow[hs, i]
        return _pow_eta(self.den[i] + self.gamma * self.theta_rows(h, i), self.beta)


def _pow_eta(den: np.ndarray, beta: float) -> np.ndarray:
    """(1/den)^beta with 0 at den=inf, also for beta == 0."""
    if beta == 0.0:
        return np.isfinite(den).astype(float)
    inv = np.zeros_like(den)
    np.divide(1.0, den, out=inv, where=np.isfinite(den))
    if beta == 1.0:
        return inv
    if float(beta).is_integer() and 2 <= beta <= 8:
        out = inv * inv
        for _ in range(int(beta) - 2):
            out *= inv
        return out
    return np.power(inv, beta)


def _construct_batch(space: _Space, m: int, tau_pow: np.ndarray,
                     rng: random.Random) -> list[tuple[tuple[int, ...], bool]]:
    """Run m ants in lockstep. Returns (nodes, complete) per ant, in ant
    order; complete means all waypoints visited and the loop closed at home.

    Random draws happen once per construction step for the ants still walking,
    in ascending ant order, so results are reproducible for a given rng state.
    """
    n, home = space.n, space.home
    n_way = home
    visited = np.zeros((m, n), dtype=bool)
    visited[:, home] = True
    cur = np.full(m, home)
    prev = np.full(m, -1)
    paths = np.full((m, n_way + 2), home, dtype=np.int64)
    filled = np.ones(m, dtype=np.int64)  # next free slot in paths
    alive = np.ones(m, dtype=bool)

    for _ in range(n_way):
        rows = np.nonzero(alive)[0]
        if rows.size == 0:
            break
        w = tau_pow[cur[rows]] * space.eta_pow_rows(prev[rows], cur[rows])
        w[visited[rows]] = 0.0
        tot = w.sum(axis=1)
        empty = tot <= 0.0
        if empty.any():
            # no weight left: dead end, or every option underflowed to zero
            feas = space.adj[cur[rows]] & ~visited[rows]
            rescue = empty & feas.any(axis=1)
            if rescue.any():
                w[rescue] = feas[rescue].astype(float)  # uniform fallback
                tot = w.sum(axis=1)
            dead = empty & ~rescue
            if dead.any():
                alive[rows[dead]] = False
                rows = rows[~dead]
                w, tot = w[~dead], tot[~dead]
        if rows.size == 0:
            continue
        r = np.array([rng.random() for _ in range(rows.size)]) * tot
        csum = np.cumsum(w, axis=1)
        nxt = (csum > r[:, None]).argmax(axis=1)
        # guard the rare rounding case r >= csum[-1]: take the last option
        overshoot = csum[:, -1] <= r
        if overshoot.any():
            last = n - 1 - np.argmax(w[:, ::-1] > 0, axis=1)
            nxt = np.where(overshoot, last, nxt)
        visited[rows, nxt] = True
        prev[rows] = cur[rows]
        cur[rows] = nxt
        paths[rows, filled[rows]] = nxt
        filled[rows] += 1

    out = []
    for k in range(m):
        full = alive[k]
        closed = full and bool(space.adj[cur[k], home])
        if closed:
            nodes = tuple(int(v) for v in paths[k])
        else:
            nodes = tuple(int(v) for v in paths[k, :filled[k]])
        out.append((nodes, closed))
    return out


def _resolve(g: RouteGraph, params: AcoParams) -> tuple[int, float]:
    n_ants = params.n_ants
    if n_ants is None:
        n_ants = max(1, min(g.n_waypoints, MAX_DEFAULT_ANTS))
    rho = params.rho
    if rho is None:
        rho = 0.5 if params.variant == "AS" else 0.05
    return n_ants, rho


def nearest_neighbour_cost(g: RouteGraph, model: EnergyModel) -> float:
    """Mean cost of greedy closed tours, one per start node.

    Greedy by the turn-aware hop cost; pruned edges fall back to the straight
    line, since the figure is only used as a magnitude reference for deposits
    and initial trail levels.
    """
    space = _Space(g, model, beta=1.0)
    lam, gam = model.lambda_kj_per_m, model.gamma_kj_per_deg
    n = g.n_nodes
    total = 0.0
    for start in range(n):
        seen = np.zeros(n, dtype=bool)
        seen[start] = True
        order = [start]
        cur, prev = start, -1
        for _ in range(n - 1):
            hop = lam * g.dist[cur] + gam * space.theta_rows(
                np.array([prev]), np.array([cur]))[0]
            hop[seen] = np.inf
            hop[g.dist[cur] == 0.0] = np.inf  # coincident nodes are not hops
            nxt = int(np.argmin(hop))
            if not np.isfinite(hop[nxt]):
                break
            seen[nxt] = True
            order.append(nxt)
            prev, cur = cur, nxt
        if len(order) > 1:
            dist, turn = path_metrics(space.xy[order + [start]])
            total += lam * dist + gam * turn
    return total / n


def construct_tour(g: RouteGraph, model: EnergyModel, tau: np.ndarray,
                   params: AcoParams, rng: random.Random) -> Tour:
    """Sample a single ant tour under the given trail matrix."""
    n = g.n_nodes
    tau = np.asarray(tau, dtype=float)
    if tau.shape != (n, n):
        raise ValueError(f"tau must have shape ({n}, {n}), got {tau.shape}")
    space = _Space(g, model, params.beta)
    tau_pow = tau if params.alpha == 1.0 else np.power(tau, params.alpha)
    ((nodes, complete),) = _construct_batch(space, 1, tau_pow, rng)
    return _as_tour(g, model, nodes, complete)


def _as_tour(g: RouteGraph, model: EnergyModel, nodes: tuple[int, ...],
             complete: bool) -> Tour:
    if len(nodes) < 2:
        return Tour(nodes, 0.0, 0.0, 0.0, False)
    tour = tour_cost(g, model, nodes)
    if complete and not tour.is_valid:
        raise AssertionError("constructed tour failed the structural check")
    return tour


def solve(g: RouteGraph, model: EnergyModel, params: AcoParams,
          trace=None) -> SolverRun:
    """Run the configured colony and return the best tour found.

    trace, when given, is called after every iteration as
    trace(iteration, tau_copy, bounds, ants) with bounds = (tau_min, tau_max)
    for MMAS (None for AS) and ants = [(nodes, cost_kj, complete), ...] in
    construction order. Tracing copies the trail matrix, so leave it None for
    production runs.
    """
    if g.n_waypoints == 0:
        raise ValueError("graph has no waypoints to cover")
    n = g.n_nodes
    n_ants, rho = _resolve(g, params)
    space = _Space(g, model, params.beta)
    rng = random.Random(params.seed)
    lam, gam = model.lambda_kj_per_m, model.gamma_kj_per_deg

    q = params.q_deposit if params.q_deposit is not None else nearest_neighbour_cost(g, model)
    if params.variant == "AS":
        tau = np.full((n, n), n_ants / q)
    else:
        tau_max = 1.0 / (rho * q)  # best cost unknown yet: seed with the greedy scale
        tau = np.full((n, n), tau_max)

    best_nodes: tuple[int, ...] | None = None
    best_cost = math.inf
    fallback_nodes: tuple[int, ...] | None = None  # best incomplete walk
    fallback_cost = math.inf
    history = []

    for it in range(params.n_iterations):
        tau_pow = tau if params.alpha == 1.0 else np.power(tau, params.alpha)
        ants = _construct_batch(space, n_ants, tau_pow, rng)
        costed = []
        for nodes, complete in ants:
            if len(nodes) < 2:
                costed.append((nodes, math.inf, False))
                continue
            dist, turn = path_metrics(space.xy[list(nodes)])
            cost = lam * dist + gam * turn
            costed.append((nodes, cost, complete))
            if complete:
                if cost < best_cost:
                    best_nodes, best_cost = nodes, cost
            elif cost < fallback_cost:
                fallback_nodes, fallback_cost = nodes, cost
        history.append(best_cost)

        tau *= (1.0 - rho)
        if params.variant == "AS":
            for nodes, cost, complete in costed:
                if not complete:
                    continue
                a = np.asarray(nodes[:-1])
                b = np.asarray(nodes[1:])
                tau[a, b] += q / cost
                tau[b, a] += q / cost
            bounds = None
        else:
            ref = best_cost if best_nodes is not None else q
            tau_max = 1.0 / (rho * ref)
            tau_min = tau_max / (2.0 * n)
            if best_nodes is not None:
                a = np.asarray(best_nodes[:-1])
                b = np.asarray(best_nodes[1:])
                tau[a, b] += 1.0 / best_cost
                tau[b, a] += 1.0 / best_cost
            np.clip(tau, tau_min, tau_max, out=tau)
            bounds = (tau_min, tau_max)
        if trace is not None:
            trace(it, tau.copy(), bounds, costed)

    if best_nodes is not None:
        best = _as_tour(g, model, best_nodes, True)
    elif fallback_nodes is not None:
        best = _as_tour(g, model, fallback_nodes, False)
    else:
        best = Tour((g.home,), 0.0, 0.0, 0.0, False)
    return SolverRun(best, tuple(history), best.is_valid, params.seed,
                     params.n_iterations)
