"""Stress layout of routing graphs by stochastic pairwise updates.

Each update picks a node pair (i, j) and moves both endpoints along the
line joining them so that their distance approaches the graph distance
d_ij, by a fraction min(1, eta * w_ij) of the error with w_ij = d_ij^-2.
The step size eta decays geometrically from 1/min(w) to eps/max(w) over
the epochs. While eta * max(w) > 1 the move fraction is capped at 1 for
the shortest pairs (a coarse phase in which stress may briefly rise);
after that every update is a damped gradient step and stress decreases
epoch by epoch.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components, dijkstra

from .routing import RoutingGraph


@dataclass(frozen=True)
class LayoutConfig:
    default_edge_length: float = 1.0
    split_edge_length: float = 0.25
    iterations: int = 30  # epochs
    seed: int = 0
    convergence_tol: float = 1e-4
    pairs_per_node: Optional[int] = None  # updates per epoch = pairs_per_node * |V|; None = every pair
    eps: float = 0.01
    gap: float = 2.0  # horizontal gap between packed components, in edge lengths

    def __post_init__(self):
        if self.default_edge_length <= 0 or self.split_edge_length <= 0:
            raise ValueError("edge lengths must be positive")
        if self.split_edge_length >= self.default_edge_length:
            raise ValueError("split_edge_length must be shorter than default_edge_length")
        if self.iterations < 1 or (self.pairs_per_node is not None and self.pairs_per_node < 1):
            raise ValueError("iterations and pairs_per_node must be positive")
        if self.convergence_tol <= 0:
            raise ValueError("convergence_tol must be positive")


@dataclass
class LayoutResult:
    positions: dict
    history: list  # stress after random init, then after every epoch
    annealed_from: int = 0  # history index where the uncapped (annealed) epochs begin


def _weighted_edges(r: RoutingGraph, cfg: LayoutConfig) -> dict:
    return r.edge_lengths(cfg.default_edge_length, cfg.split_edge_length)


def _distance_matrix(nodes: list, lengths: dict) -> np.ndarray:
    index = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    if not lengths:
        d = np.full((n, n), np.inf)
        np.fill_diagonal(d, 0.0)
        return d
    rows, cols, vals = [], [], []
    for (a, b), length in lengths.items():
        rows.append(index[a])
        cols.append(index[b])
        vals.append(length)
    adj = coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
    return dijkstra(adj, directed=False)


def graph_distances(r: RoutingGraph, cfg: Optional[LayoutConfig] = None):
    """Node order and all-pairs distance matrix under the configured edge lengths."""
    cfg = cfg or LayoutConfig()
    nodes = sorted(r.nodes)
    return nodes, _distance_matrix(nodes, _weighted_edges(r, cfg))


def _stress_matrix(x: np.ndarray, d: np.ndarray) -> float:
    iu = np.triu_indices(len(x), k=1)
    dij = d[iu]
    ok = np.isfinite(dij) & (dij > 0)
    diff = x[iu[0][ok]] - x[iu[1][ok]]
    dist = np.sqrt((diff ** 2).sum(axis=1))
    return float(np.sum((dist - dij[ok]) ** 2 / dij[ok] ** 2))


def stress(pos: dict, r: RoutingGraph, cfg: Optional[LayoutConfig] = None) -> float:
    """Sum over connected node pairs of d_ij^-2 (|x_i - x_j| - d_ij)^2."""
    nodes, d = graph_distances(r, cfg)
    missing = [v for v in nodes if v not in pos]
    if missing:
        raise ValueError(f"no position for nodes {missing[:5]}")
    x = np.array([pos[v] for v in nodes], dtype=float).reshape(len(nodes), 2)
    return _stress_matrix(x, d)


def _sgd(x: np.ndarray, d: np.ndarray, cfg: LayoutConfig, rng: np.random.Generator):
    n = len(x)
    iu, ju = np.triu_indices(n, k=1)
    dij = d[iu, ju]
    ok = np.isfinite(dij) & (dij > 0)
    iu, ju, dij = iu[ok], ju[ok], dij[ok]
    history = [_stress_matrix(x, d)]
    if len(dij) == 0:
        return history, 0
    w = dij ** -2.0
    eta_max = 1.0 / w.min()
    eta_min = cfg.eps / w.max()
    epochs = cfg.iterations
    decay = math.log(eta_max / eta_min) / max(epochs - 1, 1)
    per_epoch = len(dij) if cfg.pairs_per_node is None else min(len(dij), cfg.pairs_per_node * n)

    pts = x.tolist()
    annealed_from = None
    for epoch in range(epochs):
        eta = eta_max * math.exp(-decay * epoch)
        if annealed_from is None and eta * w.max() <= 1.0:
            annealed_from = epoch
        picks = rng.permutation(len(dij))[:per_epoch]
        for i, j, dist_t, wt in zip(iu[picks].tolist(), ju[picks].tolist(),
                                    dij[picks].tolist(), w[picks].tolist()):
            pi, pj = pts[i], pts[j]
            dx, dy = pi[0] - pj[0], pi[1] - pj[1]
            cur = math.hypot(dx, dy)
            if cur == 0.0:
                continue
            mu = min(1.0, eta * wt)
            f = mu * (cur - dist_t) / (2.0 * cur)
            pi[0] -= f * dx
            pi[1] -= f * dy
            pj[0] += f * dx
            pj[1] += f * dy
        x[:] = pts
        history.append(_stress_matrix(x, d))
        prev = history[-2]
        if epoch > 0 and prev > 0 and abs(prev - history[-1]) / prev < cfg.convergence_tol:
            break
    return history, (len(history) - 1 if annealed_from is None else annealed_from)


def layout_distances(d: np.ndarray, cfg: Optional[LayoutConfig] = None, ties=()):
    """Stress layout for a distance matrix.

    Returns the (n, 2) positions, the stress history and the history index
    at which the annealed epochs begin.

    Disconnected components (infinite distance) are laid out separately
    and packed left to right. Each ``(i, j)`` in ``ties`` starts node j at
    node i's initial position (up to a tiny offset).
    """
    cfg = cfg or LayoutConfig()
    n = len(d)
    rng = np.random.default_rng(cfg.seed)
    if n == 0:
        return np.zeros((0, 2)), [0.0], 0
    finite = np.isfinite(d)
    n_comp, comp = connected_components(finite, directed=False)
    tie_to = dict((j, i) for i, j in ties)
    x = np.zeros((n, 2))
    history = None
    annealed_from = 0
    cursor = 0.0
    for c in range(n_comp):
        idx = np.flatnonzero(comp == c)
        sub = d[np.ix_(idx, idx)]
        scale = max(float(sub.max()), cfg.default_edge_length)
        xs = rng.uniform(0.0, scale, size=(len(idx), 2))
        local = {v: k for k, v in enumerate(idx.tolist())}
        for v, k in local.items():
            if v in tie_to:
                xs[k] = xs[local[tie_to[v]]] + 1e-3 * cfg.split_edge_length * rng.standard_normal(2)
        hist, start = _sgd(xs, sub, cfg, rng)
        annealed_from = max(annealed_from, start)
        xs = xs - xs.min(axis=0)
        xs[:, 0] += cursor
        cursor = float(xs[:, 0].max()) + cfg.gap * cfg.default_edge_length
        x[idx] = xs
        if history is None:
            history = hist
        else:
            # combine per-epoch totals; finished components keep their last value
            length = max(len(history), len(hist))
            pad = lambda h: h + [h[-1]] * (length - len(h))
            history = [a + b for a, b in zip(pad(history), pad(hist))]
    return x, history, annealed_from


def layout_with_history(r: RoutingGraph, cfg: Optional[LayoutConfig] = None) -> LayoutResult:
    cfg = cfg or LayoutConfig()
    nodes, d = graph_distances(r, cfg)
    index = {v: i for i, v in enumerate(nodes)}
    ties = [(index[a], index[b]) for a, b in r.split_map.values()]
    x, history, start = layout_distances(d, cfg, ties)
    pos = {v: (float(x[i, 0]), float(x[i, 1])) for i, v in enumerate(nodes)}
    return LayoutResult(pos, history, start)


def layout(r: RoutingGraph, cfg: Optional[LayoutConfig] = None) -> dict:
    """Positions ``{node: (x, y)}`` for every routing-graph node."""
    return layout_with_history(r, cfg).positions


def positions_to_json(pos: dict) -> str:
    return json.dumps({str(k): list(v) for k, v in sorted(pos.items())})


def positions_from_json(text: str) -> dict:
    return {int(k): tuple(v) for k, v in json.loads(text).items()}
