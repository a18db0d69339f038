"""Independent numeric oracles backing the test-suite.

These deliberately avoid the closed-form mixing solution: the minimizer
works the expected-loss objective directly with accelerated projected
gradient steps, and the baseline enumerator checks every arm subset.
Agreement between the two routes is what the tests assert.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Sequence

import numpy as np


def project_to_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-based)."""
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    thresholds = (np.cumsum(u) - 1.0) / np.arange(1, len(v) + 1)
    k = np.nonzero(thresholds < u)[0][-1]
    return np.clip(v - thresholds[k], 0.0, None)


def minimize_expected_turn_loss(
    means: Sequence[float],
    n_players: int,
    max_iter: int = 20000,
    tol: float = 1e-14,
) -> np.ndarray:
    """Minimize sum_i (1-c_i)^N mu_i over the simplex by accelerated PGD.

    The objective is convex with a diagonal Hessian bounded by
    N(N-1)*max(mu), so a fixed step of its inverse is safe.  Momentum is
    restarted whenever the objective rises, which keeps late iterations
    monotone and lets the iterate settle to the constrained optimum well
    below the tolerances asserted in the tests.
    """
    mu = np.asarray(means, dtype=float)
    if np.any(mu <= 0.0):
        raise ValueError("means must be positive")
    if n_players < 2:
        raise ValueError(f"need at least 2 players, got {n_players}")

    def objective(c: np.ndarray) -> float:
        return float(np.sum((1.0 - c) ** n_players * mu))

    def gradient(c: np.ndarray) -> np.ndarray:
        return -n_players * (1.0 - c) ** (n_players - 1) * mu

    step = 1.0 / (n_players * (n_players - 1) * float(mu.max()))
    c = np.full(len(mu), 1.0 / len(mu))
    momentum = c.copy()
    t_prev = 1.0
    f_prev = objective(c)
    for _ in range(max_iter):
        c_next = project_to_simplex(momentum - step * gradient(momentum))
        f_next = objective(c_next)
        if f_next > f_prev:  # restart momentum, plain projected step
            c_next = project_to_simplex(c - step * gradient(c))
            f_next = objective(c_next)
            t_prev = 1.0
        t_next = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t_prev * t_prev))
        momentum = c_next + ((t_prev - 1.0) / t_next) * (c_next - c)
        shift = float(np.max(np.abs(c_next - c)))
        c, t_prev, f_prev = c_next, t_next, f_next
        if shift < tol:
            break
    return c


def best_subset_reward(means: Sequence[float], n_players: int) -> float:
    """Max total mean over every assignment of players to distinct arms.

    Exhaustive enumeration; tractable for the small desk-scale settings
    the tests use.
    """
    means = [float(m) for m in means]
    if n_players > len(means):
        raise ValueError(f"{n_players} players cannot occupy {len(means)} distinct arms")
    return max(math.fsum(subset) for subset in combinations(means, n_players))


def random_simplex_points(
    n_points: int, dim: int, rng: np.random.Generator
) -> np.ndarray:
    """(n_points, dim) rows drawn uniformly from the probability simplex."""
    return rng.dirichlet(np.ones(dim), size=n_points)
