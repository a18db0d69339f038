"""Per-turn random communication graphs and outcome dissemination.

A fresh undirected graph is sampled at the end of every turn: each of the
N(N-1)/2 player pairs is connected independently with probability
``alpha``.  Every player then reports the arm it pulled and the reward it
actually received (a collision loser reports 0) to its current neighbors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

import numpy as np

from .env import TurnOutcome


@lru_cache(maxsize=None)
def _player_pairs(n_players: int) -> tuple[tuple[int, int], ...]:
    return tuple(combinations(range(n_players), 2))


class Observation(NamedTuple):
    """One (arm, reward) report as seen by a receiving player."""

    arm: int
    reward: int
    source: int


@dataclass(frozen=True)
class CommGraph:
    """Undirected neighbor relation for a single turn."""

    n_players: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop on player {a}")
            if not (0 <= a < b < self.n_players):
                raise ValueError(f"edge ({a}, {b}) is not an ordered in-range pair")

    def neighbors(self, player: int) -> list[int]:
        out = [b if a == player else a for a, b in self.edges if player in (a, b)]
        return sorted(out)


def sample_graph(
    n_players: int, alpha: float, rng: np.random.Generator
) -> CommGraph:
    """Sample a graph with independent edge probability ``alpha``."""
    if n_players < 1:
        raise ValueError(f"need at least 1 player, got {n_players}")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"connectivity {alpha} outside [0, 1]")
    pairs = _player_pairs(n_players)
    # Always N(N-1)/2 draws, so a dedicated stream stays aligned with the
    # turn counter no matter what alpha is.
    keep = rng.random(len(pairs)) < alpha
    edges = frozenset(pair for pair, kept in zip(pairs, keep) if kept)
    return CommGraph(n_players=n_players, edges=edges)


def disseminate(outcome: TurnOutcome, graph: CommGraph) -> list[list[Observation]]:
    """Deliver each player's report to itself and its current neighbors.

    Returns one inbox per player: the player's own observation first, then
    one observation per neighbor in ascending neighbor order.  Delivery is
    symmetric, and duplicate information (two neighbors on the same arm)
    is kept.
    """
    n = graph.n_players
    if n != outcome.n_players:
        raise ValueError(
            f"graph has {n} players but outcome has {outcome.n_players}"
        )
    reports = [
        Observation(outcome.choices[p], int(outcome.realized_rewards[p]), p)
        for p in range(n)
    ]
    inboxes = [[reports[p]] for p in range(n)]
    for a, b in sorted(graph.edges):
        inboxes[a].append(reports[b])
        inboxes[b].append(reports[a])
    return inboxes
