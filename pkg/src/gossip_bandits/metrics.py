"""Game-level reward, loss and regret accounting.

Two regret flavors are computed for every run.  The literal one charges
each player its chosen arm's true mean even when several players chose
the same arm; under heavy collisions it double-counts and can go
negative.  The occupancy one credits each pulled arm's mean once per
turn, which is the quantity the total-reward definition actually pays,
and is the headline series for plots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .env import ArmSet, TurnOutcome


@dataclass(frozen=True)
class GameHistory:
    """An episode's turn outcomes plus the ground-truth arms (metrics-side only)."""

    turns: tuple[TurnOutcome, ...]
    arms: ArmSet

    def __post_init__(self) -> None:
        object.__setattr__(self, "turns", tuple(self.turns))
        if not self.turns:
            raise ValueError("history must contain at least one turn")
        n_players = self.turns[0].n_players
        for k, turn in enumerate(self.turns):
            if turn.n_players != n_players:
                raise ValueError(f"turn {k} has {turn.n_players} players, expected {n_players}")
            if turn.n_arms != self.arms.n_arms:
                raise ValueError(f"turn {k} has {turn.n_arms} arms, expected {self.arms.n_arms}")

    @property
    def n_turns(self) -> int:
        return len(self.turns)

    @property
    def n_players(self) -> int:
        return self.turns[0].n_players

    @cached_property
    def choices_matrix(self) -> np.ndarray:
        """(turns, players) chosen arm indices."""
        return np.asarray([t.choices for t in self.turns], dtype=np.int64)

    @cached_property
    def rewards_matrix(self) -> np.ndarray:
        """(turns, arms) realized 0/1 rewards, pulled or not."""
        return np.asarray([t.arm_rewards for t in self.turns], dtype=np.int64)

    @cached_property
    def occupancy_matrix(self) -> np.ndarray:
        """(turns, arms) 0/1 whether anyone pulled the arm."""
        occupied = np.zeros((self.n_turns, self.arms.n_arms), dtype=np.int64)
        rows = np.repeat(np.arange(self.n_turns), self.n_players)
        occupied[rows, self.choices_matrix.ravel()] = 1
        return occupied


@dataclass(frozen=True)
class RunRecord:
    """Per-turn cumulative metric series for one seeded episode."""

    cumulative_reward: np.ndarray
    cumulative_loss: np.ndarray
    regret_literal: np.ndarray
    regret_occupancy: np.ndarray
    metadata: dict

    @property
    def n_turns(self) -> int:
        return len(self.cumulative_reward)


def occupancy_indicator(choices: Sequence[int], n_arms: int) -> np.ndarray:
    """0/1 vector over arms: was the arm chosen by at least one player."""
    if len(choices) == 0:
        raise ValueError("choices must be nonempty")
    out = np.zeros(n_arms, dtype=np.int64)
    for choice in choices:
        arm = int(choice)
        if not 0 <= arm < n_arms:
            raise ValueError(f"choice {arm} outside [0, {n_arms})")
        out[arm] = 1
    return out


def cumulative_reward(history: GameHistory) -> np.ndarray:
    """Running total of each pulled arm's realization, counted once per turn."""
    per_turn = (history.occupancy_matrix * history.rewards_matrix).sum(axis=1)
    return np.cumsum(per_turn)


def cumulative_loss(history: GameHistory) -> np.ndarray:
    """Running total of realizations left on unpulled arms."""
    per_turn = ((1 - history.occupancy_matrix) * history.rewards_matrix).sum(axis=1)
    return np.cumsum(per_turn)


def total_reward(history: GameHistory) -> int:
    return int(cumulative_reward(history)[-1])


def total_loss(history: GameHistory) -> int:
    return int(cumulative_loss(history)[-1])


def optimal_per_turn_reward(arms: ArmSet, n_players: int) -> float:
    """Expected per-turn reward of the best static assignment: top-N mean sum.

    Uses a correctly rounded sum so the textbook vectors come out exact.
    """
    if n_players < 1:
        raise ValueError(f"need at least 1 player, got {n_players}")
    if n_players > arms.n_arms:
        raise ValueError(f"{n_players} players cannot occupy {arms.n_arms} distinct arms")
    top = sorted(arms.means, reverse=True)[:n_players]
    return math.fsum(top)


def cumulative_regret_literal(history: GameHistory) -> np.ndarray:
    """Per-player mean-of-chosen-arm shortfall, collisions not deducted.

    Can go negative when players stack on a good arm, since every puller
    is credited the full mean.
    """
    best = optimal_per_turn_reward(history.arms, history.n_players)
    chosen_means = history.arms.means_array[history.choices_matrix].sum(axis=1)
    return np.cumsum(best - chosen_means)


def cumulative_regret_occupancy(history: GameHistory) -> np.ndarray:
    """Shortfall of expected occupied-arm reward against the top-N baseline."""
    best = optimal_per_turn_reward(history.arms, history.n_players)
    occupied_means = history.occupancy_matrix @ history.arms.means_array
    return np.cumsum(best - occupied_means)


def expected_turn_loss(
    mix: Sequence[float], arms: ArmSet, n_players: int
) -> float:
    """Expected one-turn loss when every player samples arms from ``mix``."""
    c = np.asarray(mix, dtype=float)
    if c.shape != (arms.n_arms,):
        raise ValueError(f"mix has shape {c.shape}, expected ({arms.n_arms},)")
    return float(np.sum((1.0 - c) ** n_players * arms.means_array))


def build_run_record(history: GameHistory, metadata: dict) -> RunRecord:
    """Assemble all four metric series for one completed episode."""
    return RunRecord(
        cumulative_reward=cumulative_reward(history),
        cumulative_loss=cumulative_loss(history),
        regret_literal=cumulative_regret_literal(history),
        regret_occupancy=cumulative_regret_occupancy(history),
        metadata=dict(metadata),
    )
