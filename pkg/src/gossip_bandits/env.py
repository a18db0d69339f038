"""Bernoulli arm environment with a random-winner collision channel.

Rewards are realized per (arm, turn) before anyone is paid: all players
pulling the same arm compete for one realization, a uniformly chosen
winner takes it, and the losers get zero.  The environment never tells a
player whether it collided; a loser's zero is indistinguishable from a
true zero draw.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class ArmSet:
    """True Bernoulli success probabilities, hidden from the players."""

    means: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "means", tuple(float(m) for m in self.means))
        if len(self.means) < 2:
            raise ValueError(f"need at least 2 arms, got {len(self.means)}")
        for i, m in enumerate(self.means):
            if not 0.0 <= m <= 1.0:
                raise ValueError(f"arm {i} has mean {m} outside [0, 1]")

    @property
    def n_arms(self) -> int:
        return len(self.means)

    @cached_property
    def means_array(self) -> np.ndarray:
        return np.asarray(self.means, dtype=float)


@dataclass(frozen=True)
class TurnOutcome:
    """Everything that happened in one turn.

    ``winners`` maps each pulled arm to the player who took its reward;
    arms nobody pulled are absent.  ``arm_rewards`` is realized for every
    arm whether or not it was pulled.
    """

    choices: tuple[int, ...]
    arm_rewards: np.ndarray
    winners: dict[int, int]
    realized_rewards: np.ndarray

    @property
    def n_players(self) -> int:
        return len(self.choices)

    @property
    def n_arms(self) -> int:
        return len(self.arm_rewards)


def sample_arm_rewards(arms: ArmSet, rng: np.random.Generator) -> np.ndarray:
    """Draw this turn's 0/1 realization for every arm, pulled or not."""
    return (rng.random(arms.n_arms) < arms.means_array).astype(np.int64)


def resolve_collisions(
    choices: Sequence[int],
    arm_rewards: np.ndarray,
    rng: np.random.Generator,
) -> TurnOutcome:
    """Pay each pulled arm's realization to one uniformly chosen puller.

    Players alone on an arm receive its realization unmodified.  Raises
    ``ValueError`` on an out-of-range choice; that is a programming
    error, not a gameplay event.
    """
    arm_rewards = np.asarray(arm_rewards)
    n_arms = len(arm_rewards)
    pullers: dict[int, list[int]] = {}
    for player, choice in enumerate(choices):
        arm = int(choice)
        if not 0 <= arm < n_arms:
            raise ValueError(
                f"player {player} chose arm {arm}, outside [0, {n_arms})"
            )
        pullers.setdefault(arm, []).append(player)

    realized = np.zeros(len(choices), dtype=np.int64)
    winners: dict[int, int] = {}
    for arm in sorted(pullers):
        contenders = pullers[arm]
        if len(contenders) == 1:
            winner = contenders[0]
        else:
            winner = contenders[int(rng.integers(len(contenders)))]
        winners[arm] = winner
        realized[winner] = arm_rewards[arm]
    return TurnOutcome(
        choices=tuple(int(c) for c in choices),
        arm_rewards=arm_rewards,
        winners=winners,
        realized_rewards=realized,
    )


def env_step(
    arms: ArmSet,
    choices: Sequence[int],
    reward_rng: np.random.Generator,
    winner_rng: np.random.Generator,
) -> TurnOutcome:
    """Realize one turn: sample all arm rewards, then resolve collisions.

    The two generators must be disjoint substreams so the reward sequence
    does not depend on the collision pattern.
    """
    return resolve_collisions(choices, sample_arm_rewards(arms, reward_rng), winner_rng)
