"""Player-side decision state and the arm-selection algorithms.

All policies share one estimator that folds neighbor reports into the
same per-arm tallies as the player's own pulls, and expose the same
``select()`` / ``observe()`` interface.  Selection randomness (ties,
exploration, posterior draws) comes exclusively from the player's own
substream, so a run is reproducible from its seed alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .network import Observation

POLICY_NAMES = ("ucb1", "egreedy", "thompson", "asympopt", "random")
INIT_ORDERS = ("sequential", "random")

DEFAULT_EPSILON = 1.0
DEFAULT_DECAY = 0.995
DEFAULT_MEAN_FLOOR = 1e-3


class PlayerEstimator:
    """Per-arm tallies of everything one player has observed.

    Counts own pulls and neighbor reports identically: one observation of
    arm ``i`` with reward ``r`` bumps the arm's count and, if ``r`` is 1,
    its success tally.
    """

    __slots__ = ("n_arms", "counts", "successes", "total")

    def __init__(self, n_arms: int):
        if n_arms < 1:
            raise ValueError(f"need at least 1 arm, got {n_arms}")
        self.n_arms = n_arms
        self.counts = [0] * n_arms
        self.successes = [0] * n_arms
        self.total = 0

    def record(self, arm: int, reward: int) -> None:
        self.counts[arm] += 1
        self.successes[arm] += reward
        self.total += 1

    def update(self, observations: Iterable[Observation]) -> None:
        for arm, reward, _source in observations:
            self.record(arm, reward)

    @property
    def failures(self) -> list[int]:
        return [c - s for c, s in zip(self.counts, self.successes)]

    def counts_array(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float)

    def observed_means(self, default: float = 0.0) -> np.ndarray:
        """Empirical success rate per arm; ``default`` where nothing was seen."""
        counts = self.counts_array()
        means = np.full(self.n_arms, default, dtype=float)
        seen = counts > 0
        means[seen] = np.asarray(self.successes, dtype=float)[seen] / counts[seen]
        return means


def argmax_random_tie(values: Sequence[float], rng: np.random.Generator) -> int:
    """Index of the maximum; exact ties are broken uniformly at random."""
    values = np.asarray(values)
    best = int(np.argmax(values))
    ties = np.flatnonzero(values == values[best])
    if len(ties) > 1:
        best = int(ties[rng.integers(len(ties))])
    return best


def sample_categorical(probabilities: Sequence[float], rng: np.random.Generator) -> int:
    """Draw one index by cumulative-sum inversion over ``probabilities``."""
    draw = rng.random()
    acc = 0.0
    last_positive = -1
    for arm, p in enumerate(probabilities):
        if p <= 0.0:
            continue
        acc += p
        last_positive = arm
        if acc >= draw:
            return arm
    if last_positive < 0:
        raise ValueError("no positive probability to sample from")
    return last_positive  # float shortfall when the masses sum to just under 1


@dataclass(frozen=True)
class MixProbabilities:
    """Optimal symmetric sampling probabilities with their active arm set.

    Arms dropped by the active-set iteration carry probability exactly 0;
    the rest sum to 1 (up to float rounding).
    """

    probabilities: np.ndarray
    active: tuple[int, ...]


def compute_mix_probabilities(means: Sequence[float], n_players: int) -> MixProbabilities:
    """Closed-form minimizer of the expected per-turn loss over the simplex.

    Solves for the per-arm pull probabilities that minimize
    ``sum_i (1 - c_i)^N * mu_i`` subject to the c_i forming a probability
    vector, by equalizing ``(1 - c_i)^(N-1) * mu_i`` across the active set
    and discarding arms whose probability would go nonpositive.  Dropping
    only ever shrinks the active set: removing an arm raises the common
    level for the rest, which can only push further arms out.

    Runs on plain scalars: it sits on the per-select hot path and the arm
    count is small.
    """
    if n_players < 2:
        raise ValueError(f"need at least 2 players for the mixing exponent, got {n_players}")
    mu = [float(m) for m in means]
    if not mu:
        raise ValueError("means must be a nonempty vector")
    if min(mu) <= 0.0:
        raise ValueError("every candidate mean must be positive (clamp before calling)")

    exponent = 1.0 / (n_players - 1)
    inv_root = [(1.0 / m) ** exponent for m in mu]
    active = list(range(len(mu)))
    c = [0.0] * len(mu)
    while True:
        level = (len(active) - 1) / sum(inv_root[i] for i in active)
        kept = []
        for i in active:
            c[i] = 1.0 - level * inv_root[i]
            if c[i] > 0.0:
                kept.append(i)
            else:
                c[i] = 0.0
        if len(kept) == len(active):
            break
        active = kept
        if not active:  # impossible: the active c always sum to 1
            raise AssertionError("all arms discarded from the active set")
    return MixProbabilities(probabilities=np.asarray(c), active=tuple(active))


class Policy:
    """Common observe/select machinery: one estimator plus a private RNG."""

    name = "?"

    def __init__(self, n_arms: int, rng: np.random.Generator):
        self.estimator = PlayerEstimator(n_arms)
        self.rng = rng

    @property
    def n_arms(self) -> int:
        return self.estimator.n_arms

    def observe(self, observations: Iterable[Observation]) -> None:
        self.estimator.update(observations)

    def select(self) -> int:
        raise NotImplementedError


class _InitSweepPolicy(Policy):
    """Base for policies that start by pulling each arm once.

    The sweep order is by arm index, or a per-player random permutation
    when ``init_order="random"``.  Neighbor reports received during the
    sweep still update the estimator; they just don't redirect it.
    """

    def __init__(self, n_arms: int, rng: np.random.Generator, init_order: str = "sequential"):
        super().__init__(n_arms, rng)
        if init_order == "sequential":
            self._init_arms = list(range(n_arms))
        elif init_order == "random":
            self._init_arms = [int(a) for a in rng.permutation(n_arms)]
        else:
            raise ValueError(f"unknown init_order {init_order!r}, expected one of {INIT_ORDERS}")
        self.init_cursor = 0

    @property
    def in_init_phase(self) -> bool:
        return self.init_cursor < self.n_arms

    def _next_init_arm(self) -> int:
        arm = self._init_arms[self.init_cursor]
        self.init_cursor += 1
        return arm


class Ucb1Policy(_InitSweepPolicy):
    """Upper-confidence-bound selection on all observations seen so far."""

    name = "ucb1"

    def select(self) -> int:
        if self.in_init_phase:
            return self._next_init_arm()
        est = self.estimator
        counts = est.counts_array()
        unseen = counts == 0
        if unseen.any():  # only reachable if observe() was never called
            return argmax_random_tie(unseen.astype(float), self.rng)
        means = np.asarray(est.successes, dtype=float) / counts
        index = means + np.sqrt(2.0 * np.log(est.total) / counts)
        return argmax_random_tie(index, self.rng)


class EpsilonGreedyPolicy(_InitSweepPolicy):
    """Exploit the best observed mean, explore uniformly with decaying odds."""

    name = "egreedy"

    def __init__(
        self,
        n_arms: int,
        rng: np.random.Generator,
        epsilon: float = DEFAULT_EPSILON,
        decay: float = DEFAULT_DECAY,
        init_order: str = "sequential",
    ):
        super().__init__(n_arms, rng, init_order)
        if not 0.0 <= epsilon <= 1.0:
            raise ValueError(f"epsilon {epsilon} outside [0, 1]")
        if not 0.0 < decay < 1.0:
            raise ValueError(f"decay {decay} outside (0, 1)")
        self.epsilon = epsilon
        self.decay = decay

    def select(self) -> int:
        if self.in_init_phase:
            arm = self._next_init_arm()
        elif self.rng.random() < 1.0 - self.epsilon:
            arm = argmax_random_tie(self.estimator.observed_means(), self.rng)
        else:
            arm = int(self.rng.integers(self.n_arms))
        self.epsilon *= self.decay  # once per selection, so epsilon = eps0 * k^t exactly
        return arm


class ThompsonPolicy(_InitSweepPolicy):
    """Sample a Beta posterior per arm and pull the best draw."""

    name = "thompson"

    def select(self) -> int:
        if self.in_init_phase:
            return self._next_init_arm()
        est = self.estimator
        successes = np.asarray(est.successes, dtype=float)
        failures = est.counts_array() - successes
        theta = self.rng.beta(successes + 1.0, failures + 1.0)
        return argmax_random_tie(theta, self.rng)


class AsympOptPolicy(Policy):
    """Anneal from uniform exploration into the closed-form mixing play.

    With probability ``epsilon`` pulls a uniform random arm, otherwise
    recomputes the mixing probabilities from the current observed means
    (clamped below at ``mean_floor`` so unseen or all-zero arms stay
    admissible) and samples from them.  No pull-each-arm-once sweep: the
    initial ``epsilon = 1`` plays that role.
    """

    name = "asympopt"

    def __init__(
        self,
        n_arms: int,
        n_players: int,
        rng: np.random.Generator,
        epsilon: float = DEFAULT_EPSILON,
        decay: float = DEFAULT_DECAY,
        mean_floor: float = DEFAULT_MEAN_FLOOR,
    ):
        super().__init__(n_arms, rng)
        if n_players < 2:
            raise ValueError(f"need at least 2 players for the mixing exponent, got {n_players}")
        if not 0.0 <= epsilon <= 1.0:
            raise ValueError(f"epsilon {epsilon} outside [0, 1]")
        if not 0.0 < decay < 1.0:
            raise ValueError(f"decay {decay} outside (0, 1)")
        if mean_floor <= 0.0:
            raise ValueError(f"mean_floor must be positive, got {mean_floor}")
        self.n_players = n_players
        self.epsilon = epsilon
        self.decay = decay
        self.mean_floor = mean_floor
        self._mix_cache: tuple[int, MixProbabilities] | None = None

    def current_mix(self) -> MixProbabilities:
        # Tallies only change through record(), which bumps the total, so
        # the total is a sufficient cache key.
        total = self.estimator.total
        if self._mix_cache is None or self._mix_cache[0] != total:
            est = self.estimator
            clamped = [
                max(s / c, self.mean_floor) if c else self.mean_floor
                for c, s in zip(est.counts, est.successes)
            ]
            self._mix_cache = (total, compute_mix_probabilities(clamped, self.n_players))
        return self._mix_cache[1]

    def select(self) -> int:
        if self.rng.random() < 1.0 - self.epsilon:
            arm = sample_categorical(self.current_mix().probabilities, self.rng)
        else:
            arm = int(self.rng.integers(self.n_arms))
        self.epsilon *= self.decay
        return arm


class UniformRandomPolicy(Policy):
    """Calibration baseline: every turn an independent uniform arm."""

    name = "random"

    def select(self) -> int:
        return int(self.rng.integers(self.n_arms))


def make_policy(
    name: str,
    n_arms: int,
    n_players: int,
    rng: np.random.Generator,
    *,
    epsilon: float = DEFAULT_EPSILON,
    decay: float = DEFAULT_DECAY,
    mean_floor: float = DEFAULT_MEAN_FLOOR,
    init_order: str = "sequential",
) -> Policy:
    """Build one player's policy by configured kind."""
    if name == "ucb1":
        return Ucb1Policy(n_arms, rng, init_order=init_order)
    if name == "egreedy":
        return EpsilonGreedyPolicy(n_arms, rng, epsilon=epsilon, decay=decay, init_order=init_order)
    if name == "thompson":
        return ThompsonPolicy(n_arms, rng, init_order=init_order)
    if name == "asympopt":
        return AsympOptPolicy(
            n_arms, n_players, rng, epsilon=epsilon, decay=decay, mean_floor=mean_floor
        )
    if name == "random":
        return UniformRandomPolicy(n_arms, rng)
    raise ValueError(f"unknown policy {name!r}, expected one of {POLICY_NAMES}")
