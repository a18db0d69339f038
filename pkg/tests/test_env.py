import numpy as np
import pytest

from gossip_bandits import (
    ArmSet,
    env_step,
    resolve_collisions,
    sample_arm_rewards,
)
from gossip_bandits.rng import substream

MU_SPREAD = (0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1, 0.01)


class TestArmSet:
    def test_valid_construction(self):
        arms = ArmSet(MU_SPREAD)
        assert arms.n_arms == 10
        assert arms.means[0] == 0.9

    def test_rejects_single_arm(self):
        with pytest.raises(ValueError, match="at least 2 arms"):
            ArmSet((0.5,))

    @pytest.mark.parametrize("bad", [-0.1, 1.1, 2.0])
    def test_rejects_out_of_range_mean(self, bad):
        with pytest.raises(ValueError, match="outside"):
            ArmSet((0.5, bad))


class TestSampleArmRewards:
    def test_degenerate_all_ones(self, rng):
        arms = ArmSet((1.0, 1.0))
        assert np.array_equal(sample_arm_rewards(arms, rng), [1, 1])

    def test_degenerate_all_zeros(self, rng):
        arms = ArmSet((0.0, 0.0, 0.0))
        assert np.array_equal(sample_arm_rewards(arms, rng), [0, 0, 0])

    def test_empirical_mean_matches_first_arm(self):
        # 1e5 draws: arm 0 frequency within 3 sigma of 0.9
        arms = ArmSet(MU_SPREAD)
        rng = np.random.default_rng(11)
        n = 10**5
        hits = sum(int(sample_arm_rewards(arms, rng)[0]) for _ in range(n))
        sigma = np.sqrt(0.9 * 0.1 / n)
        assert abs(hits / n - 0.9) < 3 * sigma


class TestResolveCollisions:
    def test_no_collision_passes_rewards_through(self, rng):
        out = resolve_collisions([0, 1, 2], np.array([1, 1, 0]), rng)
        assert np.array_equal(out.realized_rewards, [1, 1, 0])
        assert out.winners == {0: 0, 1: 1, 2: 2}

    def test_full_collision_pays_exactly_one_player(self, rng):
        out = resolve_collisions([3, 3, 3, 3, 3], np.array([0, 0, 0, 1]), rng)
        assert out.realized_rewards.sum() == 1
        assert sorted(out.winners) == [3]
        assert out.winners[3] in range(5)

    def test_winner_is_uniform_over_pullers(self):
        # oracle: exact binomial, p = 1/2 per resolution
        rng = np.random.default_rng(12)
        n = 10**4
        wins = sum(
            resolve_collisions([0, 0], np.array([1, 1]), rng).winners[0] == 0
            for _ in range(n)
        )
        sigma = np.sqrt(0.25 / n)
        assert abs(wins / n - 0.5) < 3 * sigma

    def test_rejects_out_of_range_choice(self, rng):
        with pytest.raises(ValueError, match="outside"):
            resolve_collisions([0, 5], np.array([1, 1]), rng)

    def test_conservation_per_turn(self):
        # total paid == sum of realizations on pulled arms, exactly
        rng = np.random.default_rng(13)
        for _ in range(200):
            n_arms = int(rng.integers(2, 8))
            choices = rng.integers(n_arms, size=int(rng.integers(1, 7)))
            rewards = rng.integers(2, size=n_arms)
            out = resolve_collisions(choices, rewards, rng)
            pulled = np.zeros(n_arms, dtype=int)
            pulled[choices] = 1
            assert out.realized_rewards.sum() == (pulled * rewards).sum()

    def test_winner_always_pulled_the_arm(self):
        rng = np.random.default_rng(14)
        for _ in range(200):
            choices = rng.integers(4, size=5)
            out = resolve_collisions(choices, rng.integers(2, size=4), rng)
            for arm, winner in out.winners.items():
                assert choices[winner] == arm
            assert set(out.winners) == set(int(c) for c in choices)

    def test_losers_get_zero_even_when_arm_paid(self):
        rng = np.random.default_rng(15)
        out = resolve_collisions([2, 2, 2], np.array([0, 0, 1]), rng)
        losers = [p for p in range(3) if p != out.winners[2]]
        assert all(out.realized_rewards[p] == 0 for p in losers)


class TestEnvStep:
    def test_degenerate_means(self):
        arms = ArmSet((1.0, 1.0))
        out = env_step(arms, [0, 1], np.random.default_rng(0), np.random.default_rng(1))
        assert np.array_equal(out.realized_rewards, [1, 1])

        arms = ArmSet((0.0, 0.0))
        out = env_step(arms, [0, 0], np.random.default_rng(0), np.random.default_rng(1))
        assert np.array_equal(out.realized_rewards, [0, 0])

    def test_total_reward_under_full_collision_matches_mean(self):
        # all 5 players on arm 0: exactly one winner, so the expected
        # per-turn total is just mu_0 = 0.9
        arms = ArmSet(MU_SPREAD)
        reward_rng = substream(99, "env-arms")
        winner_rng = substream(99, "env-winners")
        n = 10**5
        total = 0
        for _ in range(n):
            out = env_step(arms, [0, 0, 0, 0, 0], reward_rng, winner_rng)
            total += int(out.realized_rewards.sum())
        sigma = np.sqrt(0.9 * 0.1 / n)
        assert abs(total / n - 0.9) < 3 * sigma

    def test_equals_composition_of_parts(self):
        arms = ArmSet(MU_SPREAD)
        joint = env_step(
            arms, [1, 1, 4], substream(5, "env-arms"), substream(5, "env-winners")
        )
        rewards = sample_arm_rewards(arms, substream(5, "env-arms"))
        split = resolve_collisions([1, 1, 4], rewards, substream(5, "env-winners"))
        assert joint.choices == split.choices
        assert np.array_equal(joint.arm_rewards, split.arm_rewards)
        assert joint.winners == split.winners
        assert np.array_equal(joint.realized_rewards, split.realized_rewards)

    def test_deterministic_given_seed_and_choices(self):
        arms = ArmSet(MU_SPREAD)
        choice_rng = np.random.default_rng(3)
        choice_seq = [choice_rng.integers(10, size=5) for _ in range(50)]

        def run():
            reward_rng = substream(77, "env-arms")
            winner_rng = substream(77, "env-winners")
            return [env_step(arms, c, reward_rng, winner_rng) for c in choice_seq]

        first, second = run(), run()
        for a, b in zip(first, second):
            assert a.choices == b.choices
            assert np.array_equal(a.arm_rewards, b.arm_rewards)
            assert a.winners == b.winners
            assert np.array_equal(a.realized_rewards, b.realized_rewards)
