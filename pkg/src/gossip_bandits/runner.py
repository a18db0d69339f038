"""Seeded episode execution, Monte Carlo sweeps and result emission.

An episode is a pure function of (config, alpha, seed): player selection,
reward realization, collision resolution, graph sampling and message
delivery each draw from their own named substream of the episode seed.
Repetitions therefore parallelize trivially; serial and process-pool
execution produce identical aggregates.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .config import ExperimentConfig
from .env import ArmSet, env_step
from .metrics import GameHistory, RunRecord, build_run_record
from .network import disseminate, sample_graph
from .policies import make_policy
from .rng import derive_seed, substream

CSV_COLUMNS = (
    "algorithm",
    "alpha",
    "turn",
    "repetitions",
    "regret_occupancy_mean",
    "regret_occupancy_std",
    "regret_literal_mean",
    "regret_literal_std",
    "reward_mean",
    "loss_mean",
    "seed_base",
)


@dataclass(frozen=True)
class AggregateRecord:
    """Metric means/stds over repetitions at one (algorithm, alpha, turn)."""

    algorithm: str
    alpha: float
    turn: int
    repetitions: int
    regret_occupancy_mean: float
    regret_occupancy_std: float
    regret_literal_mean: float
    regret_literal_std: float
    reward_mean: float
    loss_mean: float
    seed_base: int


def episode_seed(base_seed: int, alpha_index: int, repetition: int) -> int:
    """Stable per-episode seed from the sweep coordinates."""
    return derive_seed(base_seed, "episode", alpha_index, repetition)


def run_episode(config: ExperimentConfig, alpha: float, seed: int) -> RunRecord:
    """Play one full episode and return its metric series.

    Each turn: every player selects an arm, the environment realizes
    rewards and resolves collisions, a fresh graph is sampled, and every
    player ingests its own outcome plus its neighbors' reports.
    """
    record, _ = run_episode_with_history(config, alpha, seed)
    return record


def run_episode_with_history(
    config: ExperimentConfig, alpha: float, seed: int
) -> tuple[RunRecord, GameHistory]:
    """As ``run_episode`` but also return the raw turn-by-turn history."""
    history, _ = simulate_episode(config, alpha, seed)
    metadata = dict(config.echo(), alpha=alpha, seed=seed)
    return build_run_record(history, metadata), history


def simulate_episode(
    config: ExperimentConfig, alpha: float, seed: int
) -> tuple[GameHistory, list]:
    """Play the turns and return (history, final player policies)."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"connectivity {alpha} outside [0, 1]")
    arms = ArmSet(config.means)
    n_players = config.n_players
    reward_rng = substream(seed, "env-arms")
    winner_rng = substream(seed, "env-winners")
    graph_rng = substream(seed, "graph")
    players = [
        make_policy(
            config.algorithm,
            arms.n_arms,
            n_players,
            substream(seed, "player", p),
            epsilon=config.epsilon0,
            decay=config.decay,
            mean_floor=config.mean_floor,
            init_order=config.init_order,
        )
        for p in range(n_players)
    ]

    turns = []
    for _ in range(config.turns):
        choices = [player.select() for player in players]
        outcome = env_step(arms, choices, reward_rng, winner_rng)
        graph = sample_graph(n_players, alpha, graph_rng)
        inboxes = disseminate(outcome, graph)
        for player, inbox in zip(players, inboxes):
            player.observe(inbox)
        turns.append(outcome)

    return GameHistory(turns=tuple(turns), arms=arms), players


def _episode_checkpoints(args: tuple) -> tuple[int, int, np.ndarray]:
    """Worker: run one episode, return metric values at the checkpoints.

    Module-level so process pools can pickle it; returns (alpha_index,
    repetition, (4, n_checkpoints) array of occ/lit regrets, reward, loss).
    """
    config, alpha_index, alpha, repetition, checkpoints = args
    record = run_episode(config, alpha, episode_seed(config.base_seed, alpha_index, repetition))
    idx = np.asarray(checkpoints, dtype=np.int64) - 1
    values = np.stack(
        [
            record.regret_occupancy[idx],
            record.regret_literal[idx],
            record.cumulative_reward[idx].astype(float),
            record.cumulative_loss[idx].astype(float),
        ]
    )
    return alpha_index, repetition, values


def _aggregate(
    config: ExperimentConfig,
    checkpoints: Sequence[int],
    n_jobs: int,
) -> list[AggregateRecord]:
    tasks = [
        (config, alpha_index, alpha, repetition, tuple(checkpoints))
        for alpha_index, alpha in enumerate(config.alphas)
        for repetition in range(config.repetitions)
    ]
    if n_jobs > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            results = list(pool.map(_episode_checkpoints, tasks, chunksize=1))
    else:
        results = [_episode_checkpoints(task) for task in tasks]

    # (alphas, repetitions, metrics, checkpoints), repetition order restored
    stacked = np.zeros((len(config.alphas), config.repetitions, 4, len(checkpoints)))
    for alpha_index, repetition, values in results:
        stacked[alpha_index, repetition] = values
    means = stacked.mean(axis=1)
    stds = stacked.std(axis=1)

    records = []
    for alpha_index, alpha in enumerate(config.alphas):
        for c, turn in enumerate(checkpoints):
            records.append(
                AggregateRecord(
                    algorithm=config.algorithm,
                    alpha=alpha,
                    turn=int(turn),
                    repetitions=config.repetitions,
                    regret_occupancy_mean=float(means[alpha_index, 0, c]),
                    regret_occupancy_std=float(stds[alpha_index, 0, c]),
                    regret_literal_mean=float(means[alpha_index, 1, c]),
                    regret_literal_std=float(stds[alpha_index, 1, c]),
                    reward_mean=float(means[alpha_index, 2, c]),
                    loss_mean=float(means[alpha_index, 3, c]),
                    seed_base=config.base_seed,
                )
            )
    return records


def sweep_alpha(config: ExperimentConfig, n_jobs: int = 1) -> list[AggregateRecord]:
    """Run every (alpha, repetition) episode and aggregate final-turn metrics."""
    return _aggregate(config, [config.turns], n_jobs)


def default_checkpoints(turns: int, n_points: int = 10) -> tuple[int, ...]:
    """Evenly spaced measurement turns ending at the horizon."""
    n_points = min(n_points, turns)
    return tuple(sorted({round(turns * (i + 1) / n_points) for i in range(n_points)}))


def regret_vs_turns(config: ExperimentConfig, n_jobs: int = 1) -> list[AggregateRecord]:
    """Aggregate both regret variants at each checkpoint across repetitions."""
    checkpoints = config.checkpoints or default_checkpoints(config.turns)
    return _aggregate(config, checkpoints, n_jobs)


def _format_field(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.6g}"


def _render_csv(records: Iterable[AggregateRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for record in records:
        writer.writerow([_format_field(getattr(record, col)) for col in CSV_COLUMNS])
    return buffer.getvalue()


def _render_json(records: Iterable[AggregateRecord], config: ExperimentConfig | None) -> str:
    rows = []
    for record in records:
        row = {}
        for col in CSV_COLUMNS:
            value = getattr(record, col)
            if isinstance(value, str):
                row[col] = value
            elif isinstance(value, (int, np.integer)):
                row[col] = int(value)
            else:
                row[col] = float(f"{value:.6g}")
        rows.append(row)
    payload: dict = {"records": rows}
    if config is not None:
        payload["config"] = config.echo()
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def emit_results(
    records: Sequence[AggregateRecord],
    out_format: str,
    path: str | Path | None,
    config: ExperimentConfig | None = None,
) -> None:
    """Write aggregates as CSV or JSON; ``path=None`` prints to stdout.

    Output is byte-deterministic for identical records (fixed column
    order, 6-significant-digit floats, ``\\n`` newlines).
    """
    if not records:
        raise ValueError("no records to emit")
    if out_format == "csv":
        text = _render_csv(records)
    elif out_format == "json":
        text = _render_json(records, config)
    else:
        raise ValueError(f"unknown format {out_format!r}, expected csv or json")
    if path is None:
        sys.stdout.write(text)
        return
    path = Path(path)
    try:
        path.write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OSError(f"cannot write results to {path}: {exc}") from exc


def read_results_csv(path: str | Path) -> list[AggregateRecord]:
    """Parse a CSV written by ``emit_results`` back into records."""
    types = {f.name: f.type for f in fields(AggregateRecord)}
    records = []
    with open(path, newline="", encoding="utf-8") as handle:
        for row in csv.DictReader(handle):
            kwargs = {}
            for col in CSV_COLUMNS:
                kind = types[col]
                if kind == "int":
                    kwargs[col] = int(row[col])
                elif kind == "float":
                    kwargs[col] = float(row[col])
                else:
                    kwargs[col] = row[col]
            records.append(AggregateRecord(**kwargs))
    return records
