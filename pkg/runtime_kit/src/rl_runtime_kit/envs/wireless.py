"""Single-user-per-slot scheduling; reward is the scheduled user's rate."""

from __future__ import annotations

from ..channel import ChannelModel, GAIN_MAX_DB, GAIN_MIN_DB, shannon_rate_mbps


def _normalize(gain_db: float) -> float:
    return (gain_db - GAIN_MIN_DB) / (GAIN_MAX_DB - GAIN_MIN_DB)


class WirelessSchedulingEnv:
    n_actions = 4
    obs_dim = 4

    def __init__(self, seed: int = 0, steps_per_episode: int = 50):
        self.seed = seed
        self.steps_per_episode = steps_per_episode
        self._episode = 0

    def reset(self) -> list[float]:
        # fresh channel stream per episode, deterministic in (seed, episode)
        self._model = ChannelModel(seed=self.seed * 100_003 + self._episode)
        self._episode += 1
        self.steps = 0
        self.gains = self._model.draw_gains_db()
        return [_normalize(g) for g in self.gains]

    def step(self, user: int):
        reward = shannon_rate_mbps(self.gains[user])
        self.steps += 1
        self.gains = self._model.draw_gains_db()
        done = self.steps >= self.steps_per_episode
        return [_normalize(g) for g in self.gains], reward, done
