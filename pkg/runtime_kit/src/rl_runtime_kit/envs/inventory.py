"""Multi-item replenishment with Poisson demand and lost-sales penalties.

The action is a global order-up-to level (one of a few discrete targets
applied to every item), keeping the action space small enough for a
value-based learner while preserving the cost structure.
"""

from __future__ import annotations

import math
import random

FIXED_COST = (20, 18, 25, 22, 19, 21, 15, 28, 16, 24)
UNIT_COST = (5, 4, 6, 5, 4.5, 5.2, 3.8, 6.5, 4, 5.8)
HOLDING_COST = (0.50, 0.40, 0.60, 0.50, 0.45, 0.52, 0.38, 0.65, 0.40, 0.58)
PRICE = (12, 10, 15, 13, 11, 14, 9, 16, 10, 13.5)
PENALTY = tuple(0.2 * p for p in PRICE)
MEAN_DEMAND = 8

ORDER_UP_TO_LEVELS = (0, 4, 8, 12, 16)


def poisson(lam: float, rng: random.Random) -> int:
    threshold = math.exp(-lam)
    k, p = 0, 1.0
    while p > threshold:
        k += 1
        p *= rng.random()
    return k - 1


class InventoryEnv:
    n_items = 10
    n_actions = len(ORDER_UP_TO_LEVELS)
    obs_dim = 10

    def __init__(self, seed: int = 0, steps_per_episode: int = 50):
        self.seed = seed
        self.steps_per_episode = steps_per_episode
        self._episode = 0

    def reset(self) -> list[float]:
        self._rng = random.Random(self.seed * 99_991 + self._episode)
        self._episode += 1
        self.stock = [0] * self.n_items
        self.steps = 0
        return self._obs()

    def _obs(self) -> list[float]:
        return [s / 20.0 for s in self.stock]

    def step(self, action: int):
        target = ORDER_UP_TO_LEVELS[action]
        profit = 0.0
        for i in range(self.n_items):
            order = max(0, target - self.stock[i])
            self.stock[i] += order
            demand = poisson(MEAN_DEMAND, self._rng)
            sold = min(demand, self.stock[i])
            lost = demand - sold
            self.stock[i] -= sold
            profit += PRICE[i] * sold
            profit -= FIXED_COST[i] if order > 0 else 0.0
            profit -= UNIT_COST[i] * order
            profit -= HOLDING_COST[i] * self.stock[i]
            profit -= PENALTY[i] * lost
        self.steps += 1
        done = self.steps >= self.steps_per_episode
        return self._obs(), profit, done
