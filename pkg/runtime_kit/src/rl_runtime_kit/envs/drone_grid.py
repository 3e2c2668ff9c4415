"""Grid-world package delivery under an energy budget.

Parameterized so the same dynamics serve two roles: the desk-scale
training instance (small grid, shaped rewards) and the oracle toy
(move cost 1, net-of-energy semantics).  Episode layouts vary per reset
but are deterministic in (seed, episode index), which keeps fresh env
instances replayable for exhaustive search.
"""

from __future__ import annotations

import random

MOVES = {0: (0, 1), 1: (0, -1), 2: (1, 0), 3: (-1, 0)}  # N, S, E, W
PICK_UP, DELIVER = 4, 5


class DroneGridEnv:
    n_actions = 6

    def __init__(
        self,
        grid_size: int = 5,
        n_packages: int = 1,
        move_cost: float = 0.02,
        pickup_reward: float = 5.0,
        delivery_reward: float = 10.0,
        energy: int = 60,
        horizon: int = 60,
        seed: int = 0,
    ):
        self.grid_size = grid_size
        self.n_packages = n_packages
        self.move_cost = move_cost
        self.pickup_reward = pickup_reward
        self.delivery_reward = delivery_reward
        self.initial_energy = energy
        self.horizon = horizon
        self.seed = seed
        self._episode = 0
        self.obs_dim = 11

    def _layout_rng(self) -> random.Random:
        return random.Random(self.seed * 1_000_003 + self._episode)

    def reset(self) -> list[float]:
        rng = self._layout_rng()
        self._episode += 1
        g = self.grid_size
        cells = [(x, y) for x in range(g) for y in range(g)]
        spots = rng.sample(cells, 1 + 2 * self.n_packages)
        self.pos = spots[0]
        self.pickups = spots[1 : 1 + self.n_packages]
        self.targets = spots[1 + self.n_packages :]
        self.picked = [False] * self.n_packages
        self.delivered = [False] * self.n_packages
        self.carrying: int | None = None
        self.energy = self.initial_energy
        self.steps = 0
        return self._obs()

    def _next_pending(self) -> int | None:
        for i, done in enumerate(self.delivered):
            if not done:
                return i
        return None

    def _obs(self) -> list[float]:
        g = float(self.grid_size)
        i = self.carrying if self.carrying is not None else self._next_pending()
        if i is None:
            goal = self.pos
        elif self.carrying is not None:
            goal = self.targets[i]
        else:
            goal = self.pickups[i]
        # direction-to-goal deltas and an on-goal flag make the greedy
        # navigation structure learnable by a small value network
        return [
            self.pos[0] / g,
            self.pos[1] / g,
            goal[0] / g,
            goal[1] / g,
            (goal[0] - self.pos[0]) / g,
            (goal[1] - self.pos[1]) / g,
            1.0 if goal == self.pos else 0.0,
            1.0 if self.carrying is not None else 0.0,
            sum(self.delivered) / self.n_packages,
            self.energy / max(1, self.initial_energy),
            self.steps / max(1, self.horizon),
        ]

    def step(self, action: int):
        reward = 0.0
        if action in MOVES:
            dx, dy = MOVES[action]
            x = min(self.grid_size - 1, max(0, self.pos[0] + dx))
            y = min(self.grid_size - 1, max(0, self.pos[1] + dy))
            self.pos = (x, y)
            self.energy -= 1
            reward -= self.move_cost
        elif action == PICK_UP:
            if self.carrying is None:
                for i, p in enumerate(self.pickups):
                    if not self.picked[i] and p == self.pos:
                        self.picked[i] = True
                        self.carrying = i
                        reward += self.pickup_reward
                        break
        elif action == DELIVER:
            i = self.carrying
            if i is not None and self.targets[i] == self.pos:
                self.delivered[i] = True
                self.carrying = None
                self.energy -= 2
                reward += self.delivery_reward
        self.steps += 1
        done = all(self.delivered) or self.energy <= 0 or self.steps >= self.horizon
        return self._obs(), reward, done

    def completed(self) -> bool:
        return all(self.delivered) and self.energy > 0
