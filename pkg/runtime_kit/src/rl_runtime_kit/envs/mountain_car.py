"""Under-powered car between two hills: -1 per step until the right summit."""

from __future__ import annotations

import math
import random


class MountainCarEnv:
    obs_dim = 2
    n_actions = 3  # accelerate left, stay, accelerate right

    MIN_POS, MAX_POS = -1.2, 0.6
    MAX_SPEED = 0.07
    GOAL_POS = 0.5
    FORCE = 0.001
    GRAVITY_SCALE = 0.0025

    def __init__(self, seed: int = 0, max_steps: int = 200):
        self._rng = random.Random(seed)
        self.max_steps = max_steps

    def reset(self) -> list[float]:
        self.position = self._rng.uniform(-0.6, -0.4)
        self.velocity = 0.0
        self.steps = 0
        return [self.position, self.velocity]

    def step(self, action: int):
        self.velocity += (action - 1) * self.FORCE - math.cos(3 * self.position) * self.GRAVITY_SCALE
        self.velocity = max(-self.MAX_SPEED, min(self.MAX_SPEED, self.velocity))
        self.position += self.velocity
        self.position = max(self.MIN_POS, min(self.MAX_POS, self.position))
        if self.position <= self.MIN_POS and self.velocity < 0:
            self.velocity = 0.0
        self.steps += 1
        done = self.position >= self.GOAL_POS or self.steps >= self.max_steps
        reward = 0.0 if self.position >= self.GOAL_POS else -1.0
        return [self.position, self.velocity], reward, done
