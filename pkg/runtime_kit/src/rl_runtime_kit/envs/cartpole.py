"""Pole balancing on a cart: +1 per step inside the angle/track limits."""

from __future__ import annotations

import math
import random


class CartPoleEnv:
    obs_dim = 4
    n_actions = 2

    GRAVITY = 9.8
    CART_MASS = 1.0
    POLE_MASS = 0.1
    POLE_HALF_LENGTH = 0.5
    FORCE_MAG = 10.0
    TAU = 0.02
    ANGLE_LIMIT = 12 * math.pi / 180
    X_LIMIT = 2.4

    def __init__(self, seed: int = 0, max_steps: int = 200):
        self._rng = random.Random(seed)
        self.max_steps = max_steps

    def reset(self) -> list[float]:
        self.state = [self._rng.uniform(-0.05, 0.05) for _ in range(4)]
        self.steps = 0
        return list(self.state)

    def step(self, action: int):
        x, x_dot, theta, theta_dot = self.state
        force = self.FORCE_MAG if action == 1 else -self.FORCE_MAG
        cos_t, sin_t = math.cos(theta), math.sin(theta)
        total_mass = self.CART_MASS + self.POLE_MASS
        temp = (
            force + self.POLE_MASS * self.POLE_HALF_LENGTH * theta_dot**2 * sin_t
        ) / total_mass
        theta_acc = (self.GRAVITY * sin_t - cos_t * temp) / (
            self.POLE_HALF_LENGTH
            * (4.0 / 3.0 - self.POLE_MASS * cos_t**2 / total_mass)
        )
        x_acc = temp - self.POLE_MASS * self.POLE_HALF_LENGTH * theta_acc * cos_t / total_mass

        x += self.TAU * x_dot
        x_dot += self.TAU * x_acc
        theta += self.TAU * theta_dot
        theta_dot += self.TAU * theta_acc
        self.state = [x, x_dot, theta, theta_dot]
        self.steps += 1

        done = (
            abs(x) > self.X_LIMIT
            or abs(theta) > self.ANGLE_LIMIT
            or self.steps >= self.max_steps
        )
        return list(self.state), 1.0, done
