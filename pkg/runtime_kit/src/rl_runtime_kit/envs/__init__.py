"""Reference environments: reset() -> obs, step(a) -> (obs, reward, done).

All are seeded and self-contained; they exist for harness self-tests and
oracle baselines, never as inputs to code-generation prompts.
"""

from .cartpole import CartPoleEnv
from .drone_grid import DroneGridEnv
from .inventory import InventoryEnv
from .mountain_car import MountainCarEnv
from .wireless import WirelessSchedulingEnv

__all__ = [
    "CartPoleEnv",
    "DroneGridEnv",
    "InventoryEnv",
    "MountainCarEnv",
    "WirelessSchedulingEnv",
]
