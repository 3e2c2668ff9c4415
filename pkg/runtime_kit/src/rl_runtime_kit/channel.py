"""Wireless channel model and per-slot transmission rate.

Task parameters: 5 MHz bandwidth, 10,000 mW transmission power, -106 dBm
noise density, path loss coefficient 3.76, log-normal shadowing with 10 dB
standard deviation, users at {20, 50, 50, 80} m, gains clipped to
[-80, -30] dB.

Gain evolution is a harness model: the gains are redrawn i.i.d. each slot
as log-normal shadowing around the distance-based path loss, clipped to
the stated range, from a seeded generator.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

BANDWIDTH_MHZ = 5.0
BANDWIDTH_HZ = 5e6
POWER_MW = 10_000.0
NOISE_DBM_PER_HZ = -106.0
PATH_LOSS_EXP = 3.76
SHADOWING_STD_DB = 10.0
USER_DISTANCES_M = (20.0, 50.0, 50.0, 80.0)
GAIN_MIN_DB = -80.0
GAIN_MAX_DB = -30.0


def shannon_rate_mbps(gain_db: float) -> float:
    """Per-slot rate in Mbit/s for the scheduled user's channel gain."""
    gain_lin = 10.0 ** (gain_db / 10.0)
    noise_mw = 10.0 ** (NOISE_DBM_PER_HZ / 10.0) * BANDWIDTH_HZ
    snr = POWER_MW * gain_lin / noise_mw
    return BANDWIDTH_MHZ * math.log2(1.0 + snr)


def check_gain_range(gain_db: float) -> None:
    if not (GAIN_MIN_DB <= gain_db <= GAIN_MAX_DB):
        raise ValueError(
            f"gain {gain_db} dB outside the clipped range "
            f"[{GAIN_MIN_DB}, {GAIN_MAX_DB}] dB"
        )


@dataclass
class ChannelModel:
    """Seeded i.i.d. shadowing around distance path loss, clipped."""

    distances_m: tuple[float, ...] = USER_DISTANCES_M
    seed: int = 0
    _rng: random.Random = field(init=False, repr=False)

    def __post_init__(self):
        self._rng = random.Random(self.seed)

    @property
    def n_users(self) -> int:
        return len(self.distances_m)

    def draw_gains_db(self) -> list[float]:
        gains = []
        for d in self.distances_m:
            path_loss_db = 10.0 * PATH_LOSS_EXP * math.log10(d)
            g = -path_loss_db + self._rng.gauss(0.0, SHADOWING_STD_DB)
            gains.append(min(GAIN_MAX_DB, max(GAIN_MIN_DB, g)))
        return gains

    def gain_table(self, steps: int) -> list[list[float]]:
        return [self.draw_gains_db() for _ in range(steps)]
