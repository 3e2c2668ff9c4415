import json
import math
import os
import random

BANDWIDTH_MHZ = 5.0
BANDWIDTH_HZ = 5e6
POWER_MW = 10000.0
NOISE_DBM_PER_HZ = -106.0
PATH_LOSS_EXP = 3.76
SHADOWING_STD_DB = 10.0
USER_DISTANCES = [20.0, 50.0, 50.0, 80.0]
GAIN_MIN_DB, GAIN_MAX_DB = -80.0, -30.0
STEPS_PER_EPISODE = 50


class CustomEnv:
    """Single-user-per-slot scheduling; gains redrawn every step."""

    def __init__(self, seed):
        self.rng = random.Random(seed)

    def reset(self):
        self.step_count = 0
        self.gains = self._draw_gains()
        return list(self.gains)

    def _draw_gains(self):
        gains = []
        for d in USER_DISTANCES:
            path_loss = 10.0 * PATH_LOSS_EXP * math.log10(d)
            g = -path_loss + self.rng.gauss(0.0, SHADOWING_STD_DB)
            gains.append(max(GAIN_MIN_DB, min(GAIN_MAX_DB, g)))
        return gains

    def step(self, user):
        reward = rate_mbps(self.gains[user])
        self.step_count += 1
        self.gains = self._draw_gains()
        done = self.step_count >= STEPS_PER_EPISODE
        return list(self.gains), reward, done


def rate_mbps(gain_db):
    gain_lin = 10 ** (gain_db / 10.0)
    noise_mw = 10 ** (NOISE_DBM_PER_HZ / 10.0) * BANDWIDTH_HZ
    snr = POWER_MW * gain_lin / noise_mw
    return BANDWIDTH_MHZ * math.log2(1.0 + snr)


class Agent:
    def __init__(self, seed):
        self.rng = random.Random(seed)

    def act(self, gains, epsilon):
        if self.rng.random() < epsilon:
            return self.rng.randrange(len(gains))
        return max(range(len(gains)), key=lambda u: gains[u])


def run_episode(env, agent, epsilon):
    gains = env.reset()
    total = 0.0
    done = False
    while not done:
        gains, reward, done = env.step(agent.act(gains, epsilon))
        total += reward
    return total


agent = Agent(seed=123)

EPISODES = 120
episode_returns = []
for ep in range(EPISODES):
    epsilon = max(0.0, 0.8 * (1 - ep / 80))
    episode_returns.append(run_episode(CustomEnv(seed=ep), agent, epsilon))

eval_seeds = [1000 + i for i in range(20)]
eval_returns = [run_episode(CustomEnv(seed=s), agent, 0.0) for s in eval_seeds]

os.makedirs("results", exist_ok=True)
with open("results/model.txt", "w") as f:
    f.write("policy: per-slot argmax over instantaneous rates\n")
with open("results/results.json", "w") as f:
    json.dump(
        {
            "episode_returns": episode_returns,
            "eval_returns": eval_returns,
            "model_path": "results/model.txt",
            "eval_seeds": eval_seeds,
        },
        f,
    )
print("training complete; mean eval return:", sum(eval_returns) / len(eval_returns))
