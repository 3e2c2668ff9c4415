import json
import os
import random

GRID = 50
MOVE_COST = 1
DELIVERY_COST = 2
DELIVERY_REWARD = 10.0
MAX_STEPS = 400

MOVES = {0: (0, 1), 1: (0, -1), 2: (1, 0), 3: (-1, 0)}  # N, S, E, W
PICK_UP, DELIVER = 4, 5


class CustomEnv:
    def __init__(self, seed):
        self.rng = random.Random(seed)

    def reset(self):
        self.pos = (self.rng.randrange(GRID), self.rng.randrange(GRID))
        self.energy = self.rng.randint(100, 150)
        n = self.rng.randint(1, 2)
        self.pickups = [(self.rng.randrange(GRID), self.rng.randrange(GRID)) for _ in range(n)]
        self.targets = [(self.rng.randrange(GRID), self.rng.randrange(GRID)) for _ in range(n)]
        self.picked = [False] * n
        self.delivered = [False] * n
        self.carrying = None
        self.steps = 0
        return self._obs()

    def _obs(self):
        return {
            "pos": self.pos,
            "energy": self.energy,
            "picked": list(self.picked),
            "delivered": list(self.delivered),
            "carrying": self.carrying,
            "pickups": list(self.pickups),
            "targets": list(self.targets),
        }

    def step(self, action):
        reward = 0.0
        if action in MOVES:
            dx, dy = MOVES[action]
            x = min(GRID - 1, max(0, self.pos[0] + dx))
            y = min(GRID - 1, max(0, self.pos[1] + dy))
            self.pos = (x, y)
            self.energy -= MOVE_COST
            reward = -1.0
        elif action == PICK_UP:
            for i, p in enumerate(self.pickups):
                if not self.picked[i] and p == self.pos and self.carrying is None:
                    self.picked[i] = True
                    self.carrying = i
                    break
        elif action == DELIVER:
            i = self.carrying
            if i is not None and self.targets[i] == self.pos:
                self.delivered[i] = True
                self.carrying = None
                self.energy -= DELIVERY_COST
                reward = DELIVERY_REWARD
        self.steps += 1
        done = all(self.delivered) or self.energy <= 0 or self.steps >= MAX_STEPS
        return self._obs(), reward, done

    def completed(self):
        return all(self.delivered) and self.energy > 0


def toward(src, dst):
    if src[0] < dst[0]:
        return 2
    if src[0] > dst[0]:
        return 3
    if src[1] < dst[1]:
        return 0
    return 1


class Agent:
    def __init__(self, seed):
        self.rng = random.Random(seed)

    def act(self, obs, epsilon):
        if self.rng.random() < epsilon:
            return self.rng.randrange(6)
        if obs["carrying"] is not None:
            goal = obs["targets"][obs["carrying"]]
            return DELIVER if obs["pos"] == goal else toward(obs["pos"], goal)
        pending = [
            i for i, picked in enumerate(obs["picked"]) if not picked
        ]
        if not pending:
            return 0
        nearest = min(
            pending,
            key=lambda i: abs(obs["pickups"][i][0] - obs["pos"][0])
            + abs(obs["pickups"][i][1] - obs["pos"][1]),
        )
        goal = obs["pickups"][nearest]
        return PICK_UP if obs["pos"] == goal else toward(obs["pos"], goal)


def run_episode(env, agent, epsilon):
    obs = env.reset()
    total = 0.0
    done = False
    while not done:
        obs, reward, done = env.step(agent.act(obs, epsilon))
        total += reward
    return total, env.completed()


agent = Agent(seed=17)

EPISODES = 150
episode_returns = []
for ep in range(EPISODES):
    epsilon = max(0.0, 0.5 * (1 - ep / 100))
    ret, _ = run_episode(CustomEnv(seed=ep), agent, epsilon)
    episode_returns.append(ret)

eval_seeds = [5000 + i for i in range(20)]
eval_returns = []
eval_completions = []
for s in eval_seeds:
    ret, ok = run_episode(CustomEnv(seed=s), agent, 0.0)
    eval_returns.append(ret)
    eval_completions.append(1 if ok else 0)

os.makedirs("results", exist_ok=True)
with open("results/model.txt", "w") as f:
    f.write("policy: nearest-pickup greedy router\n")
with open("results/results.json", "w") as f:
    json.dump(
        {
            "episode_returns": episode_returns,
            "eval_returns": eval_returns,
            "model_path": "results/model.txt",
            "eval_seeds": eval_seeds,
            "eval_completions": eval_completions,
        },
        f,
    )
print(
    "training complete; completion rate:",
    sum(eval_completions) / len(eval_completions),
)
