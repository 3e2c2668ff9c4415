import json
import math
import os
import random

random.seed(7)

GRAVITY = 9.8
CART_MASS = 1.0
POLE_MASS = 0.1
POLE_HALF_LENGTH = 0.5
FORCE_MAG = 10.0
TAU = 0.02
ANGLE_LIMIT = 12 * math.pi / 180
X_LIMIT = 2.4
MAX_STEPS = 500


class CustomEnv:
    def reset(self):
        self.state = [random.uniform(-0.05, 0.05) for _ in range(4)]
        self.steps = 0
        return list(self.state)

    def step(self, action):
        x, x_dot, theta, theta_dot = self.state
        force = FORCE_MAG if action == 1 else -FORCE_MAG
        cos_t, sin_t = math.cos(theta), math.sin(theta)
        total_mass = CART_MASS + POLE_MASS
        temp = (force + POLE_MASS * POLE_HALF_LENGTH * theta_dot**2 * sin_t) / total_mass
        theta_acc = (GRAVITY * sin_t - cos_t * temp) / (
            POLE_HALF_LENGTH * (4.0 / 3.0 - POLE_MASS * cos_t**2 / total_mass)
        )
        x_acc = temp - POLE_MASS * POLE_HALF_LENGTH * theta_acc * cos_t / total_mass
        x += TAU * x_dot
        x_dot += TAU * x_acc
        theta += TAU * theta_dot
        theta_dot += TAU * theta_acc
        self.state = [x, x_dot, theta, theta_dot]
        self.steps += 1
        done = abs(x) > X_LIMIT or abs(theta) > ANGLE_LIMIT or self.steps >= MAX_STEPS
        return list(self.state), 1.0, done


class Agent:
    def act(self, state, epsilon):
        if random.random() < epsilon:
            return random.randint(0, 1)
        _, _, theta, theta_dot = state
        return 1 if theta + 0.5 * theta_dot > 0 else 0


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
    epsilon = max(0.0, 0.5 * (1 - ep / 100))
    episode_returns.append(run_episode(env, agent, epsilon))

eval_returns = [run_episode(env, agent, 0.0) for _ in range(20)]

os.makedirs("results", exist_ok=True)
with open("results/model.txt", "w") as f:
    f.write("policy: lean-following controller\n")
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
