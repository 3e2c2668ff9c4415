"""Value-based training backbone: replay buffer, target network,
epsilon-greedy exploration, one-hidden-layer Q-network in numpy.

Deliberately small: desk-scale instances train in seconds on a CPU and
runs are exactly reproducible from the seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class DqnConfig:
    episodes: int = 150
    hidden: int = 32
    gamma: float = 0.99
    lr: float = 5e-3
    buffer_size: int = 20_000
    batch_size: int = 64
    train_every: int = 2
    target_sync: int = 250
    warmup: int = 200
    epsilon_start: float = 1.0
    epsilon_final: float = 0.05
    epsilon_decay_fraction: float = 0.6
    grad_clip: float = 5.0


class QNetwork:
    def __init__(self, obs_dim: int, n_actions: int, hidden: int, rng: np.random.Generator):
        scale1 = np.sqrt(2.0 / obs_dim)
        scale2 = np.sqrt(2.0 / hidden)
        self.w1 = rng.normal(0.0, scale1, size=(obs_dim, hidden))
        self.b1 = np.zeros(hidden)
        self.w2 = rng.normal(0.0, scale2, size=(hidden, n_actions))
        self.b2 = np.zeros(n_actions)

    def forward(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        h = np.maximum(x @ self.w1 + self.b1, 0.0)
        return h @ self.w2 + self.b2, h

    def q_values(self, obs) -> np.ndarray:
        q, _ = self.forward(np.asarray(obs, dtype=np.float64)[None, :])
        return q[0]

    def clone_from(self, other: "QNetwork") -> None:
        self.w1 = other.w1.copy()
        self.b1 = other.b1.copy()
        self.w2 = other.w2.copy()
        self.b2 = other.b2.copy()

    def sgd_step(self, x, actions, td_error, lr, clip):
        """One gradient step on 0.5 * mean(td_error^2) for taken actions."""
        batch = x.shape[0]
        q, h = self.forward(x)
        dq = np.zeros_like(q)
        dq[np.arange(batch), actions] = td_error / batch
        dw2 = h.T @ dq
        db2 = dq.sum(axis=0)
        dh = dq @ self.w2.T
        dh[h <= 0.0] = 0.0
        dw1 = x.T @ dh
        db1 = dh.sum(axis=0)
        for g in (dw1, db1, dw2, db2):
            np.clip(g, -clip, clip, out=g)
        self.w1 -= lr * dw1
        self.b1 -= lr * db1
        self.w2 -= lr * dw2
        self.b2 -= lr * db2

    def save(self, path) -> None:
        np.savez(path, w1=self.w1, b1=self.b1, w2=self.w2, b2=self.b2)


class ReplayBuffer:
    def __init__(self, capacity: int, obs_dim: int):
        self.capacity = capacity
        self.obs = np.zeros((capacity, obs_dim))
        self.actions = np.zeros(capacity, dtype=np.int64)
        self.rewards = np.zeros(capacity)
        self.next_obs = np.zeros((capacity, obs_dim))
        self.dones = np.zeros(capacity)
        self.size = 0
        self.pos = 0

    def push(self, obs, action, reward, next_obs, done) -> None:
        i = self.pos
        self.obs[i] = obs
        self.actions[i] = action
        self.rewards[i] = reward
        self.next_obs[i] = next_obs
        self.dones[i] = float(done)
        self.pos = (self.pos + 1) % self.capacity
        self.size = min(self.size + 1, self.capacity)

    def sample(self, batch: int, rng: np.random.Generator):
        idx = rng.integers(0, self.size, size=batch)
        return (
            self.obs[idx],
            self.actions[idx],
            self.rewards[idx],
            self.next_obs[idx],
            self.dones[idx],
        )


def train_dqn(env, config: DqnConfig, seed: int = 0):
    """Train on one env; returns (episode_returns, trained QNetwork)."""
    rng = np.random.default_rng(seed)
    net = QNetwork(env.obs_dim, env.n_actions, config.hidden, rng)
    target = QNetwork(env.obs_dim, env.n_actions, config.hidden, rng)
    target.clone_from(net)
    buffer = ReplayBuffer(config.buffer_size, env.obs_dim)

    decay_episodes = max(1, int(config.episodes * config.epsilon_decay_fraction))
    episode_returns: list[float] = []
    step_count = 0

    for episode in range(config.episodes):
        frac = min(1.0, episode / decay_episodes)
        epsilon = config.epsilon_start + frac * (config.epsilon_final - config.epsilon_start)
        obs = np.asarray(env.reset(), dtype=np.float64)
        total = 0.0
        done = False
        while not done:
            if rng.random() < epsilon:
                action = int(rng.integers(env.n_actions))
            else:
                action = int(np.argmax(net.q_values(obs)))
            next_obs_l, reward, done = env.step(action)
            next_obs = np.asarray(next_obs_l, dtype=np.float64)
            buffer.push(obs, action, reward, next_obs, done)
            obs = next_obs
            total += reward
            step_count += 1

            if buffer.size >= config.warmup and step_count % config.train_every == 0:
                b_obs, b_act, b_rew, b_next, b_done = buffer.sample(config.batch_size, rng)
                next_q, _ = target.forward(b_next)
                targets = b_rew + config.gamma * (1.0 - b_done) * next_q.max(axis=1)
                q, _ = net.forward(b_obs)
                td_error = q[np.arange(len(b_act)), b_act] - targets
                net.sgd_step(b_obs, b_act, td_error, config.lr, config.grad_clip)
            if step_count % config.target_sync == 0:
                target.clone_from(net)
        episode_returns.append(total)

    return episode_returns, net


def greedy_action(net: QNetwork, obs) -> int:
    return int(np.argmax(net.q_values(np.asarray(obs, dtype=np.float64))))


def evaluate(env, net: QNetwork, episodes: int = 20):
    """Greedy-policy evaluation; collects env.completed() when available."""
    returns: list[float] = []
    completions: list[int] = []
    for _ in range(episodes):
        obs = env.reset()
        total = 0.0
        done = False
        while not done:
            obs, reward, done = env.step(greedy_action(net, obs))
            total += reward
        returns.append(total)
        if hasattr(env, "completed"):
            completions.append(1 if env.completed() else 0)
    return returns, completions
