"""Reference trainer templates, one per benchmark task.

Each is runnable standalone (``python -m rl_runtime_kit.templates.<name>
--episodes N --seed S``) and writes the standard results file.  They exist
for harness self-tests and oracle baselines only and are never injected
into code-generation prompts.
"""

from importlib import import_module

TEMPLATE_MODULES = {
    "cart-pole": "cartpole_dqn",
    "mountain-car": "mountain_car_dqn",
    "wireless": "wireless_dqn",
    "drone-delivery": "drone_grid_dqn",
    "inventory-management": "inventory_dqn",
}


def load_template(task_id: str):
    return import_module(f"{__package__}.{TEMPLATE_MODULES[task_id]}")
