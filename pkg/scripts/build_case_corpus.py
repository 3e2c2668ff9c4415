#!/usr/bin/env python3
"""Author the bundled case-study response corpus.

Writes one raw model-output file per stage per task under
src/nl2mdp/casestudies/<task>/, then re-parses and validates every set as a
sanity gate.  The files are committed; rerun only when the corpus changes.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO / "src"))

from nl2mdp.ir import parse_structured_block, serialize, validate_ir  # noqa: E402

OUT = REPO / "src" / "nl2mdp" / "casestudies"


def dressed_json(doc: dict, lead: str = "", fenced: bool = False) -> str:
    body = json.dumps(doc, indent=2, ensure_ascii=False)
    if fenced:
        body = f"```json\n{body}\n```"
    return f"{lead}{body}\n" if lead else body + "\n"


def block(content: str) -> str:
    return f"=====\n{content}\n=====\n"


def params_doc(rows: list[tuple[str, str, str, str]]) -> dict:
    return {
        "parameters": [
            {"SYMBOL": s, "SHAPE": sh, "DEFINITION": d, "TYPE": t}
            for s, sh, d, t in rows
        ]
    }


def vars_doc(rows: list[tuple[str, str, str]]) -> dict:
    return {
        "variables": [
            {"SYMBOL": s, "SHAPE": sh, "DEFINITION": d} for s, sh, d in rows
        ]
    }


CASES: dict[str, dict[str, str]] = {}

# --- cart-pole ---------------------------------------------------------------

CASES["cart-pole"] = {
    "parameter": dressed_json(
        params_doc([
            ("CartPosition", "[]", "The position of the cart", "float"),
            ("CartVelocity", "[]", "The velocity of the cart", "float"),
            ("PoleAngle", "[]", "The angle of the pole from vertical", "float"),
            ("PoleAngularVelocity", "[]", "The angular velocity of the pole", "float"),
            ("CartMaxVelocity", "[]", "The maximum velocity of the cart", "float"),
            ("PoleAngleLimit", "[]", "The maximum angle the pole can deviate from vertical", "float"),
        ])
    ),
    "objective": block(
        "OBJECTIVE: The goal is to maximize the duration for which the pole remains upright."
    ),
    "variable": dressed_json(
        vars_doc([
            ("CartAcceleration", "[]", "The acceleration of the cart along the horizontal axis"),
        ]),
        lead="Here are the decision variables identified from the description:\n\n",
        fenced=True,
    ),
    "constraint": dressed_json({
        "constraints": [
            "PoleAngle must be within a range to keep the pole from falling.",
            "CartPosition must remain within track limits.",
            "CartVelocity should not exceed maximum allowable velocity.",
            "PoleAngularVelocity should remain within stable range.",
            "CartPosition should always be non-negative.",
            "CartVelocity should be non-negative.",
            "PoleAngle must allow for instantaneous return to vertical.",
        ]
    }),
    "objective_modeling": block(
        r"$J(\pi) = \mathbb{E} \left[ \sum_{t=0}^{\infty} \gamma^t R_t \,\middle|\, \pi \right]$"
    ),
    "constraint_modeling": block("\n".join([
        r"$-\theta_{\text{max}} \leq \text{PoleAngle} \leq \theta_{\text{max}}$",
        r"$\text{CartPosition}_{\min} \leq \text{CartPosition} \leq \text{CartPosition}_{\max}$",
        r"$|\text{CartVelocity}| \leq \text{MaxCartVelocity}$",
        r"$-\text{Range} \leq \text{PoleAngularVelocity} \leq \text{Range}$",
        r"$\text{CartPosition} \geq 0$",
        r"$\text{CartVelocity} \geq 0$",
        r"$|\text{PoleAngle}| \leq \epsilon \implies \text{CartAcceleration} = -k \cdot \text{PoleAngularVelocity}$",
    ])),
    "sar": dressed_json({
        "state": {
            "variables": ["PoleAngle", "CartPosition", "CartVelocity", "PoleAngularVelocity"],
            "shape": "[4,]",
        },
        "action": {"variables": ["force"], "shape": "[1]", "type": "discrete"},
        "reward": {
            "description": "The agent receives a reward of 1 if the pole remains upright and the cart stays within bounds; otherwise, 0.",
            "formula": (
                r"$R_t = \begin{cases} 1, & \text{if } |\text{PoleAngle}_t| \leq \theta_{\text{max}} "
                r"\text{ and } |\text{CartPosition}_t| \leq \text{CartPosition}_{\max} \\ "
                r"0, & \text{otherwise} \end{cases}$"
            ),
        },
    }),
    "env": dressed_json({
        "mode": "prebuilt",
        "usage": "CartPole-v1",
        "transition_logic": (
            "This environment follows the standard Gym implementation. Adjust cart position "
            "and velocity based on applied acceleration; update pole angle and angular velocity "
            "using physics equations; ensure constraints are satisfied at each step."
        ),
        "termination": "The episode ends when the pole falls beyond the angle limit or the cart leaves the track.",
    }),
}

# --- mountain-car ------------------------------------------------------------

CASES["mountain-car"] = {
    "parameter": dressed_json(
        params_doc([
            ("InitialReward", "[]", "The reward received at each time step before reaching the goal", "float"),
            ("GoalReward", "[]", "Reward received when reaching the goal", "float"),
            ("ActionSpaceSize", "[]", "Number of possible actions (3)", "int"),
        ]),
        fenced=True,
    ),
    "objective": block(
        "OBJECTIVE: The goal is to minimize the cumulative reward (equivalent to minimizing "
        "the number of time steps) to reach the top of the right hill."
    ),
    "variable": dressed_json(
        vars_doc([
            ("InitialPosition", "[]", "The initial position of the car between the two hills"),
            ("HillHeights", "[2]", "The heights of the left and right hills"),
            ("HillDistances", "[2]", "Distances to the hills from the initial position"),
            ("CarMass", "[]", "Mass of the car"),
            ("MaxAcceleration", "[]", "Maximum acceleration the car can achieve"),
            ("TimeStepDuration", "[]", "Duration of each time step"),
            ("Gravity", "[]", "Gravitational acceleration"),
            ("FrictionCoefficient", "[]", "Friction coefficient between car and ground"),
        ])
    ),
    "constraint": dressed_json({
        "constraints": [
            "The car must reach the top of the right hill to terminate the episode.",
            "The car's velocity must be physically plausible.",
            "The car's position must follow the motion equation.",
            "The car's acceleration is limited to discrete actions.",
            "The car starts between the two hills.",
            "The car's position must remain within the environment.",
            "Time steps are discrete.",
            "The reward is -1 until the goal is reached, implying minimization of time steps.",
            "The car must build enough momentum to overcome the right hill.",
        ]
    }),
    "objective_modeling": block(
        r"$J(\pi) = \mathbb{E}_{\pi} \left[ \sum_{t=0}^{T} R_t \right]$"
    ),
    "constraint_modeling": block("\n".join([
        r"$\text{Position} \geq \text{HillDistances}[1] + \text{HillHeights}[1]$",
        r"$|V_t| \leq \text{MaxAcceleration} \cdot \text{TimeStepDuration}$",
        r"$P_{t+1} = P_t + V_t \cdot \text{TimeStepDuration} + 0.5 \cdot A_t \cdot \text{TimeStepDuration}^2$",
        r"$\{ a_{\text{left}}, a_{\text{right}}, a_{\text{still}} \}$",
        r"$0 \leq \text{InitialPosition} \leq \text{HillDistances}[1] + \text{HillDistances}[0]$",
        r"$0 \leq \text{Position} \leq \sum_{i=1}^{2} \text{HillDistances}[i]$",
        r"$t \in \mathbb{Z}_{\geq 0}$",
        r"$\sum_{t=0}^{T-1} -\text{InitialReward} = -T$",
        r"$0.5 \cdot \text{CarMass} \cdot \text{Velocity}^2 \geq \text{CarMass} \cdot \text{Gravity} \cdot \text{HillHeights}[1]$",
    ])),
    "sar": dressed_json({
        "state": {"variables": ["CarPosition", "CarVelocity"], "shape": "[2,]"},
        "action": {"variables": ["Acceleration"], "shape": "[1]", "type": "discrete"},
        "reward": {
            "description": (
                "A negative reward is given for each time step, encouraging the agent to reach "
                "the goal as quickly as possible. A positive reward is given when the goal is reached."
            ),
            "formula": (
                r"$R_t = \begin{cases} 0, & \text{if } \text{CarPosition}_t \geq \text{HillDistances}[1] + "
                r"\text{HillHeights}[1] \\ -1, & \text{otherwise} \end{cases}$"
            ),
        },
    }, lead="The state, action, and reward components are:\n\n"),
    "env": dressed_json({
        "mode": "custom",
        "usage": None,
        "transition_logic": (
            "Based on the chosen action (left, right, still), update the car's velocity "
            "considering acceleration, time step duration, and friction. Calculate the new "
            "position from the updated velocity. If the car reaches the goal, terminate the "
            "episode; otherwise, apply the reward and continue."
        ),
        "termination": "The episode terminates when the car reaches the top of the right hill.",
    }),
}

# --- wireless ----------------------------------------------------------------

_SHANNON = (
    r"\text{B} \cdot \log_2 \left( 1 + \frac{\text{TransmissionPower} \cdot "
    r"\text{ChannelGain}[t]}{\text{NoiseDensity} \cdot \text{Bandwidth}} \right)"
)

CASES["wireless"] = {
    "parameter": dressed_json(
        params_doc([
            ("Bandwidth", "[]", "The bandwidth of the system in MHz", "float"),
            ("TransmissionPower", "[]", "The transmission power in mW", "float"),
            ("NoiseDensity", "[]", "The noise density in dBm", "float"),
            ("PathLossCoefficient", "[]", "Path loss coefficient affecting the channel", "float"),
            ("ShadowingStandardDeviation", "[]", "Standard deviation of log-normal shadowing in dB", "float"),
            ("UserDistances", "[4]", "Distances of users from the base station (in meters)", "float"),
            ("ChannelGainRange", "[2]", "Normalized range of channel gains in dB", "float"),
        ]),
        lead="Here is the single json object with all extracted parameters.\n\n",
    ),
    "objective": block(
        "OBJECTIVE: The goal is to determine an optimal scheduling strategy that maximizes "
        "overall network performance while adhering to system constraints."
    ),
    "variable": dressed_json(
        vars_doc([
            ("ScheduledUser", "[]", "Index of the user scheduled to transmit in a time slot"),
            ("TransmissionRate", "[]", "Transmission rate for the scheduled user in each time slot"),
            ("ChannelGain", "[4]", "Time-varying channel gain for each user"),
        ])
    ),
    "constraint": dressed_json({
        "constraints": [
            "Only one user can be scheduled per time slot.",
            "Transmission rate must follow Shannon's formula.",
            "Channel gain values must be between -80 dB and -30 dB.",
            "Transmission power must be non-negative.",
            "Bandwidth must be non-negative.",
            "Noise density must be non-negative.",
            "User distances must be non-negative.",
        ]
    }),
    "objective_modeling": block(
        r"$J(\pi) = \mathbb{E} \left[ \sum_{t=0}^{\infty} \gamma^t \cdot \left( "
        + _SHANNON
        + r" \right) \,\middle|\, \pi \right]$"
    ),
    "constraint_modeling": block("\n".join([
        r"$\forall t, \quad \sum_{u} x_{u,t} = 1$",
        r"$\forall t, \quad \text{TransmissionRate}[t] = \text{Bandwidth} \cdot \log_2 \left( 1 + "
        r"\frac{\text{TransmissionPower} \cdot \text{ChannelGain}[t]}{\text{NoiseDensity} \cdot \text{Bandwidth}} \right)$",
        r"$-80 \leq \text{ChannelGain}[t] \leq -30$",
        r"$\text{TransmissionPower} \geq 0$",
        r"$\text{Bandwidth} \geq 0$",
        r"$\text{NoiseDensity} \geq 0$",
        r"$\text{UserDistances}[i] \geq 0$",
    ])),
    "sar": dressed_json({
        "state": {
            "variables": ["ChannelGain", "PathLossCoefficient", "ShadowingStandardDeviation", "UserDistances"],
            "shape": "[4,]",
        },
        "action": {"variables": ["ScheduledUser"], "shape": "[4]", "type": "discrete"},
        "reward": {
            "description": "The reward is the transmission rate achieved using Shannon's capacity formula.",
            "formula": "$R_t = " + _SHANNON + "$",
        },
    }),
    "env": dressed_json({
        "mode": "custom",
        "usage": None,
        "transition_logic": (
            "This task requires a custom Gym environment. Schedule a user, compute transmission "
            "rate using Shannon's formula based on current channel gain, update the environment "
            "state, and proceed to the next time step. Channel gain is assumed to be updated "
            "externally each time step."
        ),
        "termination": "The episode ends after the scheduling horizon of T time slots.",
    }),
}

# --- drone-delivery ----------------------------------------------------------

CASES["drone-delivery"] = {
    "parameter": dressed_json(
        params_doc([
            ("GridSize", "[]", "Size of the square grid world (50 x 50)", "int"),
            ("InitialEnergyMin", "[]", "Minimum initial energy level", "int"),
            ("InitialEnergyMax", "[]", "Maximum initial energy level", "int"),
            ("MovementEnergyCost", "[]", "Energy cost for moving to an adjacent cell", "int"),
            ("DeliveryEnergyCost", "[]", "Energy cost for each package delivery", "int"),
            ("NumberOfPackages", "[]", "Number of packages to deliver, sampled per episode", "int"),
            ("PickupLocations", "[NumberOfPackages, 2]", "Coordinates of pickup points", "int"),
            ("DeliveryTargets", "[NumberOfPackages, 2]", "Coordinates of delivery destinations", "int"),
        ])
    ),
    "objective": block(
        "OBJECTIVE: The objective is to complete all deliveries while minimizing energy "
        "consumption, ensuring that energy is not depleted prematurely."
    ),
    "variable": dressed_json(
        vars_doc([
            ("Route", "[s, 2]", "Sequence of coordinates the drone visits; s is the route length"),
            ("PickupOrder", "[NumberOfPackages]", "Order in which packages are picked up"),
            ("DeliveryOrder", "[NumberOfPackages]", "Order in which packages are delivered"),
            ("EnergyConsumed", "[]", "Total energy consumed by moves and deliveries"),
            ("CurrentEnergy", "[]", "Energy level at a given state"),
            ("CurrentPosition", "[2]", "Drone's current position in the grid"),
        ])
    ),
    "constraint": dressed_json({
        "constraints": [
            "Energy consumed must not exceed the maximum initial energy.",
            "Route must include all pickup locations.",
            "Route must include all delivery targets.",
            "Route must start at the initial position.",
            "Energy consumed must equal the number of moves between adjacent cells.",
            "Current energy must remain non-negative throughout the route.",
            "Each package must be picked up before being delivered.",
            "The number of packages picked up must match the total number of packages.",
            "The number of packages delivered must match the total number of packages.",
            "All pickup coordinates must lie within the grid.",
            "All delivery coordinates must lie within the grid.",
        ]
    }),
    "objective_modeling": block(
        r"$J(\pi) = \mathbb{E}_{\pi} \left[ \sum_{t=0}^{T} \gamma^t R_t \right]$"
    ),
    "constraint_modeling": block("\n".join([
        r"$\text{EnergyConsumed} \leq \text{InitialEnergyMax}$",
        r"$\forall p, \exists s \; \text{such that } \text{Route}[s] = \text{PickupLocations}[p]$",
        r"$\forall d, \exists t \; \text{such that } \text{Route}[t] = \text{DeliveryTargets}[d]$",
        r"$\text{Route}[0] = \text{CurrentPosition}$",
        r"$\text{EnergyConsumed} = \sum_{i=1}^{S-1} \mathbb{I}\big(\|\text{Route}[i] - \text{Route}[i+1]\|_1 = 1\big)$",
        r"$\text{CurrentEnergy}[s] \geq 0$",
        r"$\text{PickupOrder}[i] < \text{DeliveryOrder}[i]$",
        r"$\text{NumberOfPackagesPicked} = \text{NumberOfPackages}$",
        r"$\text{NumberOfPackagesDelivered} = \text{NumberOfPackages}$",
        r"$0 \leq \text{PickupLocations}[i,j] < 50$",
        r"$0 \leq \text{DeliveryTargets}[i,j] < 50$",
    ])),
    "sar": dressed_json({
        "state": {
            "variables": ["CurrentPosition", "CurrentEnergy", "PickupStatuses", "DeliveryStatuses"],
            "shape": "[1 + 2 + n + n]",
        },
        "action": {
            "variables": ["MoveNorth", "MoveSouth", "MoveEast", "MoveWest", "PickUpPackage", "DeliverPackage"],
            "shape": "[6]",
            "type": "discrete",
        },
        "reward": {
            "description": "The reward encourages efficient deliveries while penalizing energy use.",
            "formula": (
                r"$R_t = \begin{cases} +10, & \text{if a package is delivered} \\ "
                r"-1 \times \text{MovementEnergyCost}, & \text{for each move} \\ "
                r"-2 \times \text{DeliveryEnergyCost}, & \text{for each delivery} \\ "
                r"0, & \text{otherwise} \end{cases}$"
            ),
        },
    }),
    "env": dressed_json({
        "mode": "custom",
        "usage": None,
        "transition_logic": (
            "This task requires a custom Gym environment. When an action is taken, update the "
            "drone's position, decrease energy by movement or delivery cost, and adjust the "
            "reward if a delivery is completed."
        ),
        "termination": "The episode ends when all packages are delivered or the drone's energy is depleted.",
    }),
}

# --- inventory-management ------------------------------------------------------

_PROFIT_TERMS = (
    r"\sum_{i=1}^{10} \left( \text{SellingPrice}_i \cdot \min(\text{Demand}_i(t), "
    r"\text{StockLevel}_i(t)) - \text{FixedCost}_i - \text{UnitCost}_i \cdot "
    r"\text{OrderQuantity}_i(t) - \text{HoldingCost}_i \cdot \text{StockLevel}_i(t) \right)"
)

CASES["inventory-management"] = {
    "parameter": dressed_json(
        params_doc([
            ("NumberOfItems", "[]", "The number of items in the inventory", "int"),
            ("FixedCost", "[10]", "Fixed ordering cost for each item", "float"),
            ("UnitCost", "[10]", "Per-unit ordering cost for each item", "float"),
            ("HoldingCost", "[10]", "Cost of holding inventory per time unit for each item", "float"),
            ("SellingPrice", "[10]", "Selling price per unit for each item", "float"),
            ("MeanDemand", "[10]", "Mean of the Poisson distribution for demand for each item", "int"),
        ])
    ),
    "objective": block(
        "OBJECTIVE: The goal is to maximize long-term profit while fulfilling demand."
    ),
    "variable": dressed_json(
        vars_doc([
            ("OrderQuantity", "[10]", "Quantity of each item to order at each time step"),
            ("StockLevel", "[10]", "Current inventory level for each item"),
            ("LostSales", "[10]", "Unmet demand due to insufficient stock"),
            ("Profit", "[]", "Long-term profit to be maximized"),
        ])
    ),
    "constraint": dressed_json({
        "constraints": [
            "Order quantity for each item must be non-negative.",
            "Inventory levels must be non-negative.",
            "Demand follows a Poisson distribution with mean 8.",
            "Lost sales penalties apply when demand exceeds stock.",
        ]
    }),
    "objective_modeling": block(
        r"$J(\pi) = \mathbb{E} \left[ \sum_{t=0}^{\infty} \gamma^t \cdot \left( "
        + _PROFIT_TERMS
        + r" \right) \,\middle|\, \pi \right]$"
    ),
    "constraint_modeling": block("\n".join([
        r"$\text{OrderQuantity}[i] \geq 0$",
        r"$\text{StockLevel}[i] \geq 0$",
        r"$\text{Demand}[i] \sim \text{Poisson}(\lambda=8)$",
        r"$\text{LostSales}[i] = \max(\text{Demand}[i] - \text{StockLevel}[i], 0)$",
    ])),
    "sar": dressed_json({
        "state": {"variables": ["StockLevel", "Demand"], "shape": "[20,]"},
        "action": {"variables": ["OrderQuantity"], "shape": "[10]", "type": "discrete"},
        "reward": {
            "description": "The reward is the profit gained at each time step.",
            "formula": (
                r"$R_t = \sum_{i=1}^{10} \left( \text{SellingPrice}_i \cdot \min(\text{Demand}_i(t), "
                r"\text{StockLevel}_i(t)) - \text{FixedCost}_i \cdot \mathbb{I}(\text{OrderQuantity}_i(t) > 0) "
                r"- \text{UnitCost}_i \cdot \text{OrderQuantity}_i(t) - \text{HoldingCost}_i \cdot "
                r"\text{StockLevel}_i(t) - \text{PenaltyCost}_i \cdot \max(\text{Demand}_i(t) - "
                r"\text{StockLevel}_i(t), 0) \right)$"
            ),
        },
    }),
    "env": dressed_json({
        "mode": "custom",
        "usage": None,
        "transition_logic": (
            "This environment requires a custom Gym implementation. For each item, update stock "
            "levels by fulfilling demand and applying order quantities. Calculate lost sales when "
            "demand exceeds stock, then compute costs and update profit."
        ),
        "termination": "The episode ends after the planning horizon of T time steps.",
    }),
}


IR_STAGES = (
    "parameter", "objective", "variable", "constraint",
    "objective_modeling", "constraint_modeling", "sar", "env",
)


def main() -> None:
    for task, stages in CASES.items():
        task_dir = OUT / task
        task_dir.mkdir(parents=True, exist_ok=True)
        docs = {}
        for stage in IR_STAGES:
            raw = stages[stage]
            (task_dir / f"{stage}.txt").write_text(raw, encoding="utf-8")
            result = parse_structured_block(raw, stage)
            docs[stage] = result.doc
        ir = serialize.assemble_ir(docs)
        report = validate_ir(ir)
        status = "clean" if report.empty else "VIOLATIONS"
        print(f"{task}: {status}, {len(report.warnings)} warnings")
        for f in report.violations:
            print(f"  violation {f.code} @ {f.where}: {f.message}")
    if any(
        not validate_ir(
            serialize.assemble_ir({
                s: parse_structured_block(CASES[t][s], s).doc for s in IR_STAGES
            })
        ).empty
        for t in CASES
    ):
        raise SystemExit("corpus has violations")


if __name__ == "__main__":
    main()
