"""Synthetic decision-maker for closed-loop testing.

Hidden linear utility over the objective vector plus softmax choice noise:
temperature 0 always takes the argmax (ties to the lowest slate position),
larger temperatures flatten the choice distribution. Simulated users never
skip a slate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyPresentation, InvalidConfig
from .model import EvaluatedTeam


@dataclass
class SimulatedUser:
    weights: tuple[float, float, float]
    tau: float = 0.0
    rng_seed: int = 0
    _rng: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        self.weights = tuple(float(w) for w in self.weights)
        if len(self.weights) != 3 or any(w < 0.0 for w in self.weights):
            raise InvalidConfig("weights must be three non-negative reals", field="weights")
        if abs(sum(self.weights) - 1.0) > 1e-9:
            raise InvalidConfig(f"weights must sum to 1, got {sum(self.weights)!r}", field="weights")
        if self.tau < 0.0:
            raise InvalidConfig(f"tau must be >= 0, got {self.tau!r}", field="tau")
        self._rng = np.random.Generator(np.random.PCG64(self.rng_seed))

    def utility(self, ev: EvaluatedTeam) -> float:
        d, c, v = ev.objectives.as_tuple()
        w = self.weights
        return w[0] * d + w[1] * c + w[2] * v

    def choose(self, presented: list[EvaluatedTeam]) -> int:
        """Slate position of the chosen team.

        tau = 0 is a deterministic argmax regardless of the rng stream;
        tau > 0 samples proportionally to exp(utility / tau), consuming one
        uniform draw per call.
        """
        if not presented:
            raise EmptyPresentation("cannot choose from an empty slate")
        utilities = [self.utility(ev) for ev in presented]
        if self.tau == 0.0:
            best = max(utilities)
            return utilities.index(best)
        # Max-shifted softmax; shift invariance keeps this exact.
        top = max(utilities)
        weights = [math.exp((u - top) / self.tau) for u in utilities]
        total = sum(weights)
        draw = self._rng.random() * total
        acc = 0.0
        for i, w in enumerate(weights):
            acc += w
            if draw < acc:
                return i
        return len(presented) - 1
