"""BPSK/AWGN operating points with unit-variance noise.

The signal amplitude is expressed in noise standard deviations,
``c = sqrt(2 R Eb/N0)``, and the hard-decision crossover probability is
``eps = Q(c)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["ChannelPoint", "q_function", "ebn0_to_point"]


def q_function(x: float) -> float:
    """Upper tail probability of the standard normal distribution."""
    # erfc keeps full relative accuracy in the far tail, unlike 1 - Phi(x)
    return 0.5 * math.erfc(x / math.sqrt(2.0))


@dataclass(frozen=True)
class ChannelPoint:
    ebn0_db: float
    rate: float
    c: float
    eps: float

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"amplitude must be positive, got {self.c}")
        if not 0 < self.eps <= 0.5:
            raise ValueError(f"crossover probability must lie in (0, 0.5], got {self.eps}")


def ebn0_to_point(ebn0_db: float, rate: float = 0.5) -> ChannelPoint:
    if not 0 < rate <= 1:
        raise ValueError(f"rate must lie in (0, 1], got {rate}")
    c = math.sqrt(2.0 * rate * 10.0 ** (ebn0_db / 10.0))
    return ChannelPoint(ebn0_db=float(ebn0_db), rate=float(rate), c=c, eps=q_function(c))
