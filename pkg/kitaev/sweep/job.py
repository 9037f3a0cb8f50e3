# -*- coding: utf-8 -*-

from dataclasses import dataclass, field
from typing import Dict

import numpy as np


@dataclass(frozen=True)
class SweepRange:
    """lo:hi:steps, both endpoints included."""

    lo: float
    hi: float
    steps: int

    def values(self):
        return np.linspace(self.lo, self.hi, self.steps)

    def __str__(self):
        return "%r:%r:%d" % (float(self.lo), float(self.hi), self.steps)


@dataclass
class Job:
    command: str
    settings: Dict[str, object] = field(default_factory=dict)
    lineno: int = 0
