"""Random small-height Gaussian rationals and generic configurations.

Every draw goes through :class:`Sampler`, which rejects points that land
on a kernel pole relative to the points already drawn and records how many
re-draws that took.
"""

import logging
import random

from gmpy2 import mpq

from .exactnum import GaussianRational
from .kernels import BetheConfig, RValue

log = logging.getLogger(__name__)

DEFAULT_HEIGHT = 20


def trial_seed(seed, index):
    """Independent, reproducible seed for trial ``index`` of a run."""
    return random.Random(f"{seed}:{index}").getrandbits(63)


class Sampler:
    def __init__(self, seed=0, height=DEFAULT_HEIGHT):
        self.rng = random.Random(seed)
        self.height = height
        self.redraws = 0

    def rational(self, nonzero=False):
        while True:
            q = mpq(self.rng.randint(-self.height, self.height), self.rng.randint(1, self.height))
            if q or not nonzero:
                return q

    def gaussian(self, nonzero=False):
        while True:
            z = GaussianRational._make(self.rational(), self.rational())
            if z or not nonzero:
                return z

    def points(self, count, c, taken=(), shifts=(0, 1, -1, 2, -2)):
        """``count`` new points differing from each other and from ``taken``
        by none of the multiples of ``c`` listed in ``shifts``."""
        taken = list(taken)
        out = []
        while len(out) < count:
            z = self.gaussian()
            if any(z - p == s * c for p in taken for s in shifts):
                self.redraws += 1
                log.debug("re-drawing %s: collides with an earlier point", z)
                continue
            taken.append(z)
            out.append(z)
        return out

    def values(self, count):
        return [self.gaussian(nonzero=True) for _ in range(count)]

    def config(self, a, b, c=None, kappa=None, varkappa=None, **extra):
        """Generic configuration with random r-values and derivatives at every point."""
        if c is None:
            c = self.gaussian(nonzero=True)
        pts = self.points(2 * a + 2 * b, c)
        uC, uB = pts[:a], pts[a:2 * a]
        vC, vB = pts[2 * a:2 * a + b], pts[2 * a + b:]
        r1 = {p: RValue(*self.values(2)) for p in uC + uB}
        r3 = {p: RValue(*self.values(2)) for p in vC + vB}
        if kappa is None:
            kappa = tuple(self.values(3))
        if varkappa is None:
            varkappa = self.gaussian(nonzero=True)
        return BetheConfig(c=c, uC=uC, vC=vC, uB=uB, vB=vB, varkappa=varkappa,
                           kappa=kappa, r1_table=r1, r3_table=r3, **extra)
