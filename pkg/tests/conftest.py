import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from bethe_sp.exactnum import GaussianRational  # noqa: E402
from bethe_sp.sampling import Sampler  # noqa: E402

settings.register_profile(
    "exact",
    deadline=None,
    max_examples=30,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")


def G(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


small = st.fractions(min_value=-12, max_value=12, max_denominator=9)
gaussians = st.builds(lambda a, b: GaussianRational(a, b), small, small)
nonzero_gaussians = gaussians.filter(bool)
seeds = st.integers(min_value=0, max_value=2 ** 40)


def sampler(seed):
    return Sampler(seed, height=12)


@pytest.fixture
def report(capsys):
    """Print a line straight to the terminal, bypassing capture."""

    def emit(line):
        with capsys.disabled():
            print("\n" + line)

    return emit
