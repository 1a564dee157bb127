import os
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from endotype.scalars import G

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def seed():
    return int(os.environ.get("ENDOTYPE_SEED", "20240501"))


@pytest.fixture
def rng():
    return random.Random(seed())


small_fraction = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 4))
gaussian = st.builds(G, small_fraction, small_fraction)
real_gaussian = st.builds(G, small_fraction)


def random_fraction(rng, span=6, denominators=(1, 2, 3, 4)):
    return Fraction(rng.randint(-span, span), rng.choice(denominators))


def random_gaussian(rng, span=6):
    return G(random_fraction(rng, span), random_fraction(rng, span))


# one line per acceptance criterion, printed again in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    from endotype.errors import RealityTrap
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
    terminalreporter.write_line("reality trap firings this session: %d" % RealityTrap.fired)


def pytest_sessionfinish(session, exitstatus):
    from endotype.errors import RealityTrap
    # a single firing anywhere is a release blocker
    if RealityTrap.fired and exitstatus == 0:
        session.exitstatus = 1
