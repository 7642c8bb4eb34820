"""Shared fixtures: ring contexts for the discriminants the suite leans on."""

import pytest

from soslab import RingContext

# Squarefree D covering all three dyadic splitting classes and both
# integral bases: 2, 3, 6 ramified (kappa = 2); 5, 13, 21 inert and
# 17 split (kappa = 1).
STANDARD_DS = (2, 3, 5, 6, 7, 13, 17, 21)


@pytest.fixture(scope="session")
def contexts() -> dict[int, RingContext]:
    return {d: RingContext(d) for d in STANDARD_DS}


@pytest.fixture(scope="session")
def ctx2(contexts) -> RingContext:
    return contexts[2]


@pytest.fixture(scope="session")
def ctx3(contexts) -> RingContext:
    return contexts[3]


@pytest.fixture(scope="session")
def ctx5(contexts) -> RingContext:
    return contexts[5]


@pytest.fixture(scope="session")
def ctx6(contexts) -> RingContext:
    return contexts[6]
