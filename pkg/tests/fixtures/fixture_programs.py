import pytest

from expansion.programs import (EventuallyPeriodic, Finite, GeometricRuns,
                                LinearRuns, RunSchedule)


@pytest.fixture
def one_third():
    return EventuallyPeriodic('', '01')


@pytest.fixture
def one_fifth():
    return EventuallyPeriodic('', '0011')


@pytest.fixture
def one_seventh():
    return EventuallyPeriodic('', '001')


@pytest.fixture
def one_half():
    return Finite('1')


@pytest.fixture
def explicit_schedule():
    """Filler 10 with a run of five zeros after position 3."""
    return RunSchedule('10', ((3, 5, 0),))


@pytest.fixture
def doubling_schedule():
    """n_(i+1) = 2 n_i, L_i = 2^n_i, digit 0: a point of D(1)."""
    return RunSchedule('10', GeometricRuns(1, 2, 1, 0))


@pytest.fixture
def linear_schedule():
    return RunSchedule('10', LinearRuns(2, 2, 1, 1))
