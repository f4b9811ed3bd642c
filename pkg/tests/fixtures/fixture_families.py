import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from numerics.dyadic import DyadicRational
from numerics.intervals import Interval, IntervalFamily
from numerics.scale import ScaleExponent


def random_dyadic_family(rng, size):
    """At most `size` balls with dyadic centers and radii 2^-E."""
    members = []
    for _ in range(rng.randint(1, size)):
        exponent = rng.randint(1, 10)
        center = DyadicRational(rng.randint(0, 1 << 10), 10)
        members.append(Interval(center, ScaleExponent(exponent)))
    return IntervalFamily(tuple(members))


def _dyadic_member(numerator, exponent):
    return Interval(DyadicRational(numerator, 10), ScaleExponent(exponent))


dyadic_families = st.lists(
    st.builds(
        _dyadic_member,
        st.integers(min_value=0, max_value=1 << 10),
        st.integers(min_value=1, max_value=10),
    ),
    max_size=12,
).map(lambda members: IntervalFamily(tuple(members)))


def sweep_measure(family):
    """Measure of the union from the sorted endpoints of every member."""
    segments = family.segments()
    points = sorted({point for segment in segments for point in segment})
    total = Fraction(0)
    for left, right in zip(points, points[1:]):
        middle = (left + right) / 2
        if any(low < middle < high for low, high in segments):
            total += right - left
    return total


@pytest.fixture
def seeded_families():
    rng = random.Random(20240601)
    return [random_dyadic_family(rng, 20) for _ in range(1000)]


@pytest.fixture
def unit_interval():
    return IntervalFamily((Interval(Fraction(1, 2), Fraction(1, 2)),))


@pytest.fixture
def quarter_grid_2():
    """U_2 for omega = 1/4: centers j/4, radius 1/16."""
    return IntervalFamily(tuple(
        Interval(DyadicRational(j, 2), Fraction(1, 16)) for j in range(5)
    ))


@pytest.fixture
def quarter_grid_1():
    return IntervalFamily(tuple(
        Interval(DyadicRational(j, 1), Fraction(1, 8)) for j in range(3)
    ))
