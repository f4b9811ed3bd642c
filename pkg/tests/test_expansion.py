from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from expansion.grammar import (ProgramSyntaxError, format_program,
                               parse_program)
from expansion.programs import (UNBOUNDED, EventuallyPeriodic, Finite,
                                GeometricRuns, RunSchedule, digits, shift,
                                value, value_enclosure)
from expansion.runs import (Verdict, classify_membership, nearest_dyadic,
                            run_length, run_profile)
from numerics.conf import lab_overrides
from numerics.exceptions import DomainError, ExponentCapError

bit_strings = st.text(alphabet='01', max_size=12)
mixed_bits = bit_strings.filter(lambda bits: len(set(bits)) == 2)
programs = st.one_of(
    st.builds(Finite, bit_strings),
    st.builds(EventuallyPeriodic, bit_strings, bit_strings.filter(bool)),
    st.builds(
        RunSchedule, bit_strings.filter(bool),
        st.just(((3, 5, 0), (12, 4, 1))),
        st.integers(min_value=0, max_value=6),
    ),
)


class TestDigits:

    def test_one_third(self, one_third):
        result = digits(one_third, 4)
        assert result == [0, 1, 0, 1], (
            f'Check that 1/3 expands to 0.0101..., got {result}.'
        )

    def test_one_half(self, one_half):
        assert digits(one_half, 3) == [1, 0, 0], (
            'Check that 1/2 expands to 0.100 with the terminating expansion.'
        )

    def test_schedule(self, explicit_schedule):
        result = digits(explicit_schedule, 8)
        assert result == [1, 0, 1, 0, 0, 0, 0, 0], (
            'Check that the filler 10 with five zeros after position 3 '
            f'expands to 1,0,1,0,0,0,0,0, got {result}.'
        )

    def test_count_must_be_positive(self, one_third):
        with pytest.raises(DomainError):
            digits(one_third, 0)

    def test_shift(self, one_third):
        assert value(shift(one_third, 1)) == Fraction(2, 3), (
            'Check that shifting 1/3 by one digit gives 2/3.'
        )
        assert shift(one_third, 0) is one_third, (
            'Check that a zero shift returns the program itself.'
        )
        assert shift(Finite('101'), 2) == Finite('1'), (
            'Check that dropping two digits of 0.101 leaves 0.1.'
        )

    @given(programs, st.integers(min_value=0, max_value=20),
           st.integers(min_value=0, max_value=20))
    def test_shifts_compose(self, program, first, second):
        composed = shift(shift(program, first), second)
        direct = shift(program, first + second)
        assert composed == direct, (
            f'Check that shifting by {first} then {second} is one shift by '
            f'{first + second}.'
        )
        assert digits(composed, 16) == digits(program, first + second + 16)[
            first + second:]

    def test_negative_shift(self, one_third):
        with pytest.raises(DomainError):
            shift(one_third, -1)

    def test_explicit_schedule_value(self, explicit_schedule):
        low, high = value_enclosure(explicit_schedule, 40)
        assert low <= value(explicit_schedule) <= high, (
            'Check that the exact value of an explicit schedule lies in '
            'the enclosure of its first digits.'
        )

    def test_generated_run_past_cap(self):
        program = parse_program(
            'schedule:fill=10;geom(n1=30,ratio=2,k=1,digit=0)')
        with lab_overrides(EXPONENT_CAP=16):
            with pytest.raises(ExponentCapError):
                run_length(program, 30)

    @given(bit_strings, bit_strings.filter(bool))
    def test_periodic_value_matches_digits(self, prefix, period):
        program = EventuallyPeriodic(prefix, period)
        low, high = value_enclosure(program, 48)
        assert low <= value(program) <= high, (
            'Check that the value of an eventually periodic program lies in '
            'the enclosure of its first digits.'
        )


class TestRunLength:

    def test_alternating(self, one_third):
        profile = run_profile(one_third, 12)
        assert all(z == 1 for _, z in profile.entries), (
            'Check that z_n = 1 for every n when x = 1/3.'
        )
        assert profile.unbounded_from is None

    def test_dyadic_tail(self, one_half):
        assert run_length(one_half, 2) == UNBOUNDED, (
            'Check that z_n is unbounded past the last 1 of a dyadic point.'
        )

    def test_scheduled_run(self):
        program = RunSchedule('10', ((3, 8, 0),))
        assert run_length(program, 3) == 8, (
            'Check that a run of eight digits after position 3 gives z_3 = 8.'
        )

    def test_generated_runs(self, doubling_schedule):
        for position in (1, 4, 21):
            z = run_length(doubling_schedule, position)
            assert z == 1 << position, (
                f'Check that the run at n = {position} has length '
                f'2^{position}, got {z}.'
            )


class TestNearestDyadic:

    @pytest.mark.parametrize('n, point, distance', [
        (2, Fraction(1, 4), Fraction(1, 12)),
        (3, Fraction(3, 8), Fraction(1, 24)),
    ])
    def test_one_third(self, one_third, n, point, distance):
        nearest = nearest_dyadic(one_third, n)
        assert nearest.point == point, (
            f'Check that P_{n}(1/3) = {point}, got {nearest.point}.'
        )
        assert nearest.distance.exact and nearest.distance.value == distance, (
            f'Check that |1/3 - P_{n}| = {distance} exactly.'
        )

    @pytest.mark.parametrize('n', [1, 5, 30])
    def test_center_itself(self, one_half, n):
        nearest = nearest_dyadic(one_half, n)
        assert nearest.point == Fraction(1, 2), (
            'Check that 1/2 is its own nearest dyadic point.'
        )
        assert nearest.distance.value == 0

    def test_generated_schedule_kept_in_exponent_space(
            self, doubling_schedule):
        nearest = nearest_dyadic(doubling_schedule, 21)
        assert nearest.distance.lo is None, (
            'Check that a distance below the digit horizon is reported '
            'through its exponents only.'
        )
        assert nearest.distance.exponent_lo == 21 + (1 << 21)

    @given(bit_strings, mixed_bits,
           st.integers(min_value=1, max_value=24))
    def test_distance_within_half_cell(self, prefix, period, n):
        program = EventuallyPeriodic(prefix, period)
        nearest = nearest_dyadic(program, n)
        distance = nearest.distance.value
        assert distance == abs(value(program) - nearest.point.to_fraction())
        assert distance <= Fraction(1, 1 << (n + 1)), (
            'Check that P_n(x) is within half a grid cell of x.'
        )

    @given(bit_strings, mixed_bits, st.integers(min_value=1, max_value=24))
    def test_distance_sandwich(self, prefix, period, n):
        nearest = nearest_dyadic(EventuallyPeriodic(prefix, period), n)
        z = nearest.run_length
        distance = nearest.distance.value
        assert Fraction(1, 1 << (n + z + 1)) <= distance, (
            f'Check that |x - P_n(x)| >= 2^-(n + z_n + 1) with z_n = {z}.'
        )
        assert distance <= Fraction(1, 1 << (n + z)), (
            f'Check that |x - P_n(x)| <= 2^-(n + z_n) with z_n = {z}.'
        )
        assert (nearest.distance.exponent_lo,
                nearest.distance.exponent_hi) == (n + z, n + z + 1)


class TestClassifyMembership:

    def test_periodic(self, one_third):
        verdict = classify_membership(one_third)
        assert verdict.verdict is Verdict.NOT_IN_D, (
            f'Check that 1/3 is not in D, got {verdict.verdict}.'
        )

    def test_dyadic(self, one_half):
        verdict = classify_membership(one_half)
        assert verdict.verdict is Verdict.IN_D and verdict.k == 1, (
            'Check that a dyadic point lies in D(1).'
        )
        assert verdict.limsup == UNBOUNDED

    def test_doubling_schedule(self, doubling_schedule):
        verdict = classify_membership(doubling_schedule)
        assert verdict.verdict is Verdict.IN_D and verdict.k == 1, (
            'Check that runs of length 2^n_i certify membership in D(1).'
        )
        assert verdict.limsup == 1, (
            f'Check that the limsup is exactly 1, got {verdict.limsup}.'
        )

    def test_shifted_schedule(self):
        program = parse_program(
            'schedule:fill=10;geom(n1=1,ratio=2,k=4,digit=0)')
        shifted = shift(program, 3)
        for n in (3, 20):
            ratio = Fraction(run_length(shifted, n), 1 << n)
            assert ratio == 2, (
                f'Check that the shifted schedule has z_{n} / 2^{n} = 2, '
                f'got {ratio}.'
            )
        verdict = classify_membership(shifted)
        assert verdict.limsup == 2, (
            'Check that a shift by 3 multiplies the limsup 1/4 by 2^3, '
            f'got {verdict.limsup}.'
        )
        assert verdict.verdict is Verdict.IN_D and verdict.k == 1

    @given(st.integers(min_value=1, max_value=6),
           st.integers(min_value=1, max_value=8),
           st.integers(min_value=0, max_value=5))
    def test_verdict_matches_scheduled_runs(self, n1, k, offset):
        runs = GeometricRuns(n1, 2, k, 0)
        program = shift(RunSchedule('10', runs), offset)
        verdict = classify_membership(program)
        assert verdict.limsup == Fraction(1 << offset, k)
        assert verdict.limsup >= Fraction(1, verdict.k), (
            f'Check that x lies in D({verdict.k}).'
        )
        assert verdict.k == 1 or verdict.limsup < Fraction(
            1, verdict.k - 1), (
            f'Check that D({verdict.k}) is the smallest level holding x.'
        )
        for run in runs:
            if run.position > 40:
                break
            if run.position < offset:
                continue
            n = run.position - offset
            ratio = Fraction(run_length(program, n), 1 << n)
            assert verdict.limsup <= ratio < verdict.limsup + Fraction(
                1 << offset, 1 << run.position), (
                f'Check that z_{n} / 2^{n} of the scheduled run approaches '
                f'the limsup from above, got {ratio}.'
            )

    def test_linear_runs(self, linear_schedule):
        verdict = classify_membership(linear_schedule)
        assert verdict.verdict is Verdict.NOT_IN_D
        assert verdict.limsup == 0

    def test_explicit_runs(self, explicit_schedule):
        verdict = classify_membership(explicit_schedule)
        assert verdict.verdict is Verdict.UNKNOWN, (
            'Check that explicit runs say nothing past their last run.'
        )
        assert verdict.horizon == 9


class TestGrammar:

    @pytest.mark.parametrize('text', [
        'finite:101',
        'periodic:1;01',
        'schedule:fill=10;runs=[(3,5,0),(12,4,1)]',
        'schedule:fill=10;geom(n1=1,ratio=2,k=1,digit=0)',
        'schedule:fill=01;linear(n1=2,ratio=3,slope=1/2,digit=1);offset=4',
    ])
    def test_canonical_form(self, text):
        assert format_program(parse_program(text)) == text, (
            f'Check that `{text}` is kept in its canonical form.'
        )

    def test_whitespace_ignored(self):
        assert parse_program(' periodic: ; 01 ') == EventuallyPeriodic(
            '', '01')

    @pytest.mark.parametrize('text', [
        'decimal:0.5',
        'periodic:01',
        'schedule:fill=10;runs=[(3,5)]',
        'schedule:fill=10;geom(n1=1,ratio=2)',
        'schedule:fill=10;runs=[(3,5,0),(6,2,0)]',
    ])
    def test_rejected(self, text):
        with pytest.raises(DomainError):
            parse_program(text)

    def test_syntax_error_is_domain_error(self):
        assert issubclass(ProgramSyntaxError, DomainError)
