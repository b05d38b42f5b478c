from fractions import Fraction

import mpmath
import pytest

from majorcert.errors import DomainError, UsageError
from majorcert.powersum import (
    NATURALS,
    Direction,
    P,
    P_limit,
    PowerSumQuery,
    SequenceSpec,
    power_sum,
    ratio_R,
    second_difference,
)
from majorcert.scalar import Order, PrecisionPolicy, compare

import oracle
from oracle import inside

F = Fraction


def S(n, r, seq=NATURALS):
    return power_sum(PowerSumQuery(seq, n, r))


def test_power_sum_small_values():
    assert S(3, 1).exact == 6
    assert S(2, 3).exact == 9
    assert inside(S(2, F(1, 2)).enclose(64), 1 + mpmath.sqrt(2))


@pytest.mark.parametrize("n", range(1, 51))
def test_sum_of_cubes_is_square_of_sum(n):
    assert S(n, 3).exact == S(n, 1).exact ** 2


def test_sequence_validation():
    with pytest.raises(DomainError):
        SequenceSpec.explicit([1, 0, 2])
    with pytest.raises(DomainError):
        SequenceSpec.explicit([3, 2])
    with pytest.raises(UsageError):
        SequenceSpec.explicit([])
    seq = SequenceSpec.explicit([1, 2, 3])
    with pytest.raises(UsageError):
        ratio_R(seq, 3, 1)  # needs a_4
    assert ratio_R(seq, 2, 1).exact == P(2, 1).exact


def test_sequence_json_round_trip():
    seq = SequenceSpec.explicit([F(1, 2), 1, F(7, 3)])
    doc = seq.to_json()
    assert doc == {"kind": "explicit", "terms": ["1/2", "1/1", "7/3"]}
    assert SequenceSpec.from_json(doc) == seq
    assert SequenceSpec.from_json({"kind": "naturals"}) == NATURALS
    with pytest.raises(UsageError):
        SequenceSpec.from_json({"kind": "primes"})


def test_constant_sequence_ratio_is_one():
    seq = SequenceSpec.explicit([F(5, 3)] * 6)
    for r in (F(-2), F(0), F(1, 2), F(3)):
        v = compare(ratio_R(seq, 4, r), 1, PrecisionPolicy(64, 256))
        assert v.kind in (Order.EXACTLY_EQUAL, Order.TIE_WITHIN_TOLERANCE)
        if r.denominator == 1 and r != 0:
            assert v.kind is Order.EXACTLY_EQUAL
        assert inside(ratio_R(seq, 4, r).enclose(128), mpmath.mpf(1))


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_P_at_one_is_bennett_value(n):
    assert P(n, 1).exact == F(n + 1, n + 2)


def test_P_known_values():
    assert inside(P(2, 3).enclose(64), mpmath.cbrt(mpmath.mpf(3) / 8))
    assert P(2, -1).exact == F(22, 27)
    # geometric-mean form: 2^(1/2) / 6^(1/3)
    root = mpmath.sqrt(2) / mpmath.cbrt(6)
    assert inside(P(2, 0).enclose(64), root)
    assert abs(root - mpmath.mpf("0.778272")) < 1e-6


@pytest.mark.parametrize("n", [1, 3, 7, 20])
@pytest.mark.parametrize("r", [F(-7, 2), F(-1, 3), F(0), F(1, 10), F(5, 4), F(9)])
def test_P_matches_oracle(n, r):
    assert inside(P(n, r).enclose(128), oracle.P(n, r))


def test_P_limits():
    assert P_limit(1, Direction.PLUS_INFINITY) == F(1, 2)
    assert P_limit(5, "+inf") == F(5, 6)
    assert P_limit(7, Direction.MINUS_INFINITY) == 1
    with pytest.raises(UsageError):
        P_limit(0, "+inf")


@pytest.mark.parametrize("n", [3, 6])
@pytest.mark.parametrize("c", [F(2), F(1, 3), F(7, 5)])
@pytest.mark.parametrize("r", [F(-2), F(1, 2), F(3)])
def test_ratio_is_scale_invariant(n, c, r):
    scaled = SequenceSpec.explicit(c * i for i in range(1, n + 2))
    natural = P(n, r)
    copy = ratio_R(scaled, n, r)
    for threshold in (F(n, n + 1), F(n + 1, n + 2), F(99, 100)):
        assert compare(copy, threshold).kind is compare(natural, threshold).kind


def test_second_difference_values():
    assert second_difference(2, 1).exact == F(2, 3)
    assert all(second_difference(1, n).exact == 0 for n in range(1, 20))
    assert inside(second_difference(F(1, 2), 1).enclose(64), oracle.second_difference(F(1, 2), 1))
    assert abs(oracle.second_difference(F(1, 2), 1) + mpmath.mpf("0.0321")) < 1e-4


@pytest.mark.parametrize("n", range(1, 51, 7))
def test_second_difference_signs(n):
    for r in (2, 3, -1, -2):
        assert compare(second_difference(r, n), 0).satisfies(">=")
    for r in (F(1, 4), F(1, 2), F(3, 4)):
        assert compare(second_difference(r, n), 0).satisfies("<=")


@pytest.mark.parametrize("n", [1, 10, 50])
def test_sandwich_and_band(n):
    p0 = P(n, 0)
    for r in (F(1, 10), F(1, 2), 2, 5):
        assert compare(F(n, n + 1), P(n, r)).kind is Order.CERTAINLY_LESS
        assert compare(P(n, r), p0).kind is Order.CERTAINLY_LESS
    for r in (F(-1, 2), -1, -5):
        assert compare(p0, P(n, r)).satisfies("<=")
        assert compare(P(n, r), 1).satisfies("<=")


def test_query_validation():
    with pytest.raises(UsageError):
        PowerSumQuery(NATURALS, 0, 1)
    with pytest.raises(UsageError):
        PowerSumQuery(NATURALS, 2, 0.5)
