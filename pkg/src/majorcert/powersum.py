"""Power sums, the ratio sequences R_n(r; a) and P_n(r), and their limits."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Iterable, Optional

from .errors import DomainError, UsageError
from .scalar import Scalar, as_rational, format_rational, parse_rational, pow_scalar

__all__ = [
    "NATURALS",
    "Direction",
    "PowerSumQuery",
    "SequenceKind",
    "SequenceSpec",
    "P",
    "P_limit",
    "mean_power",
    "power_sum",
    "ratio_R",
    "second_difference",
]


class SequenceKind(enum.Enum):
    NATURALS = "naturals"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class SequenceSpec:
    """A positive nondecreasing sequence ``a_1, a_2, ...``.

    ``NATURALS`` is the infinite sequence ``a_i = i``; explicit sequences are
    finite lists of positive rationals.
    """

    kind: SequenceKind
    terms: tuple = ()

    def __post_init__(self):
        if self.kind is SequenceKind.NATURALS:
            if self.terms:
                raise UsageError("the naturals sequence takes no explicit terms")
            return
        terms = tuple(as_rational(t) for t in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise UsageError("an explicit sequence needs at least one term")
        for i, t in enumerate(terms, start=1):
            if t <= 0:
                raise DomainError(f"sequence term a_{i} = {t} is not positive")
        for i in range(1, len(terms)):
            if terms[i] < terms[i - 1]:
                raise DomainError(f"sequence decreases at a_{i + 1} < a_{i}")

    @classmethod
    def naturals(cls) -> "SequenceSpec":
        return cls(SequenceKind.NATURALS)

    @classmethod
    def explicit(cls, terms: Iterable) -> "SequenceSpec":
        return cls(SequenceKind.EXPLICIT, tuple(terms))

    @property
    def length(self) -> Optional[int]:
        return None if self.kind is SequenceKind.NATURALS else len(self.terms)

    def require(self, count: int) -> None:
        if count < 1:
            raise UsageError("index counts start at 1")
        if self.length is not None and count > self.length:
            raise UsageError(
                f"sequence provides {self.length} terms but {count} are required"
            )

    def term(self, i: int) -> Fraction:
        """The 1-based term ``a_i``."""
        self.require(i)
        if self.kind is SequenceKind.NATURALS:
            return Fraction(i)
        return self.terms[i - 1]

    def prefix(self, count: int) -> list:
        self.require(count)
        return [self.term(i) for i in range(1, count + 1)]

    def is_strictly_increasing(self, count: int) -> bool:
        seq = self.prefix(count)
        return all(a < b for a, b in zip(seq, seq[1:]))

    def scaled(self, factor, count: int) -> "SequenceSpec":
        """Explicit copy of the first ``count`` terms multiplied by ``factor``."""
        c = as_rational(factor)
        if c <= 0:
            raise DomainError("scale factor must be positive")
        return SequenceSpec.explicit(c * t for t in self.prefix(count))

    def to_json(self) -> dict:
        if self.kind is SequenceKind.NATURALS:
            return {"kind": "naturals"}
        return {"kind": "explicit", "terms": [format_rational(t) for t in self.terms]}

    @classmethod
    def from_json(cls, doc) -> "SequenceSpec":
        if not isinstance(doc, dict) or "kind" not in doc:
            raise UsageError("sequence document must be an object with a 'kind' field")
        kind = doc["kind"]
        if kind == "naturals":
            return cls.naturals()
        if kind == "explicit":
            terms = doc.get("terms")
            if not isinstance(terms, list):
                raise UsageError("explicit sequences need a 'terms' array")
            return cls.explicit(parse_rational(str(t)) for t in terms)
        raise UsageError(f"unknown sequence kind {kind!r}")


NATURALS = SequenceSpec.naturals()


@dataclass(frozen=True)
class PowerSumQuery:
    seq: SequenceSpec
    n: int
    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", as_rational(self.r))
        if not isinstance(self.n, int) or self.n < 1:
            raise UsageError(f"n must be a positive integer, got {self.n!r}")
        self.seq.require(self.n)


@lru_cache(maxsize=65536)
def _power_sum(seq: SequenceSpec, n: int, r: Fraction) -> Scalar:
    return Scalar.sum(pow_scalar(seq.term(i), r) for i in range(1, n + 1))


def power_sum(query: PowerSumQuery) -> Scalar:
    """``sum_{i=1}^n a_i ** r``; exact for integer ``r``."""
    return _power_sum(query.seq, query.n, query.r)


def _sum(seq: SequenceSpec, n: int, r) -> Scalar:
    return power_sum(PowerSumQuery(seq, n, r))


@lru_cache(maxsize=65536)
def _ratio(seq: SequenceSpec, n: int, r: Fraction) -> Scalar:
    if r == 0:
        first = prod(seq.prefix(n))
        second = first * seq.term(n + 1)
        return pow_scalar(first, Fraction(1, n)) / pow_scalar(second, Fraction(1, n + 1))
    inner = (_sum(seq, n, r) / n) / (_sum(seq, n + 1, r) / (n + 1))
    return inner ** (1 / r)


def ratio_R(seq: SequenceSpec, n: int, r) -> Scalar:
    """``R_n(r; a)``: the ratio of the n-th and (n+1)-th power means of order r.

    At ``r = 0`` this is the ratio of geometric means of the first ``n`` and
    ``n + 1`` terms.
    """
    if not isinstance(n, int) or n < 1:
        raise UsageError(f"n must be a positive integer, got {n!r}")
    seq.require(n + 1)
    return _ratio(seq, n, as_rational(r))


def P(n: int, r) -> Scalar:
    """``P_n(r) = R_n(r; (1, 2, 3, ...))``."""
    return ratio_R(NATURALS, n, r)


class Direction(enum.Enum):
    PLUS_INFINITY = "+inf"
    MINUS_INFINITY = "-inf"


def P_limit(n: int, direction: Direction) -> Fraction:
    """Limits of ``P_n(r)`` as ``r -> +inf`` (``n/(n+1)``) and ``r -> -inf`` (1)."""
    if not isinstance(n, int) or n < 1:
        raise UsageError(f"n must be a positive integer, got {n!r}")
    direction = Direction(direction)
    if direction is Direction.PLUS_INFINITY:
        return Fraction(n, n + 1)
    return Fraction(1)


def mean_power(m: int, r) -> Scalar:
    """``c_m = (1/m) sum_{i=1}^m i**r``."""
    return _sum(NATURALS, m, r) / m


def second_difference(r, n: int) -> Scalar:
    """``c_{n+2} - 2 c_{n+1} + c_n`` for the power means ``c_m`` of the naturals."""
    if not isinstance(n, int) or n < 1:
        raise UsageError(f"n must be a positive integer, got {n!r}")
    r = as_rational(r)
    return mean_power(n + 2, r) - 2 * mean_power(n + 1, r) + mean_power(n, r)
