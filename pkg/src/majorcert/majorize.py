"""Majorization and power majorization of positive tuples.

Besides the order tests this module builds the weight tuples used to
compare consecutive power means: the normalized ratio pairs, the two
families of index-shifted weights, and the block tuples whose power sums
reduce to ``P_n``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Optional, Sequence

from .errors import DomainError, HypothesisError, InconclusiveError, UsageError
from .powersum import SequenceSpec
from .scalar import (
    DEFAULT_POLICY,
    ComparisonVerdict,
    Order,
    PrecisionPolicy,
    Scalar,
    as_rational,
    as_scalar,
    compare,
    format_rational,
    parse_rational,
    pow_scalar,
)

__all__ = [
    "CONDITION_NOTES",
    "Condition",
    "ConditionReport",
    "Family",
    "HingeWitness",
    "MajorizationKind",
    "MajorizationVerdict",
    "PowerCheck",
    "PowerMajorizationReport",
    "PowerOverall",
    "WeightFamilies",
    "WeightTuple",
    "build_block_tuples",
    "build_weight_families",
    "check_condition",
    "convex_witness",
    "majorizes",
    "normalize_ratio_pair",
    "power_majorizes",
]


# ---------------------------------------------------------------------------
# tuples
# ---------------------------------------------------------------------------

class WeightTuple:
    """An immutable tuple of positive scalars with a known total.

    ``total`` may be supplied when it is known by construction (normalized
    tuples sum to exactly 1 even when the entries are irrational); it is then
    checked against the enclosure of the actual sum.
    """

    __slots__ = ("entries", "total", "_power_sums")

    def __init__(self, entries: Iterable, total=None, policy: PrecisionPolicy = DEFAULT_POLICY):
        entries = tuple(as_scalar(e) for e in entries)
        if not entries:
            raise UsageError("a weight tuple needs at least one entry")
        seen = set()
        for i, e in enumerate(entries, start=1):
            if id(e) in seen:
                continue
            seen.add(id(e))
            if e.is_exact:
                if e.exact <= 0:
                    raise DomainError(f"entry {i} is not positive: {e.exact}")
            elif compare(e, 0, policy).kind is not Order.CERTAINLY_GREATER:
                raise DomainError(f"entry {i} is not certifiably positive")
        computed = Scalar.sum(_group_terms(entries, lambda s: s))
        if total is None:
            total = computed
        else:
            total = as_scalar(total)
            if total.is_exact and computed.is_exact:
                consistent = total.exact == computed.exact
            else:
                bits = policy.start_bits
                et, ec = total.enclose(bits), computed.enclose(bits)
                consistent = et.lo <= ec.hi and ec.lo <= et.hi
            if not consistent:
                raise DomainError("declared total disagrees with the sum of entries")
        self.entries = entries
        self.total = total
        self._power_sums: dict = {}

    @classmethod
    def of(cls, values: Iterable) -> "WeightTuple":
        return cls(as_rational(v) for v in values)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def is_exact(self) -> bool:
        return all(e.is_exact for e in self.entries)

    def sorted_desc(self, policy: PrecisionPolicy = DEFAULT_POLICY) -> list:
        """Entries in certified nonincreasing order."""
        start = policy.start_bits

        def key(s):
            return s.exact if s.is_exact else s.enclose(start).midpoint()

        ordered = sorted(self.entries, key=key, reverse=True)
        if _is_certified_desc(ordered, policy):
            return ordered

        def cmp(a, b):
            v = compare(a, b, policy)
            if not v.conclusive:
                raise InconclusiveError("cannot order tuple entries at maximum precision", verdict=v)
            return -(v.sign or 0)

        ordered = sorted(self.entries, key=cmp_to_key(cmp))
        return ordered

    def power_sum(self, p) -> Scalar:
        """``sum_i entry_i ** p``."""
        p = as_rational(p)
        cached = self._power_sums.get(p)
        if cached is None:
            cached = self._power_sums[p] = Scalar.sum(_group_terms(self.entries, lambda s: s ** p))
        return cached

    def to_json(self, bits: int = DEFAULT_POLICY.start_bits) -> list:
        return [e.to_json(bits) for e in self.entries]

    @classmethod
    def from_json(cls, doc) -> "WeightTuple":
        if not isinstance(doc, list):
            raise UsageError("a weight tuple is a JSON array of rational strings")
        return cls(parse_rational(str(v)) for v in doc)

    def __repr__(self):
        return f"WeightTuple({list(self.entries)!r})"


def _group_terms(entries, fn):
    """``fn(e)`` once per distinct entry object, scaled by its multiplicity."""
    counts: dict = {}
    objs: dict = {}
    for e in entries:
        counts[id(e)] = counts.get(id(e), 0) + 1
        objs[id(e)] = e
    out = []
    for key, count in counts.items():
        v = fn(objs[key])
        out.append(v if count == 1 else v * count)
    return out


def _is_certified_desc(ordered, policy) -> bool:
    for a, b in zip(ordered, ordered[1:]):
        v = compare(a, b, policy)
        if v.kind is Order.CERTAINLY_LESS:
            return False
        if not v.conclusive:
            raise InconclusiveError("cannot order tuple entries at maximum precision", verdict=v)
    return True


# ---------------------------------------------------------------------------
# majorization
# ---------------------------------------------------------------------------

class MajorizationKind(enum.Enum):
    HOLDS = "Holds"
    FAILS_AT_PREFIX = "FailsAtPrefix"
    TOTALS_DIFFER = "TotalsDiffer"


@dataclass(frozen=True)
class MajorizationVerdict:
    kind: MajorizationKind
    prefix_index: Optional[int] = None
    lhs_prefix: Optional[Scalar] = None
    rhs_prefix: Optional[Scalar] = None
    total_gap: Optional[Scalar] = None
    prefix_verdicts: tuple = ()

    @property
    def holds(self) -> bool:
        return self.kind is MajorizationKind.HOLDS

    def to_json(self, bits: int = DEFAULT_POLICY.start_bits) -> dict:
        out = {"kind": self.kind.value}
        if self.prefix_index is not None:
            out["prefix_index"] = self.prefix_index
            out["lhs_prefix"] = self.lhs_prefix.to_json(bits)
            out["rhs_prefix"] = self.rhs_prefix.to_json(bits)
        if self.total_gap is not None:
            out["total_gap"] = self.total_gap.to_json(bits)
        return out


def majorizes(x: WeightTuple, y: WeightTuple, policy: PrecisionPolicy = DEFAULT_POLICY) -> MajorizationVerdict:
    """Test ``x <=_maj y`` by comparing descending prefix sums.

    Returns ``FailsAtPrefix`` with the smallest failing prefix, or raises
    :class:`InconclusiveError` when a prefix cannot be decided.
    """
    if len(x) != len(y):
        raise UsageError(f"tuples have different lengths {len(x)} and {len(y)}")
    tv = compare(x.total, y.total, policy)
    if not tv.conclusive:
        raise InconclusiveError("cannot certify equality of totals", index=len(x), verdict=tv)
    if tv.kind is not Order.EXACTLY_EQUAL:
        return MajorizationVerdict(MajorizationKind.TOTALS_DIFFER, total_gap=x.total - y.total)
    xs, ys = x.sorted_desc(policy), y.sorted_desc(policy)
    px: Scalar = Scalar.of(0)
    py: Scalar = Scalar.of(0)
    verdicts = []
    for k in range(1, len(x)):
        px = px + xs[k - 1]
        py = py + ys[k - 1]
        v = compare(px, py, policy)
        verdicts.append(v)
        if v.kind is Order.CERTAINLY_GREATER:
            return MajorizationVerdict(
                MajorizationKind.FAILS_AT_PREFIX,
                prefix_index=k,
                lhs_prefix=px,
                rhs_prefix=py,
                prefix_verdicts=tuple(verdicts),
            )
        if not v.conclusive:
            raise InconclusiveError(f"prefix {k} is undecided at maximum precision", index=k, verdict=v)
    return MajorizationVerdict(MajorizationKind.HOLDS, prefix_verdicts=tuple(verdicts))


@dataclass(frozen=True)
class HingeWitness:
    """``f(u) = max(u - threshold, 0)`` with ``sum f(x) > sum f(y)``."""

    threshold: Scalar
    lhs_sum: Scalar
    rhs_sum: Scalar
    verdict: ComparisonVerdict

    def to_json(self, bits: int = DEFAULT_POLICY.start_bits) -> dict:
        return {
            "function": "max(u - t, 0)",
            "threshold": self.threshold.to_json(bits),
            "lhs_sum": self.lhs_sum.to_json(bits),
            "rhs_sum": self.rhs_sum.to_json(bits),
            "verdict": self.verdict.to_json(),
        }


def hinge_sum(t: WeightTuple, threshold: Scalar, policy: PrecisionPolicy = DEFAULT_POLICY) -> Scalar:
    """Certified ``sum_i max(t_i - threshold, 0)``."""

    def part(e):
        v = compare(e, threshold, policy)
        if not v.conclusive:
            raise InconclusiveError("hinge position is undecided", verdict=v)
        return e - threshold if v.kind is Order.CERTAINLY_GREATER else Scalar.of(0)

    return Scalar.sum(_group_terms(t.entries, part))


def convex_witness(
    x: WeightTuple,
    y: WeightTuple,
    verdict: MajorizationVerdict,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> Optional[HingeWitness]:
    """A hinge function violating the convex-sum criterion, when prefix ``k`` fails.

    The threshold is the k-th largest entry of ``y``; every entry of ``y``
    above it contributes to a sum that the k largest entries of ``x`` exceed.
    """
    if verdict.kind is not MajorizationKind.FAILS_AT_PREFIX:
        return None
    threshold = y.sorted_desc(policy)[verdict.prefix_index - 1]
    lhs = hinge_sum(x, threshold, policy)
    rhs = hinge_sum(y, threshold, policy)
    v = compare(lhs, rhs, policy)
    if v.kind is not Order.CERTAINLY_GREATER:
        raise InconclusiveError("hinge witness did not certify a violation", verdict=v)
    return HingeWitness(threshold, lhs, rhs, v)


# ---------------------------------------------------------------------------
# power majorization
# ---------------------------------------------------------------------------

def required_relation(p) -> str:
    """Direction demanded of ``sum x**p`` against ``sum y**p``."""
    p = as_rational(p)
    if p == 1:
        return "=="
    return ">=" if 0 <= p <= 1 else "<="


@dataclass(frozen=True)
class PowerCheck:
    p: Fraction
    required: str
    lhs: Scalar
    rhs: Scalar
    verdict: ComparisonVerdict

    @property
    def satisfied(self) -> Optional[bool]:
        return self.verdict.satisfies(self.required)

    def to_json(self, bits: int = DEFAULT_POLICY.start_bits) -> dict:
        return {
            "p": format_rational(self.p),
            "required": self.required,
            "lhs": self.lhs.to_json(bits),
            "rhs": self.rhs.to_json(bits),
            "verdict": self.verdict.to_json(),
        }


class PowerOverall(enum.Enum):
    CONSISTENT = "ConsistentWithPowerMajorization"
    VIOLATED = "ViolatedAt"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class PowerMajorizationReport:
    """Grid evidence for ``x <=_p y``; consistency on a grid is not a proof."""

    checks: tuple
    overall: PowerOverall
    violated_at: Optional[Fraction] = None

    @property
    def grid(self) -> list:
        return [c.p for c in self.checks]

    def to_json(self, bits: int = DEFAULT_POLICY.start_bits) -> dict:
        out = {"overall": self.overall.value, "checks": [c.to_json(bits) for c in self.checks]}
        if self.violated_at is not None:
            out["violated_at"] = format_rational(self.violated_at)
        return out


def power_majorizes(
    x: WeightTuple,
    y: WeightTuple,
    grid: Sequence,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> PowerMajorizationReport:
    """Certify the power-majorization direction at each exponent of ``grid``.

    ``p = 0`` holds trivially for equal lengths.  Equal totals (``p = 1``) are
    always checked; unequal totals report a violation at 1.
    """
    if len(x) != len(y):
        raise UsageError(f"tuples have different lengths {len(x)} and {len(y)}")
    grid = [as_rational(p) for p in grid]
    if not grid:
        raise UsageError("the exponent grid is empty")
    total_check = PowerCheck(Fraction(1), "==", x.total, y.total, compare(x.total, y.total, policy))
    checks = []
    for p in grid:
        if p == 1:
            checks.append(total_check)
            continue
        if p == 0:
            n = Scalar.of(len(x))
            checks.append(PowerCheck(p, ">=", n, n, ComparisonVerdict(Order.EXACTLY_EQUAL)))
            continue
        lhs, rhs = x.power_sum(p), y.power_sum(p)
        checks.append(PowerCheck(p, required_relation(p), lhs, rhs, compare(lhs, rhs, policy)))
    if total_check.satisfied is False:
        return PowerMajorizationReport(tuple(checks), PowerOverall.VIOLATED, Fraction(1))
    for c in checks:
        if c.satisfied is False:
            return PowerMajorizationReport(tuple(checks), PowerOverall.VIOLATED, c.p)
    if total_check.satisfied is None or any(c.satisfied is None for c in checks):
        return PowerMajorizationReport(tuple(checks), PowerOverall.INCONCLUSIVE)
    return PowerMajorizationReport(tuple(checks), PowerOverall.CONSISTENT)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

class Condition(enum.Enum):
    """Sufficient conditions on the sequence for the weight-family majorization.

    ``POSITIVE`` governs the exponent ``r > 0`` family built from the top index
    down; ``NEGATIVE`` governs the ``-r`` family built from the bottom up.
    """

    POSITIVE = "positive"
    NEGATIVE = "negative"


CONDITION_NOTES = {
    Condition.POSITIVE: None,
    Condition.NEGATIVE: (
        "printed form divides by a_{i+2} without the exponent r; "
        "evaluated as a_{i+2}^r"
    ),
}


@dataclass(frozen=True)
class IndexCheck:
    index: int
    lhs: Scalar
    rhs: Scalar
    verdict: ComparisonVerdict

    @property
    def holds(self) -> Optional[bool]:
        return self.verdict.satisfies("<=")

    def to_json(self, bits: int = DEFAULT_POLICY.start_bits) -> dict:
        return {
            "index": self.index,
            "lhs": self.lhs.to_json(bits),
            "rhs": self.rhs.to_json(bits),
            "verdict": self.verdict.to_json(),
        }


@dataclass(frozen=True)
class ConditionReport:
    condition: Condition
    r: Fraction
    n: int
    checks: tuple
    note: Optional[str] = None

    @property
    def verdicts(self) -> list:
        return [c.verdict for c in self.checks]

    @property
    def holds(self) -> Optional[bool]:
        states = [c.holds for c in self.checks]
        if any(s is False for s in states):
            return False
        if any(s is None for s in states):
            return None
        return True

    @property
    def first_failure(self) -> Optional[int]:
        for c in self.checks:
            if c.holds is False:
                return c.index
        return None

    def to_json(self, bits: int = DEFAULT_POLICY.start_bits) -> dict:
        out = {
            "condition": self.condition.value,
            "r": format_rational(self.r),
            "n": self.n,
            "holds": self.holds,
            "checks": [c.to_json(bits) for c in self.checks],
        }
        if self.note:
            out["note"] = self.note
        return out


def _validate_family_args(seq: SequenceSpec, r, n: int) -> Fraction:
    r = as_rational(r)
    if r <= 0:
        raise DomainError("the condition exponent r must be positive")
    if not isinstance(n, int) or n < 2:
        raise UsageError("n must be an integer >= 2")
    seq.require(n + 1)
    terms = seq.prefix(n + 1)
    if any(b < a for a, b in zip(terms, terms[1:])):
        raise DomainError("sequence is not nondecreasing")
    return r


def check_condition(
    seq: SequenceSpec,
    r,
    n: int,
    condition: Condition,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> ConditionReport:
    """Certify, for ``1 <= i <= n-1``, the inequality ``lhs_i <= rhs_i`` of ``condition``.

    POSITIVE:  (n-i) a_{n+1-i}^r / a_{n-i}^r + 1  <=  (n-i+1) a_{n+2-i}^r / a_{n+1-i}^r
    NEGATIVE:  (i+1) a_{i+1}^r / a_{i+2}^r        <=  1 + i a_i^r / a_{i+1}^r
    """
    r = _validate_family_args(seq, r, n)
    condition = Condition(condition)

    def a(i):
        return pow_scalar(seq.term(i), r)

    checks = []
    for i in range(1, n):
        if condition is Condition.POSITIVE:
            lhs = (n - i) * (a(n + 1 - i) / a(n - i)) + 1
            rhs = (n - i + 1) * (a(n + 2 - i) / a(n + 1 - i))
        else:
            lhs = (i + 1) * (a(i + 1) / a(i + 2))
            rhs = 1 + i * (a(i) / a(i + 1))
        checks.append(IndexCheck(i, lhs, rhs, compare(lhs, rhs, policy)))
    return ConditionReport(condition, r, n, tuple(checks), CONDITION_NOTES[condition])


def normalize_ratio_pair(alpha: Sequence, beta: Sequence, policy: PrecisionPolicy = DEFAULT_POLICY):
    """Normalize ``alpha`` and ``beta`` to unit total after checking the ratio hypotheses.

    Requires every ``alpha_i > 0``, ``beta`` positive and nonincreasing, and
    ``beta_i / alpha_i`` nondecreasing.  Under these hypotheses the returned
    ``(a, b)`` satisfy ``b <=_maj a``.
    """
    alpha = [as_scalar(v) for v in alpha]
    beta = [as_scalar(v) for v in beta]
    if len(alpha) != len(beta) or not alpha:
        raise UsageError("alpha and beta must be nonempty and of equal length")
    for i, (al, be) in enumerate(zip(alpha, beta), start=1):
        for name, v in (("alpha", al), ("beta", be)):
            if compare(v, 0, policy).kind is not Order.CERTAINLY_GREATER:
                raise HypothesisError(f"{name}_{i} is not certifiably positive", index=i)
    for i in range(1, len(beta)):
        v = compare(beta[i - 1], beta[i], policy)
        if v.satisfies(">=") is not True:
            raise HypothesisError(f"beta is not nonincreasing at index {i}", index=i)
        v = compare(beta[i - 1] / alpha[i - 1], beta[i] / alpha[i], policy)
        if v.satisfies("<=") is not True:
            raise HypothesisError(f"beta/alpha is not nondecreasing at index {i}", index=i)
    return _normalized(alpha, policy), _normalized(beta, policy)


def _normalized(values: list, policy: PrecisionPolicy) -> WeightTuple:
    total = Scalar.sum(values)
    return WeightTuple((v / total for v in values), total=Scalar.of(1), policy=policy)


class Family(enum.Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class WeightFamilies:
    """Weights and base values of one family together with their normalizations.

    FIRST:   weights_i = (n+1-i) a_{n+2-i}^r + i a_{n+1-i}^r,  base_i = a_{n+1-i}^r
    SECOND:  weights_i = (n+1-i) a_i^{-r} + i a_{i+1}^{-r},     base_i = a_i^{-r}

    When ``condition`` holds, ``normalized_base <=_maj normalized_weights``.
    """

    family: Family
    r: Fraction
    n: int
    weights: tuple
    base: tuple
    normalized_weights: WeightTuple
    normalized_base: WeightTuple
    condition: ConditionReport


def build_weight_families(
    seq: SequenceSpec,
    r,
    n: int,
    family: Family,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> WeightFamilies:
    r = _validate_family_args(seq, r, n)
    family = Family(family)

    if family is Family.FIRST:
        def a(i):
            return pow_scalar(seq.term(i), r)

        weights = [(n + 1 - i) * a(n + 2 - i) + i * a(n + 1 - i) for i in range(1, n + 1)]
        base = [a(n + 1 - i) for i in range(1, n + 1)]
        condition = Condition.POSITIVE
    else:
        def a(i):
            return pow_scalar(seq.term(i), -r)

        weights = [(n + 1 - i) * a(i) + i * a(i + 1) for i in range(1, n + 1)]
        base = [a(i) for i in range(1, n + 1)]
        condition = Condition.NEGATIVE
    report = check_condition(seq, r, n, condition, policy)
    return WeightFamilies(
        family,
        r,
        n,
        tuple(weights),
        tuple(base),
        _normalized(weights, policy),
        _normalized(base, policy),
        report,
    )


def build_block_tuples(seq: SequenceSpec, r, n: int, policy: PrecisionPolicy = DEFAULT_POLICY):
    """The two ``n(n+1)``-tuples comparing power means of ``n`` and ``n+1`` terms.

    ``x`` repeats each ``a_i^r / ((n+1) S_n)`` (i <= n) ``n+1`` times and
    ``y`` repeats each ``a_i^r / (n S_{n+1})`` (i <= n+1) ``n`` times, where
    ``S_m = sum_{i<=m} a_i^r``.  Entries are listed from the highest index
    down; both totals are exactly 1.
    """
    r = as_rational(r)
    if r == 0:
        raise UsageError("the block tuples are undefined for r = 0")
    if not isinstance(n, int) or n < 1:
        raise UsageError("n must be a positive integer")
    seq.require(n + 1)
    powers = [pow_scalar(seq.term(i), r) for i in range(1, n + 2)]
    s_n = Scalar.sum(powers[:n])
    s_n1 = Scalar.sum(powers)
    x_den = (n + 1) * s_n
    y_den = n * s_n1
    x_entries = []
    for i in range(n, 0, -1):
        e = powers[i - 1] / x_den
        x_entries.extend([e] * (n + 1))
    y_entries = []
    for i in range(n + 1, 0, -1):
        e = powers[i - 1] / y_den
        y_entries.extend([e] * n)
    one = Scalar.of(1)
    return (
        WeightTuple(x_entries, total=one, policy=policy),
        WeightTuple(y_entries, total=one, policy=policy),
    )
