"""Registry of power-sum inequalities and a certified evaluator for them.

Each registry entry knows how to evaluate its two sides for a parameter
record, the region where the stated direction is claimed, and (for most
entries) a region where the direction is reversed.  Parameters outside both
regions produce ``NoClaim``.  Where both regions apply at once (a boundary
such as ``r = 1``) the two sides must be equal.
"""
from __future__ import annotations

import csv
import enum
import io
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import DomainError, UsageError
from .powersum import NATURALS, P, PowerSumQuery, power_sum, second_difference
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
    log_scalar,
    pow_scalar,
)

__all__ = [
    "REGISTRY",
    "CheckResult",
    "ClaimStatus",
    "Inequality",
    "LegResult",
    "RatioPrincipleReport",
    "evaluate_case",
    "hadamard_power",
    "ratio_principle_check",
    "results_to_csv",
    "summarize",
    "sweep",
]

STEP_DIRECTION_NOTE = (
    "the certified direction is the displayed step inequality between "
    "consecutive terms (term_n >= term_{n+1} in the claimed region); the "
    "accompanying prose names the opposite monotonicity"
)


class ClaimStatus(enum.Enum):
    CONFIRMS = "ConfirmsPaper"
    CONTRADICTS = "ContradictsPaper"
    NO_CLAIM = "NoClaim"
    INCONCLUSIVE = "Inconclusive"


_FLIP = {">=": "<=", "<=": ">=", ">": "<", "<": ">", "==": "=="}


def _s(n: int, r) -> Scalar:
    return power_sum(PowerSumQuery(NATURALS, n, r))


def _pw(base, r) -> Scalar:
    return pow_scalar(base, r)


class _Undefined(Exception):
    """A side of the inequality has no value at these parameters."""


class _Diagnostic(Exception):
    """Evaluation is well defined but cannot be certified; carries a message."""


# ---------------------------------------------------------------------------
# side evaluators
# ---------------------------------------------------------------------------

def _ls_low_rhs(n, r):
    return n * _pw(n + 1, r) / (r + 1)


def _ls_high_rhs(n, r):
    if r == 0:
        # limit of the r != 0 expression as r -> 0
        return 1 / log_scalar(Fraction(n + 1, n))
    if r == -1:
        raise _Undefined("r/(r+1) is singular at r = -1")
    a, b = _pw(n, r), _pw(n + 1, r)
    return (Fraction(r, 1) / (r + 1)) * a * b / (b - a)


def _alzer_rw_rhs(n, r):
    if r == -1:
        raise _Undefined("the denominator vanishes at r = -1")
    return _pw(n, 1 + r) * _pw(n + 1, r) / (_pw(n + 1, 1 + r) - _pw(n, 1 + r))


def _ben_cor1_rhs(n, r):
    if r == -1:
        raise _Undefined("the denominator vanishes at r = -1")
    return _pw(n, r) * (n + Fraction(1, 2)) * _pw(n + 1, r) / (_pw(n + 1, r + 1) - _pw(n, r + 1))


def _ben_thm10_rhs(n, r, policy, claimed):
    if r == 0:
        raise _Undefined("numerator and denominator both vanish at r = 0")
    a, b, c = _pw(n, r), _pw(n + 1, r), _pw(n + 2, r)
    num = a * b * (c - b)
    den = a * b - 2 * a * c + b * c
    sign = compare(den, 0, policy)
    if not sign.conclusive or sign.kind is Order.EXACTLY_EQUAL:
        raise _Diagnostic("denominator sign could not be certified nonzero")
    if claimed and sign.kind is Order.CERTAINLY_LESS:
        raise _Diagnostic("denominator is negative in the claimed region")
    return num / den


def _ratio_a(n, s):
    return (_s(n, s) / n) / (_s(n + 1, s) / (n + 1))


def _step_term(n, alpha):
    return _pw(_s(n, 1).exact, alpha) / _s(n, 2 * alpha - 1)


def _cor_term(n, alpha):
    return _pw(_s(n, 3).exact, alpha) / _s(n, 4 * alpha - 1)


def _ben_gen_term(n, a, b):
    return _s(n, a) * _s(n, b) / _s(n, a + b + 1)


def _open_term(n, alpha, r):
    return _s(n, r) ** alpha / _s(n, alpha * (r + 1) - 1)


@dataclass(frozen=True)
class Leg:
    lhs: Scalar
    rhs: Scalar
    relation: str


@dataclass(frozen=True)
class Inequality:
    """One registry entry.

    ``legs(params, policy, claimed)`` returns the compared pairs with the
    relation expected in the claimed region; the reversed region flips every
    relation.
    """

    id: str
    formula: str
    params: tuple
    claimed: Callable
    reversed: Optional[Callable]
    legs: Callable
    source: str
    note: Optional[str] = None

    def relations(self, params) -> tuple:
        """``(in_claimed, in_reversed)`` for ``params``."""
        in_claimed = bool(self.claimed(params))
        in_reversed = bool(self.reversed and self.reversed(params))
        return in_claimed, in_reversed


def _legs1(fn, relation):
    def legs(p, policy, claimed):
        lhs, rhs = fn(p, policy, claimed)
        return [Leg(as_scalar(lhs), as_scalar(rhs), relation)]

    return legs


def _entry(id, formula, params, claimed, reversed_, legs, source, note=None):
    return Inequality(id, formula, tuple(params), claimed, reversed_, legs, source, note)


_REGISTRY_LIST = [
    _entry(
        "LS_LOW",
        "sum_{i<=n} i^r >= n (n+1)^r / (r+1)",
        ("n", "r"),
        lambda p: 0 <= p["r"] <= 1,
        None,
        _legs1(lambda p, pol, c: (_s(p["n"], p["r"]), _ls_low_rhs(p["n"], p["r"])), ">="),
        "lower bound for sums of powers, 0 <= r <= 1",
    ),
    _entry(
        "LS_HIGH",
        "sum_{i<=n} i^r >= r/(r+1) n^r (n+1)^r / ((n+1)^r - n^r)   [r = 0: 1/ln(1+1/n)]",
        ("n", "r"),
        lambda p: p["r"] >= 1,
        lambda p: -1 < p["r"] <= 1,
        _legs1(lambda p, pol, c: (_s(p["n"], p["r"]), _ls_high_rhs(p["n"], p["r"])), ">="),
        "lower bound for r >= 1, reversed for -1 < r <= 1",
    ),
    _entry(
        "ALZER_LOW",
        "n/(n+1) < P_n(r)",
        ("n", "r"),
        lambda p: p["r"] > 0,
        None,
        _legs1(lambda p, pol, c: (P(p["n"], p["r"]), Fraction(p["n"], p["n"] + 1)), ">"),
        "strict lower bound by the r -> +inf limit, r > 0",
    ),
    _entry(
        "MARTINS_UP",
        "P_n(r) < P_n(0)",
        ("n", "r"),
        lambda p: p["r"] > 0,
        None,
        _legs1(lambda p, pol, c: (P(p["n"], p["r"]), P(p["n"], 0)), "<"),
        "strict upper bound by the geometric-mean ratio, r > 0",
    ),
    _entry(
        "ALZER_NEG",
        "P_n(0) <= P_n(r) <= 1",
        ("n", "r"),
        lambda p: p["r"] < 0,
        None,
        lambda p, pol, c: [
            Leg(P(p["n"], 0), P(p["n"], p["r"]), "<="),
            Leg(P(p["n"], p["r"]), Scalar.of(1), "<="),
        ],
        "band for negative exponents",
    ),
    _entry(
        "BENNETT_R1",
        "P_n(r) <= P_n(1) = (n+1)/(n+2)",
        ("n", "r"),
        lambda p: p["r"] >= 1,
        lambda p: 0 < p["r"] <= 1,
        _legs1(lambda p, pol, c: (P(p["n"], p["r"]), Fraction(p["n"] + 1, p["n"] + 2)), "<="),
        "comparison with the r = 1 value, reversed for 0 < r <= 1",
    ),
    _entry(
        "GAO_MONO",
        "P_n(r) >= P_n(r2) for r < r2, r <= 1",
        ("n", "r", "r2"),
        lambda p: p["r"] < p["r2"] and p["r"] <= 1,
        None,
        _legs1(lambda p, pol, c: (P(p["n"], p["r"]), P(p["n"], p["r2"])), ">="),
        "monotonicity of P_n in r from any r <= 1",
    ),
    _entry(
        "BEN_GEN",
        "S_n(a) S_n(b) / S_n(a+b+1) >= same at n+1",
        ("n", "alpha", "beta"),
        lambda p: p["alpha"] >= 1 and p["beta"] >= 1,
        lambda p: p["alpha"] <= 1 and p["beta"] <= 1,
        _legs1(
            lambda p, pol, c: (
                _ben_gen_term(p["n"], p["alpha"], p["beta"]),
                _ben_gen_term(p["n"] + 1, p["alpha"], p["beta"]),
            ),
            ">=",
        ),
        "product-of-sums step inequality, reversed for alpha, beta <= 1",
    ),
    _entry(
        "BEN_SQ",
        "(A_n(r))^2 >= (n+1)/n A_n(2r+1),  A_n(s) = (S_n(s)/n) / (S_{n+1}(s)/(n+1))",
        ("n", "r"),
        lambda p: p["r"] >= 1,
        lambda p: p["r"] <= 1,
        _legs1(
            lambda p, pol, c: (
                _ratio_a(p["n"], p["r"]) ** 2,
                Fraction(p["n"] + 1, p["n"]) * _ratio_a(p["n"], 2 * p["r"] + 1),
            ),
            ">=",
        ),
        "squared-sum step inequality in mean-ratio form, reversed for r <= 1",
    ),
    _entry(
        "PN_2R1",
        "P_n(r) >= P_n(2r+1)",
        ("n", "r"),
        lambda p: p["r"] >= 1,
        None,
        _legs1(lambda p, pol, c: (P(p["n"], p["r"]), P(p["n"], 2 * p["r"] + 1)), ">="),
        "consequence of the squared-sum inequality and the +inf limit bound, r >= 1",
    ),
    _entry(
        "THM2_STEP",
        "T_n >= T_{n+1},  T_n = (sum_{i<=n} i)^a / sum_{i<=n} i^(2a-1)",
        ("n", "alpha"),
        lambda p: p["alpha"] >= 2,
        lambda p: 1 < p["alpha"] < 2,
        _legs1(lambda p, pol, c: (_step_term(p["n"], p["alpha"]), _step_term(p["n"] + 1, p["alpha"])), ">="),
        "step inequality for alpha >= 2, reversed for 1 < alpha < 2",
        STEP_DIRECTION_NOTE,
    ),
    _entry(
        "COR4_STEP",
        "U_n >= U_{n+1},  U_n = (sum_{i<=n} i^3)^a / sum_{i<=n} i^(4a-1)",
        ("n", "alpha"),
        lambda p: p["alpha"] >= 1,
        lambda p: Fraction(1, 2) < p["alpha"] < 1,
        _legs1(lambda p, pol, c: (_cor_term(p["n"], p["alpha"]), _cor_term(p["n"] + 1, p["alpha"])), ">="),
        "cube-sum step inequality for alpha >= 1, reversed for 1/2 < alpha < 1",
        STEP_DIRECTION_NOTE,
    ),
    _entry(
        "PN3_EXT",
        "P_n(3) >= P_n(r) for r >= 3;  P_n(3) <= P_n(r) for r < 3",
        ("n", "r"),
        lambda p: p["r"] >= 3,
        lambda p: p["r"] < 3,
        _legs1(lambda p, pol, c: (P(p["n"], 3), P(p["n"], p["r"])), ">="),
        "P_n(3) separates the exponents above and below 3",
    ),
    _entry(
        "ALZER_RW",
        "sum_{i<=n} i^r >= n^(1+r) (n+1)^r / ((n+1)^(1+r) - n^(1+r))",
        ("n", "r"),
        lambda p: p["r"] > 0,
        None,
        _legs1(lambda p, pol, c: (_s(p["n"], p["r"]), _alzer_rw_rhs(p["n"], p["r"])), ">="),
        "the +inf limit bound restated as a lower bound for the sum, r > 0",
    ),
    _entry(
        "BEN_CONVEX",
        "c_{n+2} - 2 c_{n+1} + c_n >= 0,  c_m = (1/m) sum_{i<=m} i^r",
        ("n", "r"),
        lambda p: p["r"] >= 1 or p["r"] <= 0,
        lambda p: 0 <= p["r"] <= 1,
        _legs1(lambda p, pol, c: (second_difference(p["r"], p["n"]), 0), ">="),
        "power means of the naturals are convex for r >= 1 or r <= 0, concave for 0 <= r <= 1",
    ),
    _entry(
        "BEN_THM10",
        "sum_{i<=n} i^r >= n^r (n+1)^r ((n+2)^r - (n+1)^r) / (n^r(n+1)^r - 2 n^r(n+2)^r + (n+1)^r(n+2)^r)",
        ("n", "r"),
        lambda p: p["r"] >= 1,
        lambda p: -1 < p["r"] <= 1 and p["r"] != 0,
        _legs1(lambda p, pol, c: (_s(p["n"], p["r"]), _ben_thm10_rhs(p["n"], p["r"], pol, c)), ">="),
        "convexity of the power means restated as a bound, reversed for -1 < r <= 1, r != 0",
    ),
    _entry(
        "BEN_COR1",
        "sum_{i<=n} i^r >= n^r (n+1/2) (n+1)^r / ((n+1)^(r+1) - n^(r+1))",
        ("n", "r"),
        lambda p: p["r"] >= 1,
        lambda p: -1 < p["r"] <= 1,
        _legs1(lambda p, pol, c: (_s(p["n"], p["r"]), _ben_cor1_rhs(p["n"], p["r"])), ">="),
        "midpoint-type bound, reversed for -1 < r <= 1",
    ),
    _entry(
        "DOM_S4",
        "rhs(LS_HIGH) >= rhs(BEN_COR1)",
        ("n", "r"),
        lambda p: p["r"] >= 1,
        lambda p: -1 < p["r"] <= 1,
        _legs1(lambda p, pol, c: (_ls_high_rhs(p["n"], p["r"]), _ben_cor1_rhs(p["n"], p["r"])), ">="),
        "the midpoint-type bound is the weaker one on both sides of r = 1",
    ),
    _entry(
        "DOM_SMALL_R",
        "rhs(LS_LOW) >= rhs(ALZER_RW)",
        ("n", "r"),
        lambda p: 0 < p["r"] <= 1,
        None,
        _legs1(lambda p, pol, c: (_ls_low_rhs(p["n"], p["r"]), _alzer_rw_rhs(p["n"], p["r"])), ">="),
        "for 0 < r <= 1 the small-r lower bound dominates the restated limit bound",
    ),
    _entry(
        "GEN_OPEN",
        "(S_n(r))^a / S_n(a(r+1)-1) against the same at n+1",
        ("n", "alpha", "r"),
        lambda p: False,
        None,
        _legs1(
            lambda p, pol, c: (
                _open_term(p["n"], p["alpha"], p["r"]),
                _open_term(p["n"] + 1, p["alpha"], p["r"]),
            ),
            ">=",
        ),
        "exploration only: the monotonicity in n is an open question",
    ),
]

REGISTRY = {e.id: e for e in _REGISTRY_LIST}


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LegResult:
    lhs: Scalar
    rhs: Scalar
    relation: Optional[str]
    verdict: ComparisonVerdict
    status: ClaimStatus

    def to_json(self, bits: int = DEFAULT_POLICY.start_bits) -> dict:
        return {
            "lhs": self.lhs.to_json(bits),
            "rhs": self.rhs.to_json(bits),
            "relation": self.relation,
            "verdict": self.verdict.to_json(),
            "claim_status": self.status.value,
        }


@dataclass(frozen=True)
class CheckResult:
    id: str
    params: dict
    lhs: Optional[Scalar]
    rhs: Optional[Scalar]
    verdict: Optional[ComparisonVerdict]
    claim_status: ClaimStatus
    relation: Optional[str] = None
    legs: tuple = ()
    note: Optional[str] = None

    def to_json(self, bits: int = DEFAULT_POLICY.start_bits) -> dict:
        out = {
            "id": self.id,
            "params": {k: _param_json(v) for k, v in self.params.items()},
            "lhs": self.lhs.to_json(bits) if self.lhs is not None else None,
            "rhs": self.rhs.to_json(bits) if self.rhs is not None else None,
            "verdict": self.verdict.to_json() if self.verdict is not None else None,
            "claim_status": self.claim_status.value,
            "relation": self.relation,
        }
        if len(self.legs) > 1:
            out["legs"] = [leg.to_json(bits) for leg in self.legs]
        if self.note:
            out["note"] = self.note
        return out


def _param_json(v):
    return format_rational(v) if isinstance(v, Fraction) else v


def _coerce_params(entry: Inequality, params: Mapping) -> dict:
    out = {}
    for name in entry.params:
        if name not in params or params[name] is None:
            raise UsageError(f"{entry.id} needs parameter {name!r}")
        value = params[name]
        if name == "n":
            if isinstance(value, Fraction) and value.denominator == 1:
                value = int(value)
            if isinstance(value, str):
                value = int(value)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise UsageError(f"n must be a positive integer, got {value!r}")
            out[name] = value
        else:
            out[name] = as_rational(value)
    return out


def _status(verdict: ComparisonVerdict, relations: list) -> ClaimStatus:
    outcomes = [verdict.satisfies(rel) for rel in relations]
    if any(o is False for o in outcomes):
        return ClaimStatus.CONTRADICTS
    if any(o is None for o in outcomes):
        return ClaimStatus.INCONCLUSIVE
    return ClaimStatus.CONFIRMS


def evaluate_case(id: str, params: Mapping, policy: PrecisionPolicy = DEFAULT_POLICY) -> CheckResult:
    """Evaluate one registry entry at one parameter record."""
    try:
        entry = REGISTRY[id]
    except KeyError:
        raise UsageError(f"unknown inequality id {id!r}") from None
    p = _coerce_params(entry, params)
    in_claimed, in_reversed = entry.relations(p)
    try:
        legs = entry.legs(p, policy, in_claimed)
    except (_Undefined, ZeroDivisionError) as exc:
        status = ClaimStatus.INCONCLUSIVE if (in_claimed or in_reversed) else ClaimStatus.NO_CLAIM
        return CheckResult(id, p, None, None, None, status, note=str(exc) or "undefined")
    except _Diagnostic as exc:
        status = ClaimStatus.INCONCLUSIVE if (in_claimed or in_reversed) else ClaimStatus.NO_CLAIM
        return CheckResult(id, p, None, None, None, status, note=str(exc))

    results = []
    for leg in legs:
        verdict = compare(leg.lhs, leg.rhs, policy)
        relations = []
        if in_claimed:
            relations.append(leg.relation)
        if in_reversed:
            relations.append(_FLIP[leg.relation])
        if not relations:
            status = ClaimStatus.NO_CLAIM
            applied = None
        else:
            status = _status(verdict, relations)
            applied = relations[0] if len(relations) == 1 else "=="
        results.append(LegResult(leg.lhs, leg.rhs, applied, verdict, status))

    order = [ClaimStatus.CONTRADICTS, ClaimStatus.INCONCLUSIVE, ClaimStatus.NO_CLAIM, ClaimStatus.CONFIRMS]
    overall = min((r.status for r in results), key=order.index)
    first = results[0]
    return CheckResult(
        id,
        p,
        first.lhs,
        first.rhs,
        first.verdict,
        overall,
        relation=first.relation,
        legs=tuple(results),
        note=entry.note,
    )


def _expand_grid(entry: Inequality, grid) -> list:
    if isinstance(grid, Mapping):
        names = [name for name in entry.params]
        missing = [name for name in names if name not in grid]
        if missing:
            raise UsageError(f"{entry.id} grid is missing {missing}")
        axes = []
        for name in names:
            values = grid[name]
            if isinstance(values, (str, int, Fraction)):
                values = [values]
            axes.append(list(values))
        return [dict(zip(names, combo)) for combo in itertools.product(*axes)]
    return [dict(g) for g in grid]


def sweep(id: str, grid, policy: PrecisionPolicy = DEFAULT_POLICY) -> list:
    """Evaluate ``id`` at every point of ``grid``.

    ``grid`` is either a mapping from parameter name to values (expanded as a
    Cartesian product in the entry's parameter order) or an iterable of
    parameter records.
    """
    try:
        entry = REGISTRY[id]
    except KeyError:
        raise UsageError(f"unknown inequality id {id!r}") from None
    return [evaluate_case(id, point, policy) for point in _expand_grid(entry, grid)]


def summarize(results: Iterable[CheckResult]) -> dict:
    counts = {s.value: 0 for s in ClaimStatus}
    for r in results:
        counts[r.claim_status.value] += 1
    return counts


def _decimal(s: Optional[Scalar]) -> str:
    if s is None:
        return ""
    if s.is_exact:
        return format_rational(s.exact)
    return s.enclose(DEFAULT_POLICY.start_bits).to_json()["lo"]


def results_to_csv(results: Sequence[CheckResult]) -> str:
    """One row per result: id, parameter columns, lhs, rhs, verdict, claim_status."""
    names: list = []
    for r in results:
        for k in r.params:
            if k not in names:
                names.append(k)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", *names, "lhs", "rhs", "verdict", "claim_status"])
    for r in results:
        writer.writerow(
            [
                r.id,
                *[_param_json(r.params[k]) if k in r.params else "" for k in names],
                _decimal(r.lhs),
                _decimal(r.rhs),
                r.verdict.kind.value if r.verdict is not None else "",
                r.claim_status.value,
            ]
        )
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Hadamard bounds for power functions
# ---------------------------------------------------------------------------

def _power_at(u: Fraction, s: Fraction) -> Scalar:
    if u == 0:
        if s <= 0:
            raise DomainError("0 ** s is undefined for s <= 0")
        return Scalar.of(0)
    return pow_scalar(u, s)


def hadamard_power(s, a, b, policy: PrecisionPolicy = DEFAULT_POLICY) -> CheckResult:
    """Midpoint value, mean integral and endpoint average of ``u -> u**s`` on ``[a, b]``.

    For convex powers (``s >= 1`` or ``s <= 0``) the three are nondecreasing;
    for concave powers (``0 <= s <= 1``) nonincreasing.  The integral is the
    closed form ``(b^(s+1) - a^(s+1)) / ((s+1)(b-a))``, or ``ln(b/a)/(b-a)``
    at ``s = -1``.
    """
    s, a, b = as_rational(s), as_rational(a), as_rational(b)
    if not a < b:
        raise UsageError("hadamard_power needs a < b")
    if a < 0:
        raise DomainError("interval must lie in [0, inf)")
    if a == 0 and s < 1:
        raise DomainError("a = 0 is only allowed for s >= 1")
    mid = _power_at((a + b) / 2, s)
    if s == -1:
        mean = log_scalar(b / a) / (b - a)
    else:
        mean = (_power_at(b, s + 1) - _power_at(a, s + 1)) / ((s + 1) * (b - a))
    avg = (_power_at(a, s) + _power_at(b, s)) / 2
    convex = s >= 1 or s <= 0
    concave = 0 <= s <= 1
    legs = []
    for lhs, rhs in ((mid, mean), (mean, avg)):
        verdict = compare(lhs, rhs, policy)
        relations = (["<="] if convex else []) + ([">="] if concave else [])
        applied = relations[0] if len(relations) == 1 else "=="
        legs.append(LegResult(lhs, rhs, applied, verdict, _status(verdict, relations)))
    order = [ClaimStatus.CONTRADICTS, ClaimStatus.INCONCLUSIVE, ClaimStatus.CONFIRMS]
    overall = min((leg.status for leg in legs), key=order.index)
    return CheckResult(
        "HADAMARD_POWER",
        {"s": s, "a": a, "b": b},
        mid,
        avg,
        legs[0].verdict,
        overall,
        relation=legs[0].relation,
        legs=tuple(legs),
    )


# ---------------------------------------------------------------------------
# ratio principle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatioPrincipleReport:
    """Hypotheses and conclusion of the consecutive-ratio propagation lemma.

    ``failing_hypothesis`` is 0 for the initial ratio ``B1/B2 <= C1/C2`` and
    ``k >= 1`` for the difference-ratio condition at index ``k``.
    """

    hypotheses_hold: Optional[bool]
    failing_hypothesis: Optional[int]
    hypothesis_verdicts: tuple
    conclusion_verdicts: tuple

    @property
    def conclusion_holds(self) -> Optional[bool]:
        if not self.conclusion_verdicts:
            return None
        states = [v.satisfies("<=") for v in self.conclusion_verdicts]
        if any(s is False for s in states):
            return False
        if any(s is None for s in states):
            return None
        return True

    def to_json(self) -> dict:
        return {
            "hypotheses_hold": self.hypotheses_hold,
            "failing_hypothesis": self.failing_hypothesis,
            "hypothesis_verdicts": [v.to_json() for v in self.hypothesis_verdicts],
            "conclusion_verdicts": [v.to_json() for v in self.conclusion_verdicts],
            "conclusion_holds": self.conclusion_holds,
        }


def ratio_principle_check(B: Sequence, C: Sequence, policy: PrecisionPolicy = DEFAULT_POLICY) -> RatioPrincipleReport:
    """Check the hypotheses on ``B`` and ``C`` and, if they hold, certify
    ``B_n / B_{n+1} <= C_n / C_{n+1}`` for every available ``n``."""
    B = [as_scalar(v) for v in B]
    C = [as_scalar(v) for v in C]
    if len(B) != len(C) or len(B) < 3:
        raise UsageError("B and C must have the same length N >= 3")
    for name, seq in (("B", B), ("C", C)):
        if compare(seq[0], 0, policy).kind is not Order.CERTAINLY_GREATER:
            raise DomainError(f"{name} is not positive")
        for i in range(1, len(seq)):
            if compare(seq[i - 1], seq[i], policy).kind is not Order.CERTAINLY_LESS:
                raise DomainError(f"{name} is not strictly increasing at index {i + 1}")

    hyp = [compare(B[0] / B[1], C[0] / C[1], policy)]
    for k in range(len(B) - 2):
        lhs = (B[k + 1] - B[k]) / (B[k + 2] - B[k + 1])
        rhs = (C[k + 1] - C[k]) / (C[k + 2] - C[k + 1])
        hyp.append(compare(lhs, rhs, policy))
    failing = None
    hold: Optional[bool] = True
    for idx, v in enumerate(hyp):
        ok = v.satisfies("<=")
        if ok is False:
            failing, hold = idx, False
            break
        if ok is None:
            hold = None
    if hold is not True:
        return RatioPrincipleReport(hold, failing, tuple(hyp), ())
    concl = tuple(
        compare(B[k] / B[k + 1], C[k] / C[k + 1], policy) for k in range(len(B) - 1)
    )
    return RatioPrincipleReport(True, None, tuple(hyp), concl)
