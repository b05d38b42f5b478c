"""Counterexample certificates: power majorization without majorization.

For ``r > 1`` the block tuples built from the naturals satisfy the power
inequalities at every sampled exponent yet fail the prefix-sum test.  A
certificate records both facts together with a hinge function that violates
the convex-sum criterion, and can be replayed from ``(n, r, grid, policy)``.
"""
from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from ._version import __version__
from .errors import InconclusiveError, UsageError
from .grids import default_power_grid
from .majorize import (
    HingeWitness,
    MajorizationKind,
    MajorizationVerdict,
    PowerMajorizationReport,
    PowerOverall,
    WeightTuple,
    build_block_tuples,
    convex_witness,
    majorizes,
    power_majorizes,
)
from .powersum import NATURALS, P
from .scalar import (
    DEFAULT_POLICY,
    Order,
    PrecisionPolicy,
    as_rational,
    compare,
    format_rational,
    parse_rational,
)

__all__ = [
    "CERTIFICATE_FORMAT",
    "CounterexampleCertificate",
    "MonotonicityScan",
    "VerificationResult",
    "build_certificate",
    "find_counterexamples",
    "monotonicity_scan",
    "verify_certificate",
]

log = logging.getLogger(__name__)

CERTIFICATE_FORMAT = "majorcert-counterexample/1"

FULL_COVERAGE_NOTE = (
    "for r = 3 the power-sum comparison at any real p equals the comparison of "
    "P_n(3p) with P_n(3); P_n(3) >= P_n(s) for s >= 3 and P_n(3) <= P_n(s) for "
    "s < 3 settle every p, so the grid is a spot check"
)
GRID_ONLY_NOTE = "grid evidence only: no argument covering every real p is known for this r"


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def _digest(body: dict) -> str:
    return hashlib.sha256(canonical_json(body).encode("ascii")).hexdigest()


@dataclass(frozen=True)
class CounterexampleCertificate:
    n: int
    r: Fraction
    x: WeightTuple
    y: WeightTuple
    majorization_failure: MajorizationVerdict
    hinge_witness: HingeWitness
    power_grid_evidence: PowerMajorizationReport
    grid: tuple
    policy: PrecisionPolicy
    version: str = __version__

    @property
    def full_coverage(self) -> bool:
        return self.r == 3

    @property
    def reduction_note(self) -> str:
        return FULL_COVERAGE_NOTE if self.full_coverage else GRID_ONLY_NOTE

    @property
    def arithmetic_mode(self) -> str:
        """``exact`` when the tuples and the failing prefix are rational.

        Power sums at fractional exponents are still compared through
        certified enclosures; their verdicts record the precision used.
        """
        exact = (
            self.x.is_exact
            and self.y.is_exact
            and self.majorization_failure.lhs_prefix.is_exact
            and self.majorization_failure.rhs_prefix.is_exact
        )
        return "exact" if exact else "certified-interval"

    def body(self) -> dict:
        bits = self.policy.start_bits
        return {
            "format": CERTIFICATE_FORMAT,
            "version": self.version,
            "n": self.n,
            "r": format_rational(self.r),
            "sequence": NATURALS.to_json(),
            "policy": self.policy.to_json(),
            "grid": [format_rational(p) for p in self.grid],
            "x": self.x.to_json(bits),
            "y": self.y.to_json(bits),
            "majorization_failure": self.majorization_failure.to_json(bits),
            "hinge_witness": self.hinge_witness.to_json(bits),
            "power_grid_evidence": self.power_grid_evidence.to_json(bits),
            "arithmetic_mode": self.arithmetic_mode,
            "full_coverage": self.full_coverage,
            "reduction_note": self.reduction_note,
        }

    @property
    def digest(self) -> str:
        return _digest(self.body())

    def to_json(self) -> dict:
        doc = self.body()
        doc["digest"] = _digest(doc)
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"


@lru_cache(maxsize=256)
def _block_tuples(n: int, r: Fraction, policy: PrecisionPolicy):
    # tuples are immutable and memoize their power sums, so sharing them makes
    # replays with a different exponent grid cheap
    return build_block_tuples(NATURALS, r, n, policy)


def build_certificate(
    n: int,
    r,
    grid: Optional[Sequence] = None,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> Optional[CounterexampleCertificate]:
    """Certificate for one ``(n, r)``, or None when the tuples are not a counterexample.

    Raises :class:`InconclusiveError` if a comparison cannot be decided.
    """
    r = as_rational(r)
    grid = tuple(as_rational(p) for p in (default_power_grid() if grid is None else grid))
    if not grid:
        raise UsageError("the exponent grid is empty")
    if r == 0:
        return None
    x, y = _block_tuples(n, r, policy)
    verdict = majorizes(x, y, policy)
    if verdict.kind is not MajorizationKind.FAILS_AT_PREFIX:
        return None
    report = power_majorizes(x, y, grid, policy)
    if report.overall is PowerOverall.INCONCLUSIVE:
        raise InconclusiveError("power-majorization grid has an undecided exponent")
    if report.overall is not PowerOverall.CONSISTENT:
        return None
    witness = convex_witness(x, y, verdict, policy)
    return CounterexampleCertificate(n, r, x, y, verdict, witness, report, grid, policy)


def find_counterexamples(
    n_range: Iterable[int],
    r_candidates: Iterable = (3,),
    grid: Optional[Sequence] = None,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> list:
    """Certificates for every ``(n, r)`` whose block tuples refute the implication.

    Candidates that majorize (every ``r <= 1``) yield nothing; undecidable
    candidates are skipped with a logged diagnostic.
    """
    out = []
    for r in r_candidates:
        for n in n_range:
            try:
                cert = build_certificate(n, r, grid, policy)
            except InconclusiveError as exc:
                log.warning("skipping n=%s r=%s: %s", n, r, exc)
                continue
            if cert is None:
                log.debug("n=%s r=%s is not a counterexample", n, r)
                continue
            out.append(cert)
    return out


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    mismatch: Optional[str] = None
    detail: Optional[str] = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "mismatch": self.mismatch, "detail": self.detail}


def _first_difference(a, b, path: str) -> Optional[str]:
    if a == b and type(a) is type(b):
        return None
    if isinstance(a, dict) and isinstance(b, dict):
        for key in sorted(set(a) | set(b)):
            if key not in a or key not in b:
                return f"{path}.{key}" if path else key
            d = _first_difference(a[key], b[key], f"{path}.{key}" if path else key)
            if d:
                return d
        return None
    if isinstance(a, list) and isinstance(b, list):
        if len(a) != len(b):
            return path
        for i, (u, v) in enumerate(zip(a, b)):
            d = _first_difference(u, v, f"{path}[{i}]")
            if d:
                return d
        return None
    return None if a == b else path


@lru_cache(maxsize=128)
def _replay(n: int, r: Fraction, grid: tuple, policy: PrecisionPolicy) -> Optional[dict]:
    # replays are pure, so repeated verification of one (n, r, grid, policy) is memoized
    cert = build_certificate(n, r, grid, policy)
    if cert is None:
        return None
    body = cert.body()
    return {"body": body, "digest": _digest(body)}


def verify_certificate(cert) -> VerificationResult:
    """Replay a certificate (object or JSON document) from its ``n``, ``r``,
    grid and policy, and check every recorded field and the digest."""
    doc = cert.to_json() if isinstance(cert, CounterexampleCertificate) else cert
    if not isinstance(doc, dict):
        return VerificationResult(False, "document", "certificate must be a JSON object")
    if doc.get("format") != CERTIFICATE_FORMAT:
        return VerificationResult(False, "format", f"expected {CERTIFICATE_FORMAT}")
    try:
        n = doc["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            return VerificationResult(False, "n", "n must be a positive integer")
        r = parse_rational(str(doc["r"]))
        grid = [parse_rational(str(p)) for p in doc["grid"]]
        pol = doc["policy"]
        policy = PrecisionPolicy(int(pol["start_bits"]), int(pol["max_bits"]))
    except (KeyError, TypeError, ValueError) as exc:
        return VerificationResult(False, "document", f"malformed certificate: {exc}")

    try:
        fresh = _replay(n, r, tuple(grid), policy)
    except (InconclusiveError, UsageError, ValueError) as exc:
        return VerificationResult(False, "majorization_failure", f"replay failed: {exc}")
    if fresh is None:
        return VerificationResult(
            False, "majorization_failure", "replayed tuples are not a counterexample"
        )
    body = {k: v for k, v in doc.items() if k != "digest"}
    diff = _first_difference(body, fresh["body"], "")
    if diff:
        return VerificationResult(False, diff, "recorded value differs from the replay")
    if doc.get("digest") != fresh["digest"]:
        return VerificationResult(False, "digest", "digest does not match the canonical body")
    return VerificationResult(True)


@dataclass(frozen=True)
class MonotonicityScan:
    n: int
    grid: tuple
    verdicts: tuple

    @property
    def runs(self) -> list:
        """Maximal runs ``(start, end, kind)`` of equal adjacent verdicts, as grid indices."""
        out = []
        for i, v in enumerate(self.verdicts):
            if out and out[-1][2] is v.kind:
                out[-1] = (out[-1][0], i + 1, v.kind)
            else:
                out.append((i, i + 1, v.kind))
        return out

    @property
    def nonincreasing(self) -> bool:
        return all(v.kind in (Order.CERTAINLY_GREATER, Order.EXACTLY_EQUAL) for v in self.verdicts)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rows": [
                {"r": format_rational(a), "r_next": format_rational(b), "verdict": v.to_json()}
                for a, b, v in zip(self.grid, self.grid[1:], self.verdicts)
            ],
            "runs": [
                {"from": format_rational(self.grid[s]), "to": format_rational(self.grid[e]), "kind": k.value}
                for s, e, k in self.runs
            ],
        }


def monotonicity_scan(n: int, r_grid: Sequence, policy: PrecisionPolicy = DEFAULT_POLICY) -> MonotonicityScan:
    """Certified comparison of ``P(n, r_k)`` with ``P(n, r_{k+1})`` along ``r_grid``."""
    grid = tuple(as_rational(r) for r in r_grid)
    if any(a >= b for a, b in zip(grid, grid[1:])):
        raise UsageError("r grid must be strictly increasing")
    verdicts = tuple(compare(P(n, a), P(n, b), policy) for a, b in zip(grid, grid[1:]))
    return MonotonicityScan(n, grid, verdicts)
