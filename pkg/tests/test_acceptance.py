"""End-to-end acceptance checks, one test per criterion, each with its time budget."""
import random
import time
from contextlib import contextmanager
from fractions import Fraction


from majorcert.certify import build_certificate, find_counterexamples, monotonicity_scan, verify_certificate
from majorcert.grids import rational_range
from majorcert.inequality import ClaimStatus, evaluate_case, summarize, sweep
from majorcert.majorize import (
    Condition,
    MajorizationKind,
    PowerOverall,
    WeightTuple,
    build_block_tuples,
    check_condition,
    convex_witness,
    hinge_sum,
    majorizes,
    power_majorizes,
)
from majorcert.powersum import NATURALS, P
from majorcert.scalar import Order, Scalar, compare, pow_scalar

F = Fraction
CONFIRMS = ClaimStatus.CONFIRMS


@contextmanager
def criterion(log, label, budget):
    start = time.perf_counter()
    detail = {"text": ""}
    try:
        yield detail
    except BaseException as exc:
        log.append((label, False, time.perf_counter() - start, f"{type(exc).__name__}: {exc}"[:200]))
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < budget
    log.append((label, ok, elapsed, detail["text"] + ("" if ok else f" over budget {budget} s")))
    assert ok, f"{label} took {elapsed:.2f} s (budget {budget} s)"


def only_confirms(results):
    counts = summarize(results)
    bad = [r for r in results if r.claim_status is not CONFIRMS]
    assert not bad, [(r.id, r.params, r.claim_status.value, r.note) for r in bad[:5]]
    return counts


def test_criterion_01_counterexample(acceptance_log):
    with criterion(acceptance_log, "1 counterexample tuples", 1.0) as d:
        x6 = WeightTuple.of([F(k, 27) for k in (1, 1, 1, 8, 8, 8)])
        y6 = WeightTuple.of([F(k, 72) for k in (1, 1, 8, 8, 27, 27)])
        bx, by = build_block_tuples(NATURALS, 3, 2)
        assert sorted(e.exact for e in bx) == sorted(e.exact for e in x6)
        assert sorted(e.exact for e in by) == sorted(e.exact for e in y6)
        v = majorizes(x6, y6)
        assert v.kind is MajorizationKind.FAILS_AT_PREFIX and v.prefix_index == 3
        assert (v.lhs_prefix.exact, v.rhs_prefix.exact) == (F(8, 9), F(31, 36))
        report = power_majorizes(x6, y6, rational_range(-10, 10, F(1, 4)))
        assert report.overall is PowerOverall.CONSISTENT and len(report.checks) == 81
        w = convex_witness(x6, y6, v)
        assert w.threshold.exact == F(1, 9)
        assert (w.lhs_sum.exact, w.rhs_sum.exact) == (F(5, 9), F(19, 36))
        d["text"] = "prefix 3: 8/9 > 31/36; 81 exponents consistent; hinge 5/9 > 19/36"


def test_criterion_02_monotonicity_in_r(acceptance_log):
    with criterion(acceptance_log, "2 P_n decreasing for r <= 1", 60.0) as d:
        chain = rational_range(-10, 1, F(1, 10))
        rng = random.Random(2)
        below = rational_range(-10, 1, F(1, 10))
        above = rational_range(F(11, 10), 10, F(1, 10))
        checks = 0
        for n in range(1, 51):
            scan = monotonicity_scan(n, chain)
            assert all(v.kind is Order.CERTAINLY_GREATER for v in scan.verdicts), n
            for _ in range(20):
                r, r2 = rng.choice(below), rng.choice(above)
                res = evaluate_case("GAO_MONO", {"n": n, "r": r, "r2": r2})
                assert res.claim_status is CONFIRMS, (n, r, r2)
            checks += len(scan.verdicts) + 20
        d["text"] = f"{checks} certified comparisons, 0 contradictions"


def test_criterion_03_sandwich_and_band(acceptance_log):
    with criterion(acceptance_log, "3 sandwich and negative band", 60.0) as d:
        n = range(1, 101)
        pos = [F(1, 10), F(1, 2), 1, 2, 5]
        low = sweep("ALZER_LOW", {"n": n, "r": pos})
        up = sweep("MARTINS_UP", {"n": n, "r": pos})
        for r in low + up:
            assert r.verdict.kind in (Order.CERTAINLY_LESS, Order.CERTAINLY_GREATER)
        band = sweep("ALZER_NEG", {"n": n, "r": [F(-1, 2), -1, -5]})
        only_confirms(low + up + band)
        d["text"] = f"{len(low + up + band)} cases confirmed, strict where claimed"


def test_criterion_04_sum_bounds(acceptance_log):
    with criterion(acceptance_log, "4 lower and upper sum bounds", 30.0) as d:
        n = range(1, 101)
        results = sweep("LS_LOW", {"n": n, "r": [0, F(1, 4), F(1, 2), F(3, 4), 1]})
        results += sweep("LS_HIGH", {"n": n, "r": [1, 2, 3, 5]})
        reversed_ = sweep("LS_HIGH", {"n": n, "r": [F(-1, 2), 0, F(1, 4), F(1, 2), F(3, 4)]})
        assert all(r.relation in ("<=", "==") for r in reversed_)
        only_confirms(results + reversed_)
        d["text"] = f"{len(results) + len(reversed_)} cases confirmed (r = 0 via 1/ln(1+1/n))"


def test_criterion_05_block_tuple_majorization(acceptance_log):
    with criterion(acceptance_log, "5 block tuples: majorization and reversal", 30.0) as d:
        count = 0
        for r in (F(1, 4), F(1, 2), F(3, 4), F(1)):
            for n in range(2, 13):
                assert check_condition(NATURALS, r, n, Condition.POSITIVE).holds
                x, y = build_block_tuples(NATURALS, r, n)
                assert majorizes(x, y).kind is MajorizationKind.HOLDS, (r, n)
                if r == 1:
                    assert x.is_exact and y.is_exact
                count += 1
        for r in (2, 3, 5):
            for n in range(2, 11):
                v = majorizes(*build_block_tuples(NATURALS, r, n))
                assert v.kind is MajorizationKind.FAILS_AT_PREFIX, (r, n)
                count += 1
        for r in (F(-1, 2), F(-1), F(-2)):
            for n in range(2, 13):
                assert check_condition(NATURALS, -r, n, Condition.NEGATIVE).holds
                assert majorizes(*build_block_tuples(NATURALS, r, n)).holds, (r, n)
                count += 1
        d["text"] = f"{count} (r, n) cases as expected"


def test_criterion_06_step_inequalities(acceptance_log):
    with criterion(acceptance_log, "6 step inequality in n", 30.0) as d:
        n = range(1, 101)
        forward = sweep("THM2_STEP", {"n": n, "alpha": [2, F(5, 2), 3, 5]})
        backward = sweep("THM2_STEP", {"n": n, "alpha": [F(11, 10), F(3, 2), F(19, 10)]})
        assert all(r.relation == ">=" for r in forward) and all(r.relation == "<=" for r in backward)
        only_confirms(forward + backward)
        for r in forward:
            if r.params["alpha"] == 2:
                assert r.lhs.exact == r.rhs.exact == 1
        for alpha in (1, 2):
            g = 1 + pow_scalar(2, 2 * alpha - 1) - pow_scalar(3, alpha)
            assert g.exact == 0
        doubled = sweep("COR4_STEP", {"n": n, "alpha": [1, F(5, 4), F(3, 2), F(5, 2), F(11, 20), F(3, 4), F(19, 20)]})
        only_confirms(doubled)
        for c in doubled:
            t = evaluate_case("THM2_STEP", {"n": c.params["n"], "alpha": 2 * c.params["alpha"]})
            assert c.verdict.kind is t.verdict.kind and c.relation == t.relation
        d["text"] = f"{len(forward) + len(backward) + len(doubled)} cases confirmed; T_n = 1 at alpha = 2"


def test_criterion_07_convexity_suite(acceptance_log):
    with criterion(acceptance_log, "7 convexity and dominance suite", 60.0) as d:
        n = range(1, 51)
        regions = [1, F(3, 2), 2, 3, F(-1, 2), F(1, 4), F(1, 2), F(3, 4)]
        results = sweep("BEN_CONVEX", {"n": n, "r": [-2, -1, F(1, 4), F(1, 2), F(3, 4), 2, 3]})
        results += sweep("BEN_THM10", {"n": n, "r": regions})
        results += sweep("BEN_COR1", {"n": n, "r": regions})
        results += sweep("DOM_S4", {"n": n, "r": regions})
        results += sweep("DOM_SMALL_R", {"n": n, "r": [F(1, 4), F(1, 2), F(3, 4), 1]})
        only_confirms(results)
        d["text"] = f"{len(results)} cases confirmed"


def _random_pair(rng):
    k = rng.randint(1, 6)
    x = [F(rng.randint(1, 30), rng.randint(1, 12)) for _ in range(k)]
    y = [F(rng.randint(1, 30), rng.randint(1, 12)) for _ in range(k)]
    scale = sum(x) / sum(y)
    return x, [v * scale for v in y]


def test_criterion_08_prefix_test_against_convex_family(acceptance_log):
    with criterion(acceptance_log, "8 prefix test vs convex test functions", 30.0) as d:
        rng = random.Random(8)
        holds = fails = 0
        for _ in range(500):
            xs, ys = _random_pair(rng)
            x, y = WeightTuple.of(xs), WeightTuple.of(ys)
            v = majorizes(x, y)
            thresholds = {e.exact for e in x} | {e.exact for e in y}
            hinge_ok = all(
                hinge_sum(x, Scalar.of(t)).exact <= hinge_sum(y, Scalar.of(t)).exact for t in thresholds
            )
            if v.holds:
                holds += 1
                assert hinge_ok
                for p in (F(3, 2), 2, 3, 5):
                    ok = compare(x.power_sum(p), y.power_sum(p)).satisfies("<=")
                    assert ok or (ok is None and sorted(xs) == sorted(ys))
            else:
                fails += 1
                assert not hinge_ok
                w = convex_witness(x, y, v)
                assert w.verdict.kind is Order.CERTAINLY_GREATER
        d["text"] = f"500 pairs agree ({holds} majorized, {fails} with certified hinge violations)"


def test_criterion_09_power_sums_reduce_to_P(acceptance_log):
    with criterion(acceptance_log, "9 power sums of block tuples vs P_n", 60.0) as d:
        rng = random.Random(9)
        done = 0
        while done < 100:
            n = rng.randint(1, 10)
            r = F(rng.randint(1, 20), 4)
            p = F(rng.randint(1, 16), 4)
            if p == 1:
                continue
            x, y = build_block_tuples(NATURALS, r, n)
            check = power_majorizes(x, y, [p]).checks[0]
            expected = compare(P(n, r * p), P(n, r))
            assert expected.conclusive and check.verdict.kind is expected.kind, (n, r, p)
            done += 1
        d["text"] = "100 sampled (n, r, p) agree"


def _leaves(doc, path=()):
    if isinstance(doc, dict):
        for k, v in doc.items():
            yield from _leaves(v, path + (k,))
    elif isinstance(doc, list):
        for i, v in enumerate(doc):
            yield from _leaves(v, path + (i,))
    else:
        yield path


@contextmanager
def mutated(doc, path):
    """Temporarily change the leaf at ``path``; restored on exit."""
    node = doc
    for key in path[:-1]:
        node = node[key]
    value = node[path[-1]]
    if isinstance(value, bool):
        node[path[-1]] = not value
    elif isinstance(value, int):
        node[path[-1]] = value + 1
    else:
        node[path[-1]] = value[:-1] + ("1" if value[-1] != "1" else "2")
    try:
        yield doc
    finally:
        node[path[-1]] = value


def test_criterion_10_certificate_round_trip(acceptance_log):
    with criterion(acceptance_log, "10 certificate replay and tamper detection", 10.0) as d:
        certs = [build_certificate(2, 3, rational_range(-10, 10, F(1, 4)))]
        certs += find_counterexamples(range(2, 11), [3])
        assert [c.n for c in certs[1:]] == list(range(2, 11))
        mutations = 0
        for cert in certs:
            doc = cert.to_json()
            assert verify_certificate(doc)
            for path in list(_leaves(doc)):
                with mutated(doc, path) as bad:
                    assert not verify_certificate(bad), path
                mutations += 1
            assert verify_certificate(doc)
        d["text"] = f"{len(certs)} certificates verified; {mutations} single-field mutations rejected"
