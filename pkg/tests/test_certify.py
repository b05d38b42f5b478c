import copy
import json
from fractions import Fraction

import pytest

from majorcert.certify import (
    FULL_COVERAGE_NOTE,
    GRID_ONLY_NOTE,
    build_certificate,
    canonical_json,
    find_counterexamples,
    monotonicity_scan,
    verify_certificate,
)
from majorcert.errors import UsageError
from majorcert.scalar import Order, PrecisionPolicy

F = Fraction


@pytest.fixture(scope="module")
def cert23():
    return build_certificate(2, 3)


def test_certificate_for_cubes_n2(cert23):
    doc = cert23.to_json()
    assert sorted(doc["x"]) == sorted(["1/27"] * 3 + ["8/27"] * 3)
    assert sorted(doc["y"]) == sorted(["1/72"] * 2 + ["1/9"] * 2 + ["3/8"] * 2)
    assert doc["majorization_failure"] == {
        "kind": "FailsAtPrefix", "prefix_index": 3, "lhs_prefix": "8/9", "rhs_prefix": "31/36",
    }
    assert doc["hinge_witness"]["threshold"] == "1/9"
    assert doc["power_grid_evidence"]["overall"] == "ConsistentWithPowerMajorization"
    assert doc["arithmetic_mode"] == "exact"
    assert doc["full_coverage"] is True and doc["reduction_note"] == FULL_COVERAGE_NOTE
    assert doc["version"] and doc["policy"] == {"start_bits": 64, "max_bits": 4096}


def test_certificate_for_cubes_n3():
    (cert,) = find_counterexamples([3], [3])
    v = cert.majorization_failure
    assert v.prefix_index == 4 and (v.lhs_prefix.exact, v.rhs_prefix.exact) == (F(108, 144), F(219, 300))


def test_no_certificate_when_majorization_holds():
    assert find_counterexamples([2], [1]) == []
    assert find_counterexamples([2, 3], [F(1, 2), -1]) == []


def test_other_exponents_are_grid_evidence_only():
    (cert,) = find_counterexamples([2], [2])
    assert not cert.full_coverage and cert.reduction_note == GRID_ONLY_NOTE
    (cert,) = find_counterexamples([2], [F(5, 2)])
    assert cert.arithmetic_mode == "certified-interval"
    assert verify_certificate(cert)


def test_one_certificate_per_n_for_cubes():
    certs = find_counterexamples(range(2, 11), [3])
    assert [c.n for c in certs] == list(range(2, 11))
    assert all(verify_certificate(c) for c in certs)


def test_verify_round_trip_through_json(cert23):
    text = cert23.dumps()
    assert verify_certificate(json.loads(text))


def test_digest_is_over_canonical_body(cert23):
    import hashlib

    doc = cert23.to_json()
    body = {k: v for k, v in doc.items() if k != "digest"}
    assert doc["digest"] == hashlib.sha256(canonical_json(body).encode()).hexdigest()


def test_tampered_prefix_is_rejected(cert23):
    doc = cert23.to_json()
    doc["majorization_failure"]["lhs_prefix"] = "7/9"
    res = verify_certificate(doc)
    assert not res and res.mismatch == "majorization_failure.lhs_prefix"


def test_certificate_claiming_linear_case_is_rejected(cert23):
    doc = cert23.to_json()
    doc["r"] = "1/1"
    res = verify_certificate(doc)
    assert not res and res.mismatch == "majorization_failure"


def _leaves(doc, path=()):
    if isinstance(doc, dict):
        for k, v in doc.items():
            yield from _leaves(v, path + (k,))
    elif isinstance(doc, list):
        for i, v in enumerate(doc):
            yield from _leaves(v, path + (i,))
    else:
        yield path


def _mutate(value):
    if isinstance(value, bool):
        return not value
    if isinstance(value, int):
        return value + 1
    if value is None:
        return "x"
    return value + "0" if not value.endswith("0") else value[:-1] + "1"


def test_every_single_field_mutation_fails(cert23):
    doc = cert23.to_json()
    paths = list(_leaves(doc))
    assert len(paths) > 100
    for path in paths:
        bad = copy.deepcopy(doc)
        node = bad
        for key in path[:-1]:
            node = node[key]
        node[path[-1]] = _mutate(node[path[-1]])
        assert not verify_certificate(bad), path


def test_malformed_documents():
    assert verify_certificate({"format": "other"}).mismatch == "format"
    assert not verify_certificate([])
    assert verify_certificate({"format": "majorcert-counterexample/1"}).mismatch == "document"


def test_certificates_are_deterministic():
    assert build_certificate(4, 3).dumps() == build_certificate(4, 3).dumps()
    other = build_certificate(4, 3, policy=PrecisionPolicy(128, 4096))
    assert other.digest != build_certificate(4, 3).digest
    assert verify_certificate(other)


def test_monotonicity_scan_examples():
    scan = monotonicity_scan(2, [-2, -1, 0, F(1, 2), 1])
    assert all(v.kind is Order.CERTAINLY_GREATER for v in scan.verdicts) and scan.nonincreasing
    assert monotonicity_scan(2, [3, 4, 5]).nonincreasing
    scan = monotonicity_scan(1, [1, 2])
    assert scan.verdicts[0].kind is Order.CERTAINLY_GREATER
    assert scan.to_json()["runs"] == [{"from": "1/1", "to": "2/1", "kind": "CertainlyGreater"}]
    with pytest.raises(UsageError):
        monotonicity_scan(2, [1, 1])
