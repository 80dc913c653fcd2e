import json

import pytest

from sterntwist.sequences import stern, twisted
import sterntwist.verify as verify
from sterntwist.verify import (
    AS_PRINTED,
    CORRECTED,
    REGISTRY,
    SCAN,
    SUSPECTED_TYPO,
    check_conjecture_ab,
    check_conjecture_gen,
    check_det_families,
    check_det_m,
    check_divisibility,
    check_identity,
    check_mod2,
    check_palindrome,
    check_partial_sums,
    det_m,
    evaluate,
    render,
    run_suite,
)

CLEAN_IDS = [
    "STID-S", "STID-T", "STID-T3", "STID-T3S", "MF1", "MF2",
    "REC-S", "REC-T", "ID3", "ID4", "ID5", "ID6", "ID7C", "ID8", "ID9",
    "DIV-S", "DIV-T", "MOD2-S", "MOD2-T",
]


def test_registry_contents():
    assert set(REGISTRY) == set(CLEAN_IDS) | {"ID7"}
    assert REGISTRY["ID7"].status == SUSPECTED_TYPO
    assert REGISTRY["ID3"].status == SUSPECTED_TYPO
    assert REGISTRY["ID7C"].status == CORRECTED
    assert all(r.anchor for r in REGISTRY.values())
    assert REGISTRY["ID5"].e_min == 2
    assert REGISTRY["ID4"].e_min == 1


def test_expression_machinery():
    record = REGISTRY["STID-S"]
    assert evaluate(record.lhs, 2, 1) == stern(5) == 3
    assert evaluate(record.rhs, 2, 1) == stern(3) + stern(1) == 3
    assert render(record.lhs) == "s(2^e + n)"
    assert render(record.rhs) == "s(2^e - n) + s(n)"
    assert "(-1)^e" in render(REGISTRY["STID-T3S"].rhs)


@pytest.mark.parametrize("identity", CLEAN_IDS)
def test_clean_identities_pass_printed_range(identity):
    report = check_identity(identity, 12)
    assert report.ok, report.counterexamples[:3]
    assert report.passes > 0


def test_stid_spot_values():
    # e=2, n=1 instances
    assert stern(5) == stern(3) + stern(1)
    assert twisted(10) == twisted(8) == -stern(4)


def test_id7_as_printed_fails():
    report = check_identity("ID7", 12)
    assert not report.ok
    assert (2, 1, 3, -3) in report.counterexamples
    assert report.status == SUSPECTED_TYPO
    assert not report.blocking
    assert len(report.counterexamples) <= verify.MAX_COUNTEREXAMPLES


def test_id7_corrected_passes():
    report = check_identity("ID7C", 12)
    assert report.ok
    assert report.blocking is False


def test_id3_scan_boundary():
    for e in range(9):
        report = check_identity("ID3", e, SCAN)
        found = report.scanned[e]
        assert found == {"lo": 0, "hi": 2**e, "open_right": False}


def test_t3_window_scan_boundary():
    report = check_identity("STID-T3S", 5, SCAN)
    for e in range(6):
        assert report.scanned[e]["hi"] == 2 ** (e + 1)


def test_unknown_identity_and_policy():
    with pytest.raises(KeyError):
        check_identity("NOPE", 3)
    with pytest.raises(ValueError):
        check_identity("ID3", 3, "guess")


def test_partial_sums():
    report = check_partial_sums(12)
    assert report.ok
    assert sum(stern(n) for n in range(1, 9)) == 14 == (3**3 + 1) // 2
    assert twisted(1) + twisted(2) == 0
    assert sum(stern(n) for n in range(1, 2)) == 1


def test_det_m():
    assert det_m(1) == -2
    assert det_m(2) == 2
    assert det_m(4) == -2
    with pytest.raises(ValueError):
        det_m(0)
    assert check_det_m(1 << 12).ok


def test_det_m_sign_relations():
    for n in range(1, (1 << 15) + 1):
        assert det_m(n) * det_m(2 * n) < 0
        if n >= 2:
            assert det_m(2 * n - 1) == -det_m(n - 1)


def test_det_family_spot_values():
    # family rows: (top sequence at n, n+1), (bottom sequence at 2^e+n, 2^e+n+1)
    assert stern(0) * stern(3) - stern(1) * stern(2) == -1
    assert stern(0) * twisted(3) - stern(1) * twisted(2) == 1
    assert twisted(1) * twisted(6) - twisted(2) * twisted(5) == 1
    assert check_det_families(8).ok


def test_divisibility():
    report = check_divisibility(1 << 12)
    assert report.ok
    assert (stern(3) + stern(5)) // stern(4) == 5
    assert twisted(2) + twisted(4) == 0 and twisted(3) == 0
    assert (twisted(3) + twisted(5)) // twisted(4) == 1
    with pytest.raises(ValueError):
        check_divisibility(2)


def test_divisibility_exceptional_sets():
    # every n = 3*2^j is the both-zero case; 2^e takes the shifted quotient
    for j in range(10):
        n = 3 << j
        assert twisted(n) == 0 and twisted(n - 1) + twisted(n + 1) == 0
    for e in range(1, 12):
        n = 1 << e
        assert twisted(n - 1) + twisted(n + 1) == (1 + 2 * (e - 2)) * twisted(n)
    assert twisted(0) + twisted(2) == -twisted(1)


def test_mod2_and_palindrome():
    assert check_mod2(3 << 10).ok
    report = check_palindrome(8)
    assert report.ok
    # centre elements are 2
    for e in range(1, 9):
        sign = -1 if e % 2 else 1
        assert sign * twisted(3 * (1 << e) + 3 * (1 << (e - 1))) == 2


def test_conjecture_gen():
    report = check_conjecture_gen(4, 256)
    assert report.ok
    assert report.conjecture
    assert not report.blocking
    with pytest.raises(ValueError):
        check_conjecture_gen(8, 100)


def test_conjecture_ab():
    report = check_conjecture_ab(4, 256)
    assert report.ok
    assert report.conjecture
    with pytest.raises(ValueError):
        check_conjecture_ab(8, 100)


def test_quotient_prefixes():
    u = verify.gen_quotient_series(16)
    assert u.coeffs[:13] == (1, 0, -2, 0, 0, -2, 4, 2, -6, 4, 2, -6, 8)
    a, b = verify.ab_quotient_series(16)
    assert a.coeffs[:7] == (1, -2, 2, 0, -4, 4, 2)
    assert b.coeffs[:8] == (1, -2, -2, 4, 0, 0, 6, -6)


def test_reports_serialise():
    reports = run_suite("all", 5, 256)
    assert not any(r.blocking for r in reports)
    failing = [r.identity for r in reports if not r.ok]
    assert failing == ["ID7"]
    for r in reports:
        parsed = json.loads(r.to_json())
        assert parsed == r.to_json_dict()
        assert r.summary_line()
    with pytest.raises(ValueError):
        run_suite("everything", 3, 64)


def test_scan_report_serialises():
    report = check_identity("ID3", 3, SCAN)
    parsed = json.loads(report.to_json())
    assert parsed["scanned_range"]["3"] == {"lo": 0, "hi": 8, "open_right": False}
    assert "scanned" in report.summary_line()
