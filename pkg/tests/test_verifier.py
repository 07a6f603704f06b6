import json

import pytest

from reppart.construction import claim3_sets
from reppart.intset import IntSet
from reppart.verifier import (
    Parity, claim2_search, claim2_tuples, claim3_profile_check, claim3_verify, necessity_search,
    pair_tuples, single_progression_search, verify_sufficiency,
)


@pytest.mark.parametrize("l", [1, 2])
def test_sufficiency(l):
    cert = verify_sufficiency(l, 1000)
    assert cert.passed
    assert set(cert.checks) == {"union", "intersection", "profiles_equal"}
    if l == 2:
        assert (cert.parameters["r1"], cert.parameters["r2"], cert.parameters["m"]) == (30, 31, 62)


def test_sufficiency_partial_prefix():
    cert = verify_sufficiency(1, 6)
    assert cert.passed and cert.notes["partial_prefix"]
    assert cert.notes["intersection_size"] == 1


def test_tuple_enumeration_order():
    tuples = pair_tuples(5, Parity.BOTH)
    assert tuples == sorted(tuples, key=lambda t: (t[2], t[0], t[1]))
    assert tuples[:3] == [(1, 2, 3), (1, 2, 4), (1, 3, 4)]
    assert all(r1 % 2 == 0 for r1, _, _ in pair_tuples(12, Parity.EVEN))
    assert all(r1 + r2 <= m and r1 % 2 == 0 for r1, r2, m in claim2_tuples(20))


def test_necessity_small():
    even = necessity_search(14, 8, Parity.EVEN)
    assert even.survivors == [(6, 7, 14)] and even.passed
    odd = necessity_search(14, 8, "odd")
    assert odd.survivors == [(3, 10, 14)] and odd.passed
    both = necessity_search(14, 8, "both")
    assert both.survivors == [(3, 10, 14), (6, 7, 14)]
    assert both.notes["max_fail_index_ratio"] > 0


def test_necessity_rows_carry_fail_index():
    cert = necessity_search(10, 8, "even")
    for row in cert.rows:
        assert row["status"] == "UNSAT" and isinstance(row["fail_index"], int)
    assert cert.to_csv().splitlines()[0] == "r1,r2,m,status,fail_index"


def test_claim2_small():
    cert = claim2_search(20)
    assert cert.passed
    assert cert.survivors and all(s[:2] == (6, 7) for s in cert.survivors)
    assert all(s[0] == 6 for s in claim2_search(12).survivors)
    assert claim2_search(4).survivors == []


@pytest.mark.parametrize("l", [1, 2])
def test_claim3(l):
    cert = claim3_verify(l)
    assert cert.passed, cert.checks
    assert cert.parameters["bound"] == 3 * 2 ** (2 * l + 1) - 4


def test_claim3_last_member_is_essential():
    pair = claim3_sets(1)
    cut = IntSet(pair.e_set.mask & ~(1 << 20), 20)
    assert claim3_profile_check(pair.e_set, pair.f_set, 20)
    assert not claim3_profile_check(cut, pair.f_set, 20)


def test_single_small():
    cert = single_progression_search(15, 8)
    assert cert.survivors == [(3, 7)] and cert.passed
    zero = single_progression_search(6, 8, include_r_zero=True)
    assert zero.checks["r_zero_all_unsat"]
    for row in zero.rows:
        if row["r"] == 0:
            assert row["status"] == "UNSAT"


def test_certificates_are_deterministic():
    a = necessity_search(20, 8, "both")
    b = necessity_search(20, 8, "both", workers=2)
    assert a.digest() == b.digest()
    assert a.survivors == b.survivors and a.set_digests == b.set_digests


def test_certificate_json_shape():
    cert = claim3_verify(1)
    obj = json.loads(cert.dumps())
    assert set(obj) == {"scenario", "parameters", "outcome", "checks", "survivors",
                        "set_digests", "notes", "runtime_ms"}
    assert obj["set_digests"]["E"] == claim3_sets(1).e_set.digest()
