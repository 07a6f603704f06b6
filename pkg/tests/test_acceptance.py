"""Exit criteria.  Each test records one PASS/FAIL line (see conftest)."""

import random
import time

import pytest

import oracles
from reppart.construction import family_parameters
from reppart.intset import IntSet
from reppart.repfn import companion, cross_rep_profile, eq_2_5_check, rep_profile
from reppart.solver import Status
from reppart.thue_morse import ChainClass, digit_chain_classify, tm_prefix
from reppart.verifier import (
    claim2_outcomes, claim2_search, claim3_verify, necessity_search, single_progression_search,
    verify_sufficiency,
)

_CERTS = {}


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t0


def cached(key, fn, *args, **kwargs):
    if key not in _CERTS:
        _CERTS[key] = timed(fn, *args, **kwargs)
    return _CERTS[key]


@pytest.mark.parametrize("l", [1, 2])
def test_c1_sufficiency(report, l):
    cert, secs = timed(verify_sufficiency, l, 10000)
    r1, r2, m = family_parameters(l)
    ok = cert.passed and secs < 2.0 and (cert.parameters["r1"], cert.parameters["r2"],
                                         cert.parameters["m"]) == (r1, r2, m)
    report(f"C1 sufficiency l={l} horizon=10000", ok, f"{cert.checks} {secs:.2f}s")
    assert ok


def test_c2_necessity(report):
    even, t_even = cached("even", necessity_search, 70, 8, "even")
    odd, t_odd = cached("odd", necessity_search, 70, 8, "odd")
    _, t_par_e = timed(necessity_search, 70, 8, "even", workers=8)
    _, t_par_o = timed(necessity_search, 70, 8, "odd", workers=8)
    ok = (
        set(even.survivors) == {(6, 7, 14), (30, 31, 62)}
        and set(odd.survivors) == {(3, 10, 14), (15, 46, 62)}
        and even.passed and odd.passed
        and t_even + t_odd < 60 and t_par_e + t_par_o < 10
    )
    report("C2 necessity m_max=70 factor=8", ok,
           f"even={even.survivors} odd={odd.survivors} serial={t_even + t_odd:.1f}s "
           f"8 workers={t_par_e + t_par_o:.1f}s")
    assert ok


def test_c3_claim2(report):
    cert, secs = cached("claim2", claim2_search, 40)
    ok = cert.passed and all(s[:2] == (6, 7) for s in cert.survivors) and secs < 10
    report("C3 claim2 m_max=40", ok, f"{len(cert.survivors)} survivors, all (6,7); {secs:.2f}s")
    assert ok


def test_c4_claim3(report):
    c1, t1 = timed(claim3_verify, 1)
    c2, t2 = timed(claim3_verify, 2)
    from reppart.construction import claim3_sets
    pair = claim3_sets(1)
    explicit = (pair.e_set.members() == [0, 3, 5, 6, 7, 8, 10, 13, 15, 16, 18, 20]
                and pair.f_set.members() == [1, 2, 4, 6, 7, 9, 11, 12, 14, 17, 19])
    ok = c1.passed and c2.passed and explicit and t1 < 1 and t2 < 1
    report("C4 claim3 l=1,2", ok, f"{t1 + t2:.3f}s")
    assert ok


def test_c5_single_progression(report):
    cert, secs = cached("single", single_progression_search, 31, 8)
    zero, zsecs = cached("single_zero", single_progression_search, 16, 8, include_r_zero=True)
    zero_rows = [r for r in zero.rows if r["r"] == 0]
    ok = (
        set(cert.survivors) == {(3, 7), (15, 31)} and cert.passed
        and len(zero_rows) == 15 and all(r["status"] == "UNSAT" for r in zero_rows)
        and secs + zsecs < 20
    )
    report("C5 single progression m_max=31", ok,
           f"survivors={cert.survivors} r=0 UNSAT for m<=16; {secs + zsecs:.2f}s")
    assert ok


def test_c6_thue_morse(report):
    t0 = time.perf_counter()
    lemma5 = all(
        rep_profile(tm_prefix(l).evil, 2 ** (l + 1)) == rep_profile(tm_prefix(l).odious, 2 ** (l + 1))
        for l in range(1, 17)
    )
    bad_a, bad_b = [], []
    for M in range(2, 65537):
        cls, e = digit_chain_classify(M)
        if cls is ChainClass.ALL_IN_A and not (e % 2 == 1 and M == 2 ** e - 1):
            bad_a.append(M)
        elif cls is ChainClass.ALL_IN_B and not (e % 2 == 0 and M == 2 ** e - 1):
            bad_b.append(M)
    secs = time.perf_counter() - t0
    ok = lemma5 and not bad_a and not bad_b and secs < 30
    report("C6a equal A_l/B_l profiles, 1<=l<=16", lemma5)
    report("C6b ALL_IN_A => odd exponent, M=2^e-1, 2<=M<=65536", not bad_a, f"counterexamples={bad_a}")
    report("C6c ALL_IN_B => even exponent, M=2^e-1, 2<=M<=65536", not bad_b, f"counterexamples={bad_b}")
    report("C6 Thue-Morse properties", ok, f"{secs:.1f}s")
    assert ok


def test_c7_oracle_equivalence(report):
    rng = random.Random(20240815)
    failures = 0
    for _ in range(200):
        bound = rng.randint(0, 512)
        density = rng.random()
        s = IntSet.from_members([k for k in range(bound + 1) if rng.random() < density], bound)
        t = IntSet.from_members([k for k in range(bound + 1) if rng.random() < density], bound)
        h = 2 * bound
        prof = rep_profile(s, h)
        conv = oracles.self_convolution_profile(s, h)
        conv_ok = all(
            2 * prof[n] + (s.chi(n // 2) if n % 2 == 0 else 0) == conv[n] for n in range(h + 1)
        )
        if (list(prof.values) != oracles.rep_profile(s, h)
                or list(cross_rep_profile(s, t, h).values) != oracles.cross_profile(s, t, h)
                or not conv_ok):
            failures += 1
    report("C7 oracle equivalence (200 random sets)", failures == 0, f"failures={failures}")
    assert failures == 0


def test_c8_no_branch(report):
    keys = ["even", "odd", "claim2", "single", "single_zero"]
    runs = {
        "even": (necessity_search, (70, 8, "even"), {}),
        "odd": (necessity_search, (70, 8, "odd"), {}),
        "claim2": (claim2_search, (40,), {}),
        "single": (single_progression_search, (31, 8), {}),
        "single_zero": (single_progression_search, (16, 8), {"include_r_zero": True}),
    }
    branches = 0
    for k in keys:
        fn, args, kw = runs[k]
        cert, _ = cached(k, fn, *args, **kw)
        branches += sum(1 for r in cert.rows if r["status"] == "BRANCH" and r.get("r", 1) != 0)
    report("C8 solver determinism", branches == 0, f"BRANCH outcomes={branches}")
    assert branches == 0


def test_c9_performance(report):
    rng = random.Random(9)
    bound = 131072
    s = IntSet.from_members([k for k in range(bound + 1) if rng.random() < 0.5], bound)
    prof, secs = timed(rep_profile, s, 2 * bound)
    members = set(s)
    spot = all(prof[n] == sum(1 for a in members if a < n - a and n - a in members)
                for n in (0, 1, 777, bound, bound + 5, 2 * bound - 1))
    ok = secs < 5 and spot
    report("C9 rep_profile at N=131072", ok, f"{secs:.2f}s spot-checks={spot}")
    assert ok


def _instances(m_max):
    for (r1, r2, m), out in claim2_outcomes(m_max):
        if out.status is Status.UNIQUE:
            yield r1, r2, m, out.c_set
            continue
        c_part, _ = out.partial
        k = out.fail_index
        base = c_part.with_bound(m) | IntSet.from_members([r1, r2], m)
        # complete the undecided tail both ways
        yield r1, r2, m, base | IntSet.interval(k, m, m)
        yield r1, r2, m, base


def test_c10_identity_checker(report):
    total = disagree = equal = 0
    for r1, r2, m, c in _instances(64):
        res = eq_2_5_check(c, r1, r2, m)
        d = companion(c, r1, r2, m)
        direct = rep_profile(c, m) == rep_profile(d, m)
        total += 1
        equal += direct
        disagree += res.equal != direct
    report("C10 identity vs direct comparison (m<=64)", disagree == 0,
           f"instances={total} equal={equal} disagreements={disagree}")
    assert disagree == 0
