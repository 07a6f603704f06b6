"""Scenario searches over the partition families, emitting certificates.

Survivors are tuples whose forced extension reaches the full horizon.  A
survivor is a finite-horizon confirmation only; an UNSAT row is a sound
rejection and carries the index of the first violated constraint.
"""

from __future__ import annotations

import csv
import enum
import hashlib
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .construction import (
    claim3_sets,
    family_parameters,
    odd_family_parameters,
    pair_progression_set,
    theorem1_construct,
)
from .intset import IntSet
from .repfn import rep_profile
from .solver import ProgressionSpec, SolveOutcome, Status, solve

HORIZON_LABEL = "finite-horizon confirmation; not a proof of infinite satisfiability"


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    BOTH = "both"


@dataclass
class Certificate:
    scenario: str
    parameters: dict
    checks: dict[str, bool] = field(default_factory=dict)
    survivors: list[tuple] = field(default_factory=list)
    set_digests: dict[str, str] = field(default_factory=dict)
    rows: list[dict] = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    runtime_ms: int = 0

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def outcome(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_json(self, *, include_runtime: bool = True, include_rows: bool = False) -> dict:
        out = {
            "scenario": self.scenario,
            "parameters": self.parameters,
            "outcome": self.outcome,
            "checks": self.checks,
            "survivors": [list(s) for s in self.survivors],
            "set_digests": self.set_digests,
            "notes": self.notes,
        }
        if include_rows:
            out["rows"] = self.rows
        if include_runtime:
            out["runtime_ms"] = self.runtime_ms
        return out

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(**kw), sort_keys=True, indent=2)

    def digest(self) -> str:
        body = json.dumps(self.to_json(include_runtime=False, include_rows=True), sort_keys=True,
                          separators=(",", ":"))
        return hashlib.sha256(body.encode()).hexdigest()

    def to_csv(self) -> str:
        buf = io.StringIO()
        if self.rows:
            writer = csv.DictWriter(buf, fieldnames=list(self.rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(self.rows)
        return buf.getvalue()


def validate_pair(c: IntSet, d: IntSet, intersection: IntSet, horizon: int) -> dict[str, bool]:
    """Recompute the union/intersection/profile contract from scratch."""
    c, d = c.prefix(horizon), d.prefix(horizon)
    return {
        "zero_in_c": 0 in c,
        "union": (c | d).same_members(IntSet.interval(0, horizon)),
        "intersection": (c & d).same_members(intersection.prefix(horizon)),
        "profiles_equal": rep_profile(c, horizon) == rep_profile(d, horizon),
    }


def _timed(fn: Callable[..., Certificate]) -> Callable[..., Certificate]:
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        cert = fn(*args, **kwargs)
        cert.runtime_ms = int((time.perf_counter() - t0) * 1000)
        return cert

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _solve_task(task: tuple[ProgressionSpec, int]) -> SolveOutcome:
    spec, horizon = task
    return solve(spec, horizon)


def run_tasks(tasks: list[tuple[ProgressionSpec, int]], workers: int = 1) -> list[SolveOutcome]:
    """Solve every task; results come back in input order regardless of scheduling."""
    if workers <= 1 or len(tasks) < 64:
        return [_solve_task(t) for t in tasks]
    chunk = max(16, len(tasks) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_solve_task, tasks, chunksize=chunk))


def _levels(fn: Callable[[int], tuple], m_max: int, m_index: int = -1) -> list[tuple]:
    out, l = [], 1
    while fn(l)[m_index] <= m_max:
        out.append(fn(l))
        l += 1
    return out


def _row(key: dict, outcome: SolveOutcome) -> dict:
    return {**key, "status": outcome.status.value,
            "fail_index": "" if outcome.fail_index is None else outcome.fail_index}


@_timed
def verify_sufficiency(l: int, horizon: int) -> Certificate:
    r1, r2, m = family_parameters(l)
    c, d = theorem1_construct(l, horizon)
    inter = pair_progression_set(r1, r2, m, horizon)
    checks = validate_pair(c, d, inter, horizon)
    cert = Certificate("sufficiency", {"l": l, "horizon": horizon, "r1": r1, "r2": r2, "m": m})
    cert.checks = {k: checks[k] for k in ("union", "intersection", "profiles_equal")}
    cert.notes = {"partial_prefix": horizon < r2, "intersection_size": len(c & d)}
    cert.set_digests = {"C": c.digest(), "D": d.digest()}
    return cert


def pair_tuples(m_max: int, parity: Parity) -> list[tuple[int, int, int]]:
    """(r1, r2, m) with 0 < r1 < r2 < m <= m_max, ordered by (m, r1, r2)."""
    out = []
    for m in range(3, m_max + 1):
        for r1 in range(1, m):
            if parity is Parity.EVEN and r1 % 2 or parity is Parity.ODD and r1 % 2 == 0:
                continue
            out.extend((r1, r2, m) for r2 in range(r1 + 1, m))
    return out


def _search_summary(cert: Certificate, keys: list[tuple], outcomes: list[SolveOutcome],
                    intersections: Callable[[tuple, int], IntSet], denom: Callable[[tuple], int],
                    excludes_zero: Callable[[tuple], bool] = lambda key: True):
    revalidated, ratio = True, 0.0
    branches = 0
    for key, out in zip(keys, outcomes):
        if out.status is Status.UNIQUE:
            checks = validate_pair(out.c_set, out.d_set, intersections(key, out.horizon), out.horizon)
            revalidated &= all(checks.values())
            cert.survivors.append(key)
            tag = ",".join(map(str, key))
            cert.set_digests[tag + ":C"] = out.c_set.digest()
            cert.set_digests[tag + ":D"] = out.d_set.digest()
        elif out.status is Status.UNSAT:
            ratio = max(ratio, out.fail_index / denom(key))
        elif excludes_zero(key):
            branches += 1
    cert.survivors.sort()
    cert.checks["survivors_revalidated"] = revalidated
    cert.checks["no_branch"] = branches == 0
    cert.notes["max_fail_index_ratio"] = round(ratio, 6)
    cert.notes["tuples"] = len(keys)
    cert.notes["horizon_label"] = HORIZON_LABEL


@_timed
def necessity_search(m_max: int, horizon_factor: int = 8, parity: Parity | str = Parity.BOTH,
                     workers: int = 1) -> Certificate:
    parity = Parity(parity)
    if m_max < 3 or horizon_factor < 4:
        raise ValueError("need m_max >= 3 and horizon_factor >= 4")
    keys = pair_tuples(m_max, parity)
    outcomes = run_tasks([(ProgressionSpec.pair(*k), horizon_factor * k[2]) for k in keys], workers)
    cert = Certificate("necessity", {"m_max": m_max, "horizon_factor": horizon_factor,
                                     "parity": parity.value})
    cert.rows = [_row({"r1": k[0], "r2": k[1], "m": k[2]}, o) for k, o in zip(keys, outcomes)]
    _search_summary(cert, keys, outcomes, lambda k, h: pair_progression_set(*k, h), lambda k: k[2])

    expected = set()
    if parity is not Parity.ODD:
        expected |= set(_levels(family_parameters, m_max))
    if parity is not Parity.EVEN:
        expected |= set(_levels(odd_family_parameters, m_max))
    cert.notes["expected_family"] = sorted(expected)
    cert.checks["survivors_match_family"] = set(cert.survivors) == expected

    agree = True
    by_key = dict(zip(keys, outcomes))
    for l, fam in enumerate(_levels(family_parameters, m_max), start=1):
        if fam in by_key and by_key[fam].status is Status.UNIQUE:
            out = by_key[fam]
            c, d = theorem1_construct(l, out.horizon)
            agree &= c.same_members(out.c_set) and d.same_members(out.d_set)
    cert.checks["even_survivors_match_construction"] = agree
    return cert


def claim2_tuples(m_max: int) -> list[tuple[int, int, int]]:
    """(r1, r2, m) with r1 even, 0 < r1 < r2 and r1 + r2 <= m <= m_max, ordered by (m, r1, r2)."""
    return [(r1, r2, m) for m in range(1, m_max + 1) for r1 in range(2, m, 2)
            for r2 in range(r1 + 1, m - r1 + 1)]


def claim2_outcomes(m_max: int, workers: int = 1) -> list[tuple[tuple[int, int, int], SolveOutcome]]:
    keys = claim2_tuples(m_max)
    outcomes = run_tasks([(ProgressionSpec.finite([r1, r2]), m) for r1, r2, m in keys], workers)
    return list(zip(keys, outcomes))


@_timed
def claim2_search(m_max: int, workers: int = 1) -> Certificate:
    if m_max < 4:
        raise ValueError("need m_max >= 4")
    pairs = claim2_outcomes(m_max, workers)
    keys = [k for k, _ in pairs]
    outcomes = [o for _, o in pairs]
    cert = Certificate("claim2", {"m_max": m_max})
    cert.rows = [_row({"r1": k[0], "r2": k[1], "m": k[2]}, o) for k, o in pairs]
    _search_summary(cert, keys, outcomes,
                    lambda k, h: IntSet.from_members([k[0], k[1]], h), lambda k: k[2])
    allowed = {f[:2] for f in _levels(family_parameters, 2 * m_max, 0)}
    cert.checks["survivors_in_family"] = all(s[:2] in allowed for s in cert.survivors)
    return cert


def claim3_profile_check(e: IntSet, f: IntSet, bound: int) -> bool:
    return rep_profile(e, bound) == rep_profile(f, bound)


@_timed
def claim3_verify(l: int) -> Certificate:
    pair = claim3_sets(l)
    e, f, bound = pair.e_set, pair.f_set, pair.bound
    inter = IntSet.from_members([pair.r1, pair.r2], bound)
    out = solve(ProgressionSpec.finite([pair.r1, pair.r2]), bound)
    cert = Certificate("claim3", {"l": l, "bound": bound, "r1": pair.r1, "r2": pair.r2})
    contract = validate_pair(e, f, inter, bound)
    cert.checks = {
        "union": contract["union"],
        "intersection": contract["intersection"],
        "profiles_equal": claim3_profile_check(e, f, bound),
        "solver_unique": out.status is Status.UNIQUE,
        "solver_matches_explicit": out.status is Status.UNIQUE and out.c_set == e and out.d_set == f,
    }
    cert.set_digests = {"E": e.digest(), "F": f.digest()}
    return cert


def single_tuples(m_max: int, include_r_zero: bool) -> list[tuple[int, int]]:
    start = 0 if include_r_zero else 1
    return [(r, m) for m in range(2, m_max + 1) for r in range(start, m)]


@_timed
def single_progression_search(m_max: int, horizon_factor: int = 8, include_r_zero: bool = False,
                              workers: int = 1) -> Certificate:
    if m_max < 2:
        raise ValueError("need m_max >= 2")
    keys = single_tuples(m_max, include_r_zero)
    outcomes = run_tasks([(ProgressionSpec.single(r, m), horizon_factor * m) for r, m in keys], workers)
    cert = Certificate("single", {"m_max": m_max, "horizon_factor": horizon_factor,
                                  "include_r_zero": include_r_zero})
    cert.rows = [_row({"r": k[0], "m": k[1]}, o) for k, o in zip(keys, outcomes)]
    _search_summary(
        cert, keys, outcomes,
        lambda k, h: ProgressionSpec.single(*k).members_upto(h), lambda k: k[1],
        excludes_zero=lambda k: k[0] != 0,
    )
    expected = set(_levels(lambda l: (2 ** (2 * l) - 1, 2 ** (2 * l + 1) - 1), m_max))
    cert.notes["expected_family"] = sorted(expected)
    cert.checks["survivors_match_family"] = {s for s in cert.survivors if s[0] != 0} == expected
    if include_r_zero:
        zero_rows = [o for k, o in zip(keys, outcomes) if k[0] == 0]
        cert.checks["r_zero_all_unsat"] = all(o.status is Status.UNSAT for o in zero_rows)
    return cert

