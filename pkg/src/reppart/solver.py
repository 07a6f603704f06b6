"""Forced-extension reconstruction of (C, D) from a prescribed intersection.

With 0 placed in C, membership of each k >= 1 is decided by the single
constraint R_C(k) = R_D(k): every pair summing to k other than (0, k) uses
only integers already decided.  Pair counts come from ``mask & reversed``
popcounts, so a sweep to horizon H costs O(H^2 / w).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .intset import IntSet


class InvalidSpecError(ValueError):
    pass


class Kind(enum.Enum):
    FINITE = "finite"
    SINGLE = "single"
    PAIR = "pair"


@dataclass(frozen=True)
class ProgressionSpec:
    kind: Kind
    members: tuple[int, ...] = ()
    r: int = 0
    m: int = 0
    r1: int = 0
    r2: int = 0

    @classmethod
    def finite(cls, members) -> "ProgressionSpec":
        return cls(Kind.FINITE, members=tuple(sorted(set(members))))

    @classmethod
    def single(cls, r: int, m: int) -> "ProgressionSpec":
        return cls(Kind.SINGLE, r=r, m=m)

    @classmethod
    def pair(cls, r1: int, r2: int, m: int) -> "ProgressionSpec":
        return cls(Kind.PAIR, r1=r1, r2=r2, m=m)

    def validate(self):
        if self.kind is Kind.FINITE:
            if any(x < 0 for x in self.members):
                raise InvalidSpecError("negative member in finite intersection")
        elif self.kind is Kind.SINGLE:
            if self.m < 1 or not 0 <= self.r < self.m:
                raise InvalidSpecError(f"single progression needs 0 <= r < m, got r={self.r} m={self.m}")
        elif not 0 < self.r1 < self.r2 < self.m:
            raise InvalidSpecError(
                f"pair progression needs 0 < r1 < r2 < m, got r1={self.r1} r2={self.r2} m={self.m}"
            )

    def contains(self, k: int) -> bool:
        if self.kind is Kind.FINITE:
            return k in self.members
        if self.kind is Kind.SINGLE:
            return k >= self.r and (k - self.r) % self.m == 0
        return k % self.m in (self.r1, self.r2) and k >= self.r1

    def members_upto(self, horizon: int) -> IntSet:
        if self.kind is Kind.FINITE:
            return IntSet.from_members([x for x in self.members if x <= horizon], horizon)
        starts = (self.r,) if self.kind is Kind.SINGLE else (self.r1, self.r2)
        return IntSet.from_members([k for s in starts for k in range(s, horizon + 1, self.m)], horizon)

    def to_json(self) -> dict:
        if self.kind is Kind.FINITE:
            return {"kind": "finite", "members": list(self.members)}
        if self.kind is Kind.SINGLE:
            return {"kind": "single", "r": self.r, "m": self.m}
        return {"kind": "pair", "r1": self.r1, "r2": self.r2, "m": self.m}


class Status(enum.Enum):
    UNIQUE = "UNIQUE"
    UNSAT = "UNSAT"
    BRANCH = "BRANCH"


@dataclass(frozen=True)
class SolveOutcome:
    status: Status
    horizon: int
    c_set: IntSet | None = None
    d_set: IntSet | None = None
    fail_index: int | None = None
    branch_index: int | None = None
    # decided prefix [0, fail_index - 1] for UNSAT; left out of equality
    partial: tuple[IntSet, IntSet] | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        out: dict = {"status": self.status.value}
        if self.c_set is not None:
            out["c"] = self.c_set.to_json()
            out["d"] = self.d_set.to_json()
        if self.fail_index is not None:
            out["fail_index"] = self.fail_index
        if self.branch_index is not None:
            out["branch_index"] = self.branch_index
        return out


class Option(enum.Enum):
    C = "C"
    D = "D"
    BOTH = "both"


def decision_rule(r_c: int, r_d: int, k_in_intersection: bool, zero_in_d: bool) -> frozenset[Option]:
    """Options for k consistent with R_C(k) = R_D(k).

    r_c, r_d count pairs of decided elements (all < k) summing to k; placing
    k in a set adds the pair (0, k) when 0 is in that set.
    """
    z = 1 if zero_in_d else 0
    if k_in_intersection:
        return frozenset({Option.BOTH}) if r_c + 1 == r_d + z else frozenset()
    opts = set()
    if r_c + 1 == r_d:
        opts.add(Option.C)
    if r_c == r_d + z:
        opts.add(Option.D)
    return frozenset(opts)


def _pairs(mask: int, rev: int, shift: int, k: int) -> int:
    ordered = (mask & (rev >> shift)).bit_count()
    if k % 2 == 0:
        ordered -= (mask >> (k // 2)) & 1
    return ordered // 2


class _Budget:
    def __init__(self, nodes: int):
        self.nodes = nodes


def _extend(state, k0, horizon, inter, zero_in_d, budget):
    """Returns (status, c, d, index) where index is fail/branch k or None."""
    c, d, crev, drev = state
    for k in range(k0, horizon + 1):
        sh = horizon - k
        opts = decision_rule(
            _pairs(c, crev, sh, k), _pairs(d, drev, sh, k), (inter >> k) & 1 == 1, zero_in_d
        )
        if not opts:
            return Status.UNSAT, c, d, k
        if len(opts) == 1:
            (opt,) = opts
            if opt is not Option.D:
                c |= 1 << k
                crev |= 1 << sh
            if opt is not Option.C:
                d |= 1 << k
                drev |= 1 << sh
            continue
        # several options: explore each, bounded by the node budget
        budget.nodes -= 1
        if budget.nodes < 0:
            return Status.BRANCH, c, d, k
        done, fails = [], []
        for opt in sorted(opts, key=lambda o: o.value):
            nc, nd, ncr, ndr = c, d, crev, drev
            if opt is not Option.D:
                nc, ncr = nc | 1 << k, ncr | 1 << sh
            if opt is not Option.C:
                nd, ndr = nd | 1 << k, ndr | 1 << sh
            res = _extend((nc, nd, ncr, ndr), k + 1, horizon, inter, zero_in_d, budget)
            if res[0] is Status.UNSAT:
                fails.append(res)
            else:
                done.append(res)
        if len(done) == 1 and done[0][0] is Status.UNIQUE:
            return done[0]
        if done:
            return Status.BRANCH, c, d, k
        return max(fails, key=lambda r: r[3])
    return Status.UNIQUE, c, d, None


def solve(spec: ProgressionSpec, horizon: int, *, node_budget: int = 1000) -> SolveOutcome:
    spec.validate()
    if horizon < 1:
        raise InvalidSpecError(f"horizon must be >= 1, got {horizon}")
    zero_in_d = spec.contains(0)
    if zero_in_d and not (spec.kind is Kind.SINGLE and spec.r == 0):
        raise InvalidSpecError("0 may lie in the intersection only for the progression mN")
    inter = spec.members_upto(horizon).mask
    c, crev = 1, 1 << horizon
    d, drev = (1, 1 << horizon) if zero_in_d else (0, 0)
    status, c, d, idx = _extend((c, d, crev, drev), 1, horizon, inter, zero_in_d, _Budget(node_budget))
    if status is Status.UNIQUE:
        return SolveOutcome(status, horizon, IntSet(c, horizon), IntSet(d, horizon))
    if status is Status.UNSAT:
        keep = (1 << idx) - 1
        return SolveOutcome(
            status, horizon, fail_index=idx,
            partial=(IntSet(c & keep, idx - 1), IntSet(d & keep, idx - 1)),
        )
    return SolveOutcome(status, horizon, branch_index=idx)
