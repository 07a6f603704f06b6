"""Doubling step and the explicit pairs built from it."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .intset import IntSet, difference_set_contains
from .thue_morse import tm_prefix


class LemmaHypothesisError(ValueError):
    pass


class StepResult(NamedTuple):
    c: IntSet
    d: IntSet
    union_disjoint: bool  # also: intersection grows by exactly (C0 & D0) + t


def chen_lev_step(c0: IntSet, d0: IntSet, t: int) -> StepResult:
    """C1 = C0 | (t + D0), D1 = D0 | (t + C0).

    Requires t outside (C0 - D0) and (D0 - C0); raises otherwise.
    """
    if difference_set_contains(c0, d0, t):
        raise LemmaHypothesisError(f"{t} lies in C0 - D0")
    if difference_set_contains(d0, c0, t):
        raise LemmaHypothesisError(f"{t} lies in D0 - C0")
    clean = not (difference_set_contains(c0, c0, t) or difference_set_contains(d0, d0, t))
    return StepResult(c0 | d0.shift(t), d0 | c0.shift(t), clean)


@dataclass(frozen=True)
class DoublingState:
    step_index: int
    c_set: IntSet
    d_set: IntSet
    step_length: int


def step_length(l: int, i: int) -> int:
    if i <= 2 * l - 1:
        return 2 ** (i + 1)
    if i == 2 * l:
        return 2 ** (2 * l + 1) - 2
    return 2 ** (i + 1) - 2 ** (i - 2 * l)


def theorem1_lengths(l: int, count: int) -> list[int]:
    if l < 1 or count < 1:
        raise ValueError("need l >= 1 and count >= 1")
    return [step_length(l, i) for i in range(count)]


def family_parameters(l: int) -> tuple[int, int, int]:
    """(r1, r2, m) of the even-r1 family at level l."""
    return 2 ** (2 * l + 1) - 2, 2 ** (2 * l + 1) - 1, 2 ** (2 * l + 2) - 2


def odd_family_parameters(l: int) -> tuple[int, int, int]:
    """(r1, r2, m) of the odd-r1 family at level l."""
    return 2 ** (2 * l) - 1, 2 ** (2 * l + 1) + 2 ** (2 * l) - 2, 2 ** (2 * l + 2) - 2


def doubling_states(l: int, horizon: int):
    """Yield C_i, D_i until the next offset exceeds ``horizon``.

    Later steps only add elements >= their offset, so the last state is
    final on [0, horizon].
    """
    c, d = IntSet.from_members([0], 1), IntSet.from_members([1], 1)
    i = 0
    while True:
        t = step_length(l, i)
        yield DoublingState(i, c, d, t)
        if t > horizon:
            return
        c, d, _ = chen_lev_step(c, d, t)
        i += 1


def theorem1_construct(l: int, horizon: int) -> tuple[IntSet, IntSet]:
    if l < 1:
        raise ValueError("l must be >= 1")
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    *_, last = doubling_states(l, horizon)
    return last.c_set.prefix(horizon), last.d_set.prefix(horizon)


def pair_progression_set(r1: int, r2: int, m: int, horizon: int) -> IntSet:
    """((r1 + mN) | (r2 + mN)) & [0, horizon]."""
    members = [k for r in (r1, r2) for k in range(r, horizon + 1, m)]
    return IntSet.from_members(members, horizon)


@dataclass(frozen=True)
class ClaimThreePair:
    level: int
    e_set: IntSet
    f_set: IntSet
    bound: int

    @property
    def r1(self) -> int:
        return 2 ** (2 * self.level + 1) - 2

    @property
    def r2(self) -> int:
        return self.r1 + 1


def claim3_sets(l: int) -> ClaimThreePair:
    if l < 1:
        raise ValueError("l must be >= 1")
    tm = tm_prefix(2 * l + 1)
    a, b = tm.evil, tm.odious
    base = 2 ** (2 * l + 1) - 2
    bound = 3 * 2 ** (2 * l + 1) - 4
    head = 2 ** (2 * l + 1) - 3
    e = (
        a
        | b.shift(base)
        | b.prefix(head).shift(2 ** (2 * l + 2) - 2)
        | IntSet.from_members([bound], bound)
    )
    f = a.shift(base) | b | a.prefix(head).shift(2 ** (2 * l + 2) - 2)
    return ClaimThreePair(l, e.with_bound(bound), f.with_bound(bound), bound)
