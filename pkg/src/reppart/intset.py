"""Bounded sets of nonnegative integers backed by a Python int bitmask.

Bit ``k`` of the mask is set iff ``k`` is a member.  Every set carries an
explicit inclusive ``bound``; truncation and companion-set formation depend
on it, so it is never inferred from the members.
"""

from __future__ import annotations

import hashlib
import json
from typing import Iterable, Iterator


class OutOfRangeError(ValueError):
    pass


class IntSet:
    __slots__ = ("_mask", "_bound")

    def __init__(self, mask: int, bound: int):
        if bound < 0:
            raise OutOfRangeError(f"negative bound {bound}")
        if mask < 0 or mask.bit_length() > bound + 1:
            raise OutOfRangeError(f"mask has members above bound {bound}")
        self._mask = mask
        self._bound = bound

    @classmethod
    def from_members(cls, elems: Iterable[int], bound: int) -> "IntSet":
        mask = 0
        for e in elems:
            if e < 0 or e > bound:
                raise OutOfRangeError(f"element {e} outside [0, {bound}]")
            mask |= 1 << e
        return cls(mask, bound)

    @classmethod
    def interval(cls, lo: int, hi: int, bound: int | None = None) -> "IntSet":
        """The set [lo, hi]; empty when hi < lo."""
        bound = hi if bound is None else bound
        if hi < lo:
            return cls(0, max(bound, 0))
        return cls(((1 << (hi - lo + 1)) - 1) << lo, bound)

    @classmethod
    def from_json(cls, obj: dict) -> "IntSet":
        return cls.from_members(obj["members"], obj["bound"])

    @property
    def bound(self) -> int:
        return self._bound

    @property
    def mask(self) -> int:
        return self._mask

    def chi(self, k: int) -> int:
        if k < 0:
            return 0
        return (self._mask >> k) & 1

    def __contains__(self, k: object) -> bool:
        return isinstance(k, int) and self.chi(k) == 1

    def __iter__(self) -> Iterator[int]:
        mask = self._mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def members(self) -> list[int]:
        return list(self)

    def __len__(self) -> int:
        return self._mask.bit_count()

    def __bool__(self) -> bool:
        return self._mask != 0

    def max(self) -> int:
        if not self._mask:
            raise ValueError("max of empty IntSet")
        return self._mask.bit_length() - 1

    def min(self) -> int:
        if not self._mask:
            raise ValueError("min of empty IntSet")
        return (self._mask & -self._mask).bit_length() - 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntSet):
            return NotImplemented
        return self._bound == other._bound and self._mask == other._mask

    def __hash__(self) -> int:
        return hash((self._bound, self._mask))

    def same_members(self, other: "IntSet") -> bool:
        """Equality ignoring the declared bound."""
        return self._mask == other._mask

    def shift(self, t: int) -> "IntSet":
        if t < 0:
            raise OutOfRangeError(f"negative shift {t}")
        return IntSet(self._mask << t, self._bound + t)

    def union(self, other: "IntSet") -> "IntSet":
        return IntSet(self._mask | other._mask, max(self._bound, other._bound))

    def intersect(self, other: "IntSet") -> "IntSet":
        return IntSet(self._mask & other._mask, max(self._bound, other._bound))

    def difference(self, other: "IntSet") -> "IntSet":
        return IntSet(self._mask & ~other._mask, self._bound)

    __or__ = union
    __and__ = intersect
    __sub__ = difference

    def prefix(self, x: int) -> "IntSet":
        """Members <= x, re-bounded at x."""
        if x < 0:
            raise OutOfRangeError(f"negative prefix bound {x}")
        return IntSet(self._mask & ((1 << (x + 1)) - 1), x)

    def with_bound(self, bound: int) -> "IntSet":
        return IntSet(self._mask, bound)

    def to_json(self) -> dict:
        return {"bound": self._bound, "members": self.members()}

    def canonical_json(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"

    def __repr__(self) -> str:
        return f"IntSet({self}, bound={self._bound})"


def from_members(elems: Iterable[int], bound: int) -> IntSet:
    return IntSet.from_members(elems, bound)


def shift(s: IntSet, t: int) -> IntSet:
    return s.shift(t)


def union(s: IntSet, t: IntSet) -> IntSet:
    return s.union(t)


def intersect(s: IntSet, t: IntSet) -> IntSet:
    return s.intersect(t)


def prefix(s: IntSet, x: int) -> IntSet:
    return s.prefix(x)


def difference_set_contains(s: IntSet, t: IntSet, diff: int) -> bool:
    """True iff some a in s and b in t satisfy a - b == diff."""
    if diff >= 0:
        return ((t.mask << diff) & s.mask) != 0
    return ((s.mask << -diff) & t.mask) != 0
