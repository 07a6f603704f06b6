"""Evil/odious split of the naturals and the digit-chain predicates."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .intset import IntSet

MAX_LEVEL = 24


class InvalidLevelError(ValueError):
    pass


def is_evil(n: int) -> bool:
    return n.bit_count() % 2 == 0


@dataclass(frozen=True)
class TMPrefix:
    level: int
    evil: IntSet
    odious: IntSet


def evil_mask(level: int) -> int:
    # a_{l+1} = a_l | (~a_l << 2^l) within 2^{l+1} bits
    mask, width = 1, 1
    for _ in range(level):
        mask |= (((1 << width) - 1) ^ mask) << width
        width *= 2
    return mask


def tm_prefix(level: int) -> TMPrefix:
    if level < 1 or level > MAX_LEVEL:
        raise InvalidLevelError(f"level must be in [1, {MAX_LEVEL}], got {level}")
    bound = (1 << level) - 1
    evil = evil_mask(level)
    return TMPrefix(level, IntSet(evil, bound), IntSet(((1 << (bound + 1)) - 1) ^ evil, bound))


def evil_prefix(level: int) -> IntSet:
    return tm_prefix(level).evil


def odious_prefix(level: int) -> IntSet:
    return tm_prefix(level).odious


class ChainClass(enum.Enum):
    ALL_IN_A = "ALL_IN_A"
    ALL_IN_B = "ALL_IN_B"
    MIXED = "MIXED"


def ceil_log2(n: int) -> int:
    if n < 1:
        raise ValueError("ceil_log2 needs n >= 1")
    return (n - 1).bit_length()


def digit_chain_classify(M: int) -> tuple[ChainClass, int]:
    """Classify M-1, M-2, M-4, ..., M-2^(e-1) with e = ceil(log2 M)."""
    if M < 2:
        raise ValueError(f"digit chain needs M >= 2, got {M}")
    e = ceil_log2(M)
    parities = {is_evil(M - (1 << j)) for j in range(e)}
    if parities == {True}:
        return ChainClass.ALL_IN_A, e
    if parities == {False}:
        return ChainClass.ALL_IN_B, e
    return ChainClass.MIXED, e
