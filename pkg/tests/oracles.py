"""Brute-force references, deliberately free of bit tricks."""

from itertools import product


def popcount_evil(n):
    return bin(n).count("1") % 2 == 0


def rep_count(members, n):
    s = set(members)
    return sum(1 for a in s for b in s if a < b and a + b == n)


def rep_profile(members, horizon):
    s = sorted(set(members))
    out = [0] * (horizon + 1)
    for i, a in enumerate(s):
        for b in s[i + 1:]:
            if a + b <= horizon:
                out[a + b] += 1
    return out


def cross_profile(c, d, horizon):
    c, d = list(c), list(d)
    out = [0] * (horizon + 1)
    for a in c:
        for b in d:
            if a + b <= horizon:
                out[a + b] += 1
    return out


def self_convolution(members, n):
    s = set(members)
    return sum(1 for i in range(n + 1) if i in s and n - i in s)


def self_convolution_profile(members, horizon):
    members = list(members)
    out = [0] * (horizon + 1)
    for a in members:
        for b in members:
            if a + b <= horizon:
                out[a + b] += 1
    return out


def diff_contains(s, t, diff):
    s, t = list(s), list(t)
    return any(a - b == diff for a in s for b in t)


def doubling(c, d, t):
    return set(c) | {x + t for x in d}, set(d) | {x + t for x in c}


def all_partitions(horizon, forced_both):
    """Every (C, D) with 0 in C, C | D = [0, horizon] and C & D = forced_both."""
    both = set(forced_both)
    free = [k for k in range(1, horizon + 1) if k not in both]
    for bits in product((0, 1), repeat=len(free)):
        c = {0} | both
        d = set(both)
        for k, b in zip(free, bits):
            (c if b else d).add(k)
        yield c, d


def equal_profile_partitions(horizon, forced_both):
    return [
        (c, d) for c, d in all_partitions(horizon, forced_both)
        if rep_profile(c, horizon) == rep_profile(d, horizon)
    ]
