"""Representation functions R_S, R_{C,D} and the truncated generating-function identity.

Counts are exact integers.  Two evaluation paths exist for full profiles:

* word-parallel: for each n, popcount of ``S & reverse(S)`` aligned so that
  bit i pairs with bit n - i.  O(N^2 / w) in total.
* packed multiplication: the characteristic vector is spread into fixed-width
  integer digits (Kronecker substitution) and squared/multiplied as one big
  integer.  Used above ``PACKED_THRESHOLD`` bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .intset import IntSet

PACKED_THRESHOLD = 4096


class InvalidInstanceError(ValueError):
    pass


@dataclass(frozen=True)
class RepProfile:
    horizon: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.horizon + 1:
            raise ValueError("profile length must be horizon + 1")

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def first_difference(self, other: "RepProfile") -> int | None:
        for n, (a, b) in enumerate(zip(self.values, other.values)):
            if a != b:
                return n
        if self.horizon != other.horizon:
            return min(self.horizon, other.horizon) + 1
        return None

    def to_json(self) -> dict:
        return {"horizon": self.horizon, "values": list(self.values)}


def _reverse_bits(mask: int, width: int) -> int:
    """Mirror bit i to bit width - 1 - i."""
    if width <= 0:
        return 0
    return int(format(mask, f"0{width}b")[::-1], 2)


def rep_count(s: IntSet, n: int) -> int:
    """Number of pairs s < s' in ``s`` with s + s' = n."""
    if n < 0:
        return 0
    low = s.mask & ((1 << (n + 1)) - 1)
    ordered = (low & _reverse_bits(low, n + 1)).bit_count()
    if n % 2 == 0:
        ordered -= s.chi(n // 2)
    return ordered // 2


def _digit_bytes(max_value: int) -> int:
    for width in (1, 2, 4, 8):
        if max_value < 1 << (8 * width):
            return width
    raise OverflowError("coefficients too large for packed path")


def _pack(s: IntSet, length: int, width: int) -> int:
    arr = np.zeros(length * width, dtype=np.uint8)
    members = np.fromiter(iter(s), dtype=np.int64, count=len(s))
    arr[members * width] = 1
    return int.from_bytes(arr.tobytes(), "little")


def _packed_convolution(s: IntSet, t: IntSet, horizon: int) -> list[int]:
    width = _digit_bytes(min(len(s), len(t)) + 1)
    length = max(s.bound, t.bound) + 1
    a = _pack(s, length, width)
    prod = a * a if s is t else a * _pack(t, length, width)
    raw = prod.to_bytes(2 * length * width, "little")
    conv = np.frombuffer(raw, dtype=f"<u{width}")
    out = [int(v) for v in conv[: horizon + 1]]
    return out + [0] * (horizon + 1 - len(out))


def _wordwise_convolution(s: IntSet, t: IntSet, horizon: int) -> list[int]:
    width = t.bound + 1
    rev = _reverse_bits(t.mask, width)
    a = s.mask
    out = []
    for n in range(horizon + 1):
        off = n - (width - 1)
        aligned = rev << off if off >= 0 else rev >> -off
        out.append((a & aligned).bit_count())
    return out


def convolution(s: IntSet, t: IntSet, horizon: int, *, threshold: int | None = None) -> list[int]:
    """Coefficients 0..horizon of p_s(x) * p_t(x)."""
    threshold = PACKED_THRESHOLD if threshold is None else threshold
    if not s or not t:
        return [0] * (horizon + 1)
    if max(s.bound, t.bound) >= threshold:
        return _packed_convolution(s, t, horizon)
    return _wordwise_convolution(s, t, horizon)


def rep_profile(s: IntSet, horizon: int, *, threshold: int | None = None) -> RepProfile:
    conv = convolution(s, s, horizon, threshold=threshold)
    values = []
    for n, v in enumerate(conv):
        if n % 2 == 0:
            v -= s.chi(n // 2)
        values.append(v // 2)
    return RepProfile(horizon, tuple(values))


def cross_rep_profile(c: IntSet, d: IntSet, horizon: int, *, threshold: int | None = None) -> RepProfile:
    return RepProfile(horizon, tuple(convolution(c, d, horizon, threshold=threshold)))


@dataclass(frozen=True)
class CoeffVec:
    """Integer polynomial truncated at ``degree``."""

    degree: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coeffs length must be degree + 1")

    @classmethod
    def of(cls, coeffs: Sequence[int], degree: int) -> "CoeffVec":
        c = list(coeffs[: degree + 1])
        return cls(degree, tuple(c + [0] * (degree + 1 - len(c))))

    @classmethod
    def monomial(cls, k: int, degree: int, scale: int = 1) -> "CoeffVec":
        c = [0] * (degree + 1)
        if 0 <= k <= degree:
            c[k] = scale
        return cls(degree, tuple(c))

    @classmethod
    def geometric(cls, top: int, degree: int, step: int = 1) -> "CoeffVec":
        """sum_{i=0}^{top} x^{step*i}, i.e. (1 - x^{step(top+1)}) / (1 - x^step), truncated."""
        c = [0] * (degree + 1)
        for i in range(0, min(top, degree // step) + 1):
            c[i * step] = 1
        return cls(degree, tuple(c))

    @classmethod
    def characteristic(cls, s: IntSet, degree: int) -> "CoeffVec":
        return cls(degree, tuple(s.chi(i) for i in range(degree + 1)))

    def __add__(self, other: "CoeffVec") -> "CoeffVec":
        self._same(other)
        return CoeffVec(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CoeffVec") -> "CoeffVec":
        self._same(other)
        return CoeffVec(self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CoeffVec":
        return CoeffVec(self.degree, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "CoeffVec | int") -> "CoeffVec":
        if isinstance(other, int):
            return CoeffVec(self.degree, tuple(other * a for a in self.coeffs))
        self._same(other)
        prod = np.convolve(np.array(self.coeffs, dtype=object), np.array(other.coeffs, dtype=object))
        return CoeffVec.of([int(v) for v in prod], self.degree)

    __rmul__ = __mul__

    def times_x(self, k: int) -> "CoeffVec":
        return CoeffVec.of([0] * k + list(self.coeffs), self.degree)

    def at_square(self) -> "CoeffVec":
        """p(x^2), truncated at the same degree."""
        c = [0] * (self.degree + 1)
        for i, a in enumerate(self.coeffs):
            if 2 * i > self.degree:
                break
            c[2 * i] = a
        return CoeffVec(self.degree, tuple(c))

    def first_difference(self, other: "CoeffVec") -> int | None:
        self._same(other)
        for i, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if a != b:
                return i
        return None

    def _same(self, other: "CoeffVec"):
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch {self.degree} != {other.degree}")

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": list(self.coeffs)}


class IdentityResult(NamedTuple):
    equal: bool
    first_mismatch: int | None
    lhs: CoeffVec
    rhs: CoeffVec


def companion(c: IntSet, r1: int, r2: int, m: int) -> IntSet:
    """D = ([0, m] minus C) plus {r1, r2}."""
    full = IntSet.interval(0, m)
    return (full - c.with_bound(m)) | IntSet.from_members([r1, r2], m)


def eq_2_5_sides(c: IntSet, r1: int, r2: int, m: int) -> tuple[CoeffVec, CoeffVec]:
    """Both sides of the identity equivalent to R_C = R_D on [0, m].

    lhs = (2 p_C(x^2))_m
    rhs = (G(x^2) + 2 p_C x^r1 + 2 p_C x^r2 + 2 p_C G - G^2
           - 2 x^r1 G - 2 x^r2 G - 2 x^(r1+r2))_m
    with G = 1 + x + ... + x^m.
    """
    if m < 0 or not 0 < r1 < r2 <= m:
        raise InvalidInstanceError(f"need 0 < r1 < r2 <= m, got r1={r1} r2={r2} m={m}")
    if c and c.max() > m:
        raise InvalidInstanceError(f"C has members above m={m}")
    if 0 not in c:
        raise InvalidInstanceError("0 must belong to C")
    if r1 not in c or r2 not in c:
        raise InvalidInstanceError("r1 and r2 must belong to C (they lie in C and D)")
    p = CoeffVec.characteristic(c, m)
    g = CoeffVec.geometric(m, m)
    g_sq = CoeffVec.geometric(m, m, step=2)
    lhs = 2 * p.at_square()
    rhs = (
        g_sq
        + 2 * p.times_x(r1)
        + 2 * p.times_x(r2)
        + 2 * (p * g)
        - g * g
        - 2 * g.times_x(r1)
        - 2 * g.times_x(r2)
        - CoeffVec.monomial(r1 + r2, m, 2)
    )
    return lhs, rhs


def eq_2_5_check(c: IntSet, r1: int, r2: int, m: int) -> IdentityResult:
    lhs, rhs = eq_2_5_sides(c, r1, r2, m)
    diff = lhs.first_difference(rhs)
    return IdentityResult(diff is None, diff, lhs, rhs)
