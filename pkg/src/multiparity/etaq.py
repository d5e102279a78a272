"""Euler products, eta powers and multipartition parity series mod 2."""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import lru_cache

from .gf2series import Gf2Series, dilate, invert, mul

_BASE_BLOCK = 256


@dataclass(frozen=True)
class EtaPowerSpec:
    """The series prod_{i>=1} (1 - q^(d*i))^e reduced mod 2."""

    d: int
    e: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"dilation d must be >= 1, got {self.d}")


def pentagonal_numbers(limit: int) -> list:
    """Generalized pentagonal numbers k(3k-1)/2, k in Z, that are <= limit, ascending."""
    out = [0]
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > limit:
            break
        out.append(g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= limit:
            out.append(g2)
        k += 1
    return out


@lru_cache(maxsize=32)
def euler_series(N: int) -> Gf2Series:
    """prod (1 - q^i) mod 2, supported on the generalized pentagonal numbers."""
    if N < 0:
        raise ValueError("N must be non-negative")
    return Gf2Series.from_exponents(pentagonal_numbers(N), N)


def _positive_power(e: int, N: int) -> Gf2Series:
    # f^(2^j)(q) = f(q^(2^j)) mod 2: multiply one dilated Euler series per set bit.
    result = None
    j = 0
    while e:
        if e & 1:
            term = Gf2Series.from_exponents((g << j for g in pentagonal_numbers(N >> j)), N)
            result = term if result is None else mul(result, term)
        e >>= 1
        j += 1
    return result if result is not None else Gf2Series.one(N)


def eta_power(spec: EtaPowerSpec, N: int) -> Gf2Series:
    """prod (1 - q^(d*i))^e mod 2 to degree N."""
    if N < 0:
        raise ValueError("N must be non-negative")
    d, e = spec.d, spec.e
    if d > 1:
        return _dilate_to(eta_power(EtaPowerSpec(1, e), N // d), d, N)
    if e >= 0:
        return _positive_power(e, N)
    return invert(_positive_power(-e, N))


def _dilate_to(f: Gf2Series, d: int, N: int) -> Gf2Series:
    """Place f(q^d) in a series truncated at N (f must reach degree N // d)."""
    return dilate(Gf2Series(f.bits, N), d)


def partition_parity_recurrence(N: int) -> Gf2Series:
    """p(n) mod 2 for n <= N from Euler's pentagonal recurrence.

    Mod 2 the signs vanish and p(n) = XOR of p(n - g) over positive
    generalized pentagonal g <= n.  The recurrence is evaluated by
    divide and conquer: the left half of a block is solved first, its
    contribution to the right half is pushed as a batch of shifted XORs, and
    blocks of at most 256 degrees are finished sequentially.  No series
    inversion is involved.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    offsets = pentagonal_numbers(N)[1:]
    small = 0
    for g in offsets:
        if g >= _BASE_BLOCK:
            break
        small |= 1 << (g - 1)
    window = (1 << _BASE_BLOCK) - 1

    def solve(lo: int, hi: int, acc: int) -> int:
        size = hi - lo
        if size <= _BASE_BLOCK:
            out = 0
            rev = 0  # bit i holds p(n - 1 - i)
            for i in range(size):
                if lo + i == 0:
                    bit = 1
                else:
                    bit = ((acc >> i) & 1) ^ ((rev & small & ((1 << i) - 1)).bit_count() & 1)
                out |= bit << i
                rev = ((rev << 1) | bit) & window
            return out
        half = size // 2
        left = solve(lo, lo + half, acc & ((1 << half) - 1))
        push = 0
        for g in offsets:
            if g >= size:
                break
            push ^= left << g
        right_acc = ((acc ^ push) >> half) & ((1 << (size - half)) - 1)
        right = solve(lo + half, hi, right_acc)
        return left | (right << half)

    depth = max(64, (N + 1).bit_length() + 16)
    if sys.getrecursionlimit() < depth:
        sys.setrecursionlimit(depth)
    return Gf2Series(solve(0, N + 1, 0), N)


def multipartition_product(t: int, N: int, base: Gf2Series | None = None) -> Gf2Series:
    """p_t(n) mod 2 as the product of dilated partition parity series.

    P(q)^t = prod over set bits j of t of P(q^(2^j)) mod 2.  ``base`` is the
    t = 1 series (computed by the recurrence when omitted).
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if base is None:
        base = partition_parity_recurrence(N)
    result = None
    j = 0
    while t:
        if t & 1:
            term = dilate(base.truncate(N), 1 << j)
            result = term if result is None else mul(result, term)
        t >>= 1
        j += 1
    return result


def multipartition_series(t: int, N: int, method: str = "product") -> Gf2Series:
    """p_t(n) mod 2 for n <= N.

    ``method`` is ``"product"`` (recurrence for t = 1, then dilated products)
    or ``"inversion"`` (Newton inversion of the Euler power).
    """
    if t < 1:
        raise ValueError("t must be >= 1 (t = 0 is not supported)")
    if N < 0:
        raise ValueError("N must be non-negative")
    if method == "product":
        return multipartition_product(t, N)
    if method == "inversion":
        return eta_power(EtaPowerSpec(1, -t), N)
    raise ValueError(f"unknown method {method!r}")
