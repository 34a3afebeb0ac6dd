"""Conjugacy-class arithmetic in symmetric groups via cycle types.

A class of S_n is a partition of n (parts descending, fixed points
included).  Class size, parity, powers and the maximal-cyclic test are
all decided exactly at this level, which keeps S_n computations feasible
far past the point where element enumeration stops.
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import factorial, gcd, lcm

CycleType = tuple[int, ...]


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[CycleType, ...]:
    """All partitions of n, parts descending, in lexicographic order."""

    def gen(remaining: int, cap: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return tuple(gen(n, n))


def type_order(t: CycleType) -> int:
    return lcm(*t) if t else 1


def type_sign(t: CycleType) -> int:
    n = sum(t)
    return -1 if (n - len(t)) % 2 else 1


def type_size(t: CycleType) -> int:
    """Number of permutations of this cycle type in S_n."""
    n = sum(t)
    centralizer = 1
    mult: dict[int, int] = {}
    for part in t:
        centralizer *= part
        mult[part] = mult.get(part, 0) + 1
    for m in mult.values():
        centralizer *= factorial(m)
    return factorial(n) // centralizer


def type_power(t: CycleType, k: int) -> CycleType:
    """Cycle type of sigma**k for sigma of type t."""
    out: list[int] = []
    for part in t:
        g = gcd(part, k)
        out.extend([part // g] * g)
    return tuple(sorted(out, reverse=True))


def type_powers(t: CycleType) -> frozenset[CycleType]:
    return frozenset(type_power(t, k) for k in range(1, type_order(t) + 1))


def is_rational_type(t: CycleType) -> bool:
    """True when every coprime power has the same type (always, in S_n)."""
    o = type_order(t)
    return all(type_power(t, k) == t for k in range(1, o + 1) if gcd(k, o) == 1)


def is_maximal_cyclic_type(t: CycleType) -> bool:
    """No class of strictly larger element order powers onto t.

    Exact class-level criterion: elements of type t generate maximal
    cyclic subgroups iff no type s with lcm(s) > lcm(t) satisfies
    s**k = t for some k.
    """
    n = sum(t)
    o = type_order(t)
    for s in partitions(n):
        so = type_order(s)
        if so <= o:
            continue
        for k in range(2, so + 1):
            if type_power(s, k) == t:
                return False
    return True


def non_power_pairwise(types) -> bool:
    """No listed type is a power of another listed type."""
    types = list(types)
    for i, a in enumerate(types):
        for j, b in enumerate(types):
            if i != j and a in type_powers(b):
                return False
    return True


def format_type(t: CycleType) -> str:
    """Bracket notation with ascending parts, e.g. [1^2 6^1]."""
    mult: dict[int, int] = {}
    for part in t:
        mult[part] = mult.get(part, 0) + 1
    inner = " ".join(f"{part}^{mult[part]}" for part in sorted(mult))
    return f"[{inner}]"


_PART_RE = re.compile(r"(\d+)(?:\^(\d+))?")


def parse_type(text: str) -> CycleType:
    body = text.strip().strip("[]")
    parts: list[int] = []
    for m in _PART_RE.finditer(body):
        part = int(m.group(1))
        mult = int(m.group(2) or 1)
        parts.extend([part] * mult)
    if not parts:
        raise ValueError(f"cannot parse cycle type {text!r}")
    return tuple(sorted(parts, reverse=True))


def canonical_permutation(t: CycleType) -> tuple[int, ...]:
    """A concrete 0-based permutation of this type (fixed points first)."""
    n = sum(t)
    out = list(range(n))
    offset = sum(1 for part in t if part == 1)
    for part in sorted(p for p in t if p > 1):
        for i in range(part):
            out[offset + i] = offset + (i + 1) % part
        offset += part
    return tuple(out)
