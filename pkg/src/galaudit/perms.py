"""Permutations as 0-based image tuples.

A permutation of degree n is a tuple p of length n with p[i] the image
of point i.  Composition is right-to-left: compose(p, q) applies q
first.  The JSON wire format is 1-based image lists; cycle-notation
strings like "(1 2)(3 4)" are accepted on input.
"""

from __future__ import annotations

import re
from math import lcm

Perm = tuple[int, ...]


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def is_perm(p: tuple) -> bool:
    return sorted(p) == list(range(len(p)))


def compose(p: Perm, q: Perm) -> Perm:
    """p after q: (p * q)(i) = p(q(i))."""
    return tuple(p[x] for x in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def conjugate(p: Perm, g: Perm) -> Perm:
    """g p g^{-1}."""
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[g[i]] = g[x]
    return tuple(out)


def perm_power(p: Perm, k: int) -> Perm:
    n = len(p)
    if k < 0:
        p = inverse(p)
        k = -k
    out = [0] * n
    for cycle in cycles(p, include_fixed=True):
        m = len(cycle)
        for pos, pt in enumerate(cycle):
            out[pt] = cycle[(pos + k) % m]
    return tuple(out)


def cycles(p: Perm, include_fixed: bool = False) -> list[tuple[int, ...]]:
    """Disjoint cycles, each starting at its minimum, sorted by start."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = p[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = p[x]
        if len(cyc) > 1 or include_fixed:
            out.append(tuple(cyc))
    return out


def cycle_type(p: Perm) -> tuple[int, ...]:
    """Cycle lengths including fixed points, sorted descending."""
    return tuple(sorted((len(c) for c in cycles(p, include_fixed=True)), reverse=True))


def perm_order(p: Perm) -> int:
    return lcm(*(len(c) for c in cycles(p, include_fixed=True))) if p else 1


def sign(p: Perm) -> int:
    return -1 if (len(p) - len(cycles(p, include_fixed=True))) % 2 else 1


def from_cycles(degree: int, cycle_list) -> Perm:
    out = list(range(degree))
    for cyc in cycle_list:
        m = len(cyc)
        for pos in range(m):
            out[cyc[pos]] = cyc[(pos + 1) % m]
    return tuple(out)


def embed(p: Perm, offset: int, total: int) -> Perm:
    """Place p on points [offset, offset+len(p)), identity elsewhere."""
    out = list(range(total))
    for i, x in enumerate(p):
        out[offset + i] = offset + x
    return tuple(out)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(spec, degree: int) -> Perm:
    """Parse a 1-based image list or a cycle-notation string."""
    if isinstance(spec, str):
        text = spec.strip()
        if not text or text == "()":
            return identity(degree)
        chunks = _CYCLE_RE.findall(text)
        if not chunks or _CYCLE_RE.sub("", text).strip():
            raise ValueError(f"cannot parse permutation {spec!r}")
        cyc_list = []
        for chunk in chunks:
            pts = [int(t) - 1 for t in re.split(r"[,\s]+", chunk.strip()) if t]
            if any(not 0 <= pt < degree for pt in pts):
                raise ValueError(f"point out of range in {spec!r}")
            if len(set(pts)) != len(pts):
                raise ValueError(f"repeated point in {spec!r}")
            if pts:
                cyc_list.append(tuple(pts))
        return from_cycles(degree, cyc_list)
    images = tuple(int(x) - 1 for x in spec)
    if len(images) != degree or not is_perm(images):
        raise ValueError(f"{spec!r} is not a permutation of 1..{degree}")
    return images


def to_images(p: Perm) -> list[int]:
    """1-based image list for JSON output."""
    return [x + 1 for x in p]


def format_cycles(p: Perm) -> str:
    cyc = cycles(p)
    if not cyc:
        return "()"
    return "".join("(" + " ".join(str(pt + 1) for pt in c) + ")" for c in cyc)
