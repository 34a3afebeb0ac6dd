"""Shared test utilities: independent brute-force oracles and small
group constructions that do not reuse the library's own algorithms."""

from __future__ import annotations

from itertools import product

from galaudit.groups import GroupDescriptor, PermGroup
from galaudit.perms import compose, conjugate, inverse


def group_from_mul_table(elements, mul, generators) -> PermGroup:
    """Left-regular permutation representation from a multiplication rule."""
    els = list(elements)
    index = {e: i for i, e in enumerate(els)}
    gens = []
    for g in generators:
        gens.append(tuple(index[mul(g, e)] for e in els))
    return PermGroup(len(els), gens, max_order=len(els) + 1)


def heisenberg27() -> PermGroup:
    els = [(a, b, c) for a in range(3) for b in range(3) for c in range(3)]

    def mul(x, y):
        return ((x[0] + y[0]) % 3, (x[1] + y[1]) % 3, (x[2] + y[2] + x[0] * y[1]) % 3)

    return group_from_mul_table(els, mul, [(1, 0, 0), (0, 1, 0)])


def semidirect_7_3() -> PermGroup:
    """(Z/7) : Z/3 of order 21, with the order-3 action by 2."""
    els = [(a, b) for a in range(7) for b in range(3)]

    def mul(x, y):
        return ((x[0] + y[0] * pow(2, x[1], 7)) % 7, (x[1] + y[1]) % 3)

    return group_from_mul_table(els, mul, [(1, 0), (0, 1)])


def semidirect_25_3() -> PermGroup:
    """(Z/5)^2 : Z/3 of order 75 with an irreducible order-3 action."""
    els = [(a, b, c) for a in range(5) for b in range(5) for c in range(3)]

    def act(v, k):
        a, b = v
        for _ in range(k % 3):
            a, b = (-b) % 5, (a - b) % 5  # matrix [[0,-1],[1,-1]], order 3
        return a, b

    def mul(x, y):
        va = (x[0], x[1])
        vb = act((y[0], y[1]), x[2])
        return ((va[0] + vb[0]) % 5, (va[1] + vb[1]) % 5, (x[2] + y[2]) % 3)

    return group_from_mul_table(els, mul, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def semidirect_7_9() -> PermGroup:
    """(Z/7) : Z/9 of order 63 (the order-9 factor acting through order 3)."""
    els = [(a, b) for a in range(7) for b in range(9)]

    def mul(x, y):
        return ((x[0] + y[0] * pow(2, x[1] % 3, 7)) % 7, (x[1] + y[1]) % 9)

    return group_from_mul_table(els, mul, [(1, 0), (0, 1)])


# -- independent oracles -------------------------------------------------------


def oracle_conjugacy_partition(G: PermGroup):
    """Conjugacy classes by the definition: all-pairs conjugation scan."""
    els = list(G.elements())
    classes = []
    remaining = set(els)
    while remaining:
        x = min(remaining)
        orbit = {conjugate(x, g) for g in els}
        assert orbit <= remaining
        remaining -= orbit
        classes.append(frozenset(orbit))
    return classes


def oracle_all_subgroups(G: PermGroup):
    """Every subgroup, by closing element sets (breadth-first over the
    subgroup lattice).  Exponential in general; small groups only."""
    from galaudit.groups import closure_of

    els = list(G.elements())
    trivial = frozenset({G.identity()})
    known = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for S in frontier:
            for g in els:
                if g in S:
                    continue
                T = closure_of(G.degree, set(S) | {g}, G.order() + 1)
                if T not in known:
                    known.add(T)
                    nxt.append(T)
        frontier = nxt
    return known


def oracle_normal_subgroups(G: PermGroup):
    els = list(G.elements())
    out = []
    for S in oracle_all_subgroups(G):
        if all(conjugate(x, g) in S for x in S for g in els):
            out.append(tuple(sorted(S)))
    return sorted(out, key=lambda s: (len(s), s))


def oracle_is_maximal_cyclic(G: PermGroup, g) -> bool:
    """Definitional check: no h generates a strictly larger cyclic
    subgroup containing g."""
    from galaudit.groups import closure_of

    gc = closure_of(G.degree, [g], G.order() + 1)
    for h in G.elements():
        hc = closure_of(G.degree, [h], G.order() + 1)
        if gc < hc:
            return False
    return True


def oracle_count_gl_matrices(n: int, q: int) -> int:
    """Count invertible n x n matrices over the prime field F_q directly
    (prime q only; used to pin the GL order for small parameters)."""
    assert n == 2
    count = 0
    for a, b, c, d in product(range(q), repeat=4):
        if (a * d - b * c) % q != 0:
            count += 1
    return count


def abelian_quotient_types(chain) -> set[tuple[int, ...]]:
    """All isomorphism types of quotients of the abelian group with the
    given invariant factors, via per-prime partition containment."""
    from galaudit.arith import prime_factors
    from galaudit.cycletypes import partitions

    primary = {}
    for d in chain:
        for p, e in prime_factors(d).items():
            primary.setdefault(p, []).append(e)
    for p in primary:
        primary[p].sort(reverse=True)

    def subpartitions(lam):
        out = set()
        for mu in partitions(sum(lam)):
            pass
        # all partitions mu with mu_i <= lam_i componentwise
        def rec(i, cap):
            if i == len(lam):
                yield ()
                return
            hi = min(lam[i], cap)
            for part in range(hi, -1, -1):
                for rest in rec(i + 1, part if part else 0):
                    yield ((part,) + rest) if part else rest
        for mu in rec(0, lam[0] if lam else 0):
            out.add(tuple(x for x in mu if x))
        return out

    primes = sorted(primary)
    choices = [sorted(subpartitions(primary[p])) for p in primes]
    out = set()
    for combo in product(*choices):
        width = max((len(mu) for mu in combo), default=0)
        c = []
        for i in range(width):
            d = 1
            for p, mu in zip(primes, combo):
                if i < len(mu):
                    d *= p ** mu[i]
            c.append(d)
        c.reverse()
        out.add(tuple(c))
    return out
