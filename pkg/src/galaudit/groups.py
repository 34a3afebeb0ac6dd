"""Exact finite-group engine over permutation representations.

Groups are given by permutation generators and enumerated explicitly up
to a configured bound.  Subsets of a group (subgroups, normal subgroups,
kernels) are passed around as sorted tuples of permutations; membership
tests use frozensets.  Everything is immutable after construction and
every operation is deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial, gcd, lcm

from .arith import is_prime_power, prime_factors
from .config import DEFAULT_LIMITS, Limits
from .errors import InvalidChain, InvalidDescriptor, NotNormal, OrderTooLarge
from .perms import (
    Perm,
    compose,
    conjugate,
    cycle_type,
    embed,
    from_cycles,
    identity,
    inverse,
    is_perm,
    parse_perm,
    perm_order,
    perm_power,
    sign,
    to_images,
)

ElementSet = tuple[Perm, ...]


def _bfs_closure(degree: int, gens: list[Perm], limit: int) -> set[Perm]:
    """Subgroup generated by gens; raises OrderTooLarge past limit."""
    ident = identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    if len(seen) >= limit:
                        raise OrderTooLarge(
                            f"group exceeds enumeration bound {limit}"
                        )
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def generating_subset(degree: int, elements, limit: int) -> list[Perm]:
    """Greedy small generating list for the subgroup spanned by elements."""
    gens: list[Perm] = []
    known: set[Perm] = {identity(degree)}
    for e in sorted(elements):
        if e not in known:
            gens.append(e)
            known = _bfs_closure(degree, gens, limit)
    return gens


def closure_of(degree: int, seed, limit: int) -> frozenset[Perm]:
    """Subgroup generated by an arbitrary element collection."""
    return frozenset(_bfs_closure(degree, generating_subset(degree, seed, limit), limit))


class PermGroup:
    """A finite permutation group on points 0..degree-1.

    Elements are enumerated lazily and cached; the element list is
    sorted, so every downstream computation is reproducible.
    """

    def __init__(self, degree: int, generators, max_order: int | None = None):
        if degree < 1:
            raise InvalidDescriptor("degree must be >= 1")
        gens = []
        for g in generators:
            g = tuple(g)
            if len(g) != degree or not is_perm(g):
                raise InvalidDescriptor(f"{g!r} is not a permutation of degree {degree}")
            if g != identity(degree):
                gens.append(g)
        self.degree = degree
        self.generators: tuple[Perm, ...] = tuple(gens)
        self.max_order = max_order if max_order is not None else DEFAULT_LIMITS.enumeration
        self._elements: tuple[Perm, ...] | None = None
        self._element_set: frozenset[Perm] | None = None
        self._classes: tuple[ConjClass, ...] | None = None
        self._class_index: dict[Perm, int] | None = None
        self._non_maximal: frozenset[Perm] | None = None

    # -- enumeration ------------------------------------------------------

    def elements(self) -> tuple[Perm, ...]:
        if self._elements is None:
            closed = _bfs_closure(self.degree, list(self.generators), self.max_order)
            self._elements = tuple(sorted(closed))
            self._element_set = frozenset(closed)
        return self._elements

    def element_set(self) -> frozenset[Perm]:
        if self._element_set is None:
            self.elements()
        return self._element_set

    def order(self) -> int:
        return len(self.elements())

    def identity(self) -> Perm:
        return identity(self.degree)

    def __contains__(self, p: Perm) -> bool:
        return p in self.element_set()

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, gens={len(self.generators)})"

    # -- elementary structure ---------------------------------------------

    def is_abelian(self) -> bool:
        for a, b in itertools.combinations(self.generators, 2):
            if compose(a, b) != compose(b, a):
                return False
        return True

    def is_trivial(self) -> bool:
        return not self.generators

    def conjugacy_classes(self) -> tuple["ConjClass", ...]:
        """Partition into conjugacy classes.

        Ordered by element order, then class size, then lexicographically
        minimal representative.
        """
        if self._classes is not None:
            return self._classes
        els = self.elements()
        remaining = set(els)
        classes = []
        n = self.order()
        while remaining:
            rep = min(remaining)
            orbit = {rep}
            frontier = [rep]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in self.generators:
                        y = conjugate(x, g)
                        if y not in orbit:
                            orbit.add(y)
                            nxt.append(y)
                frontier = nxt
            remaining -= orbit
            classes.append(
                ConjClass(
                    representative=min(orbit),
                    size=len(orbit),
                    element_order=perm_order(rep),
                    parent_order=n,
                    members=frozenset(orbit),
                )
            )
        classes.sort(key=lambda c: (c.element_order, c.size, c.representative))
        self._classes = tuple(classes)
        self._class_index = {}
        for i, c in enumerate(self._classes):
            for m in c.members:
                self._class_index[m] = i
        return self._classes

    def class_of(self, p: Perm) -> "ConjClass":
        classes = self.conjugacy_classes()
        return classes[self._class_index[p]]

    def center(self) -> ElementSet:
        gens = self.generators
        return tuple(
            sorted(x for x in self.elements() if all(compose(x, g) == compose(g, x) for g in gens))
        )

    def derived_subgroup(self) -> ElementSet:
        """Commutator subgroup: normal closure of generator commutators."""
        gens = self.generators
        if not gens:
            return (self.identity(),)
        comms = set()
        for a in gens:
            for b in gens:
                comms.add(compose(compose(inverse(a), inverse(b)), compose(a, b)))
        current = closure_of(self.degree, comms, self.max_order)
        while True:
            extra = set()
            for g in gens:
                for x in current:
                    y = conjugate(x, g)
                    if y not in current:
                        extra.add(y)
            if not extra:
                return tuple(sorted(current))
            current = closure_of(self.degree, current | extra, self.max_order)

    def is_solvable(self) -> bool:
        current = self
        while True:
            derived = current.derived_subgroup()
            if len(derived) == 1:
                return True
            if len(derived) == current.order():
                return False
            current = subgroup_as_group(current, derived)

    def is_cyclic(self) -> bool:
        n = self.order()
        return any(perm_order(g) == n for g in self.elements())

    def _non_maximal_cyclic(self) -> frozenset[Perm]:
        """Elements lying in a strictly larger cyclic subgroup."""
        if self._non_maximal is None:
            covered = set()
            for h in self.elements():
                o = perm_order(h)
                p = h
                for k in range(2, o + 1):
                    p = compose(p, h)
                    if gcd(k, o) > 1:
                        covered.add(p)  # order(h^k) < order(h)
            self._non_maximal = frozenset(covered)
        return self._non_maximal


@dataclass(frozen=True)
class ConjClass:
    """A conjugacy class with its minimal representative."""

    representative: Perm
    size: int
    element_order: int
    parent_order: int
    members: frozenset[Perm]

    def __repr__(self) -> str:
        return (
            f"ConjClass(type={cycle_type(self.representative)}, size={self.size}, "
            f"order={self.element_order})"
        )

    def to_json(self) -> dict:
        return {
            "representative": to_images(self.representative),
            "size": self.size,
            "element_order": self.element_order,
            "cycle_type": list(cycle_type(self.representative)),
        }


def conjugacy_classes(G: PermGroup) -> tuple[ConjClass, ...]:
    return G.conjugacy_classes()


def element_order(g: Perm) -> int:
    return perm_order(g)


def class_power(C: ConjClass, i: int, G: PermGroup) -> ConjClass:
    """The class of rep**i (independent of the chosen representative)."""
    return G.class_of(perm_power(C.representative, i))


def class_power_closure(C: ConjClass, G: PermGroup) -> frozenset[int]:
    """Indices of all classes arising as powers of C."""
    G.conjugacy_classes()
    out = set()
    p = C.representative
    acc = p
    for _ in range(C.element_order):
        out.add(G._class_index[acc])
        acc = compose(acc, p)
    return frozenset(out)


def is_subgroup(G: PermGroup, subset) -> bool:
    sub = frozenset(subset)
    if G.identity() not in sub:
        return False
    for a in sub:
        if inverse(a) not in sub:
            return False
        for b in sub:
            if compose(a, b) not in sub:
                return False
    return True


def is_normal(G: PermGroup, subset) -> bool:
    sub = frozenset(subset)
    if not sub <= G.element_set():
        return False
    for g in G.generators:
        for x in sub:
            if conjugate(x, g) not in sub:
                return False
    return is_subgroup(G, sub)


def normal_subgroups(G: PermGroup, limits: Limits = DEFAULT_LIMITS) -> tuple[ElementSet, ...]:
    """All normal subgroups, as sorted element tuples.

    Every normal subgroup is the join of the normal closures of the
    conjugacy classes it contains, so closing the class-closure atoms
    under pairwise joins is exhaustive.
    """
    if G.order() > limits.brute_force:
        raise OrderTooLarge(
            f"normal subgroup search limited to order {limits.brute_force}"
        )
    degree = G.degree
    bound = G.order() + 1
    atoms = []
    seen_atoms = set()
    for C in G.conjugacy_classes():
        closure = closure_of(degree, C.members, bound)
        if closure not in seen_atoms:
            seen_atoms.add(closure)
            atoms.append(closure)
    trivial = frozenset({G.identity()})
    normals = {trivial}
    queue = [a for a in atoms if a != trivial]
    normals.update(queue)
    while queue:
        current = queue.pop()
        for atom in atoms:
            if atom <= current:
                continue
            joined = closure_of(degree, current | atom, bound)
            if joined not in normals:
                if len(normals) >= limits.subgroup_cap:
                    raise OrderTooLarge(
                        f"normal subgroup lattice exceeds cap {limits.subgroup_cap}"
                    )
                normals.add(joined)
                queue.append(joined)
    return tuple(sorted((tuple(sorted(s)) for s in normals), key=lambda s: (len(s), s)))


def quotient(G: PermGroup, subset) -> PermGroup:
    """G modulo a normal subgroup, acting faithfully on left cosets."""
    sub = frozenset(subset)
    if not is_normal(G, sub):
        raise NotNormal("quotient requires a normal subgroup")
    els = G.elements()
    coset_of: dict[Perm, int] = {}
    reps: list[Perm] = []
    for x in els:
        if x in coset_of:
            continue
        idx = len(reps)
        reps.append(x)
        for h in sub:
            coset_of[compose(x, h)] = idx
    gens = []
    for g in G.generators:
        gens.append(tuple(coset_of[compose(g, r)] for r in reps))
    return PermGroup(len(reps), gens, max_order=max(len(reps), 2))


def subgroup_as_group(G: PermGroup, subset) -> PermGroup:
    """A subgroup (given as elements) repackaged as its own PermGroup."""
    sub = sorted(subset)
    gens = generating_subset(G.degree, sub, len(sub) + 1)
    H = PermGroup(G.degree, gens, max_order=len(sub) + 1)
    assert H.order() == len(sub), "subset is not closed"
    return H


def abelian_invariants(G: PermGroup) -> tuple[int, ...]:
    """Invariant-factor chain d_1 | d_2 | ... of an abelian group."""
    if not G.is_abelian():
        raise InvalidDescriptor("abelian_invariants needs an abelian group")
    n = G.order()
    if n == 1:
        return ()
    orders = [perm_order(g) for g in G.elements()]
    primary: dict[int, list[int]] = {}
    for p, vmax in prime_factors(n).items():
        # m[j] = log_p #{g : g^(p^j) = 1}; the p-partition follows by differencing:
        # the number of parts >= j equals m[j] - m[j-1].
        m = [0]
        for j in range(1, vmax + 1):
            pj = p**j
            count = sum(1 for o in orders if pj % o == 0)
            e = 0
            while count > 1:
                count //= p
                e += 1
            m.append(e)
        ge = [m[j] - m[j - 1] for j in range(1, vmax + 1)] + [0]
        lam = []
        for j in range(1, vmax + 1):
            lam.extend([j] * (ge[j - 1] - ge[j]))
        lam.sort(reverse=True)
        primary[p] = lam
    width = max(len(v) for v in primary.values())
    chain = []
    for i in range(width):
        d = 1
        for p, lam in primary.items():
            if i < len(lam):
                d *= p ** lam[i]
        chain.append(d)
    chain.reverse()
    return tuple(chain)


def is_dihedral(G: PermGroup) -> int | None:
    """Return n when G is dihedral of order 2n, else None."""
    N = G.order()
    if N % 2:
        return None
    if N == 2:
        return 1
    if N == 4:
        return 2 if abelian_invariants_or_none(G) == (2, 2) else None
    m = N // 2
    for g in G.elements():
        if perm_order(g) != m:
            continue
        C = closure_of(G.degree, [g], N + 1)
        if not is_normal(G, C):
            continue
        ginv = inverse(g)
        for s in G.elements():
            if s in C or compose(s, s) != G.identity():
                continue
            if conjugate(g, s) == ginv:
                return m
    return None


def abelian_invariants_or_none(G: PermGroup) -> tuple[int, ...] | None:
    return abelian_invariants(G) if G.is_abelian() else None


def generates_maximal_cyclic(G: PermGroup, g: Perm) -> bool:
    """True when <g> sits inside no strictly larger cyclic subgroup."""
    if g not in G.element_set():
        raise ValueError("element not in group")
    return g not in G._non_maximal_cyclic()


# -- isomorphism testing ----------------------------------------------------


def _order_profile(G: PermGroup) -> tuple:
    counts: dict[int, int] = {}
    for g in G.elements():
        o = perm_order(g)
        counts[o] = counts.get(o, 0) + 1
    return tuple(sorted(counts.items()))


def _class_profile(G: PermGroup) -> tuple:
    return tuple(sorted((c.element_order, c.size) for c in G.conjugacy_classes()))


def _hom_extends(
    gens1: list[Perm], images: list[Perm], G1: PermGroup, G2: PermGroup, full: bool
) -> bool:
    """Check that gens1 -> images extends to a homomorphism on <gens1>.

    When full is set, additionally require a bijection onto G2.
    """
    id1, id2 = G1.identity(), G2.identity()
    mapping = {id1: id2}
    frontier = [id1]
    while frontier:
        nxt = []
        for x in frontier:
            fx = mapping[x]
            for g, img in zip(gens1, images):
                y = compose(x, g)
                fy = compose(fx, img)
                known = mapping.get(y)
                if known is None:
                    mapping[y] = fy
                    nxt.append(y)
                elif known != fy:
                    return False
        frontier = nxt
    if not full:
        return True
    if len(mapping) != G1.order():
        return False
    return len(set(mapping.values())) == G2.order()


def is_isomorphic(G1: PermGroup, G2: PermGroup, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Exact isomorphism test via generator-image backtracking."""
    n = G1.order()
    if n != G2.order():
        return False
    if n > limits.brute_force:
        raise OrderTooLarge(f"isomorphism test limited to order {limits.brute_force}")
    if n == 1:
        return True
    a1, a2 = G1.is_abelian(), G2.is_abelian()
    if a1 != a2:
        return False
    if a1:
        return abelian_invariants(G1) == abelian_invariants(G2)
    if _order_profile(G1) != _order_profile(G2):
        return False
    if _class_profile(G1) != _class_profile(G2):
        return False
    gens1 = generating_subset(G1.degree, G1.elements(), n + 1)
    keyed: dict[tuple[int, int], list[Perm]] = {}
    for h in G2.elements():
        c = G2.class_of(h)
        keyed.setdefault((c.element_order, c.size), []).append(h)
    candidate_lists = []
    for g in gens1:
        c = G1.class_of(g)
        cands = keyed.get((c.element_order, c.size))
        if not cands:
            return False
        candidate_lists.append(sorted(cands))

    def backtrack(i: int, chosen: list[Perm]) -> bool:
        if i == len(gens1):
            return _hom_extends(gens1, chosen, G1, G2, full=True)
        for cand in candidate_lists[i]:
            chosen.append(cand)
            if _hom_extends(gens1[: i + 1], chosen, G1, G2, full=False):
                if backtrack(i + 1, chosen):
                    return True
            chosen.pop()
        return False

    return backtrack(0, [])


# -- fiber powers ------------------------------------------------------------


@dataclass(frozen=True)
class FiberPower:
    """The subgroup of G^n of tuples agreeing modulo a normal subgroup H.

    N is the kernel of the projection to G/H; N_i additionally kills
    coordinate i.  Both quotient identifications are verified on
    construction.
    """

    base: PermGroup
    kernel: ElementSet
    exponent: int
    group: PermGroup
    big_kernel: ElementSet
    coordinate_kernels: tuple[ElementSet, ...]
    quotient_checks: tuple[bool, ...]

    def decode(self, element: Perm) -> tuple[Perm, ...]:
        d = self.base.degree
        return tuple(
            tuple(x - i * d for x in element[i * d : (i + 1) * d])
            for i in range(self.exponent)
        )


def fiber_power(
    G: PermGroup, H, n: int, limits: Limits = DEFAULT_LIMITS
) -> FiberPower:
    """Construct G_phi^n for phi: G -> G/H and verify its quotients."""
    Hset = frozenset(H)
    if not is_normal(G, Hset):
        raise NotNormal("fiber power kernel must be normal")
    if n < 1:
        raise InvalidDescriptor("fiber power exponent must be >= 1")
    expected = G.order() * len(Hset) ** (n - 1)
    if expected > limits.enumeration:
        raise OrderTooLarge(f"fiber power order {expected} exceeds bound")
    d = G.degree
    total = n * d
    gens: list[Perm] = []
    for g in G.generators:
        gens.append(tuple(i * d + g[x] for i in range(n) for x in range(d)))
    h_gens = generating_subset(d, Hset, len(Hset) + 1)
    for i in range(n):
        for h in h_gens:
            gens.append(embed(h, i * d, total))
    FP = PermGroup(total, gens, max_order=expected)
    assert FP.order() == expected, "fiber power order mismatch"

    def decode(element: Perm) -> tuple[Perm, ...]:
        return tuple(
            tuple(x - i * d for x in element[i * d : (i + 1) * d]) for i in range(n)
        )

    big = []
    coords: list[list[Perm]] = [[] for _ in range(n)]
    ident = identity(d)
    for e in FP.elements():
        blocks = decode(e)
        if all(b in Hset for b in blocks):
            big.append(e)
            for i in range(n):
                if blocks[i] == ident:
                    coords[i].append(e)
    big_t = tuple(sorted(big))
    coords_t = tuple(tuple(sorted(c)) for c in coords)
    checks = []
    GmodH = quotient(G, Hset)
    for i in range(n):
        if not is_normal(FP, coords_t[i]):
            raise NotNormal("coordinate kernel not normal in fiber power")
        checks.append(is_isomorphic(quotient(FP, coords_t[i]), G, limits))
    if not is_normal(FP, big_t):
        raise NotNormal("kernel not normal in fiber power")
    checks.append(is_isomorphic(quotient(FP, big_t), GmodH, limits))
    if not all(checks):
        raise AssertionError("fiber power quotient identification failed")
    return FiberPower(
        base=G,
        kernel=tuple(sorted(Hset)),
        exponent=n,
        group=FP,
        big_kernel=big_t,
        coordinate_kernels=coords_t,
        quotient_checks=tuple(checks),
    )


# -- descriptors -------------------------------------------------------------


@dataclass(frozen=True)
class GroupDescriptor:
    """Structured parameters naming a finite group.

    kind is one of abelian, dihedral, symmetric, alternating, gl, perm,
    product; data is the kind-specific payload, hashable throughout.
    """

    kind: str
    data: tuple

    # constructors ---------------------------------------------------------

    @staticmethod
    def abelian(chain) -> "GroupDescriptor":
        chain = tuple(int(d) for d in chain)
        if not chain:
            raise InvalidChain("abelian descriptor needs at least one factor")
        for d in chain:
            if d < 2:
                raise InvalidChain("invariant factors must be >= 2")
        for a, b in zip(chain, chain[1:]):
            if b % a:
                raise InvalidChain(f"{chain} is not a divisibility chain")
        return GroupDescriptor("abelian", chain)

    @staticmethod
    def dihedral(n: int) -> "GroupDescriptor":
        if n < 1:
            raise InvalidDescriptor("dihedral parameter must be >= 1")
        return GroupDescriptor("dihedral", (int(n),))

    @staticmethod
    def symmetric(n: int) -> "GroupDescriptor":
        if n < 1:
            raise InvalidDescriptor("symmetric parameter must be >= 1")
        return GroupDescriptor("symmetric", (int(n),))

    @staticmethod
    def alternating(n: int) -> "GroupDescriptor":
        if n < 1:
            raise InvalidDescriptor("alternating parameter must be >= 1")
        return GroupDescriptor("alternating", (int(n),))

    @staticmethod
    def gl(n: int, q: int) -> "GroupDescriptor":
        if n < 2:
            raise InvalidDescriptor("gl needs dimension >= 2")
        if is_prime_power(q) is None:
            raise InvalidDescriptor(f"{q} is not a prime power >= 2")
        return GroupDescriptor("gl", (int(n), int(q)))

    @staticmethod
    def perm(degree: int, generators) -> "GroupDescriptor":
        gens = tuple(parse_perm(g, degree) for g in generators)
        return GroupDescriptor("perm", (int(degree), gens))

    @staticmethod
    def product(d1: "GroupDescriptor", d2: "GroupDescriptor") -> "GroupDescriptor":
        return GroupDescriptor("product", (d1, d2))

    # structure ------------------------------------------------------------

    def order(self) -> int | None:
        """Closed-form order when available (perm groups need enumeration)."""
        kind, data = self.kind, self.data
        if kind == "abelian":
            out = 1
            for d in data:
                out *= d
            return out
        if kind == "dihedral":
            return 2 * data[0]
        if kind == "symmetric":
            return factorial(data[0])
        if kind == "alternating":
            n = data[0]
            return max(1, factorial(n) // 2)
        if kind == "gl":
            n, q = data
            out = 1
            for i in range(n):
                out *= q**n - q**i
            return out
        if kind == "product":
            o1, o2 = data[0].order(), data[1].order()
            return None if o1 is None or o2 is None else o1 * o2
        return None

    def abelian_chain(self) -> tuple[int, ...] | None:
        """Invariant factors when the descriptor is visibly abelian."""
        if self.kind == "abelian":
            return self.data
        if self.kind == "dihedral":
            n = self.data[0]
            return {1: (2,), 2: (2, 2)}.get(n)
        if self.kind == "symmetric":
            return {1: (), 2: (2,)}.get(self.data[0])
        if self.kind == "alternating":
            n = self.data[0]
            if n <= 2:
                return ()
            if n == 3:
                return (3,)
            return None
        if self.kind == "product":
            c1 = self.data[0].abelian_chain()
            c2 = self.data[1].abelian_chain()
            if c1 is None or c2 is None:
                return None
            return merge_abelian_chains(c1, c2)
        return None

    def name(self) -> str:
        kind, data = self.kind, self.data
        if kind == "abelian":
            return " x ".join(f"Z/{d}" for d in data)
        if kind == "dihedral":
            return f"D{data[0]}"
        if kind == "symmetric":
            return f"S{data[0]}"
        if kind == "alternating":
            return f"A{data[0]}"
        if kind == "gl":
            return f"GL({data[0]},{data[1]})"
        if kind == "product":
            return f"({data[0].name()}) x ({data[1].name()})"
        return f"perm(degree={data[0]})"

    # serialization ----------------------------------------------------------

    def to_json(self):
        kind, data = self.kind, self.data
        if kind == "abelian":
            return {"abelian": list(data)}
        if kind == "dihedral":
            return {"dihedral": data[0]}
        if kind == "symmetric":
            return {"symmetric": data[0]}
        if kind == "alternating":
            return {"alternating": data[0]}
        if kind == "gl":
            return {"gl": list(data)}
        if kind == "perm":
            degree, gens = data
            return {
                "perm": {"degree": degree, "generators": [to_images(g) for g in gens]}
            }
        return {"product": [data[0].to_json(), data[1].to_json()]}

    @staticmethod
    def from_json(obj) -> "GroupDescriptor":
        if not isinstance(obj, dict) or len(obj) != 1:
            raise InvalidDescriptor(f"bad group descriptor {obj!r}")
        ((key, value),) = obj.items()
        if key == "abelian":
            return GroupDescriptor.abelian(value)
        if key == "dihedral":
            return GroupDescriptor.dihedral(value)
        if key == "symmetric":
            return GroupDescriptor.symmetric(value)
        if key == "alternating":
            return GroupDescriptor.alternating(value)
        if key == "gl":
            return GroupDescriptor.gl(value[0], value[1])
        if key == "perm":
            return GroupDescriptor.perm(value["degree"], value["generators"])
        if key == "product":
            return GroupDescriptor.product(
                GroupDescriptor.from_json(value[0]), GroupDescriptor.from_json(value[1])
            )
        raise InvalidDescriptor(f"unknown group kind {key!r}")


def merge_abelian_chains(c1, c2) -> tuple[int, ...]:
    """Invariant factors of a direct product of two abelian groups."""
    primary: dict[int, list[int]] = {}
    for chain in (c1, c2):
        for d in chain:
            for p, e in prime_factors(d).items():
                primary.setdefault(p, []).append(e)
    for p in primary:
        primary[p].sort(reverse=True)
    width = max((len(v) for v in primary.values()), default=0)
    chain = []
    for i in range(width):
        d = 1
        for p, lam in primary.items():
            if i < len(lam):
                d *= p ** lam[i]
        chain.append(d)
    chain.reverse()
    return tuple(chain)


# -- materialization ---------------------------------------------------------


def materialize(desc: GroupDescriptor, limits: Limits = DEFAULT_LIMITS) -> PermGroup:
    """Faithful permutation representation of the described group."""
    order = desc.order()
    if order is not None and order > limits.enumeration:
        raise OrderTooLarge(f"{desc.name()} has order {order} > {limits.enumeration}")
    kind, data = desc.kind, desc.data
    if kind == "abelian":
        return _materialize_abelian(data, limits)
    if kind == "dihedral":
        return _materialize_dihedral(data[0], limits)
    if kind == "symmetric":
        return _materialize_symmetric(data[0], limits)
    if kind == "alternating":
        return _materialize_alternating(data[0], limits)
    if kind == "gl":
        return _materialize_gl(data[0], data[1], limits)
    if kind == "perm":
        degree, gens = data
        return PermGroup(degree, gens, max_order=limits.enumeration)
    if kind == "product":
        G1 = materialize(data[0], limits)
        G2 = materialize(data[1], limits)
        return direct_product(G1, G2, limits)
    raise InvalidDescriptor(f"unknown kind {kind!r}")


def direct_product(G1: PermGroup, G2: PermGroup, limits: Limits = DEFAULT_LIMITS) -> PermGroup:
    total = G1.degree + G2.degree
    gens = [embed(g, 0, total) for g in G1.generators]
    gens += [embed(g, G1.degree, total) for g in G2.generators]
    return PermGroup(total, gens, max_order=limits.enumeration)


def _materialize_abelian(chain, limits: Limits) -> PermGroup:
    degree = sum(chain)
    gens = []
    offset = 0
    for d in chain:
        cyc = tuple(range(offset, offset + d))
        gens.append(from_cycles(degree, [cyc]))
        offset += d
    G = PermGroup(degree, gens, max_order=limits.enumeration)
    expected = 1
    for d in chain:
        expected *= d
    assert G.order() == expected
    return G


def _materialize_dihedral(n: int, limits: Limits) -> PermGroup:
    if n == 1:
        return PermGroup(2, [(1, 0)], max_order=limits.enumeration)
    if n == 2:
        return PermGroup(4, [(1, 0, 2, 3), (0, 1, 3, 2)], max_order=limits.enumeration)
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((n - i) % n for i in range(n))
    G = PermGroup(n, [rot, ref], max_order=limits.enumeration)
    assert G.order() == 2 * n
    return G


def _materialize_symmetric(n: int, limits: Limits) -> PermGroup:
    if n == 1:
        return PermGroup(1, [], max_order=limits.enumeration)
    if n == 2:
        return PermGroup(2, [(1, 0)], max_order=limits.enumeration)
    cyc = tuple(range(1, n)) + (0,)
    swap = (1, 0) + tuple(range(2, n))
    return PermGroup(n, [swap, cyc], max_order=limits.enumeration)


def _materialize_alternating(n: int, limits: Limits) -> PermGroup:
    if n <= 2:
        return PermGroup(max(1, n), [], max_order=limits.enumeration)
    three = from_cycles(n, [(0, 1, 2)])
    if n == 3:
        return PermGroup(3, [three], max_order=limits.enumeration)
    if n % 2:
        big = from_cycles(n, [tuple(range(n))])
    else:
        big = from_cycles(n, [tuple(range(1, n))])
    G = PermGroup(n, [three, big], max_order=limits.enumeration)
    assert G.order() == factorial(n) // 2
    return G


# Finite field of order p^k as coefficient tuples modulo an irreducible.
class _FF:
    def __init__(self, p: int, k: int):
        self.p, self.k = p, k
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1) if k > 1 else (1,)
        self.modulus = self._find_irreducible() if k > 1 else None
        self.elements = sorted(itertools.product(range(p), repeat=k))

    def _poly_mul_mod(self, a, b, mod):
        p = self.p
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce modulo the monic polynomial mod (degree k)
        k = len(mod) - 1
        for i in range(len(prod) - 1, k - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(k):
                    prod[i - k + j] = (prod[i - k + j] - c * mod[j]) % p
        out = prod[:k]
        out += [0] * (k - len(out))
        return tuple(out)

    def _is_irreducible(self, poly) -> bool:
        # poly: low-to-high coefficients, monic of degree k over F_p
        k = len(poly) - 1
        for deg in range(1, k // 2 + 1):
            for cand in itertools.product(range(self.p), repeat=deg):
                divisor = list(cand) + [1]
                if self._poly_divides(divisor, poly):
                    return False
        return True

    def _poly_divides(self, d, n) -> bool:
        p = self.p
        n = list(n)
        dd = len(d) - 1
        inv_lead = pow(d[-1], p - 2, p)
        for i in range(len(n) - 1, dd - 1, -1):
            c = n[i] * inv_lead % p
            if c:
                for j in range(dd + 1):
                    n[i - dd + j] = (n[i - dd + j] - c * d[j]) % p
        return not any(n[:dd])

    def _find_irreducible(self):
        for cand in itertools.product(range(self.p), repeat=self.k):
            poly = list(cand) + [1]
            if self._is_irreducible(poly):
                return poly
        raise AssertionError("no irreducible polynomial found")

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        if self.k == 1:
            return ((a[0] * b[0]) % self.p,)
        return self._poly_mul_mod(a, b, self.modulus)

    def neg(self, a):
        return tuple((-x) % self.p for x in a)


def _materialize_gl(n: int, q: int, limits: Limits) -> PermGroup:
    p, k = is_prime_power(q)
    if q ** (n * n) > 2_000_000:
        raise OrderTooLarge(f"GL({n},{q}) matrix scan too large")
    field = _FF(p, k)
    vectors = [v for v in itertools.product(field.elements, repeat=n) if any(x != field.zero for x in v)]
    vec_index = {v: i for i, v in enumerate(vectors)}

    def mat_apply(mat, vec):
        out = []
        for row in mat:
            acc = field.zero
            for a, x in zip(row, vec):
                acc = field.add(acc, field.mul(a, x))
            out.append(acc)
        return tuple(out)

    def to_perm(mat):
        images = [0] * len(vectors)
        for i, v in enumerate(vectors):
            w = mat_apply(mat, v)
            j = vec_index.get(w)
            if j is None:
                return None  # singular
            images[i] = j
        return tuple(images) if is_perm(tuple(images)) else None

    desc_order = 1
    for i in range(n):
        desc_order *= q**n - q**i
    gens: list[Perm] = []
    known: set[Perm] = {identity(len(vectors))}
    for mat in itertools.product(itertools.product(field.elements, repeat=n), repeat=n):
        perm = to_perm(mat)
        if perm is None or perm in known:
            continue
        gens.append(perm)
        known = _bfs_closure(len(vectors), gens, desc_order + 1)
        if len(known) == desc_order:
            break
    G = PermGroup(len(vectors), gens, max_order=desc_order)
    assert G.order() == desc_order, "GL order mismatch"
    return G


def materialize_psl2(p: int, limits: Limits = DEFAULT_LIMITS) -> PermGroup:
    """PSL_2(F_p) acting on the projective line (p+1 points), p odd prime."""
    pts = list(range(p)) + [p]  # p encodes infinity
    expected = p * (p * p - 1) // 2
    if expected > limits.enumeration:
        raise OrderTooLarge(f"PSL2({p}) order {expected} exceeds bound")

    def shift(x):  # z -> z + 1
        return p if x == p else (x + 1) % p

    def inv_neg(x):  # z -> -1/z
        if x == p:
            return 0
        if x == 0:
            return p
        return (-pow(x, p - 2, p)) % p

    g1 = tuple(shift(x) for x in pts)
    g2 = tuple(inv_neg(x) for x in pts)
    G = PermGroup(p + 1, [g1, g2], max_order=expected)
    assert G.order() == expected
    return G
