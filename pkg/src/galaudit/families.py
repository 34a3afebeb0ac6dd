"""Family classifier: dispatch a group descriptor to the criterion that
covers it, with the standard witness constructions for direct products,
groups with only large prime factors, abelian groups, odd-order groups,
dihedral groups, symmetric groups, and groups with non-trivial center.

classify runs the routes in a fixed order and reports the first success
as the matched condition; every other condition that also fires is
listed.  Groups hitting a known exception list are reported as such
with the exact pattern named.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .arith import is_prime, prime_factors
from .config import DEFAULT_LIMITS, Limits
from .criteria import (
    ABELIAN_ORACLE,
    CRITERION_GENUS_TWO,
    KIND_CLASSICAL,
    KIND_EXTERNAL,
    NO_FINITE_SET,
    NO_PARAMETRIC_EXT,
    SYMMETRIC_ODD_ORACLE,
    Assumption,
    Certificate,
    EmbeddingEvidence,
    Refusal,
    SubgroupWitness,
    check_T32,
    check_T34,
    check_T38,
    dihedral_local_evidence,
    embedding_star_evidence,
    index_two_regular_evidence,
    subgroup_witness,
)
from .cycletypes import (
    CycleType,
    format_type,
    is_maximal_cyclic_type,
    is_rational_type,
    non_power_pairwise,
    type_order,
    type_sign,
)
from .errors import AuditError, NotEnoughClasses, OrderTooLarge
from .genus import (
    FieldContext,
    GenusBound,
    MinimalGenusVerdict,
    minimal_genus_lower_bound,
    prime_set_S,
)
from .groups import (
    GroupDescriptor,
    PermGroup,
    abelian_invariants,
    closure_of,
    is_isomorphic,
    materialize,
    normal_subgroups,
    quotient,
)
from .perms import from_cycles, perm_order, perm_power

HILBERT = Assumption(
    "hilbert-specialization",
    KIND_CLASSICAL,
    "specializing a regular realization of the second factor inside a fixed "
    "extension for the first factor yields infinitely many full-group extensions",
)
REGULAR_REALIZABILITY = Assumption(
    "regular-realizability-or-empty",
    KIND_EXTERNAL,
    "the full group is assumed to be a regular Galois group over the field; "
    "otherwise only the empty set of realizations exists and the conclusion "
    "is vacuous",
)
DIHEDRAL_LARGE_PRIME_GENUS = Assumption(
    "dihedral-large-prime-genus",
    KIND_EXTERNAL,
    "dihedral groups with prime parameter >= 11 have rational minimal genus "
    "at least two",
)
SN_NORMAL_STRUCTURE = Assumption(
    "symmetric-normal-structure",
    KIND_CLASSICAL,
    "for n >= 5 the only normal subgroups of the symmetric group are the "
    "trivial group, the alternating group, and the whole group",
)
BASE_CHANGE = Assumption(
    "base-change",
    KIND_CLASSICAL,
    "rational-regular realizations stay regular with the same geometric data "
    "after base change to a larger number field",
)


# -- verdict container --------------------------------------------------------


@dataclass(frozen=True)
class FamilyVerdict:
    covered: bool
    matched_condition: str | None
    certificate: Certificate | None
    exception_reason: str | None
    all_matches: tuple[str, ...] = ()
    diagnostics: tuple[dict, ...] = ()

    def to_json(self):
        return {
            "covered": self.covered,
            "matched_condition": self.matched_condition,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "exception": self.exception_reason,
            "all_matches": list(self.all_matches),
            "diagnostics": list(self.diagnostics),
        }


@dataclass(frozen=True)
class RouteResult:
    status: str  # "covered" | "exception" | "failed" | "not_applicable"
    condition: str | None = None
    certificate: Certificate | None = None
    reason: str | None = None


# -- abelian analysis ---------------------------------------------------------

# Quotients that can still carry a genus <= 1 realization (any field):
# cyclic groups plus these non-cyclic types.
_BAD_QUOTIENTS_ANY = {(2, 2), (2, 4), (3, 3), (2, 2, 2)}

_EXCEPTION_E = {
    (2, 8): "Z/2 x Z/8",
    (4, 4): "(Z/4)^2",
    (2, 2, 2): "(Z/2)^3",
    (2, 2, 4): "(Z/2)^2 x Z/4",
    (3, 3, 3): "(Z/3)^3",
    (2, 2, 2, 2): "(Z/2)^4",
}

_EXCEPTION_Q = {
    (4,): "Z/4",
    (6,): "Z/6",
    (12,): "Z/12",
    (2, 2): "(Z/2)^2",
    (2, 4): "Z/2 x Z/4",
    (2, 6): "Z/2 x Z/6",
    (3, 3): "(Z/3)^2",
    (2, 2, 2): "(Z/2)^3",
    (2, 2, 2, 2): "(Z/2)^4",
}

# Exceptions over the rationals that still rule out a parametric
# extension (handled by the class-count criteria, not by classify).
PARAMETRIC_ONLY_ABELIAN = {
    (6,),
    (12,),
    (2, 4),
    (2, 6),
    (3, 3),
    (2, 2, 2),
    (2, 2, 2, 2),
}


def _suitable_any(chain: tuple[int, ...]) -> bool:
    return len(chain) >= 2 and chain not in _BAD_QUOTIENTS_ANY


def general_exception(chain: tuple[int, ...]) -> str | None:
    """The exception pattern matched over a general number field."""
    m = len(chain)
    if m == 1:
        return f"Z/{chain[0]}"
    if m == 2:
        d1, d2 = chain
        if d1 == d2 and is_prime(d1):
            return f"(Z/{d1})^2"
        if d1 == 2 and d2 % 2 == 0 and is_prime(d2 // 2):
            return f"Z/2 x Z/{d2}"
        if d1 == 3 and d2 % 3 == 0 and is_prime(d2 // 3):
            return f"Z/3 x Z/{d2}"
    return _EXCEPTION_E.get(chain)


def rational_exception(chain: tuple[int, ...]) -> str | None:
    if len(chain) == 1 and is_prime(chain[0]):
        return f"Z/{chain[0]}"
    return _EXCEPTION_Q.get(chain)


def has_quotient_type(chain: tuple[int, ...], target: tuple[int, ...]) -> bool:
    """Whether the abelian group with these invariants has a quotient of
    the target type: align the target against the largest factors and
    check divisibility slot by slot."""
    t, m = len(target), len(chain)
    if t > m:
        return False
    return all(chain[m - t + i] % target[i] == 0 for i in range(t))


@dataclass(frozen=True)
class AbelianQuotientResult:
    kind: str  # "quotient" | "exception" | "special"
    quotient: tuple[int, ...] | None = None
    exception: str | None = None
    special: str | None = None
    rule: str | None = None

    def to_json(self):
        return {
            "kind": self.kind,
            "quotient": list(self.quotient) if self.quotient else None,
            "exception": self.exception,
            "special": self.special,
            "rule": self.rule,
        }


def _general_split(chain: tuple[int, ...]) -> AbelianQuotientResult:
    """Case split on the number of invariant factors, producing a
    quotient outside the low-genus list.  Exceptions must have been
    screened out already."""
    m = len(chain)
    if m >= 4:
        cand = chain[1:]
        assert _suitable_any(cand), chain
        return AbelianQuotientResult("quotient", quotient=cand, rule="drop-smallest")
    if m == 3:
        d1, d2, d3 = chain
        if d3 > d1 and d1 != 2:
            return AbelianQuotientResult(
                "quotient", quotient=(d1, d1, d1), rule="cube-of-smallest"
            )
        if d3 > d1 and d1 == 2:
            cand = (d2, d3)
            assert _suitable_any(cand), chain
            return AbelianQuotientResult("quotient", quotient=cand, rule="drop-smallest")
        cand = (d3, d3)
        assert _suitable_any(cand), chain
        return AbelianQuotientResult("quotient", quotient=cand, rule="square-of-largest")
    d1, d2 = chain
    if d2 > d1 >= 4:
        return AbelianQuotientResult(
            "quotient", quotient=(d1, d1), rule="square-of-smallest"
        )
    if d2 == d1 >= 4:
        r = min(prime_factors(d2))
        cand = (r, d2)
        assert _suitable_any(cand), chain
        return AbelianQuotientResult("quotient", quotient=cand, rule="split-repeated")
    # d1 <= 3, d2/d1 composite (primes were screened as exceptions)
    q = d2 // d1
    for r in sorted(prime_factors(q)) + [
        d for d in range(2, q) if q % d == 0 and not is_prime(d)
    ]:
        if r < q and _suitable_any((d1, d1 * r)):
            return AbelianQuotientResult(
                "quotient", quotient=(d1, d1 * r), rule="partial-index"
            )
    raise AssertionError(f"no suitable quotient found for non-exception {chain}")


def abelian_suitable_quotient(
    invariants, fc: FieldContext | None = None
) -> AbelianQuotientResult:
    """Find a proper non-trivial quotient outside the low-genus abelian
    list, or name the exception pattern that prevents one.

    Over a general field this is the three-way case split on the number
    of invariant factors.  Over the rationals a larger set of quotients
    is usable, so the prime >= 5 quotient, the small prime-power and
    biquadratic quotients, and the special prime-power arguments are
    tried first.
    """
    chain = tuple(GroupDescriptor.abelian(invariants).data)
    if fc is None:
        fc = FieldContext.number_field(2)
    if fc.is_rational:
        exc = rational_exception(chain)
        if exc is not None:
            return AbelianQuotientResult("exception", exception=exc)
        order = 1
        for d in chain:
            order *= d
        big = sorted(p for p in prime_factors(order) if p >= 5)
        if big:
            return AbelianQuotientResult(
                "quotient", quotient=(big[0],), rule="large-prime-quotient"
            )
        for target in ((8,), (9,), (2, 4), (3, 3)):
            t_order = 8 if target in ((8,), (2, 4)) else 9
            if t_order < order and has_quotient_type(chain, target):
                return AbelianQuotientResult(
                    "quotient", quotient=target, rule="rigid-small-quotient"
                )
        if chain in ((8,), (9,)):
            return AbelianQuotientResult(
                "special",
                special="totally-ramified-prime-power",
                rule="prime-power-direct",
            )
        exc = general_exception(chain)
        if exc is not None:
            return AbelianQuotientResult("exception", exception=exc)
        return _general_split(chain)
    exc = general_exception(chain)
    if exc is not None:
        return AbelianQuotientResult("exception", exception=exc)
    return _general_split(chain)


def abelian_kernel_for_quotient(
    G: PermGroup, chain: tuple[int, ...], target: tuple[int, ...]
) -> tuple:
    """Subgroup of the materialized abelian group whose quotient has the
    target invariants (target aligned against the largest factors)."""
    m, t = len(chain), len(target)
    assert has_quotient_type(chain, target)
    gens = []
    for i in range(m - t):
        gens.append(G.generators[i])
    for j in range(t):
        gens.append(perm_power(G.generators[m - t + j], target[j]))
    sub = closure_of(G.degree, gens, G.order() + 1)
    return tuple(sorted(sub))


def abelian_chains_of_order(n: int) -> tuple[tuple[int, ...], ...]:
    """Invariant-factor chains of all abelian groups of order n,
    deterministically ordered."""
    from itertools import product as iproduct

    from .cycletypes import partitions

    if n < 1:
        return ()
    if n == 1:
        return ()
    fac = prime_factors(n)
    primes = sorted(fac)
    choices = [partitions(fac[p]) for p in primes]
    chains = []
    for combo in iproduct(*choices):
        width = max(len(lam) for lam in combo)
        chain = []
        for i in range(width):
            d = 1
            for p, lam in zip(primes, combo):
                if i < len(lam):
                    d *= p ** lam[i]
            chain.append(d)
        chain.reverse()
        chains.append(tuple(chain))
    return tuple(sorted(chains))


# -- symmetric class selection -------------------------------------------------

_SN_FIVE = {
    8: ((8,), (6, 1, 1), (5, 2, 1), (4, 3, 1), (3, 3, 2)),
    9: ((8, 1), (7, 2), (6, 3), (5, 4), (3, 3, 2, 1)),
    10: ((10,), (8, 1, 1), (7, 2, 1), (6, 3, 1), (5, 4, 1)),
}

_SN_THREE = {
    6: ((6,), (4, 1, 1), (3, 2, 1)),
    7: ((6, 1), (5, 2), (4, 3)),
}


def sn_select_classes(n: int, count: int) -> tuple[CycleType, ...]:
    """Cycle types of odd classes generating maximal cyclic subgroups,
    pairwise not powers of one another; the standard small lists for
    n <= 10 and the two-cycle-support families beyond."""
    if count == 5:
        if n < 8:
            raise NotEnoughClasses("five-class selection needs n >= 8")
        if n in _SN_FIVE:
            types = _SN_FIVE[n]
        elif n % 2:
            types = tuple(
                tuple(sorted((m, n - m), reverse=True)) for m in range(1, 6)
            )
        else:
            types = tuple(
                tuple(sorted((m, n - 1 - m, 1), reverse=True)) for m in range(1, 6)
            )
    elif count == 3:
        if n < 6:
            raise NotEnoughClasses("three-class selection needs n >= 6")
        if n in _SN_THREE:
            types = _SN_THREE[n]
        else:
            types = sn_select_classes(n, 5)[:3]
    else:
        raise NotEnoughClasses("count must be 3 or 5")
    for t in types:
        assert sum(t) == n, (n, t)
        assert type_sign(t) == -1, (n, t)
        assert is_maximal_cyclic_type(t), (n, t)
        assert is_rational_type(t), (n, t)
    assert len(set(types)) == len(types)
    assert non_power_pairwise(types), (n, types)
    return types


# -- linear groups over finite fields -----------------------------------------


@dataclass(frozen=True)
class GLCenterCheck:
    center_nontrivial: bool
    quotient_strong_any_field: bool  # neither solvable nor the order-60 simple group
    quotient_strong_rational: bool  # neither solvable of even order nor of order <= 3
    brute_force_verified: bool

    def to_json(self):
        return {
            "center_nontrivial": self.center_nontrivial,
            "quotient_strong_any_field": self.quotient_strong_any_field,
            "quotient_strong_rational": self.quotient_strong_rational,
            "brute_force_verified": self.brute_force_verified,
        }


def gl_center_check(n: int, q: int, limits: Limits = DEFAULT_LIMITS) -> GLCenterCheck:
    """Center and projective-quotient facts for GL_n(F_q), n >= 2,
    q >= 3, cross-checked by brute force when the group is small."""
    desc = GroupDescriptor.gl(n, q)
    center_nontrivial = q >= 3
    strong_any = (n, q) not in ((2, 2), (2, 3), (2, 4))
    strong_rational = (n, q) not in ((2, 2), (2, 3))
    verified = False
    if desc.order() <= limits.enumeration:
        G = materialize(desc, limits)
        Z = G.center()
        assert (len(Z) > 1) == center_nontrivial
        PGL = quotient(G, Z)
        solvable = PGL.is_solvable()
        is_a5 = PGL.order() == 60 and not solvable and is_isomorphic(
            PGL, materialize(GroupDescriptor.alternating(5), limits), limits
        )
        assert (not solvable and not is_a5) == strong_any, (n, q)
        assert (
            not (solvable and PGL.order() % 2 == 0) and PGL.order() > 3
        ) == strong_rational, (n, q)
        verified = True
    return GLCenterCheck(center_nontrivial, strong_any, strong_rational, verified)


# -- routes -------------------------------------------------------------------


def direct_product_rule(
    d1: GroupDescriptor,
    d2: GroupDescriptor,
    fc: FieldContext,
    limits: Limits = DEFAULT_LIMITS,
    verify: bool = False,
) -> FamilyVerdict:
    """Product with a factor of certified minimal genus >= 2 and a
    non-trivial cofactor."""
    o2 = d2.order()
    if o2 is None:
        try:
            o2 = materialize(d2, limits).order()
        except OrderTooLarge:
            return FamilyVerdict(False, None, None, None, (), ({"route": "product", "reason": "cofactor too large"},))
    if o2 < 2:
        return FamilyVerdict(
            False, None, None, None, (), ({"route": "product", "reason": "cofactor trivial"},)
        )
    v = minimal_genus_lower_bound(d1, fc, limits)
    if v.bound != GenusBound.AT_LEAST_TWO:
        return FamilyVerdict(
            False,
            None,
            None,
            None,
            (),
            ({"route": "product", "reason": "first factor genus bound not certified"},),
        )
    desc = GroupDescriptor.product(d1, d2)
    evidence = EmbeddingEvidence(
        rule="DirectProductHilbert",
        realizability_tag="assumed-regular",
        checks=("first-factor genus bound certified", "cofactor non-trivial"),
        assumptions=(HILBERT, REGULAR_REALIZABILITY),
    )
    order = desc.order()
    cert: Certificate
    if order is not None and order <= limits.enumeration and verify:
        G = materialize(desc, limits)
        G1 = materialize(d1, limits)
        deg1 = G1.degree
        kernel = tuple(
            sorted(g for g in G.elements() if g[:deg1] == tuple(range(deg1)))
        )
        out = check_T32(G, kernel, fc, evidence, limits, group_desc=desc)
        if isinstance(out, Refusal):
            return FamilyVerdict(False, None, None, None, (), (out.to_json(),))
        cert = out
    else:
        cert = Certificate(
            group=desc,
            fc=fc,
            theorem=CRITERION_GENUS_TWO,
            conclusion=NO_FINITE_SET,
            witness_subgroup=SubgroupWitness(
                order=o2,
                generators=(),
                elements=None,
                descriptor=d2,
                note="identity-times-second-factor",
            ),
            quotient_desc=d1,
            embedding=evidence,
            genus_evidence=v.to_json(),
            class_evidence=None,
            local_evidence=None,
            normal_variants={
                "mode": "isomorphism-invariance",
                "note": "genus bounds depend only on the quotient isomorphism class",
            },
            assumptions=evidence.assumptions,
            implied_conclusions=(NO_PARAMETRIC_EXT,),
            uniformity_extension=True,
        )
    return FamilyVerdict(True, "Thm 5.1(1)", cert, None, ("Thm 5.1(1)",))


def _route_direct_product(desc, fc, limits, verify) -> RouteResult:
    if desc.kind != "product":
        return RouteResult("not_applicable")
    d1, d2 = desc.data
    for first, second in ((d1, d2), (d2, d1)):
        v = direct_product_rule(first, second, fc, limits, verify)
        if v.covered:
            return RouteResult("covered", "Thm 5.1(1)", v.certificate)
    return RouteResult("failed", reason="no factor has a certified genus bound")


def _descriptor_order(desc, limits) -> int | None:
    order = desc.order()
    if order is not None:
        return order
    try:
        return materialize(desc, limits).order()
    except OrderTooLarge:
        return None


def _route_prime_factors(desc, fc, limits, verify) -> RouteResult:
    order = _descriptor_order(desc, limits)
    if order is None or order < 2 or is_prime(order):
        return RouteResult("not_applicable")
    S = prime_set_S(fc)
    if any(p in S.primes for p in prime_factors(order)):
        return RouteResult("not_applicable")
    try:
        G = materialize(desc, limits)
    except OrderTooLarge:
        return RouteResult("failed", reason="group too large to materialize")
    chain = desc.abelian_chain()
    if chain is None and G.is_abelian():
        chain = abelian_invariants(G)
    if chain is not None:
        p = min(prime_factors(chain[-1]))
        kernel = abelian_kernel_for_quotient(G, chain, (p,))
    else:
        kernel = G.derived_subgroup()
        if len(kernel) in (1, G.order()):
            return RouteResult("failed", reason="no usable normal subgroup")
    evidence = embedding_star_evidence(G, kernel, fc, group_desc=desc, limits=limits)
    out = check_T32(G, kernel, fc, evidence, limits, group_desc=desc)
    if isinstance(out, Refusal):
        return RouteResult("failed", reason=out.message)
    if not S.exact:
        out = _with_assumption(
            out,
            Assumption(
                "prime-set-superset",
                KIND_CLASSICAL,
                "the group order avoids a certified superset of the field's "
                "small-cyclotomic primes",
            ),
        )
    return RouteResult("covered", "Thm 5.1(2)", out)


def _with_assumption(cert: Certificate, extra: Assumption) -> Certificate:
    from dataclasses import replace

    if extra in cert.assumptions:
        return cert
    return replace(cert, assumptions=cert.assumptions + (extra,))


def _route_abelian(desc, fc, limits, verify) -> RouteResult:
    chain = desc.abelian_chain()
    if chain is None:
        return RouteResult("not_applicable")
    if not chain:
        return RouteResult("not_applicable")  # trivial group
    result = abelian_suitable_quotient(chain, fc)
    condition = "Thm 5.1(3)"
    if fc.is_rational:
        general = abelian_suitable_quotient(chain, FieldContext.number_field(2))
        condition = "Thm 5.1(3)" if general.kind == "quotient" else "Thm 5.2(2)"
    if result.kind == "exception":
        return RouteResult("exception", condition, reason=result.exception)
    # Canonical form: one generator per invariant factor, as the kernel
    # recipe requires.
    desc = GroupDescriptor.abelian(chain)
    G = materialize(desc, limits)
    if result.kind == "special":
        cert = _prime_power_special_certificate(desc, chain, G, fc, limits)
        return RouteResult("covered", condition, cert)
    target = result.quotient
    kernel = abelian_kernel_for_quotient(G, chain, target)
    evidence = embedding_star_evidence(G, kernel, fc, group_desc=desc, limits=limits)
    out = check_T32(G, kernel, fc, evidence, limits, group_desc=desc)
    if isinstance(out, Refusal):
        return RouteResult("failed", reason=out.message)
    if verify:
        Q = quotient(G, kernel)
        assert abelian_invariants(Q) == tuple(target)
    return RouteResult("covered", condition, out)


def _prime_power_special_certificate(desc, chain, G, fc, limits) -> Certificate:
    """Direct genus argument for the cyclic groups of order 8 and 9:
    every realization is totally ramified at enough points that the
    subextension fixed by the prime-order subgroup has genus >= 2."""
    from .arith import totient

    n = chain[0]  # 8 or 9
    p = min(prime_factors(n))
    kernel = abelian_kernel_for_quotient(G, chain, (n // p,))
    evidence = embedding_star_evidence(G, kernel, fc, group_desc=desc, limits=limits)
    branch_points = totient(n)
    sub_index = n // p
    genus_evidence = {
        "kind": "totally-ramified-branch-points",
        "branch_points": branch_points,
        "subextension_order": sub_index,
        "note": (
            f"every realization has at least {branch_points} totally ramified "
            f"branch points, so the degree-{sub_index} subextension has genus >= 2"
        ),
    }
    return Certificate(
        group=desc,
        fc=fc,
        theorem=CRITERION_GENUS_TWO,
        conclusion=NO_FINITE_SET,
        witness_subgroup=subgroup_witness(G, kernel),
        quotient_desc=GroupDescriptor.abelian([n // p]),
        embedding=evidence,
        genus_evidence=genus_evidence,
        class_evidence=None,
        local_evidence=None,
        normal_variants={"mode": "enumerated", "isomorphic_quotient_count": 1},
        assumptions=evidence.assumptions
        + (
            Assumption(
                "coprime-power-classes",
                KIND_CLASSICAL,
                "inertia invariants are stable under coprime powers, so full-order "
                "inertia forces totally ramified points",
            ),
        ),
        implied_conclusions=(NO_PARAMETRIC_EXT,),
        uniformity_extension=True,
    )


def _route_odd_nonabelian(desc, fc, limits, verify) -> RouteResult:
    if not fc.is_rational:
        return RouteResult("not_applicable")
    order = _descriptor_order(desc, limits)
    if order is None or order % 2 == 0 or order % 3 or order < 3:
        return RouteResult("not_applicable")
    if desc.abelian_chain() is not None:
        return RouteResult("not_applicable")
    try:
        G = materialize(desc, limits)
    except OrderTooLarge:
        return RouteResult("failed", reason="group too large to materialize")
    if G.is_abelian():
        return RouteResult("not_applicable")
    shape = _semidirect_three_shape(G, order)
    if shape is not None:
        return RouteResult(
            "exception",
            "Thm 5.2(1)",
            reason=f"(Z/{shape[0]})^{shape[1]} : Z/3 with exponent in {{1, 2}}",
        )
    kernel = None
    for N in normal_subgroups(G, limits):
        if 1 < len(N) < order and order // len(N) != 3:
            kernel = N
            break
    if kernel is None:
        return RouteResult("failed", reason="all proper quotients have order 3")
    evidence = embedding_star_evidence(G, kernel, fc, group_desc=desc, limits=limits)
    out = check_T32(G, kernel, fc, evidence, limits, group_desc=desc)
    if isinstance(out, Refusal):
        return RouteResult("failed", reason=out.message)
    return RouteResult("covered", "Thm 5.2(1)", out)


def _semidirect_three_shape(G: PermGroup, order: int) -> tuple[int, int] | None:
    """Detect (Z/p)^k : Z/3 with k in {1, 2}, p prime, p != 3: order is
    3p or 3p^2 with an elementary abelian (hence normal) Sylow subgroup."""
    fac = prime_factors(order)
    if sorted(fac) == [3] or 3 not in fac or fac[3] != 1:
        return None
    rest = {p: e for p, e in fac.items() if p != 3}
    if len(rest) != 1:
        return None
    ((p, k),) = rest.items()
    if k not in (1, 2):
        return None
    if k == 2 and any(perm_order(g) == p * p for g in G.elements()):
        return None  # Sylow subgroup cyclic, not elementary
    return (p, k)


def dihedral_analysis(
    n: int,
    fc: FieldContext,
    limits: Limits = DEFAULT_LIMITS,
    verify: bool = False,
) -> FamilyVerdict:
    """Dihedral groups: over the rationals the full quotient-by-smallest-
    prime construction; over any field the branch through a prime factor
    >= 11 (with the external genus fact recorded as an assumption)."""
    desc = GroupDescriptor.dihedral(n)
    matches: list[tuple[str, Certificate]] = []
    diagnostics: list[dict] = []
    composite = n >= 2 and not is_prime(n)
    if fc.is_rational and composite and n not in (1, 4, 6, 8, 9, 12):
        cert = _dihedral_rational_certificate(n, fc, limits, verify)
        if isinstance(cert, Certificate):
            matches.append(("Thm 5.2(3)", cert))
        else:
            diagnostics.append(cert.to_json())
    if composite and any(p >= 11 for p in prime_factors(n)):
        cert = _dihedral_large_prime_certificate(n, fc, limits)
        matches.append(("Thm 5.2(3) via large prime factor", cert))
    if matches:
        from dataclasses import replace

        tags = tuple(tag for tag, _ in matches)
        primary = replace(matches[0][1], matched_conditions=tags)
        return FamilyVerdict(True, tags[0], primary, None, tags, tuple(diagnostics))
    if not composite:
        reason = f"parameter {n} is 1 or prime" if n == 1 or is_prime(n) else None
        return FamilyVerdict(False, None, None, reason, (), tuple(diagnostics))
    if n in (4, 6, 8, 9, 12):
        return FamilyVerdict(
            False, None, None, f"parameter {n} in the exception set {{4, 6, 8, 9, 12}}",
            (), tuple(diagnostics),
        )
    return FamilyVerdict(
        False, None, None, "not covered over this field", (), tuple(diagnostics)
    )


def _dihedral_rational_certificate(n, fc, limits, verify):
    p = min(prime_factors(n))
    G = materialize(GroupDescriptor.dihedral(n), limits)
    rot = G.generators[0]
    kernel = tuple(sorted(closure_of(G.degree, [perm_power(rot, n // p)], 2 * n + 1)))
    assert len(kernel) == p
    order_p_normals = [
        N for N in normal_subgroups(G, limits.with_brute_force(max(limits.brute_force, 2 * n)))
        if len(N) == p
    ]
    if len(order_p_normals) != 1:
        return Refusal(
            "embedding_not_certified",
            f"expected a unique normal subgroup of order {p}",
        )
    evidence = embedding_star_evidence(
        G, kernel, fc, group_desc=GroupDescriptor.dihedral(n), limits=limits
    )
    evidence = EmbeddingEvidence(
        rule=evidence.rule,
        realizability_tag=evidence.realizability_tag,
        checks=evidence.checks
        + (f"unique normal subgroup of order {p} (quotient embeds infinitely often)",),
        assumptions=evidence.assumptions,
        details=evidence.details,
    )
    local = dihedral_local_evidence(n, p)
    out = check_T34(
        G, kernel, fc, evidence, local, limits, group_desc=GroupDescriptor.dihedral(n)
    )
    if isinstance(out, Refusal):
        return out
    if verify:
        Q = quotient(G, kernel)
        target = materialize(GroupDescriptor.dihedral(n // p), limits)
        assert is_isomorphic(Q, target, limits.with_brute_force(max(limits.brute_force, 4 * n)))
    return out


def _dihedral_large_prime_certificate(n, fc, limits) -> Certificate:
    p = max(pp for pp in prime_factors(n) if pp >= 11)
    desc = GroupDescriptor.dihedral(n)
    G = materialize(desc, limits)
    rot = G.generators[0]
    kernel = tuple(sorted(closure_of(G.degree, [perm_power(rot, p)], 2 * n + 1)))
    assert len(kernel) == n // p
    evidence = embedding_star_evidence(G, kernel, fc, group_desc=desc, limits=limits)
    genus_evidence = {
        "kind": "asserted-minimal-genus",
        "bound": GenusBound.AT_LEAST_TWO.value,
        "note": f"minimal genus of D{p} over the rationals is at least 2 "
        "(external fact)",
    }
    assumptions = list(evidence.assumptions) + [DIHEDRAL_LARGE_PRIME_GENUS]
    if not fc.is_rational:
        assumptions.append(BASE_CHANGE)
    return Certificate(
        group=desc,
        fc=fc,
        theorem=CRITERION_GENUS_TWO,
        conclusion=NO_FINITE_SET,
        witness_subgroup=subgroup_witness(G, kernel, descriptor=GroupDescriptor.abelian([n // p]) if n // p >= 2 else None),
        quotient_desc=GroupDescriptor.dihedral(p),
        embedding=evidence,
        genus_evidence=genus_evidence,
        class_evidence=None,
        local_evidence=None,
        normal_variants={
            "mode": "isomorphism-invariance",
            "note": "genus bounds depend only on the quotient isomorphism class",
        },
        assumptions=tuple(assumptions),
        implied_conclusions=(NO_PARAMETRIC_EXT,),
        uniformity_extension=True,
    )


def _route_dihedral(desc, fc, limits, verify) -> RouteResult:
    if desc.kind != "dihedral":
        return RouteResult("not_applicable")
    n = desc.data[0]
    v = dihedral_analysis(n, fc, limits, verify)
    if v.covered:
        return RouteResult("covered", v.matched_condition, v.certificate)
    if v.exception_reason:
        return RouteResult("exception", "Thm 5.2(3)", reason=v.exception_reason)
    return RouteResult("failed", reason="dihedral analysis not applicable")


# -- symmetric groups ----------------------------------------------------------


def _symmetric_param(desc, limits) -> int | None:
    if desc.kind == "symmetric":
        return desc.data[0]
    if desc.kind == "perm":
        degree = desc.data[0]
        try:
            if factorial(degree) <= limits.enumeration:
                G = materialize(desc, limits)
                if G.order() == factorial(degree):
                    return degree
        except OrderTooLarge:
            return None
    return None


def symmetric_family_certificate(
    n: int, fc: FieldContext, limits: Limits = DEFAULT_LIMITS, verify: bool = False
) -> Certificate | Refusal:
    """No parametric extension for symmetric groups: the five-class
    criterion at cycle-type level for n >= 8, the index-two criterion on
    the materialized group for n in {6, 7} over the rationals."""
    desc = GroupDescriptor.symmetric(n)
    if n >= 8:
        types = sn_select_classes(n, 5)
        evidence = index_two_regular_evidence(
            factorial(n),
            (2, n - 1, n),
            True,
            fc,
            f"([1^{n - 2} 2^1], [1^1 {n - 1}^1], [{n}^1])",
        )
        class_payload = {
            "per_subgroup": [
                {
                    "subgroup": "alternating",
                    "classes": [
                        {
                            "cycle_type": list(t),
                            "notation": format_type(t),
                            "element_order": type_order(t),
                            "verified": [
                                "odd (outside the alternating subgroup)",
                                "maximal cyclic (cycle-type criterion)",
                                "pairwise non-power",
                                "rational class",
                            ],
                        }
                        for t in types
                    ],
                }
            ],
            "count": 5,
        }
        assumptions = [SN_NORMAL_STRUCTURE]
        assumptions.extend(evidence.assumptions)
        assumptions.extend(SYMMETRIC_ODD_ORACLE.assumptions())
        if not fc.is_rational:
            assumptions.append(BASE_CHANGE)
        three_cycle = from_cycles(n, [(0, 1, 2)])
        big = from_cycles(n, [tuple(range(n))] if n % 2 else [tuple(range(1, n))])
        cert = Certificate(
            group=desc,
            fc=fc,
            theorem="T3.6",
            conclusion=NO_PARAMETRIC_EXT,
            witness_subgroup=SubgroupWitness(
                order=factorial(n) // 2,
                generators=(three_cycle, big),
                elements=None,
                descriptor=GroupDescriptor.alternating(n),
            ),
            quotient_desc=GroupDescriptor.abelian([2]),
            embedding=evidence,
            genus_evidence=None,
            class_evidence=class_payload,
            local_evidence=None,
            normal_variants={
                "mode": "classical",
                "note": "only normal subgroups are trivial, alternating, full",
            },
            assumptions=tuple(dict.fromkeys(assumptions)),
        )
        if verify and n <= 8:
            _verify_symmetric_types_brute(n, types, limits)
        return cert
    if n in (6, 7):
        if not fc.is_rational:
            return Refusal(
                "class_search_failed",
                "symmetric parameters 6 and 7 are covered over the rationals only",
            )
        wide = limits.with_brute_force(max(limits.brute_force, factorial(n)))
        G = materialize(desc, wide)
        evidence = index_two_regular_evidence(
            factorial(n),
            (2, n - 1, n),
            True,
            fc,
            f"([1^{n - 2} 2^1], [1^1 {n - 1}^1], [{n}^1])",
        )
        return check_T38(
            G, evidence, SYMMETRIC_ODD_ORACLE, wide, group_desc=desc
        )
    return Refusal("class_search_failed", "symmetric parameter below the covered range")


def _verify_symmetric_types_brute(n: int, types, limits: Limits):
    """Full brute-force re-check of the selected classes inside the
    materialized symmetric group (n <= 8)."""
    from .perms import cycle_type as ct, sign as psign

    wide = limits.with_enumeration(max(limits.enumeration, factorial(n) + 1))
    G = materialize(GroupDescriptor.symmetric(n), wide)
    chosen = []
    for C in G.conjugacy_classes():
        if ct(C.representative) in types:
            chosen.append(C)
    assert len(chosen) == len(types)
    from .groups import class_power_closure, generates_maximal_cyclic

    G.conjugacy_classes()
    for C in chosen:
        assert psign(C.representative) == -1
        assert generates_maximal_cyclic(G, C.representative)
    for a in chosen:
        for b in chosen:
            if a is not b:
                assert G._class_index[a.representative] not in class_power_closure(b, G)


def _route_symmetric(desc, fc, limits, verify) -> RouteResult:
    n = _symmetric_param(desc, limits)
    if n is None:
        return RouteResult("not_applicable")
    if n < 6:
        return RouteResult(
            "exception", "Thm 5.3(2)", reason=f"symmetric parameter {n} below range"
        )
    if n in (6, 7) and not fc.is_rational:
        return RouteResult(
            "exception",
            "Thm 5.3(2)",
            reason="parameters 6 and 7 are covered over the rationals only",
        )
    out = symmetric_family_certificate(n, fc, limits, verify)
    if isinstance(out, Refusal):
        return RouteResult("failed", reason=out.message)
    return RouteResult("covered", "Thm 5.3(2)", out)


# -- center route ---------------------------------------------------------------


def _route_center(desc, fc, limits, verify) -> RouteResult:
    if desc.abelian_chain() is not None:
        return RouteResult("not_applicable")
    if desc.kind == "gl":
        n, q = desc.data
        if q < 3:
            return RouteResult("not_applicable")
        check = gl_center_check(n, q, limits)
        if check.quotient_strong_any_field:
            condition = "Thm 5.1(4)"
        elif fc.is_rational and check.quotient_strong_rational:
            condition = "Thm 5.2(4)"
        else:
            return RouteResult(
                "exception",
                "Thm 5.1(4)",
                reason=f"(n, q) = ({n}, {q}) is in the exclusion list",
            )
        if desc.order() <= limits.enumeration:
            cert = _center_certificate_materialized(desc, fc, limits, condition)
            if isinstance(cert, Refusal):
                return RouteResult("failed", reason=cert.message)
            return RouteResult("covered", condition, cert)
        cert = _gl_closed_form_certificate(desc, fc, check, condition)
        return RouteResult("covered", condition, cert)
    order = desc.order()
    if order is not None and order > limits.enumeration:
        return RouteResult("failed", reason="group too large to materialize")
    try:
        G = materialize(desc, limits)
    except OrderTooLarge:
        return RouteResult("failed", reason="group too large to materialize")
    Z = G.center()
    if len(Z) <= 1 or len(Z) == G.order():
        return RouteResult("not_applicable")
    cert = _center_certificate_materialized(desc, fc, limits, None)
    if isinstance(cert, Refusal):
        return RouteResult("failed", reason=cert.message)
    return RouteResult("covered", cert.matched_conditions[0], cert)


def _center_certificate_materialized(desc, fc, limits, condition):
    G = materialize(desc, limits)
    Z = G.center()
    if len(Z) <= 1 or len(Z) == G.order():
        return Refusal("genus_not_certified", "center is trivial or the whole group")
    PGL = quotient(G, Z)
    solvable = PGL.is_solvable()
    is_a5 = False
    if PGL.order() == 60 and not solvable:
        is_a5 = is_isomorphic(
            PGL, materialize(GroupDescriptor.alternating(5), limits), limits
        )
    if condition is None:
        if not solvable and not is_a5:
            condition = "Thm 5.1(4)"
        elif fc.is_rational and not (solvable and PGL.order() % 2 == 0) and PGL.order() > 3:
            condition = "Thm 5.2(4)"
        else:
            return Refusal(
                "genus_not_certified",
                "central quotient does not clear the genus classification",
            )
    evidence = embedding_star_evidence(
        G,
        Z,
        fc,
        realizability="assumed regular over the field (vacuous otherwise)",
        group_desc=desc,
        limits=limits,
    )
    evidence = EmbeddingEvidence(
        rule=evidence.rule,
        realizability_tag=evidence.realizability_tag,
        checks=evidence.checks + ("kernel is the center (abelian)",),
        assumptions=tuple(
            a for a in evidence.assumptions
        ) + ((REGULAR_REALIZABILITY,) if evidence.realizability_tag == "user-asserted" else ()),
        details=evidence.details,
    )
    out = check_T32(G, Z, fc, evidence, limits, group_desc=desc)
    if isinstance(out, Refusal):
        return out
    from dataclasses import replace

    return replace(out, matched_conditions=(condition,))


def _gl_closed_form_certificate(desc, fc, check: GLCenterCheck, condition) -> Certificate:
    n, q = desc.data
    evidence = EmbeddingEvidence(
        rule="SolvableKernel",
        realizability_tag="assumed-regular",
        checks=("kernel is the center (scalar matrices, abelian)",),
        assumptions=(
            REGULAR_REALIZABILITY,
            Assumption(
                "linear-group-classification",
                KIND_CLASSICAL,
                "projective linear groups are non-solvable away from the two "
                "small exceptional parameter pairs",
            ),
        ),
    )
    return Certificate(
        group=desc,
        fc=fc,
        theorem=CRITERION_GENUS_TWO,
        conclusion=NO_FINITE_SET,
        witness_subgroup=SubgroupWitness(
            order=q - 1,
            generators=(),
            elements=None,
            descriptor=GroupDescriptor.abelian([q - 1]) if q > 2 else None,
            note="scalar matrices",
        ),
        quotient_desc=None,
        embedding=evidence,
        genus_evidence={
            "kind": "closed-form",
            "check": check.to_json(),
            "note": "projective quotient neither solvable nor the order-60 simple group",
        },
        class_evidence=None,
        local_evidence=None,
        normal_variants={"mode": "closed-form"},
        assumptions=evidence.assumptions,
        implied_conclusions=(NO_PARAMETRIC_EXT,),
        uniformity_extension=True,
        matched_conditions=(condition,),
    )


# -- classify -------------------------------------------------------------------

_ROUTES = (
    _route_direct_product,
    _route_prime_factors,
    _route_abelian,
    _route_odd_nonabelian,
    _route_dihedral,
    _route_symmetric,
    _route_center,
)


def classify(
    desc: GroupDescriptor,
    fc: FieldContext,
    limits: Limits = DEFAULT_LIMITS,
    verify: bool = False,
) -> FamilyVerdict:
    """Route a descriptor through every family analysis in order; the
    first success is the matched condition, and all other conditions
    that also fire are recorded."""
    covered: list[tuple[str, Certificate]] = []
    exceptions: list[tuple[str, str]] = []
    diagnostics: list[dict] = []
    for route in _ROUTES:
        try:
            out = route(desc, fc, limits, verify)
        except AuditError as exc:
            diagnostics.append({"route": route.__name__, "error": str(exc)})
            continue
        if out.status == "covered":
            covered.append((out.condition, out.certificate))
        elif out.status == "exception":
            exceptions.append((out.condition, out.reason))
            diagnostics.append(
                {"route": route.__name__, "exception": out.reason}
            )
        elif out.status == "failed":
            diagnostics.append({"route": route.__name__, "reason": out.reason})
    if covered:
        tags = tuple(dict.fromkeys(tag for tag, _ in covered))
        primary_tag, primary_cert = covered[0]
        from dataclasses import replace

        if not primary_cert.matched_conditions:
            primary_cert = replace(primary_cert, matched_conditions=tags)
        else:
            extra = tuple(t for t in tags if t not in primary_cert.matched_conditions)
            primary_cert = replace(
                primary_cert,
                matched_conditions=primary_cert.matched_conditions + extra,
            )
        return FamilyVerdict(
            True, primary_tag, primary_cert, None, tags, tuple(diagnostics)
        )
    if exceptions:
        reason = exceptions[0][1]
        chain = desc.abelian_chain()
        if (
            fc.is_rational
            and chain is not None
            and tuple(chain) in PARAMETRIC_ONLY_ABELIAN
        ):
            diagnostics.append(
                {
                    "note": "class-count criteria still rule out a parametric "
                    "extension for this group; run the audit command",
                }
            )
        return FamilyVerdict(False, None, None, reason, (), tuple(diagnostics))
    return FamilyVerdict(False, None, None, None, (), tuple(diagnostics))
