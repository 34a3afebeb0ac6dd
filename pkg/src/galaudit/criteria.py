"""Hypothesis checkers for the non-parametricity criteria.

Each checker either returns a Certificate (hypotheses verified, with
every unverified ingredient itemized as an assumption) or a Refusal
naming the first hypothesis it could not certify.  Refusals are values,
not exceptions: "not certifiable" is an ordinary outcome.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial

from .config import DEFAULT_LIMITS, Limits
from .errors import NoEvidence, NotNormal, OrderTooLarge
from .genus import (
    FieldContext,
    GenusBound,
    RamificationType,
    minimal_genus_lower_bound,
    rh_genus,
)
from .groups import (
    ConjClass,
    GroupDescriptor,
    PermGroup,
    abelian_invariants,
    class_power_closure,
    generates_maximal_cyclic,
    generating_subset,
    is_dihedral,
    is_isomorphic,
    is_normal,
    materialize,
    materialize_psl2,
    normal_subgroups,
    quotient,
    subgroup_as_group,
)
from .perms import Perm, cycle_type, sign, to_images

# Wire-format tags (stable identifiers, also used by the CLI schemas).
CRITERION_GENUS_TWO = "T3.2"
CRITERION_GENUS_ONE = "T3.4"
CRITERION_GENUS_ONE_RATIONAL = "T3.4addendum"
CRITERION_FIVE_CLASSES = "T3.6"
CRITERION_CYCLIC_THREE = "T3.7"
CRITERION_INDEX_TWO = "T3.8"

NO_FINITE_SET = "NoFiniteOneParametricSet"
NO_PARAMETRIC_EXT = "NoParametricExtension"

# Assumption kinds, from strongest to weakest backing.
KIND_CLASSICAL = "classical-theorem"
KIND_EXTERNAL = "external-fact"
KIND_USER = "user-assertion"


@dataclass(frozen=True)
class Assumption:
    tag: str
    kind: str
    detail: str

    def to_json(self):
        return {"tag": self.tag, "kind": self.kind, "detail": self.detail}


SHAFAREVICH = Assumption(
    "solvable-realizability",
    KIND_CLASSICAL,
    "every finite solvable group is a Galois group over every number field",
)
ABELIAN_REALIZABLE = Assumption(
    "abelian-realizability",
    KIND_CLASSICAL,
    "every finite abelian group is a Galois group over every number field",
)
SYMMETRIC_REALIZABLE = Assumption(
    "symmetric-realizability",
    KIND_CLASSICAL,
    "symmetric groups are regular Galois groups over every number field",
)
ALTERNATING_REALIZABLE = Assumption(
    "alternating-realizability",
    KIND_CLASSICAL,
    "alternating groups are regular Galois groups over every number field",
)
IKEDA_SPLIT_ABELIAN = Assumption(
    "split-abelian-embedding",
    KIND_CLASSICAL,
    "split embedding problems with abelian kernel over a Hilbertian field are solvable",
)
GAR_TABLE = Assumption(
    "gar-kernel-table",
    KIND_CLASSICAL,
    "embedding problems with these simple kernels are solvable infinitely often "
    "(alternating n outside {1,2,3,4,6}; PSL2(p), p odd, p != +-1 mod 24; "
    "sporadic groups except possibly M23)",
)
NEUMANN_QUADRATIC = Assumption(
    "quadratic-into-symmetric",
    KIND_CLASSICAL,
    "every quadratic extension of the rationals embeds into a symmetric-group extension",
)
BRANCH_CYCLE_RATIONALITY = Assumption(
    "rational-classes-give-rational-branch-points",
    KIND_CLASSICAL,
    "distinct rational inertia classes force rational branch points",
)

SPORADIC_ORDERS = {
    7920: "M11", 95040: "M12", 443520: "M22", 244823040: "M24",
    175560: "J1", 604800: "J2", 50232960: "J3",
    44352000: "HS", 898128000: "McL", 4030387200: "He",
    145926144000: "Ru", 448345497600: "Suz", 460815505920: "ON",
    42305421312000: "Co3", 495766656000: "Co2",
    64561751654400: "Fi22",
}
M23_ORDER = 10200960


@dataclass(frozen=True)
class EmbeddingEvidence:
    """Evidence that some quotient extension embeds into infinitely many
    full-group extensions (or, for user assertions, a claim thereof)."""

    rule: str  # SolvableKernel | GARKernel | IndexTwoRegular | DirectProductHilbert | UserAssertion
    realizability_tag: str
    checks: tuple[str, ...] = ()
    assumptions: tuple[Assumption, ...] = ()
    details: tuple[tuple[str, object], ...] = ()

    def to_json(self):
        return {
            "rule": self.rule,
            "realizability": self.realizability_tag,
            "machine_checks": list(self.checks),
            "assumptions": [a.to_json() for a in self.assumptions],
            "details": {k: v for k, v in self.details},
        }


@dataclass(frozen=True)
class LocalRamificationEvidence:
    """Assertion that infinitely many primes carry quotient extensions
    with controlled ramification index (embedding into the full group).

    The index claim is machine-checked against the theorem's threshold;
    the infinitude of the prime family is never verified here.
    """

    rule: str  # "dihedral_completion" | "user_assertion"
    index_kind: str  # "at_least" | "exact"
    index_value: int
    prime_family: str
    assumptions: tuple[Assumption, ...] = ()

    def satisfies_threshold(self, rational: bool) -> bool:
        if rational:
            return self.index_value >= 3
        if self.index_kind == "exact":
            return self.index_value not in (1, 2, 3, 4, 6)
        return self.index_value >= 7

    def to_json(self):
        return {
            "rule": self.rule,
            "ramification_index": {self.index_kind: self.index_value},
            "prime_family": self.prime_family,
            "assumptions": [a.to_json() for a in self.assumptions],
        }


@dataclass(frozen=True)
class InertiaOracle:
    """Decides which classes provably occur in inertia invariants of
    regular realizations of the group."""

    kind: str  # "abelian" | "symmetric_odd" | "user"
    user_types: frozenset = frozenset()

    def covers(self, G: PermGroup, C: ConjClass) -> bool:
        if self.kind == "abelian":
            return G.is_abelian() and C.element_order > 1
        if self.kind == "symmetric_odd":
            return G.order() == factorial(G.degree) and sign(C.representative) == -1
        if self.kind == "user":
            return cycle_type(C.representative) in self.user_types
        return False

    def assumptions(self) -> tuple[Assumption, ...]:
        if self.kind == "abelian":
            return (
                Assumption(
                    "abelian-inertia",
                    KIND_CLASSICAL,
                    "every non-identity class of a finite abelian group lies in the "
                    "inertia invariant of some rational-regular realization",
                ),
            )
        if self.kind == "symmetric_odd":
            return (
                Assumption(
                    "symmetric-odd-inertia",
                    KIND_CLASSICAL,
                    "every odd class of a symmetric group lies in the inertia "
                    "invariant of some rational-regular realization",
                ),
            )
        return (
            Assumption(
                "user-inertia", KIND_USER, "inertia membership asserted by the caller"
            ),
        )

    def to_json(self):
        out = {"kind": self.kind}
        if self.kind == "user":
            out["types"] = sorted(list(t) for t in self.user_types)
        return out


ABELIAN_ORACLE = InertiaOracle("abelian")
SYMMETRIC_ODD_ORACLE = InertiaOracle("symmetric_odd")


@dataclass(frozen=True)
class OracleChain:
    """Union of inertia oracles: a class is covered when any member covers it."""

    members: tuple[InertiaOracle, ...]

    def covers(self, G: PermGroup, C: ConjClass) -> bool:
        return any(m.covers(G, C) for m in self.members)

    def assumptions(self) -> tuple[Assumption, ...]:
        out = []
        for m in self.members:
            for a in m.assumptions():
                if a not in out:
                    out.append(a)
        return tuple(out)

    def to_json(self):
        return {"kind": "union", "members": [m.to_json() for m in self.members]}


@dataclass(frozen=True)
class SubgroupWitness:
    order: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...] | None
    descriptor: GroupDescriptor | None = None
    note: str | None = None

    def to_json(self):
        out: dict = {"order": self.order}
        out["generators"] = [to_images(g) for g in self.generators]
        if self.elements is not None:
            out["elements"] = [to_images(g) for g in self.elements]
        if self.descriptor is not None:
            out["descriptor"] = self.descriptor.to_json()
        if self.note:
            out["note"] = self.note
        return out


def subgroup_witness(
    G: PermGroup, subset, descriptor=None, note=None, max_list: int = 64
) -> SubgroupWitness:
    sub = tuple(sorted(subset))
    gens = tuple(generating_subset(G.degree, sub, len(sub) + 1))
    return SubgroupWitness(
        order=len(sub),
        generators=gens,
        elements=sub if len(sub) <= max_list else None,
        descriptor=descriptor,
        note=note,
    )


def identify_group(G: PermGroup) -> GroupDescriptor:
    """Best-effort structured name for a materialized group."""
    if G.is_abelian():
        chain = abelian_invariants(G)
        if chain:
            return GroupDescriptor.abelian(chain)
        return GroupDescriptor.symmetric(1)
    n = is_dihedral(G)
    if n is not None:
        return GroupDescriptor.dihedral(n)
    if G.order() == factorial(G.degree):
        return GroupDescriptor.symmetric(G.degree)
    if G.order() * 2 == factorial(G.degree) and all(sign(g) == 1 for g in G.generators):
        return GroupDescriptor.alternating(G.degree)
    return GroupDescriptor("perm", (G.degree, tuple(G.generators)))


@dataclass(frozen=True)
class ClassChoice:
    """One selected conjugacy class plus its verified properties."""

    cls: ConjClass
    verified: tuple[str, ...]

    def to_json(self):
        out = self.cls.to_json()
        out["verified"] = list(self.verified)
        return out


@dataclass(frozen=True)
class Certificate:
    group: GroupDescriptor
    fc: FieldContext
    theorem: str
    conclusion: str
    witness_subgroup: SubgroupWitness | None
    quotient_desc: GroupDescriptor | None
    embedding: EmbeddingEvidence | None
    genus_evidence: dict | None
    class_evidence: dict | None
    local_evidence: LocalRamificationEvidence | None
    normal_variants: dict | None
    assumptions: tuple[Assumption, ...]
    implied_conclusions: tuple[str, ...] = ()
    uniformity_extension: bool = False
    matched_conditions: tuple[str, ...] = ()

    def to_json(self):
        return {
            "group": self.group.to_json(),
            "field": self.fc.to_json(),
            "theorem": self.theorem,
            "conclusion": self.conclusion,
            "implied_conclusions": list(self.implied_conclusions),
            "uniformity_extension": self.uniformity_extension,
            "matched_conditions": list(self.matched_conditions),
            "witness_subgroup": self.witness_subgroup.to_json()
            if self.witness_subgroup
            else None,
            "quotient": self.quotient_desc.to_json() if self.quotient_desc else None,
            "embedding_evidence": self.embedding.to_json() if self.embedding else None,
            "genus_evidence": self.genus_evidence,
            "class_evidence": self.class_evidence,
            "local_evidence": self.local_evidence.to_json()
            if self.local_evidence
            else None,
            "normal_variants": self.normal_variants,
            "assumptions": [a.to_json() for a in self.assumptions],
        }


@dataclass(frozen=True)
class Refusal:
    reason: str
    message: str
    details: tuple[tuple[str, object], ...] = ()

    def to_json(self):
        return {
            "refusal": self.reason,
            "message": self.message,
            "details": {k: v for k, v in self.details},
        }


def _collect_assumptions(*sources) -> tuple[Assumption, ...]:
    seen = []
    for src in sources:
        if src is None:
            continue
        items = src if isinstance(src, (list, tuple)) else (src,)
        for a in items:
            if a is not None and a not in seen:
                seen.append(a)
    return tuple(seen)


# -- realizability and embedding evidence -------------------------------------


def realizability_justification(
    G: PermGroup,
    fc: FieldContext,
    user_tag: str | None = None,
    group_desc: GroupDescriptor | None = None,
) -> tuple[str, Assumption] | None:
    """How we know the full group is a Galois group over the field."""
    if group_desc is not None and group_desc.kind == "symmetric":
        return "symmetric", SYMMETRIC_REALIZABLE
    if group_desc is not None and group_desc.kind == "alternating":
        return "alternating", ALTERNATING_REALIZABLE
    if G.is_abelian():
        return "abelian", ABELIAN_REALIZABLE
    if G.order() == factorial(G.degree):
        return "symmetric", SYMMETRIC_REALIZABLE
    if G.order() * 2 == factorial(G.degree) and all(sign(g) == 1 for g in G.generators):
        return "alternating", ALTERNATING_REALIZABLE
    if G.is_solvable():
        return "solvable-by-Shafarevich", SHAFAREVICH
    if user_tag is not None:
        return "user-asserted", Assumption(
            "group-realizability", KIND_USER, f"realizability asserted: {user_tag}"
        )
    return None


def _match_alternating_kernel(G: PermGroup, Hset: frozenset, limits: Limits) -> int | None:
    size = len(Hset)
    n = 2
    while factorial(n) // 2 < size:
        n += 1
    if factorial(n) // 2 != size or n in (1, 2, 3, 4, 6):
        return None
    if G.degree == n and all(sign(h) == 1 for h in Hset):
        return n  # the full even subgroup of the natural degree
    if size <= limits.brute_force:
        H = subgroup_as_group(G, Hset)
        if is_isomorphic(H, materialize(GroupDescriptor.alternating(n), limits), limits):
            return n
    return None


def _match_psl2_kernel(G: PermGroup, Hset: frozenset, limits: Limits) -> int | None:
    from .arith import is_prime

    size = len(Hset)
    p = 3
    while p * (p * p - 1) // 2 < size:
        p += 2
    if p * (p * p - 1) // 2 != size or p == 3:
        return None
    if not is_prime(p) or p % 24 in (1, 23):
        return None
    if size <= limits.brute_force:
        H = subgroup_as_group(G, Hset)
        if is_isomorphic(H, materialize_psl2(p, limits), limits):
            return p
    return None


def embedding_star_evidence(
    G: PermGroup,
    H,
    fc: FieldContext,
    realizability: str | None = None,
    assert_gar: str | None = None,
    group_desc: GroupDescriptor | None = None,
    limits: Limits = DEFAULT_LIMITS,
) -> EmbeddingEvidence:
    """Evidence that some G/H-extension embeds into infinitely many
    G-extensions: solvable kernel, recognized simple kernel, or an
    explicit user assertion.  Raises NoEvidence when nothing applies."""
    Hset = frozenset(H)
    if len(Hset) <= 1:
        raise NotNormal("kernel must be non-trivial")
    if not is_normal(G, Hset):
        raise NotNormal("kernel must be a normal subgroup")

    Hgroup = subgroup_as_group(G, Hset)
    if Hgroup.is_solvable():
        just = realizability_justification(G, fc, realizability, group_desc)
        if just is not None:
            tag, assumption = just
            return EmbeddingEvidence(
                rule="SolvableKernel",
                realizability_tag=tag,
                checks=("kernel verified solvable",),
                assumptions=(assumption,),
            )
        raise NoEvidence(
            "kernel is solvable but realizability of the full group needs an assertion"
        )

    # Non-solvable kernel: recognized simple kernels with known
    # infinitely-solvable embedding problems.
    quotient_group = quotient(G, Hset)
    qjust = realizability_justification(quotient_group, fc, realizability)
    n = _match_alternating_kernel(G, Hset, limits)
    if n is not None and qjust is not None:
        return EmbeddingEvidence(
            rule="GARKernel",
            realizability_tag=qjust[0],
            checks=(f"kernel identified as the alternating group on {n} points",),
            assumptions=_collect_assumptions(GAR_TABLE, qjust[1]),
            details=(("kernel", f"A{n}"),),
        )
    p = _match_psl2_kernel(G, Hset, limits)
    if p is not None and qjust is not None:
        return EmbeddingEvidence(
            rule="GARKernel",
            realizability_tag=qjust[0],
            checks=(f"kernel identified as PSL2({p})",),
            assumptions=_collect_assumptions(GAR_TABLE, qjust[1]),
            details=(("kernel", f"PSL2({p})"),),
        )
    if assert_gar is not None:
        size = len(Hset)
        name = SPORADIC_ORDERS.get(size)
        if name is not None and name == assert_gar and qjust is not None:
            return EmbeddingEvidence(
                rule="GARKernel",
                realizability_tag=qjust[0],
                checks=(f"kernel order matches {name}",),
                assumptions=_collect_assumptions(
                    GAR_TABLE,
                    qjust[1],
                    Assumption(
                        "sporadic-identification",
                        KIND_USER,
                        f"kernel asserted to be the sporadic group {name}",
                    ),
                ),
                details=(("kernel", name),),
            )
    if realizability is not None:
        return EmbeddingEvidence(
            rule="UserAssertion",
            realizability_tag="user-asserted",
            assumptions=(
                Assumption(
                    "embedding-star",
                    KIND_USER,
                    f"embedding condition asserted by the caller: {realizability}",
                ),
            ),
        )
    raise NoEvidence(
        "kernel is neither solvable nor a recognized simple kernel; "
        "supply a user assertion"
    )


def index_two_regular_evidence(
    group_order: int,
    inertia_orders: tuple[int, ...],
    distinct_rational_classes: bool,
    fc: FieldContext,
    instance: str,
) -> EmbeddingEvidence:
    """Evidence via a specific full-group realization whose quotient is
    quadratic with two rational branch points (index-2 route).

    Machine checks: the named ramification type has genus >= 2 and
    exactly two or three even indices; rationality of the branch points
    follows from distinct rational classes.  The existence of the
    realization itself is an external fact carried as an assumption.
    """
    rt = RamificationType(group_order, inertia_orders)
    g = rh_genus(rt)
    if g < 2:
        raise NoEvidence(f"named realization has genus {g} < 2")
    evens = [e for e in inertia_orders if e % 2 == 0]
    if len(evens) not in (2, 3):
        raise NoEvidence("need exactly two or three even inertia indices")
    if not distinct_rational_classes:
        raise NoEvidence("branch-point rationality needs distinct rational classes")
    assumptions = [
        Assumption(
            "index-two-regular-instance",
            KIND_EXTERNAL,
            f"a regular realization with inertia type {instance} exists",
        ),
        BRANCH_CYCLE_RATIONALITY,
    ]
    if not fc.is_rational:
        assumptions.append(
            Assumption(
                "base-change",
                KIND_CLASSICAL,
                "rational-regular realizations stay regular with the same "
                "geometric data after base change",
            )
        )
    return EmbeddingEvidence(
        rule="IndexTwoRegular",
        realizability_tag="regular-instance",
        checks=(
            f"inertia type {instance} has genus {g} >= 2",
            f"{len(evens)} even inertia indices",
            "distinct rational classes force rational branch points",
        ),
        assumptions=tuple(assumptions),
        details=(("instance", instance),),
    )


def dihedral_local_evidence(n: int, p: int) -> LocalRamificationEvidence:
    """Built-in local evidence for dihedral groups: completions totally
    ramified of degree n exist at primes 1 mod n, so the quotient by the
    unique order-p normal subgroup ramifies with index at least n/p."""
    return LocalRamificationEvidence(
        rule="dihedral_completion",
        index_kind="at_least",
        index_value=n // p,
        prime_family=f"primes q with q = 1 mod {n}",
        assumptions=(
            Assumption(
                "dihedral-completion",
                KIND_EXTERNAL,
                f"dihedral extensions of degree 2*{n} with prescribed totally "
                f"ramified completions exist at primes q = 1 mod {n}",
            ),
            Assumption(
                "primes-in-progression",
                KIND_CLASSICAL,
                f"infinitely many primes are 1 mod {n}",
            ),
        ),
    )


# -- shared helpers -----------------------------------------------------------


def _require_normal_proper(G: PermGroup, H) -> frozenset:
    Hset = frozenset(H)
    if len(Hset) <= 1:
        raise NotNormal("witness subgroup must be non-trivial")
    if len(Hset) >= G.order():
        raise NotNormal("witness subgroup must be proper")
    if not is_normal(G, Hset):
        raise NotNormal("witness subgroup must be normal")
    return Hset


def _normal_variants_record(
    G: PermGroup,
    Hset: frozenset,
    Qgroup: PermGroup,
    fc: FieldContext,
    minimum: int,
    limits: Limits,
) -> tuple[dict, Refusal | None]:
    """Re-check the genus bound over every normal subgroup with the same
    quotient, when the lattice is small enough to enumerate; otherwise
    record that the bound only depends on the isomorphism class."""
    enumerable = (
        G.order() <= limits.brute_force and len(G.conjugacy_classes()) <= 64
    )
    if not enumerable:
        return (
            {
                "mode": "isomorphism-invariance",
                "note": "genus bounds depend only on the quotient isomorphism class",
            },
            None,
        )
    try:
        normals = normal_subgroups(G, limits)
    except OrderTooLarge:
        return (
            {
                "mode": "isomorphism-invariance",
                "note": "lattice too large; genus bounds depend only on the "
                "quotient isomorphism class",
            },
            None,
        )
    count = 0
    for N in normals:
        if len(N) != len(Hset) or len(N) in (1, G.order()):
            continue
        QN = quotient(G, N)
        if not is_isomorphic(QN, Qgroup, limits):
            continue
        count += 1
        v = minimal_genus_lower_bound(QN, fc, limits)
        if not v.bound.at_least(minimum):
            return {}, Refusal(
                "genus_not_certified",
                "a normal subgroup with isomorphic quotient fails the genus bound",
                (("subgroup_order", len(N)),),
            )
    return {"mode": "enumerated", "isomorphic_quotient_count": count}, None


def _ordered_classes(G: PermGroup) -> list[ConjClass]:
    """Search order for class tuples: element order descending."""
    return sorted(
        G.conjugacy_classes(),
        key=lambda c: (-c.element_order, c.size, c.representative),
    )


def _qualifying_classes(
    G: PermGroup, Hset: frozenset | None, oracle: InertiaOracle | None
):
    """Classes that are non-identity, outside H, maximal-cyclic, and
    (when an oracle is given) oracle-covered.  Also reports classes that
    failed only the oracle, for honest refusal reasons."""
    qualified = []
    oracle_gapped = []
    for C in _ordered_classes(G):
        if C.element_order == 1:
            continue
        if Hset is not None and C.members <= Hset:
            continue
        if not generates_maximal_cyclic(G, C.representative):
            continue
        if oracle is not None and not oracle.covers(G, C):
            oracle_gapped.append(C)
            continue
        qualified.append(C)
    return qualified, oracle_gapped


def _power_indices(G: PermGroup, classes) -> dict[int, frozenset[int]]:
    G.conjugacy_classes()
    out = {}
    for C in classes:
        idx = G._class_index[C.representative]
        out[idx] = class_power_closure(C, G)
    return out


def _find_non_power_tuple(G: PermGroup, candidates, count: int):
    """First (deterministic) tuple of `count` candidates, none of which
    is a power of another."""
    powers = _power_indices(G, candidates)
    idx_of = {id(C): G._class_index[C.representative] for C in candidates}
    for combo in itertools.combinations(candidates, count):
        ok = True
        for a, b in itertools.permutations(combo, 2):
            if idx_of[id(a)] in powers[idx_of[id(b)]]:
                ok = False
                break
        if ok:
            return combo
    return None


# -- the checkers -------------------------------------------------------------


def check_T32(
    G: PermGroup,
    H,
    fc: FieldContext,
    evidence: EmbeddingEvidence,
    limits: Limits = DEFAULT_LIMITS,
    group_desc: GroupDescriptor | None = None,
) -> Certificate | Refusal:
    """Genus-two criterion: a normal subgroup whose quotient has
    certified minimal genus >= 2, plus embedding evidence."""
    Hset = _require_normal_proper(G, H)
    if evidence is None:
        return Refusal("embedding_not_certified", "no embedding evidence supplied")
    Q = quotient(G, Hset)
    verdict = minimal_genus_lower_bound(Q, fc, limits)
    if verdict.bound != GenusBound.AT_LEAST_TWO:
        return Refusal(
            "genus_not_certified",
            f"quotient genus bound is {verdict.bound.value}, need AtLeastTwo",
        )
    variants, refusal = _normal_variants_record(G, Hset, Q, fc, 2, limits)
    if refusal is not None:
        return refusal
    qdesc = identify_group(Q)
    return Certificate(
        group=group_desc or identify_group(G),
        fc=fc,
        theorem=CRITERION_GENUS_TWO,
        conclusion=NO_FINITE_SET,
        witness_subgroup=subgroup_witness(G, Hset),
        quotient_desc=qdesc,
        embedding=evidence,
        genus_evidence=verdict.to_json(),
        class_evidence=None,
        local_evidence=None,
        normal_variants=variants,
        assumptions=_collect_assumptions(evidence.assumptions),
        implied_conclusions=(NO_PARAMETRIC_EXT,),
        uniformity_extension=True,
    )


def check_T34(
    G: PermGroup,
    H,
    fc: FieldContext,
    evidence: EmbeddingEvidence,
    local_evidence: LocalRamificationEvidence,
    limits: Limits = DEFAULT_LIMITS,
    group_desc: GroupDescriptor | None = None,
) -> Certificate | Refusal:
    """Genus-one criterion: quotient genus >= 1 plus local ramification
    evidence at infinitely many primes (weaker threshold over the
    rationals)."""
    Hset = _require_normal_proper(G, H)
    if evidence is None:
        return Refusal("embedding_not_certified", "no embedding evidence supplied")
    if local_evidence is None:
        return Refusal("missing_local_evidence", "no local ramification evidence")
    if not local_evidence.satisfies_threshold(fc.is_rational):
        return Refusal(
            "missing_local_evidence",
            "claimed ramification index does not clear the threshold "
            f"({local_evidence.index_kind} {local_evidence.index_value})",
        )
    Q = quotient(G, Hset)
    verdict = minimal_genus_lower_bound(Q, fc, limits)
    if not verdict.bound.at_least(1):
        return Refusal(
            "genus_not_certified",
            f"quotient genus bound is {verdict.bound.value}, need at least AtLeastOne",
        )
    variants, refusal = _normal_variants_record(G, Hset, Q, fc, 1, limits)
    if refusal is not None:
        return refusal
    theorem = CRITERION_GENUS_ONE_RATIONAL if fc.is_rational else CRITERION_GENUS_ONE
    return Certificate(
        group=group_desc or identify_group(G),
        fc=fc,
        theorem=theorem,
        conclusion=NO_FINITE_SET,
        witness_subgroup=subgroup_witness(G, Hset),
        quotient_desc=identify_group(Q),
        embedding=evidence,
        genus_evidence=verdict.to_json(),
        class_evidence=None,
        local_evidence=local_evidence,
        normal_variants=variants,
        assumptions=_collect_assumptions(
            evidence.assumptions, local_evidence.assumptions
        ),
        implied_conclusions=(NO_PARAMETRIC_EXT,),
    )


def _variant_subgroups(
    G: PermGroup, Hset: frozenset, limits: Limits, cyclic_order: int | None = None
) -> list[frozenset]:
    """All normal subgroups with quotient isomorphic to G/H (or cyclic
    of the given order)."""
    Qgroup = quotient(G, Hset)
    out = []
    for N in normal_subgroups(G, limits):
        if len(N) != len(Hset) or len(N) == G.order():
            continue
        Nset = frozenset(N)
        QN = quotient(G, Nset)
        if cyclic_order is not None:
            if QN.order() == cyclic_order and QN.is_cyclic():
                out.append(Nset)
        elif is_isomorphic(QN, Qgroup, limits):
            out.append(Nset)
    return out


def check_T36(
    G: PermGroup,
    H,
    fc: FieldContext,
    evidence: EmbeddingEvidence,
    oracle: InertiaOracle,
    limits: Limits = DEFAULT_LIMITS,
    group_desc: GroupDescriptor | None = None,
) -> Certificate | Refusal:
    """Five-class criterion: for every normal subgroup with the same
    quotient, five inertia-realizable maximal-cyclic classes outside it,
    pairwise not powers of one another."""
    Hset = _require_normal_proper(G, H)
    if evidence is None:
        return Refusal("embedding_not_certified", "no embedding evidence supplied")
    per_variant = []
    for Nset in _variant_subgroups(G, Hset, limits):
        qualified, gapped = _qualifying_classes(G, Nset, oracle)
        combo = _find_non_power_tuple(G, qualified, 5)
        if combo is None:
            if gapped and _find_non_power_tuple(G, qualified + gapped, 5) is not None:
                return Refusal(
                    "oracle_gap",
                    "five suitable classes exist but the inertia oracle does not "
                    "cover them",
                    (("subgroup_order", len(Nset)),),
                )
            return Refusal(
                "class_search_failed",
                "no five classes outside the subgroup are maximal-cyclic, "
                "covered, and pairwise non-powers",
                (("subgroup_order", len(Nset)),),
            )
        per_variant.append(
            {
                "subgroup_order": len(Nset),
                "classes": [
                    ClassChoice(
                        C,
                        (
                            "outside subgroup",
                            "maximal cyclic",
                            "pairwise non-power",
                            "inertia oracle",
                        ),
                    ).to_json()
                    for C in combo
                ],
            }
        )
    return Certificate(
        group=group_desc or identify_group(G),
        fc=fc,
        theorem=CRITERION_FIVE_CLASSES,
        conclusion=NO_PARAMETRIC_EXT,
        witness_subgroup=subgroup_witness(G, Hset),
        quotient_desc=identify_group(quotient(G, Hset)),
        embedding=evidence,
        genus_evidence=None,
        class_evidence={"per_subgroup": per_variant, "count": 5},
        local_evidence=None,
        normal_variants={"mode": "enumerated", "count": len(per_variant)},
        assumptions=_collect_assumptions(
            evidence.assumptions, oracle.assumptions()
        ),
    )


def check_T37(
    G: PermGroup,
    H,
    evidence: EmbeddingEvidence,
    oracle: InertiaOracle,
    limits: Limits = DEFAULT_LIMITS,
    group_desc: GroupDescriptor | None = None,
) -> Certificate | Refusal:
    """Cyclic-quotient criterion over the rationals: quotient cyclic of
    order >= 3 and, for every subgroup with such a quotient, three
    distinct inertia-realizable maximal-cyclic classes outside it."""
    fc = FieldContext.rationals()
    Hset = _require_normal_proper(G, H)
    if evidence is None:
        return Refusal("embedding_not_certified", "no embedding evidence supplied")
    Q = quotient(G, Hset)
    n = Q.order()
    if n < 3 or not Q.is_cyclic():
        raise NotNormal("quotient must be cyclic of order >= 3")
    per_variant = []
    for Nset in _variant_subgroups(G, Hset, limits, cyclic_order=n):
        qualified, gapped = _qualifying_classes(G, Nset, oracle)
        if len(qualified) < 3:
            if len(qualified) + len(gapped) >= 3:
                return Refusal(
                    "oracle_gap",
                    "three suitable classes exist but the inertia oracle does "
                    "not cover them",
                    (("subgroup_order", len(Nset)),),
                )
            return Refusal(
                "class_search_failed",
                "fewer than three qualifying classes outside the subgroup",
                (("subgroup_order", len(Nset)),),
            )
        per_variant.append(
            {
                "subgroup_order": len(Nset),
                "classes": [
                    ClassChoice(
                        C, ("outside subgroup", "maximal cyclic", "inertia oracle")
                    ).to_json()
                    for C in qualified[:3]
                ],
            }
        )
    return Certificate(
        group=group_desc or identify_group(G),
        fc=fc,
        theorem=CRITERION_CYCLIC_THREE,
        conclusion=NO_PARAMETRIC_EXT,
        witness_subgroup=subgroup_witness(G, Hset),
        quotient_desc=GroupDescriptor.abelian([n]),
        embedding=evidence,
        genus_evidence=None,
        class_evidence={"per_subgroup": per_variant, "count": 3},
        local_evidence=None,
        normal_variants={"mode": "enumerated", "count": len(per_variant)},
        assumptions=_collect_assumptions(evidence.assumptions, oracle.assumptions()),
    )


def every_quadratic_evidence(
    G: PermGroup,
    Hset: frozenset,
    group_desc: GroupDescriptor | None = None,
    user: str | None = None,
) -> tuple[dict, tuple[Assumption, ...]] | None:
    """Evidence that every quadratic extension embeds into a full-group
    extension: the symmetric-group rule, or a split abelian kernel, or a
    user assertion."""
    if (group_desc is not None and group_desc.kind == "symmetric") or G.order() == factorial(
        G.degree
    ):
        return {"rule": "symmetric"}, (NEUMANN_QUADRATIC,)
    Hgroup = subgroup_as_group(G, Hset)
    if Hgroup.is_abelian():
        ident = G.identity()
        for s in G.elements():
            if s not in Hset and compose_squared_is_identity(s):
                return (
                    {"rule": "split_abelian_kernel"},
                    (IKEDA_SPLIT_ABELIAN,),
                )
    if user is not None:
        return {"rule": "user_assertion"}, (
            Assumption("every-quadratic-embeds", KIND_USER, user),
        )
    return None


def compose_squared_is_identity(p: Perm) -> bool:
    return all(p[p[i]] == i for i in range(len(p)))


def check_T38(
    G: PermGroup,
    evidence: EmbeddingEvidence,
    oracle: InertiaOracle,
    limits: Limits = DEFAULT_LIMITS,
    group_desc: GroupDescriptor | None = None,
    every_quadratic_assertion: str | None = None,
) -> Certificate | Refusal:
    """Index-two criterion over the rationals: unique index-2 subgroup,
    every quadratic embeds, one quadratic embeds infinitely often, and
    enough maximal-cyclic classes outside the subgroup."""
    fc = FieldContext.rationals()
    if evidence is None:
        return Refusal("embedding_not_certified", "no embedding evidence supplied")
    order = G.order()
    if order % 2:
        return Refusal("non_unique_index_two", "odd order group has no index-2 subgroup")
    index2 = [
        frozenset(N) for N in normal_subgroups(G, limits) if 2 * len(N) == order
    ]
    if len(index2) != 1:
        return Refusal(
            "non_unique_index_two",
            f"found {len(index2)} index-2 subgroups, need exactly one",
        )
    Hset = index2[0]
    quad = every_quadratic_evidence(G, Hset, group_desc, every_quadratic_assertion)
    if quad is None:
        return Refusal(
            "embedding_not_certified",
            "cannot certify that every quadratic extension embeds; supply an assertion",
        )
    quad_record, quad_assumptions = quad
    qualified, gapped = _qualifying_classes(G, Hset, oracle)
    if len(qualified) >= 3:
        chosen = qualified[:3]
        mode = "three_classes"
    elif len(qualified) == 2:
        a, b = qualified
        pa = class_power_closure(a, G)
        G.conjugacy_classes()
        if G._class_index[b.representative] in pa:
            chosen = [a, b]
        else:
            pb = class_power_closure(b, G)
            if G._class_index[a.representative] in pb:
                chosen = [b, a]
            else:
                return Refusal(
                    "class_search_failed",
                    "two qualifying classes, but neither is a power of the other",
                )
        mode = "two_classes_power"
    else:
        if len(qualified) + len(gapped) >= 2:
            return Refusal(
                "oracle_gap",
                "suitable classes exist but the inertia oracle does not cover them",
            )
        return Refusal(
            "class_search_failed", "fewer than two qualifying classes outside the subgroup"
        )
    return Certificate(
        group=group_desc or identify_group(G),
        fc=fc,
        theorem=CRITERION_INDEX_TWO,
        conclusion=NO_PARAMETRIC_EXT,
        witness_subgroup=subgroup_witness(G, Hset),
        quotient_desc=GroupDescriptor.abelian([2]),
        embedding=evidence,
        genus_evidence=None,
        class_evidence={
            "mode": mode,
            "every_quadratic": quad_record,
            "classes": [
                ClassChoice(
                    C, ("outside subgroup", "maximal cyclic", "inertia oracle")
                ).to_json()
                for C in chosen
            ],
        },
        local_evidence=None,
        normal_variants={"mode": "enumerated", "count": 1},
        assumptions=_collect_assumptions(
            evidence.assumptions, quad_assumptions, oracle.assumptions()
        ),
    )
