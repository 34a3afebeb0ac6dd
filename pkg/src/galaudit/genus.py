"""Genus arithmetic for Galois covers of the line, and certified
lower bounds on the minimal genus attainable by a regular realization
of a given finite group over a given number field.

The bound engine only ever certifies AtLeastOne / AtLeastTwo from
necessary conditions; it never claims an exact minimal genus.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from .arith import prime_factors, primes_upto, totient  # noqa: F401 (totient re-exported)
from .config import DEFAULT_LIMITS, Limits
from .errors import InvalidDescriptor, NonIntegralGenus
from .groups import (
    GroupDescriptor,
    PermGroup,
    abelian_invariants,
    is_dihedral,
    is_isomorphic,
    materialize,
)


@dataclass(frozen=True)
class RamificationType:
    """Unordered ramification indices (e_1, ..., e_r) for a cover with
    Galois group of the given order; every index divides the order."""

    group_order: int
    indices: tuple[int, ...]

    def __init__(self, group_order: int, indices):
        indices = tuple(sorted(int(e) for e in indices))
        if group_order < 1:
            raise InvalidDescriptor("group order must be positive")
        if group_order == 1:
            if indices:
                raise InvalidDescriptor("the trivial group is unramified")
        elif not indices:
            raise InvalidDescriptor("a non-trivial cover has at least one index")
        for e in indices:
            if e < 2:
                raise InvalidDescriptor("ramification indices are >= 2")
            if group_order % e:
                raise InvalidDescriptor(f"index {e} does not divide {group_order}")
        object.__setattr__(self, "group_order", group_order)
        object.__setattr__(self, "indices", indices)


def rh_genus(rt: RamificationType) -> int:
    """Genus from the degree/ramification count for a Galois cover.

    2g - 2 = -2N + sum_i N(1 - 1/e_i).  Negative output means no cover
    with this type exists; an odd right-hand side is inconsistent input.
    """
    n = rt.group_order
    two_g_minus_two = -2 * n
    for e in rt.indices:
        two_g_minus_two += n - n // e
    if two_g_minus_two % 2:
        raise NonIntegralGenus(f"2g-2 = {two_g_minus_two} is odd for {rt}")
    return two_g_minus_two // 2 + 1


def enumerate_low_genus_types(
    group_order: int, element_orders, genus_cap: int
) -> tuple[RamificationType, ...]:
    """All ramification types over the allowed indices with genus in
    [0, genus_cap].  Each extra index adds at least N/2 to 2g-2, so the
    number of indices is bounded and the enumeration terminates."""
    if genus_cap not in (0, 1):
        raise InvalidDescriptor("genus cap must be 0 or 1")
    allowed = sorted(
        {int(e) for e in element_orders if e >= 2 and group_order % int(e) == 0}
    )
    if group_order == 1 or not allowed:
        return ()
    # r * N/2 <= 2*cap - 2 + 2N  =>  r <= 4 + (4*cap - 4)/N
    max_r = 4 + max(0, (4 * genus_cap - 4) // group_order)
    out = []
    from itertools import combinations_with_replacement

    for r in range(1, max_r + 1):
        for combo in combinations_with_replacement(allowed, r):
            rt = RamificationType(group_order, combo)
            total = -2 * group_order + sum(
                group_order - group_order // e for e in combo
            )
            if total % 2:
                continue
            g = total // 2 + 1
            if 0 <= g <= genus_cap:
                out.append(rt)
    return tuple(sorted(out, key=lambda rt: (len(rt.indices), rt.indices)))


# -- field contexts ----------------------------------------------------------


@dataclass(frozen=True)
class FieldContext:
    """Coarse description of the base number field.

    The rationals are exact; a general field is described only by its
    degree, optionally its set of ramified primes, and whether it has a
    non-trivial cyclic subextension.  That is enough to bound the prime
    set used by the cyclotomic criteria.
    """

    degree: int
    ramified: tuple[int, ...] | None = None
    has_cyclic_subextension: bool = True
    prime_override: tuple[int, ...] | None = None

    @staticmethod
    def rationals() -> "FieldContext":
        return FieldContext(degree=1, ramified=(), has_cyclic_subextension=False)

    @staticmethod
    def number_field(
        degree: int,
        ramified=None,
        has_cyclic_subextension: bool = True,
        prime_override=None,
    ) -> "FieldContext":
        if degree < 1:
            raise InvalidDescriptor("field degree must be >= 1")
        return FieldContext(
            degree=degree,
            ramified=None if ramified is None else tuple(sorted(set(ramified))),
            has_cyclic_subextension=has_cyclic_subextension,
            prime_override=None
            if prime_override is None
            else tuple(sorted(set(prime_override))),
        )

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def to_json(self):
        if self.is_rational:
            return "Q"
        out: dict = {"degree": self.degree}
        if self.ramified is not None:
            out["ramified"] = list(self.ramified)
        out["cyclic_subextension"] = self.has_cyclic_subextension
        if self.prime_override is not None:
            out["primes_override"] = list(self.prime_override)
        return out

    @staticmethod
    def from_json(obj) -> "FieldContext":
        if obj in ("Q", "q", "rationals"):
            return FieldContext.rationals()
        if isinstance(obj, dict):
            if obj.get("degree") == 1:
                return FieldContext.rationals()
            return FieldContext.number_field(
                obj["degree"],
                ramified=obj.get("ramified"),
                has_cyclic_subextension=obj.get("cyclic_subextension", True),
                prime_override=obj.get("primes_override"),
            )
        raise InvalidDescriptor(f"bad field context {obj!r}")


@dataclass(frozen=True)
class PrimeSet:
    """Primes p with [k(zeta_p):k] <= 2, or a certified finite superset."""

    primes: tuple[int, ...]
    exact: bool

    def to_json(self):
        return {"primes": list(self.primes), "exact": self.exact}


def prime_set_S(fc: FieldContext) -> PrimeSet:
    """The prime set controlling small cyclotomic degrees over fc.

    Exactly {2, 3} over the rationals, over fields ramified only at 2
    and 3, and over fields with no non-trivial cyclic subextension.
    Otherwise a certified superset: primes up to 2*degree + 1,
    intersected with {2, 3} union the ramified primes when known.
    """
    if fc.prime_override is not None:
        return PrimeSet(tuple(sorted(set(fc.prime_override) | {2, 3})), exact=False)
    if fc.is_rational:
        return PrimeSet((2, 3), exact=True)
    if fc.ramified is not None and set(fc.ramified) <= {2, 3}:
        return PrimeSet((2, 3), exact=True)
    if not fc.has_cyclic_subextension:
        return PrimeSet((2, 3), exact=True)
    sup = set(primes_upto(2 * fc.degree + 1))
    if fc.ramified is not None:
        sup &= {2, 3} | set(fc.ramified)
    sup |= {2, 3}
    # {2, 3} is always contained, so a superset that collapses to it is exact.
    return PrimeSet(tuple(sorted(sup)), exact=sup == {2, 3})


# -- minimal genus lower bounds ----------------------------------------------


class GenusBound(enum.Enum):
    NO_BOUND = "NoLowerBoundCertified"
    AT_LEAST_ONE = "AtLeastOne"
    AT_LEAST_TWO = "AtLeastTwo"

    def at_least(self, k: int) -> bool:
        return {self.NO_BOUND: 0, self.AT_LEAST_ONE: 1, self.AT_LEAST_TWO: 2}[self] >= k


@dataclass(frozen=True)
class MinimalGenusVerdict:
    bound: GenusBound
    reason: str | None
    field: FieldContext

    def to_json(self):
        return {
            "bound": self.bound.value,
            "reason": self.reason,
            "field": self.field.to_json(),
        }


# Abelian groups admitting a realization of genus <= 1 (necessary lists).
_LOW_GENUS_ABELIAN_ANY = {(2, 2), (2, 4), (3, 3), (2, 2, 2)}
_LOW_GENUS_ABELIAN_Q = {(2,), (3,), (4,), (6,), (2, 2), (2, 2, 2)}


def abelian_in_low_genus_list(chain: tuple[int, ...], fc: FieldContext) -> bool:
    """Whether this abelian type can possibly have a genus <= 1 realization."""
    if fc.is_rational:
        return tuple(chain) in _LOW_GENUS_ABELIAN_Q
    return len(chain) <= 1 or tuple(chain) in _LOW_GENUS_ABELIAN_ANY


@dataclass(frozen=True)
class GroupProfile:
    """Isomorphism-invariant facts the genus rules read."""

    order: int
    solvable: bool
    abelian_chain: tuple[int, ...] | None
    cyclic: bool
    dihedral_n: int | None
    is_alt5: bool

    @property
    def abelian(self) -> bool:
        return self.abelian_chain is not None


def group_profile(
    group: GroupDescriptor | PermGroup, limits: Limits = DEFAULT_LIMITS
) -> GroupProfile:
    if isinstance(group, GroupDescriptor):
        prof = _profile_from_descriptor(group, limits)
        if prof is not None:
            return prof
        group = materialize(group, limits)
    order = group.order()
    chain = abelian_invariants(group) if group.is_abelian() else None
    solvable = True if chain is not None else group.is_solvable()
    is_alt5 = False
    if order == 60 and not solvable:
        is_alt5 = is_isomorphic(
            group, materialize(GroupDescriptor.alternating(5), limits), limits
        )
    return GroupProfile(
        order=order,
        solvable=solvable,
        abelian_chain=chain,
        cyclic=chain is not None and len(chain) <= 1,
        dihedral_n=is_dihedral(group),
        is_alt5=is_alt5,
    )


def _profile_from_descriptor(desc: GroupDescriptor, limits: Limits) -> GroupProfile | None:
    order = desc.order()
    if order is None:
        return None
    chain = desc.abelian_chain()
    if chain is not None:
        return GroupProfile(
            order=order,
            solvable=True,
            abelian_chain=chain,
            cyclic=len(chain) <= 1,
            dihedral_n={(2,): 1, (2, 2): 2}.get(chain),
            is_alt5=False,
        )
    kind, data = desc.kind, desc.data
    if kind == "dihedral":
        return GroupProfile(order, True, None, False, data[0], False)
    if kind == "symmetric":
        return GroupProfile(order, data[0] <= 4, None, False, 3 if data[0] == 3 else None, False)
    if kind == "alternating":
        n = data[0]
        return GroupProfile(order, n <= 4, None, False, None, n == 5)
    if kind == "gl":
        n, q = data
        return GroupProfile(order, (n, q) in ((2, 2), (2, 3)), None, False, None, False)
    # Non-abelian products fall through to materialization so that
    # dihedral/simple recognition sees the actual group.
    return None


def minimal_genus_lower_bound(
    group: GroupDescriptor | PermGroup,
    fc: FieldContext,
    limits: Limits = DEFAULT_LIMITS,
) -> MinimalGenusVerdict:
    """Certified lower bound on the minimal genus of a regular
    realization of the group over the field.

    Fires AtLeastTwo when the group is neither solvable nor the order-60
    simple group; over the rationals additionally when it is neither
    solvable of even order nor of order 3; for abelian groups outside
    the low-genus abelian list of the field; and for cyclic groups of
    order coprime to 6 whose prime factors avoid the field's prime set
    (a branch-point counting argument).  Fires AtLeastOne for dihedral
    groups over the rationals outside the genus-zero parameter list.
    """
    prof = group_profile(group, limits)
    nontrivial = prof.order > 1

    def verdict(bound: GenusBound, reason: str | None) -> MinimalGenusVerdict:
        return MinimalGenusVerdict(bound=bound, reason=reason, field=fc)

    if nontrivial and not prof.solvable and not prof.is_alt5:
        return verdict(
            GenusBound.AT_LEAST_TWO,
            "genus <= 1 forces a solvable group or the order-60 simple group",
        )
    if fc.is_rational and nontrivial:
        if not (prof.solvable and prof.order % 2 == 0) and prof.order != 3:
            return verdict(
                GenusBound.AT_LEAST_TWO,
                "over the rationals, genus <= 1 forces solvable of even order or order 3",
            )
    if prof.abelian and nontrivial and not abelian_in_low_genus_list(prof.abelian_chain, fc):
        return verdict(
            GenusBound.AT_LEAST_TWO,
            "abelian type outside the genus <= 1 list for this field",
        )
    if prof.cyclic and nontrivial and gcd(prof.order, 6) == 1:
        S = prime_set_S(fc)
        if all(p not in S.primes for p in prime_factors(prof.order)):
            return verdict(
                GenusBound.AT_LEAST_TWO,
                "cyclic order avoids the field's small-cyclotomic primes",
            )
    if fc.is_rational and prof.dihedral_n is not None and prof.dihedral_n not in (1, 2, 3, 4, 6):
        return verdict(
            GenusBound.AT_LEAST_ONE,
            "dihedral parameter outside the rational genus-zero list",
        )
    return verdict(GenusBound.NO_BOUND, None)
