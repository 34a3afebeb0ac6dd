"""Resource bounds used by enumeration-heavy operations.

All bounds are engineering choices with predictable failure modes
(OrderTooLarge / FactorizationTooLarge), not mathematical constants.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Limits:
    # Maximal number of elements a PermGroup will enumerate.
    enumeration: int = 10_000
    # Maximal group order for normal-subgroup and isomorphism brute force.
    brute_force: int = 2_000
    # Abort normal-subgroup search when the lattice grows past this.
    subgroup_cap: int = 20_000
    # Trial division bound for squarefree-part factorization.
    factor_trial: int = 1_000_000
    # Beyond this, an unfactored cofactor raises FactorizationTooLarge.
    factor_abort: int = 10**18
    # Chunk size (pairs) for vectorized point sweeps.
    sweep_chunk: int = 2_000_000

    def with_enumeration(self, bound: int) -> "Limits":
        return replace(self, enumeration=bound)

    def with_brute_force(self, bound: int) -> "Limits":
        return replace(self, brute_force=bound)


DEFAULT_LIMITS = Limits()

_FIELDS = {f: int for f in Limits.__dataclass_fields__}


def limits_from_pairs(pairs: dict) -> Limits:
    """Build Limits from a key=value mapping (CLI --config files)."""
    kwargs = {}
    for key, value in pairs.items():
        name = key.strip().replace("-", "_")
        if name not in _FIELDS:
            raise ValueError(f"unknown limit {key!r}")
        kwargs[name] = int(value)
    return Limits(**kwargs)
