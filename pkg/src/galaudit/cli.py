"""Command-line front end.

All outputs are JSON (sorted keys, no timestamps): identical inputs give
byte-identical outputs.  Exit codes: 0 for success or certificate, 2 for
an honest refusal or not-covered verdict, 1 for usage or runtime errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .arith import squarefree_range
from .config import DEFAULT_LIMITS, Limits, limits_from_pairs
from .criteria import (
    ABELIAN_ORACLE,
    SYMMETRIC_ODD_ORACLE,
    Certificate,
    InertiaOracle,
    LocalRamificationEvidence,
    OracleChain,
    Refusal,
    check_T32,
    check_T34,
    check_T36,
    check_T37,
    check_T38,
    embedding_star_evidence,
)
from .curves import (
    HyperCurve,
    coeffs_from_string,
    point_search,
    prop81_classify,
    realized_sets_both_sides,
    specialize,
    specialize_infinity,
    twist_correspondence_check,
)
from .errors import AuditError, NoEvidence, NotNormal
from .families import (
    abelian_chains_of_order,
    abelian_suitable_quotient,
    classify,
    sn_select_classes,
)
from .cycletypes import format_type
from .genus import (
    FieldContext,
    RamificationType,
    enumerate_low_genus_types,
    prime_set_S,
    rh_genus,
)
from .groups import (
    GroupDescriptor,
    fiber_power,
    materialize,
    normal_subgroups,
    quotient,
)
from .perms import parse_perm


def _emit(obj, out_path: str | None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _field(arg: str) -> FieldContext:
    if arg.strip() in ("Q", "q", "rationals"):
        return FieldContext.rationals()
    return FieldContext.from_json(json.loads(arg))


def _group(arg: str) -> GroupDescriptor:
    return GroupDescriptor.from_json(json.loads(arg))


def _limits(args) -> Limits:
    if not getattr(args, "config", None):
        return DEFAULT_LIMITS
    pairs = {}
    with open(args.config) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            pairs[key.strip()] = value.strip()
    return limits_from_pairs(pairs)


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def _range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("..")
    if not hi:
        lo, _, hi = text.partition(":")
    return int(lo), int(hi)


# -- audit ----------------------------------------------------------------------


def _build_oracle(G, assertions) -> object:
    members = [ABELIAN_ORACLE, SYMMETRIC_ODD_ORACLE]
    types = assertions.get("inertia_types")
    if types:
        members.append(
            InertiaOracle(
                "user", frozenset(tuple(sorted(t, reverse=True)) for t in types)
            )
        )
    return OracleChain(tuple(members))


def audit_group(desc, fc, assertions, limits):
    """Certificate for the group by any applicable criterion: the family
    classifier first, then the class-count criteria over every candidate
    subgroup."""
    verdict = classify(desc, fc, limits, verify=False)
    if verdict.covered:
        return verdict.certificate, list(verdict.diagnostics)
    refusals = list(verdict.diagnostics)
    try:
        G = materialize(desc, limits)
    except AuditError as exc:
        refusals.append({"error": str(exc)})
        return None, refusals
    oracle = _build_oracle(G, assertions)
    reali = assertions.get("realizability")
    gar = assertions.get("gar")

    explicit_h = assertions.get("subgroup")
    theorem = assertions.get("theorem")
    if explicit_h is not None and theorem is not None:
        H = frozenset(
            tuple(sorted(_closure_of_specs(G, explicit_h)))
        )
        out = _run_theorem(G, H, fc, theorem, assertions, oracle, desc, limits)
        if isinstance(out, Certificate):
            return out, refusals
        refusals.append(out.to_json())
        return None, refusals

    candidates = []
    try:
        for N in normal_subgroups(G, limits):
            if 1 < len(N) < G.order():
                candidates.append(frozenset(N))
    except AuditError as exc:
        refusals.append({"error": str(exc)})

    for checker in ("T3.6", "T3.7", "T3.8"):
        if checker == "T3.8":
            try:
                H0 = next(
                    (h for h in candidates if 2 * len(h) == G.order()), None
                )
                if H0 is None:
                    continue
                evidence = embedding_star_evidence(
                    G, H0, fc, realizability=reali, assert_gar=gar,
                    group_desc=desc, limits=limits,
                )
                out = check_T38(
                    G, evidence, oracle, limits, group_desc=desc,
                    every_quadratic_assertion=assertions.get("every_quadratic"),
                )
            except (AuditError, NotNormal) as exc:
                refusals.append({"criterion": checker, "error": str(exc)})
                continue
            if isinstance(out, Certificate):
                return out, refusals
            refusals.append({"criterion": checker, **out.to_json()})
            continue
        for H in candidates:
            try:
                evidence = embedding_star_evidence(
                    G, H, fc, realizability=reali, assert_gar=gar,
                    group_desc=desc, limits=limits,
                )
                if checker == "T3.6":
                    out = check_T36(G, H, fc, evidence, oracle, limits, group_desc=desc)
                else:
                    out = check_T37(G, H, evidence, oracle, limits, group_desc=desc)
            except (AuditError, NotNormal) as exc:
                refusals.append(
                    {"criterion": checker, "subgroup_order": len(H), "error": str(exc)}
                )
                continue
            if isinstance(out, Certificate):
                return out, refusals
            refusals.append(
                {"criterion": checker, "subgroup_order": len(H), **out.to_json()}
            )
    return None, refusals


def _closure_of_specs(G, specs):
    from .groups import closure_of

    gens = [parse_perm(s, G.degree) for s in specs]
    return closure_of(G.degree, gens, G.order() + 1)


def _run_theorem(G, H, fc, theorem, assertions, oracle, desc, limits):
    evidence = embedding_star_evidence(
        G,
        H,
        fc,
        realizability=assertions.get("realizability"),
        assert_gar=assertions.get("gar"),
        group_desc=desc,
        limits=limits,
    )
    if theorem == "T3.2":
        return check_T32(G, H, fc, evidence, limits, group_desc=desc)
    if theorem in ("T3.4", "T3.4addendum"):
        loc = assertions.get("local_evidence")
        local = None
        if loc:
            local = LocalRamificationEvidence(
                rule=loc.get("rule", "user_assertion"),
                index_kind=loc.get("index_kind", "at_least"),
                index_value=int(loc.get("index_value", 0)),
                prime_family=loc.get("prime_family", "user-asserted prime family"),
            )
        return check_T34(G, H, fc, evidence, local, limits, group_desc=desc)
    if theorem == "T3.6":
        return check_T36(G, H, fc, evidence, oracle, limits, group_desc=desc)
    if theorem == "T3.7":
        return check_T37(G, H, evidence, oracle, limits, group_desc=desc)
    if theorem == "T3.8":
        return check_T38(
            G, evidence, oracle, limits, group_desc=desc,
            every_quadratic_assertion=assertions.get("every_quadratic"),
        )
    raise AuditError(f"unknown criterion {theorem!r}")


# -- subcommands -----------------------------------------------------------------


def _cmd_audit(args) -> int:
    limits = _limits(args)
    desc = _group(args.group)
    fc = _field(args.field)
    assertions = {}
    if args.assertions:
        with open(args.assertions) as fh:
            assertions = json.load(fh)
    cert, refusals = audit_group(desc, fc, assertions, limits)
    if cert is not None:
        _emit(cert.to_json(), args.out)
        return 0
    _emit({"certificate": None, "refusals": refusals}, args.out)
    return 2


def _cmd_classify(args) -> int:
    limits = _limits(args)
    verdict = classify(_group(args.group), _field(args.field), limits, args.verify)
    _emit(verdict.to_json(), args.out)
    return 0 if verdict.covered else 2


def _cmd_classify_all(args) -> int:
    limits = _limits(args)
    fc = _field(args.field)
    lo, hi = _range(args.orders)
    records = []
    counts = {"covered": 0, "exception": 0, "not_covered": 0}
    if args.abelian_only:
        descs = [
            GroupDescriptor.abelian(chain)
            for n in range(max(2, lo), hi + 1)
            for chain in abelian_chains_of_order(n)
        ]
    elif args.dihedral_only:
        descs = [GroupDescriptor.dihedral(n) for n in range(max(1, lo), hi + 1)]
    else:
        raise AuditError("choose --abelian-only or --dihedral-only for order sweeps")
    for desc in descs:
        verdict = classify(desc, fc, limits, verify=False)
        if verdict.covered:
            counts["covered"] += 1
        elif verdict.exception_reason:
            counts["exception"] += 1
        else:
            counts["not_covered"] += 1
        records.append(
            {
                "group": desc.to_json(),
                "order": desc.order(),
                "covered": verdict.covered,
                "matched_condition": verdict.matched_condition,
                "exception": verdict.exception_reason,
            }
        )
    _emit(
        {
            "tool_version": __version__,
            "field": fc.to_json(),
            "orders": [lo, hi],
            "summary": counts,
            "records": records,
        },
        args.out,
    )
    return 0


def _cmd_genus(args) -> int:
    rt = RamificationType(args.order, _int_list(args.ram))
    _emit(rh_genus(rt), args.out)
    return 0


def _cmd_genus_table(args) -> int:
    types = enumerate_low_genus_types(args.order, _int_list(args.element_orders), args.cap)
    _emit(
        [
            {"indices": list(rt.indices), "genus": rh_genus(rt)}
            for rt in types
        ],
        args.out,
    )
    return 0


def _cmd_prime_set(args) -> int:
    _emit(prime_set_S(_field(args.field)).to_json(), args.out)
    return 0


def _cmd_sn_classes(args) -> int:
    types = sn_select_classes(args.n, args.count)
    _emit(
        [{"cycle_type": list(t), "notation": format_type(t)} for t in types],
        args.out,
    )
    return 0


def _cmd_abelian_quotient(args) -> int:
    fc = _field(args.field) if args.field else None
    result = abelian_suitable_quotient(_int_list(args.invariants), fc)
    _emit(result.to_json(), args.out)
    return 0 if result.kind != "exception" else 2


def _cmd_fiber_power(args) -> int:
    limits = _limits(args)
    G = materialize(_group(args.group), limits)
    kernel = tuple(sorted(_closure_of_specs(G, json.loads(args.kernel))))
    fp = fiber_power(G, kernel, args.n, limits)
    _emit(
        {
            "base_order": G.order(),
            "kernel_order": len(kernel),
            "exponent": fp.exponent,
            "product_order": fp.group.order(),
            "kernel_quotient_order": quotient(fp.group, fp.big_kernel).order(),
            "quotient_checks": list(fp.quotient_checks),
        },
        args.out,
    )
    return 0


def _cmd_twist_scan(args) -> int:
    limits = _limits(args)
    P = coeffs_from_string(args.poly)
    lo, hi = _range(args.d)
    ds = [d for d in squarefree_range(lo, hi, limits) if d != 1]
    reports = [twist_correspondence_check(P, d, args.height, limits) for d in ds]
    spec_set, point_set = realized_sets_both_sides(P, ds, args.height, limits)
    _emit(
        {
            "poly": list(P.coeffs),
            "height": args.height,
            "per_d": [r.to_json() for r in reports],
            "realized_by_specialization": sorted(spec_set),
            "realized_by_points": sorted(point_set),
            "sides_agree": spec_set == point_set,
            "skipped": {"d=1": "split algebra, not an extension"},
        },
        args.out,
    )
    return 0


def _cmd_specialize(args) -> int:
    limits = _limits(args)
    P = coeffs_from_string(args.poly)
    if args.t in ("inf", "infinity", "oo"):
        d = specialize_infinity(P, limits)
    else:
        d = specialize(P, Fraction(args.t), limits)
    _emit(d.to_json(), args.out)
    return 0


def _cmd_prop81(args) -> int:
    result = prop81_classify(coeffs_from_string(args.poly))
    _emit(result.to_json(), args.out)
    return 0


def _cmd_point_search(args) -> int:
    limits = _limits(args)
    P = coeffs_from_string(args.poly)
    pts = point_search(HyperCurve(P, args.d), args.height, limits)
    _emit(
        {
            "poly": list(P.coeffs),
            "d": args.d,
            "height": args.height,
            "points": [p.to_json() for p in pts],
            "non_trivial": [p.to_json() for p in pts if not p.trivial],
            "note": "bounded search; absence up to this height is not a proof",
        },
        args.out,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="galaudit",
        description="Audit finite groups for obstructions to parametric sets "
        "of regular Galois realizations.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="also write the JSON output to this path")
        p.add_argument("--config", help="key=value file overriding resource limits")

    p = sub.add_parser("audit", help="find any applicable criterion for a group")
    p.add_argument("--group", required=True)
    p.add_argument("--field", default="Q")
    p.add_argument("--assert", dest="assertions", help="JSON file with user evidence")
    common(p)
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("classify", help="run the family classifier")
    p.add_argument("--group", required=True)
    p.add_argument("--field", default="Q")
    p.add_argument("--verify", action="store_true", help="brute-force re-verification")
    common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("classify-all", help="batch classifier over an order range")
    p.add_argument("--orders", required=True, help="e.g. 1..200")
    p.add_argument("--field", default="Q")
    p.add_argument("--abelian-only", action="store_true")
    p.add_argument("--dihedral-only", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_classify_all)

    p = sub.add_parser("genus", help="genus of a ramification type")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--ram", required=True, help="e.g. 2,3,5")
    common(p)
    p.set_defaults(func=_cmd_genus)

    p = sub.add_parser("genus-table", help="all low-genus ramification types")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--element-orders", required=True)
    p.add_argument("--cap", type=int, default=1, choices=(0, 1))
    common(p)
    p.set_defaults(func=_cmd_genus_table)

    p = sub.add_parser("prime-set", help="small-cyclotomic prime set of a field")
    p.add_argument("--field", default="Q")
    common(p)
    p.set_defaults(func=_cmd_prime_set)

    p = sub.add_parser("sn-classes", help="distinguished symmetric-group classes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=5, choices=(3, 5))
    common(p)
    p.set_defaults(func=_cmd_sn_classes)

    p = sub.add_parser("abelian-quotient", help="suitable quotient of an abelian group")
    p.add_argument("--invariants", required=True, help="e.g. 4,8")
    p.add_argument("--field", default=None)
    common(p)
    p.set_defaults(func=_cmd_abelian_quotient)

    p = sub.add_parser("fiber-power", help="fiber power of a group over a quotient")
    p.add_argument("--group", required=True)
    p.add_argument("--kernel", required=True, help="JSON list of permutations")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_fiber_power)

    p = sub.add_parser("twist-scan", help="realized-discriminant correspondence scan")
    p.add_argument("--poly", required=True)
    p.add_argument("--d", required=True, help="range lo:hi, e.g. -20:20")
    p.add_argument("--height", type=int, default=500)
    common(p)
    p.set_defaults(func=_cmd_twist_scan)

    p = sub.add_parser("specialize", help="discriminant of a specialization")
    p.add_argument("--poly", required=True)
    p.add_argument("--t", required=True, help="rational like 7/3, or 'inf'")
    common(p)
    p.set_defaults(func=_cmd_specialize)

    p = sub.add_parser("prop81", help="low-degree parametricity classification")
    p.add_argument("--poly", required=True)
    common(p)
    p.set_defaults(func=_cmd_prop81)

    p = sub.add_parser("point-search", help="bounded rational point search")
    p.add_argument("--poly", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--height", type=int, default=100)
    common(p)
    p.set_defaults(func=_cmd_point_search)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (AuditError, NoEvidence) as exc:
        _emit(exc.payload(), getattr(args, "out", None))
        return 1
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, None)
        return 1


if __name__ == "__main__":
    sys.exit(main())
