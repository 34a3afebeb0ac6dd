"""Quadratic extensions of the rational function field in executable
form: separable integer polynomials, their branch points, discriminants
of specializations, quadratic twists of the associated curves in
weighted projective coordinates, bounded point searches, and the
equivalence between realized discriminants and non-trivial points.

Everything is exact integer or rational arithmetic; the vectorized
sweeps are overflow-guarded and every reported witness is re-verified
exactly before it leaves this module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .arith import (
    fraction_is_square,
    is_square,
    rational_height,
    rationals_by_height,
    squarefree_part,
)
from .config import DEFAULT_LIMITS, Limits
from .errors import BranchPoint, DegreeTooHigh, InvalidDescriptor, OddDegree

# -- polynomials ---------------------------------------------------------------


def _poly_gcd_is_constant(a: list[Fraction], b: list[Fraction]) -> bool:
    """Euclidean polynomial gcd over the rationals; True when constant."""
    a = a[:]
    b = b[:]
    while b and any(b):
        while b and b[-1] == 0:
            b.pop()
        if not b:
            break
        if len(a) < len(b):
            a, b = b, a
            continue
        lead = b[-1]
        shift = len(a) - len(b)
        factor = a[-1] / lead
        for i in range(len(b)):
            a[i + shift] -= factor * b[i]
        while a and a[-1] == 0:
            a.pop()
        a, b = b, a
    return len(a) <= 1


@dataclass(frozen=True)
class SeparablePoly:
    """A separable polynomial with integer coefficients, low to high."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs):
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise InvalidDescriptor("polynomial must have degree >= 1")
        frac = [Fraction(c) for c in coeffs]
        deriv = [Fraction(i * c) for i, c in enumerate(coeffs)][1:]
        if not _poly_gcd_is_constant(frac, deriv):
            raise InvalidDescriptor("polynomial is not separable")
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def __call__(self, t: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def hom_degree(self) -> int:
        """Degree of the homogenized form (one more in the odd case)."""
        n = self.degree
        return n if n % 2 == 0 else n + 1

    def weight(self) -> int:
        """Weight of the Y coordinate in the weighted projective plane."""
        return self.hom_degree() // 2

    def hom_eval(self, t: int, z: int) -> int:
        """The homogenization at (t, z): z**(hom_degree) * P(t/z)."""
        n = self.degree
        total = self.hom_degree()
        acc = 0
        for i, c in enumerate(self.coeffs):
            acc += c * t**i * z ** (total - i)
        return acc

    def to_string(self) -> str:
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c))
                term = f"{mag}T" if i == 1 else f"{mag}T^{i}"
            parts.append(("-" if c < 0 else "+", term))
        text = ""
        for j, (sgn, term) in enumerate(parts):
            if j == 0:
                text += ("-" if sgn == "-" else "") + term
            else:
                text += sgn + term
        return text or "0"

    @staticmethod
    def parse(text: str) -> "SeparablePoly":
        return parse_poly(text)


_TERM_RE = re.compile(
    r"(?P<sign>[+-]?)\s*(?P<coeff>\d+)?\s*\*?\s*(?P<var>[Tt])?\s*(?:\^\s*(?P<exp>\d+))?"
)


def parse_poly(text: str) -> SeparablePoly:
    """Parse e.g. 'T^3-T', '2T^2+1', '-3*T + 4' into a polynomial."""
    text = text.strip()
    if not text:
        raise InvalidDescriptor("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise InvalidDescriptor(f"cannot parse polynomial at {text[pos:]!r}")
        sign = -1 if m.group("sign") == "-" else 1
        coeff = m.group("coeff")
        var = m.group("var")
        exp = m.group("exp")
        if coeff is None and var is None:
            raise InvalidDescriptor(f"cannot parse polynomial at {text[pos:]!r}")
        c = sign * (int(coeff) if coeff is not None else 1)
        if var is None:
            e = 0
            if exp is not None:
                raise InvalidDescriptor(f"exponent without variable in {text!r}")
        else:
            e = int(exp) if exp is not None else 1
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    degree = max(coeffs)
    return SeparablePoly([coeffs.get(i, 0) for i in range(degree + 1)])


def coeffs_from_string(spec: str) -> SeparablePoly:
    """Accept either 'a0,a1,...' or an expression over T."""
    if re.fullmatch(r"[-\d,\s]+", spec):
        return SeparablePoly([int(x) for x in spec.split(",")])
    return parse_poly(spec)


# -- branch points -------------------------------------------------------------


@dataclass(frozen=True)
class IrrationalFactor:
    """Placeholder for a cluster of conjugate non-rational branch points."""

    degree: int
    coeffs: tuple[int, ...] | None = None
    exact: bool = True

    def to_json(self):
        return {
            "degree": self.degree,
            "coeffs": list(self.coeffs) if self.coeffs else None,
            "exact": self.exact,
        }


@dataclass(frozen=True)
class BranchPoints:
    rational: tuple[Fraction, ...]
    irrational: tuple[IrrationalFactor, ...]
    includes_infinity: bool

    @property
    def count(self) -> int:
        return (
            len(self.rational)
            + sum(f.degree for f in self.irrational)
            + (1 if self.includes_infinity else 0)
        )

    def to_json(self):
        return {
            "rational": [str(q) for q in self.rational],
            "irrational_factors": [f.to_json() for f in self.irrational],
            "includes_infinity": self.includes_infinity,
            "count": self.count,
        }


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _rational_roots(coeffs: list[int]) -> list[Fraction]:
    """All rational roots via the rational root theorem (coeffs primitive
    enough for our use; roots of x are p/q with p | a0, q | an)."""
    roots = []
    # factor out T^k first
    k = 0
    while coeffs[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
    body = coeffs[k:]
    a0, an = body[0], body[-1]
    seen = set()
    for p in _divisors(a0):
        for q in _divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in seen:
                    continue
                seen.add(cand)
                acc = Fraction(0)
                for c in reversed(body):
                    acc = acc * cand + c
                if acc == 0:
                    roots.append(cand)
    return sorted(set(roots))


def _deflate(coeffs: list[Fraction], root: Fraction) -> list[Fraction]:
    """Synthetic division by (T - root)."""
    out = [Fraction(0)] * (len(coeffs) - 1)
    acc = Fraction(0)
    for i in range(len(coeffs) - 1, 0, -1):
        acc = coeffs[i] + acc * root
        out[i - 1] = acc
    return out


def _integerize(coeffs: list[Fraction]) -> tuple[int, ...]:
    lcm_den = 1
    for c in coeffs:
        lcm_den = lcm_den * c.denominator // gcd(lcm_den, c.denominator)
    return tuple(int(c * lcm_den) for c in coeffs)


def _quartic_quadratic_split(coeffs: tuple[int, ...]) -> tuple | None:
    """Factor a rootless integer quartic into two integer quadratics, or
    None when irreducible.  Finite search over divisor pairs of the
    outer coefficients with a coefficient bound on the middle terms."""
    a0, a1, a2, a3, a4 = coeffs
    norm = isqrt(sum(c * c for c in coeffs)) + 1
    bound = 16 * norm * abs(a4)
    for l1 in _divisors(a4):
        l2s = {a4 // l1} if a4 % l1 == 0 else set()
        for l2 in l2s:
            for c1 in _divisors(a0) + [-d for d in _divisors(a0)]:
                if c1 == 0 or a0 % c1:
                    continue
                c2 = a0 // c1
                # a3 = l1 m2 + l2 m1 ; a1 = c2 m1 + c1 m2 ; a2 = l1 c2 + l2 c1 + m1 m2
                det = l1 * c2 - l2 * c1
                if det != 0:
                    m1_num = a1 * l1 - a3 * c1
                    m2_num = a3 * c2 - a1 * l2
                    if m1_num % det or m2_num % det:
                        continue
                    m1, m2 = m1_num // det, m2_num // det
                    if l1 * c2 + l2 * c1 + m1 * m2 == a2:
                        return ((c1, m1, l1), (c2, m2, l2))
                else:
                    for m1 in range(-bound, bound + 1):
                        rem = a3 - l2 * m1
                        if l1 == 0 or rem % l1:
                            continue
                        m2 = rem // l1
                        if (
                            c2 * m1 + c1 * m2 == a1
                            and l1 * c2 + l2 * c1 + m1 * m2 == a2
                        ):
                            return ((c1, m1, l1), (c2, m2, l2))
    return None


def branch_points(P: SeparablePoly) -> BranchPoints:
    """Branch locus of the quadratic extension defined by P: the roots
    of P, plus infinity exactly when the degree is odd.  Rational roots
    are listed exactly; the rest are grouped by irreducible factors
    (exactly up to degree 4, coarsely beyond)."""
    coeffs = list(P.coeffs)
    roots = _rational_roots(coeffs)
    residual = [Fraction(c) for c in coeffs]
    for r in roots:
        residual = _deflate(residual, r)
    irrational: list[IrrationalFactor] = []
    d = len(residual) - 1
    if d >= 1:
        ints = _integerize(residual)
        if d in (2, 3):
            irrational.append(IrrationalFactor(d, ints))
        elif d == 4:
            split = _quartic_quadratic_split(ints)
            if split is None:
                irrational.append(IrrationalFactor(4, ints))
            else:
                irrational.append(IrrationalFactor(2, split[0]))
                irrational.append(IrrationalFactor(2, split[1]))
        else:
            irrational.append(IrrationalFactor(d, ints, exact=False))
    return BranchPoints(
        rational=tuple(roots),
        irrational=tuple(irrational),
        includes_infinity=P.degree % 2 == 1,
    )


# -- specializations -----------------------------------------------------------


@dataclass(frozen=True)
class SquarefreeD:
    """A squarefree discriminant; value 1 marks the split (degenerate)
    specialization rather than a quadratic extension."""

    value: int

    def __post_init__(self):
        if self.value == 0:
            raise InvalidDescriptor("discriminant must be non-zero")

    @property
    def degenerate(self) -> bool:
        return self.value == 1

    def to_json(self):
        return {"d": self.value, "degenerate": self.degenerate}


def specialize(P: SeparablePoly, t0: Fraction | int, limits: Limits = DEFAULT_LIMITS) -> SquarefreeD:
    """Squarefree discriminant of the specialization at a rational point."""
    value = P(Fraction(t0))
    if value == 0:
        raise BranchPoint(f"{t0} is a branch point")
    return SquarefreeD(squarefree_part(value, limits))


def specialize_infinity(P: SeparablePoly, limits: Limits = DEFAULT_LIMITS) -> SquarefreeD:
    """Discriminant at infinity (leading coefficient); even degree only."""
    if P.degree % 2:
        raise OddDegree("infinity is a branch point in odd degree")
    return SquarefreeD(squarefree_part(P.leading, limits))


# -- curves and points ---------------------------------------------------------


@dataclass(frozen=True)
class HyperCurve:
    """The twisted curve Y^2 = d * P(T, Z) in the weighted projective
    plane with Y-weight determined by the degree parity."""

    poly: SeparablePoly
    d: int

    def __post_init__(self):
        if self.d == 0:
            raise InvalidDescriptor("twist must be non-zero")
        if squarefree_part(self.d) != self.d:
            raise InvalidDescriptor("twist must be squarefree")

    @property
    def weight(self) -> int:
        return self.poly.weight()

    def rhs(self, t: int, z: int) -> int:
        return self.d * self.poly.hom_eval(t, z)

    def to_json(self):
        return {
            "poly": list(self.poly.coeffs),
            "d": self.d,
            "weight": self.weight,
        }


@dataclass(frozen=True)
class WeightedPoint:
    """A rational point [y : t : z] in canonical form: gcd(t, z) = 1 and
    z > 0, or (t, z) = (1, 0) on the line at infinity; y >= 0 (the
    hyperelliptic involution gives the mirror point)."""

    y: int
    t: int
    z: int

    @property
    def trivial(self) -> bool:
        return self.y == 0

    def satisfies(self, curve: HyperCurve) -> bool:
        return self.y * self.y == curve.rhs(self.t, self.z)

    def canonical(self) -> bool:
        if self.z == 0:
            return self.t == 1
        return self.z > 0 and gcd(self.t, self.z) == 1

    def to_json(self):
        return {"y": self.y, "t": self.t, "z": self.z, "trivial": self.trivial}


def _sweep_pairs(bound: int, chunk: int):
    """Chunked coprime (t, z) pairs, z >= 1, |t| <= bound, as arrays."""
    ts = np.arange(-bound, bound + 1, dtype=np.int64)
    rows_per_chunk = max(1, chunk // len(ts))
    z = 1
    while z <= bound:
        zs = np.arange(z, min(z + rows_per_chunk, bound + 1), dtype=np.int64)
        tt, zz = np.meshgrid(ts, zs, indexing="ij")
        tt = tt.ravel()
        zz = zz.ravel()
        mask = np.gcd(np.abs(tt), zz) == 1
        yield tt[mask], zz[mask]
        z += rows_per_chunk


def _overflow_safe(P: SeparablePoly, bound: int, dmax: int) -> bool:
    total = P.hom_degree()
    mag = sum(abs(c) for c in P.coeffs) * bound**total * dmax
    return mag < 2**62


def _hom_eval_vec(P: SeparablePoly, tt, zz):
    total = P.hom_degree()
    acc = np.zeros_like(tt)
    for i, c in enumerate(P.coeffs):
        if c:
            acc = acc + c * tt**i * zz ** (total - i)
    return acc


def _square_mask(w):
    """Exact perfect-square test on a non-negative int64 array."""
    r = np.sqrt(w.astype(np.float64)).astype(np.int64)
    ok = np.zeros(w.shape, dtype=bool)
    for delta in (-1, 0, 1):
        s = r + delta
        ok |= (s >= 0) & (s * s == w)
    return ok


def point_search(
    curve: HyperCurve, bound: int, limits: Limits = DEFAULT_LIMITS
) -> tuple[WeightedPoint, ...]:
    """All canonical points with max(|t|, |z|) <= bound, trivial ones
    included, ordered by (height, t, z).  Every point is re-verified
    exactly before being returned."""
    P = curve.poly
    found: list[WeightedPoint] = []
    # line at infinity
    if P.degree % 2 == 0:
        v = curve.d * P.leading
        if v > 0 and is_square(v):
            found.append(WeightedPoint(isqrt(v), 1, 0))
    else:
        found.append(WeightedPoint(0, 1, 0))
    if _overflow_safe(P, bound, abs(curve.d)):
        for tt, zz in _sweep_pairs(bound, limits.sweep_chunk):
            w = curve.d * _hom_eval_vec(P, tt, zz)
            ok = (w >= 0) & _square_mask(np.maximum(w, 0))
            for t, z, v in zip(tt[ok], zz[ok], w[ok]):
                found.append(WeightedPoint(isqrt(int(v)), int(t), int(z)))
    else:
        for z in range(1, bound + 1):
            for t in range(-bound, bound + 1):
                if gcd(t, z) != 1:
                    continue
                v = curve.rhs(t, z)
                if v >= 0 and is_square(v):
                    found.append(WeightedPoint(isqrt(v), t, z))
    for pt in found:
        assert pt.satisfies(curve) and pt.canonical(), pt
    found.sort(key=lambda p: (max(abs(p.t), abs(p.z)), p.t, p.z))
    return tuple(found)


def has_nontrivial_point(
    curve: HyperCurve, bound: int, limits: Limits = DEFAULT_LIMITS
) -> WeightedPoint | None:
    """First non-trivial point in deterministic order, or None."""
    result = nontrivial_points_batch(curve.poly, [curve.d], bound, limits)
    return result[curve.d]


def nontrivial_points_batch(
    P: SeparablePoly, ds, bound: int, limits: Limits = DEFAULT_LIMITS
) -> dict[int, WeightedPoint | None]:
    """Minimal non-trivial point per twist, sharing one coordinate sweep
    across all the twists."""
    ds = [int(d) for d in ds]
    found: dict[int, tuple] = {}
    if P.degree % 2 == 0:
        lead = P.leading
        for d in ds:
            v = d * lead
            if v > 0 and is_square(v):
                found[d] = (1, 1, 0, isqrt(v))
    dmax = max(abs(d) for d in ds)
    pending = [d for d in ds]
    if _overflow_safe(P, bound, dmax):
        for tt, zz in _sweep_pairs(bound, limits.sweep_chunk):
            v = _hom_eval_vec(P, tt, zz)
            nonzero = v != 0
            for d in pending:
                w = d * v
                ok = nonzero & (w > 0) & _square_mask(np.maximum(w, 0))
                if ok.any():
                    cand_t = tt[ok]
                    cand_z = zz[ok]
                    cand_w = w[ok]
                    heights = np.maximum(np.abs(cand_t), cand_z)
                    order = np.lexsort((cand_z, cand_t, heights))
                    i = order[0]
                    key = (
                        int(heights[i]),
                        int(cand_t[i]),
                        int(cand_z[i]),
                        isqrt(int(cand_w[i])),
                    )
                    if d not in found or key < found[d]:
                        found[d] = key
    else:
        for d in pending:
            if d in found:
                continue
            for z in range(1, bound + 1):
                if d in found:
                    break
                for t in range(-bound, bound + 1):
                    if gcd(t, z) != 1:
                        continue
                    v = d * P.hom_eval(t, z)
                    if v > 0 and is_square(v) and P.hom_eval(t, z) != 0:
                        key = (max(abs(t), z), t, z, isqrt(v))
                        if d not in found or key < found[d]:
                            found[d] = key
    out: dict[int, WeightedPoint | None] = {}
    for d in ds:
        if d in found:
            h, t, z, y = found[d] if len(found[d]) == 4 else (*found[d], None)
            pt = WeightedPoint(y, t, z)
            assert pt.satisfies(HyperCurve(P, d)) and pt.canonical() and not pt.trivial
            out[d] = pt
        else:
            out[d] = None
    return out


# -- realized discriminants ----------------------------------------------------

INFINITY = "infinity"


def realized_discriminants(
    P: SeparablePoly, bound: int, limits: Limits = DEFAULT_LIMITS
) -> dict[int, object]:
    """Map each realized squarefree discriminant to its first witness:
    a specialization point of height <= bound (or the infinity marker
    for even degree).  Value 1 marks the degenerate split case."""
    out: dict[int, object] = {}
    if P.degree % 2 == 0:
        d = squarefree_part(P.leading, limits)
        out.setdefault(d, INFINITY)
    for t0 in rationals_by_height(bound):
        value = P(t0)
        if value == 0:
            continue
        d = squarefree_part(value, limits)
        out.setdefault(d, t0)
    return out


def specialization_witness(
    P: SeparablePoly, d: int, bound: int, include_infinity: bool = True
) -> object | None:
    """First specialization point realizing the discriminant d, found by
    sweeping rationals in height order and testing d * P(t0) for being a
    non-zero rational square.  Returns a Fraction, the infinity marker,
    or None."""
    if include_infinity and P.degree % 2 == 0:
        if d * P.leading > 0 and fraction_is_square(Fraction(d * P.leading)):
            return INFINITY
    for t0 in rationals_by_height(bound):
        value = P(t0)
        if value == 0:
            continue
        w = d * value
        if w > 0 and fraction_is_square(w):
            return t0
    return None


def _specialization_realized_set(
    P: SeparablePoly, ds, bound: int, limits: Limits
) -> dict[int, object]:
    """Which of the given discriminants are realized by specializations
    of height <= bound.  Vectorized over the homogeneous form (the
    squarefree class of P(a/b) equals that of the homogenization at
    (a, b)); witnesses are re-verified exactly."""
    ds = [int(d) for d in ds]
    out: dict[int, object] = {}
    if P.degree % 2 == 0:
        lead = P.leading
        for d in ds:
            if d not in out and d * lead > 0 and is_square(d * lead):
                out[d] = INFINITY
    dmax = max(abs(d) for d in ds)
    if _overflow_safe(P, bound, dmax):
        best: dict[int, tuple] = {}
        pending = [d for d in ds if d not in out]
        for tt, zz in _sweep_pairs(bound, limits.sweep_chunk):
            v = _hom_eval_vec(P, tt, zz)
            nonzero = v != 0
            for d in pending:
                w = d * v
                ok = nonzero & (w > 0) & _square_mask(np.maximum(w, 0))
                if ok.any():
                    cand_t = tt[ok]
                    cand_z = zz[ok]
                    heights = np.maximum(np.abs(cand_t), cand_z)
                    order = np.lexsort((cand_z, cand_t, heights))
                    i = order[0]
                    key = (int(heights[i]), int(cand_t[i]), int(cand_z[i]))
                    if d not in best or key < best[d]:
                        best[d] = key
            # chunks are ordered by z, not height, so keep scanning and
            # retain the minimum witness per d
        for d, (_, t, z) in best.items():
            out[d] = Fraction(t, z)
    else:
        for d in ds:
            if d in out:
                continue
            w = specialization_witness(P, d, bound, include_infinity=False)
            if w is not None:
                out[d] = w
    for d, w in out.items():
        if w is INFINITY:
            assert d * P.leading > 0 and is_square(d * P.leading)
        else:
            assert fraction_is_square(d * P(w)) and P(w) != 0
    return out


# -- the correspondence --------------------------------------------------------


@dataclass(frozen=True)
class CorrespondenceReport:
    """Bounded-search comparison of the two sides of the realization
    equivalence: discriminant realized by a specialization vs.
    non-trivial point on the twisted curve.  Bounded evidence only;
    absence at a finite height proves nothing."""

    poly: SeparablePoly
    d: int
    bound: int
    realized_by_specialization: bool
    specialization_witness: object
    has_point: bool
    point_witness: WeightedPoint | None
    converted_point: WeightedPoint | None
    converted_t: object
    agree: bool
    non_existence_proven: bool = False

    def to_json(self):
        return {
            "poly": list(self.poly.coeffs),
            "d": self.d,
            "bound": self.bound,
            "realized": self.realized_by_specialization,
            "witness_t": None
            if self.specialization_witness is None
            else str(self.specialization_witness),
            "has_nontrivial_point": self.has_point,
            "witness_point": self.point_witness.to_json() if self.point_witness else None,
            "converted_point": self.converted_point.to_json()
            if self.converted_point
            else None,
            "converted_t": None if self.converted_t is None else str(self.converted_t),
            "agree": self.agree,
            "non_existence_proven": self.non_existence_proven,
            "note": "bounded search; no point up to the height bound is not a proof",
        }


def witness_point_from_t(P: SeparablePoly, d: int, t0) -> WeightedPoint:
    """Convert a specialization witness into a curve point."""
    if t0 is INFINITY:
        v = d * P.leading
        return WeightedPoint(isqrt(v), 1, 0)
    t0 = Fraction(t0)
    a, b = t0.numerator, t0.denominator
    v = d * P.hom_eval(a, b)
    assert v > 0 and is_square(v), (P, d, t0)
    return WeightedPoint(isqrt(v), a, b)


def witness_t_from_point(P: SeparablePoly, pt: WeightedPoint):
    """Convert a non-trivial curve point into a specialization witness."""
    assert not pt.trivial
    if pt.z == 0:
        return INFINITY
    return Fraction(pt.t, pt.z)


def twist_correspondence_check(
    P: SeparablePoly, d: int, bound: int, limits: Limits = DEFAULT_LIMITS
) -> CorrespondenceReport:
    """Run both sides of the realization equivalence at matched bounds
    and cross-convert the witnesses."""
    if d == 1:
        raise InvalidDescriptor("d = 1 is the split algebra, not an extension")
    if squarefree_part(d, limits) != d:
        raise InvalidDescriptor("d must be squarefree")
    spec = _specialization_realized_set(P, [d], bound, limits)
    spec_witness = spec.get(d)
    curve = HyperCurve(P, d)
    pt = has_nontrivial_point(curve, bound, limits)
    converted_point = None
    converted_t = None
    if spec_witness is not None:
        converted_point = witness_point_from_t(P, d, spec_witness)
        assert converted_point.satisfies(curve) and not converted_point.trivial
    if pt is not None:
        converted_t = witness_t_from_point(P, pt)
        if converted_t is not INFINITY:
            assert fraction_is_square(d * P(converted_t))
    return CorrespondenceReport(
        poly=P,
        d=d,
        bound=bound,
        realized_by_specialization=spec_witness is not None,
        specialization_witness=spec_witness,
        has_point=pt is not None,
        point_witness=pt,
        converted_point=converted_point,
        converted_t=converted_t,
        agree=(spec_witness is not None) == (pt is not None),
    )


def realized_sets_both_sides(
    P: SeparablePoly, ds, bound: int, limits: Limits = DEFAULT_LIMITS
) -> tuple[set[int], set[int]]:
    """The two realized-discriminant sets at matched bounds, computed by
    the two sweeps independently."""
    spec = _specialization_realized_set(P, ds, bound, limits)
    spec_set = set(spec)
    points = nontrivial_points_batch(P, ds, bound, limits)
    point_set = {d for d, pt in points.items() if pt is not None}
    return spec_set, point_set


# -- low-degree classification ---------------------------------------------------


@dataclass(frozen=True)
class LowDegreeClassification:
    parametric: bool
    case: str
    proof_route: str
    branch: BranchPoints
    reduced_cubic: tuple[int, ...] | None = None

    def to_json(self):
        return {
            "parametric": self.parametric,
            "case": self.case,
            "proof_route": self.proof_route,
            "branch_points": self.branch.to_json(),
            "reduced_cubic": list(self.reduced_cubic) if self.reduced_cubic else None,
        }


def _taylor_at(P: SeparablePoly, root: Fraction) -> list[Fraction]:
    """Coefficients of P(root + X) in X, by binomial expansion."""
    from math import comb

    n = P.degree
    out = [Fraction(0)] * (n + 1)
    for i, c in enumerate(P.coeffs):
        for j in range(i + 1):
            out[j] += Fraction(c) * comb(i, j) * root ** (i - j)
    return out


def shift_rational_root_to_infinity(P: SeparablePoly, root: Fraction) -> SeparablePoly:
    """Move a rational branch point to infinity: with T = root + 1/U the
    degree drops by one, and clearing denominators by a square keeps the
    quadratic extension class unchanged (even original degree only)."""
    if P.degree % 2:
        raise InvalidDescriptor("root shift is for even-degree polynomials")
    n = P.degree
    taylor = _taylor_at(P, Fraction(root))
    if taylor[0] != 0:
        raise InvalidDescriptor(f"{root} is not a root")
    # U**n * P(root + 1/U) has U-coefficients taylor[n], ..., taylor[1].
    q = [taylor[n - i] for i in range(n)]
    den = 1
    for c in q:
        den = den * c.denominator // gcd(den, c.denominator)
    return SeparablePoly([int(c * den * den) for c in q])


def prop81_classify(P: SeparablePoly) -> LowDegreeClassification:
    """Parametricity of the quadratic extension for degree <= 4: it is
    parametric precisely when there are exactly two branch points, both
    rational.  Otherwise the failing configuration is named together
    with the applicable non-existence argument (conic for irrational
    degree-2, rank-zero twists of the reduced cubic for the elliptic
    cases, twisted quartic otherwise)."""
    if P.degree > 4:
        raise DegreeTooHigh("classification applies to degree <= 4 only")
    bp = branch_points(P)
    two_rational = bp.count == 2 and len(bp.rational) + (
        1 if bp.includes_infinity else 0
    ) == 2
    if two_rational:
        return LowDegreeClassification(
            parametric=True,
            case="two-rational-branch-points",
            proof_route="split-form parametrization realizes every discriminant",
            branch=bp,
        )
    if P.degree == 2:
        return LowDegreeClassification(
            parametric=False,
            case="degree-2-irrational-branch-points",
            proof_route="conjugate branch points; conic argument",
            branch=bp,
        )
    if P.degree == 3:
        return LowDegreeClassification(
            parametric=False,
            case="degree-3-elliptic",
            proof_route="rank-zero twists of the cubic model miss infinitely many "
            "discriminants",
            branch=bp,
            reduced_cubic=P.coeffs,
        )
    # degree 4
    if bp.rational:
        cubic = shift_rational_root_to_infinity(P, bp.rational[0])
        return LowDegreeClassification(
            parametric=False,
            case="degree-4-with-rational-root",
            proof_route="rational branch point moved to infinity; rank-zero twists "
            "of the reduced cubic miss infinitely many discriminants",
            branch=bp,
            reduced_cubic=cubic.coeffs,
        )
    return LowDegreeClassification(
        parametric=False,
        case="degree-4-no-rational-root",
        proof_route="twisted quartic without rational points for infinitely many "
        "discriminants",
        branch=bp,
    )
