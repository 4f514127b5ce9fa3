"""Two-ray cones in the graded slices and the closed-form positive cones.

All cones here live in a 2-dimensional slice and are full-dimensional, so a
cone is determined by its two extremal rays.  Rays are stored in canonical
form (coprime integer coefficients, scaled by a positive factor only) and
sorted, which turns cone equality into tuple equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Tuple

from .errors import ConsistencyError, DegenerateConeError, GradeError, ValidationError
from .parabolic import HNData, ParabolicBundleSpec, resolve_hn, sub_bundle
from .ring import LOWER, UPPER, NumericalClass, RingContext, cyclify


def canonical(c: NumericalClass) -> NumericalClass:
    """Positive rescaling of ``c`` to coprime integer coefficients."""
    if c.is_zero():
        raise DegenerateConeError("zero vector is not a ray")
    coeffs = [c.xi_coeff, c.xl_coeff]
    den = lcm(*(x.denominator for x in coeffs))
    ints = [int(x * den) for x in coeffs]
    g = reduce(gcd, (abs(i) for i in ints))
    return NumericalClass(c.context, c.grade, Fraction(ints[0] // g), Fraction(ints[1] // g), c.side)


def _det(u: NumericalClass, v: NumericalClass) -> Fraction:
    return u.xi_coeff * v.xl_coeff - u.xl_coeff * v.xi_coeff


@dataclass(frozen=True)
class Cone2D:
    """Closed convex cone spanned by two non-proportional rays.

    ``grade`` is the polynomial grade of the rays; on the lower side the
    cone sits in ``N_(r - grade)``.
    """

    generators: Tuple[NumericalClass, NumericalClass]

    def __post_init__(self):
        g1, g2 = self.generators
        if g1.context != g2.context or g1.grade != g2.grade or g1.side != g2.side:
            raise GradeError("cone generators must share context, grade and side")
        if g1.grade < 1:
            raise GradeError("grade-0 slices are one-dimensional")
        if _det(g1, g2) == 0:
            raise DegenerateConeError("cone generators are proportional")
        rays = sorted((canonical(g1), canonical(g2)), key=lambda c: (-c.xi_coeff, -c.xl_coeff))
        object.__setattr__(self, "generators", tuple(rays))

    @classmethod
    def of(cls, g1: NumericalClass, g2: NumericalClass) -> "Cone2D":
        return cls((g1, g2))

    @property
    def context(self) -> RingContext:
        return self.generators[0].context

    @property
    def grade(self) -> int:
        return self.generators[0].grade

    @property
    def side(self) -> str:
        return self.generators[0].side

    @property
    def dimension(self) -> int:
        """Cycle dimension for lower cones, codimension for upper ones."""
        return self.context.rank - self.grade if self.side == LOWER else self.grade

    def coordinates(self, c: NumericalClass) -> Tuple[Fraction, Fraction]:
        """Coefficients of ``c`` in the generator basis."""
        if c.context != self.context or c.grade != self.grade or c.side != self.side:
            raise GradeError("class and cone live in different slices")
        g1, g2 = self.generators
        det = _det(g1, g2)
        return _det(c, g2) / det, _det(g1, c) / det

    def contains(self, c: NumericalClass, strict: bool = False) -> bool:
        a, b = self.coordinates(c)
        return (a > 0 and b > 0) if strict else (a >= 0 and b >= 0)

    def __str__(self):
        return "<" + ", ".join(str(g) for g in self.generators) + ">"


def membership(c: NumericalClass, cone: Cone2D, strict: bool = False) -> bool:
    """Closed-cone membership; ``strict`` asks for the interior instead."""
    return cone.contains(c, strict=strict)


def cone_equal(c1: Cone2D, c2: Cone2D) -> bool:
    if c1.context != c2.context or c1.grade != c2.grade or c1.side != c2.side:
        raise GradeError("cones live in different slices")
    return c1.generators == c2.generators


def cone_contains(big: Cone2D, small: Cone2D) -> bool:
    return all(big.contains(g) for g in small.generators)


def dual_cone(cone: Cone2D) -> Cone2D:
    """Dual under the intersection pairing, in the complementary grade.

    Each generator ``v`` gives a functional ``w = M v`` on the other slice;
    the dual rays are the normals of ``w1`` and ``w2`` oriented so that the
    other functional is nonnegative on them.
    """
    ctx, g = cone.context, cone.grade
    m = ctx.pairing_matrix(g)
    funcs = [
        (m[0][0] * v.xi_coeff + m[0][1] * v.xl_coeff, m[1][0] * v.xi_coeff + m[1][1] * v.xl_coeff)
        for v in cone.generators
    ]
    rays = []
    for w, other in ((funcs[0], funcs[1]), (funcs[1], funcs[0])):
        x, y = -w[1], w[0]
        s = other[0] * x + other[1] * y
        if s == 0:
            raise DegenerateConeError("pairing functionals are proportional")
        if s < 0:
            x, y = -x, -y
        rays.append(ctx.cls(ctx.rank - g, x, y, UPPER if cone.side == LOWER else LOWER))
    return Cone2D(tuple(rays))


# closed forms ---------------------------------------------------------------


@dataclass(frozen=True)
class NuTable:
    """Tilts ``nu_k`` (k = 1..r-1) of the non-fiber ray of ``Eff_k``."""

    rank: int
    values: Tuple[Fraction, ...]

    def __getitem__(self, k: int) -> Fraction:
        if not 1 <= k <= self.rank - 1:
            raise IndexError(f"k={k} outside 1..{self.rank - 1}")
        return self.values[k - 1]

    def upper(self, i: int) -> Fraction:
        """The dual-index alias: ``nu^(i) = nu_(r - i)``."""
        return self[self.rank - i]

    def items(self):
        return ((k, v) for k, v in enumerate(self.values, start=1))


def nu_table(hn: HNData, n: int) -> NuTable:
    """``nu_(rbar_(s-1) + j) = (j * mu_s - dbar_(s-1)) * N``."""
    r = hn.rank
    if r < 2:
        raise ValueError("rank-1 bundles have no proper cycle dimensions")
    cum, tails, slopes = hn.cumulative_ranks, hn.tail_degrees, hn.slopes
    values = {}
    for s in range(1, hn.length + 1):
        for j in range(1, hn.ranks[s - 1] + 1):
            k = cum[s - 1] + j
            if k == r:
                continue
            values[k] = (j * slopes[s - 1] - tails[s - 1]) * n
    if sorted(values) != list(range(1, r)):
        raise ConsistencyError("nu table does not cover 1..r-1 exactly once")
    return NuTable(r, tuple(values[k] for k in range(1, r)))


@dataclass(frozen=True)
class BundleData:
    """Everything the closed forms need, resolved once from a spec."""

    spec: ParabolicBundleSpec
    hn: HNData
    ring: RingContext

    @classmethod
    def of(cls, spec: ParabolicBundleSpec) -> "BundleData":
        return cls(spec, resolve_hn(spec), RingContext.from_spec(spec))

    @property
    def rank(self) -> int:
        return self.ring.rank

    @property
    def level(self) -> int:
        return self.ring.level

    @property
    def nu(self) -> NuTable:
        return nu_table(self.hn, self.level)


def _data(spec) -> BundleData:
    return spec if isinstance(spec, BundleData) else BundleData.of(spec)


def _check_k(b: BundleData, k: int):
    if not 1 <= k <= b.rank - 1:
        raise ValidationError(f"k={k} outside 1..{b.rank - 1}")


def _is_positive_multiple(c: NumericalClass, ref: NumericalClass) -> bool:
    return not c.is_zero() and _det(c, ref) == 0 and canonical(c).vector == canonical(ref).vector


def delta_class(b: BundleData) -> NumericalClass:
    """Class of the projectivized minimal-slope quotient inside P(E*)."""
    r, r1 = b.rank, b.hn.ranks[0]
    ring = b.ring
    return ring.cls(r - r1, 1, (b.hn.degrees[0] - b.hn.degree) * b.level, LOWER)


def eff_cone_lower(spec, k: int, check: bool = True) -> Cone2D:
    """Pseudoeffective cone of k-cycles, as grade ``r - k`` polynomials.

    With ``check``, the product presentation (``delta * (xi - mu_1 N L)^(r_1 - k)``
    for unstable bundles, ``(xi - mu N L)^(r - k)`` for semistable ones) is
    expanded as well and must be a positive multiple of the first ray.
    """
    b = _data(spec)
    _check_k(b, k)
    ring, r, n = b.ring, b.rank, b.level
    nu = b.nu[k]
    first = ring.cls(r - k, 1, nu, LOWER)
    fiber = ring.cls(r - k, 0, 1, LOWER)
    if check:
        r1, mu1 = b.hn.ranks[0], b.hn.slopes[0]
        tilt = ring.xi - ring.L.scale(mu1 * n)
        product = None
        if b.hn.length == 1:
            product = (tilt ** (r - k)).with_side(LOWER)
        elif k <= r1:
            product = delta_class(b) * tilt ** (r1 - k)
        if product is not None and not _is_positive_multiple(product, first):
            raise ConsistencyError(f"k={k}: product form {product} is not a positive multiple of {first}")
    return Cone2D.of(first, fiber)


def nef_cone_upper(spec, k: int) -> Cone2D:
    """Nef cone in codimension k: ``<xi^k - (N d + nu_k) xi^(k-1) L, xi^(k-1) L>``."""
    b = _data(spec)
    _check_k(b, k)
    ring, n = b.ring, b.level
    tilt = n * b.ring.pardeg + b.nu[k]
    return Cone2D.of(ring.cls(k, 1, -tilt), ring.cls(k, 0, 1))


def eff_cone_upper(spec, k: int, check: bool = True) -> Cone2D:
    """Pseudoeffective dual classes: ``<xi^k + nu_(r-k) xi^(k-1) L, xi^(k-1) L>``."""
    b = _data(spec)
    _check_k(b, k)
    ring = b.ring
    cone = Cone2D.of(ring.cls(k, 1, b.nu.upper(k)), ring.cls(k, 0, 1))
    if check:
        lower = eff_cone_lower(b, b.rank - k, check=False)
        preimage = Cone2D(tuple(cyclify(g) for g in lower.generators))
        if not cone_equal(cone, preimage):
            raise ConsistencyError(f"Eff^{k} differs from the preimage of Eff_{b.rank - k}")
    return cone


def nef_cone_1(spec) -> Cone2D:
    """Nef divisors: ``<xi - mu_1 N L, L>``."""
    b = _data(spec)
    ring = b.ring
    return Cone2D.of(ring.xi - ring.L.scale(b.hn.slopes[0] * b.level), ring.L)


def is_k_homogeneous(spec, k: int) -> bool:
    b = _data(spec)
    eff, nef = eff_cone_upper(b, k), nef_cone_upper(b, k)
    if not cone_contains(eff, nef):
        raise ConsistencyError(f"Nef^{k} is not contained in Eff^{k}")
    return cone_equal(eff, nef)


def semistability_routes(spec) -> Tuple[bool, bool]:
    """(HN length is 1, every k-homogeneity test passes)."""
    b = _data(spec)
    by_hn = b.hn.length == 1
    by_cones = all(is_k_homogeneous(b, k) for k in range(1, b.rank))
    return by_hn, by_cones


def is_semistable(spec) -> bool:
    by_hn, by_cones = semistability_routes(spec)
    if by_hn != by_cones:
        raise ConsistencyError(f"HN route says {by_hn}, cone route says {by_cones}")
    return by_hn


def shift_image(spec: ParabolicBundleSpec, j: int) -> Tuple[Cone2D, Fraction]:
    """Image of ``Eff_j(P(E^1))`` in ``Eff_(r_1 + j)(P(E))`` for split two-step bundles.

    Returns the image cone and the scalar ``(N(E^1)/N(E))^(r_2 - j)`` by which the
    first ray is multiplied.  The substitution is
    ``xi_1^a -> (N1/N)^a xi^a`` and ``xi_1^(a-1) L_1 -> (N1/N)^(a-1) xi^(a-1) L``.
    """
    b = _data(spec)
    if b.hn.length != 2:
        raise ValueError("the shift check is stated for two-step HN filtrations")
    sub = BundleData.of(sub_bundle(b.spec, b.hn))
    r2 = sub.rank
    if not 1 <= j <= r2 - 1:
        raise ValidationError(f"j={j} outside 1..{r2 - 1}")
    ratio = Fraction(sub.level, b.level)
    a = r2 - j
    src = eff_cone_lower(sub, j, check=False)
    # the sub-bundle cone in uncanonicalized form: (xi1 - mu2 N1 L1)^a and xi1^(a-1) L1
    g1 = sub.ring.cls(a, 1, -a * sub.hn.slopes[0] * sub.level, LOWER)
    if not cone_equal(src, Cone2D.of(g1, sub.ring.cls(a, 0, 1, LOWER))):
        raise ConsistencyError("semistable form of Eff_j(P(E^1)) disagrees with the nu form")
    ring = b.ring
    images = [
        ring.cls(a, g.xi_coeff * ratio ** a, g.xl_coeff * ratio ** (a - 1), LOWER)
        for g in (g1, sub.ring.cls(a, 0, 1, LOWER))
    ]
    return Cone2D.of(*images), ratio ** a

