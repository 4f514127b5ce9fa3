"""Independent check of the closed forms through the orbifold cover.

On the cover the bundle is an ordinary vector bundle, where the classical
cone descriptions apply: the nef cone of Miyaoka and the pseudoeffective
cones of Fulton (the class of the projectivized minimal-slope quotient, and
the inductive shift into the first HN subbundle for larger dimensions).  The
cover cones are pushed down with the monomial scalings of the finite quotient
map and compared with the closed forms of :mod:`parcones.cones`.

Only the numerics of the cover bundle are used: rank, degree ``|Gamma| d``
and HN pieces ``(r_i, |Gamma| d_i)``.  Nothing here calls ``nu_table``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

from .cones import BundleData, Cone2D, cone_equal, dual_cone, eff_cone_lower, nef_cone_1, nef_cone_upper
from .errors import InadmissibleGammaError, ValidationError
from .ring import LOWER, CoverContext, RingContext, pullback_to_cover, pushforward_from_cover


@dataclass(frozen=True)
class OrbifoldBundleData:
    rank: int
    gamma: int
    degree: Fraction
    pieces: Tuple[Tuple[int, Fraction], ...]

    @property
    def slopes(self) -> Tuple[Fraction, ...]:
        return tuple(d / r for r, d in self.pieces)

    @property
    def ring(self) -> RingContext:
        return RingContext(self.rank, 1, self.degree, space=f"cover[{self.gamma}]")

    def is_semistable(self) -> bool:
        return len(self.pieces) == 1


def smallest_gamma(spec) -> int:
    """Smallest |Gamma| making the cover numerics integral."""
    b = spec if isinstance(spec, BundleData) else BundleData.of(spec)
    dens = [b.ring.pardeg.denominator] + [d.denominator for d in b.hn.degrees]
    return lcm(b.level, *dens)


def lift(spec, gamma: int) -> OrbifoldBundleData:
    b = spec if isinstance(spec, BundleData) else BundleData.of(spec)
    base = smallest_gamma(b)
    if gamma < 1 or gamma % b.level:
        raise InadmissibleGammaError(
            f"inadmissible gamma {gamma}: must be a positive multiple of the level {b.level}",
            suggestion=base,
        )
    scaled = [gamma * b.ring.pardeg] + [gamma * d for d in b.hn.degrees]
    if any(x.denominator != 1 for x in scaled):
        raise InadmissibleGammaError(
            f"inadmissible gamma {gamma}: scaled degrees are not integers (try a multiple of {base})",
            suggestion=base,
        )
    return OrbifoldBundleData(
        rank=b.rank,
        gamma=gamma,
        degree=scaled[0],
        pieces=tuple((r, gamma * d) for r, d in b.hn.pieces),
    )


def _fulton_first_ray(ring: RingContext, rank: int, degree: Fraction, pieces, k: int):
    """Non-fiber ray of Eff_k on P(V) for a bundle V with the given numerics.

    Polynomials are formed in ``ring`` (the ambient cover ring); the shift into
    the HN subbundle keeps the polynomial unchanged.
    """
    r1, d1 = pieces[0]
    tilt = ring.xi - ring.L.scale(d1 / r1)
    if len(pieces) == 1:
        return tilt ** (rank - k)
    if k <= r1:
        quotient_class = ring.cls(rank - r1, 1, d1 - degree)
        return quotient_class * tilt ** (r1 - k)
    return _fulton_first_ray(ring, rank - r1, degree - d1, pieces[1:], k - r1)


def quotient_class(orb: OrbifoldBundleData):
    """Class of P(Q~^1) in P(E~): ``xi~^(r-r1) + (d~1 - d~) xi~^(r-r1-1) L~``."""
    ring = orb.ring
    r1, d1 = orb.pieces[0]
    return ring.cls(orb.rank - r1, 1, d1 - orb.degree, LOWER)


def fulton_eff_lower(orb: OrbifoldBundleData, k: int) -> Cone2D:
    if not 1 <= k <= orb.rank - 1:
        raise ValidationError(f"k={k} outside 1..{orb.rank - 1}")
    ring = orb.ring
    first = _fulton_first_ray(ring, orb.rank, orb.degree, orb.pieces, k).with_side(LOWER)
    fiber = ring.cls(orb.rank - k, 0, 1, LOWER)
    return Cone2D.of(first, fiber)


def miyaoka_nef(orb: OrbifoldBundleData) -> Cone2D:
    ring = orb.ring
    return Cone2D.of(ring.xi - ring.L.scale(orb.slopes[0]), ring.L)


def default_gammas(spec) -> List[int]:
    """``{N, 2N, 3N}`` filtered for integrality, else multiples of the smallest
    admissible order."""
    b = spec if isinstance(spec, BundleData) else BundleData.of(spec)
    base = smallest_gamma(b)
    picks = [m * b.level for m in (1, 2, 3) if (m * b.level) % base == 0]
    if not picks:
        picks = [base, 2 * base, 3 * base]
    return picks


@dataclass
class GammaCheck:
    gamma: int
    k: Optional[int]
    passed: bool
    expected: Optional[Cone2D] = None
    found: Optional[Cone2D] = None
    detail: str = ""

    def diff(self) -> str:
        if self.passed:
            return ""
        return f"gamma={self.gamma} k={self.k}: expected {self.expected}, oracle gives {self.found}. {self.detail}".strip()


@dataclass
class CrossCheckReport:
    name: str
    checks: List[GammaCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def per_gamma(self) -> dict:
        out = {}
        for c in self.checks:
            out[c.gamma] = out.get(c.gamma, True) and c.passed
        return dict(sorted(out.items()))

    def failures(self) -> List[str]:
        return [c.diff() for c in self.checks if not c.passed]


def pushed_eff(spec, k: int, gamma: int) -> Cone2D:
    """Fulton's cone on the cover, pushed down to P(E*)."""
    b = spec if isinstance(spec, BundleData) else BundleData.of(spec)
    orb = lift(b, gamma)
    cover = CoverContext(b.ring, gamma)
    cone = fulton_eff_lower(orb, k)
    return Cone2D(tuple(pushforward_from_cover(cover, g) for g in cone.generators))


def check_eff(spec, k: int, gamma: int) -> GammaCheck:
    b = spec if isinstance(spec, BundleData) else BundleData.of(spec)
    expected = eff_cone_lower(b, k)
    found = pushed_eff(b, k, gamma)
    ok = cone_equal(expected, found)
    detail = ""
    # nef side: the dual of the oracle cone against the closed Nef^k
    nef_expected = nef_cone_upper(b, k)
    nef_found = dual_cone(found)
    if not cone_equal(nef_expected, nef_found):
        ok = False
        detail = f"Nef^{k}: expected {nef_expected}, dual of oracle cone is {nef_found}"
    return GammaCheck(gamma, k, ok, expected, found, detail)


def check_nef(spec, gamma: int) -> GammaCheck:
    """Pull the nef divisor rays back to the cover: they must be positive
    multiples of Miyaoka's rays there."""
    b = spec if isinstance(spec, BundleData) else BundleData.of(spec)
    orb = lift(b, gamma)
    cover = CoverContext(b.ring, gamma)
    nef = nef_cone_1(b)
    pulled = Cone2D(tuple(pullback_to_cover(cover, g) for g in nef.generators))
    upstairs = miyaoka_nef(orb)
    return GammaCheck(gamma, None, cone_equal(pulled, upstairs), upstairs, pulled, "nef divisors")


def cross_check(spec, k: Optional[int] = None, gammas: Optional[Sequence[int]] = None) -> CrossCheckReport:
    """Compare oracle and closed forms for one ``k`` (or every k when ``None``)."""
    b = spec if isinstance(spec, BundleData) else BundleData.of(spec)
    gammas = list(gammas) if gammas is not None else default_gammas(b)
    ks = range(1, b.rank) if k is None else [k]
    report = CrossCheckReport(b.spec.name)
    for gamma in gammas:
        lift(b, gamma)
        report.checks.append(check_nef(b, gamma))
        for kk in ks:
            report.checks.append(check_eff(b, kk, gamma))
    return report
