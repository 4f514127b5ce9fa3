"""Numerical classes on the projectivization of a parabolic bundle.

The numerical groups in every grade are spanned by ``xi^g`` and
``xi^(g-1) * L`` where ``xi`` is the tautological class and ``L`` the class of
a fiber over the curve.  ``L^2 = 0`` is structural: a homogeneous class of
grade ``g`` is stored as the pair of coefficients ``(xi, xl)``.  Top-grade
classes evaluate to multiples of the point class through

    xi^r       = N^r * pardeg
    xi^(r-1) L = N^(r-1)

with ``N`` the level of the bundle.  The same machinery with ``N = 1`` and
``pardeg = |Gamma| * pardeg`` models the smooth orbifold cover.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .errors import ContextMismatchError, GradeError, InadmissibleGammaError
from .parabolic import ParabolicBundleSpec, as_rational, level, parabolic_degree

UPPER = "upper"
LOWER = "lower"


@dataclass(frozen=True)
class RingContext:
    rank: int
    level: int
    pardeg: Fraction
    space: str = "base"

    def __post_init__(self):
        object.__setattr__(self, "pardeg", as_rational(self.pardeg))
        if self.rank < 1 or self.level < 1:
            raise ValueError("rank and level must be positive")

    @classmethod
    def from_spec(cls, spec: ParabolicBundleSpec) -> "RingContext":
        return cls(spec.rank, level(spec), parabolic_degree(spec))

    def cls(self, grade: int, xi=0, xl=0, side: str = UPPER) -> "NumericalClass":
        return NumericalClass(self, grade, as_rational(xi), as_rational(xl), side)

    @property
    def xi(self) -> "NumericalClass":
        return self.cls(1, 1, 0)

    @property
    def L(self) -> "NumericalClass":
        return self.cls(1, 0, 1)

    @property
    def one(self) -> "NumericalClass":
        return self.cls(0, 1, 0)

    def monomial(self, a: int, b: int, coeff=1) -> "NumericalClass":
        """``coeff * xi^a * L^b``; zero whenever ``b >= 2``."""
        g = a + b
        if b >= 2:
            return self.cls(g)
        return self.cls(g, coeff, 0) if b == 0 else self.cls(g, 0, coeff)

    def zero(self, grade: int, side: str = UPPER) -> "NumericalClass":
        return self.cls(grade, 0, 0, side)

    def top_values(self) -> Tuple[Fraction, Fraction]:
        """Degrees of ``xi^r`` and ``xi^(r-1) L``."""
        n, r = self.level, self.rank
        return Fraction(n) ** r * self.pardeg, Fraction(n) ** (r - 1)

    def pairing_matrix(self, grade: int):
        """Pairing of the bases in grades ``r - grade`` (rows) and ``grade`` (cols)."""
        if not 1 <= grade <= self.rank - 1:
            raise GradeError(f"pairing matrix needs 1 <= grade <= r-1, got {grade}")
        top, mixed = self.top_values()
        return ((top, mixed), (mixed, Fraction(0)))


@dataclass(frozen=True)
class NumericalClass:
    """Homogeneous class ``xi_coeff * xi^g + xl_coeff * xi^(g-1) L``.

    ``side`` records whether the polynomial stands for a Chern class in
    ``N^g`` (upper) or for its cap with the fundamental class in ``N_(r-g)``
    (lower).
    """

    context: RingContext
    grade: int
    xi_coeff: Fraction
    xl_coeff: Fraction
    side: str = UPPER

    def __post_init__(self):
        if not 0 <= self.grade <= self.context.rank:
            raise GradeError(f"grade {self.grade} outside 0..{self.context.rank}")
        if self.grade == 0 and self.xl_coeff != 0:
            raise GradeError("grade 0 has no L term")
        if self.side not in (UPPER, LOWER):
            raise ValueError(f"side must be {UPPER!r} or {LOWER!r}")

    @property
    def coeffs(self) -> Dict[Tuple[int, int], Fraction]:
        g = self.grade
        out = {}
        if self.xi_coeff:
            out[(g, 0)] = self.xi_coeff
        if self.xl_coeff:
            out[(g - 1, 1)] = self.xl_coeff
        return out

    @property
    def vector(self) -> Tuple[Fraction, Fraction]:
        return self.xi_coeff, self.xl_coeff

    def is_zero(self) -> bool:
        return self.xi_coeff == 0 and self.xl_coeff == 0

    def _check_compatible(self, other: "NumericalClass"):
        if self.context != other.context:
            raise ContextMismatchError("classes live in different rings")

    def __add__(self, other):
        if not isinstance(other, NumericalClass):
            return NotImplemented
        self._check_compatible(other)
        if self.grade != other.grade:
            raise GradeError("sum of classes of different grades is not homogeneous")
        if self.side != other.side:
            raise ContextMismatchError("sum of upper and lower classes")
        return NumericalClass(
            self.context, self.grade, self.xi_coeff + other.xi_coeff,
            self.xl_coeff + other.xl_coeff, self.side,
        )

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, NumericalClass):
            return NotImplemented
        return self + (-other)

    def scale(self, factor) -> "NumericalClass":
        f = as_rational(factor)
        return NumericalClass(self.context, self.grade, f * self.xi_coeff, f * self.xl_coeff, self.side)

    def __mul__(self, other):
        if isinstance(other, NumericalClass):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = self.context.one
        for _ in range(n):
            out = multiply(out, self)
        return out

    def with_side(self, side: str) -> "NumericalClass":
        return NumericalClass(self.context, self.grade, self.xi_coeff, self.xl_coeff, side)

    def __str__(self):
        return format_class(self)


def format_class(c: NumericalClass, xi: str = "xi", fiber: str = "L") -> str:
    terms = []
    for (a, b), coeff in sorted(c.coeffs.items(), reverse=True):
        mono = [xi if a == 1 else f"{xi}^{a}"] if a else []
        if b:
            mono.append(fiber)
        body = "*".join(mono) or "1"
        if coeff == 1 and mono:
            text = body
        elif coeff == -1 and mono:
            text = f"-{body}"
        else:
            text = f"{coeff}*{body}" if mono else str(coeff)
        terms.append(text)
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def multiply(c1: NumericalClass, c2: NumericalClass) -> NumericalClass:
    """Product truncated by ``L^2 = 0``; grades above ``r`` are an error."""
    c1._check_compatible(c2)
    g = c1.grade + c2.grade
    if g > c1.context.rank:
        raise GradeError(f"product grade {g} exceeds the top grade {c1.context.rank}")
    xi = c1.xi_coeff * c2.xi_coeff
    xl = c1.xi_coeff * c2.xl_coeff + c1.xl_coeff * c2.xi_coeff
    side = LOWER if LOWER in (c1.side, c2.side) else UPPER
    return NumericalClass(c1.context, g, xi, xl, side)


def degree_of_top(c: NumericalClass) -> Fraction:
    ctx = c.context
    if c.grade != ctx.rank:
        raise GradeError(f"degree needs a class of grade {ctx.rank}, got {c.grade}")
    top, mixed = ctx.top_values()
    return c.xi_coeff * top + c.xl_coeff * mixed


def pair(upper: NumericalClass, lower: NumericalClass) -> Fraction:
    if upper.grade + lower.grade != upper.context.rank:
        raise GradeError(
            f"pairing needs complementary grades, got {upper.grade} + {lower.grade} != {upper.context.rank}"
        )
    return degree_of_top(multiply(upper, lower))


def cyclify(c: NumericalClass) -> NumericalClass:
    """Flip the upper/lower tag; the polynomial representative is shared."""
    return c.with_side(LOWER if c.side == UPPER else UPPER)


@dataclass(frozen=True)
class CoverContext:
    """A finite Galois cover of order ``gamma`` on which the bundle becomes an
    ordinary vector bundle of degree ``gamma * pardeg``."""

    base: RingContext
    gamma: int

    def __post_init__(self):
        if self.gamma < 1 or self.gamma % self.base.level:
            raise InadmissibleGammaError(
                f"gamma={self.gamma} must be a positive multiple of the level {self.base.level}",
                suggestion=self.base.level,
            )

    @property
    def ring(self) -> RingContext:
        return RingContext(self.base.rank, 1, self.gamma * self.base.pardeg, space=f"cover[{self.gamma}]")


def pullback_to_cover(cover: CoverContext, c: NumericalClass) -> NumericalClass:
    """Substitute ``xi -> N * xi~`` and ``L -> gamma * L~``."""
    if c.context != cover.base:
        raise ContextMismatchError("class does not live on the base of this cover")
    n, g = Fraction(cover.base.level), c.grade
    xi = c.xi_coeff * n ** g
    xl = c.xl_coeff * n ** (g - 1) * cover.gamma if g >= 1 else Fraction(0)
    return NumericalClass(cover.ring, g, xi, xl, c.side)


def pushforward_from_cover(cover: CoverContext, c: NumericalClass) -> NumericalClass:
    """``xi~^j -> gamma/N^j xi^j`` and ``xi~^(j-1) L~ -> 1/N^(j-1) xi^(j-1) L``."""
    if c.context != cover.ring:
        raise ContextMismatchError("class does not live on this cover")
    n, j = Fraction(cover.base.level), c.grade
    xi = c.xi_coeff * cover.gamma / n ** j
    xl = c.xl_coeff / n ** (j - 1) if j >= 1 else Fraction(0)
    return NumericalClass(cover.base, j, xi, xl, c.side)
