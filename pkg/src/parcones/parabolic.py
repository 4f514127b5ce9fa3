"""Parabolic bundle data on a curve: degree, slope, level and HN data.

Everything here is exact: weights and degrees are :class:`fractions.Fraction`
and floats are refused at the boundary.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import groupby
from math import lcm
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

from .errors import ConsistencyError, UnderdeterminedBundleError, ValidationError

Rational = Union[int, Fraction, str]


def as_rational(value) -> Fraction:
    """Coerce ``value`` to a Fraction, refusing floats and bools."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"exact rational required, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, tuple) and len(value) == 2:
        return Fraction(int(value[0]), int(value[1]))
    raise TypeError(f"cannot interpret {value!r} as a rational")


@dataclass(frozen=True)
class ParabolicPoint:
    """A marked point with its weights ``((alpha_1, m_1), ..., (alpha_l, m_l))``."""

    label: str
    weights: Tuple[Tuple[Fraction, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "weights",
            tuple((as_rational(a), int(m)) for a, m in self.weights),
        )

    @property
    def multiplicity(self) -> int:
        return sum(m for _, m in self.weights)

    def problems(self) -> list:
        issues = []
        prev = None
        for alpha, m in self.weights:
            if not 0 <= alpha < 1:
                issues.append(f"point {self.label}: weight {alpha} not in [0,1)")
            if m < 1:
                issues.append(f"point {self.label}: multiplicity {m} must be positive")
            if prev is not None and alpha <= prev:
                issues.append(f"point {self.label}: weights must be strictly increasing")
            prev = alpha
        return issues

    @property
    def local_order(self) -> int:
        # lcm of the weight denominators: the ramification order of a local cover
        return lcm(*(a.denominator for a, _ in self.weights)) if self.weights else 1


@dataclass(frozen=True)
class ParabolicLine:
    """A line-bundle summand: integer degree plus one weight per marked point.

    Points not listed carry weight 0.
    """

    degree: int
    weights: Tuple[Tuple[str, Fraction], ...] = ()

    def __post_init__(self):
        items = self.weights.items() if isinstance(self.weights, Mapping) else self.weights
        object.__setattr__(self, "degree", int(self.degree))
        object.__setattr__(
            self, "weights", tuple(sorted((str(k), as_rational(v)) for k, v in items))
        )

    def weight_at(self, label: str) -> Fraction:
        return dict(self.weights).get(label, Fraction(0))

    @property
    def parabolic_degree(self) -> Fraction:
        return self.degree + sum((w for _, w in self.weights), Fraction(0))


@dataclass(frozen=True)
class HNData:
    """Harder-Narasimhan data in the quotient convention.

    ``pieces[i] = (r_i, d_i)`` are rank and parabolic degree of the i-th
    graded quotient, ordered so that the slopes strictly increase.
    """

    pieces: Tuple[Tuple[int, Fraction], ...]

    def __post_init__(self):
        pieces = tuple((int(r), as_rational(d)) for r, d in self.pieces)
        object.__setattr__(self, "pieces", pieces)
        issues = []
        if not pieces:
            issues.append("HN data must have at least one piece")
        if any(r < 1 for r, _ in pieces):
            issues.append("HN ranks must be positive")
        else:
            slopes = [d / r for r, d in pieces]
            if any(b <= a for a, b in zip(slopes, slopes[1:])):
                issues.append("HN slopes must be strictly increasing")
        if issues:
            raise ValidationError(issues)

    @property
    def length(self) -> int:
        return len(self.pieces)

    @property
    def ranks(self) -> Tuple[int, ...]:
        return tuple(r for r, _ in self.pieces)

    @property
    def degrees(self) -> Tuple[Fraction, ...]:
        return tuple(d for _, d in self.pieces)

    @property
    def slopes(self) -> Tuple[Fraction, ...]:
        return tuple(d / r for r, d in self.pieces)

    @property
    def rank(self) -> int:
        return sum(self.ranks)

    @property
    def degree(self) -> Fraction:
        return sum(self.degrees, Fraction(0))

    @property
    def cumulative_ranks(self) -> Tuple[int, ...]:
        """``(r_0, r_1, ..., r_l)`` with ``r_i = r_1 + ... + r_i`` (rank of E/E^i)."""
        out = [0]
        for r in self.ranks:
            out.append(out[-1] + r)
        return tuple(out)

    @property
    def tail_degrees(self) -> Tuple[Fraction, ...]:
        """``(d_0, ..., d_l)`` with ``d_i = d - (d_1 + ... + d_i)`` (par-deg of E^i)."""
        out = [self.degree]
        for d in self.degrees:
            out.append(out[-1] - d)
        return tuple(out)

    def is_semistable(self) -> bool:
        return self.length == 1

    def tail(self) -> "HNData":
        """HN data of the subbundle E^1 (all pieces but the first)."""
        return HNData(self.pieces[1:])


@dataclass(frozen=True)
class ParabolicBundleSpec:
    """Numerical data of a parabolic vector bundle on a smooth projective curve."""

    rank: int
    degree: int
    points: Tuple[ParabolicPoint, ...] = ()
    split: Optional[Tuple[ParabolicLine, ...]] = None
    explicit_hn: Optional[HNData] = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rank", int(self.rank))
        object.__setattr__(self, "degree", int(self.degree))
        object.__setattr__(self, "points", tuple(self.points))
        if self.split is not None:
            object.__setattr__(self, "split", tuple(self.split))
        if self.explicit_hn is not None and not isinstance(self.explicit_hn, HNData):
            object.__setattr__(self, "explicit_hn", HNData(tuple(self.explicit_hn)))
        issues = self.problems()
        if issues:
            raise ValidationError(issues)

    @classmethod
    def from_split(cls, summands: Iterable, name: str = "") -> "ParabolicBundleSpec":
        """Build a spec from line summands, deriving rank, degree and point weights.

        Each summand is a :class:`ParabolicLine` or a ``(degree, {label: weight})``
        pair.
        """
        lines = tuple(
            s if isinstance(s, ParabolicLine) else ParabolicLine(s[0], s[1] if len(s) > 1 else ())
            for s in summands
        )
        labels = sorted({label for line in lines for label, _ in line.weights})
        points = []
        for label in labels:
            ws = sorted(line.weight_at(label) for line in lines)
            points.append(ParabolicPoint(label, tuple((a, len(list(g))) for a, g in groupby(ws))))
        return cls(
            rank=len(lines),
            degree=sum(line.degree for line in lines),
            points=tuple(points),
            split=lines,
            name=name,
        )

    def problems(self) -> list:
        issues = []
        if self.rank < 1:
            issues.append("rank must be positive")
        labels = [p.label for p in self.points]
        if len(set(labels)) != len(labels):
            issues.append("parabolic point labels must be distinct")
        for p in self.points:
            issues.extend(p.problems())
            if p.multiplicity != self.rank:
                issues.append(
                    f"point {p.label}: multiplicities sum to {p.multiplicity}, expected rank {self.rank}"
                )
        if self.split is not None and self.explicit_hn is not None:
            issues.append("supply at most one of split summands and explicit HN data")
        if self.split is not None:
            issues.extend(self._split_problems(labels))
        if self.explicit_hn is not None and not issues:
            issues.extend(hn_problems(self.explicit_hn, self))
        return issues

    def _split_problems(self, labels) -> list:
        issues = []
        if len(self.split) != self.rank:
            issues.append(f"split has {len(self.split)} summands, expected rank {self.rank}")
        if sum(s.degree for s in self.split) != self.degree:
            issues.append("summand degrees must add up to the underlying degree")
        known = set(labels)
        for s in self.split:
            for label, w in s.weights:
                if label not in known:
                    issues.append(f"summand weight refers to unknown point {label}")
                if not 0 <= w < 1:
                    issues.append(f"summand weight {w} not in [0,1)")
        for p in self.points:
            ws = sorted(s.weight_at(p.label) for s in self.split)
            expected = sorted(a for a, m in p.weights for _ in range(m))
            if ws != expected:
                issues.append(f"point {p.label}: summand weights do not match the point's weights")
        return issues

    @property
    def has_hn_source(self) -> bool:
        return self.rank == 1 or self.split is not None or self.explicit_hn is not None


def hn_problems(hn: HNData, spec: ParabolicBundleSpec) -> list:
    issues = []
    if hn.rank != spec.rank:
        issues.append(f"HN ranks sum to {hn.rank}, expected rank {spec.rank}")
    pd = parabolic_degree(spec)
    if hn.degree != pd:
        issues.append(f"HN degrees sum to {hn.degree}, expected parabolic degree {pd}")
    n = level(spec)
    if any((d * n).denominator != 1 for d in hn.degrees):
        # quotient weights are a sub-multiset of the point weights
        issues.append(f"HN degree denominators must divide the level {n}")
    return issues


def weight_sum(spec: ParabolicBundleSpec) -> Fraction:
    return sum((a * m for p in spec.points for a, m in p.weights), Fraction(0))


def parabolic_degree(spec: ParabolicBundleSpec, check: bool = True) -> Fraction:
    """``deg(E) + sum_x sum_i m_i(x) * alpha_i(x)``.

    With ``check`` the integral over the weight filtration is evaluated too and
    the two must agree exactly.
    """
    value = spec.degree + weight_sum(spec)
    if check:
        other = parabolic_degree_integral(spec)
        if other != value:
            raise ConsistencyError(f"parabolic degree: sum form {value} != integral form {other}")
    return value


def parabolic_degree_integral(spec: ParabolicBundleSpec) -> Fraction:
    """Integral of ``deg(E_t)`` over ``t in [0, 1]`` plus ``r * deg D``.

    ``E_t`` keeps the flag pieces of weight >= t, so ``deg(E_t)`` is a step
    function dropping by ``m_i`` just after each weight ``alpha_i``.
    """
    breaks = sorted({Fraction(0), Fraction(1)} | {a for p in spec.points for a, _ in p.weights})
    total = Fraction(0)
    for lo, hi in zip(breaks, breaks[1:]):
        t = (lo + hi) / 2
        lost = sum(m for p in spec.points for a, m in p.weights if a < t)
        total += (hi - lo) * (spec.degree - lost)
    return total + spec.rank * len(spec.points)


def parabolic_slope(spec: ParabolicBundleSpec) -> Fraction:
    return parabolic_degree(spec) / spec.rank


def level(spec: ParabolicBundleSpec) -> int:
    """lcm over the marked points of the local orders; 1 for an empty divisor."""
    return lcm(1, *(p.local_order for p in spec.points))


def hn_from_split(spec: ParabolicBundleSpec) -> HNData:
    """Group the line summands by parabolic slope, ascending."""
    if spec.split is None:
        raise ValueError("spec has no split description")
    slopes = sorted(line.parabolic_degree for line in spec.split)
    pieces = []
    for mu, group in groupby(slopes):
        size = len(list(group))
        pieces.append((size, mu * size))
    return HNData(tuple(pieces))


def resolve_hn(spec: ParabolicBundleSpec) -> HNData:
    if spec.explicit_hn is not None:
        return spec.explicit_hn
    if spec.split is not None:
        return hn_from_split(spec)
    if spec.rank == 1:
        return HNData(((1, parabolic_degree(spec)),))
    raise UnderdeterminedBundleError(
        f"underdetermined bundle: rank {spec.rank} needs explicit HN data or a split description"
    )


def sub_bundle(spec: ParabolicBundleSpec, hn: Optional[HNData] = None) -> ParabolicBundleSpec:
    """The first HN subbundle E^1 of a split bundle, as its own split spec.

    E^1 is the sum of the summands outside the minimal-slope quotient.
    """
    if spec.split is None:
        raise ValueError("sub_bundle needs a split description")
    hn = hn or resolve_hn(spec)
    mu1 = hn.slopes[0]
    lines = [s for s in spec.split if s.parabolic_degree != mu1]
    if not lines:
        raise ValueError("semistable bundle has no proper HN subbundle")
    return ParabolicBundleSpec.from_split(lines, name=f"{spec.name}^1" if spec.name else "")


def split_line(degree: int, weights: Optional[Mapping[str, Rational]] = None) -> ParabolicLine:
    return ParabolicLine(degree, dict(weights or {}))

