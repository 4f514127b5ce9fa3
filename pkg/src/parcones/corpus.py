"""Random split parabolic bundles with a prescribed HN length.

Weights at every point are multiples of ``1/q`` for a bundle-wide ``q``.
Inside one HN group all summands get the same fractional part of their
weight sum (the last point's weight absorbs the difference), so integer
degrees can put them on exactly the same slope.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional

from .parabolic import ParabolicBundleSpec, ParabolicLine, hn_from_split


def _partition(rng: random.Random, total: int, parts: int) -> List[int]:
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    bounds = [0] + cuts + [total]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def random_split_bundle(
    rng: random.Random,
    rank: Optional[int] = None,
    hn_length: Optional[int] = None,
    max_points: int = 3,
    max_den: int = 12,
    name: str = "",
) -> ParabolicBundleSpec:
    rank = rank or rng.randint(1, 8)
    if hn_length is None:
        hn_length = rng.randint(1, min(4, rank))
    if not 1 <= hn_length <= rank:
        raise ValueError("HN length must lie in 1..rank")
    q = rng.randint(1, max_den)
    labels = [f"x{i + 1}" for i in range(rng.randint(0, max_points))]
    sizes = _partition(rng, rank, hn_length)

    slopes: set = set()
    lines = []
    for size in sizes:
        frac = Fraction(rng.randrange(q), q) if labels else Fraction(0)
        while True:
            slope = rng.randint(-4, 4) + frac
            if slope not in slopes:
                slopes.add(slope)
                break
        for _ in range(size):
            weights = {}
            partial = Fraction(0)
            for label in labels[:-1]:
                w = Fraction(rng.randrange(q), q)
                weights[label] = w
                partial += w
            if labels:
                weights[labels[-1]] = (frac - partial) % 1
            wsum = sum(weights.values(), Fraction(0))
            degree = slope - wsum
            assert degree.denominator == 1
            lines.append(ParabolicLine(int(degree), weights))
    rng.shuffle(lines)
    return ParabolicBundleSpec.from_split(lines, name=name)


def with_explicit_hn(spec: ParabolicBundleSpec) -> ParabolicBundleSpec:
    """The same bundle described by its HN data instead of its summands."""
    return ParabolicBundleSpec(
        rank=spec.rank,
        degree=spec.degree,
        points=spec.points,
        explicit_hn=hn_from_split(spec),
        name=spec.name,
    )


def random_corpus(seed: int, count: int, semistable: Optional[bool] = None, **kwargs):
    """``count`` random bundles; ``semistable`` pins the HN length to 1 or >= 2."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        if semistable is None:
            spec = random_split_bundle(rng, name=f"rand{i:03d}", **kwargs)
        elif semistable:
            spec = random_split_bundle(rng, hn_length=1, name=f"ss{i:03d}", **kwargs)
        else:
            rank = rng.randint(2, 8)
            length = rng.randint(2, min(4, rank))
            spec = random_split_bundle(rng, rank=rank, hn_length=length, name=f"us{i:03d}", **kwargs)
        out.append(spec)
    return out
