"""Seeded random tropical polynomials for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .tropical import InputError, TropicalPolynomial


def random_tropical_polynomial(rng: random.Random, max_points: int = 12,
                               box: int = 4) -> TropicalPolynomial:
    """Support of 3..max_points points in [0, box]^2 with small rational valuations.

    Every other draw uses valuations in {0, 1}, which produces many coplanar
    lifts and hence large non-TP cells.
    """
    while True:
        k = rng.randint(3, max_points)
        pts: set[tuple[int, int]] = set()
        while len(pts) < k:
            pts.add((rng.randint(0, box), rng.randint(0, box)))
        coarse = rng.random() < 0.5
        vals = {p: Fraction(rng.randint(0, 1)) if coarse
                else Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for p in sorted(pts)}
        try:
            return TropicalPolynomial.from_mapping(vals)
        except InputError:
            continue  # collinear support


def corpus(seed: int, n: int, max_points: int = 12) -> list[TropicalPolynomial]:
    rng = random.Random(seed)
    return [random_tropical_polynomial(rng, max_points) for _ in range(n)]
