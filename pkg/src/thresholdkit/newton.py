"""Extended Newton diagrams: minimal generators and polyhedral queries.

A diagram is stored by the componentwise-minimal elements of its defining
point set (its Dickson reduction), never by facets.  Geometric queries --
membership of a rational point, inclusion of one diagram in another -- are
answered through exact LP feasibility, which is simple and never rounds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .lattice import (
    DimensionMismatchError,
    ExponentVector,
    SupportSet,
    lp_feasible,
)

__all__ = [
    "NewtonDiagram",
    "from_support",
    "from_points",
    "weight_of",
    "contains_point",
    "includes",
    "diagram_to_json",
    "diagram_from_json",
]


def _dominates(a: ExponentVector, b: ExponentVector) -> bool:
    return all(x >= y for x, y in zip(a, b))


def _minimal_elements(points: Iterable[ExponentVector]) -> tuple[ExponentVector, ...]:
    pts = sorted(set(points))
    keep = []
    for p in pts:
        if not any(q != p and _dominates(p, q) for q in pts):
            keep.append(p)
    return tuple(keep)


@dataclass(frozen=True)
class NewtonDiagram:
    """Convex hull of the union of shifted positive octants over the generators.

    Generators are pairwise incomparable under componentwise <= and stored
    sorted, so equal diagrams built from equal point sets compare equal and
    iterate identically.
    """

    dimension: int
    generators: tuple[ExponentVector, ...]

    def __post_init__(self):
        gens = tuple(sorted(tuple(g) for g in self.generators))
        if not gens:
            raise ValueError("diagram must have at least one generator")
        for g in gens:
            if len(g) != self.dimension:
                raise DimensionMismatchError(
                    f"generator {g} has length {len(g)}, expected {self.dimension}"
                )
            if any(not isinstance(x, int) or x < 0 for x in g):
                raise ValueError(f"generator {g} has a non-integer or negative entry")
        for g in gens:
            for h_ in gens:
                if g != h_ and _dominates(g, h_):
                    raise ValueError(f"generator {g} dominates {h_}; diagram is not reduced")
        object.__setattr__(self, "generators", gens)


def from_support(support: SupportSet) -> NewtonDiagram:
    """Dickson reduction: keep only the componentwise-minimal support points."""
    return NewtonDiagram(
        dimension=support.dimension,
        generators=_minimal_elements(support.points),
    )


def from_points(points: Iterable[Sequence[int]], dimension: int) -> NewtonDiagram:
    pts = frozenset(tuple(p) for p in points)
    return from_support(SupportSet(dimension=dimension, points=pts))


def weight_of(diagram: NewtonDiagram, weights: Sequence[int]) -> int:
    """Least weighted degree of the diagram: min over generators of <w, m>.

    Minimality of the generators suffices; dominated points never lower the
    minimum for nonnegative weights.
    """
    w = tuple(weights)
    if len(w) != diagram.dimension:
        raise DimensionMismatchError(
            f"weight vector {w} has length {len(w)}, expected {diagram.dimension}"
        )
    if any(not isinstance(x, int) or x < 0 for x in w):
        raise ValueError(f"weight vector {w} has a non-integer or negative entry")
    return min(sum(wi * mi for wi, mi in zip(w, m)) for m in diagram.generators)


def contains_point(diagram: NewtonDiagram, point: Sequence[Fraction | int]) -> bool:
    """Membership of a rational point in the diagram.

    The point lies in the diagram iff it dominates a convex combination of
    the generators: exists lambda >= 0 with sum(lambda) = 1 and
    sum(lambda_m * m) <= point componentwise.
    """
    p = tuple(Fraction(x) for x in point)
    if len(p) != diagram.dimension:
        raise DimensionMismatchError(
            f"point {p} has length {len(p)}, expected {diagram.dimension}"
        )
    gens = diagram.generators
    constraints = [([Fraction(1)] * len(gens), "=", Fraction(1))]
    for i in range(diagram.dimension):
        constraints.append(([Fraction(m[i]) for m in gens], "<=", p[i]))
    return lp_feasible(constraints)


def includes(big: NewtonDiagram, small: NewtonDiagram) -> bool:
    """True iff small is a subset of big as diagrams.

    Both diagrams are octant-closed convex sets, so inclusion reduces to
    membership of each generator of the smaller diagram.
    """
    if big.dimension != small.dimension:
        raise DimensionMismatchError(
            f"dimension mismatch: {big.dimension} vs {small.dimension}"
        )
    return all(contains_point(big, g) for g in small.generators)


# ---------------------------------------------------------------------------
# JSON wire format: {"n": 3, "points": [[3,0,0], [0,7,0], [0,0,11]]}
# ---------------------------------------------------------------------------

def diagram_to_json(diagram: NewtonDiagram) -> dict:
    return {"n": diagram.dimension, "points": [list(g) for g in diagram.generators]}


def diagram_from_json(obj: dict | str) -> NewtonDiagram:
    """Load a diagram from its JSON form; points need not be minimal."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "n" not in obj or "points" not in obj:
        raise ValueError('diagram JSON must be an object {"n": ..., "points": [...]}')
    return from_points(obj["points"], int(obj["n"]))
