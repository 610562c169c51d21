"""Threshold computation over Newton diagrams by exact weight-vector search.

For an admissible weight vector w (nonnegative, primitive, neither zero nor
a unit vector) the quantity of interest is

    h(w) = (w_1 + ... + w_n - 1) / wf(w),      wf(w) = min_m <w, m>,

the minimum over the diagram generators m; fractions with wf(w) = 0 count
as +infinity.  The threshold of the diagram is min(1, inf_w h(w)).

The infimum ranges over infinitely many vectors, but it can be resolved by
a finite search.  Let t* be the exact maximin value of <u, m> over
probability directions u (an LP over the generators) and r* = 1/t*.  Every
admissible w satisfies wf(w) <= |w|_1 * t*, hence

    h(w) >= r* * (1 - 1/|w|_1),

so once some evaluated vector achieves h < r*, all levels |w|_1 beyond
L = ceil(r* / (r* - best)) are strictly worse than the best value found and
enumeration through level L is exhaustive.  Clearing denominators of the
optimal LP direction gives a primitive vector with h = r*(1 - 1/|w|_1) < r*,
which primes the bound whenever that vector is admissible.  Degenerate
diagrams whose optimal direction is a unit vector (e.g. a single generator
on a coordinate axis) may admit no vector below r*; the search then stops
at the configured cap and reports a partial result rather than a wrong one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .lattice import (
    InadmissibleWeightError,
    MaximinSolution,
    WeightVector,
    check_admissible_weight,
    fraction_to_json,
    maximin_lp,
)
from .newton import NewtonDiagram, weight_of

__all__ = [
    "INFINITY",
    "DEFAULT_MAX_BOUND",
    "UnitAtOriginError",
    "SearchBoundExceededError",
    "ThresholdReport",
    "Certification",
    "h_value",
    "ct_diagram",
    "lct_diagram",
    "ct_bruteforce",
    "certify",
]

DEFAULT_MAX_BOUND = 10**6

STATUS_COMPLETE = "complete"
STATUS_BOUND_EXCEEDED = "bound-exceeded"


class UnitAtOriginError(ValueError):
    """The origin is a generator: the germ is a unit, no threshold exists."""


class SearchBoundExceededError(RuntimeError):
    """An exact answer was required but the weight search hit its cap."""


class _PlusInfinity:
    """Exact stand-in for +infinity; compares above every Fraction."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "+inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("thresholdkit.INFINITY")

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self


INFINITY = _PlusInfinity()


@dataclass(frozen=True)
class ThresholdReport:
    """Outcome of a threshold search.

    value        threshold, clamped into (0, 1]
    clamped      True iff the raw minimum exceeded 1 and was cut to 1
    witnesses    all admissible vectors within the search bound attaining the
                 raw minimum (empty when clamped), sorted lexicographically
    relaxation   r* = 1/t* from the maximin LP, unclamped
    search_bound the level bound L actually used (the cap if exceeded)
    nodes        number of admissible weight vectors evaluated
    status       "complete" or "bound-exceeded"
    """

    value: Fraction
    clamped: bool
    witnesses: tuple[WeightVector, ...]
    relaxation: Fraction
    search_bound: int
    nodes: int
    status: str

    def to_json_dict(self) -> dict:
        return {
            "value": fraction_to_json(self.value),
            "clamped": self.clamped,
            "witnesses": [list(w) for w in self.witnesses],
            "relaxation": fraction_to_json(self.relaxation),
            "search_bound": self.search_bound,
            "nodes": self.nodes,
            "status": self.status,
        }


@dataclass(frozen=True)
class Certification:
    """Result of checking that a candidate value is the diagram threshold."""

    ok: bool
    witness: WeightVector | None
    report: ThresholdReport


def _check_no_unit(diagram: NewtonDiagram) -> None:
    origin = (0,) * diagram.dimension
    if origin in diagram.generators:
        raise UnitAtOriginError(
            "constant term present: the germ is a unit at the origin, threshold undefined"
        )


def h_value(diagram: NewtonDiagram, weights: Sequence[int]) -> Fraction | _PlusInfinity:
    """(|w|_1 - 1) / wf(w) for an admissible weight vector, or +infinity."""
    w = check_admissible_weight(weights, diagram.dimension)
    wf = weight_of(diagram, w)
    if wf == 0:
        return INFINITY
    return Fraction(sum(w) - 1, wf)


def _ray_seed(direction: tuple[Fraction, ...]) -> WeightVector | None:
    """Primitive integer vector on the ray of a rational direction.

    Returns None when the ray is a coordinate axis (the resulting unit
    vector is not admissible).
    """
    scale = math.lcm(*(u.denominator for u in direction))
    vec = tuple(int(u * scale) for u in direction)
    g = math.gcd(*vec)
    vec = tuple(x // g for x in vec)
    if sum(vec) == 1:
        return None
    return vec


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All nonnegative integer vectors with the given coordinate sum, in
    lexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def ct_diagram(diagram: NewtonDiagram, max_bound: int | None = None) -> ThresholdReport:
    """Threshold of a diagram with complete witness list, by bounded search.

    Enumerates admissible vectors level by level (levels are values of
    |w|_1, vectors within a level in lexicographic order), shrinking the
    level bound as the best value improves; see the module docstring for
    why the bound is valid.  If the bound never becomes finite before the
    cap, the report carries status "bound-exceeded" and the best value
    found so far, which is always a correct upper bound.
    """
    cap = DEFAULT_MAX_BOUND if max_bound is None else int(max_bound)
    if cap < 2:
        raise ValueError(f"max_bound must be at least 2, got {cap}")
    _check_no_unit(diagram)

    n = diagram.dimension
    gens = diagram.generators
    sol = maximin_lp(gens, n)
    tstar = sol.value
    rstar = 1 / tstar

    nodes = 0
    best_num = 0  # raw h as an unreduced pair best_num/best_den; 0/0 = not set
    best_den = 0
    witnesses: list[WeightVector] = []

    def wf_of(w: Sequence[int]) -> int:
        return min(sum(wi * mi for wi, mi in zip(w, m)) for m in gens)

    def consider(w: WeightVector, level: int, wf: int) -> bool:
        nonlocal best_num, best_den, witnesses
        if wf == 0:
            return False
        num = level - 1
        if best_den == 0 or num * best_den < best_num * wf:
            best_num, best_den = num, wf
            witnesses = [w]
            return True
        if num * best_den == best_num * wf and w not in witnesses:
            witnesses.append(w)
        return False

    def search_limit() -> int | None:
        if best_den == 0:
            return None
        tau = Fraction(best_num, best_den)
        if tau > 1:
            tau = Fraction(1)
        if tau >= rstar:
            return None
        return max(2, math.ceil(rstar / (rstar - tau)))

    seeds: list[WeightVector] = []
    ray = _ray_seed(sol.direction)
    if ray is not None:
        seeds.append(ray)
    ones = (1,) * n
    if ones not in seeds:
        seeds.append(ones)
    for w in seeds:
        wf = wf_of(w)
        nodes += 1
        if w is ray:
            # the primitive vector on the optimal ray sits strictly under r*
            assert wf > 0 and Fraction(sum(w) - 1, wf) < rstar
        consider(w, sum(w), wf)
    seed_set = set(seeds)

    ts_num = tstar.numerator
    ts_den = tstar.denominator
    status = STATUS_COMPLETE
    limit = search_limit()
    level = 2
    while True:
        if limit is not None and level > limit:
            break
        if level > cap:
            status = STATUS_BOUND_EXCEEDED
            break
        improved = False
        for w in _compositions(level, n):
            if math.gcd(*w) != 1 or w in seed_set:
                continue
            nodes += 1
            wf = wf_of(w)
            # relaxation sandwich: wf <= |w|_1 * t*
            assert wf * ts_den <= level * ts_num
            if consider(w, level, wf):
                improved = True
        if improved:
            limit = search_limit()
        level += 1

    raw = Fraction(best_num, best_den)
    clamped = raw > 1
    value = Fraction(1) if clamped else raw
    final_witnesses = () if clamped else tuple(sorted(witnesses))
    bound = limit if status == STATUS_COMPLETE else cap
    assert bound is not None
    return ThresholdReport(
        value=value,
        clamped=clamped,
        witnesses=final_witnesses,
        relaxation=rstar,
        search_bound=bound,
        nodes=nodes,
        status=status,
    )


def lct_diagram(diagram: NewtonDiagram) -> Fraction:
    """Continuous relaxation of the threshold: min(1, 1/t*)."""
    _check_no_unit(diagram)
    sol = maximin_lp(diagram.generators, diagram.dimension)
    return min(Fraction(1), 1 / sol.value)


def ct_bruteforce(diagram: NewtonDiagram, cap: int) -> ThresholdReport:
    """Independent oracle: exhaust admissible vectors in the box [0, cap]^n.

    Reports the minimum over the box and every attaining vector; no
    completeness claim is made beyond the box, whose size is recorded in
    search_bound.
    """
    if cap < 2:
        raise ValueError(f"cap must be at least 2, got {cap}")
    _check_no_unit(diagram)
    gens = diagram.generators
    sol = maximin_lp(gens, diagram.dimension)

    nodes = 0
    best_num = 0
    best_den = 0
    witnesses: list[WeightVector] = []

    def record(w: WeightVector, num: int, wf: int) -> None:
        nonlocal best_num, best_den, witnesses
        if wf == 0:
            return
        if best_den == 0 or num * best_den < best_num * wf:
            best_num, best_den = num, wf
            witnesses = [w]
        elif num * best_den == best_num * wf:
            witnesses.append(w)

    gcd = math.gcd
    if diagram.dimension == 3:
        # hoist the (w1, w2) partial dot products out of the inner loop
        thirds = tuple(m[2] for m in gens)
        for w1 in range(cap + 1):
            for w2 in range(cap + 1):
                g12 = gcd(w1, w2)
                s12 = w1 + w2
                partial = tuple(m[0] * w1 + m[1] * w2 for m in gens)
                for w3 in range(cap + 1):
                    if s12 + w3 < 2 or gcd(g12, w3) != 1:
                        continue
                    nodes += 1
                    wf = min(p + t * w3 for p, t in zip(partial, thirds))
                    record((w1, w2, w3), s12 + w3 - 1, wf)
    else:
        for w in product(range(cap + 1), repeat=diagram.dimension):
            if sum(w) < 2 or gcd(*w) != 1:
                continue
            nodes += 1
            wf = min(sum(wi * mi for wi, mi in zip(w, m)) for m in gens)
            record(w, sum(w) - 1, wf)

    raw = Fraction(best_num, best_den)
    clamped = raw > 1
    return ThresholdReport(
        value=Fraction(1) if clamped else raw,
        clamped=clamped,
        witnesses=() if clamped else tuple(sorted(witnesses)),
        relaxation=1 / sol.value,
        search_bound=cap,
        nodes=nodes,
        status=STATUS_COMPLETE,
    )


def certify(diagram: NewtonDiagram, c: Fraction,
            max_bound: int | None = None) -> Certification:
    """Check that c is the diagram threshold in the excess sense.

    True iff no admissible vector in the search region has
    (|w|_1 - 1) - c * wf(w) < 0 and at least one attains equality; the
    lexicographically least equality witness is returned.
    """
    c = Fraction(c)
    if not 0 < c <= 1:
        raise ValueError(f"candidate threshold must lie in (0, 1], got {c}")
    report = ct_diagram(diagram, max_bound=max_bound)
    if report.status != STATUS_COMPLETE:
        raise SearchBoundExceededError(
            f"weight search exceeded bound {report.search_bound}; cannot certify"
        )
    ok = not report.clamped and report.value == c
    witness = report.witnesses[0] if ok else None
    return Certification(ok=ok, witness=witness, report=report)
