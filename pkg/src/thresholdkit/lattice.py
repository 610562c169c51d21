"""Exact-arithmetic primitives, polynomial-support parsing, and a rational
maximin linear-programming kernel.

Everything in this module is pure and exact: values are Python ints and
``fractions.Fraction``; no floats enter at any point.  The LP solver is a
dense two-phase simplex over Fractions using Bland's anti-cycling pivot rule
(entering variable: lowest index with positive reduced cost; leaving
variable: lowest basis index among minimal ratios), so it terminates on
every input and produces the same optimal vertex on every run and platform.
Problem sizes are tiny (dimension <= 8, at most a few hundred constraints),
so no effort is spent on sparsity or revised-simplex bookkeeping.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
ExponentVector = tuple[int, ...]
WeightVector = tuple[int, ...]

MAX_DIMENSION = 8
MIN_DIMENSION = 2

__all__ = [
    "Rational",
    "ExponentVector",
    "WeightVector",
    "MAX_DIMENSION",
    "ParseError",
    "DimensionMismatchError",
    "InadmissibleWeightError",
    "SupportSet",
    "MaximinSolution",
    "parse_polynomial",
    "support_to_text",
    "primitive",
    "is_admissible_weight",
    "check_admissible_weight",
    "maximin_lp",
    "lp_feasible",
    "fraction_to_json",
    "fraction_from_json",
]


class ParseError(ValueError):
    """Raised for malformed polynomial input; carries the 0-based position."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (position {position})"
        super().__init__(message)


class DimensionMismatchError(ValueError):
    """Raised when vector or constraint lengths disagree."""


class InadmissibleWeightError(ValueError):
    """Raised for weight vectors outside the admissible set.

    Admissible weight vectors are nonnegative primitive integer vectors
    other than the zero vector and the standard unit vectors.
    """


# ---------------------------------------------------------------------------
# fraction JSON helpers (shared wire format {"num": p, "den": q})
# ---------------------------------------------------------------------------

def fraction_to_json(q: Fraction | int) -> dict:
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def fraction_from_json(obj: dict) -> Fraction:
    return Fraction(obj["num"], obj["den"])


# ---------------------------------------------------------------------------
# exponent vectors and supports
# ---------------------------------------------------------------------------

def _check_dimension(n: int) -> None:
    if not isinstance(n, int) or not (MIN_DIMENSION <= n <= MAX_DIMENSION):
        raise DimensionMismatchError(
            f"dimension must be an integer in [{MIN_DIMENSION}, {MAX_DIMENSION}], got {n!r}"
        )


def _check_exponent_vector(m: Sequence[int], n: int) -> ExponentVector:
    t = tuple(m)
    if len(t) != n:
        raise DimensionMismatchError(f"exponent vector {t} has length {len(t)}, expected {n}")
    for x in t:
        if not isinstance(x, int) or x < 0:
            raise ValueError(f"exponent vector {t} has a non-integer or negative entry")
    return t


@dataclass(frozen=True)
class SupportSet:
    """The exponent vectors of the monomials of a polynomial, coefficients dropped."""

    dimension: int
    points: frozenset[ExponentVector]

    def __post_init__(self):
        _check_dimension(self.dimension)
        pts = frozenset(_check_exponent_vector(p, self.dimension) for p in self.points)
        if not pts:
            raise ValueError("support set must be nonempty")
        object.__setattr__(self, "points", pts)

    @property
    def sorted_points(self) -> tuple[ExponentVector, ...]:
        return tuple(sorted(self.points))


# ---------------------------------------------------------------------------
# primitive vectors
# ---------------------------------------------------------------------------

def primitive(v: Sequence[int]) -> WeightVector:
    """Divide a nonnegative integer vector by the gcd of its coordinates.

    Rejects the zero vector and positive multiples of standard unit vectors,
    which are excluded from every weight enumeration in this package.
    """
    t = tuple(v)
    for x in t:
        if not isinstance(x, int) or x < 0:
            raise InadmissibleWeightError(f"weight vector {t} has a non-integer or negative entry")
    g = math.gcd(*t) if t else 0
    if g == 0:
        raise InadmissibleWeightError("zero vector is not an admissible weight")
    reduced = tuple(x // g for x in t)
    if sum(reduced) == 1:
        axis = reduced.index(1)
        raise InadmissibleWeightError(
            f"{t} is a multiple of the unit vector e_{axis + 1}, which is excluded"
        )
    return reduced


def is_admissible_weight(w: Sequence[int], dimension: int | None = None) -> bool:
    t = tuple(w)
    if dimension is not None and len(t) != dimension:
        return False
    if any(not isinstance(x, int) or x < 0 for x in t):
        return False
    if math.gcd(*t) != 1:
        return False
    return sum(t) >= 2


def check_admissible_weight(w: Sequence[int], dimension: int | None = None) -> WeightVector:
    t = tuple(w)
    if dimension is not None and len(t) != dimension:
        raise DimensionMismatchError(f"weight vector {t} has length {len(t)}, expected {dimension}")
    for x in t:
        if not isinstance(x, int) or x < 0:
            raise InadmissibleWeightError(f"weight vector {t} has a non-integer or negative entry")
    g = math.gcd(*t)
    if g == 0:
        raise InadmissibleWeightError("zero vector is not an admissible weight")
    if g != 1:
        raise InadmissibleWeightError(f"weight vector {t} is not primitive (gcd {g})")
    if sum(t) == 1:
        raise InadmissibleWeightError(f"unit vector {t} is excluded")
    return t


# ---------------------------------------------------------------------------
# polynomial parsing
# ---------------------------------------------------------------------------

DEFAULT_NAMED_VARIABLES = ("x", "y", "z", "w")

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*^/]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_pos = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", bad_pos)
        if m.lastgroup is None:
            break
        tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    return tokens


class _Parser:
    """Recursive-descent parser for the polynomial grammar.

    polynomial := ['+'|'-'] term (('+'|'-') term)*
    term       := coefficient ['*' factor ('*' factor)*] | factor ('*' factor)*
    factor     := variable ['^' positive-integer]
    coefficient:= integer ['/' positive-integer]

    A bare coefficient is a constant term (exponent vector 0), so input like
    "1 + x" parses; downstream threshold code rejects it as a unit.
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.idx = 0

    def peek(self):
        return self.tokens[self.idx] if self.idx < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.idx += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)
        return self.take()

    def parse(self) -> list[tuple[Fraction, dict[str, int]]]:
        if not self.tokens:
            raise ParseError("empty polynomial", 0)
        terms = []
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
        terms.append(self.term())
        while self.idx < len(self.tokens):
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                terms.append(self.term())
            else:
                raise ParseError(f"expected '+' or '-', found {val!r}", pos)
        return terms

    def term(self) -> tuple[Fraction, dict[str, int]]:
        kind, val, pos = self.peek()
        coeff = Fraction(1)
        exponents: dict[str, int] = {}
        if kind == "num":
            coeff = self.coefficient()
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                self.factor(exponents)
            elif kind in ("name", "num"):
                raise ParseError("expected '*' between coefficient and factor", pos)
            else:
                return coeff, exponents  # bare constant term
        elif kind == "name":
            self.factor(exponents)
        else:
            raise ParseError(f"expected a term, found {val!r}" if val else "expected a term", pos)
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                self.factor(exponents)
            else:
                return coeff, exponents

    def coefficient(self) -> Fraction:
        kind, val, pos = self.take()
        num = int(val)
        kind, nval, npos = self.peek()
        if kind == "op" and nval == "/":
            self.take()
            dkind, dval, dpos = self.peek()
            if dkind != "num":
                raise ParseError("expected denominator after '/'", dpos)
            self.take()
            den = int(dval)
            if den == 0:
                raise ParseError("zero denominator in coefficient", dpos)
            return Fraction(num, den)
        return Fraction(num)

    def factor(self, exponents: dict[str, int]) -> None:
        kind, name, pos = self.peek()
        if kind != "name":
            raise ParseError(f"expected a variable, found {name!r}" if name else "expected a variable", pos)
        self.take()
        exp = 1
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            ekind, eval_, epos = self.peek()
            if ekind == "op" and eval_ == "-":
                raise ParseError("negative exponent", epos)
            if ekind != "num":
                raise ParseError("expected an integer exponent after '^'", epos)
            self.take()
            exp = int(eval_)
            if exp < 1:
                raise ParseError("exponent must be a positive integer", epos)
        exponents[name] = exponents.get(name, 0) + exp
        self._positions = getattr(self, "_positions", {})
        self._positions.setdefault(name, pos)


def _resolve_variables(names_in_order: list[tuple[str, int]],
                       variables: Sequence[str] | None) -> tuple[str, ...]:
    if variables is not None:
        vars_ = tuple(variables)
        if len(set(vars_)) != len(vars_):
            raise ValueError(f"duplicate variable names in {vars_}")
        _check_dimension(len(vars_))
        for name, pos in names_in_order:
            if name not in vars_:
                raise ParseError(f"unknown variable {name!r}", pos)
        return vars_

    used = [name for name, _ in names_in_order]
    if all(name in DEFAULT_NAMED_VARIABLES for name in used):
        n = 4 if "w" in used else 3
        return DEFAULT_NAMED_VARIABLES[:n]

    indexed = re.compile(r"^x([1-9])$")
    matches = {name: indexed.match(name) for name in used}
    if used and all(m is not None for m in matches.values()):
        top = max(int(m.group(1)) for m in matches.values() if m is not None)
        n = max(top, MIN_DIMENSION)
        if n > MAX_DIMENSION:
            raise DimensionMismatchError(f"variable x{top} exceeds the supported dimension {MAX_DIMENSION}")
        return tuple(f"x{i}" for i in range(1, n + 1))

    for name, pos in names_in_order:
        if name not in DEFAULT_NAMED_VARIABLES and indexed.match(name) is None:
            raise ParseError(f"unknown variable {name!r}", pos)
    # a mix of named (x,y,z,w) and indexed (x1..x9) styles
    raise ParseError("mixed named and indexed variables; declare the variable list explicitly")


def parse_polynomial(text: str, variables: Sequence[str] | None = None) -> SupportSet:
    """Parse polynomial text into the set of exponent vectors of its terms.

    Coefficients are parsed and then discarded (terms with coefficient 0 are
    dropped); thresholds depend only on the support.  With ``variables=None``
    the ambient variable list is inferred: plain names draw from (x, y, z, w)
    with dimension 3 unless ``w`` occurs, and indexed names x1..x9 declare
    dimension max(index, 2).
    """
    parser = _Parser(text)
    terms = parser.parse()
    positions = getattr(parser, "_positions", {})
    names_in_order = sorted(positions.items(), key=lambda kv: kv[1])
    vars_ = _resolve_variables(names_in_order, variables)
    index = {name: i for i, name in enumerate(vars_)}

    points = set()
    for coeff, exponents in terms:
        if coeff == 0:
            continue
        vec = [0] * len(vars_)
        for name, exp in exponents.items():
            vec[index[name]] = exp
        points.add(tuple(vec))
    if not points:
        raise ParseError("zero polynomial: no terms with nonzero coefficient")
    return SupportSet(dimension=len(vars_), points=frozenset(points))


def support_to_text(support: SupportSet, variables: Sequence[str] | None = None) -> str:
    """Render a support in the canonical form accepted back by parse_polynomial."""
    if variables is None:
        if support.dimension <= len(DEFAULT_NAMED_VARIABLES):
            variables = DEFAULT_NAMED_VARIABLES[: support.dimension]
        else:
            variables = tuple(f"x{i}" for i in range(1, support.dimension + 1))
    if len(variables) != support.dimension:
        raise DimensionMismatchError(
            f"{len(variables)} variable names for dimension {support.dimension}"
        )
    terms = []
    for point in support.sorted_points:
        factors = [
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(variables, point)
            if e > 0
        ]
        terms.append("*".join(factors) if factors else "1")
    return " + ".join(terms)


# ---------------------------------------------------------------------------
# exact simplex
# ---------------------------------------------------------------------------

class _Unbounded(Exception):
    pass


class _Infeasible(Exception):
    pass


def _pivot(rows: list[list[Fraction]], cost: list[Fraction], basis: list[int],
           r: int, c: int) -> None:
    piv = rows[r][c]
    rows[r] = [x / piv for x in rows[r]]
    prow = rows[r]
    for i, row in enumerate(rows):
        if i != r and row[c] != 0:
            f = row[c]
            rows[i] = [x - f * p for x, p in zip(row, prow)]
    if cost[c] != 0:
        f = cost[c]
        cost[:] = [x - f * p for x, p in zip(cost, prow)]
    basis[r] = c


def _bland_simplex(rows: list[list[Fraction]], cost: list[Fraction], basis: list[int]) -> None:
    """Maximize in place.  cost[j] are reduced costs, cost[-1] is -(objective)."""
    ncols = len(cost) - 1
    while True:
        enter = next((j for j in range(ncols) if cost[j] > 0), None)
        if enter is None:
            return
        leave = None
        best = None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                key = (row[-1] / a, basis[i])
                if best is None or key < best:
                    best = key
                    leave = i
        if leave is None:
            raise _Unbounded
        _pivot(rows, cost, basis, leave, enter)


def _solve_standard(A: list[list[Fraction]], b: list[Fraction],
                    c: list[Fraction]) -> tuple[list[Fraction], Fraction]:
    """Maximize c.x subject to A x = b, x >= 0.  Returns (x, objective)."""
    m = len(A)
    k = len(c)
    rows = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        rows.append(row + [rhs])

    # phase 1: artificial basis, maximize -(sum of artificials)
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        rows[i] = rows[i][:-1] + art + [rows[i][-1]]
    basis = [k + i for i in range(m)]
    cost = [Fraction(0)] * (k + m + 1)
    for j in range(k):
        cost[j] = sum(rows[i][j] for i in range(m))
    cost[-1] = sum(rows[i][-1] for i in range(m))
    _bland_simplex(rows, cost, basis)
    if cost[-1] != 0:
        raise _Infeasible

    # drive artificials out of the basis; drop rows that became redundant
    for i in range(m - 1, -1, -1):
        if basis[i] >= k:
            enter = next((j for j in range(k) if rows[i][j] != 0), None)
            if enter is None:
                del rows[i]
                del basis[i]
            else:
                _pivot(rows, cost, basis, i, enter)

    # phase 2 on structural columns only
    rows = [row[:k] + [row[-1]] for row in rows]
    cost = [Fraction(x) for x in c] + [Fraction(0)]
    for i, bi in enumerate(basis):
        if cost[bi] != 0:
            f = cost[bi]
            cost = [x - f * p for x, p in zip(cost, rows[i])]
    _bland_simplex(rows, cost, basis)

    x = [Fraction(0)] * k
    for i, bi in enumerate(basis):
        x[bi] = rows[i][-1]
    return x, -cost[-1]


@dataclass(frozen=True)
class MaximinSolution:
    """Optimum of: maximize t subject to sum(u) = 1, u >= 0, <u, m> >= t."""

    value: Fraction
    direction: tuple[Fraction, ...]


def maximin_lp(generators: Iterable[ExponentVector], n: int) -> MaximinSolution:
    """Exact maximin of <u, m> over the probability simplex of directions u.

    Deterministic: generators are sorted before the tableau is built and the
    simplex uses Bland's rule, so the reported vertex never varies.
    """
    gens = sorted(set(tuple(m) for m in generators))
    if not gens:
        raise ValueError("empty generator set")
    for m in gens:
        if len(m) != n:
            raise DimensionMismatchError(f"generator {m} has length {len(m)}, expected {n}")

    g = len(gens)
    # columns: u_1..u_n, t, s_1..s_g
    ncols = n + 1 + g
    A = []
    b = []
    A.append([Fraction(1)] * n + [Fraction(0)] * (1 + g))
    b.append(Fraction(1))
    for i, m in enumerate(gens):
        row = [Fraction(x) for x in m] + [Fraction(-1)] + [Fraction(0)] * g
        row[n + 1 + i] = Fraction(-1)
        A.append(row)
        b.append(Fraction(0))
    c = [Fraction(0)] * ncols
    c[n] = Fraction(1)

    x, value = _solve_standard(A, b, c)
    direction = tuple(x[:n])

    assert sum(direction) == 1 and all(u >= 0 for u in direction)
    weights = [sum(u * mi for u, mi in zip(direction, m)) for m in gens]
    assert all(wv >= value for wv in weights)
    assert any(wv == value for wv in weights)
    return MaximinSolution(value=value, direction=direction)


def lp_feasible(constraints: Iterable[tuple[Sequence[Fraction | int], str, Fraction | int]]) -> bool:
    """Exact feasibility of a linear system over nonnegative variables.

    Each constraint is (coefficients, relation, rhs) with relation one of
    '<=', '=', '>='.  True iff some rational x >= 0 satisfies all of them.
    """
    cons = [(list(map(Fraction, coeffs)), rel, Fraction(rhs)) for coeffs, rel, rhs in constraints]
    if not cons:
        return True
    nvars = len(cons[0][0])
    for coeffs, rel, _ in cons:
        if len(coeffs) != nvars:
            raise DimensionMismatchError("constraints have differing numbers of variables")
        if rel not in ("<=", "=", ">="):
            raise ValueError(f"unknown relation {rel!r}")

    nslack = sum(1 for _, rel, _ in cons if rel != "=")
    A = []
    b = []
    si = 0
    for coeffs, rel, rhs in cons:
        row = coeffs + [Fraction(0)] * nslack
        if rel != "=":
            row[nvars + si] = Fraction(1) if rel == "<=" else Fraction(-1)
            si += 1
        A.append(row)
        b.append(rhs)
    try:
        _solve_standard(A, b, [Fraction(0)] * (nvars + nslack))
    except _Infeasible:
        return False
    return True
