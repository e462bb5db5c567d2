"""Exact-rational geometry of the Sobolev admissibility region.

For a smoothness vector s in dimension n, the region is the set of reciprocal
exponent vectors r = (1/p_1, ..., 1/p_m) with r_i >= 0 and

    sum_{k in J} (s_k/n - r_k) >= -1/2      for every nonempty J,

a polytope with m * 2^(m-1) + 1 vertices. Everything here is computed with
`fractions.Fraction`; floats are rejected at the boundary so that points lying
exactly on a facet are classified exactly.

Index sets J are 0-based tuples throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Sequence

from .errors import ConfigError, DimensionMismatch, GuardError

HALF = Fraction(1, 2)


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions and "num/den" strings to a Fraction.

    Floats are refused: a float like 0.1 silently becomes 3602879701896397/2^55,
    which defeats the point of exact boundary decisions.
    """
    if isinstance(value, bool):
        raise ConfigError(f"not a rational number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"cannot parse {value!r} as an exact fraction") from exc
    raise ConfigError(f"expected an exact rational, got {type(value).__name__} {value!r}")


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def nonempty_subsets(m: int) -> Iterator[tuple[int, ...]]:
    for size in range(1, m + 1):
        yield from itertools.combinations(range(m), size)


@dataclass(frozen=True)
class ReciprocalExponents:
    """The point (1/p_1, ..., 1/p_m); r_i = 0 encodes p_i = infinity."""

    r: tuple[Fraction, ...]

    def __init__(self, r: Iterable):
        values = tuple(as_fraction(v) for v in r)
        if not values:
            raise ConfigError("at least one exponent is required")
        for i, v in enumerate(values):
            if v < 0:
                raise ConfigError(f"reciprocal exponent r[{i}] = {v} is negative")
        object.__setattr__(self, "r", values)

    @classmethod
    def from_p(cls, p: Iterable) -> "ReciprocalExponents":
        out = []
        for v in p:
            if v == float("inf") or (isinstance(v, str) and v.strip().lower() in ("inf", "infinity")):
                out.append(Fraction(0))
            else:
                q = as_fraction(v)
                if q <= 0:
                    raise ConfigError(f"exponent p = {q} must be positive")
                out.append(1 / q)
        return cls(out)

    @property
    def m(self) -> int:
        return len(self.r)

    def __len__(self) -> int:
        return len(self.r)

    def __iter__(self):
        return iter(self.r)

    def __getitem__(self, i):
        return self.r[i]

    def replace(self, i: int, value) -> "ReciprocalExponents":
        values = list(self.r)
        values[i] = as_fraction(value)
        return ReciprocalExponents(values)

    def __str__(self) -> str:
        return "(" + ", ".join(format_fraction(v) for v in self.r) + ")"


@dataclass(frozen=True)
class SmoothnessProfile:
    """Ambient dimension n and smoothness orders s_1..s_m, each s_i >= n/2."""

    n: int
    s: tuple[Fraction, ...]
    strict: bool = False

    def __init__(self, n: int, s: Iterable, strict: bool = False):
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ConfigError(f"dimension n must be a positive integer, got {n!r}")
        values = tuple(as_fraction(v) for v in s)
        if not values:
            raise ConfigError("at least one smoothness order is required")
        half_n = Fraction(n, 2)
        for i, v in enumerate(values):
            if v < half_n or (strict and v == half_n):
                rel = ">" if strict else ">="
                raise ConfigError(f"s[{i}] = {v} violates s_i {rel} n/2 = {half_n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "s", values)
        object.__setattr__(self, "strict", strict)

    @classmethod
    def open(cls, n: int, s: Iterable) -> "SmoothnessProfile":
        """Profile for the strict theorem hypothesis s_i > n/2."""
        return cls(n, s, strict=True)

    @property
    def m(self) -> int:
        return len(self.s)

    @property
    def ratios(self) -> tuple[Fraction, ...]:
        """s_i / n."""
        return tuple(v / self.n for v in self.s)

    def replace(self, i: int, value) -> "SmoothnessProfile":
        values = list(self.s)
        values[i] = as_fraction(value)
        return SmoothnessProfile(self.n, values, self.strict)


def _check_lengths(profile: SmoothnessProfile, r: ReciprocalExponents) -> None:
    if profile.m != r.m:
        raise DimensionMismatch("reciprocal exponents vs smoothness profile", profile.m, r.m)


def reciprocal_sum(r: ReciprocalExponents) -> Fraction:
    """1/p = 1/p_1 + ... + 1/p_m."""
    return sum(r.r, Fraction(0))


def subset_slack(profile: SmoothnessProfile, r: ReciprocalExponents, J: Sequence[int]) -> Fraction:
    """sum_{k in J} (s_k/n - r_k) + 1/2; nonnegative iff the J-inequality holds."""
    ratios = profile.ratios
    return sum((ratios[k] - r[k] for k in J), Fraction(0)) + HALF


def check_admissible(profile: SmoothnessProfile, r: ReciprocalExponents, strict: bool = False) -> bool:
    """Exact test of the subset inequalities.

    With ``strict=True`` every inequality must hold strictly and the profile
    must also satisfy s_i > n/2.
    """
    _check_lengths(profile, r)
    if any(v < 0 for v in r):
        return False
    if strict and any(v * 2 <= profile.n for v in profile.s):
        return False
    for J in nonempty_subsets(profile.m):
        slack = subset_slack(profile, r, J)
        if slack < 0 or (strict and slack == 0):
            return False
    return True


@dataclass(frozen=True)
class Halfspace:
    """sum_{k in J} r_k <= bound."""

    J: tuple[int, ...]
    bound: Fraction

    def excess(self, r: ReciprocalExponents) -> Fraction:
        return sum((r[k] for k in self.J), Fraction(0)) - self.bound


@dataclass(frozen=True)
class AdmissibleRegion:
    profile: SmoothnessProfile
    halfspaces: tuple[Halfspace, ...]

    @property
    def n_constraints(self) -> int:
        """Subset halfspaces plus the m nonnegativity constraints."""
        return len(self.halfspaces) + self.profile.m

    def contains(self, r: ReciprocalExponents) -> bool:
        _check_lengths(self.profile, r)
        return all(v >= 0 for v in r) and all(h.excess(r) <= 0 for h in self.halfspaces)

    def most_violated(self, r: ReciprocalExponents) -> Halfspace | None:
        """The subset halfspace with the largest positive excess (ties: first in order)."""
        worst = None
        for h in self.halfspaces:
            e = h.excess(r)
            if e > 0 and (worst is None or e > worst.excess(r)):
                worst = h
        return worst


def admissible_region(profile: SmoothnessProfile) -> AdmissibleRegion:
    ratios = profile.ratios
    hs = tuple(
        Halfspace(J, sum((ratios[k] for k in J), Fraction(0)) + HALF)
        for J in nonempty_subsets(profile.m)
    )
    return AdmissibleRegion(profile, hs)


@dataclass(frozen=True)
class VertexSet:
    profile: SmoothnessProfile
    vertices: tuple[ReciprocalExponents, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def index(self, r: ReciprocalExponents) -> int:
        return self.vertices.index(r)


def expected_vertex_count(m: int) -> int:
    return m * 2 ** (m - 1) + 1


def enumerate_vertices(profile: SmoothnessProfile) -> VertexSet:
    """Origin plus every point whose coordinates lie in {0, s_i/n, s_i/n + 1/2}
    with exactly one coordinate at the top value; sorted lexicographically."""
    ratios = profile.ratios
    m = profile.m
    points = {tuple(Fraction(0) for _ in range(m))}
    for top in range(m):
        others = [i for i in range(m) if i != top]
        for choice in itertools.product((False, True), repeat=m - 1):
            coords = [Fraction(0)] * m
            coords[top] = ratios[top] + HALF
            for i, use in zip(others, choice):
                if use:
                    coords[i] = ratios[i]
            points.add(tuple(coords))
    ordered = sorted(points)
    return VertexSet(profile, tuple(ReciprocalExponents(p) for p in ordered))


# --- exact linear feasibility -------------------------------------------------


def _phase_one(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Find x >= 0 with A x = b, or None if infeasible.

    Tableau simplex on the artificial-variable problem with Bland's rule, so it
    terminates on degenerate inputs. All arithmetic is exact.
    """
    rows, cols = len(A), len(A[0])
    zero = Fraction(0)
    T, rhs = [], []
    for i in range(rows):
        sign = -1 if b[i] < 0 else 1
        T.append([sign * a for a in A[i]] + [Fraction(int(k == i)) for k in range(rows)])
        rhs.append(sign * b[i])
    width = cols + rows
    basis = list(range(cols, width))
    # reduced costs of the phase-one objective (sum of artificials)
    d = [-sum((T[i][j] for i in range(rows)), zero) for j in range(cols)] + [zero] * rows

    while True:
        entering = next((j for j in range(width) if d[j] < 0), None)
        if entering is None:
            break
        leave, best = None, None
        for i in range(rows):
            a = T[i][entering]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:  # unbounded ray; impossible when minimizing a sum of nonnegatives
            break
        pivot = T[leave][entering]
        row = [a / pivot for a in T[leave]]
        T[leave] = row
        rhs[leave] /= pivot
        nz = [j for j in range(width) if row[j] != 0]
        for i in range(rows):
            f = T[i][entering]
            if i != leave and f != 0:
                Ti = T[i]
                for j in nz:
                    Ti[j] -= f * row[j]
                rhs[i] -= f * rhs[leave]
        f = d[entering]
        for j in nz:
            d[j] -= f * row[j]
        basis[leave] = entering

    x = [zero] * width
    for i, j in enumerate(basis):
        x[j] = rhs[i]
    if any(x[j] != 0 for j in range(cols, width)):
        return None
    return x[:cols]


def convex_weights(points: Sequence[Sequence[Fraction]], query: Sequence[Fraction]) -> list[Fraction] | None:
    """Exact convex weights expressing ``query`` over ``points``, or None."""
    if not points:
        raise ConfigError("empty point set")
    dim = len(query)
    for p in points:
        if len(p) != dim:
            raise DimensionMismatch("hull point vs query", dim, len(p))
    A = [[Fraction(p[d]) for p in points] for d in range(dim)]
    A.append([Fraction(1)] * len(points))
    b = [Fraction(q) for q in query] + [Fraction(1)]
    return _phase_one(A, b)


@dataclass(frozen=True)
class MembershipCertificate:
    inside: bool
    weights: tuple[Fraction, ...] | None = None
    violated: tuple[int, ...] | None = None
    margin: Fraction | None = None
    vertices: tuple[ReciprocalExponents, ...] = field(default=(), repr=False)

    @property
    def verdict(self) -> str:
        return "inside" if self.inside else "outside"

    def reconstruct(self) -> tuple[Fraction, ...]:
        if self.weights is None:
            raise ConfigError("only inside certificates carry weights")
        m = self.vertices[0].m
        return tuple(
            sum((w * v[i] for w, v in zip(self.weights, self.vertices)), Fraction(0)) for i in range(m)
        )


def hull_membership(vertices: VertexSet, r: ReciprocalExponents) -> MembershipCertificate:
    """Decide whether r lies in the convex hull of ``vertices`` by exact LP.

    Inside results carry convex weights; outside results name the most violated
    subset halfspace of the profile's region.
    """
    _check_lengths(vertices.profile, r)
    pts = [v.r for v in vertices]
    if len(set(pts)) <= 1:
        raise GuardError("degenerate vertex set: all vertices coincide")
    weights = convex_weights(pts, r.r)
    if weights is not None:
        return MembershipCertificate(True, weights=tuple(weights), vertices=vertices.vertices)
    worst = admissible_region(vertices.profile).most_violated(r)
    if worst is None:
        raise GuardError(f"point {r} is outside the vertex hull but satisfies every halfspace")
    return MembershipCertificate(False, violated=worst.J, margin=worst.excess(r), vertices=vertices.vertices)


# --- interpolation paths ----------------------------------------------------


def ell_count(r: ReciprocalExponents) -> int:
    """Number of coordinates with 1 < p_i < 2, i.e. 1/2 < r_i < 1."""
    return sum(1 for v in r if HALF < v < 1)


def check_extreme(r: ReciprocalExponents, profile: SmoothnessProfile) -> None:
    """Raise unless every r_i is in {0, s_i/n, s_i/n + 1/2} with exactly one top value."""
    _check_lengths(profile, r)
    ratios = profile.ratios
    tops = []
    for i, (v, q) in enumerate(zip(r, ratios)):
        if v == q + HALF:
            tops.append(i)
        elif v not in (0, q):
            raise ConfigError(
                f"coordinate {i}: r = {format_fraction(v)} is not one of 0, s/n = "
                f"{format_fraction(q)}, s/n + 1/2 = {format_fraction(q + HALF)}"
            )
    if len(tops) != 1:
        raise ConfigError(f"exactly one coordinate must equal s_i/n + 1/2; found {tops or 'none'}")


@dataclass(frozen=True)
class InterpolationNode:
    r: ReciprocalExponents
    profile: SmoothnessProfile
    index: int | None = None
    theta: Fraction | None = None
    children: tuple["InterpolationNode", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def depth(self) -> int:
        return 0 if self.is_leaf else 1 + max(c.depth() for c in self.children)

    def nodes(self) -> Iterator["InterpolationNode"]:
        yield self
        for c in self.children:
            yield from c.nodes()

    def leaves(self) -> list["InterpolationNode"]:
        return [node for node in self.nodes() if node.is_leaf]

    def reconstructs(self) -> bool:
        """Whether (1-theta)*first + theta*second gives this node, here and below."""
        if self.is_leaf:
            return True
        a, b = self.children
        t = self.theta
        ok_r = all((1 - t) * x + t * y == z for x, y, z in zip(a.r, b.r, self.r))
        ok_s = all((1 - t) * x + t * y == z for x, y, z in zip(a.profile.s, b.profile.s, self.profile.s))
        return ok_r and ok_s and all(c.reconstructs() for c in self.children)


InterpolationPath = InterpolationNode


def split_coordinate(r: ReciprocalExponents, profile: SmoothnessProfile, i: int):
    """Split coordinate i (with 1/2 < r_i = s_i/n < 1) between p = 1 and p = 2.

    Returns ``(theta, (r1, s1), (r2, s2))`` where coordinate i becomes
    (1, n) in the first child and (1/2, n/2) in the second, and
    r_i = (1 - theta) * 1 + theta * 1/2.
    """
    _check_lengths(profile, r)
    v = r[i]
    if not HALF < v < 1:
        raise ConfigError(f"coordinate {i}: r = {format_fraction(v)} is not in (1/2, 1)")
    if v != profile.ratios[i]:
        raise ConfigError(f"coordinate {i}: r = {format_fraction(v)} differs from s/n = {format_fraction(profile.ratios[i])}")
    theta = 2 * (1 - v)
    n = profile.n
    first = (r.replace(i, 1), profile.replace(i, n))
    second = (r.replace(i, HALF), profile.replace(i, Fraction(n, 2)))
    return theta, first, second


def _build(r: ReciprocalExponents, profile: SmoothnessProfile) -> InterpolationNode:
    eligible = [i for i, v in enumerate(r) if HALF < v < 1]
    if not eligible:
        return InterpolationNode(r, profile)
    i = eligible[0]
    theta, (r1, s1), (r2, s2) = split_coordinate(r, profile, i)
    return InterpolationNode(r, profile, i, theta, (_build(r1, s1), _build(r2, s2)))


def interpolation_split(r: ReciprocalExponents, profile: SmoothnessProfile) -> InterpolationNode:
    """Binary tree reducing ell(r) to zero, always splitting the lowest eligible index."""
    check_extreme(r, profile)
    return _build(r, profile)
