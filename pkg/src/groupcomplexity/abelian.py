"""Relation matrices, Smith normal form, and torsion-based bounds.

All integer arithmetic is exact (Python ints): entries can blow up during
elimination, and the torsion orders must come out exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .presentation import Presentation, length, t_cost

LOG2_3 = math.log2(3)


@dataclass(frozen=True)
class RelationMatrix:
    """Exponent-sum matrix of a presentation: entry (i, j) is the algebraic
    sum of the exponents of generator j in relator i."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors of the abelianization: d1 | d2 | ... | dk, the free
    rank, and the torsion order (the product of the dk)."""

    diagonal: tuple[int, ...]
    free_rank: int

    def __post_init__(self):
        for a, b in zip(self.diagonal, self.diagonal[1:]):
            if b % a != 0:
                raise ValueError(f"divisibility chain broken: {self.diagonal}")

    @property
    def torsion_order(self) -> int:
        t = 1
        for d in self.diagonal:
            t *= d
        return t


def relation_matrix(pres: Presentation) -> RelationMatrix:
    n = pres.num_generators
    entries = []
    for r in pres.relators:
        row = [0] * n
        for letter in r:
            row[abs(letter) - 1] += 1 if letter > 0 else -1
        entries.append(tuple(row))
    return RelationMatrix(len(pres.relators), n, tuple(entries))


def matrix_norm(matrix: RelationMatrix) -> int:
    """Sum of the absolute values of all entries (at most the presentation length)."""
    return sum(abs(x) for row in matrix.entries for x in row)


def smith_normal_form(matrix: RelationMatrix) -> AbelianInvariants:
    """Diagonalize an integer matrix by row/column operations.

    Pivots are chosen as the smallest nonzero absolute entry, which keeps
    entry growth down; the divisibility chain is enforced afterwards by
    gcd-combining adjacent diagonal pairs.
    """
    m, n = matrix.rows, matrix.cols
    a = [list(row) for row in matrix.entries]

    diag: list[int] = []
    top = 0
    while top < m and top < n:
        # pick the smallest nonzero entry in the remaining block as pivot
        best = None
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[top], a[i] = a[i], a[top]
        for row in a:
            row[top], row[j] = row[j], row[top]

        # clear the pivot row and column; restart if a smaller entry appears
        dirty = True
        while dirty:
            dirty = False
            p = a[top][top]
            for i in range(top + 1, m):
                q = a[i][top] // p
                if q:
                    for j in range(top, n):
                        a[i][j] -= q * a[top][j]
                if a[i][top] != 0:
                    # remainder is smaller than the pivot: swap it up
                    a[top], a[i] = a[i], a[top]
                    dirty = True
                    break
            if dirty:
                continue
            for j in range(top + 1, n):
                q = a[top][j] // p
                if q:
                    for i in range(top, m):
                        a[i][j] -= q * a[i][top]
                if a[top][j] != 0:
                    for i in range(top, m):
                        a[i][top], a[i][j] = a[i][j], a[i][top]
                    dirty = True
                    break
        diag.append(abs(a[top][top]))
        top += 1

    # enforce d_i | d_{i+1}
    done = False
    while not done:
        done = True
        for i in range(len(diag) - 1):
            if diag[i + 1] % diag[i] != 0:
                g = math.gcd(diag[i], diag[i + 1])
                diag[i], diag[i + 1] = g, diag[i] * diag[i + 1] // g
                done = False

    return AbelianInvariants(tuple(diag), n - len(diag))


def abelian_invariants(pres: Presentation) -> AbelianInvariants:
    return smith_normal_form(relation_matrix(pres))


# ---------------------------------------------------------------------------
# bounds


@dataclass(frozen=True)
class BoundEntry:
    kind: str  # "lower-c" | "upper-c" | "lower-T" | "upper-T"
    value: float
    rule: str
    strict: bool = False


@dataclass(frozen=True)
class BoundsReport:
    """Named bound entries plus the input quantities they were computed from.

    Every lower-c entry must not exceed any upper-c entry, and likewise
    for T; a violation means an internal bug, so it raises.
    """

    entries: tuple[BoundEntry, ...]
    inputs: tuple[tuple[str, object], ...] = field(default=())

    def __post_init__(self):
        for target in ("c", "T"):
            lows = [e.value for e in self.entries if e.kind == f"lower-{target}"]
            highs = [e.value for e in self.entries if e.kind == f"upper-{target}"]
            if lows and highs and max(lows) > min(highs) + 1e-9:
                raise ValueError(f"inconsistent {target} bounds: {self.entries}")

    def value(self, kind: str) -> float:
        hits = [e.value for e in self.entries if e.kind == kind]
        if not hits:
            raise KeyError(kind)
        return max(hits) if kind.startswith("lower") else min(hits)

    def as_dict(self) -> dict:
        return {
            "inputs": dict(self.inputs),
            "entries": [
                {"kind": e.kind, "value": e.value, "rule": e.rule, "strict": e.strict}
                for e in self.entries
            ],
        }


def complexity_lower_bound(torsion: int) -> tuple[float, float]:
    """Lower bounds on group complexity from the torsion order t.

    Returns (log2 t, 3*log3 t); the second uses the optimal logarithm base
    3^(1/3).  Both are strict for t >= 2 and equal to 0 (non-strict) at t=1.
    """
    if torsion < 1:
        raise ValueError(f"torsion order must be >= 1, got {torsion}")
    return math.log2(torsion), 3 * math.log(torsion, 3)


def t_lower_bound(torsion: int) -> float:
    """log3 of the odd part of the torsion order: lower bound on the
    triangular invariant."""
    if torsion < 1:
        raise ValueError(f"torsion order must be >= 1, got {torsion}")
    odd = torsion
    while odd % 2 == 0:
        odd //= 2
    return math.log(odd, 3)


def per_relator_bound_check(pres: Presentation) -> tuple[float, float, bool]:
    """Check log2(torsion) <= sum of log2 of relator lengths.

    Holds for every legal presentation; a False result signals a bug.
    """
    for r in pres.relators:
        if len(r) == 0:
            raise ValueError("relators of length 0 not allowed here; simplify first")
    torsion = abelian_invariants(pres).torsion_order
    lhs = math.log2(torsion)
    rhs = sum(math.log2(len(r)) for r in pres.relators)
    return lhs, rhs, lhs <= rhs + 1e-12


class NoRootError(ValueError):
    """x = a*log2(x) + c has no solution with x > 1."""


def largest_root(a: float, c: float, tol: float = 1e-9) -> float:
    """Largest root of x = a*log2(x) + c, by bisection.

    f(x) = a*log2(x) + c - x is maximal at x* = a/ln 2; if f(x*) < 0 there is
    no root beyond 1 and NoRootError is raised.  The upper bracket is grown
    by doubling from x*.
    """
    if a <= 0:
        raise ValueError("a must be positive")

    def f(x: float) -> float:
        return a * math.log2(x) + c - x

    peak = max(a / math.log(2), 1.0 + 1e-12)
    if f(peak) < 0:
        raise NoRootError(f"no root of x = {a}*log2(x) + {c} beyond x=1")
    hi = peak * 2
    while f(hi) > 0:
        hi *= 2
    lo = peak
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def bounds_report(pres: Presentation) -> BoundsReport:
    """Two-sided bounds on complexity and triangular invariant of the
    presented group, from this one presentation."""
    inv = abelian_invariants(pres)
    t = inv.torsion_order
    low2, low3 = complexity_lower_bound(t)
    strict = t >= 2
    entries = (
        BoundEntry("lower-c", low2, "log2-of-torsion", strict),
        BoundEntry("lower-c", low3, "log-cbrt3-of-torsion", strict),
        BoundEntry("lower-T", t_lower_bound(t), "log3-of-odd-torsion"),
        BoundEntry("upper-c", float(length(pres)), "presentation-length"),
        BoundEntry("upper-T", float(t_cost(pres)), "triangular-excess"),
    )
    inputs = (
        ("length", length(pres)),
        ("t_cost", t_cost(pres)),
        ("torsion", t),
        ("free_rank", inv.free_rank),
        ("invariant_factors", list(inv.diagonal)),
    )
    return BoundsReport(entries, inputs)


def manifold_group_bounds(n_vertices: int | None = None,
                          c_manifold: int | None = None) -> BoundsReport:
    """Upper bounds on the fundamental group invariants of a closed
    3-manifold.

    A special spine with n vertices gives a presentation of length 3n+3; a
    (singular) triangulation with c tetrahedra gives a triangular
    presentation with at most 2c length-3 relations.  The 2c bound is only
    valid for irreducible M with positive complexity; the caller asserts
    that hypothesis.
    """
    entries = []
    inputs = []
    if n_vertices is not None:
        if n_vertices < 0:
            raise ValueError("vertex count must be >= 0")
        entries.append(BoundEntry("upper-c", float(3 * n_vertices + 3), "spine-vertex-count"))
        inputs.append(("n_vertices", n_vertices))
    if c_manifold is not None:
        if c_manifold < 0:
            raise ValueError("manifold complexity must be >= 0")
        entries.append(BoundEntry("upper-T", float(2 * c_manifold), "twice-manifold-complexity"))
        inputs.append(("c_manifold", c_manifold))
    return BoundsReport(tuple(entries), tuple(inputs))
