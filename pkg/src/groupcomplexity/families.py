"""Constructive upper bounds: division chains and group family builders.

The central move replaces a power block a^p inside a relator by b^s a^r
(p = s*q + r) at the cost of one new generator b and one new relator b^-1 a^q.
Iterating it turns <a | a^p> into a short "chain" presentation of Z/p; the
same trick shortens the power relators of Abelian and Milnor group
presentations.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Literal

import numpy as np

from .abelian import LOG2_3, BoundEntry, BoundsReport
from .presentation import Presentation, Word, length
from . import contfrac

ChainStrategy = Literal["base2", "base3", "dp"]

STRATEGIES = ("base2", "base3", "dp")


def _check_strategy(strategy: str) -> None:
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")


# ---------------------------------------------------------------------------
# chain lengths


@lru_cache(maxsize=None)
def _ell_dp(p: int) -> int:
    best = p
    for q in range(2, int(4 * math.log2(p)) + 1):
        s, r = divmod(p, q)
        if s < 2:
            break
        cand = q + 1 + r + _ell_dp(s)
        if cand < best:
            best = cand
    return best


def ell(p: int, strategy: ChainStrategy = "base2") -> int:
    """Length of the chain presentation of Z/p under the given strategy.

    base2 halves at every step, base3 divides by three and stops at p <= 5,
    dp minimizes over all divisors (and over stopping early).
    """
    _check_strategy(strategy)
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    if strategy == "base2":
        total = 0
        while p > 3:
            s, r = divmod(p, 2)
            total += 3 + r
            p = s
        return total + p
    if strategy == "base3":
        total = 0
        while p > 5:
            s, r = divmod(p, 3)
            total += 4 + r
            p = s
        return total + p
    return _ell_dp(p)


def ell_table(max_p: int, strategy: ChainStrategy = "base2") -> np.ndarray:
    """Vectorized ell values for all 2 <= p <= max_p (index = p)."""
    _check_strategy(strategy)
    if max_p < 2:
        raise ValueError("max_p must be >= 2")
    n = max_p + 1
    if strategy == "base2":
        arr = np.zeros(n, dtype=np.int64)
        arr[2] = 2
        if max_p >= 3:
            arr[3] = 3
        lo = 4
        while lo < n:
            hi = min(n, 2 * lo)
            p = np.arange(lo, hi)
            arr[lo:hi] = np.where(p & 1, 4, 3) + arr[p >> 1]
            lo = hi
        return arr
    if strategy == "base3":
        arr = np.zeros(n, dtype=np.int64)
        for p in range(2, min(5, max_p) + 1):
            arr[p] = p
        lo = 6
        while lo < n:
            hi = min(n, 3 * lo)
            p = np.arange(lo, hi)
            s = p // 3
            arr[lo:hi] = 4 + (p - 3 * s) + arr[s]
            lo = hi
        return arr
    arr = np.arange(n, dtype=np.int64)
    arr[:2] = 0
    lo = 4
    big = np.int64(1) << 40
    while lo < n:
        hi = min(n, 2 * lo)
        p = np.arange(lo, hi)
        best = p.copy()
        for q in range(2, int(4 * math.log2(hi - 1)) + 1):
            s = p // q
            cand = np.where(s >= 2, (q + 1) + (p - s * q) + arr[s], big)
            np.minimum(best, cand, out=best)
        arr[lo:hi] = best
        lo = hi
    return arr


def _chain_plan(p: int, strategy: ChainStrategy) -> list[tuple[int, int]]:
    """Divisors and remainders of the successive division steps for p.

    Returns [(q1, r1), (q2, r2), ...]; the terminal quotient is p after
    applying all steps.  An empty plan means the bare relator is kept.
    """
    _check_strategy(strategy)
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    steps = []
    if strategy == "base2":
        while p > 3:
            s, r = divmod(p, 2)
            steps.append((2, r))
            p = s
    elif strategy == "base3":
        while p > 5:
            s, r = divmod(p, 3)
            steps.append((3, r))
            p = s
    else:
        while True:
            best_q = None
            best = p
            for q in range(2, int(4 * math.log2(p)) + 1):
                s, r = divmod(p, q)
                if s < 2:
                    break
                cand = q + 1 + r + _ell_dp(s)
                if cand < best:
                    best, best_q = cand, q
            if best_q is None:
                break
            s, r = divmod(p, best_q)
            steps.append((best_q, r))
            p = s
    return steps


# ---------------------------------------------------------------------------
# presentation transformations


def divide_relator(pres: Presentation, index: int, start: int, count: int,
                   q: int, name: str | None = None) -> Presentation:
    """One division step on the block at relator[index][start:start+count].

    The block must be a positive power g^count of a single generator.  With
    count = s*q + r, the output adds generator b with relator b^-1 g^q
    (inserted just before the rewritten relator) and rewrites the block to
    b^s g^r.  The new length is 1 + length + q + r + s - count.
    """
    if q < 2:
        raise ValueError(f"divisor q must be >= 2, got {q}")
    rel = pres.relators[index]
    block = rel[start:start + count]
    if count < 1 or len(block) != count or any(x != block[0] for x in block) or block[0] < 0:
        raise ValueError("designated block is not a positive power of a single generator")
    g = block[0]
    s, r = divmod(count, q)
    if name is None:
        k = 1
        while f"_d{k}" in pres.names:
            k += 1
        name = f"_d{k}"
    if name in pres.names:
        raise ValueError(f"generator name {name!r} already in use")
    b = pres.num_generators + 1
    chain_rel: Word = (-b,) + (g,) * q
    rewritten: Word = rel[:start] + (b,) * s + (g,) * r + rel[start + count:]
    relators = pres.relators[:index] + (chain_rel, rewritten) + pres.relators[index + 1:]
    return Presentation(pres.names + (name,), relators)


def chain_block(pres: Presentation, index: int, start: int, count: int,
                strategy: ChainStrategy, names: Iterator[str]) -> Presentation:
    """Apply the full division chain to one power block.

    The chain relators land just before the rewritten relator, in creation
    order; the remainder letters pile up after the shrinking block, newest
    first.
    """
    for q, _ in _chain_plan(count, strategy):
        pres = divide_relator(pres, index, start, count, q, next(names))
        index += 1
        count //= q
    return pres


def _letter_names() -> Iterator[str]:
    yield from string.ascii_lowercase
    k = 27
    while True:
        yield f"g{k}"
        k += 1


def cyclic_presentation(p: int, strategy: ChainStrategy = "base2") -> Presentation:
    """Chain presentation of Z/p of length ell(p, strategy).

    The first generator generates the whole group; every later one is a
    power of its predecessor.
    """
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    names = _letter_names()
    pres = Presentation((next(names),), ((1,) * p,))
    return chain_block(pres, 0, 0, p, strategy, names)


def abelian_presentation(orders: list[int], strategy: ChainStrategy = "base2") -> Presentation:
    """Presentation of the direct sum of Z/p_i.

    Disjoint union of the cyclic chain presentations plus one length-4
    commutator for each pair of root generators; the total length is
    sum(ell(p_i)) + 2k(k-1).
    """
    if not orders:
        raise ValueError("at least one cyclic order required")
    k = len(orders)
    names: list[str] = []
    relators: list[Word] = []
    roots: list[int] = []
    for j, p in enumerate(orders):
        block = cyclic_presentation(p, strategy)
        shift = len(names)
        roots.append(shift + 1)
        suffix = "" if k == 1 else f"_{j + 1}"
        names.extend(name + suffix for name in block.names)
        for r in block.relators:
            relators.append(tuple(x + shift if x > 0 else x - shift for x in r))
    for i in range(k):
        for j in range(i + 1, k):
            x, y = roots[i], roots[j]
            relators.append((x, y, -x, -y))
    return Presentation(tuple(names), tuple(relators))


# ---------------------------------------------------------------------------
# Milnor groups


@dataclass(frozen=True)
class MilnorSpec:
    """A group from the list of finite groups acting freely and linearly on
    the 3-sphere, times a cyclic group of coprime order q (q = 1 allowed)."""

    family: Literal["Q", "D", "P24", "P48", "P120", "Pprime"]
    n: int = 0
    k: int = 0
    q: int = 1

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("cyclic cofactor order q must be >= 1")
        f = self.family
        if f == "Q":
            if self.n < 2:
                raise ValueError("family Q requires n >= 2")
            if self.q % 2 == 0 or math.gcd(4 * self.n, self.q) != 1:
                raise ValueError("family Q requires odd q coprime with 4n")
        elif f == "D":
            if self.k < 3:
                raise ValueError("family D requires k >= 3")
            if self.n < 3 or self.n % 2 == 0:
                raise ValueError("family D requires odd n >= 3")
            if math.gcd((1 << self.k) * self.n, self.q) != 1:
                raise ValueError("family D requires q coprime with 2^k * n")
        elif f in ("P24", "P48"):
            if math.gcd(6, self.q) != 1:
                raise ValueError(f"family {f} requires q coprime with 2 and 3")
        elif f == "P120":
            if math.gcd(30, self.q) != 1:
                raise ValueError("family P120 requires q coprime with 2, 3 and 5")
        elif f == "Pprime":
            if self.k < 2:
                raise ValueError("family Pprime requires k >= 2")
            if math.gcd(6, self.q) != 1:
                raise ValueError("family Pprime requires q coprime with 2 and 3")
        else:
            raise ValueError(f"unknown family {f!r}")

    @property
    def group_order(self) -> int:
        base = {"Q": lambda: 4 * self.n,
                "D": lambda: (1 << self.k) * self.n,
                "P24": lambda: 24,
                "P48": lambda: 48,
                "P120": lambda: 120,
                "Pprime": lambda: 8 * 3 ** self.k}[self.family]()
        return base * self.q


def _suffix_names(base: str) -> Iterator[str]:
    k = 1
    while True:
        yield f"{base}{k}"
        k += 1


def milnor_presentation(spec: MilnorSpec, strategy: ChainStrategy = "base2") -> Presentation:
    """Short presentation of the group, with all power relators chained.

    For q > 1 the lengths are ell(n)+ell(q)+14 (Q), ell(2^k)+ell(n)+ell(q)+12
    (D), ell(q)+23/24/25 (P24/P48/P120), and ell(3^k)+ell(q)+29 (Pprime);
    for q = 1 the cofactor generator and its relators are simply omitted.
    """
    f, n, k, q = spec.family, spec.n, spec.k, spec.q
    X, Y, Z = 1, 2, 3

    if f == "Q":
        names = ["x", "y"]
        relators: list[Word] = [(-X, Y, X, Y), (-X, -X) + (Y,) * n]
        chains = [(1, 2, n, "y")]  # (relator index, block start, count, name base)
        comm_gens = [X, Y]
    elif f == "D":
        names = ["x", "y"]
        relators = [(X,) * (1 << k), (Y,) * n, (X, Y, -X, Y)]
        chains = [(0, 0, 1 << k, "x"), (1, 0, n, "y")]
        comm_gens = [X, Y]
    elif f in ("P24", "P48", "P120"):
        j = {"P24": 3, "P48": 4, "P120": 5}[f]
        names = ["x", "y"]
        relators = [(-X, Y, X, Y, X, Y), (-X, -X) + (Y,) * j, (X,) * 4]
        chains = []
        comm_gens = [X, Y]
    else:  # Pprime
        names = ["x", "y", "z"]
        relators = [(-X, Y, X, Y), (-X, -X, Y, Y), (Z, X, -Z, -Y), (Z, Y, -Z, -Y, -X),
                    (Z,) * (3 ** k)]
        chains = [(4, 0, 3 ** k, "z")]
        comm_gens = [X, Y, Z]

    if q > 1:
        a = len(names) + 1
        names.append("a")
        chains.append((len(relators), 0, q, "a"))
        relators.append((a,) * q)
        for g in comm_gens:
            relators.append((g, a, -g, -a))

    pres = Presentation(tuple(names), tuple(relators))
    offset = 0  # each chain inserts relators before later chain targets
    for index, start, count, base in chains:
        before = len(pres.relators)
        pres = chain_block(pres, index + offset, start, count, strategy, _suffix_names(base))
        offset += len(pres.relators) - before
    return pres


def milnor_closed_form_length(spec: MilnorSpec, strategy: ChainStrategy = "base2") -> int:
    """The length milnor_presentation attains, as a closed form in ell."""
    f, n, k, q = spec.family, spec.n, spec.k, spec.q
    lq = ell(q, strategy) + 8 if q > 1 else 0
    if f == "Q":
        return ell(n, strategy) + 6 + lq
    if f == "D":
        return ell(1 << k, strategy) + ell(n, strategy) + 4 + lq
    if f == "P24":
        return 15 + lq
    if f == "P48":
        return 16 + lq
    if f == "P120":
        return 17 + lq
    extra = 4 if q > 1 else 0  # third commutator [z,a]
    return ell(3 ** k, strategy) + 17 + lq + extra


def milnor_bounds(spec: MilnorSpec) -> BoundsReport:
    """Two-sided closed-form complexity bounds for a Milnor group.

    The lower bound is log2 of the torsion of the abelianization; the upper
    bound comes from the chained presentation lengths.
    """
    f, n, k, q = spec.family, spec.n, spec.k, spec.q
    log2q = math.log2(q)
    if f == "Q":
        lo, hi = log2q + 2, 4 * (log2q + 2) + 4 * math.log2(n) + 6
    elif f == "D":
        lo, hi = log2q + k, 4 * (log2q + k) + 4 * math.log2(n) + 12
    elif f == "P24":
        lo, hi = math.log2(3 * q), 4 * math.log2(3 * q) + 17
    elif f == "P48":
        lo, hi = log2q + 1, 4 * (log2q + 1) + 20
    elif f == "P120":
        lo, hi = log2q, 4 * log2q + 25
    else:
        lo = log2q + k * LOG2_3
        hi = 4 * lo + 29
    entries = (
        BoundEntry("lower-c", lo, "log2-of-torsion", strict=True),
        BoundEntry("upper-c", hi, "chained-family-presentation", strict=True),
    )
    return BoundsReport(entries, (("family", f), ("n", n), ("k", k), ("q", q)))


def seifert_group_bounds(family: Literal["Q", "D"], n: int, q: int | None = None,
                         h: int | None = None, s: int | None = None) -> BoundsReport:
    """Asymptotically exact bounds for the Milnor groups realizable as
    fundamental groups of small Seifert manifolds.

    Requires (n, q) to be a Zaremba pair (q = 2^(h-2) * s in the D case);
    the bounds then sandwich both the complexity and the triangular
    invariant between linear functions of log2 of the torsion.
    """
    if family == "Q":
        if q is None:
            raise ValueError("family Q requires q")
        if q < 2:
            raise ValueError("q must be >= 2 (a trivial cofactor is not a Zaremba pair)")
        if q % 2 == 0:
            raise ValueError("family Q requires odd q")
        if not contfrac.is_zaremba(n, q):
            raise ValueError(f"({n}, {q}) is not a Zaremba pair")
        log2q = math.log2(q)
        entries = (
            BoundEntry("lower-c", log2q + 2, "log2-of-torsion", strict=True),
            BoundEntry("upper-c", 8 * (log2q + 2) + 9, "seifert-spine", strict=True),
            BoundEntry("lower-T", log2q / LOG2_3, "log3-of-odd-torsion"),
            BoundEntry("upper-T", 6 * log2q + 18, "twice-manifold-complexity", strict=True),
        )
        return BoundsReport(entries, (("family", "Q"), ("n", n), ("q", q)))
    if family == "D":
        if h is None or s is None:
            raise ValueError("family D requires h and s")
        if h < 3 or n < 3:
            raise ValueError("family D requires h >= 3 and n >= 3")
        if s % 2 == 0 or math.gcd(n, s) != 1:
            raise ValueError("family D requires odd s coprime with n")
        qq = (1 << (h - 2)) * s
        if not contfrac.is_zaremba(n, qq):
            raise ValueError(f"({n}, {qq}) is not a Zaremba pair")
        log2s = math.log2(s)
        entries = (
            BoundEntry("lower-c", log2s + h, "log2-of-torsion", strict=True),
            BoundEntry("upper-c", 8 * (log2s + h) + 15, "seifert-spine", strict=True),
            BoundEntry("lower-T", log2s / LOG2_3, "log3-of-odd-torsion"),
            BoundEntry("upper-T", 6 * (log2s + h) + 6, "twice-manifold-complexity", strict=True),
        )
        return BoundsReport(entries, (("family", "D"), ("n", n), ("h", h), ("s", s)))
    raise ValueError(f"unknown Seifert family {family!r}")
