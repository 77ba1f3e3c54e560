"""Continued fractions, Zaremba pairs, and the manifold complexity bounds.

The canonical expansion of p/q has all quotients >= 1 and the last one >= 2
(a trailing 1 is folded into its predecessor), so each coprime pair has a
unique quotient sequence.  A pair is Zaremba if all quotients are at most 5,
weak Zaremba if their average is at most 5.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

LOG2_5 = math.log2(5)


@dataclass(frozen=True)
class CFExpansion:
    p: int
    q: int
    quotients: tuple[int, ...]

    @property
    def sum(self) -> int:
        return sum(self.quotients)

    @property
    def max_quotient(self) -> int:
        return max(self.quotients)

    @property
    def is_zaremba(self) -> bool:
        return self.max_quotient <= 5

    @property
    def is_weak_zaremba(self) -> bool:
        return self.sum <= 5 * len(self.quotients)


def cf_expand(p: int, q: int) -> CFExpansion:
    """Canonical continued fraction of p/q for coprime p > q >= 1."""
    if p <= q or q < 1:
        raise ValueError(f"need p > q >= 1, got ({p}, {q})")
    if math.gcd(p, q) != 1:
        raise ValueError(f"({p}, {q}) are not coprime")
    pp, qq = p, q
    quotients = []
    while qq:
        a, pp, qq = pp // qq, qq, pp % qq
        quotients.append(a)
    # Euclid already ends with a quotient >= 2 when q > 1, but fold defensively
    if len(quotients) >= 2 and quotients[-1] == 1:
        quotients.pop()
        quotients[-1] += 1
    return CFExpansion(p, q, tuple(quotients))


def cf_reconstruct(quotients: list[int]) -> tuple[int, int]:
    """Inverse of cf_expand, via the 2x2 matrix product identity."""
    if not quotients:
        raise ValueError("empty quotient list")
    if any(a < 1 for a in quotients):
        raise ValueError(f"quotients must be >= 1: {quotients}")
    if len(quotients) >= 2 and quotients[-1] < 2:
        raise ValueError("canonical expansions end with a quotient >= 2")
    p, q = quotients[-1], 1
    for a in reversed(quotients[:-1]):
        p, q = a * p + q, p
    return p, q


def is_zaremba(p: int, q: int) -> bool:
    return cf_expand(p, q).is_zaremba


def is_weak_zaremba(p: int, q: int) -> bool:
    return cf_expand(p, q).is_weak_zaremba


def cf_sum_bound_check(p: int, q: int) -> tuple[int, float, bool]:
    """Quotient sum against its theorem bound: 3*log2(p) for Zaremba pairs,
    10*log2(p) for weak Zaremba pairs.

    A False result signals an implementation bug, not a property of the
    input.
    """
    if q <= 1:
        raise ValueError("the quotient-sum bounds require q > 1")
    exp = cf_expand(p, q)
    if exp.is_zaremba:
        bound = 3 * math.log2(p)
    elif exp.is_weak_zaremba:
        bound = 10 * math.log2(p)
    else:
        raise ValueError(f"({p}, {q}) is neither a Zaremba nor a weak Zaremba pair")
    return exp.sum, bound, exp.sum <= bound + 1e-12


def zaremba_partner_scan(p: int) -> tuple[int, int, bool]:
    """Best denominator for p: the coprime 1 < q < p minimizing the maximum
    partial quotient of p/q (ties broken by smallest q).

    Returns (q, max quotient, max quotient <= 5).
    """
    if p < 3:
        raise ValueError(f"p must be >= 3, got {p}")
    best_q, best_max = 0, p + 1
    for q in range(2, p):
        if math.gcd(p, q) != 1:
            continue
        pp, qq, worst = p, q, 0
        while qq:
            a, pp, qq = pp // qq, qq, pp % qq
            if a > worst:
                worst = a
                if worst >= best_max:
                    break
        if worst < best_max:
            best_q, best_max = q, worst
            if best_max == 1:
                break
    return best_q, best_max, best_max <= 5


def fibonacci_pair(k: int) -> tuple[int, int]:
    """(F_{k+1}, F_k); consecutive Fibonacci numbers are Zaremba pairs."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    a, b = 1, 1  # F_1, F_2
    for _ in range(k - 2):
        a, b = b, a + b
    return a + b, b


@dataclass(frozen=True)
class ManifoldBounds:
    lower: float
    upper: float
    hypothesis: str  # "zaremba" | "weak-zaremba"
    p_below_6q: bool | None = None

    def __post_init__(self):
        if self.lower > self.upper + 1e-9:
            raise ValueError(f"inconsistent manifold bounds: {self}")


def lens_bounds(p: int, q: int) -> ManifoldBounds:
    """Two-sided bounds on the complexity of the lens space L(p, q)."""
    exp = cf_expand(p, q)
    lower = (2 / LOG2_5) * math.log2(p) - 1
    if exp.is_zaremba:
        return ManifoldBounds(lower, 3 * math.log2(p) - 3, "zaremba")
    if exp.is_weak_zaremba:
        return ManifoldBounds(lower, 10 * math.log2(p) - 3, "weak-zaremba")
    raise ValueError(f"({p}, {q}) is neither a Zaremba nor a weak Zaremba pair")


def seifert_manifold_bounds(p: int, q: int) -> ManifoldBounds:
    """Bounds on the complexity of the Seifert manifold
    (S^2; (2,1), (2,1), (p,q), -1) for a Zaremba pair (p, q), q > 1."""
    if q <= 1:
        raise ValueError("q must be > 1")
    exp = cf_expand(p, q)
    if not exp.is_zaremba:
        raise ValueError(f"({p}, {q}) is not a Zaremba pair")
    lower = (2 / LOG2_5) * math.log2(q)
    upper = 3 * math.log2(q) + 9
    return ManifoldBounds(lower, upper, "zaremba", p_below_6q=p < 6 * q)


# ---------------------------------------------------------------------------
# exhaustive sweep (vectorized)
#
# Brute-force expansion of every pair costs ~10 Euclid steps each; instead a
# table of tail statistics (quotient sum, count, all-quotients<=5 flag) is
# precomputed for every pair below a threshold, and big pairs take only the
# one or two Euclid steps needed to fall below it.  Entries pack into an
# int32: sum in bits 0-13, count in bits 14-18, flag in bit 19.

_TABLE_LIMIT = 10_000
_SUM_BITS, _CNT_SHIFT, _FLAG_SHIFT = 0x3FFF, 14, 19


def _tail_table(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """Packed expansion statistics for all pairs (p, q) with 1 <= q < p < limit.

    Returns (base, table): the entry for (p, q) is table[base[p] + q - 1].
    """
    base = np.zeros(limit, dtype=np.int64)
    base[2:] = np.cumsum(np.arange(0, limit - 2, dtype=np.int64))
    table = np.zeros(int(base[limit - 1] + limit - 2), dtype=np.int32)
    for p in range(2, limit):
        q = np.arange(1, p, dtype=np.int32)
        a, r = np.divmod(np.int32(p), q)
        s = a.copy()
        n = np.ones(p - 1, dtype=np.int32)
        flag = (a <= 5).astype(np.int32)
        deeper = np.flatnonzero(r)
        if len(deeper):
            tail = table[base[q[deeper]] + r[deeper] - 1]
            s[deeper] += tail & _SUM_BITS
            n[deeper] += (tail >> _CNT_SHIFT) & 31
            flag[deeper] &= (tail >> _FLAG_SHIFT) & 1
        table[base[p]:base[p] + p - 1] = s + (n << _CNT_SHIFT) + (flag << _FLAG_SHIFT)
    return base, table


_sweep_kernel = None


def _get_sweep_kernel():
    """Compile (once) the scalar per-pair sweep loop.

    Pure numpy versions spend ~100ns of interpreter and temporaries per pair,
    which busts the time budget at max_p = 10**5; the jitted loop with the
    tail table keeps the full sweep under three minutes on one core.
    """
    global _sweep_kernel
    if _sweep_kernel is not None:
        return _sweep_kernel
    import numba

    @numba.njit(cache=True, nogil=True)
    def kernel(p_lo, p_hi, limit, base, table, floor3, floor10):
        pairs = 0
        zaremba = 0
        weak_count = 0
        violations = 0
        for p in range(p_lo, p_hi + 1):
            f3 = floor3[p]
            f10 = floor10[p]
            for q in range(2, p):
                s = 0
                n = 0
                zar = True
                x, y = p, q
                while x >= limit and y != 0:
                    d = x // y
                    s += d
                    n += 1
                    if d > 5:
                        zar = False
                    x, y = y, x - d * y
                if y != 0:
                    t = table[base[x] + y - 1]
                    s += t & _SUM_BITS
                    n += (t >> _CNT_SHIFT) & 31
                    if (t >> _FLAG_SHIFT) & 1 == 0:
                        zar = False
                weak = s <= 5 * n
                pairs += 1
                bad = False
                if zar:
                    zaremba += 1
                    if s > f3 or p >= 6 * q or not weak:
                        bad = True
                if weak:
                    weak_count += 1
                    if s > f10:
                        bad = True
                if bad:
                    violations += 1
        return pairs, zaremba, weak_count, violations

    _sweep_kernel = kernel
    return kernel


def sweep_sum_bounds(max_p: int, chunk_pairs: int = 8_000_000,
                     jobs: int = 1) -> dict[str, int]:
    """Exhaustively check the quotient-sum bounds for all pairs p > q > 1
    with p <= max_p.

    Verifies, pair by pair: Zaremba implies S <= 3*log2(p) and p < 6q and
    weak Zaremba; weak Zaremba implies S <= 10*log2(p).  Non-coprime pairs
    reduce to coprime ones and are checked redundantly (their bounds are
    implied), so no gcd filtering is needed.  Returns counters, including a
    violation count that must be zero.
    """
    if max_p < 3:
        raise ValueError("max_p must be >= 3")
    limit = min(_TABLE_LIMIT, max_p + 1)
    base, table = _tail_table(limit)
    # integer bound thresholds: S <= 3*log2(p) iff S <= floor(3*log2(p))
    ps = np.arange(max_p + 1, dtype=np.float64)
    ps[0] = 1
    floor3 = np.floor(3 * np.log2(ps) + 1e-9).astype(np.int32)
    floor10 = np.floor(10 * np.log2(ps) + 1e-9).astype(np.int32)
    kernel = _get_sweep_kernel()

    spans = []
    acc, lo = 0, 3
    for p in range(3, max_p + 1):
        acc += p - 2
        if acc >= chunk_pairs or p == max_p:
            spans.append((lo, p))
            lo, acc = p + 1, 0

    def worker(span):
        return kernel(span[0], span[1], limit, base, table, floor3, floor10)

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, spans))
    else:
        results = [worker(span) for span in spans]

    counts = {"pairs": 0, "zaremba": 0, "weak_zaremba": 0, "violations": 0}
    for pairs, zaremba, weak, violations in results:
        counts["pairs"] += int(pairs)
        counts["zaremba"] += int(zaremba)
        counts["weak_zaremba"] += int(weak)
        counts["violations"] += int(violations)
    return counts
