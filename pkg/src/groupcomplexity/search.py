"""Exhaustive search for minimal presentations of small cyclic groups.

Presentations are identified up to the symmetries that preserve total length
and the group: generator permutation, generator inversion, per-relator
inversion and cyclic rotation, and relator reordering.  Enumeration emits one
canonical representative per class; candidates surviving sound pruning are
verified by coset enumeration.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .abelian import RelationMatrix, smith_normal_form
from .coset import DEFAULT_MAX_COSETS, enumerate_cosets
from .presentation import Presentation, Word, cyclic_reduce, invert_word

_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def _default_names(count: int) -> tuple[str, ...]:
    return tuple(_ALPHABET[i] if i < 26 else f"g{i + 1}" for i in range(count))


# ---------------------------------------------------------------------------
# word keys and the canonical form

# letter codes order generators before their inverses: +g -> 2g-2, -g -> 2g-1
def word_key(word: Word) -> tuple[int, ...]:
    """Total order on words: by length, then letter codes."""
    key = [len(word)]
    for letter in word:
        code = 2 * (abs(letter) - 1)
        key.append(code if letter > 0 else code + 1)
    return tuple(key)


def _min_rotation_key(word: Word) -> tuple[int, ...]:
    best = None
    for u in (word, invert_word(word)):
        for i in range(len(u)):
            key = word_key(u[i:] + u[:i])
            if best is None or key < best:
                best = key
    return best


def _key_to_word(key: tuple[int, ...]) -> Word:
    return tuple(code // 2 + 1 if code % 2 == 0 else -(code // 2 + 1)
                 for code in key[1:])


def _is_minimal_word(word: Word) -> bool:
    """True when the word is the representative of its rotation/inversion orbit."""
    return word_key(word) == _min_rotation_key(word)


def _word_gens(word: Word) -> tuple[int, ...]:
    return tuple(sorted({abs(letter) - 1 for letter in word}))


# The orbit minimum is reconstructed word by word instead of by scanning all
# g!*2^g relabelings: in the minimal representative the relators appear in
# sorted order and generator labels are assigned consecutively in order of
# first use, with every first occurrence positive (a violation of either
# could be relabeled into something strictly smaller).  So it suffices to
# search over which relator comes next and in which rotation/inversion; the
# label assignment is then forced.

class _SmallerFound(Exception):
    pass


def _variants(word: Word) -> tuple[Word, ...]:
    out = set()
    for u in (word, invert_word(word)):
        for i in range(len(u)):
            out.add(u[i:] + u[:i])
    return tuple(sorted(out))


def _emit(var: Word, assign: dict, next_label: int):
    """Relabel a variant under the partial assignment, giving unseen
    generators fresh consecutive labels with positive first occurrence.
    Returns (key, gens added to assign, next free label)."""
    mapped = []
    added = []
    nl = next_label
    for letter in var:
        g = abs(letter)
        got = assign.get(g)
        if got is None:
            got = (nl, 1 if letter > 0 else -1)
            assign[g] = got
            added.append(g)
            nl += 1
        label, sign = got
        mapped.append(label if (letter > 0) == (sign > 0) else -label)
    return word_key(tuple(mapped)), added, nl


def _undo(assign: dict, added: list) -> None:
    for g in added:
        del assign[g]


def _grouped(relators) -> tuple[list[Word], list[int], list[tuple[Word, ...]]]:
    counts: dict[Word, int] = {}
    for w in relators:
        counts[w] = counts.get(w, 0) + 1
    words = list(counts)
    return words, [counts[w] for w in words], [_variants(w) for w in words]


def _stamp(words, remaining, assign, next_label):
    live = set()
    for w, cnt in zip(words, remaining):
        if cnt:
            live.update(abs(x) for x in w)
    kept = tuple(sorted((g, assign[g]) for g in assign.keys() & live))
    return tuple(remaining), kept, next_label


def _is_canonical(num_gens: int, relators: tuple[Word, ...]) -> bool:
    """True when the sorted relator tuple is the minimum of its orbit."""
    bound = [word_key(w) for w in relators]
    words, counts, variants = _grouped(relators)
    visited: set = set()
    assign: dict = {}

    def rec(k: int, next_label: int) -> None:
        if k == len(bound):
            return
        target = bound[k]
        floor_key = bound[k - 1] if k else None
        for idx in range(len(words)):
            if not counts[idx]:
                continue
            for var in variants[idx]:
                key, added, nl = _emit(var, assign, next_label)
                if floor_key is None or key >= floor_key:
                    if key < target:
                        raise _SmallerFound
                    if key == target:
                        counts[idx] -= 1
                        mark = _stamp(words, counts, assign, nl)
                        if mark not in visited:
                            visited.add(mark)
                            rec(k + 1, nl)
                        counts[idx] += 1
                _undo(assign, added)

    try:
        rec(0, 1)
        return True
    except _SmallerFound:
        return False


def _greedy_rest(words, counts, variants, assign, next_label) -> list:
    """Complete a partial emission by always taking the smallest next key;
    returns the keys of the remaining words (not necessarily sorted)."""
    out = []
    remaining = sum(counts)
    while remaining:
        best = None
        for idx in range(len(words)):
            if not counts[idx]:
                continue
            for var in variants[idx]:
                key, added, nl = _emit(var, assign, next_label)
                if best is None or key < best[0]:
                    best = (key, idx, var)
                _undo(assign, added)
        key, idx, var = best
        _, _, next_label = _emit(var, assign, next_label)
        counts[idx] -= 1
        remaining -= 1
        out.append(key)
    return out


def _orbit_min_keys(relators) -> list:
    """Sorted key list of the orbit minimum."""
    words, base_counts, variants = _grouped(relators)
    bound = sorted(_greedy_rest(words, base_counts[:], variants, {}, 1))

    # repeatedly look for a representative strictly below the current bound;
    # counts are rebuilt per pass because the abort unwinds the restorations
    while True:
        counts = base_counts[:]
        improved = None
        visited: set = set()
        assign: dict = {}

        def rec(k: int, next_label: int) -> None:
            nonlocal improved
            if k == len(bound):
                return
            target = bound[k]
            floor_key = bound[k - 1] if k else None
            for idx in range(len(words)):
                if not counts[idx]:
                    continue
                for var in variants[idx]:
                    key, added, nl = _emit(var, assign, next_label)
                    if floor_key is None or key >= floor_key:
                        if key < target:
                            counts[idx] -= 1
                            rest = _greedy_rest(words, counts[:], variants,
                                                dict(assign), nl)
                            counts[idx] += 1
                            improved = sorted(bound[:k] + [key] + rest)
                            _undo(assign, added)
                            raise _SmallerFound
                        if key == target:
                            counts[idx] -= 1
                            mark = _stamp(words, counts, assign, nl)
                            if mark not in visited:
                                visited.add(mark)
                                rec(k + 1, nl)
                            counts[idx] += 1
                    _undo(assign, added)

        try:
            rec(0, 1)
            return bound
        except _SmallerFound:
            bound = improved


def canonical_form(pres: Presentation) -> Presentation:
    """Orbit-minimum representative under generator permutation/inversion,
    relator rotation/inversion, and relator reordering.  Idempotent.

    Relators are cyclically reduced first and empty ones dropped; generators
    left unused after reduction are removed.
    """
    relators = [cyclic_reduce(r) for r in pres.relators]
    relators = [r for r in relators if r]
    if not relators:
        return Presentation((), ())

    keys = _orbit_min_keys(relators)
    words = tuple(_key_to_word(k) for k in keys)
    num_gens = max(abs(x) for w in words for x in w)
    return Presentation(_default_names(num_gens), words)


def canonical_key(pres: Presentation) -> tuple[tuple[int, ...], ...]:
    """Total-order key of the canonical class of pres."""
    canon = canonical_form(pres)
    return tuple(word_key(w) for w in canon.relators)


# ---------------------------------------------------------------------------
# enumeration

def _minimal_words(budget: int, used: int, max_gens: int,
                   min_key: tuple[int, ...]) -> Iterator[tuple[Word, int]]:
    """All rotation/inversion-minimal cyclically reduced words of length <=
    budget whose key is >= min_key, over generators 1..used plus fresh
    generators introduced in order with positive first occurrence.

    Yields (word, generators used after the word).
    """
    prefix: list[int] = []

    def rec(u: int) -> Iterator[tuple[Word, int]]:
        if prefix:
            w = tuple(prefix)
            if (len(w) == 1 or w[0] != -w[-1]) and _is_minimal_word(w) \
                    and word_key(w) >= min_key:
                yield w, u
        if len(prefix) == budget:
            return
        last = prefix[-1] if prefix else 0
        top = min(u + 1, max_gens)
        for g in range(1, top + 1):
            for letter in ((g,) if g > u else (g, -g)):
                if letter == -last:
                    continue
                prefix.append(letter)
                yield from rec(max(u, g))
                prefix.pop()

    yield from rec(used)


def _raw_candidates(max_length: int, max_gens: int,
                    first: tuple[Word, int] | None = None
                    ) -> Iterator[tuple[int, tuple[Word, ...]]]:
    """All sorted tuples of minimal words with every generator used, before
    canonicity filtering.  Yields (num_gens, relators).  With `first`, only
    the branch starting at that first relator."""
    relators: list[Word] = []

    def rec(last_key, u: int, budget: int) -> Iterator[tuple[int, tuple[Word, ...]]]:
        if relators:
            yield u, tuple(relators)
        if budget == 0:
            return
        for w, u2 in _minimal_words(budget, u, max_gens, last_key):
            relators.append(w)
            yield from rec(word_key(w), u2, budget - len(w))
            relators.pop()

    if first is None:
        yield from rec((1, 0), 0, max_length)
    else:
        w, u2 = first
        relators.append(w)
        yield from rec(word_key(w), u2, max_length - len(w))


def enumerate_presentations(max_length: int, max_gens: int) -> Iterator[Presentation]:
    """One canonical representative of every symmetry class of presentations
    with total relator length <= max_length and generator count <= max_gens,
    all relators nonempty and cyclically reduced, every generator used.

    Deterministic order: total length, then generator count, then key.
    """
    if max_length < 1 or max_gens < 1:
        raise ValueError("budgets must be >= 1")
    found = []
    for g, rels in _raw_candidates(max_length, max_gens):
        if _is_canonical(g, rels):
            total = sum(len(r) for r in rels)
            found.append((total, g, tuple(word_key(w) for w in rels), rels))
    found.sort()
    for _, g, _, rels in found:
        yield Presentation(_default_names(g), rels)


# ---------------------------------------------------------------------------
# classified classes, cached per budget

@dataclass(frozen=True)
class ClassRecord:
    length: int
    num_gens: int
    relators: tuple[Word, ...]
    free_rank: int
    torsion: int
    cyclic: bool  # at most one invariant factor > 1
    split: bool  # free product of >= 2 groups with nontrivial abelianization

    def presentation(self) -> Presentation:
        return Presentation(_default_names(self.num_gens), self.relators)


def _exponent_rows(num_gens: int, relators: tuple[Word, ...]) -> list[list[int]]:
    rows = []
    for r in relators:
        row = [0] * num_gens
        for letter in r:
            row[abs(letter) - 1] += 1 if letter > 0 else -1
        rows.append(row)
    return rows


def _split_free_product(num_gens: int, relators: tuple[Word, ...]) -> bool:
    """True when the generators partition into >= 2 relator-disjoint parts
    each with nontrivial abelianization; the group is then an infinite free
    product and cannot be a finite cyclic group."""
    parent = list(range(num_gens))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r in relators:
        gens = _word_gens(r)
        for g in gens[1:]:
            parent[find(g)] = find(gens[0])
    roots = {find(g) for g in range(num_gens)}
    if len(roots) < 2:
        return False

    nontrivial = 0
    for root in roots:
        part = [g for g in range(num_gens) if find(g) == root]
        cols = {g: j for j, g in enumerate(part)}
        rows = []
        for r in relators:
            if find(abs(r[0]) - 1) == root:
                row = [0] * len(part)
                for letter in r:
                    row[cols[abs(letter) - 1]] += 1 if letter > 0 else -1
                rows.append(row)
        inv = smith_normal_form(RelationMatrix(len(rows), len(part),
                                               tuple(tuple(x) for x in rows)))
        if inv.free_rank > 0 or inv.torsion_order > 1:
            nontrivial += 1
    return nontrivial >= 2


class EnumerationAuditError(AssertionError):
    """An emitted presentation violated length > log2(torsion)."""


def _classify(num_gens: int, relators: tuple[Word, ...]) -> ClassRecord:
    total = sum(len(r) for r in relators)
    rows = _exponent_rows(num_gens, relators)
    inv = smith_normal_form(RelationMatrix(len(rows), num_gens,
                                           tuple(tuple(x) for x in rows)))
    torsion = inv.torsion_order
    if torsion >= 2 and total <= math.log2(torsion):
        raise EnumerationAuditError(
            f"length {total} <= log2({torsion}) for {relators}")
    cyclic = sum(1 for d in inv.diagonal if d > 1) <= 1
    return ClassRecord(total, num_gens, relators, inv.free_rank, torsion,
                       cyclic, _split_free_product(num_gens, relators))


_CLASS_CACHE: dict[tuple[int, int], tuple[ClassRecord, ...]] = {}


def _branch_classes(args) -> list[ClassRecord]:
    max_length, max_gens, first = args
    out = []
    for g, rels in _raw_candidates(max_length, max_gens, first=first):
        if _is_canonical(g, rels):
            out.append(_classify(g, rels))
    return out


def _all_classes(max_length: int, max_gens: int, jobs: int = 1) -> tuple[ClassRecord, ...]:
    stamp = (max_length, max_gens)
    hit = _CLASS_CACHE.get(stamp)
    if hit is not None:
        return hit

    firsts = list(_minimal_words(max_length, 0, max_gens, (1, 0)))
    tasks = [(max_length, max_gens, f) for f in firsts]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_branch_classes, tasks))
    else:
        chunks = [_branch_classes(t) for t in tasks]

    records = [rec for chunk in chunks for rec in chunk]
    records.sort(key=lambda rec: (rec.length, rec.num_gens,
                                  tuple(word_key(w) for w in rec.relators)))
    result = tuple(records)
    _CLASS_CACHE[stamp] = result
    return result


# ---------------------------------------------------------------------------
# exact complexity of cyclic groups

@dataclass(frozen=True)
class SearchResult:
    n: int
    status: str  # "exact" | "lower-bound-only"
    complexity: int | None
    witness: Presentation | None
    lower_bound: int
    upper_bound: int | None
    classes_enumerated: int
    pruned: tuple[tuple[str, int], ...]
    inconclusive: int
    caveat: str | None
    wall_time: float
    max_length: int
    max_gens: int
    coset_cap: int

    @property
    def exact(self) -> bool:
        return self.status == "exact"

    def pruned_total(self) -> int:
        return sum(count for _, count in self.pruned)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "status": self.status,
            "complexity": self.complexity,
            "witness": None if self.witness is None else str(self.witness),
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "classes_enumerated": self.classes_enumerated,
            "pruned": dict(self.pruned),
            "inconclusive": self.inconclusive,
            "caveat": self.caveat,
            "wall_time": self.wall_time,
            "max_length": self.max_length,
            "max_gens": self.max_gens,
            "coset_cap": self.coset_cap,
        }


def exact_cyclic_complexity(n: int, max_length: int,
                            max_gens: int | None = None,
                            coset_cap: int = DEFAULT_MAX_COSETS,
                            jobs: int = 1) -> SearchResult:
    """Exact complexity of the cyclic group of order n, if some presentation
    within the budget verifies and everything shorter is excluded.

    Inconclusive coset enumerations below the witness length poison the
    exactness claim: the result degrades to a lower bound with a caveat.
    """
    if n < 1 or max_length < 1:
        raise ValueError("n and max_length must be >= 1")
    if max_gens is None:
        max_gens = max_length
    start = time.monotonic()

    if n == 1:
        return SearchResult(1, "exact", 0, Presentation((), ()), 0, 0,
                            0, (), 0, None, time.monotonic() - start,
                            max_length, max_gens, coset_cap)

    log2n = math.log2(n)
    pruned = {"length-bound": 0, "free-rank": 0, "torsion-mismatch": 0,
              "noncyclic-abelianization": 0, "free-product": 0,
              "order-mismatch": 0}
    enumerated = 0
    inconclusive = 0
    first_bad_length = None
    witness = None

    for rec in _all_classes(max_length, max_gens, jobs=jobs):
        enumerated += 1
        if rec.length <= log2n:
            pruned["length-bound"] += 1
            continue
        if rec.free_rank != 0:
            pruned["free-rank"] += 1
            continue
        if rec.torsion != n:
            pruned["torsion-mismatch"] += 1
            continue
        if not rec.cyclic:
            pruned["noncyclic-abelianization"] += 1
            continue
        if rec.split:
            pruned["free-product"] += 1
            continue
        outcome = enumerate_cosets(rec.presentation(), coset_cap)
        if outcome.overflowed:
            inconclusive += 1
            if first_bad_length is None:
                first_bad_length = rec.length
            continue
        if outcome.order != n:
            pruned["order-mismatch"] += 1
            continue
        witness = rec
        break

    elapsed = time.monotonic() - start
    pruned_out = tuple(sorted(pruned.items()))
    if witness is not None and (first_bad_length is None
                                or first_bad_length >= witness.length):
        caveat = None
        if inconclusive:
            caveat = (f"{inconclusive} inconclusive enumeration(s) at length "
                      f"{witness.length}; exactness unaffected")
        return SearchResult(n, "exact", witness.length, witness.presentation(),
                            witness.length, witness.length, enumerated,
                            pruned_out, inconclusive, caveat, elapsed,
                            max_length, max_gens, coset_cap)

    if witness is not None:
        lower = first_bad_length
        caveat = (f"inconclusive coset enumeration at length {first_bad_length} "
                  f"below the length-{witness.length} witness")
        return SearchResult(n, "lower-bound-only", None, witness.presentation(),
                            lower, witness.length, enumerated, pruned_out,
                            inconclusive, caveat, elapsed,
                            max_length, max_gens, coset_cap)

    lower = first_bad_length if first_bad_length is not None else max_length + 1
    caveat = None
    if inconclusive:
        caveat = f"{inconclusive} inconclusive coset enumeration(s)"
    return SearchResult(n, "lower-bound-only", None, None, lower, None,
                        enumerated, pruned_out, inconclusive, caveat, elapsed,
                        max_length, max_gens, coset_cap)
