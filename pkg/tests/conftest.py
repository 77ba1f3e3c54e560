"""Shared oracles and generators for the test suite.

The oracles here are deliberately independent of the library code they
check: minors-gcd for Smith normal form, plain Euclid for continued
fractions, and brute-force enumeration for the canonical-class counts.
"""

import itertools
import math
from pathlib import Path

from groupcomplexity import Presentation
from groupcomplexity.presentation import invert_word

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_files():
    return sorted(FIXTURES.glob("*.pres"))


# ---------------------------------------------------------------------------
# Smith normal form oracle: d_k = gcd of all k x k minors, f_k = d_k / d_{k-1}


def _det(sub):
    k = len(sub)
    if k == 1:
        return sub[0][0]
    if k == 2:
        return sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0]
    total = 0
    for j in range(k):
        minor = [row[:j] + row[j + 1:] for row in sub[1:]]
        total += (-1) ** j * sub[0][j] * _det(minor)
    return total


def snf_minors_oracle(entries, rows, cols):
    """Invariant factors and free rank from the gcds of the minors."""
    d = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                sub = [[entries[i][j] for j in ci] for i in ri]
                g = math.gcd(g, _det(sub))
        if g == 0:
            break
        d.append(g)
    factors = tuple(d[i + 1] // d[i] for i in range(len(d) - 1))
    return factors, cols - len(factors)


# ---------------------------------------------------------------------------
# symmetry scrambling: a random image of a presentation in its class


def scrambled(pres, rng):
    n = pres.num_generators
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    signs = [rng.choice((1, -1)) for _ in range(n)]

    def image(letter):
        mapped = perm[abs(letter) - 1] * signs[abs(letter) - 1]
        return mapped if letter > 0 else -mapped

    relators = []
    for r in pres.relators:
        w = tuple(image(x) for x in r)
        if w and rng.random() < 0.5:
            w = invert_word(w)
        if w:
            i = rng.randrange(len(w))
            w = w[i:] + w[:i]
        relators.append(w)
    rng.shuffle(relators)
    return Presentation(pres.names, tuple(relators))


# ---------------------------------------------------------------------------
# naive class enumeration: generate everything, dedupe by canonical key


def cyclically_reduced_words(max_len, num_gens):
    """All nonempty cyclically reduced words of length <= max_len."""
    words = []
    prefix = []

    def rec():
        if prefix and (len(prefix) == 1 or prefix[0] != -prefix[-1]):
            words.append(tuple(prefix))
        if len(prefix) == max_len:
            return
        for g in range(1, num_gens + 1):
            for letter in (g, -g):
                if prefix and letter == -prefix[-1]:
                    continue
                prefix.append(letter)
                rec()
                prefix.pop()

    rec()
    return words


def naive_class_count(max_length, max_gens):
    """Number of symmetry classes, by generating every relator multiset and
    deduplicating with canonical_key."""
    from groupcomplexity.search import canonical_key

    pool = sorted(cyclically_reduced_words(max_length, max_gens),
                  key=lambda w: (len(w), w))
    names = tuple("xyz"[:max_gens])
    seen = set()
    chosen = []

    def rec(start, budget):
        if chosen:
            pres = Presentation(names, tuple(chosen))
            seen.add(canonical_key(pres))
        for i in range(start, len(pool)):
            w = pool[i]
            if len(w) > budget:
                break
            chosen.append(w)
            rec(i, budget - len(w))
            chosen.pop()

    rec(0, max_length)
    return len(seen)
