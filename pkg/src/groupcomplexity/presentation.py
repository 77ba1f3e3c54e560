"""Words, finite presentations, and the length/triangular cost functions.

A word is a tuple of nonzero ints: letter ``+(i+1)`` is generator ``i``,
``-(i+1)`` its inverse.  Relators are stored exactly as given; reduction is
always an explicit operation, so the reported length of a presentation is the
length of the words as written.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

Word = tuple[int, ...]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*$")


class ParseError(ValueError):
    """Syntax or semantic error in a presentation file."""

    def __init__(self, message: str, line: int, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def free_reduce(word: Iterable[int]) -> Word:
    """Freely reduce a word (cancel adjacent inverse pairs).  Idempotent."""
    out: list[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def cyclic_reduce(word: Iterable[int]) -> Word:
    """Freely and cyclically reduce a word (strip conjugating prefixes)."""
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert_word(word: Iterable[int]) -> Word:
    return tuple(-letter for letter in reversed(tuple(word)))


@dataclass(frozen=True)
class Presentation:
    """A finite group presentation: generator names plus relator words."""

    names: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate generator names: {self.names}")
        n = len(self.names)
        for r in self.relators:
            for letter in r:
                if letter == 0 or abs(letter) > n:
                    raise ValueError(f"letter {letter} out of range in relator {r}")

    @property
    def num_generators(self) -> int:
        return len(self.names)

    def __str__(self) -> str:
        return format_presentation(self)


def make_presentation(names: Iterable[str], relators: Iterable[Iterable[int]]) -> Presentation:
    return Presentation(tuple(names), tuple(tuple(r) for r in relators))


def length(pres: Presentation) -> int:
    """Total relator length, counted as written (no implicit reduction)."""
    return sum(len(r) for r in pres.relators)


def t_cost(pres: Presentation) -> int:
    """Sum of max(|r|-2, 0) over relators.

    This is the number of length-3 relations produced by `triangularize`,
    hence an upper bound for the triangular invariant of the presented group.
    """
    return sum(max(len(r) - 2, 0) for r in pres.relators)


# ---------------------------------------------------------------------------
# presentation file format


def parse_presentation(text: str) -> Presentation:
    """Parse the line-oriented presentation format.

    ``gens a b c`` optionally declares generators; ``rel a^4 b c^-1`` adds a
    relator (``a^-3`` expands to three inverse letters).  ``#`` starts a
    comment.  Without a ``gens`` line, generators are declared by first
    appearance.
    """
    names: list[str] = []
    index: dict[str, int] = {}
    explicit_gens = False
    relators: list[Word] = []
    seen_any = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = line.split()
        if not tokens:
            continue
        head, rest = tokens[0], tokens[1:]
        if head == "gens":
            if seen_any or explicit_gens:
                raise ParseError("'gens' must be the first directive", lineno)
            explicit_gens = True
            for name in rest:
                if not _NAME_RE.match(name):
                    raise ParseError(f"invalid generator name {name!r}", lineno)
                if name in index:
                    raise ParseError(f"duplicate generator {name!r}", lineno)
                index[name] = len(names)
                names.append(name)
        elif head == "rel":
            seen_any = True
            word: list[int] = []
            for tok in rest:
                name, _, exp_text = tok.partition("^")
                if not _NAME_RE.match(name):
                    raise ParseError(f"invalid factor {tok!r}", lineno, raw.find(tok))
                if exp_text:
                    try:
                        exp = int(exp_text)
                    except ValueError:
                        raise ParseError(f"bad exponent in {tok!r}", lineno, raw.find(tok)) from None
                else:
                    exp = 1
                if exp == 0:
                    raise ParseError(f"zero exponent in {tok!r}", lineno, raw.find(tok))
                if name not in index:
                    if explicit_gens:
                        raise ParseError(f"undeclared generator {name!r}", lineno, raw.find(tok))
                    index[name] = len(names)
                    names.append(name)
                g = index[name] + 1
                letter = g if exp > 0 else -g
                word.extend([letter] * abs(exp))
            relators.append(tuple(word))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)

    return Presentation(tuple(names), tuple(relators))


def format_presentation(pres: Presentation, header: str | None = None) -> str:
    """Serialize to the presentation file format (round-trips via parse)."""
    lines = []
    if header:
        lines.append(f"# {header}")
    if pres.names:
        lines.append("gens " + " ".join(pres.names))
    for r in pres.relators:
        factors = []
        i = 0
        while i < len(r):
            j = i
            while j < len(r) and r[j] == r[i]:
                j += 1
            name = pres.names[abs(r[i]) - 1]
            exp = (j - i) if r[i] > 0 else -(j - i)
            factors.append(name if exp == 1 else f"{name}^{exp}")
            i = j
        lines.append("rel " + " ".join(factors))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# simplification moves


def _delete_generator(names: list[str], relators: list[Word], gen: int) -> None:
    """Remove generator `gen` (1-based letter value) entirely, reindexing."""
    del names[gen - 1]

    def remap(letter: int) -> int:
        a = abs(letter)
        if a > gen:
            a -= 1
        return a if letter > 0 else -a

    for i, r in enumerate(relators):
        relators[i] = free_reduce(remap(x) for x in r if abs(x) != gen)


def _substitute(names: list[str], relators: list[Word], gen: int, image: Word) -> None:
    """Replace every occurrence of generator `gen` by `image`, then delete it."""
    inv = invert_word(image)
    new: list[Word] = []
    for r in relators:
        out: list[int] = []
        for letter in r:
            if letter == gen:
                out.extend(image)
            elif letter == -gen:
                out.extend(inv)
            else:
                out.append(letter)
        new.append(free_reduce(out))
    relators[:] = new
    _delete_generator(names, relators, gen)


def simplify(pres: Presentation) -> Presentation:
    """Shorten a presentation without changing the group.

    Moves, applied lowest relator index first and looped to a fixed point:
    free reduction, dropping empty relators, killing generators with a
    length-1 relator, substituting away one side of a mixed length-2 relator,
    and eliminating a generator defined by a relator of the shape g^-1 w
    (with g not in w) whenever that does not increase the total length.
    Every surviving length-2 relator is a square x^2 or x^-2.
    """
    names = list(pres.names)
    relators = [free_reduce(r) for r in pres.relators]

    changed = True
    while changed:
        changed = False
        relators = [r for r in relators if r]

        # length-1 relators: the generator is trivial in the group
        for i, r in enumerate(relators):
            if len(r) == 1:
                del relators[i]
                _delete_generator(names, relators, abs(r[0]))
                changed = True
                break
        if changed:
            continue

        # mixed length-2 relators define one generator as (the inverse of)
        # another; eliminate the higher-indexed one
        for i, r in enumerate(relators):
            if len(r) == 2 and abs(r[0]) != abs(r[1]):
                a, b = r
                if abs(b) < abs(a):
                    a, b = b, a
                # relator reads a b = 1 (in some order), so b = a^-1
                image = (-a,) if b > 0 else (a,)
                del relators[i]
                _substitute(names, relators, abs(b), image)
                changed = True
                break
        if changed:
            continue

        # definition relators g^-1 w with g not in w: substitute g := w when
        # the substitution does not increase the total length
        for i, r in enumerate(relators):
            if len(r) < 3 or r[0] >= 0:
                continue
            g = -r[0]
            rest = r[1:]
            if any(abs(x) == g for x in rest):
                continue
            trial_names = list(names)
            trial = relators[:i] + relators[i + 1 :]
            _substitute(trial_names, trial, g, rest)
            if sum(len(w) for w in trial) <= sum(len(w) for w in relators):
                names, relators = trial_names, trial
                changed = True
                break

    return Presentation(tuple(names), tuple(relators))


def _fresh_names(taken: set[str]) -> Iterator[str]:
    k = 1
    while True:
        name = f"_t{k}"
        if name not in taken:
            taken.add(name)
            yield name
        k += 1


def triangularize(pres: Presentation) -> Presentation:
    """Split every relator of length >= 4 into length-3 relators.

    A relator r of length L contributes L-2 relators of length 3, built from
    L-3 fresh generators encoding its prefixes, so the number of length-3
    relators in the output is exactly t_cost(pres).
    """
    for r in pres.relators:
        if len(r) < 2:
            raise ValueError("triangularize requires all relators of length >= 2 (simplify first)")

    names = list(pres.names)
    fresh = _fresh_names(set(names))
    relators: list[Word] = []
    for r in pres.relators:
        if len(r) <= 3:
            relators.append(r)
            continue
        prefix_gens: list[int] = []
        for _ in range(len(r) - 3):
            names.append(next(fresh))
            prefix_gens.append(len(names))
        # u1 = r0 r1, u_i = u_{i-1} r_i, final relator closes the word
        relators.append((-prefix_gens[0], r[0], r[1]))
        for i in range(1, len(r) - 3):
            relators.append((-prefix_gens[i], prefix_gens[i - 1], r[i + 1]))
        relators.append((prefix_gens[-1], r[-2], r[-1]))
    return Presentation(tuple(names), tuple(relators))
