"""The substitution attached to a regular tiling and its iterates.

Each family gets its own rule table. The images are the successor lists of a
vertex type with every shared child kept by exactly one parent, so the orbit
of the axiom is a spanning tree of the dual graph and the length of the n-th
iterate is the number of tiles at distance n from the root tile.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .params import AXIOM, Family, Kind, Letter, TesselError, TilingParams, a, abar, b, bbar

DEFAULT_WORD_CAP = 10**7

Word = tuple[Letter, ...]


class ForeignLetter(TesselError, KeyError):
    pass


class WordTooLarge(TesselError):
    def __init__(self, length: int, cap: int):
        super().__init__(f"word of length {length} exceeds the cap of {cap} letters")
        self.length = length
        self.cap = cap


@dataclass(frozen=True)
class SubstitutionSystem:
    params: TilingParams
    alphabet: tuple[Letter, ...]  # a_0 excluded, canonical matrix order
    rules: Mapping[Letter, Word]
    axiom: Letter = AXIOM

    @property
    def seed(self) -> Letter:
        """The letter x with ``rules[a0] == x^p``."""
        return self.rules[self.axiom][0]

    def image(self, letter: Letter) -> Word:
        try:
            return self.rules[letter]
        except KeyError:
            raise ForeignLetter(f"{letter} is not in the alphabet of {self.params}") from None

    def describe(self) -> list[str]:
        """Human-readable rule lines, axiom first."""
        out = []
        for letter in (self.axiom, *self.alphabet):
            out.append(f"{letter} -> {format_word(self.rules[letter])}")
        return out


def format_word(word: Iterable[Letter]) -> str:
    return " ".join(str(x) for x in word)


def _power(x: Letter, n: int) -> Word:
    return (x,) * n


def _even_rules(p: int, k: int) -> dict[Letter, Word]:
    r = {AXIOM: _power(a(1), p)}
    for i in range(1, k - 1):
        r[a(i)] = (abar(2), *_power(a(1), p - 3), a(i + 1))
    r[a(k - 1)] = (abar(2), *_power(a(1), p - 3))
    r[a(k)] = (abar(2), *_power(a(1), p - 4), a(2))
    for j in range(2, k - 1):
        r[abar(j)] = (abar(j + 1), *_power(a(1), p - 3), a(2))
    r[abar(k - 1)] = (a(k), *_power(a(1), p - 3), a(2))
    return r


def _square_rules() -> dict[Letter, Word]:
    return {AXIOM: _power(a(1), 4), a(1): (a(2), a(1)), a(2): (a(2),)}


def _even_triangle_rules(k: int) -> dict[Letter, Word]:
    r = {AXIOM: _power(a(1), 3)}
    for i in range(1, k - 1):
        r[a(i)] = (abar(2), a(i + 1))
    r[a(k - 1)] = (abar(2),)
    r[a(k)] = (a(k + 1),)
    r[a(k + 1)] = (abar(3), a(3))
    for j in range(2, k - 1):
        r[abar(j)] = (abar(j + 1), a(2))
    r[abar(k - 1)] = (a(k), a(2))
    return r


def _hexagonal_triangle_rules() -> dict[Letter, Word]:
    return {
        AXIOM: _power(a(1), 3),
        a(1): (abar(2), a(2)),
        a(2): (abar(2),),
        a(3): (a(4),),
        a(4): (a(3),),
        abar(2): (a(3), a(2)),
    }


def _odd_rules(p: int, k: int) -> dict[Letter, Word]:
    ones3 = _power(b(1), p - 3)
    ones4 = _power(b(1), p - 4)
    r = {AXIOM: _power(b(1), p)}
    for i in range(1, k):
        r[a(i)] = (bbar(2), *ones3, a(i + 1))
        r[b(i)] = (bbar(2), *ones3, b(i + 1))
    r[a(k)] = (bbar(2), *ones4, b(2))
    r[b(k)] = (bbar(2), *ones4, a(1))
    for j in range(1, k - 1):
        r[abar(j)] = (abar(j + 1), *ones3, b(2))
    r[abar(k - 1)] = (*ones3, b(2))
    for j in range(2, k):
        r[bbar(j)] = (bbar(j + 1), *ones3, b(2))
    r[bbar(k)] = (abar(1), *ones4, b(2))
    return r


def _odd_triangle_rules(k: int) -> dict[Letter, Word]:
    r = {AXIOM: _power(b(1), 3)}
    r[a(1)] = (bbar(3), a(2))
    for i in range(2, k):
        r[a(i)] = (bbar(2), a(i + 1))
    r[a(k)] = (a(k + 1),)
    r[a(k + 1)] = (bbar(3), b(3))
    for i in range(1, k):
        r[b(i)] = (bbar(2), b(i + 1))
    r[b(k)] = (a(1),)
    r[abar(1)] = (abar(2), b(3))
    for j in range(2, k - 1):
        r[abar(j)] = (abar(j + 1), b(2))
    r[abar(k - 1)] = (b(2),)
    for j in range(2, k):
        r[bbar(j)] = (bbar(j + 1), b(2))
    r[bbar(k)] = (abar(1),)
    return r


def _trivalent_rules(p: int) -> dict[Letter, Word]:
    # the root's neighbours have a single predecessor, i.e. type a
    la, lb = a(1), b(1)
    return {AXIOM: _power(la, p), la: (*_power(la, p - 5), lb), lb: (*_power(la, p - 6), lb)}


@lru_cache(maxsize=None)
def build_system(params: TilingParams) -> SubstitutionSystem:
    """Instantiate the substitution for ``params``.

    >>> from tessel.params import TilingParams
    >>> print(*build_system(TilingParams(4, 4)).describe(), sep="\\n")
    a0 -> a1 a1 a1 a1
    a1 -> a2 a1
    a2 -> a2
    """
    p, k, fam = params.p, params.k, params.family
    if fam is Family.E1:
        rules = _even_rules(p, k)
    elif fam is Family.E2:
        rules = _square_rules()
    elif fam is Family.E3:
        rules = _even_triangle_rules(k)
    elif fam is Family.E4:
        rules = _hexagonal_triangle_rules()
    elif fam is Family.O1:
        rules = _odd_rules(p, k)
    elif fam is Family.O2:
        rules = _odd_triangle_rules(k)
    else:
        rules = _trivalent_rules(p)
    alphabet = tuple(sorted(x for x in rules if x.kind is not Kind.AXIOM))
    for letter, word in rules.items():
        for x in word:
            if x not in rules or x.kind is Kind.AXIOM:
                raise AssertionError(f"{params}: rule for {letter} emits foreign letter {x}")
    return SubstitutionSystem(params, alphabet, rules)


def apply(system: SubstitutionSystem, word: Sequence[Letter]) -> Word:
    out: list[Letter] = []
    for letter in word:
        out.extend(system.image(letter))
    return tuple(out)


def generation_word(system: SubstitutionSystem, n: int, cap: int = DEFAULT_WORD_CAP) -> Word:
    """The n-th iterate of the axiom, refused up front if longer than ``cap``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    length = u_sequence(system, n)[n]
    if length > cap:
        raise WordTooLarge(length, cap)
    word: Word = (system.axiom,)
    for _ in range(n):
        word = apply(system, word)
    return word


class LetterCountVector(Mapping[Letter, int]):
    """Exact letter counts of one word; missing letters count zero."""

    __slots__ = ("_counts",)

    def __init__(self, counts: Mapping[Letter, int] | None = None):
        self._counts = {x: int(c) for x, c in (counts or {}).items() if c}
        if any(c < 0 for c in self._counts.values()):
            raise ValueError("letter counts must be nonnegative")

    @classmethod
    def of_word(cls, word: Iterable[Letter]) -> "LetterCountVector":
        return cls(Counter(word))

    def __getitem__(self, letter: Letter) -> int:
        return self._counts.get(letter, 0)

    def __iter__(self):
        return iter(sorted(self._counts))

    def __len__(self) -> int:
        return len(self._counts)

    def __eq__(self, other) -> bool:
        if isinstance(other, LetterCountVector):
            return self._counts == other._counts
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._counts.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{x}: {self._counts[x]}" for x in self)
        return f"LetterCountVector({{{inner}}})"

    def total(self) -> int:
        return sum(self._counts.values())

    def push(self, system: SubstitutionSystem) -> "LetterCountVector":
        """Counts of the image word under one application of the rules."""
        nxt: Counter = Counter()
        for letter, c in self._counts.items():
            for x in system.image(letter):
                nxt[x] += c
        return LetterCountVector(nxt)


def iterate_counts(system: SubstitutionSystem, n: int,
                   start: Letter | None = None) -> list[LetterCountVector]:
    """Count vectors of the iterates 0..n of ``start`` (the axiom by default)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    vec = LetterCountVector({start or system.axiom: 1})
    out = [vec]
    for _ in range(n):
        vec = vec.push(system)
        out.append(vec)
    return out


def utilde_sequence(system: SubstitutionSystem, n_max: int) -> list[int]:
    """Word lengths of the iterates of the seed letter (the letter the axiom repeats)."""
    return [v.total() for v in iterate_counts(system, n_max, start=system.seed)]


def u_sequence(system: SubstitutionSystem, n_max: int) -> list[int]:
    """Tiles per generation, ``u_0 .. u_{n_max}``."""
    u = [v.total() for v in iterate_counts(system, n_max)]
    p = system.params.p
    ut = utilde_sequence(system, max(n_max - 1, 0))
    for n in range(n_max):
        if u[n + 1] != p * ut[n]:
            raise AssertionError(f"u_{n + 1} = {u[n + 1]} but p * utilde_{n} = {p * ut[n]}")
    return u
