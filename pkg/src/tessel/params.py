"""Tiling parameters, letters and the exception hierarchy shared by all modules."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field


class TesselError(Exception):
    """Base class for every error raised by this package."""


class InvalidParams(TesselError, ValueError):
    pass


class UnsupportedFamily(TesselError, ValueError):
    pass


class Curvature(enum.Enum):
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"


class Family(enum.Enum):
    """The seven parameter families for which a substitution exists."""

    E1 = "E1"  # q = 2k, k >= 3, p >= 4
    E2 = "E2"  # q = 4, p = 4
    E3 = "E3"  # q = 2k, k >= 4, p = 3
    E4 = "E4"  # q = 6, p = 3
    O1 = "O1"  # q = 2k + 1, k >= 2, p >= 4
    O2 = "O2"  # q = 2k + 1, k >= 3, p = 3
    O3 = "O3"  # q = 3, p >= 6

    @property
    def even(self) -> bool:
        return self.value.startswith("E")


def _family(p: int, q: int) -> Family:
    k = q // 2
    if q % 2 == 0:
        if q == 4:
            if p == 4:
                return Family.E2
            raise UnsupportedFamily(
                f"q=4 with p≥5 is not defined by the source construction (got p={p}, q={q})"
            )
        if p >= 4:
            return Family.E1
        return Family.E4 if k == 3 else Family.E3
    if q == 3:
        return Family.O3
    return Family.O1 if p >= 4 else Family.O2


@dataclass(frozen=True)
class TilingParams:
    """A validated Schläfli pair ``{p, q}``: p-gons, q of them around each vertex.

    The dual graph of the tiling has degree ``p`` and its faces are ``q``-cycles.
    Raises :class:`InvalidParams` for non-admissible pairs and
    :class:`UnsupportedFamily` for ``q = 4, p >= 5``.
    """

    p: int
    q: int
    curvature: Curvature = field(init=False, compare=False)
    family: Family = field(init=False, compare=False)

    def __post_init__(self):
        for name in ("p", "q"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidParams(f"{name} must be an integer, got {value!r}")
        if self.p < 3 or self.q < 3:
            raise InvalidParams(f"p and q must be >= 3 (got p={self.p}, q={self.q})")
        excess = (self.p - 2) * (self.q - 2)
        if excess < 4:
            raise InvalidParams(
                f"{{{self.p},{self.q}}} is spherical: (p-2)(q-2) = {excess} < 4"
            )
        curvature = Curvature.EUCLIDEAN if excess == 4 else Curvature.HYPERBOLIC
        object.__setattr__(self, "curvature", curvature)
        object.__setattr__(self, "family", _family(self.p, self.q))

    @property
    def k(self) -> int:
        """Half the cycle length, rounded down (``q = 2k`` or ``q = 2k + 1``)."""
        return self.q // 2

    @property
    def hyperbolic(self) -> bool:
        return self.curvature is Curvature.HYPERBOLIC

    def __str__(self) -> str:
        return f"{{{self.p},{self.q}}}"


class Kind(enum.IntEnum):
    # declaration order is the canonical matrix label order
    A = 0
    B = 1
    ABAR = 2
    BBAR = 3
    AXIOM = 4


_KIND_NAMES = {Kind.A: "a", Kind.B: "b", Kind.ABAR: "abar", Kind.BBAR: "bbar"}
_NAME_KINDS = {v: k for k, v in _KIND_NAMES.items()}


@dataclass(frozen=True, order=True)
class Letter:
    """A vertex type. ``Letter(Kind.A, 3)`` is a_3, ``Letter(Kind.ABAR, 2)`` is the barred a_2.

    The q = 3 letters ``a`` and ``b`` are stored as index 1 of their kinds; the
    axiom a_0 has its own kind and index 0. Ordering follows the matrix labels
    a_1, a_2, ..., b_1, ..., abar_1, ..., bbar_2, ...
    """

    kind: Kind
    index: int = 0

    def __str__(self) -> str:
        if self.kind is Kind.AXIOM:
            return "a0"
        return f"{_KIND_NAMES[self.kind]}{self.index}"

    def __repr__(self) -> str:
        return f"Letter({self})"

    @classmethod
    def parse(cls, text: str) -> "Letter":
        """Inverse of ``str``: ``"a0"``, ``"a3"``, ``"bbar2"`` ..."""
        if text == "a0":
            return AXIOM
        for name in ("abar", "bbar", "a", "b"):
            if text.startswith(name) and text[len(name):].isdigit():
                return cls(_NAME_KINDS[name], int(text[len(name):]))
        raise ValueError(f"not a letter: {text!r}")


AXIOM = Letter(Kind.AXIOM, 0)


def a(i: int) -> Letter:
    return Letter(Kind.A, i)


def b(i: int) -> Letter:
    return Letter(Kind.B, i)


def abar(j: int) -> Letter:
    return Letter(Kind.ABAR, j)


def bbar(j: int) -> Letter:
    return Letter(Kind.BBAR, j)
