"""Dense integer polynomials with exact arithmetic."""
from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest
from typing import Iterable, Sequence


class IntPolynomial:
    """Polynomial with integer coefficients, stored in ascending degree.

    ``IntPolynomial([1, -3, 1])`` is ``x^2 - 3x + 1``. Trailing zero
    coefficients are stripped, so the zero polynomial has no coefficients and
    degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def from_descending(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        return cls(reversed(list(coeffs)))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * degree + [coeff])

    @classmethod
    def all_ones(cls, degree: int) -> "IntPolynomial":
        """``x^degree + ... + x + 1``."""
        return cls([1] * (degree + 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        return IntPolynomial(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-a for a in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = IntPolynomial([1])
        for _ in range(n):
            out = out * self
        return out

    def divmod_monic(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Quotient and remainder by a monic divisor (stays in the integers)."""
        if not divisor.is_monic():
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        d = divisor.degree
        if len(rem) - 1 < d:
            return IntPolynomial(), IntPolynomial(rem)
        quot = [0] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c:
                quot[i - d] = c
                for j, b in enumerate(divisor.coeffs):
                    rem[i - d + j] -= c * b
        return IntPolynomial(quot), IntPolynomial(rem[:d])

    def __call__(self, x):
        """Horner evaluation; exact for int and Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def trailing_zeros(self) -> int:
        """Multiplicity of the root 0."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def shift_down(self, n: int) -> "IntPolynomial":
        """Divide by ``x^n`` (the low coefficients must be zero)."""
        if any(self.coeffs[:n]):
            raise ValueError(f"not divisible by x^{n}")
        return IntPolynomial(self.coeffs[n:])

    def normalized(self) -> "IntPolynomial":
        """The same polynomial with a positive leading coefficient."""
        return -self if self.leading < 0 else self

    def descending(self) -> list[int]:
        return list(reversed(self.coeffs))

    def matrix_eval(self, matrix: Sequence[Sequence[int]]) -> list[list[int]]:
        """``self(M)`` for a square integer matrix, exactly."""
        n = len(matrix)
        acc = [[0] * n for _ in range(n)]
        for c in reversed(self.coeffs):
            acc = _matmul(acc, matrix)
            for i in range(n):
                acc[i][i] += c
        return acc

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if i == 1 else f"x^{i}")
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _coerce(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial([x])
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def _matmul(a, b):
    n, m, r = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * r for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(m):
            x = ai[k]
            if x:
                bk = b[k]
                for j in range(r):
                    oi[j] += x * bk[j]
    return out


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> list[Fraction]:
    """Monic gcd over the rationals, ascending coefficients."""
    x = [Fraction(c) for c in a.coeffs]
    y = [Fraction(c) for c in b.coeffs]
    while y:
        x, y = y, _frac_rem(x, y)
    return [c / x[-1] for c in x] if x else []


def _frac_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        shift = len(a) - len(b)
        for j, bc in enumerate(b):
            a[shift + j] -= c * bc
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _frac_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def squarefree_part(poly: IntPolynomial) -> list[Fraction]:
    g = poly_gcd(poly, poly.derivative())
    if len(g) <= 1:
        return [Fraction(c) for c in poly.coeffs]
    q = list(Fraction(c) for c in poly.coeffs)
    # exact division by the monic gcd
    out = [Fraction(0)] * (len(q) - len(g) + 1)
    for i in range(len(q) - 1, len(g) - 2, -1):
        c = q[i]
        out[i - len(g) + 1] = c
        for j, gc in enumerate(g):
            q[i - len(g) + 1 + j] -= c * gc
    return out


class SturmChain:
    """Sturm sequence of the square-free part of a polynomial."""

    def __init__(self, poly: IntPolynomial):
        p0 = squarefree_part(poly)
        p1 = [i * c for i, c in enumerate(p0) if i]
        chain = [p0, p1]
        while chain[-1]:
            r = _frac_rem(chain[-2], chain[-1])
            if not r:
                break
            chain.append([-c for c in r])
        self.chain = chain

    def variations(self, x: Fraction) -> int:
        signs = [s for s in (_sign(_frac_eval(p, x)) for p in self.chain) if s]
        return sum(1 for s, t in zip(signs, signs[1:]) if s != t)

    def variations_at_infinity(self) -> int:
        signs = [_sign(p[-1]) for p in self.chain if p]
        return sum(1 for s, t in zip(signs, signs[1:]) if s != t)

    def roots_above(self, x: Fraction) -> int:
        """Distinct real roots strictly greater than ``x``."""
        return self.variations(x) - self.variations_at_infinity()

    def is_root(self, x: Fraction) -> bool:
        return _frac_eval(self.chain[0], x) == 0


def _sign(x) -> int:
    return (x > 0) - (x < 0)
