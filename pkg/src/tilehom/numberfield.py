"""Real number fields Q(t) given by the minimal polynomial of t.

An element is a tuple of Fractions ``(a_0, ..., a_{deg-1})`` meaning
``sum a_j t^j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import solve_rational

Element = tuple  # tuple[Fraction, ...]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def has_rational_root(coeffs: list[int]) -> bool:
    """Rational root test for an integer polynomial (coefficients ascending)."""
    if coeffs[0] == 0:
        return True
    lead, const = coeffs[-1], coeffs[0]
    for p in _divisors(const):
        for q in _divisors(lead):
            for sign in (1, -1):
                x = Fraction(sign * p, q)
                if sum(c * x**i for i, c in enumerate(coeffs)) == 0:
                    return True
    return False


@dataclass(frozen=True)
class NumberField:
    """Q[x]/(min_poly); ``min_poly`` lists integer coefficients from x^0 upwards."""

    min_poly: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.min_poly)
        object.__setattr__(self, "min_poly", coeffs)
        if len(coeffs) < 2 or coeffs[-1] != 1:
            raise ValueError(f"minimal polynomial must be monic of degree >= 1: {coeffs}")
        if not self.is_irreducible():
            raise ValueError(f"polynomial {coeffs} is reducible over Q")

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    def is_irreducible(self) -> bool:
        deg = self.degree
        if deg == 1:
            return True
        if deg <= 3:
            return not has_rational_root(list(self.min_poly))
        import sympy

        x = sympy.Symbol("x")
        return sympy.Poly(list(reversed(self.min_poly)), x, domain="QQ").is_irreducible

    # arithmetic

    def element(self, *coeffs) -> Element:
        vals = [Fraction(c) for c in coeffs] + [Fraction(0)] * (self.degree - len(coeffs))
        if len(vals) != self.degree:
            raise ValueError(f"too many coefficients for degree {self.degree}")
        return tuple(vals)

    def zero(self) -> Element:
        return (Fraction(0),) * self.degree

    def one(self) -> Element:
        return self.element(1)

    def gen(self) -> Element:
        return self.element(0, 1) if self.degree > 1 else self.element(-self.min_poly[0])

    def add(self, a: Element, b: Element) -> Element:
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a: Element, b: Element) -> Element:
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a: Element) -> Element:
        return tuple(-x for x in a)

    def scale(self, a: Element, q) -> Element:
        q = Fraction(q)
        return tuple(x * q for x in a)

    def mul(self, a: Element, b: Element) -> Element:
        deg = self.degree
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        # reduce with t^deg = -sum c_i t^i
        low = self.min_poly[:-1]
        for k in range(len(prod) - 1, deg - 1, -1):
            c = prod[k]
            if c:
                prod[k] = Fraction(0)
                for i, ci in enumerate(low):
                    prod[k - deg + i] -= c * ci
        return tuple(prod[:deg])

    def mul_matrix(self, a: Element) -> list[list[Fraction]]:
        """Rows: coefficient vectors of a * t^j, j = 0..deg-1."""
        out = []
        basis = self.one()
        for _ in range(self.degree):
            out.append(list(self.mul(a, basis)))
            basis = self.mul(basis, self.gen()) if self.degree > 1 else basis
        return out

    def inv(self, a: Element) -> Element:
        if not any(a):
            raise ZeroDivisionError("inverse of zero in number field")
        x = solve_rational(self.mul_matrix(a), list(self.one()))
        return tuple(x)

    def div(self, a: Element, b: Element) -> Element:
        return self.mul(a, self.inv(b))
