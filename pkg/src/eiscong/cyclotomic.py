"""Exact arithmetic in Q(zeta_m), power-basis representation mod Phi_m.

Z[zeta_f, phi] (phi of order k) is realized as Z[zeta_lcm(f,k)]: values of phi
are k-th roots of unity, so a single power basis carries all compositum
arithmetic.  Degrees are capped at 200; nothing at desk scale needs more.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from . import polys
from .arith import DomainError, divisors, euler_phi

DEGREE_CAP = 200


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Phi_m as ascending integer coefficients, by exact recursive division."""
    if m < 1:
        raise DomainError(f"cyclotomic_polynomial requires m >= 1 (got {m})")
    f = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in divisors(m):
        if d < m:
            f = polys.divmod_int_exact(f, list(cyclotomic_polynomial(d)))
    return tuple(f)


@lru_cache(maxsize=None)
def CyclotomicField(m: int) -> "_CycField":
    deg = euler_phi(m)
    if deg > DEGREE_CAP:
        raise DomainError(
            f"Q(zeta_{m}) has degree {deg} > {DEGREE_CAP}; refusing (desk-scale cap)"
        )
    return _CycField(m, deg, cyclotomic_polynomial(m))


@dataclass(frozen=True)
class _CycField:
    m: int
    degree: int
    modulus: tuple[int, ...]  # Phi_m, ascending, monic

    def __repr__(self):
        return f"Q(zeta_{self.m})"

    def element(self, coeffs) -> "CycElement":
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > self.degree:
            cs = polys.mod(cs, list(self.modulus))
        cs += [Fraction(0)] * (self.degree - len(cs))
        return CycElement(self, tuple(cs[: self.degree]))

    def zero(self) -> "CycElement":
        return self.element([])

    def one(self) -> "CycElement":
        return self.element([1])

    def from_rational(self, q) -> "CycElement":
        return self.element([Fraction(q)])

    def zeta(self, j: int = 1) -> "CycElement":
        """zeta_m ** j."""
        j %= self.m
        return self.element([0] * j + [1])

    def galois_group(self) -> list[int]:
        return [a for a in range(1, self.m + 1) if gcd(a, self.m) == 1]


def compositum(a: _CycField, b: _CycField) -> _CycField:
    return CyclotomicField(lcm(a.m, b.m))


@dataclass(frozen=True)
class CycElement:
    """Element of Q(zeta_m) as Fraction coefficients on 1, zeta, ..., zeta^(deg-1)."""

    field: _CycField
    coeffs: tuple[Fraction, ...]

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(f"{self} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def denominator(self) -> int:
        d = 1
        for c in self.coeffs:
            d = lcm(d, c.denominator)
        return d

    # -- field promotion ---------------------------------------------------

    def embed(self, m: int) -> "CycElement":
        """Image in Q(zeta_m) under zeta_a -> zeta_m^(m/a); requires a | m."""
        a = self.field.m
        if m % a:
            raise DomainError(f"cannot embed Q(zeta_{a}) into Q(zeta_{m})")
        if m == a:
            return self
        target = CyclotomicField(m)
        step = m // a
        out = [Fraction(0)] * m
        for i, c in enumerate(self.coeffs):
            out[(i * step) % m] += c
        return target.element(out)

    @staticmethod
    def promote(a: "CycElement", b: "CycElement"):
        if a.field.m == b.field.m:
            return a, b
        m = lcm(a.field.m, b.field.m)
        return a.embed(m), b.embed(m)

    # -- ring/field operations ----------------------------------------------

    def _coerce(self, other) -> "CycElement | None":
        if isinstance(other, CycElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = CycElement.promote(self, o)
        return a.field.element([x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return self.field.element([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = CycElement.promote(self, o)
        prod = polys.mul(list(a.coeffs), list(b.coeffs))
        return a.field.element(prod)

    __rmul__ = __mul__

    def inverse(self) -> "CycElement":
        """Field inverse via extended gcd with Phi_m."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0 in cyclotomic field")
        g, u, _ = polys.gcdex(list(self.coeffs), [Fraction(c) for c in self.field.modulus])
        if polys.degree(g) != 0:
            raise ArithmeticError("representative not invertible mod Phi_m")
        return self.field.element(polys.scale(u, Fraction(1) / g[0]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = CycElement.promote(self, o)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = CycElement.promote(self, o)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.field.m, self.coeffs))

    # -- Galois action -------------------------------------------------------

    def galois(self, j: int) -> "CycElement":
        """sigma_j: zeta -> zeta^j, for gcd(j, m) = 1."""
        m = self.field.m
        if gcd(j, m) != 1:
            raise DomainError(f"sigma_{j} is not a Galois element for m={m}")
        out = [Fraction(0)] * m
        for i, c in enumerate(self.coeffs):
            out[(i * j) % m] += c
        return self.field.element(out)

    def conjugate(self) -> "CycElement":
        """Complex conjugation zeta -> zeta^(-1)."""
        return self.galois(self.field.m - 1) if self.field.m > 1 else self

    def norm_to_Q(self) -> Fraction:
        """N_{Q(zeta_m)/Q}: resultant of Phi_m with the representative."""
        if self.is_zero():
            return Fraction(0)
        r = polys.resultant([Fraction(c) for c in self.field.modulus], list(self.coeffs))
        return Fraction(r)

    # -- display ---------------------------------------------------------------

    def __repr__(self):
        return f"CycElement({self})"

    def __str__(self):
        m = self.field.m
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                z = f"z{m}" if i == 1 else f"z{m}^{i}"
                if c == 1:
                    terms.append(z)
                elif c == -1:
                    terms.append(f"-{z}")
                else:
                    terms.append(f"{c}*{z}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" + {t}" if not t.startswith("-") else f" - {t[1:]}"
        return out


def embed(e: CycElement, m: int) -> CycElement:
    return e.embed(m)


def norm_to_Q(e: CycElement) -> Fraction:
    return e.norm_to_Q()
