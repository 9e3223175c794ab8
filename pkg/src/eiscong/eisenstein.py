"""Non-rational Eisenstein series on Gamma0(N): q-expansions, refinements,
Hecke action, and the closed-form twisted L-values Lambda / Lambda_pm.

The base series attached to a primitive nontrivial character phi of conductor
f has coefficients b_n = sum_{bc=n} phi(c) phi^{-1}(b) b and level f^2.  The
critical refinement at l sends g(z) to g(z) - phi(l) g(lz); the ordinary one
to g(z) - l phi^{-1}(l) g(lz); both are the identity for l | f.  Scaling by
gamma_d multiplies the argument by d and the expansion by d.  All coefficients
live in Q(zeta_k), k = order(phi); nothing is ever evaluated numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, prod

from .arith import DomainError, is_prime, prime_divisors, valuation
from .characters import DirichletCharacter, bernoulli_B1, chi_in_XS, gauss_sum
from .cyclotomic import CycElement, CyclotomicField


@dataclass(frozen=True)
class QExpansion:
    """Truncated expansion sum a_n q^n, coefficients exact CycElements.

    `precision` B means a_1..a_B are valid; `a0` is the constant term at the
    cusp infinity (identically 0 for every series built here).
    """

    level: int
    precision: int
    coeffs: tuple[CycElement, ...]
    a0: CycElement

    def coefficient(self, n: int) -> CycElement:
        if not 1 <= n <= self.precision:
            raise DomainError(f"coefficient a_{n} outside valid precision {self.precision}")
        return self.coeffs[n - 1]

    def truncate(self, B: int) -> "QExpansion":
        if B > self.precision:
            raise DomainError("cannot extend precision by truncation")
        return QExpansion(self.level, B, self.coeffs[:B], self.a0)

    def scale(self, c) -> "QExpansion":
        return QExpansion(self.level, self.precision, tuple(a * c for a in self.coeffs), self.a0 * c)

    def __sub__(self, other: "QExpansion") -> "QExpansion":
        B = min(self.precision, other.precision)
        if self.level != other.level:
            raise DomainError("level mismatch in q-expansion arithmetic")
        return QExpansion(
            self.level,
            B,
            tuple(self.coeffs[i] - other.coeffs[i] for i in range(B)),
            self.a0 - other.a0,
        )

    def equals_up_to(self, other: "QExpansion", B: int) -> bool:
        if B > min(self.precision, other.precision):
            raise DomainError("comparison bound exceeds available precision")
        return all(self.coeffs[i] == other.coeffs[i] for i in range(B)) and self.a0 == other.a0

    def is_scalar_multiple_of(self, other: "QExpansion", B: int):
        """The scalar c with self = c * other up to q^B, or None."""
        if B > min(self.precision, other.precision):
            raise DomainError("comparison bound exceeds available precision")
        c = None
        for i in range(B):
            if other.coeffs[i].is_zero():
                if not self.coeffs[i].is_zero():
                    return None
                continue
            ratio = self.coeffs[i] / other.coeffs[i]
            if c is None:
                c = ratio
            elif c != ratio:
                return None
        return c

    # -- display ------------------------------------------------------------

    def pretty(self, B: int | None = None) -> str:
        """Paper-style one-line form: q - 3q^2 + 4q^3 + ..."""
        B = self.precision if B is None else min(B, self.precision)
        parts = []
        for n in range(1, B + 1):
            a = self.coeffs[n - 1]
            if a.is_zero():
                continue
            qn = "q" if n == 1 else f"q^{n}"
            if a.is_rational():
                r = a.rational_value()
                if r == 1:
                    term, sign = qn, "+"
                elif r == -1:
                    term, sign = qn, "-"
                else:
                    term, sign = f"{abs(r)}*{qn}", ("+" if r > 0 else "-")
            else:
                term, sign = f"({a})*{qn}", "+"
            parts.append((sign, term))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out

    def machine_lines(self, B: int | None = None) -> list[str]:
        """Machine-readable form: one `n: <polynomial in z_k>` per line."""
        B = self.precision if B is None else min(B, self.precision)
        return [f"{n}: {self.coeffs[n - 1]}" for n in range(1, B + 1)]


def e_phi(phi: DirichletCharacter, B: int) -> QExpansion:
    """The level-f^2 Eisenstein series with b_n = sum_{bc=n} phi(c) phi^{-1}(b) b."""
    if phi.is_trivial():
        raise DomainError("e_phi requires a nontrivial character (rational series are out of scope)")
    if not phi.is_primitive():
        raise DomainError("e_phi requires a primitive character")
    f, k = phi.modulus, phi.order
    K = CyclotomicField(k)
    coeffs = []
    for n in range(1, B + 1):
        acc = [Fraction(0)] * k
        for b in range(1, n + 1):
            if n % b:
                continue
            c = n // b
            ec = phi.value_exponent(c)
            eb = phi.value_exponent(b)
            if ec is None or eb is None:
                continue
            acc[(ec - eb) % k] += b
        coeffs.append(K.element(acc))
    return QExpansion(f * f, B, tuple(coeffs), K.zero())


def _refine(g: QExpansion, l: int, phi: DirichletCharacter, multiplier: CycElement) -> QExpansion:
    """a_n <- a_n - multiplier * a_{n/l}; level gains a factor l."""
    coeffs = []
    for n in range(1, g.precision + 1):
        a = g.coeffs[n - 1]
        if n % l == 0:
            a = a - multiplier * g.coeffs[n // l - 1]
        coeffs.append(a)
    return QExpansion(g.level * l, g.precision, tuple(coeffs), g.a0)


def refine_critical(g: QExpansion, l: int, phi: DirichletCharacter) -> QExpansion:
    """[l]^+: g(z) - phi(l) g(lz); identity on coefficients when l | f."""
    if not is_prime(l):
        raise DomainError("refinement requires a prime")
    if phi.modulus % l == 0:
        return QExpansion(g.level * l, g.precision, g.coeffs, g.a0)
    if g.level % l == 0:
        raise DomainError(f"critical refinement at l={l} already dividing the level")
    return _refine(g, l, phi, phi.value(l))


def refine_ordinary(g: QExpansion, q: int, phi: DirichletCharacter) -> QExpansion:
    """[q]^-: g(z) - q phi^{-1}(q) g(qz); identity on coefficients when q | f."""
    if not is_prime(q):
        raise DomainError("refinement requires a prime")
    if phi.modulus % q == 0:
        return QExpansion(g.level * q, g.precision, g.coeffs, g.a0)
    if g.level % q == 0:
        raise DomainError(f"ordinary refinement at q={q} already dividing the level")
    return _refine(g, q, phi, phi.inverse().value(q) * q)


def slash_scale(g: QExpansion, d: int) -> QExpansion:
    """g|_{gamma_d}: new a_{dn} = d * a_n, other coefficients 0."""
    if d < 1:
        raise DomainError("slash_scale requires d >= 1")
    if d == 1:
        return g
    field = g.coeffs[0].field if g.coeffs else g.a0.field
    zero = field.zero()
    B = g.precision * d
    coeffs = [zero] * B
    for n in range(1, g.precision + 1):
        coeffs[d * n - 1] = g.coeffs[n - 1] * d
    return QExpansion(g.level * d, B, tuple(coeffs), g.a0 * d)


def hecke_Tl(g: QExpansion, l: int) -> QExpansion:
    """Weight-2 T_l for l not dividing the level: a_n <- a_{ln} + l a_{n/l}."""
    if not is_prime(l):
        raise DomainError("hecke_Tl requires a prime")
    if g.level % l == 0:
        raise DomainError(f"l={l} divides the level; use hecke_Uq")
    B = g.precision // l
    coeffs = []
    for n in range(1, B + 1):
        a = g.coeffs[l * n - 1]
        if n % l == 0:
            a = a + l * g.coeffs[n // l - 1]
        coeffs.append(a)
    return QExpansion(g.level, B, tuple(coeffs), g.a0 * (l + 1))


def hecke_Uq(g: QExpansion, q: int) -> QExpansion:
    """U_q for q dividing the level: a_n <- a_{qn}."""
    if not is_prime(q):
        raise DomainError("hecke_Uq requires a prime")
    if g.level % q:
        raise DomainError(f"q={q} does not divide the level; use hecke_Tl")
    B = g.precision // q
    coeffs = [g.coeffs[q * n - 1] for n in range(1, B + 1)]
    return QExpansion(g.level, B, tuple(coeffs), g.a0 * q)


# --------------------------------------------------------------- parameters


@dataclass(frozen=True)
class EisensteinParams:
    """(phi, N, M, L) with f^2 M L | N and (fM, L) = 1, plus derived data."""

    phi: DirichletCharacter
    N: int
    M: int
    L: int

    def __post_init__(self):
        phi, N, M, L = self.phi, self.N, self.M, self.L
        if phi.is_trivial() or not phi.is_primitive():
            raise DomainError("EisensteinParams needs a primitive nontrivial character")
        f = phi.modulus
        if M < 1 or L < 1 or N < 1:
            raise DomainError("N, M, L must be positive")
        if N % (f * f * M * L):
            raise DomainError(f"f^2*M*L = {f*f*M*L} must divide N = {N}")
        if gcd(f * M, L) != 1:
            raise DomainError(f"(fM, L) = {gcd(f*M, L)} != 1")
        for p in prime_divisors(f):
            n_p = valuation(N, p) - 2 * valuation(f, p)
            if n_p > 1 and valuation(M, p) != n_p:
                raise DomainError(
                    f"side condition violated at p={p}: nu_p(N/f^2)={n_p} > 1 "
                    f"requires nu_p(M)={n_p}, got {valuation(M, p)}"
                )

    @property
    def f(self) -> int:
        return self.phi.modulus

    @property
    def T1(self) -> int:
        return prod(l for l in prime_divisors(self.M) if self.f % l)

    @property
    def T2(self) -> int:
        return prod(prime_divisors(self.L)) if self.L > 1 else 1

    @property
    def S_phi(self) -> tuple[int, ...]:
        out = []
        for q in prime_divisors(self.T2) if self.T2 > 1 else ():
            e = self.phi.value_exponent(q)
            if e is not None and (2 * e) % self.phi.order == 0:
                out.append(q)
        return tuple(out)

    @property
    def T2_phi(self) -> int:
        return prod(self.S_phi) if self.S_phi else 1

    @property
    def xi(self) -> DirichletCharacter:
        """Primitive character attached to phi^2."""
        return (self.phi * self.phi).primitive_part()

    def field(self):
        """Q(zeta_f, phi) realized as Q(zeta_lcm(f, k))."""
        return CyclotomicField(lcm(self.f, self.phi.order))

    def label(self) -> str:
        return f"E[{self.phi.label()};M={self.M},L={self.L}]@{self.N}"


def build_E(params: EisensteinParams, B: int) -> QExpansion:
    """E_{phi,M,L} at level N: refinements, then scaling by ML/(T1 T2)."""
    phi = params.phi
    g = e_phi(phi, B)
    for l in prime_divisors(params.T1) if params.T1 > 1 else ():
        g = refine_critical(g, l, phi)
    for q in prime_divisors(params.T2) if params.T2 > 1 else ():
        g = refine_ordinary(g, q, phi)
    scale = params.M * params.L // (params.T1 * params.T2)
    g = slash_scale(g, scale)
    assert params.N % g.level == 0
    return QExpansion(params.N, B, g.coeffs[:B], g.a0)


def tl_eigenvalue(phi: DirichletCharacter, r: int) -> CycElement:
    """phi(r) + r phi^{-1}(r) for r coprime to f T1 T2."""
    return phi.value(r) + phi.inverse().value(r) * r


def uq_eigenvalue(params: EisensteinParams, q: int) -> CycElement:
    """U_q eigenvalue on E_{phi,M,L}: 0 for q | f, q phi^{-1}(q) on T1, phi(q) on T2."""
    K = CyclotomicField(params.phi.order)
    if params.f % q == 0:
        return K.zero()
    if params.T1 % q == 0:
        return params.phi.inverse().value(q) * q
    if params.T2 % q == 0:
        return params.phi.value(q)
    raise DomainError(f"q={q} does not divide f*T1*T2 for {params.label()}")


# ----------------------------------------------------------- twisted L-values


def lambda_twisted(params: EisensteinParams, chi: DirichletCharacter) -> CycElement:
    """Lambda(E_{phi,M,L}, chi, 1) in closed form, chi primitive with
    conductor coprime to N."""
    if not chi.is_primitive() or chi.is_trivial():
        raise DomainError("lambda_twisted requires a primitive nontrivial twist")
    m_chi = chi.modulus
    if gcd(m_chi, params.N) != 1:
        raise DomainError(f"conductor {m_chi} must be coprime to N = {params.N}")
    phi = params.phi
    phi_inv = phi.inverse()
    T1, T2 = params.T1, params.T2
    front = phi.value(m_chi) / (gauss_sum(phi_inv) * 2)
    front = front * chi.value(params.f * params.M * params.L // (T1 * T2))
    for l in prime_divisors(T1) if T1 > 1 else ():
        front = front * (1 - chi.value(l) * phi.value(l) * Fraction(1, l))
    for q in prime_divisors(T2) if T2 > 1 else ():
        front = front * (1 - chi.value(q) * phi_inv.value(q))
    b1a = bernoulli_B1(chi.inverse() * phi_inv)
    b1b = bernoulli_B1(chi * phi_inv)
    return front * b1a * b1b


def lambda_pm(params: EisensteinParams, chi: DirichletCharacter) -> CycElement:
    """Lambda_pm(E_{phi,M,L}, chi, 1) for chi in X_S^{-phi(-1)}."""
    if not chi_in_XS(chi, params.N):
        raise DomainError("chi is not in X_S for this level")
    phi = params.phi
    if chi.is_even() == phi.is_even():
        raise DomainError("chi must lie in X_S^{-phi(-1)} (opposite parity to phi)")
    m_chi = chi.modulus
    phi_inv = phi.inverse()
    T1, T2 = params.T1, params.T2
    front = phi.value(-m_chi) * gauss_sum(phi) * Fraction(1, params.f)
    front = front * chi.value(params.f * params.M * params.L // (T1 * T2))
    for l in prime_divisors(T1) if T1 > 1 else ():
        front = front * (1 - chi.value(l) * phi.value(l) * Fraction(1, l))
    for q in prime_divisors(T2) if T2 > 1 else ():
        front = front * (1 - chi.value(q) * phi_inv.value(q))
    b1a = bernoulli_B1(chi.inverse() * phi_inv) * Fraction(1, 2)
    b1b = bernoulli_B1(chi * phi_inv) * Fraction(1, 2)
    return front * b1a * b1b
