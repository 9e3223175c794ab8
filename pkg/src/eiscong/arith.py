"""Exact integer arithmetic: factorization, totients, level predicates.

Everything here is a pure function on ints; results are exact.  Factorization
is trial division up to 10**6 followed by Pollard rho, with primality decided
by deterministic Miller-Rabin (valid below 2**64).  Inputs at cryptographic
scale are rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_BOUND = 10 ** 6
_SIZE_LIMIT = 2 ** 64


class DomainError(ValueError):
    """Raised when an argument is outside an operation's stated domain."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 2**64."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n >= _SIZE_LIMIT:
        raise DomainError(f"primality testing not supported for n >= 2**64 (got {n})")
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n."""
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"pollard rho failed on {n}")


@dataclass(frozen=True)
class Factorization:
    """Certified prime factorization: value == prod(p**e), primes increasing."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __iter__(self):
        return iter(self.factors)


@lru_cache(maxsize=None)
def factor(n: int) -> Factorization:
    if n < 1:
        raise DomainError(f"factor requires n >= 1 (got {n})")
    if n >= _SIZE_LIMIT:
        raise DomainError(f"factorization not supported for n >= 2**64 (got {n})")
    m = n
    found: dict[int, int] = {}
    for p in (2, 3, 5):
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    p = 7
    while p * p <= m and p < _TRIAL_BOUND:
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
        p += 2
    stack = [m] if m > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend((d, m // d))
    factors = tuple(sorted(found.items()))
    assert math.prod(p ** e for p, e in factors) == n
    assert all(is_prime(p) for p, _ in factors)
    return Factorization(n, factors)


def prime_divisors(n: int) -> tuple[int, ...]:
    return factor(n).primes()


def valuation(n: int, p: int) -> int:
    """Largest e with p**e | n."""
    if n < 1:
        raise DomainError(f"valuation requires n >= 1 (got {n})")
    if not is_prime(p):
        raise DomainError(f"valuation requires p prime (got {p})")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def squarefree_part_primes(n: int) -> int:
    """Product of the distinct primes dividing n (the radical)."""
    return math.prod(prime_divisors(n)) if n > 1 else 1


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factor(n))


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError(f"euler_phi requires n >= 1 (got {n})")
    result = n
    for p in prime_divisors(n):
        result = result // p * (p - 1)
    return result


def is_p_good(N: int, p: int) -> bool:
    """N = p^2 * N' with N' squarefree, coprime to p, all primes of N' = ±1 mod p."""
    if p == 2 or not is_prime(p):
        raise DomainError(f"is_p_good requires an odd prime (got {p})")
    if N < 1:
        raise DomainError(f"is_p_good requires N >= 1 (got {N})")
    if valuation(N, p) != 2:
        return False
    Nprime = N // (p * p)
    if Nprime % p == 0 or not is_squarefree(Nprime):
        return False
    return all(q % p in (1, p - 1) for q in prime_divisors(Nprime))


def sturm_bound(N: int) -> int:
    """Weight-2 coefficient bound for Gamma0(N): ceil((N/6) * prod(1 + 1/p))."""
    if N < 1:
        raise DomainError(f"sturm_bound requires N >= 1 (got {N})")
    b = Fraction(N, 6)
    for p in prime_divisors(N):
        b *= Fraction(p + 1, p)
    return int(math.ceil(b))


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    ds = [1]
    for p, e in factor(n):
        ds = [d * p ** k for d in ds for k in range(e + 1)]
    return sorted(ds)


def crt(residues: list[int], moduli: list[int]) -> int:
    """x mod prod(moduli) with x = r_i mod m_i; moduli pairwise coprime."""
    x, m = 0, 1
    for r, mi in zip(residues, moduli):
        g, s, _ = xgcd(m, mi)
        if g != 1:
            raise DomainError("crt moduli must be pairwise coprime")
        x = (x + (r - x) * s % mi * m) % (m * mi)
        m *= mi
    return x


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def inverse_mod(a: int, m: int) -> int:
    g, x, _ = xgcd(a, m)
    if g != 1:
        raise DomainError(f"{a} is not invertible mod {m}")
    return x % m


def primes_up_to(bound: int) -> list[int]:
    """Primes <= bound by sieve."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(bound ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, v in enumerate(sieve) if v]
