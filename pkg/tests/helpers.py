"""Shared property-check routines used by module tests and the acceptance
suite (single source of truth for the heavier sweeps)."""

import random
from fractions import Fraction
from math import gcd, prod

from eiscong import polys
from eiscong.arith import divisors, euler_phi, prime_divisors, primes_up_to
from eiscong.characters import enumerate_characters
from eiscong.cyclotomic import CyclotomicField, cyclotomic_polynomial
from eiscong.eisenstein import EisensteinParams


def tensor_gauss_product(chi):
    """tau(chi) tau(chi^{-1}) and tau(chi) conj(tau(chi)) computed in
    Q[x]/(Phi_f) (x) Q[y]/(Phi_k), avoiding the large compositum; equality
    there implies it in every embedding."""
    f, k = chi.modulus, chi.order
    phif = [Fraction(c) for c in cyclotomic_polynomial(f)]
    phik = [Fraction(c) for c in cyclotomic_polynomial(k)]
    taus = {}
    for kind in ("inv", "conj"):
        grid = {}
        for a in range(1, f):
            ea = chi.value_exponent(a)
            if ea is None:
                continue
            for b in range(1, f):
                eb = chi.value_exponent(b)
                if eb is None:
                    continue
                if kind == "inv":
                    key = ((a + b) % f, (ea - eb) % k)
                else:
                    key = ((a - b) % f, (ea - eb) % k)
                grid[key] = grid.get(key, 0) + 1
        ypolys = {}
        for (xa, ye), c in grid.items():
            ypolys.setdefault(ye, [Fraction(0)] * f)
            ypolys[ye][xa] += c
        reduced = {ye: polys.mod(v, phif) for ye, v in ypolys.items()}
        dx = len(phif) - 1
        acc = [[Fraction(0)] * dx for _ in range(k)]
        for ye, v in reduced.items():
            for i, cv in enumerate(v):
                acc[ye][i] += cv
        out = []
        for i in range(dx):
            col = polys.mod([acc[ye][i] for ye in range(k)], phik)
            col += [Fraction(0)] * (len(phik) - 1 - len(col))
            out.append(col)
        taus[kind] = out
    return taus


def check_gauss_identity(chi):
    """Assert tau(chi)tau(chi^-1) = chi(-1) f and tau(chi) conj = f."""
    f, k = chi.modulus, chi.order
    taus = tensor_gauss_product(chi)
    dx, dk = euler_phi(f), euler_phi(k)
    em1 = chi.value_exponent(f - 1)
    ycol = [Fraction(0)] * k
    ycol[em1] = Fraction(f)
    ycol = polys.mod(ycol, [Fraction(c) for c in cyclotomic_polynomial(k)])
    ycol += [Fraction(0)] * (dk - len(ycol))
    want_inv = [[Fraction(0)] * dk for _ in range(dx)]
    want_inv[0] = list(ycol)
    assert taus["inv"] == want_inv, f"tau-product identity fails for {chi.label()}"
    want_conj = [[Fraction(0)] * dk for _ in range(dx)]
    want_conj[0][0] = Fraction(f)
    assert taus["conj"] == want_conj, f"|tau|^2 identity fails for {chi.label()}"


def random_pgood_params(rng, count, nprime_max=30):
    """Random valid EisensteinParams at p-good levels, p in {3, 5}."""
    out = []
    while len(out) < count:
        p = rng.choice((3, 5))
        eligible = [q for q in primes_up_to(nprime_max) if q != p and q % p in (1, p - 1)]
        Nprime = 1
        for q in eligible:
            if rng.random() < 0.4 and Nprime * q <= nprime_max:
                Nprime *= q
        N = p * p * Nprime
        chars = [c for c in enumerate_characters(p) if not c.is_trivial()]
        phi = rng.choice(chars)
        M = rng.choice(divisors(Nprime))
        out.append(EisensteinParams(phi, N, M, Nprime // M))
    return out


def random_valid_params(rng, count):
    """Random valid (phi, N, M, L) across conductors 3..12 (not only p-good)."""
    out = []
    while len(out) < count:
        f = rng.choice((3, 4, 5, 7, 8, 9, 11, 12))
        chars = [c for c in enumerate_characters(f) if not c.is_trivial() and c.is_primitive()]
        if not chars:
            continue
        phi = rng.choice(chars)
        pool = [q for q in (2, 3, 5, 7, 11, 13) if f % q]
        rng.shuffle(pool)
        Mpart = prod(pool[: rng.randrange(0, 2)]) if pool else 1
        Lpart = prod([q for q in pool[2:4] if gcd(q, f * Mpart) == 1][: rng.randrange(0, 3)])
        extra = prod(pp ** rng.randrange(0, 2) for pp in prime_divisors(f))
        M = Mpart * extra
        N = f * f * M * Lpart
        if rng.random() < 0.5:
            t = next((q for q in (17, 19) if gcd(q, N) == 1), 17)
            N *= t
        try:
            out.append(EisensteinParams(phi, N, M, Lpart))
        except Exception:
            continue
    return out
