"""Congruence detection between built Eisenstein series and newforms.

Both coefficient rings are reduced into a common F_{q^r}: the Eisenstein side
through a root of Phi_k (k = order of phi; at ramified q this realizes the
reduction zeta -> 1 on the q-part), the newform side through a root of its
defining polynomial.  r is minimal so that both acquire roots, and every
(zeta-root, poly-root) pair is tried in a fixed order.  A match certifies
a_n congruences for all n up to the bound (Sturm by default).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

from .arith import DomainError, divisors, is_p_good, is_prime, sturm_bound
from .characters import enumerate_characters
from .cyclotomic import cyclotomic_polynomial
from .eisenstein import EisensteinParams, QExpansion, build_E
from .ffield import FiniteField, factor_degrees_mod_q, roots_in_field
from .ideals import (IdealDescriptor, candidate_characteristics, descriptor,
                     eisenstein_character)
from .newforms import NewformRecord, newforms_for_level


class UnsupportedPrimeError(DomainError):
    """Reduction mod q is ill-defined (q divides a coefficient denominator)."""


@dataclass(frozen=True)
class CongruenceReport:
    eisenstein: str
    newform: str
    prime: int
    residue_degree: int
    embedding: tuple
    checked_bound: int
    matched: bool
    first_mismatch: int | None

    def to_json(self) -> dict:
        return {
            "eisenstein": self.eisenstein,
            "newform": self.newform,
            "prime": self.prime,
            "residue_degree": self.residue_degree,
            "embedding": [list(self.embedding[0]), list(self.embedding[1])],
            "checked_bound": self.checked_bound,
            "matched": self.matched,
            "first_mismatch": self.first_mismatch,
        }


def reduction_embeddings(k, field_poly, q: int):
    """(r, F, pairs): minimal r with roots of Phi_k and of field_poly in
    F_{q^r}, and all (zeta-root, poly-root) pairs in a fixed order.

    `k` may be the cyclotomic index or a CyclotomicField."""
    if hasattr(k, "m"):
        k = k.m
    if not is_prime(q):
        raise DomainError(f"{q} is not prime")
    kp = k
    while kp % q == 0:
        kp //= q
    d_phi = 1
    while pow(q, d_phi, kp) != 1 % kp:
        d_phi += 1
    degrees = factor_degrees_mod_q(list(field_poly), q)
    r = min(lcm(d_phi, e) for e in degrees)
    F = FiniteField.create(q, r)
    zroots = roots_in_field(cyclotomic_polynomial(k), F)
    groots = roots_in_field(list(field_poly), F)
    assert zroots and groots
    return r, F, [(z, g) for z in zroots for g in groots]


def _reduce_vector(vec, root, F: FiniteField):
    """sum vec[i] * root^i with Fraction entries; q | denominator is an error."""
    q = F.q
    acc = F.zero()
    power = F.one()
    for c in vec:
        if c.denominator % q == 0:
            raise UnsupportedPrimeError(f"denominator of {c} not invertible mod {q}")
        cf = F.from_int(c.numerator * pow(c.denominator, -1, q))
        acc = F.add(acc, F.mul(cf, power))
        power = F.mul(power, root)
    return acc


def scan(
    E: QExpansion,
    params: EisensteinParams,
    record: NewformRecord,
    q: int,
    B: int | None = None,
) -> CongruenceReport:
    """Coefficientwise congruence check of E against one newform at q."""
    if E.level != record.level:
        raise DomainError(f"level mismatch: {E.level} vs {record.level}")
    if B is None:
        B = sturm_bound(E.level)
    if B > E.precision or B > record.bound:
        raise DomainError(
            f"bound {B} exceeds available precision ({E.precision} Eisenstein, "
            f"{record.bound} newform)"
        )
    k = params.phi.order
    r, F, pairs = reduction_embeddings(k, record.field_poly, q)
    first_mismatch = None
    for zr, gr in pairs:
        ok = True
        for n in range(1, B + 1):
            lhs = _reduce_vector(E.coefficient(n).coeffs, zr, F)
            rhs = _reduce_vector(record.coefficient(n), gr, F)
            if lhs != rhs:
                ok = False
                if first_mismatch is None:
                    first_mismatch = n
                break
        if ok:
            return CongruenceReport(
                params.label(), record.label, q, r, (zr, gr), B, True, None
            )
    return CongruenceReport(
        params.label(), record.label, q, r, pairs[0], B, False, first_mismatch
    )


@dataclass(frozen=True)
class ScanHit:
    report: CongruenceReport
    params: EisensteinParams
    descriptor: IdealDescriptor
    largest_M: bool


@dataclass(frozen=True)
class FullScanResult:
    level: int
    p: int
    bound: int
    candidate_primes: tuple[int, ...]
    reports: tuple[CongruenceReport, ...]
    hits: tuple[ScanHit, ...]
    skipped: tuple[str, ...]

    def hit_labels(self):
        return sorted({(h.params.label(), h.report.newform, h.report.prime) for h in self.hits})


def eisenstein_basis(N: int, p: int) -> list[EisensteinParams]:
    """The eigenbasis {E_{phi,M,N'/M}} of non-rational Eisenstein series for a
    p-good level: phi over nontrivial characters mod p, M L = N'."""
    if not is_p_good(N, p):
        raise DomainError(f"N={N} is not {p}-good")
    Nprime = N // (p * p)
    out = []
    for phi in enumerate_characters(p):
        if phi.is_trivial():
            continue
        for M in divisors(Nprime):
            out.append(EisensteinParams(phi, N, M, Nprime // M))
    return out


def full_scan(
    N: int,
    p: int,
    bound: int | None = None,
    records: list[NewformRecord] | None = None,
    cache_dir=None,
) -> FullScanResult:
    """Scan the whole eigenbasis against all newforms at every candidate
    residual characteristic l coprime to 6p; emit a descriptor per certified
    congruence (pairs whose reduced character is trivial are skipped: those
    would be rational Eisenstein congruences, out of scope)."""
    if records is None:
        records = newforms_for_level(N, cache_dir=cache_dir)
    if not records:
        raise DomainError(
            f"no newform data for level {N}; run `eiscong fetch --level {N}` first"
        )
    if bound is None:
        bound = sturm_bound(N)
    for rec in records:
        if rec.bound < bound:
            raise DomainError(
                f"newform {rec.label} has {rec.bound} coefficients < bound {bound}"
            )
    cand = candidate_characteristics(N, p)
    ls = tuple(sorted(l for l in cand.union if gcd(l, 6 * p) == 1))
    reports: list[CongruenceReport] = []
    skipped: list[str] = []
    raw_hits: list[tuple[CongruenceReport, EisensteinParams, IdealDescriptor]] = []
    for params in eisenstein_basis(N, p):
        E = build_E(params, bound)
        for l in ls:
            eps = eisenstein_character(params.phi, l)
            if eps.is_trivial():
                skipped.append(
                    f"{params.label()} at l={l}: reduced character is trivial (rational case)"
                )
                continue
            for rec in records:
                rep = scan(E, params, rec, l, bound)
                reports.append(rep)
                if rep.matched:
                    raw_hits.append((rep, params, descriptor(params, l, eps)))
    # mark the largest certifying M within each (l, ideal, newform) group
    hits = []
    for rep, params, desc in raw_hits:
        group_max = max(
            p2.M
            for r2, p2, d2 in raw_hits
            if (r2.prime, r2.newform, d2.render()) == (rep.prime, rep.newform, desc.render())
        )
        hits.append(ScanHit(rep, params, desc, params.M == group_max))
    return FullScanResult(N, p, bound, ls, tuple(reports), tuple(hits), tuple(skipped))
