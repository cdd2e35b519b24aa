"""Arithmetic degrees by every available route, plus decomposition certificates.

Routes:

* ``arith_deg_direct``: monomial ideals only; sums length-multiplicities over
  the associated coordinate primes of the requested dimension.
* ``arith_deg_difference``: the difference-polynomial route valid for any
  homogeneous ideal: apply the r-fold backward difference to
  P(S/I) - P(S/I_{>= r+1}), which is a constant because the difference of the
  two Hilbert polynomials has degree at most r.
* ``arith_deg_minus1``: the level below zero, the finite length of the gap
  between the ideal and its saturation.
* ``arith_deg_certificate``: per-prime contributions read off a verified
  decomposition certificate; isolated and embedded components both contribute
  the degree of the torsion they add below the intersection of the strictly
  smaller-prime components.

``arith_profile`` assembles the full map r -> arith-deg_r(I), computing every
entry by all routes that apply and failing hard on any disagreement.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .groebner import Ideal, colon, ideal_equal, intersect, normal_form, radical_membership
from .hilbert import (
    NumPoly,
    delta,
    hilbert_function,
    hilbert_polynomial,
    module_sum_of_gaps,
)
from .monomial import (
    MonomialIdeal,
    associated_primes,
    dimension_filtration_monomial,
    length_multiplicity,
)
from .resolution import dimension_filtration
from .ring import Poly, RingError


class RouteDisagreement(RuntimeError):
    """Two supposedly equivalent computations of the same number disagreed."""


# ---------------------------------------------------------------------------
# filtration dispatch with caching


def filtration(I: Ideal, r: int) -> Ideal:
    """I_{>= r} through the fastest exact route available for the input."""
    n = I.ring.n
    if not -1 <= r <= n + 1:
        raise RingError(f"filtration level {r} out of range")
    if r == -1:
        return I
    if r == n + 1:
        return Ideal(I.ring, [I.ring.one()], provenance="empty filtration")
    cached = I._aux.get(("filt", r))
    if cached is not None:
        return cached
    mono = I.as_monomial()
    if mono is not None:
        filtered = dimension_filtration_monomial(mono, r)
        out = Ideal(I.ring, filtered.polys(), provenance=f"filtration >= {r}")
    else:
        out = dimension_filtration(I, r)
    I._aux[("filt", r)] = out
    return out


# ---------------------------------------------------------------------------
# the difference-polynomial route


def difference_polynomial(I: Ideal, r: int) -> NumPoly:
    """P(S/I, l) - P(S/I_{>= r+1}, l); its degree is at most r."""
    upper = filtration(I, r + 1)
    return hilbert_polynomial(I).poly - hilbert_polynomial(upper).poly


def arith_deg_difference(I: Ideal, r: int) -> int:
    """arith-deg_r(I) for r >= 0 as the r-fold difference of the gap of
    Hilbert polynomials between I and its filtration above level r."""
    if r < 0:
        raise RingError("use arith_deg_minus1 for the level below zero")
    if I.is_unit():
        raise RingError("the unit ideal has no arithmetic degree")
    diff = difference_polynomial(I, r)
    if diff.degree() > r:
        raise RouteDisagreement(
            f"difference polynomial has degree {diff.degree()} > r = {r}"
        )
    out = delta(diff, r)
    if not out.is_constant():
        raise RouteDisagreement("difference route did not produce a constant")
    value = out(0)
    if value.denominator != 1 or value < 0:
        raise RouteDisagreement(f"difference route produced {value}")
    return int(value)


def arith_deg_minus1(I: Ideal) -> int:
    """Length of I_{>= 0} / I: what saturation removes at the irrelevant prime."""
    sat = filtration(I, 0)
    return module_sum_of_gaps(big=sat, small=I)


def arith_deg_direct(M: MonomialIdeal, r: int) -> int:
    """Sum of length-multiplicities over associated primes of dimension r."""
    n = M.ring.n
    total = 0
    for prime in associated_primes(M):
        if n - len(prime) == r:
            total += length_multiplicity(M, prime)  # coordinate primes have degree 1
    return total


def arith_deg(I: Ideal, r: int) -> int:
    """arith-deg_r(I) by the appropriate route; r = -1 is the saturation gap."""
    if r < -1:
        raise RingError("arithmetic degree is defined for r >= -1")
    if r > I.ring.n:
        return 0
    cached = I._aux.get(("adeg", r))
    if cached is not None:
        return cached
    if r == -1:
        value = arith_deg_minus1(I)
    else:
        mono = I.as_monomial()
        if mono is not None:
            value = arith_deg_direct(mono, r)
        else:
            value = arith_deg_difference(I, r)
    I._aux[("adeg", r)] = value
    return value


# ---------------------------------------------------------------------------
# profiles


@dataclass(frozen=True)
class ArithProfile:
    """The map r -> arith-deg_r(I) for r = -1 .. n, with a route tag per entry."""

    values: tuple  # ((r, value, route), ...)

    def value(self, r: int) -> int:
        for rr, v, _ in self.values:
            if rr == r:
                return v
        return 0

    def nonzero(self) -> list:
        return [(r, v) for r, v, _ in self.values if v]

    def total(self) -> int:
        return sum(v for _, v, _ in self.values)


def arith_profile(I: Ideal, cross_check: bool = True) -> ArithProfile:
    """Every level at once.  Monomial inputs are computed by the direct
    decomposition route and cross-checked against the difference route."""
    if I.is_unit():
        raise RingError("the unit ideal has no arithmetic degree")
    n = I.ring.n
    mono = I.as_monomial()
    entries = []
    hdim = hilbert_polynomial(I).hdim
    for r in range(-1, n + 1):
        if r == -1:
            entries.append((r, arith_deg_minus1(I), "gap"))
            continue
        if r > hdim:
            entries.append((r, 0, "dimension"))
            continue
        if mono is not None:
            v = arith_deg_direct(mono, r)
            if cross_check:
                w = arith_deg_difference(I, r)
                if v != w:
                    raise RouteDisagreement(
                        f"direct {v} vs difference {w} at level {r} for {I}"
                    )
            entries.append((r, v, "direct"))
        else:
            entries.append((r, arith_deg_difference(I, r), "difference"))
    return ArithProfile(tuple(entries))


# ---------------------------------------------------------------------------
# decomposition certificates


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class DecompositionCertificate:
    """Claimed primary decomposition: components with coordinate primes."""

    source: tuple  # generators (Poly, ...)
    components: tuple  # ((gens tuple, prime index tuple), ...)
    note: str = ""


@dataclass(frozen=True)
class VerifiedComponent:
    ideal: Ideal
    prime: tuple
    hdim: int
    radical_verified: bool
    primary_probable: bool


@dataclass(frozen=True)
class VerifiedDecomposition:
    source: Ideal
    components: tuple
    warnings: tuple

    @property
    def fully_verified(self) -> bool:
        return all(c.primary_probable for c in self.components)


def verify_certificate(
    cert: DecompositionCertificate,
    ring,
    *,
    trials: int = 3,
    coeff_bound: int = 100,
    seed: int = 11,
) -> VerifiedDecomposition:
    """Check a claimed decomposition instead of trusting it.

    Hard requirements: the components intersect to the source ideal, and each
    component's radical is exactly its claimed coordinate prime.  On top of
    that a seeded probabilistic no-embedded-prime test runs colon-stability
    against random linear forms outside the prime; failures only downgrade
    the certificate with a warning, since embeddedness cannot be excluded by
    sampling.
    """
    source = Ideal(ring, cert.source, provenance="certificate source")
    rng = random.Random(seed)
    comps = []
    warnings = []
    inter: Optional[Ideal] = None
    for gens, prime in cert.components:
        prime = tuple(sorted(prime))
        if any(not 0 <= i < ring.nvars for i in prime) or not prime:
            raise CertificateError(f"claimed prime {prime} is not a variable subset")
        comp = Ideal(ring, gens, provenance="certificate component")
        # containment in the prime: every generator must vanish with the prime's variables
        for g in comp.gens:
            if any(all(e[i] == 0 for i in prime) for e, _ in g.terms):
                raise CertificateError(
                    f"component generator {g} lies outside the claimed prime"
                )
        # every prime variable has a power in the component
        for i in prime:
            if not radical_membership(ring.variable(i), comp):
                raise CertificateError(
                    f"variable {ring.variables[i]} has no power in a component "
                    f"claimed primary to {prime}"
                )
        probable = True
        if len(prime) < ring.nvars:
            for _ in range(trials):
                f = _random_form_avoiding(ring, prime, rng, coeff_bound)
                if not ideal_equal(colon(comp, f), comp):
                    probable = False
                    warnings.append(
                        f"component at prime {prime}: colon test found a zero "
                        "divisor; certificate downgraded to radical-verified only"
                    )
                    break
        # a radical equal to the irrelevant maximal ideal already proves primariness
        comps.append(
            VerifiedComponent(
                ideal=comp,
                prime=prime,
                hdim=ring.n - len(prime),
                radical_verified=True,
                primary_probable=probable,
            )
        )
        inter = comp if inter is None else intersect(inter, comp)
    if inter is None or not ideal_equal(inter, source):
        raise CertificateError("components do not intersect to the source ideal")
    return VerifiedDecomposition(
        source=source, components=tuple(comps), warnings=tuple(warnings)
    )


def _random_form_avoiding(ring, prime, rng, bound):
    """A random linear form with a term outside the span of the prime's variables."""
    outside = [i for i in range(ring.nvars) if i not in prime]
    if not outside:
        raise CertificateError("no linear form avoids the irrelevant prime")
    for _ in range(64):
        coeffs = [rng.randint(-bound, bound) for _ in range(ring.nvars)]
        if any(coeffs[i] for i in outside):
            acc = ring.zero()
            for i, c in enumerate(coeffs):
                if c:
                    acc = acc + ring.variable(i) * c
            return acc
    raise CertificateError("random form retry budget exhausted")


def arith_deg_certificate(verified: VerifiedDecomposition, r: int) -> int:
    """arith-deg_r from a verified decomposition, one prime at a time.

    The contribution of a component q at prime p is the degree of the torsion
    module J / (q cap J), where J intersects the components at primes strictly
    inside p; that torsion is supported exactly on p, so its degree is the
    length-multiplicity times deg(p).
    """
    ring = verified.source.ring
    total = 0
    for comp in verified.components:
        if comp.hdim != r:
            continue
        smaller = [
            c.ideal
            for c in verified.components
            if set(c.prime) < set(comp.prime)
        ]
        if smaller:
            J = smaller[0]
            for c in smaller[1:]:
                J = intersect(J, c)
            meet = intersect(comp.ideal, J)
            if r >= 0:
                diff = hilbert_polynomial(meet).poly - hilbert_polynomial(J).poly
                contribution = delta(diff, r)(0)
                if contribution.denominator != 1:
                    raise RouteDisagreement("certificate route produced a fraction")
                total += int(contribution)
            else:
                total += module_sum_of_gaps(big=J, small=meet)
        else:
            if r >= 0:
                contribution = delta(hilbert_polynomial(comp.ideal).poly, r)(0)
                if contribution.denominator != 1:
                    raise RouteDisagreement("certificate route produced a fraction")
                total += int(contribution)
            else:
                total += module_sum_of_gaps(
                    big=Ideal(ring, [ring.one()]), small=comp.ideal
                )
    return total
