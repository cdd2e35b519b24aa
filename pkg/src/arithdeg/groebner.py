"""Buchberger engine and the ideal toolbox.

The raw engine (`groebner_basis`, `reduce_full`) works on arbitrary
polynomial lists, homogeneous or not; the inhomogeneous capability is needed
internally for intersection (auxiliary-variable elimination) and radical
membership.  The public `Ideal` type enforces homogeneous generators, caches
its reduced basis, and is the carrier for all ideal algebra.

Pair handling follows Gebauer-Moeller (product and chain criteria), pair
selection is by sugar degree then term order, and the returned basis is
always reduced: monic, auto-reduced, sorted ascending by leading term, hence
canonical for a fixed order.  Equality of ideals is equality of reduced bases.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .monomial import MonomialIdeal
from .ring import (
    GREVLEX,
    Poly,
    PolyRing,
    RingError,
    TermOrder,
    block_order,
    m_deg,
    m_div,
    m_divides,
    m_lcm,
    m_mul,
)


# ---------------------------------------------------------------------------
# raw reduction machinery on term dicts


def _axpy(acc: dict, factor, shift: tuple, terms, field):
    """acc -= factor * x^shift * terms, in place."""
    zero = field.zero
    mul = field.mul
    sub = field.sub
    for e, c in terms:
        key = m_mul(shift, e)
        s = sub(acc.get(key, zero), mul(factor, c))
        if s == zero:
            acc.pop(key, None)
        else:
            acc[key] = s


def reduce_full(fdict: dict, reducers: Sequence, ring: PolyRing, quotients=None) -> dict:
    """Fully reduce a term dict modulo reducers; every remainder term ends up
    divisible by no reducer lead.

    ``reducers`` holds (lead_exps, lead_coeff, terms) triples.  When a list is
    passed as ``quotients`` (one dict per reducer) the division is recorded so
    that input = sum(quotient_i * reducer_i) + remainder exactly.
    """
    field = ring.field
    key = ring.key
    work = dict(fdict)
    remainder: dict = {}
    while work:
        e = max(work, key=key)
        c = work[e]
        for i, (lexps, lcoeff, terms) in enumerate(reducers):
            if m_divides(lexps, e):
                shift = m_div(e, lexps)
                factor = field.divide(c, lcoeff)
                _axpy(work, factor, shift, terms, field)
                if quotients is not None:
                    q = quotients[i]
                    q[shift] = field.add(q.get(shift, field.zero), factor)
                break
        else:
            remainder[e] = c
            del work[e]
    return remainder


def _as_reducer(poly_terms):
    lexps, lcoeff = poly_terms[0]
    return (lexps, lcoeff, poly_terms)


# ---------------------------------------------------------------------------
# Buchberger with Gebauer-Moeller update and sugar selection


def _update_pairs(G, sugars, P, t, ring):
    """Add element t to the pair set, applying the Gebauer-Moeller criteria."""
    lt = G[t][0][0]
    lead = [g[0][0] for g in G]

    # chain criterion on surviving old pairs
    kept = {}
    for (i, j), data in P.items():
        lcm_ij = data[0]
        if (
            m_divides(lt, lcm_ij)
            and lcm_ij != m_lcm(lead[i], lt)
            and lcm_ij != m_lcm(lead[j], lt)
        ):
            continue
        kept[(i, j)] = data
    P = kept

    new = {}
    for i in range(t):
        new[i] = m_lcm(lead[i], lt)

    # M criterion: drop (i,t) whose lcm is a proper multiple of another lcm(j,t)
    survivors = []
    for i in range(t):
        li = new[i]
        if any(
            m_divides(new[j], li) and new[j] != li for j in range(t)
        ):
            continue
        survivors.append(i)

    # F criterion: one representative per lcm value
    by_lcm: dict = {}
    for i in survivors:
        by_lcm.setdefault(new[i], []).append(i)

    for lcm_exps in sorted(by_lcm, key=ring.key):
        members = by_lcm[lcm_exps]
        # B (product) criterion: valid in the ring case only
        if any(m_mul(lead[i], lt) == new[i] for i in members):
            continue
        i = min(members)
        s = max(
            sugars[i] + m_deg(m_div(lcm_exps, lead[i])),
            sugars[t] + m_deg(m_div(lcm_exps, lt)),
        )
        P[(i, t)] = (lcm_exps, s)
    return P


def _buchberger_terms(inputs, ring: PolyRing):
    """Core loop on term tuples; returns an (unreduced) basis of term tuples."""
    field = ring.field
    G: list = []
    sugars: list = []
    P: dict = {}
    for terms in inputs:
        if not terms:
            continue
        G.append(terms)
        sugars.append(max(m_deg(e) for e, _ in terms))
        P = _update_pairs(G, sugars, P, len(G) - 1, ring)

    key = ring.key
    while P:
        (i, j) = min(P, key=lambda ij: (P[ij][1], key(P[ij][0]), ij))
        lcm_exps, sugar = P.pop((i, j))
        fi, fj = G[i], G[j]
        work: dict = {}
        _axpy(work, field.neg(field.invert(fi[0][1])), m_div(lcm_exps, fi[0][0]), fi, field)
        _axpy(work, field.invert(fj[0][1]), m_div(lcm_exps, fj[0][0]), fj, field)
        rem = reduce_full(work, [_as_reducer(g) for g in G], ring)
        if rem:
            items = sorted(rem.items(), key=lambda t: key(t[0]), reverse=True)
            G.append(tuple(items))
            sugars.append(max(sugar, max(m_deg(e) for e in rem)))
            P = _update_pairs(G, sugars, P, len(G) - 1, ring)
    return G


def groebner_basis(polys: Iterable[Poly], ring: PolyRing) -> tuple[Poly, ...]:
    """Reduced Groebner basis of the ideal generated by ``polys``.

    Deterministic: monic, fully auto-reduced, sorted ascending by lead term.
    The unit ideal comes back as the single constant 1.
    """
    inputs = []
    for f in polys:
        if f.ring != ring:
            raise RingError("generator in a different ring")
        if not f.is_zero():
            inputs.append(f.terms)
    if not inputs:
        return ()
    G = _buchberger_terms(inputs, ring)

    # minimalize: drop elements whose lead is divisible by another lead
    key = ring.key
    G = sorted(G, key=lambda g: key(g[0][0]))
    minimal = []
    for g in G:
        if not any(m_divides(h[0][0], g[0][0]) for h in minimal):
            minimal.append(g)

    # interreduce tails and normalize
    field = ring.field
    reduced = []
    for idx, g in enumerate(minimal):
        others = [_as_reducer(h) for k, h in enumerate(minimal) if k != idx]
        rem = reduce_full(dict(g), others, ring)
        if not rem:
            continue
        items = sorted(rem.items(), key=lambda t: key(t[0]), reverse=True)
        inv = field.invert(items[0][1])
        reduced.append(tuple((e, field.mul(c, inv)) for e, c in items))
    reduced.sort(key=lambda g: key(g[0][0]))
    return tuple(Poly(ring, g) for g in reduced)


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """Homogeneous ideal with a lazily cached reduced Groebner basis."""

    __slots__ = ("ring", "gens", "provenance", "_gb", "_numerator", "_aux")

    def __init__(self, ring: PolyRing, gens: Iterable[Poly], provenance: str = ""):
        kept = []
        for g in gens:
            if g.ring != ring:
                raise RingError("generator in a different ring")
            if g.is_zero():
                continue
            if not g.is_homogeneous():
                raise RingError(f"inhomogeneous generator {g}")
            kept.append(g)
        self.ring = ring
        self.gens = tuple(kept)
        self.provenance = provenance
        self._gb: Optional[tuple] = None
        self._numerator = None
        self._aux: dict = {}

    def groebner(self) -> tuple[Poly, ...]:
        if self._gb is None:
            self._gb = groebner_basis(self.gens, self.ring)
        return self._gb

    def is_zero(self) -> bool:
        return not self.groebner()

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].total_degree() == 0

    def contains(self, f: Poly) -> bool:
        return normal_form(f, self).is_zero()

    def with_forms(self, *forms: Poly, provenance: str = "") -> "Ideal":
        return Ideal(self.ring, self.gens + tuple(forms), provenance or self.provenance)

    def lt_exps(self) -> tuple:
        """Exponent vectors of the leading terms of the reduced basis."""
        return tuple(g.lead_exps() for g in self.groebner())

    def as_monomial(self) -> Optional[MonomialIdeal]:
        """The same ideal as a MonomialIdeal if its reduced basis is monomial."""
        gb = self.groebner()
        if all(len(g.terms) == 1 for g in gb):
            return MonomialIdeal(self.ring, [g.lead_exps() for g in gb])
        return None

    def __repr__(self):
        inside = ", ".join(str(g) for g in self.gens) or "0"
        return f"Ideal({inside})"


def normal_form(f: Poly, I: Ideal) -> Poly:
    """Remainder of full reduction modulo the reduced basis; zero iff f in I."""
    if f.ring != I.ring:
        raise RingError("polynomial and ideal live in different rings")
    reducers = [_as_reducer(g.terms) for g in I.groebner()]
    rem = reduce_full(dict(f.terms), reducers, I.ring)
    return I.ring.poly(rem)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    if I.ring != J.ring:
        raise RingError("ideals live in different rings")
    return I.groebner() == J.groebner()


def leading_term_ideal(I: Ideal) -> MonomialIdeal:
    return MonomialIdeal(I.ring, I.lt_exps())


# ---------------------------------------------------------------------------
# ring extension helpers for elimination


def _fresh_name(base: str, taken) -> str:
    if base not in taken:
        return base
    k = 0
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


def _lift(f: Poly, big: PolyRing, offset: int) -> dict:
    """Term dict of f viewed in ``big``, whose tail variables are f's ring."""
    pad = (0,) * offset
    return {pad + e: c for e, c in f.terms}


def _homogeneous_components(ring: PolyRing, term_dict: dict) -> list[Poly]:
    by_deg: dict = {}
    for e, c in term_dict.items():
        by_deg.setdefault(m_deg(e), {})[e] = c
    return [ring.poly(d) for _, d in sorted(by_deg.items())]


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I intersect J via an auxiliary variable: eliminate t from t*I + (1-t)*J.

    The auxiliary ring never leaks; eliminated generators are split into their
    homogeneous components (each component lies in the intersection because
    the intersection is homogeneous).
    """
    if I.ring != J.ring:
        raise RingError("ideals live in different rings")
    ring = I.ring
    if not I.gens or not J.gens:
        return Ideal(ring, (), provenance="intersection with (0)")
    t_name = _fresh_name("t_", ring.variables)
    big = PolyRing(ring.field, (t_name,) + ring.variables, block_order(1))
    t_exp = (1,) + (0,) * ring.nvars
    one_exp = (0,) * big.nvars

    inputs = []
    for f in I.gens:
        lifted = _lift(f, big, 1)
        inputs.append(tuple(sorted(
            ((m_mul(t_exp, e), c) for e, c in lifted.items()),
            key=lambda item: big.key(item[0]), reverse=True,
        )))
    field = ring.field
    for g in J.gens:
        lifted = _lift(g, big, 1)
        acc: dict = {}
        for e, c in lifted.items():
            acc[e] = c
            te = m_mul(t_exp, e)
            acc[te] = field.sub(acc.get(te, field.zero), c)
        acc = {e: c for e, c in acc.items() if c != field.zero}
        inputs.append(tuple(sorted(acc.items(), key=lambda item: big.key(item[0]), reverse=True)))

    basis = _buchberger_terms(inputs, big)
    out: list[Poly] = []
    for terms in basis:
        if all(e[0] == 0 for e, _ in terms):
            down = {e[1:]: c for e, c in terms}
            out.extend(_homogeneous_components(ring, down))
    result = Ideal(ring, out, provenance="intersection")
    result._gb = groebner_basis(out, ring)
    return result


def _divide_exact(g: Poly, f: Poly) -> Poly:
    """g / f for f dividing g (single-divisor division, zero remainder)."""
    ring = g.ring
    quotients = [dict()]
    rem = reduce_full(dict(g.terms), [_as_reducer(f.terms)], ring, quotients)
    if rem:
        raise RingError("exact division failed")
    return ring.poly(quotients[0])


def colon(I: Ideal, F: Poly) -> Ideal:
    """The colon ideal I : F = {g : g*F in I}, via intersect(I, (F)) / F."""
    if F.is_zero():
        raise RingError("colon by the zero polynomial")
    if not F.is_homogeneous():
        raise RingError("colon divisor must be homogeneous")
    ring = I.ring
    common = intersect(I, Ideal(ring, [F]))
    gens = [_divide_exact(g, F) for g in common.groebner()]
    out = Ideal(ring, gens, provenance=f"colon by {F}")
    return out


def saturate_element(I: Ideal, g: Poly) -> Ideal:
    """I : g^infinity, iterating the single colon until it stabilizes."""
    current = I
    while True:
        nxt = colon(current, g)
        if ideal_equal(nxt, current):
            return current
        current = nxt


def saturate(I: Ideal, J: Ideal) -> Ideal:
    """I : J^infinity as the intersection over generators g of I : g^infinity.

    Each single-generator saturation stabilizes by Noetherianity (detected by
    reduced-basis equality between rounds); an element killed by a power of
    every generator is killed by a power of J, so the intersection is exact.
    """
    if not J.gens:
        raise RingError("saturation by the zero ideal")
    parts = [saturate_element(I, g) for g in J.gens]
    out = parts[0]
    for p in parts[1:]:
        out = intersect(out, p)
    return Ideal(out.ring, out.groebner(), provenance="saturation")


def eliminate(I: Ideal, k: int) -> Ideal:
    """Generators of I intersected with the subring on variables k..n.

    The ring order must be a block order whose eliminated prefix covers the
    first k variables.
    """
    ring = I.ring
    if k < 1 or k >= ring.nvars:
        raise RingError("elimination count out of range")
    if ring.order.kind != "block" or ring.order.block < k:
        raise RingError("ring order cannot eliminate the first k variables")
    sub = PolyRing(ring.field, ring.variables[k:], TermOrder(ring.order.inner))
    out = []
    for g in I.groebner():
        if all(all(x == 0 for x in e[:k]) for e, _ in g.terms):
            out.append(sub.poly({e[k:]: c for e, c in g.terms}))
    return Ideal(sub, out, provenance="elimination")


def radical_membership(f: Poly, I: Ideal) -> bool:
    """Whether f lies in the radical of I (Rabinowitsch trick)."""
    ring = I.ring
    if f.is_zero():
        return True
    z_name = _fresh_name("z_", ring.variables)
    big = PolyRing(ring.field, (z_name,) + ring.variables, GREVLEX)
    field = ring.field
    inputs = []
    for g in I.gens:
        lifted = _lift(g, big, 1)
        inputs.append(tuple(sorted(lifted.items(), key=lambda t: big.key(t[0]), reverse=True)))
    # 1 - z*f
    acc: dict = {(0,) * big.nvars: field.one}
    z_exp = (1,) + (0,) * ring.nvars
    for e, c in f.terms:
        key = m_mul(z_exp, (0,) + e)
        acc[key] = field.sub(acc.get(key, field.zero), c)
    inputs.append(tuple(sorted(
        ((e, c) for e, c in acc.items() if c != field.zero),
        key=lambda t: big.key(t[0]), reverse=True,
    )))
    basis = _buchberger_terms(inputs, big)
    for terms in basis:
        if len(terms) == 1 and m_deg(terms[0][0]) == 0:
            return True
    return False
