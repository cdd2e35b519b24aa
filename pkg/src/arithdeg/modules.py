"""Graded free modules, module Groebner bases, and syzygies.

Module elements are vectors over the ring, stored internally as term dicts
keyed by (component, exponents).  The order is position-over-term: earlier
components dominate, ties broken by the ring order.  Two syzygy routes are
provided:

* ``gb_with_syzygies``: reduce every S-pair of a module Groebner basis while
  recording division quotients; the leftover combinations generate the
  syzygy module of the basis (the workhorse for resolutions).
* ``syzygies_of_generators``: adjoin tag components below the module and
  compute a full Groebner basis; elements supported entirely on the tags cut
  out the syzygies of the generators as given, preserving their indexing
  (needed for kernels of maps and module colons).

The pair update applies the lcm-divisibility eliminations only; the coprime
(product) criterion is unsound for modules and is never used here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .ring import Poly, PolyRing, RingError, m_deg, m_div, m_divides, m_lcm, m_mul


@dataclass(frozen=True)
class FreeModule:
    """A graded free module: the ring and one degree twist per basis element."""

    ring: PolyRing
    twists: tuple

    @property
    def rank(self) -> int:
        return len(self.twists)

    def __repr__(self):
        return f"F{list(self.twists)}"


# ---------------------------------------------------------------------------
# vector term dicts: {(component, exps): coeff}


def vec_from_polys(polys: Sequence[Poly]) -> dict:
    out = {}
    for comp, f in enumerate(polys):
        for e, c in f.terms:
            out[(comp, e)] = c
    return out


def vec_to_polys(vec: dict, ring: PolyRing, rank: int) -> tuple:
    split: list[dict] = [dict() for _ in range(rank)]
    for (comp, e), c in vec.items():
        split[comp][e] = c
    return tuple(ring.poly(d) for d in split)


def vec_degree(vec: dict, twists: tuple) -> Optional[int]:
    """Common degree of a homogeneous vector, or None if mixed."""
    degs = {m_deg(e) + twists[comp] for (comp, e) in vec}
    if not degs:
        return None
    if len(degs) > 1:
        return None
    return degs.pop()


def _vkey(ring_key):
    def key(term):
        comp, e = term
        return (-comp, ring_key(e))

    return key


def _vec_axpy(acc: dict, factor, shift: tuple, terms, field):
    """acc -= factor * x^shift * terms (terms over (comp, exps) keys)."""
    zero = field.zero
    mul = field.mul
    sub = field.sub
    for (comp, e), c in terms:
        key = (comp, m_mul(shift, e))
        s = sub(acc.get(key, zero), mul(factor, c))
        if s == zero:
            acc.pop(key, None)
        else:
            acc[key] = s


def vec_reduce(vec: dict, reducers: Sequence, ring: PolyRing, quotients=None) -> dict:
    """Full reduction of a vector modulo reducer vectors."""
    field = ring.field
    vkey = _vkey(ring.key)
    work = dict(vec)
    remainder: dict = {}
    while work:
        term = max(work, key=vkey)
        comp, e = term
        c = work[term]
        for i, (lcomp, lexps, lcoeff, terms) in enumerate(reducers):
            if lcomp == comp and m_divides(lexps, e):
                shift = m_div(e, lexps)
                factor = field.divide(c, lcoeff)
                _vec_axpy(work, factor, shift, terms, field)
                if quotients is not None:
                    q = quotients[i]
                    q[shift] = field.add(q.get(shift, field.zero), factor)
                break
        else:
            remainder[term] = c
            del work[term]
    return remainder


def _as_vreducer(sorted_terms):
    (lcomp, lexps), lcoeff = sorted_terms[0]
    return (lcomp, lexps, lcoeff, sorted_terms)


def _sort_vec(vec: dict, ring: PolyRing) -> tuple:
    vkey = _vkey(ring.key)
    return tuple(sorted(vec.items(), key=lambda t: vkey(t[0]), reverse=True))


# ---------------------------------------------------------------------------
# module Buchberger


def _vupdate_pairs(G, sugars, P, t, ring):
    """Pair update with chain/lcm eliminations, restricted to equal lead components."""
    (ltc, lte) = G[t][0][0]
    lead = [g[0][0] for g in G]

    kept = {}
    for (i, j), data in P.items():
        ci, ei = lead[i]
        lcm_ij = data[0]
        if (
            ci == ltc
            and m_divides(lte, lcm_ij)
            and lcm_ij != m_lcm(ei, lte)
            and lcm_ij != m_lcm(lead[j][1], lte)
        ):
            continue
        kept[(i, j)] = data
    P = kept

    new = {}
    for i in range(t):
        if lead[i][0] == ltc:
            new[i] = m_lcm(lead[i][1], lte)

    survivors = []
    for i in new:
        li = new[i]
        if any(m_divides(new[j], li) and new[j] != li for j in new):
            continue
        survivors.append(i)

    by_lcm: dict = {}
    for i in survivors:
        by_lcm.setdefault(new[i], []).append(i)

    for lcm_exps in sorted(by_lcm, key=ring.key):
        i = min(by_lcm[lcm_exps])
        s = max(
            sugars[i] + m_deg(m_div(lcm_exps, lead[i][1])),
            sugars[t] + m_deg(m_div(lcm_exps, lte)),
        )
        P[(i, t)] = (lcm_exps, s)
    return P


def _module_buchberger(inputs, ring: PolyRing):
    """Module Buchberger on sorted vector term tuples; returns the raw basis."""
    field = ring.field
    G: list = []
    sugars: list = []
    P: dict = {}
    for terms in inputs:
        if not terms:
            continue
        G.append(terms)
        sugars.append(max(m_deg(e) for (_, e), _ in terms))
        P = _vupdate_pairs(G, sugars, P, len(G) - 1, ring)

    key = ring.key
    while P:
        (i, j) = min(P, key=lambda ij: (P[ij][1], key(P[ij][0]), ij))
        lcm_exps, sugar = P.pop((i, j))
        fi, fj = G[i], G[j]
        work: dict = {}
        _vec_axpy(
            work, field.neg(field.invert(fi[0][1])), m_div(lcm_exps, fi[0][0][1]), fi, field
        )
        _vec_axpy(work, field.invert(fj[0][1]), m_div(lcm_exps, fj[0][0][1]), fj, field)
        rem = vec_reduce(work, [_as_vreducer(g) for g in G], ring)
        if rem:
            G.append(_sort_vec(rem, ring))
            sugars.append(max(sugar, max(m_deg(e) for (_, e) in rem)))
            P = _vupdate_pairs(G, sugars, P, len(G) - 1, ring)
    return G


def module_gb(vectors: Sequence[dict], ring: PolyRing) -> list[tuple]:
    """Reduced module Groebner basis: monic, auto-reduced, deterministically sorted."""
    inputs = [_sort_vec(v, ring) for v in vectors if v]
    if not inputs:
        return []
    G = _module_buchberger(inputs, ring)

    vkey = _vkey(ring.key)
    G = sorted(G, key=lambda g: vkey(g[0][0]))
    minimal = []
    for g in G:
        (c, e) = g[0][0]
        if not any(
            h[0][0][0] == c and m_divides(h[0][0][1], e) for h in minimal
        ):
            minimal.append(g)

    field = ring.field
    reduced = []
    for idx, g in enumerate(minimal):
        others = [_as_vreducer(h) for k, h in enumerate(minimal) if k != idx]
        rem = vec_reduce(dict(g), others, ring)
        if not rem:
            continue
        terms = _sort_vec(rem, ring)
        inv = field.invert(terms[0][1])
        reduced.append(tuple((t, field.mul(c, inv)) for t, c in terms))
    reduced.sort(key=lambda g: vkey(g[0][0]))
    return reduced


def gb_with_syzygies(vectors: Sequence[dict], ring: PolyRing):
    """Reduced module basis of the input span plus generators of its syzygies.

    Every S-pair of the reduced basis reduces to zero; recording the division
    quotients turns each zero reduction into an exact relation among the basis
    elements, and together these relations generate the full syzygy module.
    """
    H = module_gb(vectors, ring)
    field = ring.field
    syzygies: list[dict] = []
    reducers = [_as_vreducer(h) for h in H]
    for a in range(len(H)):
        (ca, ea), la = H[a][0]
        for b in range(a + 1, len(H)):
            (cb, eb), lb = H[b][0]
            if ca != cb:
                continue
            lcm_exps = m_lcm(ea, eb)
            sa = m_div(lcm_exps, ea)
            sb = m_div(lcm_exps, eb)
            work: dict = {}
            _vec_axpy(work, field.neg(field.invert(la)), sa, H[a], field)
            _vec_axpy(work, field.invert(lb), sb, H[b], field)
            quotients = [dict() for _ in H]
            rem = vec_reduce(work, reducers, ring, quotients)
            if rem:
                raise RingError("module basis failed its own S-pair test")
            syz: dict = {}
            syz[(a, sa)] = field.invert(la)
            prev = syz.get((b, sb), field.zero)
            syz[(b, sb)] = field.sub(prev, field.invert(lb))
            for k, q in enumerate(quotients):
                for shift, coeff in q.items():
                    key = (k, shift)
                    s = field.sub(syz.get(key, field.zero), coeff)
                    if s == field.zero:
                        syz.pop(key, None)
                    else:
                        syz[key] = s
            syz = {k: v for k, v in syz.items() if v != field.zero}
            if syz:
                syzygies.append(syz)
    return H, syzygies


def syzygies_of_generators(vectors: Sequence[dict], rank: int, ring: PolyRing) -> list[dict]:
    """Generators of the syzygy module of the vectors exactly as indexed.

    Tags are adjoined as components after the carrier module; a full Groebner
    basis is computed and the tag-only elements are projected back.
    """
    tagged = []
    for i, v in enumerate(vectors):
        w = dict(v)
        w[(rank + i, (0,) * ring.nvars)] = ring.field.one
        tagged.append(w)
    G = module_gb(tagged, ring)
    out = []
    for g in G:
        if all(comp >= rank for (comp, _), _ in g):
            out.append({(comp - rank, e): c for (comp, e), c in g})
    return out


# ---------------------------------------------------------------------------
# graded maps


class GradedMap:
    """A map of graded free modules given by its columns (images of basis vectors)."""

    __slots__ = ("source", "target", "cols")

    def __init__(self, source: FreeModule, target: FreeModule, cols: Sequence[dict]):
        self.source = source
        self.target = target
        self.cols = tuple(dict(c) for c in cols)

    def validate(self):
        """Check entry-by-entry degree compatibility with the twists."""
        for j, col in enumerate(self.cols):
            for (comp, e), _ in col.items():
                want = self.source.twists[j] - self.target.twists[comp]
                if m_deg(e) != want:
                    raise RingError(
                        f"entry at row {comp}, column {j} has degree {m_deg(e)}, expected {want}"
                    )
        return self

    def entry(self, i: int, j: int) -> Poly:
        ring = self.source.ring
        return ring.poly({e: c for (comp, e), c in self.cols[j].items() if comp == i})

    def matrix(self) -> list[list[Poly]]:
        return [
            [self.entry(i, j) for j in range(self.source.rank)]
            for i in range(self.target.rank)
        ]

    def transpose(self) -> "GradedMap":
        """The dual map: transposed columns, negated twists."""
        ring = self.source.ring
        cols: list[dict] = [dict() for _ in range(self.target.rank)]
        for j, col in enumerate(self.cols):
            for (comp, e), c in col.items():
                cols[comp][(j, e)] = c
        return GradedMap(
            FreeModule(ring, tuple(-t for t in self.target.twists)),
            FreeModule(ring, tuple(-t for t in self.source.twists)),
            cols,
        )

    def apply(self, vec: dict) -> dict:
        """Image of a source vector under the map."""
        field = self.source.ring.field
        out: dict = {}
        for (comp, e), c in vec.items():
            for (tcomp, te), tc in self.cols[comp].items():
                key = (tcomp, m_mul(e, te))
                s = field.add(out.get(key, field.zero), field.mul(c, tc))
                if s == field.zero:
                    out.pop(key, None)
                else:
                    out[key] = s
        return out

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def __repr__(self):
        return f"GradedMap({self.source} -> {self.target})"
