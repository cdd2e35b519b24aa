"""Graded free resolutions, regularity and depth, and the Ext-annihilator
route to the dimension filtration of a general homogeneous ideal.

The resolution is built by iterated syzygies of the reduced basis of S/I and
pruned to the minimal one as it grows: after every syzygy step the complex is
split along degree-0 (constant) entries.  Minimality keeps the length within
the variable count and makes the twist lists the graded Betti numbers.

Two always-on validations run on every resolution: consecutive maps compose
to zero exactly, and the alternating sum of the free-module Hilbert functions
reproduces the Hilbert function of the quotient.

``dimension_filtration(I, r)`` removes the primary components of homogeneous
dimension below r by saturating at the annihilators of the Ext modules
Ext^c(S/I, S): each associated prime of codimension c contains the
annihilator at position c and no deeper one, so the saturations strip exactly
the low-dimensional components.
"""

from __future__ import annotations

from math import comb
from typing import Optional

from .betti import BettiTable
from .groebner import Ideal, intersect, saturate
from .hilbert import hilbert_function
from .modules import (
    FreeModule,
    GradedMap,
    gb_with_syzygies,
    syzygies_of_generators,
    vec_degree,
)
from .ring import PolyRing, RingError, m_mul


_RES_CACHE: dict = {}


def _count_monomials(nvars: int, d: int) -> int:
    if d < 0:
        return 0
    return comb(d + nvars - 1, nvars - 1)


# ---------------------------------------------------------------------------
# minimalization


def _find_pivot(cols, zero_exps):
    pivot = None
    for b, col in enumerate(cols):
        for (comp, e) in col:
            if e == zero_exps and (pivot is None or (comp, b) < pivot):
                pivot = (comp, b)
    return pivot


def _minimalize_complex(twists: list, diffs: list, ring: PolyRing):
    """Split off constant pivots in place; smallest (row, column) first."""
    field = ring.field
    zero_exps = (0,) * ring.nvars
    changed = True
    while changed:
        changed = False
        for idx in range(len(diffs)):
            cols = diffs[idx]
            pivot = _find_pivot(cols, zero_exps)
            if pivot is None:
                continue
            a, b = pivot
            u = cols[b][(a, zero_exps)]
            for c_idx, col in enumerate(cols):
                if c_idx == b:
                    continue
                row_terms = [(e, c) for (comp, e), c in col.items() if comp == a]
                for e1, c1 in row_terms:
                    factor = field.divide(c1, u)
                    for (comp2, e2), c2 in cols[b].items():
                        key = (comp2, m_mul(e1, e2))
                        s = field.sub(col.get(key, field.zero), field.mul(factor, c2))
                        if s == field.zero:
                            col.pop(key, None)
                        else:
                            col[key] = s
            cols.pop(b)
            for col in cols:
                if any(comp == a for (comp, _) in col):
                    raise RingError("minimalization failed to clear a pivot row")
            for ci in range(len(cols)):
                cols[ci] = {
                    ((comp - 1 if comp > a else comp), e): c
                    for (comp, e), c in cols[ci].items()
                }
            twists[idx].pop(a)
            twists[idx + 1].pop(b)
            if idx > 0:
                diffs[idx - 1].pop(a)
            if idx + 1 < len(diffs):
                nxt = diffs[idx + 1]
                for ci in range(len(nxt)):
                    nxt[ci] = {
                        ((comp - 1 if comp > b else comp), e): c
                        for (comp, e), c in nxt[ci].items()
                        if comp != b
                    }
            changed = True
            break
    while diffs and not diffs[-1]:
        diffs.pop()
        twists.pop()


# ---------------------------------------------------------------------------
# resolutions


def free_resolution(I: Ideal) -> list[GradedMap]:
    """Minimal graded free resolution of S/I as the list of maps d_1, d_2, ...

    An empty list is the resolution of S itself (I = 0).
    """
    cache_key = (I.ring, I.groebner())
    if cache_key in _RES_CACHE:
        return _RES_CACHE[cache_key]
    ring = I.ring
    gb = I.groebner()
    if not gb:
        _RES_CACHE[cache_key] = []
        return []

    twists: list[list] = [[0], [g.homogeneous_degree() for g in gb]]
    diffs: list[list] = [[{(0, e): c for e, c in g.terms} for g in gb]]

    while True:
        if len(diffs) > ring.nvars + 1:
            raise RingError("resolution exceeded the syzygy-theorem length bound")
        H, syz = gb_with_syzygies(diffs[-1], ring)
        new_cols = [dict(h) for h in H]
        new_twists = [vec_degree(col, tuple(twists[-2])) for col in new_cols]
        if any(t is None for t in new_twists):
            raise RingError("inhomogeneous column in a resolution step")
        diffs[-1] = new_cols
        twists[-1] = new_twists
        if not syz:
            break
        syz_twists = [vec_degree(s, tuple(new_twists)) for s in syz]
        if any(t is None for t in syz_twists):
            raise RingError("inhomogeneous syzygy in a resolution step")
        diffs.append([dict(s) for s in syz])
        twists.append(syz_twists)
        _minimalize_complex(twists, diffs, ring)

    _minimalize_complex(twists, diffs, ring)

    maps = []
    modules = [FreeModule(ring, tuple(t)) for t in twists]
    for i, cols in enumerate(diffs):
        maps.append(GradedMap(modules[i + 1], modules[i], cols).validate())
    _verify_resolution(I, maps)
    _RES_CACHE[cache_key] = maps
    return maps


def _verify_resolution(I: Ideal, maps: list[GradedMap]):
    for i in range(len(maps) - 1):
        for col in maps[i + 1].cols:
            if maps[i].apply(col):
                raise RingError("resolution maps do not compose to zero")
    ring = I.ring
    for ell in range(0, 9):
        total = _count_monomials(ring.nvars, ell)
        sign = -1
        for mp in maps:
            for a in mp.source.twists:
                total += sign * _count_monomials(ring.nvars, ell - a)
            sign = -sign
        if total != hilbert_function(I, ell):
            raise RingError("resolution fails the Hilbert alternating-sum identity")


def betti_table(I: Ideal) -> BettiTable:
    """Graded Betti numbers of S/I from the minimal resolution."""
    maps = free_resolution(I)
    entries = {(0, 0): 1}
    for i, mp in enumerate(maps, start=1):
        for a in mp.source.twists:
            entries[(i, a)] = entries.get((i, a), 0) + 1
    return BettiTable(entries, I.ring.nvars)


def projective_dimension(I: Ideal) -> int:
    return len(free_resolution(I))


def depth(I: Ideal) -> int:
    """Depth of S/I by Auslander-Buchsbaum: nvars - pd(S/I)."""
    if I.is_unit():
        raise RingError("the unit ideal has no depth")
    return I.ring.nvars - projective_dimension(I)


def regularity(I: Ideal) -> int:
    """The regularity invariant m(I) = reg(S/I) + 1 used by all bound checks.

    The +1 normalizes from the quotient to the ideal, so a linear complete
    intersection gets m = 1 and (x0^2, x1^3) gets m = 4.
    """
    if I.is_unit():
        raise RingError("the unit ideal has no regularity")
    return betti_table(I).reg() + 1


def quotient_regularity(I: Ideal) -> int:
    """reg(S/I) straight off the minimal resolution."""
    return betti_table(I).reg()


# ---------------------------------------------------------------------------
# Ext annihilators and the dimension filtration


def _module_colon(U_cols: list[dict], v: dict, rank: int, ring: PolyRing) -> Ideal:
    """The ideal {a : a*v lies in the span of U_cols} inside a rank-`rank` module."""
    vectors = [dict(v)] + [dict(u) for u in U_cols]
    syz = syzygies_of_generators(vectors, rank, ring)
    gens = []
    for s in syz:
        first = {e: c for (comp, e), c in s.items() if comp == 0}
        if first:
            for piece in _homogeneous_pieces(first, ring):
                gens.append(piece)
    return Ideal(ring, gens, provenance="module colon")


def _homogeneous_pieces(term_dict: dict, ring: PolyRing):
    from .ring import m_deg

    by_deg: dict = {}
    for e, c in term_dict.items():
        by_deg.setdefault(m_deg(e), {})[e] = c
    return [ring.poly(d) for _, d in sorted(by_deg.items())]


def ext_annihilator(I: Ideal, c: int) -> Ideal:
    """Annihilator of Ext^c(S/I, S); the unit ideal when the Ext module vanishes.

    Computed from the dualized minimal resolution: kernel generators at
    position c via syzygies of the dual map, then the intersection over those
    generators of the colons into the image of the previous dual map.
    """
    ring = I.ring
    if not 0 <= c <= ring.nvars:
        raise RingError(f"Ext position {c} out of range")
    key = (I.ring, I.groebner(), "ext", c)
    if key in _RES_CACHE:
        return _RES_CACHE[key]
    maps = free_resolution(I)
    p = len(maps)
    unit = Ideal(ring, [ring.one()], provenance="vanishing Ext")
    if c > p:
        _RES_CACHE[key] = unit
        return unit

    rank_c = maps[c - 1].source.rank if c >= 1 else 1
    if c == p:
        kernel = []
        zero_exps = (0,) * ring.nvars
        for i in range(rank_c):
            kernel.append({(i, zero_exps): ring.field.one})
    else:
        dual_next = maps[c].transpose()
        kernel = syzygies_of_generators(
            dual_next.cols, maps[c].source.rank, ring
        )

    if not kernel:
        _RES_CACHE[key] = unit
        return unit
    U_cols = list(maps[c - 1].transpose().cols) if c >= 1 else []

    ann: Optional[Ideal] = None
    for k in kernel:
        col = _module_colon(U_cols, k, rank_c, ring)
        if col.is_unit():
            continue
        ann = col if ann is None else intersect(ann, col)
    if ann is None:
        ann = unit
    _RES_CACHE[key] = ann
    return ann


def dimension_filtration(I: Ideal, r: int) -> Ideal:
    """The intersection of the primary components of I with hdim >= r,
    computed by Ext-annihilator saturations (no primary decomposition).
    """
    ring = I.ring
    n = ring.n
    if not -1 <= r <= n:
        raise RingError(f"filtration level {r} out of range")
    cached = I._aux.get(("filtration", r))
    if cached is not None:
        return cached
    out = I
    for i in range(-1, r):
        ann = ext_annihilator(I, n - i)
        if ann.is_unit():
            continue
        if ann.is_zero():
            raise RingError("zero Ext annihilator in the dimension filtration")
        out = saturate(out, ann)
    out = Ideal(ring, out.groebner(), provenance=f"filtration >= {r}")
    out._gb = tuple(out.gens)
    I._aux[("filtration", r)] = out
    return out
