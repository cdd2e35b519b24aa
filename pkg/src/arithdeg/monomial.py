"""Combinatorially exact machinery for monomial ideals.

Everything here avoids Groebner computation: intersections are pairwise
lcms, colons are exponent shifts, decompositions come from the classical
coprime-splitting recursion, and Betti numbers are read off simplicial
homology of upper Koszul complexes over the lcm lattice.  This module is the
fast path and the independent oracle against the resolution-based route.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .betti import BettiTable
from .hilbert import module_sum_of_gaps
from .ring import GREVLEX, PolyRing, RingError, m_deg, m_divides, m_lcm


def _minimal(gens: Iterable[tuple]) -> tuple:
    exps = sorted(set(gens), key=lambda e: (m_deg(e), e))
    out = []
    for e in exps:
        if not any(m_divides(f, e) for f in out):
            out.append(e)
    return tuple(out)


class MonomialIdeal:
    """A monomial ideal kept as its minimal generator set (pairwise non-dividing)."""

    __slots__ = ("ring", "gens", "_numerator")

    def __init__(self, ring: PolyRing, gens: Iterable[Sequence[int]]):
        exps = []
        for g in gens:
            e = tuple(g)
            if len(e) != ring.nvars or any(x < 0 for x in e):
                raise RingError(f"bad exponent vector {e}")
            exps.append(e)
        self.ring = ring
        self.gens = _minimal(exps)
        self._numerator = None

    # -- basic structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(m_deg(e) == 0 for e in self.gens)

    def is_proper(self) -> bool:
        return not self.is_unit()

    def contains(self, exps: tuple) -> bool:
        return any(m_divides(g, exps) for g in self.gens)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def lt_exps(self) -> tuple:
        return self.gens

    def support(self) -> frozenset:
        out = set()
        for g in self.gens:
            out.update(i for i, x in enumerate(g) if x)
        return frozenset(out)

    def polys(self) -> list:
        return [self.ring.monomial(e) for e in self.gens]

    def __eq__(self, other):
        return (
            isinstance(other, MonomialIdeal)
            and self.ring == other.ring
            and self.gens == other.gens
        )

    def __hash__(self):
        return hash((self.ring, self.gens))

    def __repr__(self):
        body = ", ".join(self.ring.render_monomial(e) for e in self.gens) or "0"
        return f"({body})"

    # -- exact ideal algebra ----------------------------------------------------

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if self.ring != other.ring:
            raise RingError("ideals live in different rings")
        if self.is_zero() or other.is_zero():
            return MonomialIdeal(self.ring, ())
        lcms = [m_lcm(a, b) for a in self.gens for b in other.gens]
        return MonomialIdeal(self.ring, lcms)

    def plus(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.ring, self.gens + other.gens)

    def colon_monomial(self, exps: tuple) -> "MonomialIdeal":
        """(self : x^exps) by the exponent-shift rule g -> g / gcd(g, x^exps)."""
        shifted = [
            tuple(max(g_i - e_i, 0) for g_i, e_i in zip(g, exps)) for g in self.gens
        ]
        return MonomialIdeal(self.ring, shifted)

    def saturate_variable(self, i: int) -> "MonomialIdeal":
        dropped = [
            tuple(0 if k == i else x for k, x in enumerate(g)) for g in self.gens
        ]
        return MonomialIdeal(self.ring, dropped)

    def saturate_variables(self, variables: Iterable[int]) -> "MonomialIdeal":
        """Saturation with respect to the ideal of the given variables."""
        variables = list(variables)
        if not variables:
            raise RingError("saturation needs at least one variable")
        out = self.saturate_variable(variables[0])
        for v in variables[1:]:
            out = out.intersect(self.saturate_variable(v))
        return out


# ---------------------------------------------------------------------------
# decomposition


@dataclass(frozen=True)
class PrimaryComponent:
    """A primary monomial component together with its coordinate prime."""

    ideal: MonomialIdeal
    prime: tuple  # sorted variable indices
    hdim: int
    prime_degree: int = 1  # coordinate primes are linear subspaces


@dataclass(frozen=True)
class Decomposition:
    source: MonomialIdeal
    components: tuple


def irreducible_decomposition(M: MonomialIdeal) -> list[MonomialIdeal]:
    """Irredundant irreducible components via coprime splitting.

    A generator m = u*v with coprime u, v splits the ideal into (rest, u) and
    (rest, v); leaves are generated by pure variable powers.  The recursion
    always splits the lexicographically first mixed generator at its lowest
    variable, which fixes the output order.
    """
    if M.is_unit():
        raise RingError("the unit ideal has no decomposition")
    if M.is_zero():
        raise RingError("the zero ideal has no monomial decomposition")
    leaves: list[tuple] = []
    stack = [M.gens]
    while stack:
        gens = stack.pop()
        split_at = None
        for e in sorted(gens):
            if sum(1 for x in e if x) > 1:
                split_at = e
                break
        if split_at is None:
            leaves.append(tuple(sorted(gens)))
            continue
        rest = [g for g in gens if g != split_at]
        low = next(i for i, x in enumerate(split_at) if x)
        u = tuple(x if i == low else 0 for i, x in enumerate(split_at))
        v = tuple(0 if i == low else x for i, x in enumerate(split_at))
        stack.append(_minimal(rest + [u]))
        stack.append(_minimal(rest + [v]))

    ideals = []
    seen = set()
    for gens in sorted(set(leaves)):
        mono = MonomialIdeal(M.ring, gens)
        if mono.gens not in seen:
            seen.add(mono.gens)
            ideals.append(mono)
    return _irredundant(ideals, M)


def _irredundant(ideals: list[MonomialIdeal], target: MonomialIdeal) -> list[MonomialIdeal]:
    kept = list(ideals)
    # containment prune: a component containing another is redundant
    changed = True
    while changed:
        changed = False
        for i, a in enumerate(kept):
            for j, b in enumerate(kept):
                if i != j and a.contains_ideal(b):
                    # a contains the intersection of the rest via b
                    kept.pop(i)
                    changed = True
                    break
            if changed:
                break
    # full pass: drop anything containing the intersection of the others
    i = 0
    while i < len(kept):
        others = [c for j, c in enumerate(kept) if j != i]
        if others:
            inter = others[0]
            for c in others[1:]:
                inter = inter.intersect(c)
            if kept[i].contains_ideal(inter):
                kept.pop(i)
                continue
        i += 1
    return kept


def primary_decomposition(M: MonomialIdeal) -> Decomposition:
    """Group irreducible components by radical and intersect each group."""
    irr = irreducible_decomposition(M)
    n = M.ring.n
    groups: dict = {}
    for comp in irr:
        support = tuple(sorted(comp.support()))
        groups.setdefault(support, []).append(comp)
    components = []
    for support in sorted(groups, key=lambda s: (len(s), s)):
        members = groups[support]
        q = members[0]
        for other in members[1:]:
            q = q.intersect(other)
        components.append(
            PrimaryComponent(ideal=q, prime=support, hdim=n - len(support))
        )
    components.sort(key=lambda c: (-c.hdim, c.prime))
    return Decomposition(source=M, components=tuple(components))


def associated_primes(M: MonomialIdeal) -> list[tuple]:
    """Coordinate primes of S/M as sorted variable-index tuples."""
    return [c.prime for c in primary_decomposition(M).components]


def dimension_filtration_monomial(M: MonomialIdeal, r: int) -> MonomialIdeal:
    """Intersection of the primary components of homogeneous dimension >= r."""
    n = M.ring.n
    if not -1 <= r <= n:
        raise RingError(f"filtration level {r} out of range")
    if r == -1:
        return M
    kept = [c.ideal for c in primary_decomposition(M).components if c.hdim >= r]
    if not kept:
        return MonomialIdeal(M.ring, [(0,) * M.ring.nvars])
    out = kept[0]
    for c in kept[1:]:
        out = out.intersect(c)
    return out


# ---------------------------------------------------------------------------
# length-multiplicity by localization


def length_multiplicity(M: MonomialIdeal, prime: Sequence[int]) -> int:
    """Length contributed at a coordinate prime: localize by deleting the
    variables outside the prime, then count the torsion gap of the result.

    The count is Sum_l [H(S'/M', l) - H(S'/sat(M'), l)], a finite sum equal to
    the length of the maximal-torsion of the localized quotient.
    """
    prime = tuple(sorted(prime))
    if prime not in associated_primes(M):
        raise RingError(f"{prime} is not an associated prime")
    keep = list(prime)
    order = M.ring.order if M.ring.order.kind != "block" else GREVLEX
    sub = PolyRing(M.ring.field, tuple(M.ring.variables[i] for i in keep), order)
    restricted = MonomialIdeal(sub, [tuple(g[i] for i in keep) for g in M.gens])
    sat = restricted.saturate_variables(range(len(keep)))
    return module_sum_of_gaps(big=sat, small=restricted)


# ---------------------------------------------------------------------------
# lcm-lattice Betti numbers via upper Koszul homology


def _rank(rows: list[list], field) -> int:
    """Rank by exact Gaussian elimination over the coefficient field."""
    if not rows or not rows[0]:
        return 0
    mat = [list(r) for r in rows]
    ncols = len(mat[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, len(mat)):
            if mat[r][col] != field.zero:
                pivot = r
                break
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        inv = field.invert(mat[row][col])
        mat[row] = [field.mul(x, inv) for x in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col] != field.zero:
                factor = mat[r][col]
                mat[r] = [
                    field.sub(x, field.mul(factor, y))
                    for x, y in zip(mat[r], mat[row])
                ]
        row += 1
        rank += 1
        if row == len(mat):
            break
    return rank


def _reduced_homology_ranks(faces_by_card: dict, field) -> dict:
    """Reduced homology ranks of a simplicial complex given as faces grouped
    by cardinality (the empty face at cardinality 0 is included)."""
    max_card = max(faces_by_card)
    ranks_d: dict = {}
    for c in range(1, max_card + 1):
        lower = {f: i for i, f in enumerate(faces_by_card.get(c - 1, []))}
        rows = []
        for face in faces_by_card.get(c, []):
            row = [field.zero] * len(lower)
            for k in range(len(face)):
                sub = face[:k] + face[k + 1 :]
                sign = field.one if k % 2 == 0 else field.neg(field.one)
                row[lower[sub]] = sign
            rows.append(row)
        ranks_d[c] = _rank(rows, field) if rows and lower else 0
    out = {}
    for c in range(0, max_card + 1):
        n_faces = len(faces_by_card.get(c, []))
        out[c - 1] = n_faces - ranks_d.get(c, 0) - ranks_d.get(c + 1, 0)
    return out


def lcm_betti(M: MonomialIdeal) -> BettiTable:
    """Graded Betti numbers of S/M from upper Koszul complexes at lcm-lattice
    multidegrees, with exact ranks over the coefficient field."""
    if M.is_unit() or M.is_zero():
        raise RingError("Betti table needs a proper nonzero monomial ideal")
    gens = M.gens
    lattice = set()
    for size in range(1, len(gens) + 1):
        for subset in combinations(gens, size):
            b = subset[0]
            for g in subset[1:]:
                b = m_lcm(b, g)
            lattice.add(b)

    field = M.ring.field
    entries: dict = {(0, 0): 1}
    for b in sorted(lattice, key=lambda e: (m_deg(e), e)):
        vertices = [i for i, x in enumerate(b) if x]
        faces_by_card: dict = {0: [()]}
        for c in range(1, len(vertices) + 1):
            faces = []
            for subset in combinations(vertices, c):
                reduced = tuple(
                    x - 1 if i in subset else x for i, x in enumerate(b)
                )
                if M.contains(reduced):
                    faces.append(subset)
            if faces:
                faces_by_card[c] = faces
        hom = _reduced_homology_ranks(faces_by_card, field)
        degree = m_deg(b)
        for c_minus_1, rank in hom.items():
            if rank:
                i = c_minus_1 + 1  # homology at dimension i-1 feeds beta_{i,b}
                entries[(i + 1, degree)] = entries.get((i + 1, degree), 0) + rank
    return BettiTable(entries, M.ring.nvars)
