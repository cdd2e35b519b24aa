"""Hilbert series, functions, and polynomials, with the backward-difference
operators and the degenerate conventions used throughout the package.

Conventions for a graded quotient M = S/I with Hilbert polynomial P:

* P = (e/d!) * l^d + lower order, e >= 1: homogeneous dimension hdim = d,
  degree = e.
* P = 0 (finite length): hdim = -1 and degree = sum of all Hilbert function
  values, so the irrelevant maximal ideal has hdim -1 and degree 1.

All series work happens on the numerator over (1-t)^nvars.  Monomial data
travels as plain exponent tuples, so this module has no ideal-type imports;
higher layers pass anything exposing ``ring`` and ``lt_exps()``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from .ring import RingError, m_deg, m_divides


# ---------------------------------------------------------------------------
# numerical polynomials in one variable over Q


class NumPoly:
    """Dense univariate polynomial with Fraction coefficients (index = power)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def constant(c) -> "NumPoly":
        return NumPoly([Fraction(c)])

    @staticmethod
    def binomial(shift: int, d: int) -> "NumPoly":
        """C(l + shift, d) as a polynomial in l."""
        out = NumPoly([Fraction(1)])
        for i in range(d):
            out = out * NumPoly([Fraction(shift - i), Fraction(1)])
        return out / _factorial(d)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "NumPoly") -> "NumPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return NumPoly(out)

    def __sub__(self, other: "NumPoly") -> "NumPoly":
        return self + NumPoly([-c for c in other.coeffs])

    def __neg__(self) -> "NumPoly":
        return NumPoly([-c for c in self.coeffs])

    def __mul__(self, other) -> "NumPoly":
        if isinstance(other, NumPoly):
            if not self.coeffs or not other.coeffs:
                return NumPoly()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return NumPoly(out)
        return NumPoly([c * Fraction(other) for c in self.coeffs])

    __rmul__ = __mul__

    def __truediv__(self, k) -> "NumPoly":
        return NumPoly([c / Fraction(k) for c in self.coeffs])

    def shift_arg(self, s: int) -> "NumPoly":
        """P(l - s) expanded in l."""
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        for k, c in enumerate(self.coeffs):
            for j in range(k + 1):
                out[j] += c * comb(k, j) * Fraction(-s) ** (k - j)
        return NumPoly(out)

    def __eq__(self, other):
        return isinstance(other, NumPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*l" if c != 1 else "l")
            else:
                parts.append(f"{c}*l^{k}" if c != 1 else f"l^{k}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"NumPoly({self})"


def _factorial(d: int) -> Fraction:
    out = Fraction(1)
    for i in range(2, d + 1):
        out *= i
    return out


def delta(P: NumPoly, r: int = 1) -> NumPoly:
    """Iterated backward difference P(l) - P(l-1); r = 0 is the identity."""
    if r < 0:
        raise ValueError("difference order must be non-negative")
    out = P
    for _ in range(r):
        out = out - out.shift_arg(1)
    return out


def delta_tau(P: NumPoly, tau: int) -> NumPoly:
    """The spread difference P(l) - P(l - tau), tau >= 1."""
    if tau < 1:
        raise ValueError("tau must be at least 1")
    return P - P.shift_arg(tau)


def delta_function(H: Callable[[int], int], r: int, ell: int) -> int:
    """Iterated backward difference of an integer function at one point."""
    if r < 0:
        raise ValueError("difference order must be non-negative")
    return sum((-1) ** k * comb(r, k) * H(ell - k) for k in range(r + 1))


# ---------------------------------------------------------------------------
# Hilbert series numerators for monomial data


def _minimalize(gens) -> tuple:
    exps = sorted(set(gens), key=lambda e: (m_deg(e), e))
    out = []
    for e in exps:
        if not any(m_divides(f, e) for f in out):
            out.append(e)
    return tuple(out)


def series_numerator(gens: Sequence[tuple]) -> dict:
    """Numerator of the Hilbert series of S/M over (1-t)^nvars, M monomial.

    Pivot recursion: split off one power of the most frequent variable, so
    N(M) = N(M + (x_j)) + t * N(M : x_j); pure-power generator sets are a
    regular sequence and give the product of (1 - t^deg) directly.
    """
    gens = tuple(gens)
    if any(m_deg(e) == 0 for e in gens):
        return {}
    return _series_rec(_minimalize(gens))


def _series_rec(gens: tuple) -> dict:
    if not gens:
        return {0: 1}
    if any(m_deg(e) == 0 for e in gens):
        return {}
    supports = [[i for i, x in enumerate(e) if x] for e in gens]
    if all(len(s) == 1 for s in supports):
        # pairwise coprime pure powers: multiply out prod(1 - t^deg)
        num = {0: 1}
        for e in gens:
            d = m_deg(e)
            nxt: dict = {}
            for k, c in num.items():
                nxt[k] = nxt.get(k, 0) + c
                nxt[k + d] = nxt.get(k + d, 0) - c
            num = {k: c for k, c in nxt.items() if c}
        return num

    counts: dict = {}
    for s in supports:
        if len(s) > 1:
            for i in s:
                counts[i] = counts.get(i, 0) + 1
    pivot = max(sorted(counts), key=lambda i: counts[i])

    plus = _minimalize(
        [e for e in gens if e[pivot] == 0]
        + [tuple(1 if i == pivot else 0 for i in range(len(gens[0])))]
    )
    quot = _minimalize(
        tuple(x - 1 if i == pivot and x > 0 else x for i, x in enumerate(e))
        for e in gens
    )
    num = _series_rec(plus)
    for k, c in _series_rec(quot).items():
        num[k + 1] = num.get(k + 1, 0) + c
    return {k: c for k, c in num.items() if c}


def numerator_hilbert_function(num: dict, nvars: int, ell: int) -> int:
    """Coefficient of t^ell in num / (1-t)^nvars (0 for negative ell)."""
    n = nvars - 1
    total = 0
    for j, c in num.items():
        if ell - j >= 0:
            total += c * comb(ell - j + n, n)
    return total


def _strip_unit_roots(num: dict) -> tuple[dict, int]:
    """Divide out (1 - t)^k with maximal k; returns (quotient, k)."""
    if not num:
        return {}, 0
    k = 0
    current = dict(num)
    while sum(current.values()) == 0:
        # synthetic division by (1 - t): c'_i = sum_{j <= i} c_j
        top = max(current)
        quot: dict = {}
        acc = 0
        for i in range(top + 1):
            acc += current.get(i, 0)
            if acc:
                quot[i] = acc
        # degree drops by one; the running total ends at zero by assumption
        quot.pop(top, None)
        current = quot
        k += 1
        if not current:
            break
    return current, k


# ---------------------------------------------------------------------------
# assembled Hilbert data


@dataclass(frozen=True)
class HilbertSeries:
    """Exact series numerator over the implicit denominator (1-t)^nvars."""

    numerator: tuple
    nvars: int

    def value(self, ell: int) -> int:
        return numerator_hilbert_function(dict(self.numerator), self.nvars, ell)

    def numerator_dict(self) -> dict:
        return dict(self.numerator)

    def __str__(self):
        if not self.numerator:
            return f"0 / (1-t)^{self.nvars}"
        terms = " + ".join(
            f"{c}*t^{j}" if j else str(c) for j, c in sorted(self.numerator)
        )
        return f"({terms}) / (1-t)^{self.nvars}".replace("+ -", "- ")


@dataclass(frozen=True)
class HilbertPolyData:
    """Hilbert polynomial with homogeneous dimension, degree, and the least
    postulation bound from which the function agrees with the polynomial."""

    poly: NumPoly
    hdim: int
    degree: int
    postulation: int


def series_of(obj) -> HilbertSeries:
    """Hilbert series of S/I for anything exposing ``ring`` and ``lt_exps()``."""
    cached = getattr(obj, "_numerator", None)
    if cached is not None:
        return cached
    num = series_numerator(obj.lt_exps())
    series = HilbertSeries(tuple(sorted(num.items())), obj.ring.nvars)
    try:
        obj._numerator = series
    except AttributeError:
        pass
    return series


def hilbert_function(obj, ell: int) -> int:
    """dim_K [S/I]_ell, exactly (0 for ell < 0)."""
    return series_of(obj).value(ell)


def hilbert_data_from_numerator(num: dict, nvars: int) -> HilbertPolyData:
    reduced, k = _strip_unit_roots(num)
    d = nvars - 1 - k
    if d < 0 or not num:
        # finite length: P = 0, degree counts all graded pieces
        total = sum(
            numerator_hilbert_function(num, nvars, ell)
            for ell in range(0, (max(num) + 1 if num else 0))
        ) if num else 0
        if not num:
            return HilbertPolyData(NumPoly(), -1, 0, 0)
        P = NumPoly()
    else:
        P = NumPoly()
        for j, c in sorted(reduced.items()):
            P = P + NumPoly.binomial(d - j, d) * c
        total = sum(reduced.values())

    # scan the postulation bound downward from a sound upper bound
    if d < 0:
        ub = (max(num) + 1) if num else 0
    else:
        ub = (max(reduced) - d) if reduced else 0

    def H(ell):
        return numerator_hilbert_function(num, nvars, ell)

    ell0 = ub
    while H(ell0 - 1) == P(ell0 - 1):
        ell0 -= 1
        if ell0 < -(2 * nvars + (len(P.coeffs) or 1) + 4):
            break
    return HilbertPolyData(P, d, int(total), ell0)


def hilbert_polynomial(obj) -> HilbertPolyData:
    """Hilbert polynomial data of S/I under the package conventions."""
    series = series_of(obj)
    return hilbert_data_from_numerator(series.numerator_dict(), series.nvars)


def ring_hilbert_polynomial(nvars: int) -> NumPoly:
    """P(S, l) = C(l + n, n) for the ambient ring itself."""
    return NumPoly.binomial(nvars - 1, nvars - 1)


def module_sum_of_gaps(big, small) -> int:
    """Sum over l of H(S/small, l) - H(S/big, l) for small contained in big
    (as quotient dimensions: small ideal contained in big ideal).

    The difference series must be a polynomial in t (finite length gap);
    anything else raises, which doubles as the stabilization proof.
    """
    s_small = series_of(small)
    s_big = series_of(big)
    if s_small.nvars != s_big.nvars:
        raise RingError("gap of ideals in different rings")
    diff: dict = s_small.numerator_dict()
    for j, c in s_big.numerator_dict().items():
        diff[j] = diff.get(j, 0) - c
    diff = {j: c for j, c in diff.items() if c}
    if not diff:
        return 0
    quot = dict(diff)
    for _ in range(s_small.nvars):
        if sum(quot.values()) != 0:
            raise RingError("gap between ideals has infinite length")
        top = max(quot)
        nxt: dict = {}
        acc = 0
        for i in range(top + 1):
            acc += quot.get(i, 0)
            if acc:
                nxt[i] = acc
        nxt.pop(top, None)
        quot = nxt
        if not quot:
            return 0
    return sum(quot.values())
