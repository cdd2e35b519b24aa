"""Exact substrate: coefficient fields, term orders, polynomial rings, sparse polynomials.

Coefficients are raw values interpreted through a field object: ``Fraction``
over the rationals, plain ``int`` in ``[0, p)`` over a prime field.  Monomials
are exponent tuples of length ``nvars``; polynomials store a tuple of
``(exponents, coefficient)`` terms sorted strictly descending in the ring's
term order.  Every object is an immutable value, so sharing is always safe.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

MAX_EXPONENT = 2**31 - 1


class CoefficientError(ValueError):
    pass


class RingError(ValueError):
    pass


class ParseError(ValueError):
    """Syntax or semantic error in polynomial text; carries a character offset."""

    def __init__(self, message: str, pos: int | None = None):
        super().__init__(message)
        self.pos = pos


# ---------------------------------------------------------------------------
# coefficient fields


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    # deterministic Miller-Rabin, sufficient for p < 3.3 * 10^14
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class RationalField:
    """The field Q; raw coefficient values are ``Fraction`` in lowest terms."""

    characteristic = 0
    name = "Q"

    zero = Fraction(0)
    one = Fraction(1)

    add = staticmethod(operator.add)
    sub = staticmethod(operator.sub)
    mul = staticmethod(operator.mul)
    neg = staticmethod(operator.neg)

    @staticmethod
    def invert(a: Fraction) -> Fraction:
        if a == 0:
            raise CoefficientError("division by zero")
        return 1 / a

    @staticmethod
    def divide(a: Fraction, b: Fraction) -> Fraction:
        if b == 0:
            raise CoefficientError("division by zero")
        return a / b

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise CoefficientError(f"cannot coerce {x!r} into Q")

    def fraction(self, num: int, den: int) -> Fraction:
        if den == 0:
            raise CoefficientError("zero denominator")
        return Fraction(num, den)

    @staticmethod
    def render(a: Fraction) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """GF(p) for a prime p < 2^31; raw values are ints in [0, p)."""

    def __init__(self, p: int):
        if not (2 <= p < 2**31) or not _is_prime(p):
            raise CoefficientError(f"{p} is not a prime below 2^31")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def invert(self, a):
        if a % self.p == 0:
            raise CoefficientError("division by zero in prime field")
        return pow(a, self.p - 2, self.p)

    def divide(self, a, b):
        return a * self.invert(b) % self.p

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return self.fraction(x.numerator, x.denominator)
        raise CoefficientError(f"cannot coerce {x!r} into {self.name}")

    def fraction(self, num: int, den: int):
        if den % self.p == 0:
            raise CoefficientError(
                f"denominator {den} is not invertible in {self.name}"
            )
        return num * self.invert(den % self.p) % self.p

    @staticmethod
    def render(a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


# ---------------------------------------------------------------------------
# term orders


@dataclass(frozen=True)
class TermOrder:
    """A total order on monomials: one of grevlex, lex, grlex, or a block order.

    A block order eliminates the first ``block`` variables: any monomial
    involving them compares above every monomial that does not, which is what
    intersection and elimination need.
    """

    kind: str
    block: int = 0
    inner: str = "grevlex"

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "grlex", "block"):
            raise RingError(f"unknown term order {self.kind!r}")
        if self.kind == "block" and self.block < 1:
            raise RingError("block order needs a positive eliminated prefix")

    def key_function(self, nvars: int):
        """Return exps -> sort key; larger key means larger monomial."""
        if self.kind == "grevlex":
            return _grevlex_key
        if self.kind == "lex":
            return _lex_key
        if self.kind == "grlex":
            return _grlex_key
        k = self.block
        if k >= nvars:
            raise RingError("block prefix must leave at least one variable")
        inner = TermOrder(self.inner).key_function(nvars - k)
        return lambda e: (_grevlex_key(e[:k]), inner(e[k:]))

    def __str__(self):
        if self.kind == "block":
            return f"block({self.block},{self.inner})"
        return self.kind


def _grevlex_key(e):
    total = 0
    for x in e:
        total += x
    return (total, tuple(-x for x in reversed(e)))


def _lex_key(e):
    return e


def _grlex_key(e):
    total = 0
    for x in e:
        total += x
    return (total, e)


GREVLEX = TermOrder("grevlex")
LEX = TermOrder("lex")
GRLEX = TermOrder("grlex")


def block_order(eliminated: int, inner: str = "grevlex") -> TermOrder:
    return TermOrder("block", eliminated, inner)


# ---------------------------------------------------------------------------
# monomial helpers (exponent tuples)


def m_mul(a: tuple, b: tuple) -> tuple:
    out = tuple(x + y for x, y in zip(a, b))
    for x in out:
        if x > MAX_EXPONENT:
            raise RingError("exponent overflow past 2^31-1")
    return out


def m_div(a: tuple, b: tuple) -> tuple:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def m_divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def m_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def m_gcd(a: tuple, b: tuple) -> tuple:
    return tuple(min(x, y) for x, y in zip(a, b))


def m_deg(a: tuple) -> int:
    return sum(a)


# ---------------------------------------------------------------------------
# polynomial ring


class PolyRing:
    """The graded ring K[x0..xn] with a fixed term order."""

    __slots__ = ("field", "variables", "order", "key", "_var_index", "_one", "_zero")

    def __init__(self, field, variables: Sequence[str], order: TermOrder = GREVLEX):
        variables = tuple(variables)
        if not variables:
            raise RingError("a polynomial ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise RingError("duplicate variable names")
        self.field = field
        self.variables = variables
        self.order = order
        self.key = order.key_function(len(variables))
        self._var_index = {v: i for i, v in enumerate(variables)}
        self._zero = None
        self._one = None

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def n(self) -> int:
        """Index of the last variable: the ring is K[x0..xn]."""
        return len(self.variables) - 1

    def var_index(self, name: str) -> int:
        try:
            return self._var_index[name]
        except KeyError:
            raise RingError(f"unknown variable {name!r}") from None

    def poly(self, term_dict: dict) -> "Poly":
        """Canonicalize a {exponents: raw coefficient} dict into a Poly."""
        items = [(e, c) for e, c in term_dict.items() if c != self.field.zero]
        items.sort(key=lambda t: self.key(t[0]), reverse=True)
        return Poly(self, tuple(items))

    def zero(self) -> "Poly":
        if self._zero is None:
            self._zero = Poly(self, ())
        return self._zero

    def one(self) -> "Poly":
        if self._one is None:
            self._one = Poly(self, (((0,) * self.nvars, self.field.one),))
        return self._one

    def constant(self, c) -> "Poly":
        return self.poly({(0,) * self.nvars: self.field.coerce(c)})

    def variable(self, i: int) -> "Poly":
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, ((tuple(e), self.field.one),))

    def monomial(self, exps: Sequence[int], coeff=1) -> "Poly":
        return self.poly({tuple(exps): self.field.coerce(coeff)})

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)

    def render_monomial(self, exps: tuple) -> str:
        parts = []
        for v, e in zip(self.variables, exps):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts) if parts else "1"

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.variables == other.variables
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.field, self.variables, self.order))

    def __repr__(self):
        return f"{self.field.name}[{','.join(self.variables)}]/{self.order}"


class Poly:
    """Immutable sparse polynomial: term tuple sorted descending in the ring order."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: tuple):
        self.ring = ring
        self.terms = terms

    # -- predicates and views ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def lead_exps(self) -> tuple:
        return self.terms[0][0]

    def lead_coeff(self):
        return self.terms[0][1]

    def total_degree(self) -> int:
        """Maximal term degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(m_deg(e) for e, _ in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        d = m_deg(self.terms[0][0])
        return all(m_deg(e) == d for e, _ in self.terms[1:])

    def homogeneous_degree(self) -> Optional[int]:
        """Degree shared by all terms, or None (inhomogeneous, or zero)."""
        if not self.terms or not self.is_homogeneous():
            return None
        return m_deg(self.terms[0][0])

    def as_dict(self) -> dict:
        return dict(self.terms)

    # -- arithmetic ----------------------------------------------------------

    def _require_same_ring(self, other: "Poly"):
        if self.ring != other.ring:
            raise RingError("polynomials live in different rings")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = self.ring.constant(other)
        self._require_same_ring(other)
        field = self.ring.field
        acc = dict(self.terms)
        for e, c in other.terms:
            s = field.add(acc.get(e, field.zero), c)
            if s == field.zero:
                acc.pop(e, None)
            else:
                acc[e] = s
        return self.ring.poly(acc)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = self.ring.constant(other)
        return self + (-other)

    def __neg__(self):
        neg = self.ring.field.neg
        return Poly(self.ring, tuple((e, neg(c)) for e, c in self.terms))

    def __mul__(self, other):
        field = self.ring.field
        if not isinstance(other, Poly):
            c = field.coerce(other)
            if c == field.zero:
                return self.ring.zero()
            return Poly(self.ring, tuple((e, field.mul(k, c)) for e, k in self.terms))
        self._require_same_ring(other)
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = m_mul(e1, e2)
                s = field.add(acc.get(e, field.zero), field.mul(c1, c2))
                if s == field.zero:
                    acc.pop(e, None)
                else:
                    acc[e] = s
        return self.ring.poly(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise RingError("negative polynomial power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        inv = self.ring.field.invert(self.terms[0][1])
        mul = self.ring.field.mul
        return Poly(self.ring, tuple((e, mul(c, inv)) for e, c in self.terms))

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, self.terms))

    # -- rendering -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        field = self.ring.field
        chunks = []
        for e, c in self.terms:
            mono = self.ring.render_monomial(e)
            if isinstance(c, Fraction) and c < 0:
                sign, body = "-", field.render(-c)
            else:
                sign, body = "+", field.render(c)
            if mono == "1":
                piece = body
            elif body == "1":
                piece = mono
            else:
                piece = f"{body}*{mono}"
            chunks.append((sign, piece))
        first_sign, first = chunks[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, piece in chunks[1:]:
            out += f" {sign} {piece}"
        return out

    def __repr__(self):
        return f"<{self}>"


# ---------------------------------------------------------------------------
# spec-level operations


def poly_op(kind: str, a: Poly, b) -> Poly:
    """Dispatch add/sub/mul/scale; ``b`` is a Poly or a raw coefficient."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "scale":
        return a * b
    raise RingError(f"unknown operation {kind!r}")


def substitute_linear(f: Poly, var_index: int, replacement: Poly) -> Poly:
    """Image of f under x_i -> replacement, for a replacement of degree <= 1.

    The replacement must be homogeneous of degree 1, a constant, or zero, so
    that homogeneous inputs stay homogeneous (degree-1 case) and hyperplane
    sections can be realized as ring maps.
    """
    ring = f.ring
    if replacement.ring != ring:
        raise RingError("replacement lives in a different ring")
    if not replacement.is_zero():
        d = replacement.homogeneous_degree()
        if d is None or d > 1:
            raise RingError("replacement must be homogeneous of degree 0 or 1")
    out = ring.zero()
    for e, c in f.terms:
        k = e[var_index]
        rest = list(e)
        rest[var_index] = 0
        piece = ring.monomial(rest, 1) * c
        if k:
            piece = piece * (replacement**k)
        out = out + piece
    return out


# ---------------------------------------------------------------------------
# parsing

_WS = " \t\r\n"


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in _WS:
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected an integer", start)
        value = int(self.text[start : self.pos])
        return value

    def take_name(self) -> str:
        self.skip_ws()
        start = self.pos
        ch = self.text[self.pos] if self.pos < len(self.text) else ""
        if not (ch.isalpha() or ch == "_"):
            raise ParseError("expected a variable name", start)
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start : self.pos]


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Parse ``term (('+'|'-') term)*`` where a term is an optional coefficient
    times an optional product of powered variables.

    Coefficients are integers or integer fractions ``a/b``; any other use of
    ``/`` (division by a variable or a term) is rejected.
    """
    toks = _Tokens(text)
    field = ring.field
    acc: dict = {}

    sign = 1
    ch = toks.peek()
    if ch in "+-":
        sign = -1 if ch == "-" else 1
        toks.pos += 1
    if toks.peek() == "":
        raise ParseError("empty polynomial", toks.pos)

    while True:
        exps, coeff = _parse_term(toks, ring)
        if sign < 0:
            coeff = field.neg(coeff)
        s = field.add(acc.get(exps, field.zero), coeff)
        if s == field.zero:
            acc.pop(exps, None)
        else:
            acc[exps] = s
        ch = toks.peek()
        if ch == "":
            break
        if ch not in "+-":
            raise ParseError(f"unexpected character {ch!r}", toks.pos)
        sign = -1 if ch == "-" else 1
        toks.pos += 1
    return ring.poly(acc)


def _parse_term(toks: _Tokens, ring: PolyRing):
    field = ring.field
    coeff = field.one
    exps = [0] * ring.nvars
    saw_factor = False

    ch = toks.peek()
    if ch.isdigit():
        num = toks.take_int()
        if toks.peek() == "/":
            toks.pos += 1
            if not toks.peek().isdigit():
                raise ParseError("division is only allowed inside a coefficient", toks.pos)
            den = toks.take_int()
            coeff = field.fraction(num, den)
        else:
            coeff = field.coerce(num)
        saw_factor = True
        ch = toks.peek()
        if ch == "*":
            toks.pos += 1
        elif not (ch.isalpha() or ch == "_"):
            return tuple(exps), coeff

    while True:
        ch = toks.peek()
        if not (ch.isalpha() or ch == "_"):
            if not saw_factor:
                raise ParseError("expected a term", toks.pos)
            raise ParseError(f"expected a variable, found {ch!r}", toks.pos)
        pos = toks.pos
        name = toks.take_name()
        try:
            idx = ring.var_index(name)
        except RingError:
            raise ParseError(f"unknown variable {name!r}", pos) from None
        power = 1
        if toks.peek() == "^":
            toks.pos += 1
            ppos = toks.pos
            power = toks.take_int()
            if power > MAX_EXPONENT:
                raise ParseError("exponent exceeds 2^31-1", ppos)
        exps[idx] += power
        if exps[idx] > MAX_EXPONENT:
            raise ParseError("exponent exceeds 2^31-1", pos)
        saw_factor = True
        ch = toks.peek()
        if ch == "*":
            toks.pos += 1
            continue
        if ch == "/":
            raise ParseError("division is only allowed inside a coefficient", toks.pos)
        return tuple(exps), coeff
