"""Exact multivariate polynomials over QQ, term orders and ring descriptors.

Monomials are plain tuples of exponents.  Coefficients are
:class:`fractions.Fraction`, which already keeps numerator and denominator
coprime with a positive denominator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from operator import add, le, sub
from typing import Iterable, Sequence

Rational = Fraction
Monomial = tuple  # tuple[int, ...]


class DimensionError(ValueError):
    pass


class RingError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message, pos=None):
        super().__init__(message if pos is None else f"{message} (at offset {pos})")
        self.pos = pos


# --------------------------------------------------------------------------
# monomials
# --------------------------------------------------------------------------

def mono_mul(a, b):
    return tuple(map(add, a, b))


def mono_div(a, b):
    return tuple(map(sub, a, b))


def mono_divides(a, b):
    """True when monomial ``a`` divides ``b``."""
    return all(map(le, a, b))


def mono_lcm(a, b):
    return tuple(map(max, a, b))


def mono_coprime(a, b):
    return not any(x and y for x, y in zip(a, b))


# --------------------------------------------------------------------------
# term orders
# --------------------------------------------------------------------------

def _drl(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


@dataclass(frozen=True)
class TermOrder:
    """A monomial order.

    ``kind`` is one of ``lex``, ``degrevlex``, ``block`` (the first ``k``
    variables are eliminated: compared first by degrevlex, ties broken by
    degrevlex on the rest) and ``tdeg_first`` (total degree in the variable
    range ``t_block`` first, then degrevlex on everything).
    """

    kind: str = "degrevlex"
    k: int = 0
    t_block: tuple = ()

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex", "block", "tdeg_first"):
            raise ValueError(f"unknown term order {self.kind!r}")

    def key(self, e):
        """Sort key: larger key means larger monomial."""
        kind = self.kind
        if kind == "degrevlex":
            return _drl(e)
        if kind == "lex":
            return tuple(e)
        if kind == "block":
            return _drl(e[: self.k]) + _drl(e[self.k:])
        a, b = self.t_block
        return (sum(e[a:b]),) + _drl(e)

    def compare(self, a, b):
        if len(a) != len(b):
            raise DimensionError("monomials of different length")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __str__(self):
        if self.kind == "block":
            return f"block({self.k})"
        if self.kind == "tdeg_first":
            return f"tdeg_first{self.t_block}"
        return self.kind


LEX = TermOrder("lex")
DEGREVLEX = TermOrder("degrevlex")


def lex():
    return LEX


def degrevlex():
    return DEGREVLEX


def block_elimination(k):
    return TermOrder("block", k=k)


def weighted_t_degree_first(start, stop):
    return TermOrder("tdeg_first", t_block=(start, stop))


def compare_monomials(a, b, order: TermOrder) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    return order.compare(a, b)


# --------------------------------------------------------------------------
# rings
# --------------------------------------------------------------------------

_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


class RingDescriptor:
    """Polynomial ring QQ[variables], optionally modulo ``quotient_relations``.

    Relations are kept symbolically; :func:`reduce_mod_ring` gives normal
    forms and every higher-level computation works in the ambient
    polynomial ring with the relations appended.
    """

    def __init__(self, variables: Sequence[str], relations=(), default_order: TermOrder = DEGREVLEX):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise RingError(f"duplicate variable names in {variables}")
        for v in variables:
            if not _IDENT.match(v):
                raise RingError(f"bad variable name {v!r}")
        self.variables = variables
        self.default_order = default_order
        self._index = {v: i for i, v in enumerate(variables)}
        self._relations = ()
        self._ambient = None
        self._rel_gb = None
        rels = []
        for r in relations:
            if isinstance(r, str):
                r = parse_polynomial(self, r)
            elif isinstance(r, Polynomial):
                if r.ring.variables != variables:
                    raise RingError("quotient relation uses undeclared variables")
            else:
                r = Polynomial(self, dict(r))
            if r:
                rels.append(r.terms)
        if rels:
            self._ambient = RingDescriptor(variables, (), default_order)
            self._relations = tuple(Polynomial(self._ambient, t) for t in rels)

    @property
    def ambient(self) -> "RingDescriptor":
        return self._ambient or self

    @property
    def quotient_relations(self):
        return self._relations

    @property
    def relation_terms(self):
        return [r.terms for r in self._relations]

    @property
    def nvars(self):
        return len(self.variables)

    def is_quotient(self):
        return bool(self._relations)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise RingError(f"unknown variable {name!r}") from None

    def var(self, name) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self):
        return [self.var(v) for v in self.variables]

    def one(self):
        return Polynomial(self, {(0,) * self.nvars: Fraction(1)})

    def zero(self):
        return Polynomial(self, {})

    def const(self, c):
        c = Fraction(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def __call__(self, text) -> "Polynomial":
        if isinstance(text, Polynomial):
            if text.ring.variables != self.variables:
                raise RingError("polynomial from a different ring")
            return Polynomial(self, text.terms)
        if isinstance(text, (int, Fraction)):
            return self.const(text)
        return parse_polynomial(self, text)

    def canonical(self):
        rels = ", ".join(sorted(str(r) for r in self._relations))
        base = f"QQ[{','.join(self.variables)}]"
        return f"{base} / ({rels})" if rels else base

    def __eq__(self, other):
        return isinstance(other, RingDescriptor) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"RingDescriptor({self.canonical()})"

    def relation_basis(self):
        """Reduced Groebner basis (raw term dicts) of the quotient relations."""
        if self._rel_gb is None:
            from .groebner import raw_buchberger, ModuleOrder

            order = ModuleOrder(self.default_order)
            self._rel_gb = raw_buchberger([{(0, m): c for m, c in r.terms.items()} for r in self._relations],
                                          order, self.nvars)
        return self._rel_gb


def polynomial_ring(variables, relations=(), order=DEGREVLEX) -> RingDescriptor:
    if isinstance(variables, str):
        variables = [v.strip() for v in variables.split(",") if v.strip()]
    return RingDescriptor(variables, relations, order)


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------

def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class Polynomial:
    """Immutable sparse polynomial: ``terms`` maps exponent tuples to Fractions."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingDescriptor, terms=None):
        self.ring = ring
        if terms is None:
            terms = {}
        self.terms = {m: Fraction(c) for m, c in terms.items() if c}
        self._hash = None

    # -- structure ---------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring.variables != self.ring.variables:
            raise RingError("polynomials over different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(map(add, m1, m2))
                v = t.get(m, 0) + c1 * c2
                if v:
                    t[m] = v
                else:
                    t.pop(m, None)
        return Polynomial(self.ring, t)

    __rmul__ = __mul__

    def scale(self, c):
        c = Fraction(c)
        return Polynomial(self.ring, {m: c * v for m, v in self.terms.items()} if c else {})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.terms == (self.ring.const(other).terms)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.variables == other.ring.variables and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self.terms.items())))
        return self._hash

    # -- degrees -----------------------------------------------------------
    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self, weights=None):
        if weights is None:
            degs = {sum(m) for m in self.terms}
        else:
            degs = {sum(map(lambda a, w: a * w, m, weights)) for m in self.terms}
        return len(degs) <= 1

    def leading_monomial(self, order=None):
        order = order or self.ring.default_order
        return max(self.terms, key=order.key) if self.terms else None

    def leading_coefficient(self, order=None):
        m = self.leading_monomial(order)
        return self.terms[m] if m is not None else Fraction(0)

    def monic(self, order=None):
        lc = self.leading_coefficient(order)
        return self.scale(1 / lc) if lc else self

    def is_monomial(self):
        return len(self.terms) == 1

    # -- printing ----------------------------------------------------------
    def _fmt_mono(self, m):
        parts = []
        for v, e in zip(self.ring.variables, m):
            if e == 1:
                parts.append(v)
            elif e:
                parts.append(f"{v}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        key = self.ring.default_order.key
        out = []
        for m in sorted(self.terms, key=key, reverse=True):
            c = self.terms[m]
            mono = self._fmt_mono(m)
            a = abs(c)
            if mono:
                body = mono if a == 1 else f"{_fmt_coeff(a)}*{mono}"
            else:
                body = _fmt_coeff(a)
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"


def poly_arith(op: str, f: Polynomial, g=None) -> Polynomial:
    """Dispatch form of the ring operations (``add``, ``sub``, ``mul``, ``scalarMul``)."""
    if op == "scalarMul":
        if isinstance(f, Polynomial):
            return f.scale(g)
        return g.scale(f)
    if f.ring.variables != g.ring.variables or f.ring != g.ring:
        raise RingError("operands live in different rings")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def reduce_mod_ring(f: Polynomial) -> Polynomial:
    """Normal form of ``f`` modulo the quotient relations of its ring."""
    ring = f.ring
    if not ring.is_quotient():
        return f
    from .groebner import raw_normal_form

    gb = ring.relation_basis()
    nf = raw_normal_form({(0, m): c for m, c in f.terms.items()}, gb)
    return Polynomial(ring, {m: c for (_, m), c in nf.items()})


# --------------------------------------------------------------------------
# text syntax
# --------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text):
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            toks.append(("num", int(num), start))
        elif name is not None:
            toks.append(("name", name, start))
        elif op in "+-*^/()":
            toks.append((op, op, start))
        else:
            raise ParseError(f"unexpected character {op!r}", start)
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _PolyParser:
    def __init__(self, ring, text):
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return p

    def expr(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.factor()
            if op == "*":
                acc = acc * rhs
            else:
                if len(rhs.terms) != 1 or any(any(m) for m in rhs.terms):
                    raise ParseError("division only by nonzero constants", pos)
                acc = acc.scale(1 / next(iter(rhs.terms.values())))
        return acc

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("num")
            base = base ** tok[1]
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return self.ring.const(val)
        if kind == "name":
            if val not in self.ring._index:
                raise ParseError(f"unknown variable {val!r}", pos)
            return self.ring.var(val)
        if kind == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "-":
            return -self.factor()
        raise ParseError(f"unexpected {val!r}", pos)


def parse_polynomial(ring: RingDescriptor, text: str) -> Polynomial:
    """Parse ``3/2*x^2*y - z + 1`` style text into a polynomial of ``ring``."""
    return _PolyParser(ring, text).parse()


def format_polynomial(f: Polynomial) -> str:
    return str(f)


def as_polys(ring, items: Iterable) -> list:
    return [ring(x) for x in items]
