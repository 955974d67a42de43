"""Sparse multivariate polynomials over an exact scalar domain.

Polynomials are immutable dictionaries mapping exponent tuples to
nonzero coefficients; the variable registry is a ``PolyRing`` shared by
every polynomial of one computation.  Monomial orders live here too
(degrevlex, lex and block/elimination orders) but a polynomial itself is
order-agnostic -- orders only matter to the ideal engine and printing.

The text format round-trips exactly:  terms joined by ``+``/``-``, a
term is an optional coefficient times ``*``-separated powers ``v^k``,
and ``e`` denotes the primitive third root of unity in domains that
carry one (``2*x^2 - (e+2)*z + e^2*x*z``).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import (
    DegreeTooSmall,
    DomainMismatch,
    NotDivisible,
    ParseError,
    UnknownVariable,
    ZeroDivisor,
)
from .scalar import CycRat, CyclotomicRationals, PrimeField, Rationals, ScalarDomain


# ---------------------------------------------------------------------------
# monomial orders

class MonomialOrder:
    """Total order on exponent tuples, compatible with multiplication."""

    name = "?"

    def key(self, exps):
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return repr(self) == repr(other)

    def __hash__(self):
        return hash(repr(self))


class DegRevLex(MonomialOrder):
    name = "degrevlex"

    def key(self, exps):
        total = 0
        rev = []
        for e in reversed(exps):
            total += e
            rev.append(-e)
        return (total, tuple(rev))


class Lex(MonomialOrder):
    name = "lex"

    def key(self, exps):
        return tuple(exps)


class Block(MonomialOrder):
    """Eliminates the first k variables: any monomial meeting them beats
    any monomial free of them."""

    def __init__(self, k: int, outer: MonomialOrder | None = None,
                 inner: MonomialOrder | None = None):
        self.k = k
        self.outer = outer or DegRevLex()
        self.inner = inner or DegRevLex()
        self.name = f"block({k},{self.outer.name},{self.inner.name})"

    def key(self, exps):
        return (self.outer.key(exps[: self.k]), self.inner.key(exps[self.k:]))


DEGREVLEX = DegRevLex()
LEX = Lex()


# ---------------------------------------------------------------------------
# rings

class PolyRing:
    """Ordered variable registry over a scalar domain."""

    __slots__ = ("domain", "names", "index")

    def __init__(self, domain: ScalarDomain, names):
        self.domain = domain
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.index = {n: i for i, n in enumerate(self.names)}

    def __repr__(self):
        return f"PolyRing({self.domain!r}, {','.join(self.names)})"

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.domain == other.domain
                and self.names == other.names)

    def __hash__(self):
        return hash((self.domain, self.names))

    @property
    def nvars(self):
        return len(self.names)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: self.domain.one()})

    def const(self, c) -> "Polynomial":
        if self.domain.is_zero(c):
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def from_int(self, n: int) -> "Polynomial":
        return self.const(self.domain.from_int(n))

    def eps(self) -> "Polynomial":
        return self.const(self.domain.eps())

    def var(self, name: str) -> "Polynomial":
        if name not in self.index:
            raise UnknownVariable(name)
        e = [0] * self.nvars
        e[self.index[name]] = 1
        return Polynomial(self, {tuple(e): self.domain.one()})

    def gens(self):
        return tuple(self.var(n) for n in self.names)

    def extend(self, extra_names, prepend=False) -> "PolyRing":
        extra = tuple(n for n in extra_names if n not in self.index)
        names = extra + self.names if prepend else self.names + extra
        return PolyRing(self.domain, names)

    def transfer(self, f: "Polynomial") -> "Polynomial":
        """Re-express a polynomial of a compatible ring in this ring.

        Every variable actually occurring in f must exist here.
        """
        if f.ring is self or f.ring == self:
            return Polynomial(self, dict(f.terms))
        if f.ring.domain != self.domain:
            raise DomainMismatch("transfer across domains")
        src = f.ring.names
        pos = []
        for n in src:
            pos.append(self.index.get(n, -1))
        out = {}
        for exps, c in f.terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                j = pos[i]
                if j < 0:
                    raise UnknownVariable(src[i])
                new[j] = e
            out[tuple(new)] = c
        return Polynomial(self, out)


def ring_over(domain: ScalarDomain, names_spec: str) -> PolyRing:
    return PolyRing(domain, names_spec.replace(",", " ").split())


# ---------------------------------------------------------------------------
# polynomials

class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms  # caller guarantees no zero coefficients

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.ring.index[name]
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self):
        zero_exp = (0,) * self.ring.nvars
        return self.terms.get(zero_exp, self.ring.domain.zero())

    def coeff(self, exps):
        return self.terms.get(tuple(exps), self.ring.domain.zero())

    def variables(self):
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(self.ring.names[i])
        return used

    def lead(self, order: MonomialOrder = DEGREVLEX):
        """(monomial, coefficient) of the leading term under order."""
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise DomainMismatch("polynomials from different rings")
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        dom = self.ring.domain
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = dom.add(out[m], c)
                if dom.is_zero(s):
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        dom = self.ring.domain
        return Polynomial(self.ring, {m: dom.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        dom = self.ring.domain
        out: dict = {}
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                c = dom.mul(c1, c2)
                if m in out:
                    s = dom.add(out[m], c)
                    if dom.is_zero(s):
                        del out[m]
                    else:
                        out[m] = s
                elif not dom.is_zero(c):
                    out[m] = c
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def scale(self, c):
        dom = self.ring.domain
        if dom.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {m: dom.mul(v, c) for m, v in self.terms.items()})

    def monic(self, order: MonomialOrder = DEGREVLEX):
        if not self.terms:
            return self
        _, lc = self.lead(order)
        return self.scale(self.ring.domain.invert(lc))

    def map_coeffs(self, fn, new_domain=None):
        ring = self.ring if new_domain is None else PolyRing(new_domain, self.ring.names)
        dom = ring.domain
        out = {}
        for m, c in self.terms.items():
            v = fn(c)
            if not dom.is_zero(v):
                out[m] = v
        return Polynomial(ring, out)

    # -- calculus and substitution -------------------------------------

    def partial(self, name: str) -> "Polynomial":
        if name not in self.ring.index:
            raise UnknownVariable(name)
        i = self.ring.index[name]
        dom = self.ring.domain
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            v = dom.mul(c, dom.from_int(e))
            if dom.is_zero(v):
                continue
            new = list(m)
            new[i] = e - 1
            out[tuple(new)] = v
        return Polynomial(self.ring, out)

    def evaluate(self, point):
        """Exact value at a full scalar assignment (sequence, one per variable)."""
        if len(point) != self.ring.nvars:
            raise DomainMismatch(
                f"expected {self.ring.nvars} coordinates, got {len(point)}")
        dom = self.ring.domain
        powers: dict = {}

        def pw(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = dom.pow(point[i], e)
            return powers[key]

        total = dom.zero()
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(m):
                if e:
                    v = dom.mul(v, pw(i, e))
            total = dom.add(total, v)
        return total

    def subs(self, assignment: dict) -> "Polynomial":
        """Simultaneous substitution name -> Polynomial or scalar."""
        ring = self.ring
        target: dict[int, Polynomial] = {}
        for name, val in assignment.items():
            if name not in ring.index:
                raise UnknownVariable(name)
            if not isinstance(val, Polynomial):
                val = ring.from_int(val) if isinstance(val, int) else ring.const(val)
            elif val.ring != ring:
                raise DomainMismatch("substitution target from another ring")
            target[ring.index[name]] = val

        dom = ring.domain
        cache: dict = {}

        def pw(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = target[i] ** e
            return cache[key]

        result = ring.zero()
        for m, c in self.terms.items():
            residual = [0] * ring.nvars
            factor = None
            for i, e in enumerate(m):
                if e == 0:
                    continue
                if i in target:
                    factor = pw(i, e) if factor is None else factor * pw(i, e)
                else:
                    residual[i] = e
            term = Polynomial(ring, {tuple(residual): c})
            result = result + (term if factor is None else term * factor)
        return result

    def homogenize(self, name: str, target_deg: int | None = None) -> "Polynomial":
        if name not in self.ring.index:
            raise UnknownVariable(name)
        i = self.ring.index[name]
        if any(m[i] for m in self.terms):
            raise ValueError(f"{name} already occurs; cannot homogenize with it")
        d = self.degree()
        if target_deg is None:
            target_deg = d
        if target_deg < d:
            raise DegreeTooSmall(f"target degree {target_deg} < deg {d}")
        out = {}
        for m, c in self.terms.items():
            new = list(m)
            new[i] = target_deg - sum(m)
            out[tuple(new)] = c
        return Polynomial(self.ring, out)

    def dehomogenize(self, name: str, value=1) -> "Polynomial":
        if isinstance(value, int):
            value = self.ring.domain.from_int(value)
        return self.subs({name: self.ring.const(value)})

    # -- division -------------------------------------------------------

    def divide_exact(self, g: "Polynomial") -> "Polynomial":
        """Quotient f/g when g divides f exactly; raises NotDivisible else."""
        import heapq

        g = self._coerce(g)
        if g.is_zero():
            raise ZeroDivisor("division by the zero polynomial")
        dom = self.ring.domain
        key = DEGREVLEX.key

        def negkey(m):
            k = key(m)
            return (-k[0], tuple(-x for x in k[1]))

        gm = max(g.terms, key=key)
        gc_inv = dom.invert(g.terms[gm])
        g_tail = [(m, c) for m, c in g.terms.items() if m != gm]
        rem = dict(self.terms)
        heap = [(negkey(m), m) for m in rem]
        heapq.heapify(heap)
        quot: dict = {}
        while heap:
            _, fm = heapq.heappop(heap)
            c = rem.get(fm)
            if c is None:
                continue
            del rem[fm]
            qm = tuple(a - b for a, b in zip(fm, gm))
            if any(e < 0 for e in qm):
                raise NotDivisible(f"not divisible (stuck at monomial {fm})")
            qc = dom.mul(c, gc_inv)
            quot[qm] = qc
            for m2, c2 in g_tail:
                m = tuple(a + b for a, b in zip(qm, m2))
                v = dom.mul(qc, c2)
                old = rem.get(m)
                if old is None:
                    rem[m] = dom.neg(v)
                    heapq.heappush(heap, (negkey(m), m))
                else:
                    s = dom.sub(old, v)
                    if dom.is_zero(s):
                        del rem[m]
                    else:
                        rem[m] = s
        if rem:
            raise NotDivisible("nonzero remainder")
        return Polynomial(self.ring, quot)

    def divisible_by(self, g: "Polynomial") -> bool:
        try:
            self.divide_exact(g)
            return True
        except NotDivisible:
            return False

    def divide_by_variable(self, name: str, power: int = 1):
        """Quotient by v^power, or None if some term lacks the factor."""
        i = self.ring.index[name]
        out = {}
        for m, c in self.terms.items():
            if m[i] < power:
                return None
            new = list(m)
            new[i] -= power
            out[tuple(new)] = c
        return Polynomial(self.ring, out)

    def as_univariate(self, name: str) -> dict:
        """{exponent: coefficient polynomial} with the variable split off."""
        i = self.ring.index[name]
        slices: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = m[i]
            rest = list(m)
            rest[i] = 0
            slices.setdefault(e, {})[tuple(rest)] = c
        return {e: Polynomial(self.ring, t) for e, t in slices.items()}

    def divide_by_linear(self, name: str, a):
        """Quotient by (v - a) for a scalar a, via Horner; None if the
        remainder is nonzero."""
        ring = self.ring
        dom = ring.domain
        slices = self.as_univariate(name)
        if not slices:
            return self  # zero polynomial
        dmax = max(slices)
        if dmax == 0:
            return None
        zero = ring.zero()
        v = ring.var(name)
        acc = zero
        quot = zero
        for e in range(dmax, 0, -1):
            acc = acc + slices.get(e, zero)
            quot = quot * v + acc
            acc = acc.scale(a)
        rem = acc + slices.get(0, zero)
        if not rem.is_zero():
            return None
        return quot

    # -- printing -------------------------------------------------------

    def __str__(self):
        return poly_to_str(self)

    def __repr__(self):
        return f"<{poly_to_str(self)}>"


# ---------------------------------------------------------------------------
# text format

_EPS_SQ = "e^2"


def _coeff_pieces(domain, c):
    """(text, negated, needs_parens) for one coefficient."""
    if isinstance(domain, PrimeField):
        return str(c), False, False
    if isinstance(domain, Rationals):
        neg = c < 0
        return str(abs(c)), neg, False
    if isinstance(domain, CyclotomicRationals):
        a, b = c.a, c.b
        if b == 0:
            return str(abs(a)), a < 0, False
        if a == 0:
            neg = b < 0
            babs = abs(b)
            return ("e" if babs == 1 else f"{babs}*e"), neg, False
        if a == b:
            # a(1 + e) = -a * e^2
            k = -a
            neg = k < 0
            kabs = abs(k)
            return (_EPS_SQ if kabs == 1 else f"{kabs}*{_EPS_SQ}"), neg, False
        neg = a < 0
        if neg:
            a, b = -a, -b
        sign = "+" if b > 0 else "-"
        babs = abs(b)
        bpart = "e" if babs == 1 else f"{babs}*e"
        return f"({a} {sign} {bpart})", neg, True
    return str(c), False, False


def _monomial_str(ring, exps):
    parts = []
    for n, e in zip(ring.names, exps):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def poly_to_str(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    dom = f.ring.domain
    key = DEGREVLEX.key
    chunks = []
    for m in sorted(f.terms, key=key, reverse=True):
        ctext, neg, _ = _coeff_pieces(dom, f.terms[m])
        mono = _monomial_str(f.ring, m)
        if not mono:
            body = ctext
        elif ctext == "1":
            body = mono
        else:
            body = f"{ctext}*{mono}"
        chunks.append(("-" if neg else "+", body))
    sign, body = chunks[0]
    out = body if sign == "+" else f"-{body}"
    for sign, body in chunks[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\*\*|[()+\-*/]))")


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"bad character {text[pos]!r}", pos)
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), pos))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), pos))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op, pos))
        pos = m.end()
    tokens.append(("end", None, pos))
    return tokens


class _Parser:
    """Recursive-descent parser for the polynomial text format."""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self) -> Polynomial:
        f = self.expression()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError("trailing input", pos)
        return f

    def expression(self) -> Polynomial:
        kind, val, _ = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.take()
            negate = val == "-"
        f = self.term()
        if negate:
            f = -f
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                g = self.term()
                f = f - g if val == "-" else f + g
            else:
                return f

    def term(self) -> Polynomial:
        f = self.power()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                g = self.power()
                if val == "*":
                    f = f * g
                else:
                    if not g.is_constant():
                        raise ParseError("division only by constants")
                    f = f.scale(self.ring.domain.invert(g.constant_term()))
            else:
                return f

    def power(self) -> Polynomial:
        f = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, n, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer", pos)
            return f ** n
        return f

    def atom(self) -> Polynomial:
        kind, val, pos = self.take()
        if kind == "num":
            return self.ring.from_int(val)
        if kind == "name":
            if val in self.ring.index:
                return self.ring.var(val)
            if val == "e" and self.ring.domain.has_eps:
                return self.ring.eps()
            raise ParseError(f"unknown symbol {val!r}", pos)
        if kind == "op" and val == "(":
            f = self.expression()
            self.expect_op(")")
            return f
        if kind == "op" and val == "-":
            return -self.atom()
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_poly(text: str, ring: PolyRing) -> Polynomial:
    """Parse the text polynomial format into the given ring.

    A bare ``e`` is the ring variable named e when one exists, else the
    third root of unity of the domain.
    """
    return _Parser(ring, text).parse()
