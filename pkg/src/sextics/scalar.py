"""Exact coefficient arithmetic: prime fields, rationals and Q(e).

Three coefficient domains drive every computation in the package:

* ``PrimeField(p)`` -- integers mod a prime, optionally with a chosen
  primitive cube root of unity when p = 1 (mod 3);
* ``Rationals()`` -- arbitrary precision fractions;
* ``CyclotomicRationals()`` -- the field Q(e) with e^2 + e + 1 = 0,
  elements stored as pairs (a, b) meaning a + b*e.

Domains are lightweight stateless objects; elements are plain data
(ints, Fractions, CycRat pairs), which keeps inner loops fast.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .errors import DivisionByZero, DomainMismatch, NoCubeRoot


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def find_primitive_cube_root(p: int) -> int:
    """Smallest residue r with r != 1 and r^3 = 1 in F_p.

    Raises NoCubeRoot unless p = 1 (mod 3); the two candidates are
    conjugate (r and r^2) and the smaller one is returned so output is
    deterministic.
    """
    if not is_prime(p):
        raise NoCubeRoot(f"{p} is not prime")
    if p % 3 != 1:
        raise NoCubeRoot(f"no primitive cube root of unity mod {p} (p != 1 mod 3)")
    e = (p - 1) // 3
    for a in range(2, p):
        r = pow(a, e, p)
        if r != 1:
            return min(r, r * r % p)
    raise NoCubeRoot(f"exhausted residues mod {p}")  # unreachable for prime p


class CycRat(NamedTuple):
    """Element a + b*e of Q(e), with e a primitive third root of unity."""

    a: Fraction
    b: Fraction

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return "e" if self.b == 1 else f"{self.b}*e"
        sign = "+" if self.b > 0 else "-"
        babs = abs(self.b)
        bpart = "e" if babs == 1 else f"{babs}*e"
        return f"{self.a} {sign} {bpart}"


class ScalarDomain:
    """Common interface of the three coefficient domains."""

    has_eps = False

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def invert(self, a):
        raise NotImplementedError

    def div(self, a, b):
        if self.is_zero(b):
            raise DivisionByZero("division by zero")
        return self.mul(a, self.invert(b))

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def is_one(self, a) -> bool:
        return a == self.one()

    def eps(self):
        raise NoCubeRoot(f"{self} carries no third root of unity")

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.invert(a), -n)
        r = self.one()
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def fmt(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__ \
            and getattr(self, "_key", None) == getattr(other, "_key", None)

    def __hash__(self):
        return hash((type(self).__name__, getattr(self, "_key", None)))


class PrimeField(ScalarDomain):
    """F_p with canonical residues in [0, p).

    ``eps`` may pin a primitive cube root of unity (required when the
    domain must contain one, e.g. p = 67 with eps = -30 = 37).
    """

    def __init__(self, p: int, eps: int | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        if eps is not None:
            eps %= p
            if eps == 1 or pow(eps, 3, p) != 1:
                raise NoCubeRoot(f"{eps} is not a primitive cube root mod {p}")
        self._eps = eps
        self._key = (p, eps)

    has_eps = property(lambda self: self._eps is not None)  # type: ignore[assignment]

    def __repr__(self):
        if self._eps is not None:
            return f"PrimeField({self.p}, eps={self._eps})"
        return f"PrimeField({self.p})"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

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
            raise DivisionByZero(f"0 has no inverse in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def is_one(self, a):
        return a % self.p == 1

    def eps(self):
        if self._eps is None:
            raise NoCubeRoot(f"F_{self.p} was built without a cube root of unity")
        return self._eps

    @classmethod
    def with_cube_root(cls, p: int) -> "PrimeField":
        return cls(p, find_primitive_cube_root(p))


class Rationals(ScalarDomain):
    """Q with Fraction elements."""

    _key = None

    def __repr__(self):
        return "Rationals()"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def invert(self, a):
        if a == 0:
            raise DivisionByZero("0 has no inverse in Q")
        return 1 / a

    def is_zero(self, a):
        return a == 0


class CyclotomicRationals(ScalarDomain):
    """Q(e) = Q[e]/(e^2 + e + 1); complex conjugation sends e to e^2."""

    has_eps = True
    _key = None

    def __repr__(self):
        return "CyclotomicRationals()"

    def zero(self):
        return CycRat(Fraction(0), Fraction(0))

    def one(self):
        return CycRat(Fraction(1), Fraction(0))

    def from_int(self, n):
        return CycRat(Fraction(n), Fraction(0))

    def from_rational(self, q) -> CycRat:
        return CycRat(Fraction(q), Fraction(0))

    def eps(self):
        return CycRat(Fraction(0), Fraction(1))

    def add(self, x, y):
        return CycRat(x.a + y.a, x.b + y.b)

    def sub(self, x, y):
        return CycRat(x.a - y.a, x.b - y.b)

    def mul(self, x, y):
        # (a + b e)(c + d e) with e^2 = -1 - e
        bd = x.b * y.b
        return CycRat(x.a * y.a - bd, x.a * y.b + x.b * y.a - bd)

    def neg(self, x):
        return CycRat(-x.a, -x.b)

    def conjugate(self, x: CycRat) -> CycRat:
        # a + b e  ->  a + b e^2 = (a - b) - b e
        return CycRat(x.a - x.b, -x.b)

    def norm(self, x: CycRat) -> Fraction:
        return x.a * x.a - x.a * x.b + x.b * x.b

    def invert(self, x):
        n = self.norm(x)
        if n == 0:
            raise DivisionByZero("0 has no inverse in Q(e)")
        c = self.conjugate(x)
        return CycRat(c.a / n, c.b / n)

    def is_zero(self, x):
        return x.a == 0 and x.b == 0


def scalar_arith(domain: ScalarDomain, a, b, op: str):
    """Dispatch one field operation; op is one of '+', '-', '*', '/'."""
    if op == "+":
        return domain.add(a, b)
    if op == "-":
        return domain.sub(a, b)
    if op == "*":
        return domain.mul(a, b)
    if op == "/":
        return domain.div(a, b)
    raise ValueError(f"unknown op {op!r}")


def check_same_domain(d1: ScalarDomain, d2: ScalarDomain):
    if d1 != d2:
        raise DomainMismatch(f"domains differ: {d1!r} vs {d2!r}")


QQ = Rationals()
QE = CyclotomicRationals()


def GF(p: int, eps: int | None = None) -> PrimeField:
    return PrimeField(p, eps)
