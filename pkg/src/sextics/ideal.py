"""Standard (Groebner) bases, normal forms, elimination and saturation.

The engine is a Buchberger loop with the two classical pair-discard
criteria and normal selection by (degree, leading-monomial key); ties
break deterministically everywhere so reduced bases are reproducible.
Saturation defaults to the added-variable construction (adjoin s*f - 1
and eliminate s); the homogenise/slice/re-homogenise procedure used by
the original computations is available as ``saturate_slice`` and agrees
with it on the systems we care about (see tests).
"""

from __future__ import annotations

import heapq
import json
from itertools import combinations

from .errors import DomainMismatch
from .scalar import PrimeField
from .poly import (
    DEGREVLEX,
    Block,
    DegRevLex,
    Lex,
    MonomialOrder,
    PolyRing,
    Polynomial,
    parse_poly,
    poly_to_str,
)


# ---------------------------------------------------------------------------
# packed-monomial Buchberger engine

class _Packer:
    """Exponent vectors packed into integers.

    Each variable gets a fixed-width field plus one guard bit; the total
    degree sits in the most significant field.  Multiplication of
    monomials is integer addition, and divisibility is the classic
    guard-bit test: x divides y iff ((y | G) - x) & G == G.
    """

    __slots__ = ("nvars", "width", "step", "guards", "fmask", "degshift")

    def __init__(self, nvars: int, width: int = 16):
        self.nvars = nvars
        self.width = width
        self.step = width + 1
        self.guards = 0
        for i in range(nvars):
            self.guards |= 1 << (i * self.step + width)
        self.fmask = (1 << width) - 1
        self.degshift = nvars * self.step

    def pack(self, exps) -> int:
        acc = 0
        total = 0
        for i, e in enumerate(exps):
            acc |= e << (i * self.step)
            total += e
        return acc | (total << self.degshift)

    def unpack(self, m: int):
        return tuple((m >> (i * self.step)) & self.fmask
                     for i in range(self.nvars))

    def deg(self, m: int) -> int:
        return m >> self.degshift

    def divides(self, x: int, y: int) -> bool:
        return ((y | self.guards) - x) & self.guards == self.guards

    def lcm(self, x: int, y: int) -> int:
        ex = self.unpack(x)
        ey = self.unpack(y)
        return self.pack(tuple(max(a, b) for a, b in zip(ex, ey)))


class _KeyCache:
    """Memoized negated order keys of packed monomials (for min-heaps)."""

    __slots__ = ("key", "packer", "cache")

    def __init__(self, order: MonomialOrder, packer: _Packer):
        self.key = order.key
        self.packer = packer
        self.cache: dict = {}

    def __call__(self, m: int):
        k = self.cache.get(m)
        if k is None:
            k = _neg_key(self.key(self.packer.unpack(m)))
            self.cache[m] = k
        return k

    def plain(self, m: int):
        return self.key(self.packer.unpack(m))


def _neg_key(k):
    # order keys are nested tuples of ints; negate recursively for min-heap
    return tuple(-x if isinstance(x, int) else _neg_key(x) for x in k)


def _reduce_terms(f: dict, reducers, negkey, dom, guards):
    """Normal form of a packed term-dict against reducers
    [(lead, lead_degree, leadcoeff_inv, terms)], sorted by degree.

    A lazy max-heap of pending monomials pops in descending order; the
    reducer scan breaks early once leads outgrow the candidate.
    """
    if not f:
        return {}
    dom_mul = dom.mul
    dom_sub = dom.sub
    dom_neg = dom.neg
    dom_is_zero = dom.is_zero
    work = dict(f)
    out: dict = {}
    heap = [(negkey(m), m) for m in work]
    heapq.heapify(heap)
    push = heapq.heappush
    pop = heapq.heappop
    while heap:
        _, m = pop(heap)
        c = work.get(m)
        if c is None:
            continue
        mguard = m | guards
        red = None
        for lm, ldeg, lcinv, terms in reducers:
            if (mguard - lm) & guards == guards:
                red = (lm, lcinv, terms)
                break
        if red is None:
            out[m] = c
            del work[m]
            continue
        lm, lcinv, terms = red
        q = dom_mul(c, lcinv)
        del work[m]
        shift = m - lm
        for m2, c2 in terms:
            mm = shift + m2
            if mm == m:
                continue
            old = work.get(mm)
            if old is None:
                v = dom_neg(dom_mul(q, c2))
                work[mm] = v
                push(heap, (negkey(mm), mm))
            else:
                s = dom_sub(old, dom_mul(q, c2))
                if dom_is_zero(s):
                    del work[mm]
                else:
                    work[mm] = s
    return out


def _reduce_terms_fp(f: dict, reducers, negkey, p, guards):
    """Prime-field specialisation of _reduce_terms (coefficients are
    plain ints mod p; avoids per-coefficient method calls)."""
    if not f:
        return {}
    work = dict(f)
    out: dict = {}
    heap = [(negkey(m), m) for m in work]
    heapq.heapify(heap)
    push = heapq.heappush
    pop = heapq.heappop
    while heap:
        _, m = pop(heap)
        c = work.get(m)
        if c is None:
            continue
        mguard = m | guards
        red = None
        for lm, ldeg, lcinv, terms in reducers:
            if (mguard - lm) & guards == guards:
                red = (lm, lcinv, terms)
                break
        if red is None:
            out[m] = c
            del work[m]
            continue
        lm, lcinv, terms = red
        q = c * lcinv % p
        del work[m]
        shift = m - lm
        for m2, c2 in terms:
            mm = shift + m2
            if mm == m:
                continue
            old = work.get(mm)
            if old is None:
                work[mm] = -q * c2 % p
                push(heap, (negkey(mm), mm))
            else:
                s = (old - q * c2) % p
                if s:
                    work[mm] = s
                else:
                    del work[mm]
    return out


class _Engine:
    """Buchberger over packed monomials; term dicts map packed ints to
    nonzero coefficients, reducer tails are item lists."""

    def __init__(self, ring: PolyRing, order: MonomialOrder):
        self.ring = ring
        self.dom = ring.domain
        self.order = order
        self.packer = _Packer(ring.nvars)
        self.negkey = _KeyCache(order, self.packer)
        self._is_fp = isinstance(ring.domain, PrimeField)

    # -- conversions ---------------------------------------------------

    def to_packed(self, terms: dict) -> dict:
        pack = self.packer.pack
        return {pack(m): c for m, c in terms.items()}

    def from_packed(self, terms: dict) -> dict:
        unpack = self.packer.unpack
        return {unpack(m): c for m, c in terms.items()}

    # -- helpers ---------------------------------------------------------

    def lead(self, terms: dict) -> int:
        negkey = self.negkey
        best = None
        bk = None
        for m in terms:
            k = negkey(m)
            if bk is None or k < bk:
                bk = k
                best = m
        return best

    def monic(self, terms: dict) -> dict:
        lm = self.lead(terms)
        lc = terms[lm]
        if self.dom.is_one(lc):
            return terms
        inv = self.dom.invert(lc)
        mul = self.dom.mul
        return {m: mul(c, inv) for m, c in terms.items()}

    def _make_reducers(self, term_dicts, leads):
        dom = self.dom
        deg = self.packer.deg
        red = [(leads[i], deg(leads[i]), dom.invert(term_dicts[i][leads[i]]),
                list(term_dicts[i].items())) for i in range(len(term_dicts))]
        red.sort(key=lambda r: (r[1], self.negkey.plain(r[0])))
        return red

    def _reduce(self, f, reducers):
        if self._is_fp:
            return _reduce_terms_fp(f, reducers, self.negkey, self.dom.p,
                                    self.packer.guards)
        return _reduce_terms(f, reducers, self.negkey, self.dom,
                             self.packer.guards)

    def _spoly(self, f, lf, g, lg, lcm):
        dom = self.dom
        mul = dom.mul
        sub = dom.sub
        is_zero = dom.is_zero
        mf = lcm - lf
        mg = lcm - lg
        out: dict = {}
        for m, c in f.items():
            out[m + mf] = c
        for m, c in g.items():
            mm = m + mg
            old = out.get(mm)
            if old is None:
                out[mm] = dom.neg(c)
            else:
                s = sub(old, c)
                if is_zero(s):
                    del out[mm]
                else:
                    out[mm] = s
        return out

    # -- main loop --------------------------------------------------------

    def buchberger(self, gens, stop_on_unit=False):
        dom = self.dom
        packer = self.packer
        divides = packer.divides
        basis = []
        leads = []
        start = [self.to_packed(g) for g in gens if g]
        start.sort(key=lambda t: (self.negkey.plain(self.lead(t)), len(t)))
        for g in start:
            basis.append(self.monic(g))
            leads.append(self.lead(basis[-1]))

        pairs = []
        done = set()

        def push_pair(i, j):
            lcm = packer.lcm(leads[i], leads[j])
            heapq.heappush(pairs, (packer.deg(lcm), self.negkey.plain(lcm),
                                   i, j, lcm))

        n = len(basis)
        for i in range(n):
            for j in range(i + 1, n):
                push_pair(i, j)

        reducers = self._make_reducers(basis, leads)

        while pairs:
            _, _, i, j, lcm = heapq.heappop(pairs)
            done.add((i, j))
            li, lj = leads[i], leads[j]
            # criterion 1: disjoint lead supports make the pair useless
            if li + lj == lcm:
                continue
            # criterion 2 (chain)
            skip = False
            for k in range(len(basis)):
                if k == i or k == j:
                    continue
                if divides(leads[k], lcm):
                    if (min(i, k), max(i, k)) in done and \
                            (min(j, k), max(j, k)) in done:
                        skip = True
                        break
            if skip:
                continue
            spoly = self._spoly(basis[i], li, basis[j], lj, lcm)
            nf = self._reduce(spoly, reducers)
            if not nf:
                continue
            nf = self.monic(nf)
            lm = self.lead(nf)
            if stop_on_unit and packer.deg(lm) == 0:
                return [{(0,) * self.ring.nvars: dom.one()}]
            basis.append(nf)
            leads.append(lm)
            entry = (lm, packer.deg(lm), dom.invert(nf[lm]),
                     list(nf.items()))
            ekey = (entry[1], self.negkey.plain(lm))
            at = 0
            while at < len(reducers) and \
                    (reducers[at][1], self.negkey.plain(reducers[at][0])) <= ekey:
                at += 1
            reducers.insert(at, entry)
            new = len(basis) - 1
            for i2 in range(new):
                push_pair(i2, new)

        return [self.from_packed(t) for t in self._interreduce(basis)]

    def _interreduce(self, basis):
        basis = sorted(basis, key=lambda t: self.negkey.plain(self.lead(t)))
        divides = self.packer.divides
        kept = []
        leads = []
        for t in basis:
            lm = self.lead(t)
            if any(divides(l2, lm) for l2 in leads):
                continue
            kept.append(t)
            leads.append(lm)
        out = []
        for idx, t in enumerate(kept):
            others = self._make_reducers(
                [kept[k] for k in range(len(kept)) if k != idx],
                [leads[k] for k in range(len(kept)) if k != idx])
            nf = self._reduce(t, others)
            if nf:
                out.append(self.monic(nf))
        out.sort(key=lambda t: self.negkey.plain(self.lead(t)))
        return out

    def normal_form_public(self, f_terms: dict, basis_term_dicts) -> dict:
        packed = [self.to_packed(t) for t in basis_term_dicts]
        leads = [self.lead(t) for t in packed]
        reducers = self._make_reducers(packed, leads)
        return self.from_packed(self._reduce(self.to_packed(f_terms), reducers))

    def buchberger_check(self, basis_term_dicts) -> bool:
        packed = [self.to_packed(t) for t in basis_term_dicts]
        leads = [self.lead(t) for t in packed]
        reducers = self._make_reducers(packed, leads)
        for i in range(len(packed)):
            for j in range(i + 1, len(packed)):
                lcm = self.packer.lcm(leads[i], leads[j])
                s = self._spoly(packed[i], leads[i], packed[j], leads[j], lcm)
                if self._reduce(s, reducers):
                    return False
        return True


# ---------------------------------------------------------------------------
# public ideal type

class Ideal:
    """A polynomial ideal with a fixed monomial order and a cached
    reduced Groebner basis."""

    def __init__(self, ring: PolyRing, generators, order: MonomialOrder | None = None):
        self.ring = ring
        self.generators = [ring.transfer(g) if g.ring != ring else g
                           for g in generators]
        self.order = order or DEGREVLEX
        self._reduced: list[Polynomial] | None = None

    def __repr__(self):
        return f"Ideal({len(self.generators)} gens, {self.order.name}, {self.ring!r})"

    def groebner(self) -> list[Polynomial]:
        """The reduced Groebner basis, computed once and cached."""
        if self._reduced is None:
            eng = _Engine(self.ring, self.order)
            gens = [dict(g.terms) for g in self.generators if not g.is_zero()]
            if not gens:
                self._reduced = []
            else:
                basis = eng.buchberger(gens)
                self._reduced = [Polynomial(self.ring, t) for t in basis]
        return self._reduced

    def normal_form(self, f: Polynomial) -> Polynomial:
        f = self.ring.transfer(f) if f.ring != self.ring else f
        eng = _Engine(self.ring, self.order)
        basis = [dict(g.terms) for g in self.groebner()]
        return Polynomial(self.ring, eng.normal_form_public(dict(f.terms), basis))

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def is_unit_ideal(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant() and not gb[0].is_zero()

    def radical_contains(self, f: Polynomial) -> bool:
        """Whether f vanishes on V(I), by the added-variable trick: f is
        in the radical iff 1 lies in I + <s*f - 1>.  The Buchberger run
        aborts as soon as a constant appears."""
        big = self.ring.extend(["rad_"], prepend=True)
        gens = [big.transfer(g) for g in self.generators]
        gens.append(big.transfer(f) * big.var("rad_") - big.one())
        eng = _Engine(big, DEGREVLEX)
        basis = eng.buchberger([dict(g.terms) for g in gens if not g.is_zero()],
                               stop_on_unit=True)
        return len(basis) == 1 and sum(next(iter(basis[0]))) == 0

    def with_order(self, order: MonomialOrder) -> "Ideal":
        return Ideal(self.ring, self.generators, order)

    # -- derived ideals -------------------------------------------------

    def eliminate(self, names) -> "Ideal":
        """Generators of the intersection with the subring omitting names."""
        names = [n for n in names]
        for n in names:
            if n not in self.ring.index:
                raise DomainMismatch(f"unknown variable {n}")
        if not names:
            return Ideal(self.ring, self.groebner(), self.order)
        keep = [n for n in self.ring.names if n not in names]
        front = PolyRing(self.ring.domain, tuple(names) + tuple(keep))
        moved = [front.transfer(g) for g in self.generators]
        gb = Ideal(front, moved, Block(len(names))).groebner()
        small = PolyRing(self.ring.domain, tuple(keep))
        kept = []
        for g in gb:
            if all(n not in names for n in g.variables()):
                kept.append(small.transfer(g))
        return Ideal(small, kept, DEGREVLEX)

    def saturate(self, f: Polynomial, var: str = "sat_") -> "Ideal":
        """I : f^infinity via the added-variable construction."""
        if f.is_zero():
            raise DomainMismatch("cannot saturate at 0")
        big = self.ring.extend([var], prepend=True)
        gens = [big.transfer(g) for g in self.generators]
        gens.append(big.transfer(f) * big.var(var) - big.one())
        elim = Ideal(big, gens, Block(1)).groebner()
        back = []
        for g in elim:
            if var not in g.variables():
                back.append(self.ring.transfer(g))
        return Ideal(self.ring, back, self.order)

    def saturate_many(self, polys) -> "Ideal":
        out = self
        for f in polys:
            out = out.saturate(f)
        return out

    def saturate_slice(self, f: Polynomial, hvar: str = "h_") -> "Ideal":
        """Saturation replayed as in the original pipeline: homogenise
        with an extra variable, adjoin the inhomogeneous equation f = 1,
        compute a standard basis and homogenise again."""
        if f.is_zero():
            raise DomainMismatch("cannot saturate at 0")
        big = self.ring.extend([hvar])
        # homogenise a degrevlex basis generator-wise
        base = Ideal(self.ring, self.generators, DEGREVLEX).groebner()
        hgens = [big.transfer(g).homogenize(hvar) for g in base]
        fh = big.transfer(f).homogenize(hvar)
        sliced = Ideal(big, hgens + [fh - big.one()], DEGREVLEX).groebner()
        # homogenise again (fresh variable), then cut it loose
        big2 = big.extend(["hh_"])
        regens = [big2.transfer(g).homogenize("hh_") for g in sliced]
        elim = Ideal(big2, regens, DEGREVLEX).eliminate(["hh_"])
        final = [self.ring.transfer(g.dehomogenize(hvar))
                 for g in elim.generators]
        return Ideal(self.ring, [g for g in final if not g.is_zero()], self.order)

    # -- invariants ------------------------------------------------------

    def dimension(self) -> int:
        """Krull dimension via maximal leading-term-independent variable sets."""
        gb = self.groebner()
        if not gb:
            return self.ring.nvars
        if self.is_unit_ideal():
            return -1
        lead_supports = []
        for g in gb:
            m, _ = g.lead(self.order)
            lead_supports.append(frozenset(i for i, e in enumerate(m) if e))
        n = self.ring.nvars
        best = 0
        for size in range(n, 0, -1):
            for subset in combinations(range(n), size):
                s = set(subset)
                if all(not sup <= s for sup in lead_supports):
                    return size
        return best

    def is_zero_dimensional_at_origin(self) -> bool:
        """True iff the leading terms contain a pure power of every variable
        (for a homogeneous ideal this means V(I) = {origin})."""
        gb = self.groebner()
        seen = set()
        for g in gb:
            m, _ = g.lead(self.order)
            support = [i for i, e in enumerate(m) if e]
            if len(support) == 1:
                seen.add(support[0])
            elif len(support) == 0:
                return True  # unit ideal: V is empty, vacuously {0}-dimensional
        return seen == set(range(self.ring.nvars))

    def buchberger_certificate(self) -> bool:
        """Post-hoc check: every S-polynomial of the reduced basis reduces to 0."""
        gb = self.groebner()
        eng = _Engine(self.ring, self.order)
        return eng.buchberger_check([dict(g.terms) for g in gb])

    # -- serialization ----------------------------------------------------

    def to_json(self, reduced: bool = False) -> dict:
        polys = self.groebner() if reduced else self.generators
        return {
            "variables": list(self.ring.names),
            "order": self.order.name,
            "reduced": reduced,
            "generators": [poly_to_str(g) for g in polys],
        }

    @classmethod
    def from_json(cls, data: dict, domain) -> "Ideal":
        ring = PolyRing(domain, data["variables"])
        order = _order_from_name(data["order"])
        gens = [parse_poly(s, ring) for s in data["generators"]]
        ideal = cls(ring, gens, order)
        if data.get("reduced"):
            ideal._reduced = gens
        return ideal


def _order_from_name(name: str) -> MonomialOrder:
    if name == "degrevlex":
        return DegRevLex()
    if name == "lex":
        return Lex()
    if name.startswith("block("):
        inner = name[6:-1].split(",")
        return Block(int(inner[0]))
    raise ValueError(f"unknown order {name!r}")


def ideal_to_json_str(ideal: Ideal, reduced=False) -> str:
    return json.dumps(ideal.to_json(reduced=reduced), sort_keys=True)
