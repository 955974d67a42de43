"""Explicit ten-triple-point members of the (2,2,2) families.

The published specialisations pin the three solution families down to
finitely many parameter values once the candidate points on the
coordinate axes are normalised; over a prime field where the univariate
conditions split this yields concrete surfaces with 3, 4 or 5
(-1)-conics.  Primes are found by search (the conditions involve square
roots whose existence depends on p) and the constructions are
deterministic for a fixed prime.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateParams, NoCubeRoot
from .families import (
    PARAMS_222,
    Type222Params,
    coord_ring,
    mixed_long_factors,
    ring_222,
    solution_family_222,
    type222_forms,
    web_member_222,
)
from .ideal import Ideal
from .poly import PolyRing, Polynomial
from .scalar import PrimeField, is_prime
from .triplecond import (
    BSolver,
    condition_matrix_222,
    minor_system_222,
    root_equations,
    web_coefficients,
)


def roots_mod(domain: PrimeField, coeffs) -> list:
    """All roots in F_p of sum coeffs[k] x^k; brute force, p is tiny."""
    p = domain.p
    out = []
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            out.append(x)
    return out


def solve_zero_dimensional(ideal: Ideal) -> list:
    """All F_p points of a zero-dimensional ideal, by elimination and
    back-substitution; returns dicts name -> value, sorted."""
    ring = ideal.ring
    domain = ring.domain
    names = list(ring.names)
    if not names:
        return [{}]
    first, rest = names[0], names[1:]
    out = []
    uni = ideal.eliminate(rest) if rest else ideal
    gens = uni.groebner()
    if not gens:
        candidates = list(range(domain.p))
    else:
        g0 = min(gens, key=lambda g: g.degree())
        coeffs = [0] * (g0.degree() + 1)
        for e, c in g0.terms.items():
            coeffs[sum(e)] = c
        candidates = [r for r in roots_mod(domain, coeffs)
                      if all(domain.is_zero(g.evaluate([domain.from_int(r)]))
                             for g in gens if g is not g0)]
    if not rest:
        return [{first: domain.from_int(r)} for r in sorted(candidates)]
    for r in sorted(candidates):
        sub_ring = PolyRing(domain, rest)
        val = domain.from_int(r)
        reduced = []
        for g in ideal.generators:
            gg = g.subs({first: g.ring.const(val)})
            reduced.append(sub_ring.transfer(gg))
        sub = Ideal(sub_ring, [g for g in reduced if not g.is_zero()])
        if any(g.is_constant() and not g.is_zero() for g in sub.generators):
            continue
        for tail in solve_zero_dimensional(sub):
            tail[first] = val
            out.append(tail)
    return out


@dataclass
class FamilyMember:
    family: str
    prime: int
    eps: int
    params: Type222Params
    coefficients: tuple  # (alpha, beta, gamma)
    surface: Polynomial


def _web_surface(domain, params: Type222Params, coeffs):
    R = coord_ring(domain)
    Q, K = type222_forms(R, **params.as_dict())
    return web_member_222(Q, K, *coeffs)


def _coefficients_for(domain, params: Type222Params):
    matrix = condition_matrix_222(domain)
    values = matrix.evaluate(params.as_dict())
    return web_coefficients(values, domain)


def _check_satisfies(domain, params: Type222Params, family: str):
    ring = ring_222(domain, coords=False)
    point = [getattr(params, n) for n in PARAMS_222]
    for eq in solution_family_222(family, ring):
        if not domain.is_zero(eq.evaluate(point)):
            raise DegenerateParams(f"published {family} equation violated")


def three_conics_member(p: int) -> FamilyMember:
    """lam = mu = nu and c1 = c2 = c3; nu^2 solves m^2 - 3*eps*m + eps^2
    and c^2 = eps - 1 - (1 - eps^2) nu^2.  Smallest working roots win."""
    domain = PrimeField.with_cube_root(p)
    eps = domain.eps()
    eps2 = domain.mul(eps, eps)
    for m in roots_mod(domain, [eps2, -3 * eps % p, 1]):
        for n in roots_mod(domain, [-m % p, 0, 1]):
            if n == 0:
                continue
            rhs = (eps - 1 - (1 - eps2) * n * n) % p
            for c in roots_mod(domain, [-rhs % p, 0, 1]):
                if c == 0:
                    continue
                b = domain.neg(domain.add(c, n))
                params = Type222Params(n, n, n, b, b, b, c, c, c)
                try:
                    params.check(domain)
                    _check_satisfies(domain, params, "three_conics")
                    coeffs = _coefficients_for(domain, params)
                except DegenerateParams:
                    continue
                return FamilyMember("three_conics", p, eps, params, coeffs,
                                    _web_surface(domain, params, coeffs))
    raise DegenerateParams(f"three-conic conditions do not split mod {p}")


def four_conics_member(p: int) -> FamilyMember:
    """lam = nu with nu^2 - eps*nu - eps^2 = 0, mu = 2*eps^2*nu - 3,
    c1 = c3 = (1 - eps^2) nu + (1 - eps), c2 = (eps^2 - eps) nu."""
    domain = PrimeField.with_cube_root(p)
    eps = domain.eps()
    eps2 = domain.mul(eps, eps)
    for n in roots_mod(domain, [-eps2 % p, -eps % p, 1]):
        if n == 0:
            continue
        mu = (2 * eps2 * n - 3) % p
        c1 = ((1 - eps2) * n + (1 - eps)) % p
        c2 = ((eps2 - eps) * n) % p
        c3 = c1
        b1 = domain.neg(domain.add(c1, n))
        b2 = domain.neg(domain.add(c2, n))
        b3 = domain.neg(domain.add(c3, mu))
        params = Type222Params(n, mu, n, b1, b2, b3, c1, c2, c3)
        try:
            params.check(domain)
            _check_satisfies(domain, params, "four_conics")
            coeffs = _coefficients_for(domain, params)
        except DegenerateParams:
            continue
        return FamilyMember("four_conics", p, eps, params, coeffs,
                            _web_surface(domain, params, coeffs))
    raise DegenerateParams(f"four-conic conditions do not split mod {p}")


def five_conics_specialized_system(domain) -> tuple:
    """The five-conic branch at lam = mu = -1, nu = eps, as a
    zero-dimensional ideal in (c1, c2, c3); the second component of the
    return value is the b-recovery solver."""
    gens, ctx = minor_system_222(domain, "mixed")
    R = ctx["ring"]
    spec = {"lam": -R.one(), "mu": -R.one(), "nu": R.eps()}
    cuts = [R.transfer(f).subs(spec) for f in mixed_long_factors(R)]
    specialized = [g.subs(spec) for g in gens] + cuts
    small = PolyRing(domain, ("c1", "c2", "c3"))
    polys = [small.transfer(g) for g in specialized if not g.is_zero()]
    ideal = Ideal(small, polys)
    q_tilde = small.transfer(ctx["q_tilde"].subs(spec))
    for f in (small.var("c1"), small.var("c2"), small.var("c3"), q_tilde):
        ideal = ideal.saturate(f)
    bsolver = BSolver(ring_222(domain, coords=False),
                      root_equations(domain, "mixed"))
    return ideal, bsolver


def five_conics_members(p: int) -> list:
    """Both members at the specialisation lam = mu = -1, nu = eps (one
    per root of the recomputed quadratic for c1)."""
    domain = PrimeField.with_cube_root(p)
    eps = domain.eps()
    ideal, bsolver = five_conics_specialized_system(domain)
    members = []
    lam = domain.neg(domain.one())
    for sol in solve_zero_dimensional(ideal):
        vals = {"lam": lam, "mu": lam, "nu": eps,
                "c1": sol["c1"], "c2": sol["c2"], "c3": sol["c3"]}
        try:
            b1, b2, b3 = bsolver.b_values(vals)
            params = Type222Params(lam, lam, eps, b1, b2, b3,
                                   sol["c1"], sol["c2"], sol["c3"])
            params.check(domain)
            _check_satisfies(domain, params, "five_conics")
            coeffs = _coefficients_for(domain, params)
        except DegenerateParams:
            continue
        members.append(FamilyMember("five_conics", p, eps, params, coeffs,
                                    _web_surface(domain, params, coeffs)))
    if not members:
        raise DegenerateParams(f"five-conic system has no points mod {p}")
    return members


def build_members(family: str, p: int):
    if family == "three_conics":
        return [three_conics_member(p)]
    if family == "four_conics":
        return [four_conics_member(p)]
    if family == "five_conics":
        return five_conics_members(p)
    raise DegenerateParams(f"unknown family {family}")


def find_member_prime(family: str, start: int = 5, limit: int = 400):
    """Smallest prime p = 1 (mod 3), p > 3, where the construction
    succeeds; returns (p, members)."""
    p = start
    while p <= limit:
        if is_prime(p) and p % 3 == 1 and p > 3:
            try:
                return p, build_members(family, p)
            except (DegenerateParams, NoCubeRoot):
                pass
        p += 1
    raise DegenerateParams(f"no prime below {limit} splits the {family} conditions")
