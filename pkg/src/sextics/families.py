"""Constructors for the nine-triple-point families and static tables.

Two families carry the whole computation:

* type (2,2,2): a web  alpha*Q^3 + beta*xyzt*Q + gamma*xyz*K  where Q is
  the quadric through the nine configured points and K a four-nodal
  cubic; parameters (lam, mu, nu, b1..b3, c1..c3).
* type (4,4,4): a pencil  alpha*K1*K2*K3 + beta*Q^3  built from three
  quadric cones with vertices at infinity; parameters (a..f, u, v, w).

The multiplicity tables of the classification, the published component
equations and the explicit finite-field example all live here as data.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateParams, NoCubeRoot, UnknownLabel
from .ideal import Ideal
from .poly import PolyRing, Polynomial, ring_over
from .scalar import ScalarDomain

COORD_NAMES = ("x", "y", "z", "t")
PARAMS_222 = ("lam", "mu", "nu", "b1", "b2", "b3", "c1", "c2", "c3")
PARAMS_444 = ("a", "b", "c", "d", "e", "f", "u", "v", "w")


def ring_222(domain: ScalarDomain, coords: bool = True) -> PolyRing:
    names = PARAMS_222 + COORD_NAMES if coords else PARAMS_222
    return PolyRing(domain, names)


def ring_444(domain: ScalarDomain, coords: bool = True) -> PolyRing:
    names = PARAMS_444 + COORD_NAMES if coords else PARAMS_444
    return PolyRing(domain, names)


def coord_ring(domain: ScalarDomain) -> PolyRing:
    return PolyRing(domain, COORD_NAMES)


def _elem(ring: PolyRing, v):
    if isinstance(v, Polynomial):
        return v if v.ring == ring else ring.transfer(v)
    if isinstance(v, int):
        return ring.from_int(v)
    return ring.const(v)


# ---------------------------------------------------------------------------
# type (2,2,2)

@dataclass(frozen=True)
class Type222Params:
    """Scalar parameters of the (2,2,2) configuration.

    P7 = (0:1:lam:0), P8 = (mu:0:1:0), P9 = (1:nu:0:0); b and c are the
    coefficients of the quadric Q through the nine points.
    """

    lam: object
    mu: object
    nu: object
    b1: object
    b2: object
    b3: object
    c1: object
    c2: object
    c3: object

    def check(self, domain: ScalarDomain):
        for ci in (self.c1, self.c2, self.c3):
            if domain.is_zero(ci):
                raise DegenerateParams("c coefficients must be nonzero")
        lmn = domain.mul(domain.mul(self.lam, self.mu), self.nu)
        if domain.is_zero(domain.add(lmn, domain.one())):
            raise DegenerateParams("P7, P8, P9 are collinear (lam*mu*nu = -1)")

    def as_dict(self):
        return {n: getattr(self, n) for n in PARAMS_222}


def type222_forms(ring: PolyRing, lam, mu, nu, b1, b2, b3, c1, c2, c3):
    """The quadric Q and four-nodal cubic K, homogeneous in (x,y,z,t)."""
    lam, mu, nu = _elem(ring, lam), _elem(ring, mu), _elem(ring, nu)
    b1, b2, b3 = _elem(ring, b1), _elem(ring, b2), _elem(ring, b3)
    c1, c2, c3 = _elem(ring, c1), _elem(ring, c2), _elem(ring, c3)
    x, y, z, t = (ring.var(n) for n in COORD_NAMES)
    A = nu * x - y - mu * nu * z
    B = lam * y - z - lam * nu * x
    C = mu * z - x - lam * mu * y
    Q = (c1 * c2 * c3 * t ** 2
         + t * (b1 * c2 * c3 * x + b2 * c1 * c3 * y + b3 * c1 * c2 * z)
         + c2 * c3 * x * A + c1 * c3 * y * B + c1 * c2 * z * C)
    K = (t ** 2 * (lam * nu * c1 * x + lam * mu * c2 * y + mu * nu * c3 * z)
         + t * (lam * b1 * x * A + mu * b2 * y * B + nu * b3 * z * C)
         + A * B * C)
    return Q, K


def build_Q_222(params: Type222Params, domain: ScalarDomain) -> Polynomial:
    params.check(domain)
    R = coord_ring(domain)
    Q, _ = type222_forms(R, **params.as_dict())
    return Q


def build_K_222(params: Type222Params, domain: ScalarDomain) -> Polynomial:
    params.check(domain)
    R = coord_ring(domain)
    _, K = type222_forms(R, **params.as_dict())
    return K


@dataclass(frozen=True)
class PencilCoefficients:
    alpha: object
    beta: object
    gamma: object = None  # absent for pencils


def web_member_222(Q: Polynomial, K: Polynomial, alpha, beta, gamma) -> Polynomial:
    ring = Q.ring
    x, y, z, t = (ring.var(n) for n in COORD_NAMES)
    return (_elem(ring, alpha) * Q ** 3
            + _elem(ring, beta) * x * y * z * t * Q
            + _elem(ring, gamma) * x * y * z * K)


def build_sextic_222(params: Type222Params, coeffs: PencilCoefficients,
                     domain: ScalarDomain) -> Polynomial:
    params.check(domain)
    R = coord_ring(domain)
    Q, K = type222_forms(R, **params.as_dict())
    if all(domain.is_zero(c) for c in
           (coeffs.alpha, coeffs.beta, coeffs.gamma)):
        raise DegenerateParams("web coefficients all zero")
    return web_member_222(Q, K, coeffs.alpha, coeffs.beta, coeffs.gamma)


def split_axis_params_222(domain, lam, mu, nu, x_roots, y_roots, z_roots
                          ) -> Type222Params:
    """Parameters whose six axis points are prescribed.

    The x-axis points (x:0:0:1) of the configuration are the roots of
    nu*x^2 + b1*x + c1, so c1 = nu*x1*x2 and b1 = -nu*(x1+x2); cyclically
    for the other axes.
    """
    def pair(k, r1, r2):
        c = domain.mul(k, domain.mul(r1, r2))
        b = domain.neg(domain.mul(k, domain.add(r1, r2)))
        return b, c

    b1, c1 = pair(nu, *x_roots)
    b2, c2 = pair(lam, *y_roots)
    b3, c3 = pair(mu, *z_roots)
    return Type222Params(lam, mu, nu, b1, b2, b3, c1, c2, c3)


def base_points_222(params: Type222Params, domain, axis_roots=None):
    """The nine base points, when the axis quadrics split with the given
    roots ((x1,x2), (y1,y2), (z1,z2))."""
    one, zero = domain.one(), domain.zero()
    pts = [(one, params.nu, zero, zero),        # P9
           (zero, one, params.lam, zero),       # P7
           (params.mu, zero, one, zero)]        # P8
    if axis_roots:
        (x1, x2), (y1, y2), (z1, z2) = axis_roots
        pts += [(x1, zero, zero, one), (x2, zero, zero, one),
                (zero, y1, zero, one), (zero, y2, zero, one),
                (zero, zero, z1, one), (zero, zero, z2, one)]
    return pts


# ---------------------------------------------------------------------------
# type (4,4,4)

@dataclass(frozen=True)
class Type444Params:
    a: object
    b: object
    c: object
    d: object
    e: object
    f: object
    u: object
    v: object
    w: object

    def check(self, domain: ScalarDomain):
        for k in (self.u, self.v, self.w):
            if domain.is_zero(k):
                raise DegenerateParams("u, v, w must be nonzero")

    def as_dict(self):
        return {n: getattr(self, n) for n in PARAMS_444}


def type444_cones(ring: PolyRing, a, b, c, d, e, f, u, v, w):
    """The three quadric cones, homogenised with t (vertices at infinity)."""
    a, b, c = _elem(ring, a), _elem(ring, b), _elem(ring, c)
    d, e, f = _elem(ring, d), _elem(ring, e), _elem(ring, f)
    u, v, w = _elem(ring, u), _elem(ring, v), _elem(ring, w)
    x, y, z, t = (ring.var(n) for n in COORD_NAMES)
    K1 = w * x ** 2 + a * u * z * t + b * w * x * t - (a + b + u) * x * z
    K2 = u * y ** 2 + c * v * x * t + d * u * y * t - (c + d + v) * x * y
    K3 = v * z ** 2 + e * w * y * t + f * v * z * t - (e + f + w) * y * z
    return K1, K2, K3


def type444_quadric(ring: PolyRing, a, b, c, d, e, f, u, v, w) -> Polynomial:
    """Q = (a-x)(c-y)(e-z) + (b+x)(d+y)(f+z), homogenised with t."""
    a, b, c = _elem(ring, a), _elem(ring, b), _elem(ring, c)
    d, e, f = _elem(ring, d), _elem(ring, e), _elem(ring, f)
    x, y, z, t = (ring.var(n) for n in COORD_NAMES)
    return ((a * c * e + b * d * f) * t ** 2
            + ((d * f - c * e) * x + (b * f - a * e) * y + (b * d - a * c) * z) * t
            + (e + f) * x * y + (c + d) * x * z + (a + b) * y * z)


def syzygy_matrix_444(ring: PolyRing, a, b, c, d, e, f, u, v, w):
    """Affine 3x3 matrix killing (u-x, v-y, w-z) into (K3, K1, K2)."""
    a, b, c = _elem(ring, a), _elem(ring, b), _elem(ring, c)
    d, e, f = _elem(ring, d), _elem(ring, e), _elem(ring, f)
    x, y, z = ring.var("x"), ring.var("y"), ring.var("z")
    zero = ring.zero()
    return [
        [zero, (f + z) * z, (e - z) * y],
        [(a - x) * z, zero, (b + x) * x],
        [(d + y) * y, (c - y) * x, zero],
    ]


def det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def build_cones_444(params: Type444Params, domain: ScalarDomain):
    params.check(domain)
    R = coord_ring(domain)
    return type444_cones(R, **params.as_dict())


def build_Q_444(params: Type444Params, domain: ScalarDomain) -> Polynomial:
    params.check(domain)
    R = coord_ring(domain)
    return type444_quadric(R, **params.as_dict())


def pencil_member_444(K1, K2, K3, Q, alpha, beta) -> Polynomial:
    ring = Q.ring
    return _elem(ring, alpha) * K1 * K2 * K3 + _elem(ring, beta) * Q ** 3


def component_ideal_444(ring: PolyRing, conjugate: bool = False) -> Ideal:
    """The five equations cutting one of the two conjugate components of
    the ten-point locus in (a..f, u, v, w)-space."""
    if not ring.domain.has_eps:
        raise NoCubeRoot("component equations need a third root of unity")
    eps = ring.eps()
    e1, e2 = (eps * eps, eps) if conjugate else (eps, eps * eps)
    # e1 plays the published epsilon, e2 its square
    a, b, c, d, e, f = (ring.var(n) for n in "abcdef")
    u, v, w = (ring.var(n) for n in "uvw")
    gens = [
        e + f + e2 * v - e1 * w,
        c + d + e2 * u - e1 * v,
        a + b + e2 * w - e1 * u,
        b + d + f - e1 * (u + v + w),
        u * v + u * w + v * w,
    ]
    return Ideal(ring, gens)


def explicit_params_444(domain: ScalarDomain, conjugate: bool = False) -> Type444Params:
    """The explicit ten-triple-point example: v = w = 2, u = d = -1, b = 0,
    with a, c, e, f pinned by the printed cone equations."""
    eps = domain.eps()
    if conjugate:
        eps = domain.sub(domain.neg(domain.one()), eps)  # eps^2 = -1 - eps
    two = domain.from_int(2)
    eps2 = domain.mul(eps, eps)
    return Type444Params(
        a=domain.add(eps, two),
        b=domain.zero(),
        c=eps,
        d=domain.neg(domain.one()),
        e=domain.neg(eps2),
        f=domain.add(domain.mul(domain.from_int(3), eps), domain.one()),
        u=domain.neg(domain.one()),
        v=two,
        w=two,
    )


def explicit_sextic_444(domain: ScalarDomain, conjugate: bool = False) -> Polynomial:
    """27*K1*K2*K3 + 2*Q^3 for the explicit example parameters."""
    p = explicit_params_444(domain, conjugate)
    K1, K2, K3 = build_cones_444(p, domain)
    Q = build_Q_444(p, domain)
    return pencil_member_444(K1, K2, K3, Q, domain.from_int(27), domain.from_int(2))


# ---------------------------------------------------------------------------
# published solution-family equations, type (2,2,2)

def atoms_222(ring: PolyRing):
    """Values at the candidate tenth point (1,1,1) in the chart t = 1 of
    the quadric, the cubic and all their first and second derivatives,
    as polynomials in the nine parameters.

    Keys: 'Q', 'Qx', .., 'Qxx', 'Qxy', .., 'K', 'Kx', .., 'Kyz'.  The
    given ring only needs the nine parameters.
    """
    full = ring_222(ring.domain) if any(n not in ring.index for n in COORD_NAMES) \
        else ring
    args = {n: full.var(n) for n in PARAMS_222}
    Q, K = type222_forms(full, **args)
    out = {}
    for label, form in (("Q", Q), ("K", K)):
        aff = form.subs({"t": full.one()})
        out[label] = aff.subs({k: full.one() for k in "xyz"})
        firsts = {}
        for v in "xyz":
            dv = aff.partial(v)
            firsts[v] = dv
            out[label + v] = dv.subs({k: full.one() for k in "xyz"})
        for i, vi in enumerate("xyz"):
            for vj in "xyz"[i:]:
                dd = firsts[vi].partial(vj)
                out[label + vi + vj] = dd.subs({k: full.one() for k in "xyz"})
    return {k: ring.transfer(v) for k, v in out.items()}


def _eps_powers(ring):
    eps = ring.eps()
    return eps, eps * eps


def same_root_equations(ring: PolyRing):
    """The three linear equations taking the same cube root in each of
    the quadratic conditions; together with the minor system they cut the
    three-conic family."""
    at = atoms_222(ring)
    eps, eps2 = _eps_powers(ring)
    lam, mu, nu = ring.var("lam"), ring.var("mu"), ring.var("nu")
    one = ring.one()
    r = lambda kappa: (one - eps2) * kappa + (one - eps)
    return [
        3 * (nu * at["Qy"] + at["Qx"]) - r(nu) * at["Q"],
        3 * (mu * at["Qx"] + at["Qz"]) - r(mu) * at["Q"],
        3 * (lam * at["Qz"] + at["Qy"]) - r(lam) * at["Q"],
    ]


def mixed_root_equations(ring: PolyRing):
    """Root choices differing in the last equation (conjugate root there)."""
    at = atoms_222(ring)
    eps, eps2 = _eps_powers(ring)
    lam, mu, nu = ring.var("lam"), ring.var("mu"), ring.var("nu")
    one = ring.one()
    r = lambda kappa: (one - eps2) * kappa + (one - eps)
    rbar = lambda kappa: (one - eps) * kappa + (one - eps2)
    return [
        3 * (nu * at["Qy"] + at["Qx"]) - r(nu) * at["Q"],
        3 * (mu * at["Qx"] + at["Qz"]) - r(mu) * at["Q"],
        3 * (lam * at["Qz"] + at["Qy"]) - rbar(lam) * at["Q"],
    ]


def mixed_long_factors(ring: PolyRing):
    """The two long factors of the equations coming from the second row
    of the reduced condition matrix (mixed-root case)."""
    eps, eps2 = _eps_powers(ring)
    lam, mu, nu = ring.var("lam"), ring.var("mu"), ring.var("nu")
    c1, c2, c3 = ring.var("c1"), ring.var("c2"), ring.var("c3")
    long1 = (nu * c1 * c2 * c3
             - (nu * (eps2 + lam) * c1 * c3 - nu * c2 * c3 - eps * c1 * c2)
             * (mu * nu - nu + 1))
    long2 = (mu * c1 * c2 * c3
             - ((eps * nu + 1) * c1 * c3 - eps2 * mu * nu * c2 * c3 - mu * c1 * c2)
             * (lam * mu - mu + 1))
    return long1, long2


def mixed_short_factors(ring: PolyRing):
    lam, mu, nu = ring.var("lam"), ring.var("mu"), ring.var("nu")
    c1, c2, c3 = ring.var("c1"), ring.var("c2"), ring.var("c3")
    return lam * mu * c2 - c3, lam * nu * c1 - c2


def solution_family_222(family: str, ring: PolyRing):
    """Published defining equations of the three ten-point families inside
    the (2,2,2) web, keyed by their (-1)-conic count."""
    eps, eps2 = _eps_powers(ring)
    lam, mu, nu = ring.var("lam"), ring.var("mu"), ring.var("nu")
    c1, c2, c3 = ring.var("c1"), ring.var("c2"), ring.var("c3")
    if family == "three_conics":
        return same_root_equations(ring)
    if family == "four_conics":
        return [
            c3 - lam * mu * c2,
            c1 + eps2 * (lam * mu - mu + 1)
            * (lam * mu * nu + eps * mu * nu - eps * nu - eps2),
            (lam * mu * nu + eps * mu * nu + eps2 * nu - eps2) * c3
            + eps * (eps * lam * nu + lam - 1) * c1,
        ]
    if family == "five_conics":
        long1, long2 = mixed_long_factors(ring)
        return [long1, long2,
                mu * c2 - (lam * mu - mu + 1) * (mu * nu - nu + 1)]
    raise UnknownLabel(family)


# ---------------------------------------------------------------------------
# multiplicity tables

@dataclass(frozen=True)
class TableRow:
    label: str
    degree: int
    mults: tuple
    note: str = ""


def _rows(spec, degrees, note):
    out = []
    for label, mults in spec:
        out.append(TableRow(label, degrees[label[0]], tuple(mults), note))
    return out


_DEG = {"L": 1, "K": 2, "C": 3, "Q": 4}

TABLE1 = {
    "(4,4,4)": _rows([
        ("K1", (0, 2, 1, 1, 1, 1, 1, 1, 1)),
        ("K2", (1, 0, 2, 1, 1, 1, 1, 1, 1)),
        ("K3", (2, 1, 0, 1, 1, 1, 1, 1, 1)),
    ], _DEG, "nine points, blown-up K3 case"),
    "(2,4,6)": _rows([
        ("L1", (1, 0, 0, 0, 0, 1, 1, 1, 1)),
        ("K2", (0, 2, 1, 1, 1, 1, 1, 1, 1)),
        ("C3", (2, 1, 2, 2, 2, 1, 1, 1, 1)),
    ], _DEG, "nine points, blown-up K3 case"),
    "(2,2,8)": _rows([
        ("L1", (1, 0, 0, 0, 0, 1, 1, 1, 1)),
        ("L2", (0, 1, 1, 1, 0, 0, 0, 1, 1)),
        ("Q3", (2, 2, 2, 2, 3, 2, 2, 1, 1)),
    ], _DEG, "nine points, blown-up K3 case"),
}

TABLE2 = {
    "(2,2,2)": _rows([
        ("L1", (0, 0, 1, 1, 1, 1, 1, 0, 0)),
        ("L2", (1, 1, 0, 0, 1, 1, 0, 1, 0)),
        ("L3", (1, 1, 1, 1, 0, 0, 0, 0, 1)),
    ], _DEG, "nine points, properly elliptic case"),
    "(2,2,4)": _rows([
        ("L1", (0, 0, 1, 1, 1, 1, 1, 0, 0)),
        ("L2", (1, 1, 0, 0, 1, 1, 0, 1, 0)),
        ("K3", (1, 1, 1, 1, 0, 1, 1, 1, 2)),
    ], _DEG, "nine points, properly elliptic case"),
}

TABLE3 = _rows([
    ("L1", (1, 1, 1, 0, 0, 0, 0, 0, 1, 1)),
    ("L2", (0, 0, 0, 1, 1, 1, 0, 0, 1, 1)),
    ("K1", (0, 2, 1, 1, 1, 1, 1, 1, 1, 0)),
    ("K2", (1, 0, 2, 1, 1, 1, 1, 1, 1, 0)),
    ("K3", (2, 1, 0, 1, 1, 1, 1, 1, 1, 0)),
    ("K4", (1, 1, 1, 0, 2, 1, 1, 1, 0, 1)),
    ("K5", (1, 1, 1, 1, 0, 2, 1, 1, 0, 1)),
    ("K6", (1, 1, 1, 2, 1, 0, 1, 1, 0, 1)),
    ("C1", (0, 1, 2, 1, 1, 1, 2, 2, 1, 2)),
    ("C2", (2, 0, 1, 1, 1, 1, 2, 2, 1, 2)),
    ("C3", (1, 2, 0, 1, 1, 1, 2, 2, 1, 2)),
    ("C4", (1, 1, 1, 0, 1, 2, 2, 2, 2, 1)),
    ("C5", (1, 1, 1, 2, 0, 1, 2, 2, 2, 1)),
    ("C6", (1, 1, 1, 1, 2, 0, 2, 2, 2, 1)),
    ("Q1", (2, 2, 2, 2, 2, 2, 0, 3, 1, 1)),
    ("Q2", (2, 2, 2, 2, 2, 2, 3, 0, 1, 1)),
], _DEG, "ten points, two-conic configuration")

TABLE4 = _rows([
    ("L1", (0, 0, 1, 1, 1, 1, 1, 0, 0, 0)),
    ("L2", (1, 1, 0, 0, 1, 1, 0, 1, 0, 0)),
    ("L3", (1, 1, 1, 1, 0, 0, 0, 0, 1, 0)),
    ("L4", (0, 0, 0, 1, 0, 1, 0, 1, 1, 1)),
    ("L5", (0, 1, 1, 0, 0, 0, 1, 1, 0, 1)),
    ("Q1", (2, 2, 1, 1, 2, 2, 2, 0, 2, 3)),
    ("Q2", (2, 1, 1, 2, 3, 0, 2, 2, 2, 2)),
    ("Q3", (2, 1, 2, 0, 2, 2, 2, 1, 3, 2)),
    ("Q4", (2, 2, 0, 2, 2, 1, 3, 1, 2, 2)),
    ("Q5", (3, 0, 2, 1, 2, 1, 2, 2, 2, 2)),
], _DEG, "ten points, five-conic configuration")

# Witness points of the extra conic plane in the four-conic family; the
# last coordinate of the second point is recorded as the undetermined
# symbol 'l' (most plausibly lam) and is never used in computations.
FOUR_CONIC_AXIS_WITNESSES = {
    "x_axis": ("c1", "0", "0", "nu"),
    "y_axis": ("0", "c2", "0", "l"),
    "flag": "second point's last coordinate is ambiguous in the source data",
}


def tables_json() -> dict:
    def rows_json(rows):
        return [{"label": r.label, "degree": r.degree, "mults": list(r.mults),
                 "note": r.note} for r in rows]

    return {
        "nine_points_k3": {k: rows_json(v) for k, v in TABLE1.items()},
        "nine_points_elliptic": {k: rows_json(v) for k, v in TABLE2.items()},
        "ten_points_two_conics": rows_json(TABLE3),
        "ten_points_five_conics": rows_json(TABLE4),
    }
