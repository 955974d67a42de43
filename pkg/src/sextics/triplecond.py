"""The tenth-triple-point condition engine.

Given a pencil or web of sextics with nine triple points, a tenth
triple point at a fixed candidate position imposes ten conditions (the
function and all derivatives through second order in an affine chart,
or the ten second partials of the homogeneous form at a point of the
plane at infinity).  These are linear in the pencil/web coefficients,
so the maximal minors of the condition matrix must vanish.  This module
builds the matrices, replays the structural row/column reductions that
make the systems tractable (every elementary operation is written to an
audit log), eliminates the linear parameters, forms the minor ideals
and saturates away the configured unwanted loci.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import linalg
from .errors import (DegenerateParams, NoCubeRoot, NotDivisible,
                     PointOnQ, UnknownLabel)
from .families import (
    COORD_NAMES,
    PARAMS_222,
    PARAMS_444,
    atoms_222,
    mixed_root_equations,
    ring_222,
    ring_444,
    same_root_equations,
    type222_forms,
    type444_cones,
    type444_quadric,
)
from .ideal import Ideal
from .poly import PolyRing, Polynomial, poly_to_str
from .scalar import PrimeField


# ---------------------------------------------------------------------------
# condition matrices with an audit log

@dataclass
class AuditEntry:
    op: str
    target: str
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {"op": self.op, "target": self.target,
                "detail": {k: str(v) for k, v in self.detail.items()}}


class ConditionMatrix:
    """k x 10 matrix of evaluated derivative functionals, with labelled
    rows (basis surfaces) and columns (functionals), supporting
    elementary row/column operations that are written to an audit log."""

    def __init__(self, ring, rows, row_labels, col_labels):
        self.ring = ring
        self.entries = [list(r) for r in rows]
        self.row_labels = list(row_labels)
        self.col_labels = list(col_labels)
        self.log: list[AuditEntry] = []

    @property
    def shape(self):
        return len(self.entries), len(self.entries[0])

    def copy(self):
        m = ConditionMatrix(self.ring, [list(r) for r in self.entries],
                            self.row_labels, self.col_labels)
        m.log = list(self.log)
        return m

    def col(self, label):
        return self.col_labels.index(label)

    def entry(self, i, col_label):
        return self.entries[i][self.col(col_label)]

    def divide_row(self, i, f: Polynomial, reason=""):
        self.entries[i] = [e.divide_exact(f) for e in self.entries[i]]
        self.log.append(AuditEntry("divide_row", self.row_labels[i],
                                   {"factor": poly_to_str(f), "why": reason}))

    def scale_row(self, i, f: Polynomial, reason=""):
        self.entries[i] = [e * f for e in self.entries[i]]
        self.log.append(AuditEntry("scale_row", self.row_labels[i],
                                   {"factor": poly_to_str(f), "why": reason}))

    def row_addmul(self, target, source, factor: Polynomial):
        self.entries[target] = [a + factor * b for a, b in
                                zip(self.entries[target], self.entries[source])]
        self.log.append(AuditEntry("row_addmul", self.row_labels[target],
                                   {"source": self.row_labels[source],
                                    "factor": poly_to_str(factor)}))

    def col_combine(self, target_label, scale, adds: dict):
        """col_target <- scale*col_target + sum adds[label]*col_label."""
        j = self.col(target_label)
        scale = self._as_poly(scale)
        cols = {lbl: self.col(lbl) for lbl in adds}
        for i in range(len(self.entries)):
            acc = self.entries[i][j] * scale
            for lbl, k in cols.items():
                acc = acc + self._as_poly(adds[lbl]) * self.entries[i][k]
            self.entries[i][j] = acc
        self.log.append(AuditEntry(
            "col_combine", target_label,
            {"scale": poly_to_str(scale),
             **{f"add[{lbl}]": poly_to_str(self._as_poly(c))
                for lbl, c in adds.items()}}))

    def _as_poly(self, c):
        if isinstance(c, Polynomial):
            return c
        if isinstance(c, int):
            return self.ring.from_int(c)
        return self.ring.const(c)

    def submatrix(self, rows, col_labels):
        return [[self.entries[i][self.col(l)] for l in col_labels] for i in rows]

    def minor(self, rows, col_labels) -> Polynomial:
        m = self.submatrix(rows, col_labels)
        if len(m) == 1:
            return m[0][0]
        if len(m) == 2:
            return m[0][0] * m[1][1] - m[0][1] * m[1][0]
        if len(m) == 3:
            return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                    - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
        raise ValueError("only minors up to 3x3 are needed")

    def evaluate(self, values: dict):
        """Numeric matrix at a parameter assignment (dict name -> scalar)."""
        point = []
        for n in self.ring.names:
            if n not in values:
                raise DegenerateParams(f"missing parameter {n}")
            point.append(values[n])
        return [[e.evaluate(point) for e in row] for row in self.entries]

    def to_json(self):
        return {
            "rows": self.row_labels,
            "cols": self.col_labels,
            "entries": [[poly_to_str(e) for e in row] for row in self.entries],
            "log": [a.to_json() for a in self.log],
        }


def maximal_minors(matrix: ConditionMatrix) -> list:
    """All k x k minors, ordered by the column index tuples."""
    from itertools import combinations
    k, n = matrix.shape
    out = []
    for cols in combinations(matrix.col_labels, k):
        out.append(matrix.minor(range(k), cols))
    return out


# ---------------------------------------------------------------------------
# generic functional rows

AFFINE_FUNCTIONALS = ("f", "fx", "fy", "fz", "fxx", "fyy", "fzz",
                      "fxy", "fxz", "fyz")
INFINITY_FUNCTIONALS = ("xx", "yy", "zz", "xy", "xz", "yz",
                        "xt", "yt", "zt", "tt")


def _affine_row(form_affine: Polynomial, ring):
    """[f, f_x, .., f_yz] evaluated at (x,y,z) = (1,1,1)."""
    at = {v: ring.one() for v in "xyz"}
    row = [form_affine.subs(at)]
    firsts = {}
    for v in "xyz":
        d = form_affine.partial(v)
        firsts[v] = d
        row.append(d.subs(at))
    for v in "xyz":
        row.append(firsts[v].partial(v).subs(at))
    for a, b in (("x", "y"), ("x", "z"), ("y", "z")):
        row.append(firsts[a].partial(b).subs(at))
    return row


def _infinity_row(form: Polynomial, ring, point=(1, 1, 1, 0)):
    """The ten second partials of a homogeneous form at a point."""
    vals = [ring.domain.from_int(c) if isinstance(c, int) else c for c in point]
    at = {n: ring.const(v) for n, v in zip(COORD_NAMES, vals)}
    row = []
    for pair in INFINITY_FUNCTIONALS:
        d = form.partial(pair[0]).partial(pair[1])
        row.append(d.subs(at))
    return row


def _project_params(ring_full, ring_params, polys):
    return [ring_params.transfer(f) for f in polys]


# ---------------------------------------------------------------------------
# type (2,2,2): the 3 x 10 web matrix and its reduction

def condition_matrix_222(domain) -> ConditionMatrix:
    """Raw 3 x 10 matrix of the web (Q^3, xyzt*Q, xyz*K) at (1,1,1), t=1."""
    ring = ring_222(domain)
    params = {n: ring.var(n) for n in PARAMS_222}
    Q, K = type222_forms(ring, **params)
    one = ring.one()
    Qa = Q.subs({"t": one})
    Ka = K.subs({"t": one})
    x, y, z = ring.var("x"), ring.var("y"), ring.var("z")
    forms = [Qa ** 3, x * y * z * Qa, x * y * z * Ka]
    pring = ring_222(domain, coords=False)
    rows = [_project_params(ring, pring, _affine_row(f, ring)) for f in forms]
    return ConditionMatrix(pring, rows, ["Q^3", "xyzt*Q", "xyz*K"],
                           list(AFFINE_FUNCTIONALS))


def reduce_matrix_222(matrix: ConditionMatrix, atoms: dict) -> ConditionMatrix:
    """Replay the structural reduction: divide the first row by Q, clear
    its second derivatives, normalise rows two and three to plain
    derivative values, then build the three columns with two zeroes."""
    m = matrix.copy()
    ring = m.ring
    q = atoms["Q"]
    if q.is_zero():
        raise PointOnQ("the candidate point lies on the quadric")
    m.divide_row(0, q, reason="tenth point off the quadric")
    m.row_addmul(0, 1, ring.from_int(-3) * q)
    one = ring.one()
    for c in ("fx", "fy", "fz"):
        m.col_combine(c, one, {"f": -one})
    for c, (u, v) in (("fxy", ("fx", "fy")), ("fxz", ("fx", "fz")),
                      ("fyz", ("fy", "fz"))):
        m.col_combine(c, one, {u: -one, v: -one, "f": -one})
    for c, u in (("fxx", "fx"), ("fyy", "fy"), ("fzz", "fz")):
        m.col_combine(c, one, {u: ring.from_int(-2)})
    lam, mu, nu = ring.var("lam"), ring.var("mu"), ring.var("nu")
    two = ring.from_int(2)
    m.col_combine("fxy", two * nu, {"fxx": one, "fyy": nu * nu})
    m.col_combine("fyz", two * lam, {"fyy": one, "fzz": lam * lam})
    m.col_combine("fxz", two * mu, {"fzz": one, "fxx": mu * mu})
    return m


def build_E_equations(domain):
    """The three quadratic conditions (E_lam, E_mu, E_nu) in the nine
    parameters; E_nu is quadratic in (Q, nu*Qy + Qx) with discriminant
    -3(nu-1)^2, and similarly for the others."""
    ring = ring_222(domain, coords=False)
    at = atoms_222(ring)
    lam, mu, nu = ring.var("lam"), ring.var("mu"), ring.var("nu")
    q = at["Q"]

    def E(kappa, S):
        return ((kappa ** 2 + kappa + 1) * q ** 2
                - 3 * (kappa + 1) * q * S + 3 * S ** 2)

    E_nu = E(nu, nu * at["Qy"] + at["Qx"])
    E_lam = E(mu, mu * at["Qx"] + at["Qz"])
    E_mu = E(lam, lam * at["Qz"] + at["Qy"])
    return E_lam, E_mu, E_nu


def _root_scalars(ring, roots: str):
    eps = ring.eps()
    eps2 = eps * eps
    one = ring.one()
    lam, mu, nu = ring.var("lam"), ring.var("mu"), ring.var("nu")
    r = lambda k: (one - eps2) * k + (one - eps)
    rbar = lambda k: (one - eps) * k + (one - eps2)
    if roots == "same":
        return r(nu), r(mu), r(lam)
    if roots == "mixed":
        return r(nu), r(mu), rbar(lam)
    raise UnknownLabel(roots)


def root_equations(domain, roots: str):
    ring = ring_222(domain, coords=False)
    if roots == "same":
        return same_root_equations(ring)
    if roots == "mixed":
        return mixed_root_equations(ring)
    raise UnknownLabel(roots)


def _gradient_multipliers(ring, roots: str):
    """(d, qx, qy, qz) with d*Q_w = qw*Q modulo the root equations,
    d = 3(1 + lam*mu*nu)."""
    lam, mu, nu = ring.var("lam"), ring.var("mu"), ring.var("nu")
    r1, r2, r3 = _root_scalars(ring, roots)
    d = 3 * (1 + lam * mu * nu)
    qx = r1 + lam * nu * r2 - nu * r3
    qy = lam * mu * r1 - lam * r2 + r3
    qz = -mu * r1 + r2 + mu * nu * r3
    return d, qx, qy, qz


class Factor:
    """An allowed strip/saturation factor with fast divisibility paths.

    Three shapes get special handling: a single variable (exponent
    check), v - a with scalar a (Horner division), and anything linear
    in some variable over a prime field (random points of its zero set
    certify non-divisibility before an exact division is attempted).
    """

    def __init__(self, name: str, poly: Polynomial):
        self.name = name
        self.poly = poly
        self.kind = "general"
        self.var = None
        self.shift = None
        terms = poly.terms
        if len(terms) == 1:
            (m, c), = terms.items()
            if sum(m) == 1 and poly.ring.domain.is_one(c):
                self.kind = "var"
                self.var = poly.ring.names[m.index(1)]
        if self.kind == "general" and len(terms) == 2:
            items = sorted(terms.items(), key=lambda t: sum(t[0]), reverse=True)
            (m1, c1), (m0, c0) = items
            if sum(m1) == 1 and sum(m0) == 0 and poly.ring.domain.is_one(c1):
                self.kind = "linear"
                self.var = poly.ring.names[m1.index(1)]
                self.shift = poly.ring.domain.neg(c0)  # v - shift
        if self.kind == "general":
            for n in poly.ring.names:
                if poly.degree_in(n) == 1:
                    self.var = n
                    break

    def _zero_point(self, ring, rng):
        """A random point on the factor's zero set, or None."""
        dom = ring.domain
        if self.var is None:
            return None
        point = [dom.from_int(rng.randrange(1, dom.p)) for _ in ring.names]
        i = ring.index[self.var]
        sl = self.poly.as_univariate(self.var)
        lead = sl.get(1)
        const = sl.get(0)
        if lead is None:
            return None
        point[i] = dom.zero()
        a = lead.evaluate(point)
        if dom.is_zero(a):
            return None
        b = const.evaluate(point) if const is not None else dom.zero()
        point[i] = dom.neg(dom.div(b, a))
        return point

    def try_divide(self, f: Polynomial, rng=None):
        """Quotient f / factor, or None when not exactly divisible."""
        if self.kind == "var":
            return f.divide_by_variable(self.var)
        if self.kind == "linear":
            return f.divide_by_linear(self.var, self.shift)
        if rng is not None and isinstance(f.ring.domain, PrimeField) \
                and self.var is not None:
            for _ in range(3):
                pt = self._zero_point(f.ring, rng)
                if pt is not None and not f.ring.domain.is_zero(f.evaluate(pt)):
                    return None
        try:
            return f.divide_exact(f.ring.transfer(self.poly))
        except NotDivisible:
            return None


def _as_factors(allowed):
    facs = [a if isinstance(a, Factor) else Factor(a[0], a[1]) for a in allowed]
    order = {"var": 0, "linear": 1, "general": 2}
    facs.sort(key=lambda f: order[f.kind])
    return facs


def strip_allowed(f: Polynomial, allowed, rng=None) -> tuple:
    """Divide out every allowed factor as often as it exactly divides.

    Returns (reduced polynomial, removed factor names).  Safe on ideal
    generators whenever each factor is saturated away later.
    """
    import random
    factors = _as_factors(allowed)
    rng = rng or random.Random(1)
    removed = []
    if f.is_zero():
        return f, removed
    changed = True
    while changed:
        changed = False
        for fac in factors:
            q = fac.try_divide(f, rng)
            if q is not None:
                f = q
                removed.append(fac.name)
                changed = True
    return f, removed


def strip_all(f: Polynomial, allowed) -> Polynomial:
    return strip_allowed(f, allowed)[0]


class BSolver:
    """Cramer elimination of b1, b2, b3 from the three root equations.

    The root equations are linear in the b's; solving them expresses
    b_j = N_j / D with D the system determinant.  Any polynomial in the
    b's can then be pushed into the parameter ring (lam, mu, nu, c1, c2,
    c3) after clearing D-denominators.  Factors common to D and all
    three numerators are cancelled when they belong to the allowed list.
    """

    B_NAMES = ("b1", "b2", "b3")

    def __init__(self, ring: PolyRing, root_eqs, allowed=()):
        self.ring = ring
        beta = [[L.partial(bn) for bn in self.B_NAMES] for L in root_eqs]
        zero_b = {bn: ring.zero() for bn in self.B_NAMES}
        gamma = [L.subs(zero_b) for L in root_eqs]
        for i, L in enumerate(root_eqs):
            rebuilt = gamma[i]
            for j, bn in enumerate(self.B_NAMES):
                rebuilt = rebuilt + beta[i][j] * ring.var(bn)
            if rebuilt != L:
                raise DegenerateParams("root equations are not linear in b")
        self.det = _det3_polys(beta)
        if self.det.is_zero():
            raise DegenerateParams("b-coefficient system is singular")
        self.numerators = []
        for j in range(3):
            m = [[beta[i][k] if k != j else -gamma[i] for k in range(3)]
                 for i in range(3)]
            self.numerators.append(_det3_polys(m))
        self.cancelled = []
        factors = _as_factors(allowed)
        changed = True
        while changed:
            changed = False
            for fac in factors:
                cand = [fac.try_divide(p) for p in (self.det, *self.numerators)]
                if any(c is None for c in cand):
                    continue
                self.det, self.numerators = cand[0], cand[1:]
                self.cancelled.append(fac.name)
                changed = True

    def eliminate(self, g: Polynomial) -> Polynomial:
        """D^k * g with every b_j replaced by N_j / D, k the b-degree of g."""
        ring = self.ring
        bidx = [ring.index[bn] for bn in self.B_NAMES]
        groups: dict = {}
        for mono, c in g.terms.items():
            be = tuple(mono[i] for i in bidx)
            rest = list(mono)
            for i in bidx:
                rest[i] = 0
            groups.setdefault(be, {})[tuple(rest)] = c
        if not groups:
            return ring.zero()
        k = max(sum(be) for be in groups)
        out = ring.zero()
        for be, terms in groups.items():
            piece = Polynomial(ring, terms)
            for j, e in enumerate(be):
                for _ in range(e):
                    piece = piece * self.numerators[j]
            for _ in range(k - sum(be)):
                piece = piece * self.det
            out = out + piece
        return out

    def vanishes_on_solutions(self, g: Polynomial) -> bool:
        return self.eliminate(g).is_zero()

    def b_values(self, values: dict):
        """Numeric (b1, b2, b3) at a parameter point (lam..c3)."""
        dom = self.ring.domain
        point = [values.get(n, dom.zero()) for n in self.ring.names]
        d = self.det.evaluate(point)
        if dom.is_zero(d):
            raise DegenerateParams("b-system determinant vanishes at the point")
        dinv = dom.invert(d)
        return tuple(dom.mul(n.evaluate(point), dinv) for n in self.numerators)


def _det3_polys(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def clear_first_row_222(m: ConditionMatrix, roots: str,
                        bsolver: BSolver | None = None):
    """Clear the remaining first-row entries (columns fxx, fyy, fzz) by
    column operations valid modulo the chosen root equations; the
    scalings involve the determinant 1 + lam*mu*nu of the gradient
    system and are recorded for later saturation.

    With a BSolver the cleared entries are certified to vanish on the
    root-equation solutions.  Returns (matrix, introduced factors)."""
    ring = m.ring
    d, qx, qy, qz = _gradient_multipliers(ring, roots)
    two = ring.from_int(2)
    one = ring.one()
    d2 = d * d
    factors = [d]
    for col in ("fx", "fy", "fz"):
        m.col_combine(col, two, {"f": -one})
        if not m.entry(0, col).is_zero():
            raise ArithmeticError(f"first-row entry of {col} did not clear")
    for col, qw in (("fxx", qx), ("fyy", qy), ("fzz", qz)):
        tau = 6 * qw ** 2 - 6 * qw * d + 2 * d2
        m.col_combine(col, two * d2, {"f": tau})
        if bsolver is not None:
            if not bsolver.vanishes_on_solutions(m.entry(0, col)):
                raise ArithmeticError(
                    f"first-row entry of {col} does not vanish on the root locus")
            m.log.append(AuditEntry("check", col,
                                    {"claim": "first-row entry vanishes on "
                                              "the root-equation solutions"}))
    return m, factors


# ---------------------------------------------------------------------------
# the (2,2,2) pipeline

PARAMS_222_SMALL = ("lam", "mu", "nu", "c1", "c2", "c3")


def _allowed_factors_222(ring):
    """Factors that may be stripped because they are saturated away."""
    lam, mu, nu = ring.var("lam"), ring.var("mu"), ring.var("nu")
    one = ring.one()
    out = [("c1", ring.var("c1")), ("c2", ring.var("c2")), ("c3", ring.var("c3")),
           ("lam", lam), ("mu", mu), ("nu", nu),
           ("lam-1", lam - one), ("mu-1", mu - one), ("nu-1", nu - one),
           ("lam*mu*nu+1", lam * mu * nu + one)]
    return out


def two_by_six_222(domain, roots: str):
    """The b-eliminated 2 x 6 matrix whose rank-one locus (together with
    the root equations) carries the tenth triple point condition.

    Returns (rows, column labels, context dict).  Row and column
    scalings performed on the way are recorded in the context and must
    be saturated away downstream.  On the first row the fx, fy, fz
    entries satisfy d*entry = q~ * sigma with tiny sigma polynomials
    (d = 3(1+lam*mu*nu), q~ the b-eliminated quadric value); the context
    carries the sigmas, which downstream minors use in place of the
    entries to keep degrees low.
    """
    matrix = condition_matrix_222(domain)
    ring = matrix.ring
    at = atoms_222(ring)
    reduced = reduce_matrix_222(matrix, at)
    eqs = root_equations(domain, roots)
    allowed = _as_factors(_allowed_factors_222(ring))
    bs = BSolver(ring, eqs, allowed=allowed)
    cleared, factors = clear_first_row_222(reduced, roots, bsolver=bs)
    cols = ["fx", "fy", "fz", "fxx", "fyy", "fzz"]
    rows = [[bs.eliminate(cleared.entry(i, c)) for c in cols] for i in (1, 2)]
    # structural identity: d * row1[a] = q~ * sigma_a on the first three columns
    d, qx, qy, qz = _gradient_multipliers(ring, roots)
    q_tilde = bs.eliminate(at["Q"])
    sigma = [2 * qw - d for qw in (qx, qy, qz)]
    for j in range(3):
        if d * rows[0][j] != q_tilde * sigma[j]:
            raise ArithmeticError("first-row proportionality identity failed")
    ctx = {
        "matrix": cleared,
        "bsolver": bs,
        "atoms": at,
        "root_equations": eqs,
        "allowed": allowed,
        "scalings": factors,
        "ring": ring,
        "sigma": sigma,
        "q_tilde": q_tilde,
        "d": d,
    }
    return rows, cols, ctx


def minor_system_222(domain, roots: str):
    """The fifteen rank-one conditions of the 2 x 6 matrix, with the
    shared q~ factor of the first three top-row entries stripped and
    every generator reduced by the allowed factors.

    Returns (generators, context).
    """
    rows, cols, ctx = two_by_six_222(domain, roots)
    sigma = ctx["sigma"]
    q_tilde = ctx["q_tilde"]
    d = ctx["d"]
    allowed = ctx["allowed"]
    top, bot = rows
    gens = []
    strips = []
    # columns 0..2 pairwise: d^2*minor = q~^2/d.. use sigma form directly
    for j in range(3):
        for k in range(j + 1, 3):
            g = sigma[j] * bot[k] - sigma[k] * bot[j]
            gens.append((f"{cols[j]}|{cols[k]}", g))
    # mixed: d*minor = q~*sigma_j*bot_k - d*top_k*bot_j
    for j in range(3):
        for k in range(3, 6):
            g = q_tilde * sigma[j] * bot[k] - d * top[k] * bot[j]
            gens.append((f"{cols[j]}|{cols[k]}", g))
    # columns 3..5 pairwise: plain minors
    for j in range(3, 6):
        for k in range(j + 1, 6):
            g = top[j] * bot[k] - top[k] * bot[j]
            gens.append((f"{cols[j]}|{cols[k]}", g))
    out = []
    for label, g in gens:
        gs, removed = strip_allowed(g, allowed)
        out.append(gs)
        strips.append((label, removed))
    ctx["generator_strips"] = strips
    return out, ctx


UNWANTED_LOCI_222 = ("Q", "lam*mu*nu+1", "lam-1", "mu-1", "nu-1",
                     "c1", "c2", "c3")


def saturation_list_222(ctx):
    """(name, polynomial) pairs in saturation order: the configured
    unwanted loci, then the factors the pipeline itself multiplied in."""
    ring = ctx["ring"]
    lam, mu, nu = ring.var("lam"), ring.var("mu"), ring.var("nu")
    one = ring.one()
    q_tilde = strip_all(ctx["q_tilde"], ctx["allowed"])
    det = strip_all(ctx["bsolver"].det, ctx["allowed"])
    out = [
        ("c1", ring.var("c1")), ("c2", ring.var("c2")), ("c3", ring.var("c3")),
        ("lam-1", lam - one), ("mu-1", mu - one), ("nu-1", nu - one),
        ("lam*mu*nu+1", lam * mu * nu + one),
        ("Q", q_tilde),
        ("lam", lam), ("mu", mu), ("nu", nu),   # column scalings
        ("b-determinant", det),                 # Cramer denominator
    ]
    return out


def _small_ring(ring):
    return PolyRing(ring.domain, PARAMS_222_SMALL)


def ten_point_ideal_222(domain, roots: str, transcript: dict | None = None):
    """The saturated tenth-triple-point condition ideal of the (2,2,2)
    web in (lam, mu, nu, c1, c2, c3), for the chosen cube roots."""
    t0 = time.time()
    gens, ctx = minor_system_222(domain, roots)
    ring6 = _small_ring(ctx["ring"])
    gens6 = [ring6.transfer(g) for g in gens if not g.is_zero()]
    ideal = Ideal(ring6, gens6)
    for name, f in saturation_list_222(ctx):
        f6 = ring6.transfer(f)
        if f6.is_constant():
            continue
        ideal = ideal.saturate(f6)
        if transcript is not None:
            transcript.setdefault("saturations", []).append(
                {"locus": name, "basis_after": len(ideal.groebner())})
    if transcript is not None:
        transcript["roots"] = roots
        transcript["generator_strips"] = [
            {"minor": lbl, "removed": rem} for lbl, rem in ctx["generator_strips"]]
        transcript["seconds"] = round(time.time() - t0, 3)
        transcript["final_basis"] = [poly_to_str(g) for g in ideal.groebner()]
        transcript["audit_log"] = [a.to_json() for a in ctx["matrix"].log]
    ideal.context = ctx
    return ideal


# ---------------------------------------------------------------------------
# type (4,4,4): pencil matrices and pipelines

def condition_matrix_444(domain, at_infinity: bool = True) -> ConditionMatrix:
    """The 2 x 10 matrix of the pencil (K1*K2*K3, Q^3).

    With at_infinity the ten functionals are the second partials of the
    homogeneous sextics at (1:1:1:0); otherwise they are the value and
    the first and second derivatives at the affine point (1,1,1).
    """
    ring = ring_444(domain)
    params = {n: ring.var(n) for n in PARAMS_444}
    K1, K2, K3 = type444_cones(ring, **params)
    Q = type444_quadric(ring, **params)
    G1 = K1 * K2 * K3
    G2 = Q ** 3
    pring = ring_444(domain, coords=False)
    if at_infinity:
        rows = [_project_params(ring, pring, _infinity_row(g, ring))
                for g in (G1, G2)]
        cols = list(INFINITY_FUNCTIONALS)
    else:
        one = ring.one()
        rows = [_project_params(ring, pring, _affine_row(g.subs({"t": one}), ring))
                for g in (G1, G2)]
        cols = list(AFFINE_FUNCTIONALS)
    return ConditionMatrix(pring, rows, ["K1*K2*K3", "Q^3"], cols)


def loci_444(ring, at_infinity: bool = True):
    """(name, value-at-candidate-point) of the quadric and the three
    cones; solutions on any of these loci are spurious."""
    a, b, c, d, e, f = (ring.var(n) for n in "abcdef")
    u, v, w = (ring.var(n) for n in "uvw")
    if at_infinity:
        return [
            ("Q", a + b + c + d + e + f),
            ("K1", w - (a + b + u)),
            ("K2", u - (c + d + v)),
            ("K3", v - (e + f + w)),
        ]
    K1 = w + a * u + b * w - (a + b + u)
    K2 = u + c * v + d * u - (c + d + v)
    K3 = v + e * w + f * v - (e + f + w)
    Q = (a - 1) * (c - 1) * (e - 1) + (b + 1) * (d + 1) * (f + 1)
    return [("Q", Q), ("K1", K1), ("K2", K2), ("K3", K3)]


def component_factors_444(ring):
    """The two conjugate linear forms whose product is the elimination
    quadric (b+d+f)^2 + (b+d+f)(u+v+w) + (u+v+w)^2."""
    eps = ring.eps()
    eps2 = eps * eps
    B = ring.var("b") + ring.var("d") + ring.var("f")
    S = ring.var("u") + ring.var("v") + ring.var("w")
    return B - eps * S, B - eps2 * S


def minor_system_444(domain, at_infinity: bool = True):
    """The 45 pencil minors with the Q-row divided by the quadric value
    (each entry of the Q^3 row is a multiple of it) and every minor
    reduced by the allowed factors."""
    matrix = condition_matrix_444(domain, at_infinity)
    ring = matrix.ring
    loci = loci_444(ring, at_infinity)
    qval = loci[0][1]
    matrix.divide_row(1, qval, reason="candidate point off the quadric")
    allowed = _as_factors(loci)
    gens = []
    strips = []
    for g, cols in zip(maximal_minors(matrix),
                       __import__("itertools").combinations(matrix.col_labels, 2)):
        gs, removed = strip_allowed(g, allowed)
        gens.append(gs)
        strips.append(("|".join(cols), removed))
    return gens, {"matrix": matrix, "loci": loci, "allowed": allowed,
                  "generator_strips": strips, "ring": ring}


SUM_NAMES = ("A", "C", "E")  # A = a+b, C = c+d, E = e+f


def _sums_ring(domain):
    return PolyRing(domain, SUM_NAMES + ("u", "v", "w"))


def sum_column_ideal_444(domain, transcript: dict | None = None) -> Ideal:
    """Stage one of the infinity pipeline: the six t-free columns only
    involve the sums a+b, c+d, e+f and u, v, w, so their fifteen minors
    are analysed first in the small sum-variable ring and the spurious
    loci are cut there."""
    from itertools import combinations

    matrix = condition_matrix_444(domain, at_infinity=True)
    ring = matrix.ring
    sums = _sums_ring(domain)
    big = ring.extend(SUM_NAMES)
    sub = {"b": big.var("A") - big.var("a"),
           "d": big.var("C") - big.var("c"),
           "f": big.var("E") - big.var("e")}

    def to_sums(g):
        return sums.transfer(big.transfer(g).subs(sub))

    tfree = ["xx", "yy", "zz", "xy", "xz", "yz"]
    q6 = sums.var("A") + sums.var("C") + sums.var("E")
    loci6 = [("Q", q6),
             ("K1", sums.var("w") - sums.var("A") - sums.var("u")),
             ("K2", sums.var("u") - sums.var("C") - sums.var("v")),
             ("K3", sums.var("v") - sums.var("E") - sums.var("w"))]
    fac6 = _as_factors(loci6)
    rows = [[to_sums(matrix.entry(i, c)) for c in tfree] for i in (0, 1)]
    rows[1] = [e.divide_exact(q6) for e in rows[1]]
    gens = []
    for j, k in combinations(range(6), 2):
        m = rows[0][j] * rows[1][k] - rows[0][k] * rows[1][j]
        gens.append(strip_all(m, fac6))
    ideal = Ideal(sums, [g for g in gens if not g.is_zero()])
    for name, f in loci6:
        ideal = ideal.saturate(f)
        if transcript is not None:
            transcript.setdefault("sum_stage_saturations", []).append(
                {"locus": name, "basis_after": len(ideal.groebner())})
    return ideal


def _pull_back_sums(ideal6: Ideal, ring: PolyRing):
    big = ring.extend(SUM_NAMES)
    back = {"A": big.var("a") + big.var("b"),
            "C": big.var("c") + big.var("d"),
            "E": big.var("e") + big.var("f")}
    out = []
    for g in ideal6.groebner():
        gg = big.transfer(g).subs(back)
        out.append(ring.transfer(gg))
    return out


def ten_point_ideal_444(domain, component: str | None = None,
                        transcript: dict | None = None):
    """The saturated condition ideal of the (4,4,4) pencil with the
    tenth point at (1:1:1:0); component 'eps' or 'eps2' additionally
    selects one of the two conjugate components.

    Stage one handles the six t-free columns in the sum variables; the
    result seeds the full nine-variable system together with the thirty
    minors that involve the t-columns.
    """
    from itertools import combinations

    t0 = time.time()
    stage1 = sum_column_ideal_444(domain, transcript)
    matrix = condition_matrix_444(domain, at_infinity=True)
    ring = matrix.ring
    loci = loci_444(ring, at_infinity=True)
    allowed = _as_factors(loci)
    matrix.divide_row(1, loci[0][1], reason="candidate point off the quadric")
    extra = []
    strips = []
    for j, k in combinations(range(10), 2):
        if j < 6 and k < 6:
            continue  # t-free pairs were handled in the sum stage
        cols = (matrix.col_labels[j], matrix.col_labels[k])
        m = (matrix.entries[0][j] * matrix.entries[1][k]
             - matrix.entries[0][k] * matrix.entries[1][j])
        ms, removed = strip_allowed(m, allowed)
        extra.append(ms)
        strips.append(("|".join(cols), removed))
    gens = _pull_back_sums(stage1, ring) + [g for g in extra if not g.is_zero()]
    ideal = Ideal(ring, gens)
    for name, f in loci:
        ideal = ideal.saturate(f)
        if transcript is not None:
            transcript.setdefault("saturations", []).append(
                {"locus": name, "basis_after": len(ideal.groebner())})
    if component is not None:
        f_eps, f_eps2 = component_factors_444(ring)
        if component == "eps":
            keep, cut = f_eps, f_eps2
        elif component == "eps2":
            keep, cut = f_eps2, f_eps
        else:
            raise UnknownLabel(component)
        ideal = Ideal(ring, ideal.groebner() + [keep])
        ideal = ideal.saturate(cut)
        if transcript is not None:
            transcript["component"] = component
    if transcript is not None:
        transcript["generator_strips"] = [
            {"minor": lbl, "removed": rem} for lbl, rem in strips]
        transcript["seconds"] = round(time.time() - t0, 3)
        transcript["final_basis"] = [poly_to_str(g) for g in ideal.groebner()]
        transcript["audit_log"] = [a.to_json() for a in matrix.log]
    ctx = {"matrix": matrix, "loci": loci, "allowed": allowed,
           "generator_strips": strips, "ring": ring}
    ideal.context = ctx
    return ideal


def affine_negative_444(domain, transcript: dict | None = None) -> bool:
    """No tenth triple point at affine (1,1,1): every solution of the
    minor system lies on the quadric or one of the cones.

    Equivalent to the product of the four locus values lying in the
    radical of the minor ideal, which the added-variable construction
    certifies without computing the intermediate (huge) bases; True
    means the saturated ideal is the unit ideal.
    """
    t0 = time.time()
    gens, ctx = minor_system_444(domain, at_infinity=False)
    ring = ctx["ring"]
    ideal = Ideal(ring, [g for g in gens if not g.is_zero()])
    product = ring.one()
    for _, f in ctx["loci"]:
        product = product * f
    verdict = ideal.radical_contains(product)
    if transcript is not None:
        transcript["unit_after_saturation"] = verdict
        transcript["seconds"] = round(time.time() - t0, 3)
    return verdict


# ---------------------------------------------------------------------------
# reconstruction of pencil/web coefficients at a solution

def web_coefficients(matrix_values, domain):
    """The kernel vector of a numeric condition matrix (rank k-1);
    deterministic via the reduced row echelon form."""
    ns = linalg.nullspace(matrix_values, domain)
    if len(ns) != 1:
        raise DegenerateParams(
            f"condition matrix has nullity {len(ns)}, expected 1")
    return tuple(ns[0])


def verify_solution_dimension(ideal: Ideal, expected_dim: int) -> bool:
    return ideal.dimension() == expected_dim
