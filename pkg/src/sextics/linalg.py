"""Small exact linear algebra over a scalar domain (Gaussian elimination)."""

from __future__ import annotations

from .scalar import ScalarDomain


def rref(rows, domain: ScalarDomain):
    """Reduced row echelon form; returns (rref_rows, pivot_columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if not domain.is_zero(m[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = domain.invert(m[r][c])
        m[r] = [domain.mul(v, inv) for v in m[r]]
        for i in range(len(m)):
            if i != r and not domain.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [domain.sub(a, domain.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, domain: ScalarDomain) -> int:
    return len(rref(rows, domain)[0])


def nullspace(rows, domain: ScalarDomain):
    """Deterministic basis of the right kernel of the matrix."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows, domain)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [domain.zero()] * ncols
        vec[fc] = domain.one()
        for r, pc in enumerate(pivots):
            vec[pc] = domain.neg(red[r][fc])
        basis.append(vec)
    return basis


def solve(rows, rhs, domain: ScalarDomain):
    """One solution of A x = b, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, domain)
    ncols = len(rows[0])
    if ncols in pivots:
        return None
    x = [domain.zero()] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


def det(rows, domain: ScalarDomain):
    """Determinant by fraction-free-ish elimination (field domain)."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = False
    acc = domain.one()
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if not domain.is_zero(m[i][c]):
                pivot = i
                break
        if pivot is None:
            return domain.zero()
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = not sign
        acc = domain.mul(acc, m[c][c])
        inv = domain.invert(m[c][c])
        for i in range(c + 1, n):
            if not domain.is_zero(m[i][c]):
                f = domain.mul(m[i][c], inv)
                m[i] = [domain.sub(a, domain.mul(f, b)) for a, b in zip(m[i], m[c])]
    return domain.neg(acc) if sign else acc
