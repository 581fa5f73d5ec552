"""Exact linear solving over Q(t) for systems that are linear in the unknowns.

Equations arrive as MPoly objects (each understood as lhs = 0).  Coefficients
are collected into a matrix of t-polynomials and eliminated fraction-free
(Bareiss), so no rational-function arithmetic happens until back-substitution.
"""

from fractions import Fraction

from ..errors import SingularSystem
from .polynomials import RatFun, UniPoly


def _collect(eq, unknowns, t_name):
    """Split one equation into ({unknown: UniPoly}, constant UniPoly)."""
    pos = {v: i for i, v in enumerate(eq.vars)}
    if t_name not in pos:
        # no t in this equation's registry; treat every term as t-degree 0
        t_idx = None
    else:
        t_idx = pos[t_name]
    unk_idx = {v: pos[v] for v in unknowns if v in pos}
    coeffs = {v: {} for v in unknowns}
    const = {}
    for exp, c in eq.terms.items():
        tdeg = exp[t_idx] if t_idx is not None else 0
        hit = None
        for v, i in unk_idx.items():
            if exp[i] == 0:
                continue
            if exp[i] > 1 or hit is not None:
                raise SingularSystem(f"equation not linear in unknowns: {eq}")
            hit = v
        for i, e in enumerate(exp):
            if e and i != t_idx and (hit is None or i != unk_idx[hit]):
                raise SingularSystem(f"unexpected variable {eq.vars[i]} in linear system")
        target = coeffs[hit] if hit is not None else const
        target[tdeg] = target.get(tdeg, Fraction(0)) + c

    def build(d):
        if not d:
            return UniPoly()
        n = max(d)
        return UniPoly([d.get(i, Fraction(0)) for i in range(n + 1)])

    return {v: build(coeffs[v]) for v in unknowns}, build(const)


def nullspace_vector(rows, ncols):
    """First canonical nullspace vector of the exact matrix, or None.

    Gaussian elimination over Q; the vector sets the first free column to 1
    and all later free columns to 0, so the result is deterministic.
    """
    mat = [list(r) for r in rows]
    pivots = {}  # column -> row
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots[c] = r
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    f0 = free[0]
    vec = [Fraction(0)] * ncols
    vec[f0] = Fraction(1)
    for c, pr in pivots.items():
        vec[c] = -mat[pr][f0]
    return vec


def linear_solve(equations, unknowns, t_name="t"):
    """Solve a square system linear in `unknowns` over Q(t).

    Returns {unknown: RatFun}.  Raises SingularSystem if the system is not
    square, not linear, or has a singular coefficient matrix.
    """
    n = len(unknowns)
    if len(equations) != n:
        raise SingularSystem(f"{len(equations)} equations for {n} unknowns")
    rows = []
    for eq in equations:
        cmap, const = _collect(eq, unknowns, t_name)
        # lhs = 0 means sum coeff*u + const = 0, i.e. sum coeff*u = -const
        rows.append([cmap[v] for v in unknowns] + [-const])

    # fraction-free forward elimination
    prev = UniPoly.const(1)
    for k in range(n):
        if rows[k][k].is_zero():
            for r in range(k + 1, n):
                if not rows[r][k].is_zero():
                    rows[k], rows[r] = rows[r], rows[k]
                    break
            else:
                raise SingularSystem("singular coefficient matrix")
        pk = rows[k][k]
        for r in range(k + 1, n):
            head = rows[r][k]
            for c in range(k, n + 1):
                rows[r][c] = (pk * rows[r][c] - head * rows[k][c]).exact_div(prev)
        prev = pk

    sol = [None] * n
    for i in range(n - 1, -1, -1):
        acc = RatFun.from_poly(rows[i][n])
        for j in range(i + 1, n):
            acc = acc - RatFun.from_poly(rows[i][j]) * sol[j]
        sol[i] = acc / RatFun.from_poly(rows[i][i])
    return dict(zip(unknowns, sol))
