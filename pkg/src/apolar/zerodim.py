"""Zero-dimensional projective systems and univariate root isolation.

``solve_projective`` takes ``k`` forms in ``k+1`` variables cutting out a
finite scheme of length ``prod deg``.  In a degree ``D`` past the regularity
the quotient by the forms has dimension equal to that length, and
multiplication by linear forms gives ``length x length`` matrices whose
eigenvalues are coordinate ratios at the points (the eigenvalue method).  The
characteristic polynomial of a generic multiplication matrix is the
univariate eliminant; over Q it is exact, so multiplicities come from its
square-free decomposition, otherwise from clustering at ``2^-(bits/2)``.

Univariate polynomials are coefficient lists in ascending degree order.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import sympy

from . import linalg
from .errors import DegenerateInputError, PrecisionExhausted
from .fields import CC, ComplexField, QQ, convert
from .poly import MultiPoly, monomial_index, monomials, num_monomials


# exact univariate arithmetic over Q (gmpy2 rationals internally)

def _q(c):
    if isinstance(c, Fraction):
        return gmpy2.mpq(c.numerator, c.denominator)
    return gmpy2.mpq(c)


def _frac(c):
    return Fraction(int(c.numerator), int(c.denominator))


def utrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def uderiv(p):
    return [p[i] * i for i in range(1, len(p))]


def squarefree_decomposition(p):
    """``[(factor, multiplicity), ...]`` with monic factors in ascending coefficients.

    Delegates to sympy, whose heuristic integer gcd avoids the coefficient
    growth of a Euclidean remainder sequence over Q.
    """
    p = utrim([_frac(_q(c)) for c in p])
    if len(p) <= 1:
        return []
    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p)], t,
                      domain="QQ")
    out = []
    for factor, mult in poly.sqf_list()[1]:
        if factor.degree() < 1:
            continue
        factor = factor.monic()
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(factor.all_coeffs())]
        out.append((coeffs, mult))
    out.sort(key=lambda fm: fm[1])
    return out


def interpolate(xs, ys):
    """Exact Newton interpolation; returns ascending coefficients."""
    xs = [_q(x) for x in xs]
    coef = [_q(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [coef[-1]]
    for i in range(n - 2, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [gmpy2.mpq(0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            new[k + 1] += c
            new[k] -= c * xs[i]
        new[0] += coef[i]
        poly = new
    return [_frac(c) for c in utrim(poly)] or [Fraction(0)]


def ueval(p, x):
    acc = 0 * x
    for c in reversed(p):
        acc = acc * x + c
    return acc


def charpoly_exact(mat):
    """Characteristic polynomial ``det(t I - M)`` of a rational matrix, monic."""
    n = len(mat)
    xs = list(range(n + 1))
    ys = []
    for t in xs:
        a = [[(QQ(t) if i == j else QQ.zero) - QQ(mat[i][j]) for j in range(n)] for i in range(n)]
        ys.append(linalg.determinant(a, QQ))
    return interpolate(xs, ys)


def resultant(p, q, field):
    """Sylvester resultant of two univariate polynomials (ascending lists)."""
    p, q = utrim(p), utrim(q)
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    if size == 0:
        return field.one
    rows = []
    for i in range(n):
        rows.append([field.zero] * i + [field(c) for c in reversed(p)] + [field.zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([field.zero] * i + [field(c) for c in reversed(q)] + [field.zero] * (size - n - 1 - i))
    return linalg.determinant(rows, field)


# numeric root isolation

def _companion(ctx, p):
    n = len(p) - 1
    lc = ctx.mpc(p[-1])
    mat = ctx.zeros(n, n)
    for i in range(1, n):
        mat[i, i - 1] = 1
    for i in range(n):
        mat[i, n - 1] = -ctx.mpc(p[i]) / lc
    return mat


def newton_polish(p, x, ctx, steps=200):
    dp = uderiv(p)
    tol = ctx.mpf(2) ** (-ctx.prec + 4)
    for _ in range(steps):
        fx, dfx = ueval(p, x), ueval(dp, x)
        if dfx == 0:
            break
        step = fx / dfx
        x = x - step
        if abs(step) <= tol * max(1, abs(x)):
            break
    return x


def polynomial_roots(p, bits):
    """All complex roots of a square-free polynomial (ascending coefficients).

    Companion matrix eigenvalues at ``2*bits`` followed by Newton polishing.
    """
    p = utrim(p)
    deg = len(p) - 1
    if deg < 1:
        return []
    field = CC(2 * bits)
    ctx = field.ctx
    coeffs = [ctx.mpc(c) if not isinstance(c, Fraction) else field(c) for c in p]
    if deg == 1:
        return [-coeffs[0] / coeffs[1]]
    try:
        eig = ctx.eig(_companion(ctx, coeffs), left=False, right=False)
    except Exception:  # pragma: no cover - mpmath convergence failure
        eig = ctx.polyroots(list(reversed(coeffs)), maxsteps=500, extraprec=2 * bits)
    roots = [newton_polish(coeffs, ctx.mpc(r), ctx) for r in eig]
    sep = _min_separation(roots)
    if deg > 1 and sep <= ctx.mpf(2) ** (-(bits // 2)) * max(1, max(abs(r) for r in roots)):
        raise PrecisionExhausted("roots of a square-free factor could not be separated")
    return roots


def _min_separation(pts):
    best = None
    for i in range(len(pts)):
        for j in range(i):
            d = abs(pts[i] - pts[j])
            best = d if best is None or d < best else best
    return best if best is not None else 1


def cluster(values, tol):
    """Group complex numbers closer than ``tol`` (relative to magnitude)."""
    groups = []
    for v in values:
        for g in groups:
            if abs(g[0] - v) <= tol * max(1, abs(v)):
                g.append(v)
                break
        else:
            groups.append([v])
    return groups


# eigenvalue method

@dataclass
class ProjectiveSolution:
    coords: list          # projective coordinates, normalized so h0 = 1
    multiplicity: int
    residual: object


def _full_pivot_reduce(rows, ncols, ctx, tol):
    """Gauss-Jordan with complete pivoting; returns reduced rows and pivot columns."""
    rows = [[ctx.mpc(x) for x in r] for r in rows]
    for k, row in enumerate(rows):
        big = max((abs(x) for x in row), default=0)
        if big:
            rows[k] = [x / big for x in row]
    pivots = []
    used_cols = set()
    r = 0
    nrows = len(rows)
    while r < nrows:
        best, bi, bj = 0, None, None
        for i in range(r, nrows):
            row = rows[i]
            for j in range(ncols):
                if j in used_cols:
                    continue
                a = abs(row[j])
                if a > best:
                    best, bi, bj = a, i, j
        if bi is None or best <= tol:
            break
        rows[r], rows[bi] = rows[bi], rows[r]
        prow = rows[r]
        s = 1 / prow[bj]
        rows[r] = prow = [x * s for x in prow]
        for i in range(nrows):
            if i != r and rows[i][bj] != 0:
                a = rows[i][bj]
                rows[i] = [x - a * y for x, y in zip(rows[i], prow)]
        pivots.append(bj)
        used_cols.add(bj)
        r += 1
    return rows[:r], pivots


class QuotientRing:
    """Graded pieces ``S_{D-1}/J`` and ``S_D/J`` with normal form maps."""

    def __init__(self, forms, field, work_field=None):
        self.forms = forms
        self.field = field
        self.nvars = forms[0].nvars
        self.length = 1
        for g in forms:
            self.length *= g.degree
        sigma = sum(g.degree - 1 for g in forms)
        self.top = sigma + 1
        self.work = work_field
        self.pieces = {}
        for D in (sigma, sigma + 1):
            self.pieces[D] = self._reduce(D)
            if len(self.pieces[D][2]) != self.length:
                raise DegenerateInputError(
                    f"degenerate slice: quotient has dimension {len(self.pieces[D][2])} "
                    f"in degree {D}, expected {self.length}")

    def _reduce(self, D):
        n = self.nvars
        cols = num_monomials(n, D)
        rows = []
        for g in self.forms:
            if g.degree <= D:
                for m in monomials(n, D - g.degree):
                    rows.append((g * MultiPoly.monomial(self.field, m)).to_vector())
        if self.field.exact:
            red, piv = linalg.rref(rows, self.field, cols) if rows else ([], [])
        else:
            ctx = self.field.ctx
            red, piv = _full_pivot_reduce(rows, cols, ctx, self.field.eps) if rows else ([], [])
        normal = [j for j in range(cols) if j not in set(piv)]
        return red, piv, normal

    def normal_form(self, vec, D):
        red, piv, normal = self.pieces[D]
        v = list(vec)
        for row, pc in zip(red, piv):
            a = v[pc]
            if a != 0:
                v = [x - a * y for x, y in zip(v, row)]
        return [v[j] for j in normal]

    def multiplication(self, lin):
        """Matrix of multiplication by a linear form, ``A_{D-1} -> A_D``."""
        D = self.top
        n = self.nvars
        mons = monomials(n, D - 1)
        idx = monomial_index(n, D)
        normal_prev = self.pieces[D - 1][2]
        cols = []
        for j in normal_prev:
            m = mons[j]
            vec = [self.field.zero] * len(idx)
            for e, c in lin.items():
                vec[idx[tuple(a + b for a, b in zip(m, e))]] += c
            cols.append(self.normal_form(vec, D))
        return [list(r) for r in zip(*cols)]


def _transpose(a):
    return [list(r) for r in zip(*a)]


def _ratio_matrix(Mv, Mh, field):
    """``(Mv Mh^-1)^T``, computed by solving ``Mh^T X = Mv^T``."""
    MhT = _transpose(Mh)
    MvT = _transpose(Mv)
    n = len(Mh)
    cols = []
    for j in range(n):
        rhs = [MvT[i][j] for i in range(n)]
        cols.append(linalg.solve_linear(MhT, rhs, field, n))
    return _transpose(cols)


def _null_vector(A, mu, ctx):
    """A vector spanning the (numerical) kernel of ``A - mu I``."""
    n = len(A)
    B = [[ctx.mpc(A[i][j]) - (mu if i == j else 0) for j in range(n)] for i in range(n)]
    # complete pivoting LU, dropping the last (smallest) pivot
    rows = [list(r) for r in B]
    perm_c = list(range(n))
    for k in range(n - 1):
        best, bi, bj = -1, k, k
        for i in range(k, n):
            for j in range(k, n):
                a = abs(rows[i][perm_c[j]])
                if a > best:
                    best, bi, bj = a, i, j
        rows[k], rows[bi] = rows[bi], rows[k]
        perm_c[k], perm_c[bj] = perm_c[bj], perm_c[k]
        p = rows[k][perm_c[k]]
        if p == 0:
            continue
        for i in range(k + 1, n):
            f = rows[i][perm_c[k]] / p
            if f != 0:
                for j in range(k, n):
                    rows[i][perm_c[j]] -= f * rows[k][perm_c[j]]
    x = [ctx.mpc(0)] * n
    x[perm_c[n - 1]] = ctx.mpc(1)
    for k in range(n - 2, -1, -1):
        s = sum((rows[k][perm_c[j]] * x[perm_c[j]] for j in range(k + 1, n)), ctx.mpc(0))
        x[perm_c[k]] = -s / rows[k][perm_c[k]]
    return x


def _matvec(A, v):
    return [sum((a * b for a, b in zip(r, v)), 0 * v[0]) for r in A]


def relative_residual(form, x):
    vals = abs(form.evaluate(x))
    scale = max((abs(c) for _, c in form.items()), default=1)
    size = max(abs(c) for c in x) ** form.degree
    return vals / (scale * size if scale * size else 1)


def solve_projective(forms, bits=256, rng=None, tries=4):
    """All points of a zero-dimensional complete intersection, with multiplicity.

    ``forms`` are ``k`` forms in ``k+1`` variables over Q or a complex field.
    Returns :class:`ProjectiveSolution` objects whose multiplicities sum to
    the Bezout number; coordinates live in ``CC(2*bits)``.
    """
    rng = rng or random.Random(0)
    field = forms[0].field
    n = forms[0].nvars
    if len(forms) != n - 1:
        raise ValueError("need k forms in k+1 variables")
    work = CC(2 * bits)
    ctx = work.ctx
    tol = ctx.mpf(2) ** (-(bits // 2))
    ring = QuotientRing(forms, field)
    bezout = ring.length
    last_err = None
    for _ in range(tries):
        h0 = MultiPoly.linear(field, [field(rng.randint(-9, 9)) for _ in range(n)])
        ell = MultiPoly.linear(field, [field(rng.randint(-9, 9)) for _ in range(n)])
        Mh = ring.multiplication(h0)
        try:
            Aell = _ratio_matrix(ring.multiplication(ell), Mh, field)
            Acoord = [_ratio_matrix(ring.multiplication(
                MultiPoly.monomial(field, tuple(1 if k == i else 0 for k in range(n)))), Mh, field)
                for i in range(n)]
        except Exception as exc:
            last_err = exc
            continue
        if field.exact:
            chi = charpoly_exact(Aell)
            centers = []
            for factor, mult in squarefree_decomposition(chi):
                for r in polynomial_roots(factor, bits):
                    centers.append((r, mult))
        else:
            eig = ctx.eig(ctx.matrix([[ctx.mpc(a) for a in r] for r in Aell]), left=False, right=False)
            centers = [(sum(g, ctx.mpc(0)) / len(g), len(g)) for g in cluster(list(eig), tol)]
        if sum(m for _, m in centers) != bezout:
            last_err = DegenerateInputError("eigenvalue count does not match the Bezout number")
            continue
        sols = []
        ok = True
        wA = [[[convert(a, field, work) for a in r] for r in A] for A in Acoord]
        wAell = [[convert(a, field, work) for a in r] for r in Aell]
        h0w = h0.change_field(work)
        wforms_c = [f.change_field(work) for f in forms]
        for mu, mult in centers:
            w = _null_vector(wAell, ctx.mpc(mu), ctx)
            jmax = max(range(len(w)), key=lambda j: abs(w[j]))
            coords = [_matvec(A, w)[jmax] / w[jmax] for A in wA]
            if mult == 1:
                coords = _polish(wforms_c, h0w, coords, ctx)
            res = max(relative_residual(f, coords) for f in wforms_c)
            if res > tol:
                ok = False
                break
            sols.append(ProjectiveSolution(coords, mult, res))
        if not ok:
            last_err = PrecisionExhausted("a candidate point failed validation")
            continue
        if not _distinct(sols, tol):
            last_err = DegenerateInputError("separating form failed to separate points")
            continue
        return sols
    raise last_err or DegenerateInputError("zero-dimensional solve failed")


def _polish(forms, h0, coords, ctx):
    """Newton on ``forms = 0, h0 = 1`` (square in the affine chart of h0)."""
    field = forms[0].field
    n = len(coords)

    def F(x):
        return [f.evaluate(x) for f in forms] + [h0.evaluate(x) - 1]

    grads = [f.gradient() for f in forms] + [h0.gradient()]
    x = list(coords)
    tol = ctx.mpf(2) ** (-ctx.prec + 8)
    for _ in range(40):
        J = [[g.evaluate(x) for g in row] for row in grads]
        try:
            dx = linalg.solve_linear(J, F(x), field, n, tol=ctx.mpf(2) ** (-ctx.prec // 3))
        except Exception:
            return coords
        x = [a - b for a, b in zip(x, dx)]
        if max(abs(d) for d in dx) <= tol * max(1, max(abs(a) for a in x)):
            break
    return x


def _distinct(sols, tol):
    for i in range(len(sols)):
        for j in range(i):
            a, b = sols[i].coords, sols[j].coords
            scale = max(1, max(abs(c) for c in a))
            if max(abs(x - y) for x, y in zip(a, b)) <= tol * scale:
                return False
    return True
