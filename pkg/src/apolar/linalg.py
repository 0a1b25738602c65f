"""Dense linear algebra over the coefficient fields.

Matrices are lists of rows.  Over Q the elimination runs on gmpy2 rationals
(much faster than ``Fraction``) and converts back at the end; over GF(p) it
runs on plain integers; over C it uses partial pivoting with a relative pivot
threshold, ``2^-(bits/2)`` unless overridden.

Kernel bases come out of the reduced row echelon form, so each basis vector
has a 1 in its own free column and 0 in the other free columns.
"""
from __future__ import annotations

from fractions import Fraction

import gmpy2

from .errors import FieldMismatchError, InconsistentSystem
from .fields import ComplexField, PrimeField, RationalField


def _ncols(rows, ncols):
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(rows[0])
    for r in rows:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    return ncols


def _rref_exact(rows, ncols, zero, inv, reduce=lambda x: x):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        s = inv(prow[c])
        nz = []
        for j in range(c, ncols):
            if prow[j]:
                prow[j] = reduce(prow[j] * s)
                nz.append(j)
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            a = row[c]
            if not a:
                continue
            for j in nz:
                row[j] = reduce(row[j] - a * prow[j])
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def _rref_complex(rows, ncols, field, tol):
    ctx = field.ctx
    rows = [[ctx.mpc(x) for x in r] for r in rows]
    # row equilibration so the threshold is scale free
    for k, row in enumerate(rows):
        big = max((abs(x) for x in row), default=0)
        if big:
            rows[k] = [x / big for x in row]
    tol = field.eps if tol is None else ctx.mpf(tol)
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        best, piv = 0, None
        for i in range(r, nrows):
            a = abs(rows[i][c])
            if a > best:
                best, piv = a, i
        if piv is None or best <= tol:
            for i in range(r, nrows):
                rows[i][c] = ctx.mpc(0)
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        s = 1 / prow[c]
        for j in range(c, ncols):
            prow[j] = prow[j] * s
        prow[c] = ctx.mpc(1)
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            a = row[c]
            if a == 0:
                continue
            for j in range(c, ncols):
                row[j] = row[j] - a * prow[j]
            row[c] = ctx.mpc(0)
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(rows, field, ncols=None, tol=None):
    """Reduced row echelon form; returns ``(nonzero_rows, pivot_columns)``."""
    ncols = _ncols(rows, ncols)
    if isinstance(field, RationalField):
        mq = [[gmpy2.mpq(x.numerator, x.denominator) if isinstance(x, Fraction) else gmpy2.mpq(x)
               for x in r] for r in rows]
        red, piv = _rref_exact(mq, ncols, gmpy2.mpq(0), lambda a: 1 / a)
        return [[Fraction(int(x.numerator), int(x.denominator)) for x in r] for r in red], piv
    if isinstance(field, PrimeField):
        p = field.p
        mi = [[field(x).v for x in r] for r in rows]
        red, piv = _rref_exact(mi, ncols, 0, lambda a: pow(a, -1, p), lambda x: x % p)
        return [[field(x) for x in r] for r in red], piv
    if isinstance(field, ComplexField):
        return _rref_complex(rows, ncols, field, tol)
    raise FieldMismatchError(f"unsupported field {field}")


def rank(rows, field, ncols=None, tol=None):
    if not rows:
        return 0
    return len(rref(rows, field, ncols, tol)[1])


def kernel_basis(rows, field, ncols=None, tol=None):
    """Basis of the right kernel ``{v : M v = 0}``."""
    ncols = _ncols(rows, ncols)
    red, piv = rref(rows, field, ncols, tol) if rows else ([], [])
    pivset = set(piv)
    basis = []
    for j in range(ncols):
        if j in pivset:
            continue
        v = [field.zero] * ncols
        v[j] = field.one
        for r, pc in enumerate(piv):
            v[pc] = -red[r][j]
        basis.append(v)
    return basis


def transpose(rows, ncols=None):
    ncols = _ncols(rows, ncols)
    return [[r[j] for r in rows] for j in range(ncols)]


def mat_vec(rows, v):
    return [sum((a * b for a, b in zip(r, v)), start=0 * v[0]) if v else 0 for r in rows]


def mat_mul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(r, c)), start=0 * r[0]) for c in bt] for r in a]


def left_kernel(rows, field, ncols=None, tol=None):
    """Basis of ``{y : y M = 0}``."""
    if not rows:
        return []
    return kernel_basis(transpose(rows, ncols), field, len(rows), tol)


def solve_linear(rows, b, field, ncols=None, tol=None):
    """A particular solution of ``M x = b`` with free variables set to 0.

    Raises :class:`InconsistentSystem` carrying ``y`` with ``y M = 0`` and
    ``y b != 0`` when there is none.
    """
    ncols = _ncols(rows, ncols)
    if len(b) != len(rows):
        raise ValueError("right hand side has the wrong length")
    aug = [list(r) + [field(bi)] for r, bi in zip(rows, b)]
    red, piv = rref(aug, field, ncols + 1, tol)
    if ncols in piv:
        for y in left_kernel(rows, field, ncols, tol):
            yb = sum((yi * field(bi) for yi, bi in zip(y, b)), start=field.zero)
            if not field.is_zero(yb):
                raise InconsistentSystem(y)
        raise InconsistentSystem(None, "inconsistent system (no witness at this tolerance)")
    x = [field.zero] * ncols
    for r, pc in enumerate(piv):
        x[pc] = red[r][ncols]
    return x


def determinant(rows, field):
    n = len(rows)
    if n == 0:
        return field.one
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if isinstance(field, ComplexField):
        m = [[field.ctx.mpc(x) for x in r] for r in rows]
        zero, one = field.ctx.mpc(0), field.ctx.mpc(1)
        back = lambda x: x
    elif isinstance(field, RationalField):
        m = [[gmpy2.mpq(x.numerator, x.denominator) if isinstance(x, Fraction) else gmpy2.mpq(x)
              for x in r] for r in rows]
        zero, one = gmpy2.mpq(0), gmpy2.mpq(1)
        back = lambda x: Fraction(int(x.numerator), int(x.denominator))
    else:
        m = [[field(x) for x in r] for r in rows]
        zero, one = field.zero, field.one
        back = lambda x: x
    det = one
    for c in range(n):
        if isinstance(field, ComplexField):
            piv = max(range(c, n), key=lambda i: abs(m[i][c]))
            if m[piv][c] == 0:
                return field.zero
        else:
            piv = next((i for i in range(c, n) if m[i][c] != 0), None)
            if piv is None:
                return field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        p = m[c][c]
        det = det * p
        for i in range(c + 1, n):
            a = m[i][c]
            if a != 0:
                f = a / p
                row, prow = m[i], m[c]
                for j in range(c + 1, n):
                    row[j] = row[j] - f * prow[j]
    return back(det)
