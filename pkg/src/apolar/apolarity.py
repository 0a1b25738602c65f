"""Catalecticants, apolar ideals, inverse systems and powersum certificates."""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import comb

from . import linalg
from .errors import (ApolarError, DegenerateInputError, FieldMismatchError,
                     InconsistentSystem, NotGorensteinError)
from .fields import CC, ComplexField
from .poly import (DualPoint, MultiPoly, apolar_apply, monomial_index, monomials,
                   num_monomials, power_of_linear)
from math import factorial, prod


def catalecticant_matrix(f, e):
    """Matrix of ``T_e -> R_{d-e}``, ``D -> D.f`` in monomial bases.

    Rows are indexed by ``monomials(n, d - e)``, columns by ``monomials(n, e)``.
    """
    d, n = f.degree, f.nvars
    if not 0 <= e <= d:
        raise ValueError(f"catalecticant degree {e} outside 0..{d}")
    rows_idx = monomial_index(n, d - e)
    cols = monomials(n, e)
    zero = f.field.zero
    mat = [[zero] * len(cols) for _ in rows_idx]
    for j, a in enumerate(cols):
        col = apolar_apply(MultiPoly.monomial(f.field, a), f)
        for m, c in col.items():
            mat[rows_idx[m]][j] = c
    return mat


def apolar_ideal_piece(f, e):
    """Basis of the degree ``e`` part of the apolar ideal of ``f``."""
    n, field = f.nvars, f.field
    if e < 0:
        raise ValueError("degree must be non-negative")
    if e > f.degree:
        return [MultiPoly.monomial(field, a) for a in monomials(n, e)]
    cat = catalecticant_matrix(f, e)
    basis = linalg.kernel_basis(cat, field, num_monomials(n, e))
    return [MultiPoly.from_vector(field, n, e, v) for v in basis]


def hilbert_function(f):
    if f.is_zero():
        raise ValueError("the zero form has no apolar Gorenstein ring")
    return tuple(linalg.rank(catalecticant_matrix(f, e), f.field, num_monomials(f.nvars, e))
                 for e in range(f.degree + 1))


@dataclass
class GradedIdealPieces:
    """Degree-indexed bases of the graded pieces of a homogeneous ideal."""

    field: object
    nvars: int
    pieces: dict = dc_field(default_factory=dict)

    def dims(self):
        return {e: len(b) for e, b in sorted(self.pieces.items())}

    def hilbert_function(self, top):
        return tuple(num_monomials(self.nvars, e) - len(self.pieces.get(e, ()))
                     for e in range(top + 1))

    def check(self):
        """Verify independence of each basis and closure under ``T_1``."""
        for e, basis in self.pieces.items():
            vecs = [p.to_vector() for p in basis]
            if vecs and linalg.rank(vecs, self.field, num_monomials(self.nvars, e)) != len(vecs):
                return False
            if e + 1 in self.pieces and basis:
                nxt = [p.to_vector() for p in self.pieces[e + 1]]
                r0 = linalg.rank(nxt, self.field, num_monomials(self.nvars, e + 1)) if nxt else 0
                prods = [(p * MultiPoly.monomial(self.field, v)).to_vector()
                         for p in basis for v in monomials(self.nvars, 1)]
                if linalg.rank(nxt + prods, self.field, num_monomials(self.nvars, e + 1)) != r0:
                    return False
        return True


def apolar_ideal(f, top=None):
    top = f.degree if top is None else top
    return GradedIdealPieces(f.field, f.nvars,
                             {e: apolar_ideal_piece(f, e) for e in range(1, top + 1)})


def _contraction_rows(D, d):
    """Rows of the map ``R_d -> R_{d-e}``, ``f -> D.f``, as coefficient rows."""
    n, field = D.nvars, D.field
    e = D.degree
    out_idx = monomial_index(n, d - e)
    in_idx = monomial_index(n, d)
    zero = field.zero
    rows = [[zero] * len(in_idx) for _ in out_idx]
    for a, da in D.items():
        for b, j in in_idx.items():
            if any(ai > bi for ai, bi in zip(a, b)):
                continue
            k = prod(factorial(bi) // factorial(bi - ai) for ai, bi in zip(a, b))
            r = tuple(bi - ai for ai, bi in zip(a, b))
            rows[out_idx[r]][j] = rows[out_idx[r]][j] + da * k
    return rows


def dual_socle_generator(ideal, d):
    """The form of degree ``d`` annihilated by every stored piece (Macaulay inverse).

    The stacked condition is imposed degree by degree starting at ``d``, each
    time restricting the current kernel; the result is the same kernel as the
    full stacked map.  Raises :class:`NotGorensteinError` unless it is a line.

    A missing degree imposes nothing; since ``(M D) . f = M . (D . f)``, pieces
    given only in low degrees (e.g. generators) already determine the answer.
    """
    field, n = ideal.field, ideal.nvars
    dim = num_monomials(n, d)
    # columns of `span` form a basis of the current candidate space
    span = None
    for e in range(d, 0, -1):
        rows = []
        for D in ideal.pieces.get(e, []):
            if D.field != field:
                raise FieldMismatchError(f"{D.field} vs {field}")
            rows.extend(_contraction_rows(D, d))
        if not rows:
            continue
        if span is None:
            kernel = linalg.kernel_basis(rows, field, dim)
            span = kernel
        else:
            if not span:
                break
            restricted = [[sum((r[i] * v[i] for i in range(dim) if r[i] != 0), start=field.zero)
                           for v in span] for r in rows]
            coeffs = linalg.kernel_basis(restricted, field, len(span))
            span = [[sum((c[k] * span[k][i] for k in range(len(span))), start=field.zero)
                     for i in range(dim)] for c in coeffs]
        if not span:
            break
    if span is None:
        span = [[field.one if i == j else field.zero for i in range(dim)] for j in range(dim)]
    if len(span) != 1:
        raise NotGorensteinError(len(span))
    return MultiPoly.from_vector(field, n, d, span[0]).normalized()


def evaluation_matrix(points, e):
    """Rows indexed by points, columns by monomials of ``T_e``: ``D -> D(L)``."""
    rows = []
    for p in points:
        row = []
        for a in monomials(len(p.coords), e):
            v = p.field.one
            for c, k in zip(p.coords, a):
                if k:
                    v = v * c ** k
            row.append(v)
        rows.append(row)
    return rows


def _check_points(points, f):
    if not points:
        raise ValueError("need at least one point")
    for p in points:
        if len(p.coords) != f.nvars:
            raise ValueError("point and form live in different spaces")
        if p.field != f.field:
            raise FieldMismatchError(f"{p.field} vs {f.field}")
    for i in range(len(points)):
        for j in range(i):
            if points[i].same_point(points[j]):
                raise ValueError(f"duplicate points {i} and {j}")


def is_apolar(points, f, tol=None):
    """True iff the ideal of the reduced point set lies in the apolar ideal of f.

    Degree by degree: ``ker(eval_e) <= ker(cat_e)`` exactly when the rows of
    the catalecticant lie in the row space of the evaluation matrix.
    """
    _check_points(points, f)
    field, n = f.field, f.nvars
    for e in range(1, f.degree + 1):
        ev = evaluation_matrix(points, e)
        cols = num_monomials(n, e)
        cat = catalecticant_matrix(f, e)
        r_ev = linalg.rank(ev, field, cols, tol)
        if linalg.rank(ev + cat, field, cols, tol) != r_ev:
            return False
    return True


@dataclass
class PowersumDecomposition:
    """``target = sum(lam * l_L^d for L, lam in summands)`` with its residual."""

    target: MultiPoly
    summands: list
    residual: object
    field: object
    info: dict = dc_field(default_factory=dict)

    @property
    def length(self):
        return len(self.summands)

    def _target_here(self):
        f = self.target
        return f if f.field == self.field else f.change_field(self.field)

    def expand(self):
        f = self.target
        total = MultiPoly.zero(self.field, f.nvars, f.degree)
        for pt, lam in self.summands:
            total = total + power_of_linear(pt, f.degree).scale(lam)
        return total

    def recompute_residual(self):
        """Residual against the target read in the summands' field (exact Q targets allowed)."""
        return residual_norm(self._target_here(), self.expand())

    def points(self):
        return [p for p, _ in self.summands]


def residual_norm(target, approx):
    """0 for exact fields; max coefficient error relative to max |target| otherwise."""
    field = target.field
    diff = target - approx
    if field.exact:
        return field.zero if diff.is_zero() else field.one
    big = max((abs(c) for _, c in target.items()), default=field.ctx.mpf(1)) or field.ctx.mpf(1)
    err = max((abs(c) for _, c in diff.items()), default=field.ctx.mpf(0))
    return err / big


def solve_powersum(points, f, tol=None):
    """Solve ``f = sum lam_i l_i^d`` for the given points.

    Returns a :class:`PowersumDecomposition` whose residual is recomputed by
    expansion; zero coefficients are dropped.  Raises
    :class:`InconsistentSystem` when ``f`` is outside the span.
    """
    _check_points(points, f)
    field, d = f.field, f.degree
    powers = [power_of_linear(p, d).to_vector() for p in points]
    mat = [list(r) for r in zip(*powers)]
    rhs = f.to_vector()
    lam = linalg.solve_linear(mat, rhs, field, len(points), tol)
    lam = _spread(lam, linalg.kernel_basis(mat, field, len(points), tol), field)
    summands = [(p, c) for p, c in zip(points, lam) if not field.is_zero(c)]
    summands = [(p.canonical(), c * _scale_power(p, d)) for p, c in summands]
    dec = PowersumDecomposition(f, summands, None, field)
    dec.residual = dec.recompute_residual()
    if field.exact and dec.residual != 0:
        raise ApolarError("exact residual is nonzero: internal error")
    if not field.exact:
        bound = field.eps if tol is None else tol
        if dec.residual > bound:
            raise InconsistentSystem(None, "powersum residual above tolerance",
                                     residual=field.format(dec.residual, 8))
    return dec


def _spread(lam, kernel, field):
    """Move a particular solution along the kernel until no coefficient vanishes.

    With dependent powers the solution set is affine; its generic member uses
    every point, so we take the first of ``lam + k * sum(kernel)``, k = 0, 1, ...
    that has no zero entry.  Deterministic, and k stays small.
    """
    if not kernel:
        return lam
    direction = [sum((v[i] for v in kernel), start=field.zero) for i in range(len(lam))]
    for k in range(len(lam) + 2):
        cand = [a + field(k) * b for a, b in zip(lam, direction)]
        if not any(field.is_zero(c) for c in cand):
            return cand
    return lam


def _scale_power(p, d):
    """Factor relating l_p^d to l_{canonical(p)}^d."""
    c = p.coords
    q = p.canonical().coords
    k = next(i for i, v in enumerate(q) if v != 0)
    return (c[k] / q[k]) ** d


def generic_rank(d, n):
    """Number of ``d``-th powers a general form of degree d in n+1 variables needs."""
    if d < 1 or n < 0:
        raise ValueError("need d >= 1 and n >= 0")
    if d == 2:
        return n + 1
    exceptions = {(4, 2): 6, (4, 3): 10, (4, 4): 15, (3, 4): 8}
    if (d, n) in exceptions:
        return exceptions[(d, n)]
    return -(-comb(n + d, n) // (n + 1))


def terracini_rank(d, n, s, rng=None, bits=256):
    """Rank of the differential of ``(l_1..l_s) -> sum l_i^d`` at random points.

    By Terracini's lemma this is the affine dimension of the ``s``-secant
    variety of the Veronese variety.
    """
    rng = rng or random.Random(0)
    field = CC(bits)
    nv = n + 1
    cols = []
    for _ in range(s):
        coords = [field(complex(rng.uniform(-1, 1), rng.uniform(-1, 1))) for _ in range(nv)]
        pt = DualPoint(coords, field)
        lower = power_of_linear(pt, d - 1)
        for j in range(nv):
            xj = MultiPoly.monomial(field, tuple(1 if k == j else 0 for k in range(nv)))
            cols.append((lower * xj).to_vector())
    mat = [list(r) for r in zip(*cols)]
    return linalg.rank(mat, field, len(cols))


def terracini_generic_rank(d, n, rng=None, bits=256, s_max=None):
    """Smallest ``s`` whose secant variety fills ``R_d``, by the Jacobian test."""
    target = num_monomials(n + 1, d)
    s_max = s_max or target
    for s in range(1, s_max + 1):
        if terracini_rank(d, n, s, rng, bits) == target:
            return s
    raise ApolarError("secant varieties never filled the space")


@dataclass(frozen=True)
class SpecialnessReport:
    genus: int
    construction_count: int
    generic_count: int
    is_special: bool
    grassmannian_dim: int
    cubic_moduli_dim: int
    image_deficient: bool


def specialness_report(g):
    """Compare the 2g-4 tangent construction with the generic Waring rank of cubics."""
    if g < 4:
        raise ValueError("genus must be at least 4")
    construction = 2 * g - 4
    generic = generic_rank(3, g - 3)
    grass = 2 * (g - 2)
    moduli = comb(g, 3) - (g - 2) ** 2
    return SpecialnessReport(g, construction, generic, construction < generic,
                             grass, moduli, grass < moduli)
