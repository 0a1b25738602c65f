"""Powersum decompositions of ``f_L`` from linear slices of a curve.

Cone construction: for a point ``p`` of ``X`` the hyperplane ``span(p, L)``
meets ``X`` in ``p`` and ``d-1`` further points; projecting those from ``p``
into ``L`` gives ``d-1`` points apolar to ``f_L``.

Tangent construction: if the hyperplane through ``L`` is tangent to ``X`` at
``p``, then ``p`` is a double point of the slice and the remaining ``d-2``
points, projected from ``p``, are apolar to ``f_L``.  The tangent hyperplanes
through ``L`` are the branch points of the projection ``X -> P^1`` from
``L``; they are found from the discriminant of the plane model of ``X``
given by ``(h_1 : h_2 : l)`` for a generic linear form ``l``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import linalg
from .apolarity import solve_powersum
from .errors import ConditionViolated, DegenerateInputError, InconsistentSystem, PrecisionExhausted
from .fields import CC, QQ, convert
from .io import poly_to_json
from .poly import DualPoint, MultiPoly
from .sections import LinearSubspace, apolar_hypersurface
from .zerodim import (QuotientRing, _polish, _ratio_matrix, charpoly_exact, interpolate,
                      polynomial_roots, relative_residual, resultant, solve_projective,
                      squarefree_decomposition, ueval, uderiv, utrim)


@dataclass
class SlicePoint:
    coords: list
    multiplicity: int
    residual: object
    field: object


@dataclass
class TangentDatum:
    p: list                 # point of tangency, ambient coordinates
    hyperplane: MultiPoly   # h_1 - t h_2, over a complex field
    multiplicity: int       # multiplicity of t as a root of the branch factor
    parameter: object       # t


@dataclass
class TangentPencil:
    data: list
    accounting: dict = dc_field(default_factory=dict)

    def __iter__(self):
        return iter(self.data)

    def __len__(self):
        return len(self.data)

    def __getitem__(self, i):
        return self.data[i]

    @property
    def total_multiplicity(self):
        return sum(t.multiplicity for t in self.data)


def _to_work(poly, work):
    return poly.change_field(work)


def _normalize(x):
    j = max(range(len(x)), key=lambda k: abs(x[k]))
    return [c / x[j] for c in x], j


def projective_distance(x, y):
    xn, j = _normalize(x)
    yj = y[j]
    if yj == 0:
        return float("inf")
    yn = [c / yj for c in y]
    return max(abs(a - b) for a, b in zip(xn, yn))


def linear_slice_points(X, slab, bits=256, rng=None):
    """Points of ``X cap slab`` with multiplicities summing to ``deg X``."""
    rng = rng or random.Random(0)
    if len(slab.free) - 1 != X.codim:
        raise DegenerateInputError(
            f"slice of dimension {len(slab.free) - 1} is not complementary to X (codim {X.codim})")
    work = CC(2 * bits)
    forms = [slab.restrict(g) for g in X.generators]
    if any(f.is_zero() for f in forms):
        raise DegenerateInputError("degenerate slice: a generator vanishes on the slice")
    sols = solve_projective(forms, bits, rng)
    chart = [[convert(c, slab.field, work) for c in row] for row in slab.chart]
    gens = [_to_work(g, work) for g in X.generators]
    cuts = [_to_work(h, work) for h in slab.forms]
    tol = work.ctx.mpf(2) ** (-(bits // 2))
    out = []
    for s in sols:
        x = [sum((a * b for a, b in zip(row, s.coords)), work.ctx.mpc(0)) for row in chart]
        res = max(relative_residual(g, x) for g in gens + cuts)
        if res > tol:
            raise PrecisionExhausted("slice point failed validation; retry with more bits",
                                     residual=float(res))
        out.append(SlicePoint(x, s.multiplicity, res, work))
    if sum(p.multiplicity for p in out) != X.degree:
        raise DegenerateInputError("degenerate slice: multiplicities do not add up to deg X")
    return out


def _project_into(L, p, q, work):
    """The point where the line ``p q`` meets ``L``, in L's free coordinates."""
    hs = [_to_work(h, work) for h in L.forms]
    hp = [h.evaluate(p) for h in hs]
    k = max(range(len(hs)), key=lambda i: abs(hp[i]))
    if abs(hp[k]) == 0:
        raise DegenerateInputError("p lies in L")
    hq = hs[k].evaluate(q)
    r = [hq * a - hp[k] * b for a, b in zip(p, q)]
    scale = max(abs(c) for c in r)
    if scale == 0:
        raise DegenerateInputError("projection from p is undefined (q = p)")
    tol = work.ctx.mpf(2) ** (-(work.bits // 4))
    for h in hs:
        if abs(h.evaluate(r)) > tol * scale * max(abs(c) for _, c in h.items()):
            raise DegenerateInputError("line through p and q does not meet L in a point")
    return L.free_coords(r)


def _decompose(f_L, L, p, others, bits, tol, info):
    work = CC(2 * bits)
    target_field = CC(bits)
    pts = []
    for q in others:
        y = _project_into(L, p, q.coords, work)
        pts.append(DualPoint([target_field.ctx.mpc(c) for c in y], target_field))
    fC = f_L.change_field(target_field)
    try:
        dec = solve_powersum(pts, fC, tol=tol)
    except InconsistentSystem as exc:
        # in float mode a residual above tolerance means the points are not accurate enough
        raise PrecisionExhausted(f"{exc.detail}; retry with more bits", **exc.info) from exc
    dec.target = f_L
    dec.info.update(info)
    dec.info["precision_bits"] = bits
    return dec


DEFAULT_TOL = "1e-40"   # relative residual bound on certificates


def _default_tol(bits, tol):
    return CC(bits).ctx.mpf(DEFAULT_TOL if tol is None else tol)


def cone_decomposition(X, L, p, bits=256, tol=None, rng=None, f_L=None):
    """Write ``f_L`` as a sum of ``d-1`` cubes using the cone over ``X`` at ``p``."""
    rng = rng or random.Random(0)
    p = [QQ(c) for c in p]
    if not X.contains(p):
        raise DegenerateInputError("witness point is not on X")
    hp = [h.evaluate(p) for h in L.forms]
    if all(v == 0 for v in hp):
        raise DegenerateInputError("p lies in L")
    if len(L.forms) != 2:
        raise DegenerateInputError("the cone construction needs a codimension 2 subspace")
    h1, h2 = L.forms
    H = h1.scale(hp[1]) - h2.scale(hp[0])
    slab = LinearSubspace([H])
    f_L = f_L if f_L is not None else apolar_hypersurface(X, L)
    work = CC(2 * bits)
    pw = [work(c) for c in p]
    pts = linear_slice_points(X, slab, bits, rng)
    dist = [projective_distance(pw, q.coords) for q in pts]
    k = min(range(len(pts)), key=lambda i: dist[i])
    if dist[k] > work.ctx.mpf(2) ** (-(bits // 2)):
        raise PrecisionExhausted("witness point not found among the slice points")
    if pts[k].multiplicity != 1:
        raise DegenerateInputError("span(p, L) is tangent to X at p: improper slice")
    others = [q for i, q in enumerate(pts) if i != k]
    if any(q.multiplicity != 1 for q in others):
        raise DegenerateInputError("slice through p and L is not reduced")
    info = {"method": "cone", "witness_p": [str(c) for c in p], "hyperplane": poly_to_json(H)}
    return _decompose(f_L, L, pw, others, bits, _default_tol(bits, tol), info)


def _pencil_basis(L):
    """Points ``w1, w2`` with ``h_i(w_j) = delta_ij``."""
    rows = [h.to_vector() for h in L.forms]
    w1 = linalg.solve_linear(rows, [1, 0], QQ)
    w2 = linalg.solve_linear(rows, [0, 1], QQ)
    return w1, w2


def _fiber_chart(L, w1, w2, t):
    """Columns: L's chart (free coordinates y) then ``t w1 + w2`` (coordinate b)."""
    return [list(row) + [t * a + b] for row, a, b in zip(L.chart, w1, w2)]


def tangency_form(X, L):
    """``det[grad g_1; ...; grad g_c; h_1; h_2]``, vanishing where the pencil is tangent."""
    n = X.ambient_dim + 1
    field = X.field
    rows = [g.gradient() for g in X.generators]
    for h in L.forms:
        rows.append([MultiPoly(field, n, 0, {(0,) * n: c}) for c in h.to_vector()])
    total = None
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        term = None
        for i, j in enumerate(perm):
            e = rows[i][j]
            if e.is_zero():
                term = None
                break
            term = e if term is None else term * e
        if term is None:
            continue
        term = term if sign > 0 else -term
        total = term if total is None else total + term
    return total


def _perm_sign(perm):
    sign, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def plane_model(X, L, rng):
    """``F(t, u)`` with ``F(h_1/h_2, l/h_2) = 0`` on ``X``, monic of degree d in u.

    Coefficient ``j`` (of ``u^j``) has degree at most ``d - j`` in ``t``; it is
    interpolated exactly from the fibers over integer values of ``t``.
    """
    d = X.degree
    w1, w2 = _pencil_basis(L)
    nfree = len(L.free)
    ell_coeffs = [rng.randint(-9, 9) for _ in range(nfree)] + [0]
    n = nfree + 1
    ell = MultiPoly.linear(QQ, ell_coeffs)
    bvar = MultiPoly.monomial(QQ, tuple(1 if k == n - 1 else 0 for k in range(n)))
    samples = {}
    t = 0
    while len(samples) < d + 2:
        chart = _fiber_chart(L, w1, w2, QQ(t))
        forms = [g.substitute_linear(chart) for g in X.generators]
        try:
            ring = QuotientRing(forms, QQ)
            A = _ratio_matrix(ring.multiplication(ell), ring.multiplication(bvar), QQ)
        except Exception:
            t += 1
            continue
        samples[t] = charpoly_exact(A)
        t += 1
        if t > 10 * d + 20:
            raise DegenerateInputError("could not sample enough fibers of the pencil")
    ts = sorted(samples)
    fit, check = ts[:d + 1], ts[d + 1]
    coeffs = []
    for j in range(d + 1):
        vals = [samples[s][j] if j < len(samples[s]) else Fraction(0) for s in fit]
        coeffs.append(interpolate(fit, vals))
    for j in range(d + 1):
        got = ueval(coeffs[j], Fraction(check))
        want = samples[check][j] if j < len(samples[check]) else 0
        if got != want or len(utrim(coeffs[j])) - 1 > d - j:
            raise DegenerateInputError("plane model interpolation is inconsistent")
    return coeffs, ell, (w1, w2)


def _specialize(coeffs, t):
    return [ueval(c, t) for c in coeffs]


def discriminant_in_t(coeffs, d):
    """Discriminant of ``F(t, .)`` as an exact polynomial in ``t``."""
    top = d * (d - 1)
    xs = list(range(top + 2))
    ys = []
    for t in xs:
        F = _specialize(coeffs, Fraction(t))
        ys.append(resultant(F, uderiv(F), QQ))
    D = interpolate(xs[:top + 1], ys[:top + 1])
    if ueval(D, Fraction(xs[-1])) != ys[-1]:
        raise DegenerateInputError("discriminant interpolation is inconsistent")
    return D


def tangent_pencil(X, L, bits=256, rng=None):
    """Hyperplanes through ``L`` tangent to the curve ``X``, with their points of tangency."""
    rng = rng or random.Random(0)
    if X.dim != 1 or L.codim != 2:
        raise DegenerateInputError("the tangent pencil needs a curve and a codimension 2 subspace")
    d = X.degree
    coeffs, ell, _ = plane_model(X, L, rng)
    D = discriminant_in_t(coeffs, d)
    if len(utrim(D)) <= 1:
        raise DegenerateInputError("degenerate pencil: discriminant vanishes identically")
    factors = squarefree_decomposition(D)
    accounting = {"discriminant_degree": len(utrim(D)) - 1,
                  "factor_degrees": {str(m): len(f) - 1 for f, m in factors}}
    branch = [(f, m) for f, m in factors if m == 1]
    accounting["branch_degree"] = sum(len(f) - 1 for f, _ in branch)
    accounting["node_degree"] = sum(len(f) - 1 for f, m in factors if m == 2)
    work = CC(2 * bits)
    ctx = work.ctx
    tform = tangency_form(X, L)
    gens_w = [_to_work(g, work) for g in X.generators]
    tform_w = _to_work(tform, work)
    h1w, h2w = (_to_work(h, work) for h in L.forms)
    data = []
    for factor, mult in branch:
        for t0 in polynomial_roots(factor, bits):
            H = h1w - h2w.scale(t0)
            slab = LinearSubspace([H])
            pts = linear_slice_points(X, slab, bits, rng)
            doubles = [q for q in pts if q.multiplicity == 2]
            if len(doubles) != 1:
                raise PrecisionExhausted("could not isolate the point of tangency",
                                         multiplicities=[q.multiplicity for q in pts])
            p0 = doubles[0].coords
            # normalise to h2 = 1 and polish on X, tangency, h2 = 1
            s = h2w.evaluate(p0)
            p0 = [c / s for c in p0]
            p = _polish(gens_w + [tform_w], h2w, p0, ctx)
            if abs(H.evaluate(p)) > ctx.mpf(2) ** (-(bits // 2)) * max(1, max(abs(c) for c in p)):
                raise PrecisionExhausted("point of tangency drifted off the hyperplane")
            data.append(TangentDatum(p, H, mult, t0))
    accounting["total_with_multiplicity"] = sum(t.multiplicity for t in data)
    data.sort(key=lambda td: tuple((float(c.real), float(c.imag)) for c in _normalize(td.p)[0]))
    return TangentPencil(data, accounting)


def check_tangent_datum(X, L, datum, tol=None):
    """H contains L and p, and kills the tangent direction of X at p."""
    work = datum.hyperplane.field
    ctx = work.ctx
    tol = tol or ctx.mpf(2) ** (-(work.bits // 4))
    p = datum.p
    H = datum.hyperplane
    hv = H.to_vector()
    scale = max(1, max(abs(c) for c in p))
    if abs(H.evaluate(p)) > tol * scale:
        return False
    # H vanishes on L: its coefficient vector lies in the span of h_1, h_2
    rows = [[work(c) for c in h.to_vector()] for h in L.forms]
    if linalg.rank(rows + [hv], work, tol=tol) != 2:
        return False
    J = [[_to_work(g.diff(j), work).evaluate(p) for j in range(len(p))] for g in X.generators]
    tangent = linalg.kernel_basis(J, work, len(p), tol=tol)
    for v in tangent:
        if abs(sum((a * b for a, b in zip(hv, v)), ctx.mpc(0))) > tol * max(abs(c) for c in v):
            return False
    return True


def tangent_decomposition(X, L, datum, bits=256, tol=None, rng=None, f_L=None):
    """Write ``f_L`` as a sum of ``d-2`` cubes from a tangent hyperplane through L."""
    rng = rng or random.Random(0)
    f_L = f_L if f_L is not None else apolar_hypersurface(X, L)
    slab = LinearSubspace([datum.hyperplane])
    pts = linear_slice_points(X, slab, bits, rng)
    dist = [projective_distance(datum.p, q.coords) for q in pts]
    k = min(range(len(pts)), key=lambda i: dist[i])
    work = CC(2 * bits)
    if dist[k] > work.ctx.mpf(2) ** (-(bits // 4)):
        raise PrecisionExhausted("point of tangency not found among the slice points")
    if pts[k].multiplicity != 2:
        raise ConditionViolated(
            f"point of tangency has multiplicity {pts[k].multiplicity} in the slice, expected 2",
            multiplicity=pts[k].multiplicity)
    others = [q for i, q in enumerate(pts) if i != k]
    if any(q.multiplicity != 1 for q in others):
        raise ConditionViolated("tangent slice has further multiple points")
    info = {"method": "tangent",
            "witness_p": [work.format(c, 40) for c in datum.p],
            "hyperplane": poly_to_json(datum.hyperplane),
            "tangency_multiplicity": pts[k].multiplicity}
    p = [work.ctx.mpc(c) for c in datum.p]
    return _decompose(f_L, L, p, others, bits, _default_tol(bits, tol), info)
