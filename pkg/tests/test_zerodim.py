import random
from fractions import Fraction

import pytest

from apolar import CC, QQ, DegenerateInputError, MultiPoly, solve_projective
from apolar.zerodim import (charpoly_exact, cluster, interpolate, polynomial_roots, resultant,
                            squarefree_decomposition, ueval)

F = Fraction


def lin(*c):
    return MultiPoly.linear(QQ, list(c))


def test_interpolation_roundtrip():
    p = [F(3), F(-1, 2), F(0), F(7)]
    xs = list(range(4))
    assert interpolate(xs, [ueval(p, F(x)) for x in xs]) == p


def test_squarefree_decomposition():
    # (t - 1) (t - 2)^2 (t + 3)^3
    p = [F(1)]
    for r, m in ((1, 1), (2, 2), (-3, 3)):
        for _ in range(m):
            p = [F(0)] + p
            p = [p[i] - r * (p[i + 1] if i + 1 < len(p) else 0) for i in range(len(p))]
            p = [a for a in p]
    parts = dict((m, f) for f, m in squarefree_decomposition(p))
    assert parts[1] == [F(-1), F(1)]
    assert parts[2] == [F(-2), F(1)]
    assert parts[3] == [F(3), F(1)]


def test_charpoly_and_resultant():
    assert charpoly_exact([[F(2), F(1)], [F(0), F(3)]]) == [F(6), F(-5), F(1)]
    # res(t - a, t - b) = +-(a - b)
    assert abs(resultant([F(-2), F(1)], [F(-5), F(1)], QQ)) == 3
    # a double root makes the discriminant vanish
    p = [F(1), F(-2), F(1)]
    assert resultant(p, [F(-2), F(2)], QQ) == 0


def test_polynomial_roots_high_precision():
    roots = polynomial_roots([F(-2), F(0), F(1)], 256)
    ctx = CC(512).ctx
    got = sorted(float(r.real) for r in roots)
    assert got[1] == pytest.approx(2 ** 0.5)
    best = min(abs(r - ctx.sqrt(2)) for r in roots)
    assert best < ctx.mpf(2) ** -200


def test_cluster_groups_close_values():
    groups = cluster([1.0, 1.0 + 1e-12, 2.0, 3.0, 3.0 - 1e-13], 1e-9)
    assert sorted(len(g) for g in groups) == [1, 2, 2]


def test_two_conics_four_rational_points():
    # x0^2 - x1^2 and x0^2 - x2^2: points (1, +-1, +-1)
    f = MultiPoly(QQ, 3, 2, {(2, 0, 0): 1, (0, 2, 0): -1})
    g = MultiPoly(QQ, 3, 2, {(2, 0, 0): 1, (0, 0, 2): -1})
    sols = solve_projective([f, g], bits=128, rng=random.Random(1))
    assert sorted(s.multiplicity for s in sols) == [1, 1, 1, 1]
    signs = set()
    for s in sols:
        c = [z / s.coords[0] for z in s.coords]
        assert all(abs(abs(z) - 1) < 1e-30 for z in c)
        signs.add((round(float(c[1].real)), round(float(c[2].real))))
    assert signs == {(1, 1), (1, -1), (-1, 1), (-1, -1)}


def test_tangent_conics_give_a_double_point():
    # the line x2 = 0 is tangent to x1^2 = x0 x2 at (1:0:0); x0 + x2 = 0 meets it twice
    conic = MultiPoly(QQ, 3, 2, {(0, 2, 0): 1, (1, 0, 1): -1})
    tangent = MultiPoly(QQ, 3, 2, {(0, 0, 2): 1, (1, 0, 1): 1})  # x2 (x0 + x2)
    sols = solve_projective([conic, tangent], bits=128, rng=random.Random(2))
    assert sorted(s.multiplicity for s in sols) == [1, 1, 2]


def test_common_component_is_degenerate():
    f = lin(1, 1, 0) * lin(0, 1, -1)
    g = lin(1, 1, 0) * lin(1, 0, 2)
    with pytest.raises(DegenerateInputError):
        solve_projective([f, g], bits=128)


def test_float_input():
    C = CC(256)
    f = MultiPoly(QQ, 3, 2, {(2, 0, 0): 1, (0, 2, 0): -2}).change_field(C)
    g = MultiPoly(QQ, 3, 2, {(0, 2, 0): 1, (0, 0, 2): -3}).change_field(C)
    sols = solve_projective([f, g], bits=128, rng=random.Random(3))
    assert sum(s.multiplicity for s in sols) == 4
    for s in sols:
        assert s.residual < C.ctx.mpf(2) ** -64
