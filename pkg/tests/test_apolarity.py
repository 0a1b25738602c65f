import random

import pytest
from hypothesis import given, settings, strategies as st

from apolar import (GF, QQ, DualPoint, GradedIdealPieces, InconsistentSystem, MultiPoly,
                    NotGorensteinError, apolar_apply, apolar_ideal, apolar_ideal_piece,
                    catalecticant_matrix, dual_socle_generator, generic_rank, hilbert_function,
                    is_apolar, power_of_linear, rank, solve_powersum, specialness_report,
                    terracini_generic_rank)

from conftest import random_form, random_points


def mono(exp, c=1, field=QQ):
    return MultiPoly.monomial(field, exp, c)


CUBE = mono((3, 0))
FERMAT = mono((3, 0)) + mono((0, 3))


def test_catalecticant_ranks():
    assert rank(catalecticant_matrix(CUBE, 1), QQ) == 1
    M = catalecticant_matrix(FERMAT, 2)
    assert len(M) == 2 and len(M[0]) == 3
    # columns d0^2, d0 d1, d1^2 give 6 x0, 0, 6 x1
    assert [[M[0][0], M[1][0]], [M[0][1], M[1][1]], [M[0][2], M[1][2]]] == [[6, 0], [0, 0], [0, 6]]
    assert rank(M, QQ) == 2


def test_perp_pieces():
    assert apolar_ideal_piece(CUBE, 1) == [mono((0, 1))]
    assert apolar_ideal_piece(FERMAT, 2) == [mono((1, 1))]


def test_hilbert_functions():
    assert hilbert_function(CUBE) == (1, 1, 1, 1)
    assert hilbert_function(FERMAT) == (1, 2, 2, 1)


def test_dual_socle_small():
    ideal = GradedIdealPieces(QQ, 2, {1: [mono((0, 1))]})
    assert dual_socle_generator(ideal, 3) == CUBE
    full = GradedIdealPieces(QQ, 2, {1: [mono((1, 0)), mono((0, 1))]})
    with pytest.raises(NotGorensteinError) as info:
        dual_socle_generator(full, 3)
    assert info.value.kernel_dim == 0


def test_dual_socle_normalized(rng):
    f = random_form(QQ, 3, 3, rng)
    g = dual_socle_generator(apolar_ideal(f), 3)
    lead = g.items()[0][1]
    assert lead == 1
    assert g == f.scale(1 / f.items()[0][1])


def test_is_apolar_examples():
    pts = [DualPoint([1, 0], QQ), DualPoint([0, 1], QQ)]
    assert is_apolar(pts, FERMAT)
    assert not is_apolar(pts[:1], FERMAT)


def test_solve_powersum_examples():
    pts = [DualPoint([1, 0], QQ), DualPoint([0, 1], QQ)]
    dec = solve_powersum(pts, mono((3, 0)) + mono((0, 3), 8))
    assert [lam for _, lam in dec.summands] == [1, 8]
    assert dec.residual == 0
    with pytest.raises(InconsistentSystem):
        solve_powersum(pts[:1], FERMAT)
    f = power_of_linear(DualPoint([1, 1], QQ), 3) + power_of_linear(DualPoint([1, -1], QQ), 3)
    pts3 = [DualPoint(c, QQ) for c in ([1, 1], [1, -1], [1, 0])]
    dec = solve_powersum(pts3, f)
    assert dec.residual == 0
    assert DualPoint([1, 0], QQ) not in dec.points()


def test_dependent_points_use_every_summand():
    # five points on P^1 against a binary cubic: the solution set is a line
    f = random_form(QQ, 2, 3, random.Random(3))
    pts = [DualPoint([1, k], QQ) for k in range(5)]
    dec = solve_powersum(pts, f)
    assert dec.length == 5 and dec.residual == 0


def test_duplicate_points_rejected():
    pts = [DualPoint([1, 2], QQ), DualPoint([2, 4], QQ)]
    with pytest.raises(ValueError):
        is_apolar(pts, FERMAT)


def test_generic_rank_values():
    assert generic_rank(3, 2) == 4
    assert generic_rank(3, 4) == 8
    assert generic_rank(2, 5) == 6
    assert generic_rank(4, 2) == 6
    assert generic_rank(4, 3) == 10
    assert generic_rank(4, 4) == 15


def test_terracini_small():
    assert terracini_generic_rank(3, 1, random.Random(1)) == 2
    assert terracini_generic_rank(3, 2, random.Random(1)) == 4


def test_specialness_examples():
    r = specialness_report(11)
    assert (r.construction_count, r.generic_count, r.is_special) == (18, 19, True)
    r = specialness_report(10)
    assert (r.construction_count, r.generic_count, r.is_special) == (16, 15, False)
    r = specialness_report(8)
    assert (r.grassmannian_dim, r.cubic_moduli_dim, r.image_deficient) == (12, 20, True)
    with pytest.raises(ValueError):
        specialness_report(3)


@pytest.mark.parametrize("field", [QQ, GF(101)])
def test_hilbert_symmetry(field):
    rng = random.Random(17)
    for _ in range(25):
        n, d = rng.randint(1, 4), rng.randint(1, 4)
        h = hilbert_function(random_form(field, n, d, rng))
        assert h == tuple(reversed(h)) and h[0] == h[-1] == 1


@pytest.mark.parametrize("field", [QQ, GF(101)])
def test_pieces_are_kernels(field):
    rng = random.Random(5)
    for _ in range(10):
        f = random_form(field, 3, 3, rng)
        for e in range(4):
            for D in apolar_ideal_piece(f, e):
                assert apolar_apply(D, f).is_zero()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 4), st.integers(2, 4))
def test_monotone_under_powersums(seed, s, d):
    rng = random.Random(seed)
    n = 4
    s = min(s, n)
    pts = random_points(QQ, n, s, rng)
    f = MultiPoly.zero(QQ, n, d)
    for p in pts:
        f = f + power_of_linear(p, d).scale(rng.choice([1, 2, -3]))
    if f.is_zero():
        return
    assert hilbert_function(f)[1] <= s


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_lemma_equivalence(seed):
    rng = random.Random(seed)
    n, d = rng.randint(2, 3), rng.randint(2, 4)
    pts = random_points(QQ, n, rng.randint(1, 5), rng)
    if rng.random() < 0.5:
        f = MultiPoly.zero(QQ, n, d)
        for p in pts:
            f = f + power_of_linear(p, d).scale(rng.randint(1, 5))
        if f.is_zero():
            return
    else:
        f = random_form(QQ, n, d, rng)
    verdict = is_apolar(pts, f)
    try:
        dec = solve_powersum(pts, f)
        solved = dec.residual == 0
    except InconsistentSystem:
        solved = False
    assert verdict == solved
