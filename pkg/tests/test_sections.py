import random

import pytest

from apolar import (QQ, CompleteIntersection, DegenerateInputError, LinearSubspace, MultiPoly,
                    apolar_apply, apolar_hypersurface, hilbert_function,
                    ideal_pieces_after_reduction, num_monomials, random_complete_intersection,
                    kernel_basis, reduction_hilbert_function, sample_section)


def test_fixture_invariants(genus4, genus5, elliptic):
    assert (genus4.degrees, genus4.degree, genus4.genus, genus4.socle_degree) == ([2, 3], 6, 4, 3)
    assert (genus5.degrees, genus5.degree, genus5.genus, genus5.socle_degree) == ([2, 2, 2], 8, 5, 3)
    assert (elliptic.degree, elliptic.genus, elliptic.socle_degree) == (4, 1, 2)
    for X in (genus4, genus5, elliptic):
        assert X.check()
        assert len(X.witness_points) >= 5


def test_socle_degree_is_sum_of_degree_drops(genus4, genus5, elliptic):
    for X in (genus4, genus5, elliptic):
        assert X.socle_degree == sum(d - 1 for d in X.degrees)
        assert len(X.expected_hilbert_function()) == X.socle_degree + 2


@pytest.mark.parametrize("name,hf", [("genus4", (1, 2, 2, 1, 0)), ("genus5", (1, 3, 3, 1, 0)),
                                     ("elliptic", (1, 2, 1, 0))])
def test_reduction_hilbert_function(name, hf, request):
    X = request.getfixturevalue(name)
    rng = random.Random(1)
    for _ in range(3):
        L = sample_section(X, rng)
        assert reduction_hilbert_function(X, L) == hf


def test_piece_dimensions_match_hilbert_function(genus4):
    L = sample_section(genus4, random.Random(2))
    ideal = ideal_pieces_after_reduction(genus4, L)
    h = reduction_hilbert_function(genus4, L)
    for e in range(1, 4):
        assert h[e] == num_monomials(2, e) - len(ideal.pieces[e])
    assert [len(ideal.pieces[e]) for e in (1, 2, 3)] == [0, 1, 3]


@pytest.mark.parametrize("name,nvars,hf", [("genus4", 2, (1, 2, 2, 1)), ("genus5", 3, (1, 3, 3, 1)),
                                           ("elliptic", 2, (1, 2, 1))])
def test_apolar_hypersurface(name, nvars, hf, request):
    X = request.getfixturevalue(name)
    L = sample_section(X, random.Random(4))
    f = apolar_hypersurface(X, L)
    assert f.nvars == nvars and f.degree == X.socle_degree
    assert hilbert_function(f) == hf
    ideal = ideal_pieces_after_reduction(X, L)
    for e, basis in ideal.pieces.items():
        for D in basis:
            assert apolar_apply(D, f).is_zero()


def test_section_through_the_curve_is_rejected(genus4):
    p = genus4.witness_points[0]
    # two linear forms vanishing at p
    forms = [MultiPoly.linear(QQ, v) for v in kernel_basis([list(p)], QQ)[:2]]
    L = LinearSubspace(forms)
    assert all(h(p) == 0 for h in forms)
    assert reduction_hilbert_function(genus4, L)[-1] != 0
    with pytest.raises(DegenerateInputError) as info:
        apolar_hypersurface(genus4, L)
    assert "non-general section" in info.value.detail


def test_wrong_codimension(genus4):
    L = LinearSubspace([MultiPoly.linear(QQ, [1, 2, 3, 4])])
    with pytest.raises(DegenerateInputError):
        apolar_hypersurface(genus4, L)


def test_dependent_cutting_forms():
    h = MultiPoly.linear(QQ, [1, 2, 3, 4])
    with pytest.raises(DegenerateInputError):
        LinearSubspace([h, h.scale(2)])


def test_chart_embeds_into_subspace():
    L = LinearSubspace([MultiPoly.linear(QQ, [1, 2, 3, 4]), MultiPoly.linear(QQ, [0, 1, -1, 2])])
    assert L.pivots == [0, 1] and L.free == [2, 3]
    for y in ([1, 0], [0, 1], [3, -2]):
        x = L.embed([QQ(c) for c in y])
        assert L.contains(x)
        assert L.free_coords(x) == [QQ(c) for c in y]


def test_fixture_json_roundtrip(genus5):
    again = CompleteIntersection.from_json(genus5.to_json())
    assert again.generators == genus5.generators
    assert again.witness_points == genus5.witness_points


def test_random_complete_intersection():
    X = random_complete_intersection(3, [2, 2], 5, random.Random(8))
    assert X.check() and X.degree == 4
    L = sample_section(X, random.Random(9))
    assert reduction_hilbert_function(X, L) == (1, 2, 1, 0)
