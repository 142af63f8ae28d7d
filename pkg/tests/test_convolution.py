from fractions import Fraction

import pytest

from g2rigid.convolution import (DegenerateInput, G2_RECIPE_LINES,
                                 InvalidLambda, Recipe, RecipeFormatError,
                                 RigidTuple, g2_recipe, is_involution,
                                 local_profile, matches_g2_profile,
                                 middle_convolution, realize, rigidity_index,
                                 rotate_points, scalar_twist, seed_tuple,
                                 swap_points, unipotent_partition)
from g2rigid.matrix import rational_matrix


def test_recipe_roundtrip():
    r = g2_recipe()
    assert tuple(r.to_lines()) == G2_RECIPE_LINES
    assert Recipe.from_lines(r.to_lines()) == r


@pytest.mark.parametrize("lines", [
    [],
    ["mc -1"],
    ["seed -1"],
    ["seed -1 -1", "mc"],
    ["seed -1 -1", "frobnicate 3"],
])
def test_recipe_bad_lines(lines):
    with pytest.raises(RecipeFormatError):
        Recipe.from_lines(lines)


def test_triple_product_is_identity(triple):
    assert triple.product_relation_holds()
    prod = triple.matrices[0] * triple.matrices[1] * triple.a_infinity()
    assert prod.is_identity()


def test_triple_rank_and_rigidity(triple):
    assert triple.n == 7
    assert rigidity_index(triple) == 2


def test_triple_jordan_profile(triple):
    a0, a1 = triple.matrices
    ainf = triple.a_infinity()
    assert is_involution(a0)
    # involution eigenvalue multiplicities: four -1s, three +1s
    assert a0.jordan_partition(Fraction(-1)) == (1, 1, 1, 1)
    assert a0.jordan_partition(Fraction(1)) == (1, 1, 1)
    assert unipotent_partition(a1) == (3, 2, 2)
    assert unipotent_partition(ainf) == (7,)
    assert matches_g2_profile(triple)


def test_denominator_has_no_large_primes(triple):
    n = triple.denominator()
    assert n >= 1
    for ell in (7, 11, 13, 101):
        assert n % ell != 0


def test_middle_convolution_rank_identity_on_seed():
    t = seed_tuple((Fraction(-1), Fraction(-1)))
    u = middle_convolution(t, Fraction(-1))
    assert u.n == 2
    assert u.product_relation_holds()
    assert rigidity_index(u) == 2


def test_middle_convolution_rejects_lambda_one():
    t = seed_tuple((Fraction(-1), Fraction(-1)))
    with pytest.raises(InvalidLambda):
        middle_convolution(t, Fraction(1))
    with pytest.raises(InvalidLambda):
        middle_convolution(t, Fraction(0))


def test_recipe_prefixes_stay_rigid():
    """Every prefix of the pinned recipe realizes a rigid tuple."""
    lines = list(G2_RECIPE_LINES)
    ranks = []
    for i in range(1, len(lines) + 1):
        t = realize(Recipe.from_lines(lines[:i]))
        ranks.append(t.n)
        assert t.product_relation_holds()
        if t.n > 1:
            assert rigidity_index(t) == 2
    assert ranks[0] == 1 and ranks[-1] == 7
    assert ranks == sorted(ranks)  # middle convolution never loses rank here


def test_relabelings_preserve_invariants(triple):
    for f in (rotate_points, swap_points):
        u = f(triple)
        assert u.product_relation_holds()
        assert rigidity_index(u) == 2
        assert sorted(local_profile(u)) == sorted(local_profile(triple))


def test_rotate_order_three_swap_order_two(triple):
    t3 = rotate_points(rotate_points(rotate_points(triple)))
    assert local_profile(t3) == local_profile(triple)
    t2 = swap_points(swap_points(triple))
    assert local_profile(t2) == local_profile(triple)


def test_scalar_twist_changes_determinants(triple):
    u = scalar_twist(triple, [Fraction(-1), Fraction(1)])
    assert u.matrices[0].det() == -triple.matrices[0].det()
    assert u.matrices[1] == triple.matrices[1]


def test_degenerate_rigid_tuple_rejected():
    m = rational_matrix([[1, 0], [0, 1]])
    with pytest.raises(DegenerateInput):
        middle_convolution(RigidTuple([m, m]), Fraction(-1))


def test_realize_is_deterministic(triple):
    again = realize(g2_recipe())
    assert [m.data for m in again.matrices] == \
        [m.data for m in triple.matrices]
