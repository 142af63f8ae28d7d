from fractions import Fraction

import pytest

from g2rigid.g2forms import (DenominatorClash, dickson_form, g2_bilinear,
                             enveloping_dim, generation_certificate,
                             invariant_form_space, lie_stabilizer_dim,
                             reduce_mod, stabilizes,
                             trilinear_scalar_stabilizers)
from g2rigid.matrix import Matrix, rational_matrix
from g2rigid.rings import InvalidCharacteristic, PrimeField, QQ


def test_dickson_form_is_alternating():
    tri = dickson_form()
    assert tri.is_alternating()
    e = [[Fraction(int(i == j)) for j in range(7)] for i in range(7)]
    assert tri.evaluate(e[0], e[1], e[3]) == -tri.evaluate(e[1], e[0], e[3])
    assert tri.evaluate(e[0], e[0], e[3]) == 0


def test_dickson_pair_stabilizer_is_g2():
    assert lie_stabilizer_dim((dickson_form(), g2_bilinear())) == 14


def test_single_form_stabilizers():
    from g2rigid.g2forms import TrilinearForm
    from g2rigid.matrix import Matrix as M
    no_tri = TrilinearForm(QQ, {})
    no_bil = g2_bilinear().__class__(M.zero(QQ, 7, 7))
    assert lie_stabilizer_dim((dickson_form(), no_bil)) == 14
    assert lie_stabilizer_dim((no_tri, g2_bilinear())) == 21
    assert lie_stabilizer_dim((no_tri, no_bil)) == 49


def test_trilinear_scalar_stabilizers_are_cube_roots():
    # z*I fixes the trilinear form iff z^3 = 1
    for ell, expect in ((7, 3), (11, 1), (13, 3)):
        F = PrimeField(ell)
        roots = trilinear_scalar_stabilizers(F)
        assert len(roots) == expect
        assert all(F.eq(F.mul(F.mul(z, z), z), F.one) for z in roots)


def test_invariant_form_space_dims(triple):
    d2, forms2 = invariant_form_space(triple, 2)
    d3, forms3 = invariant_form_space(triple, 3)
    assert (d2, d3) == (1, 1)
    for m in triple.matrices + [triple.a_infinity()]:
        assert stabilizes(m, (forms3[0], forms2[0]))


def test_triple_stabilizer_is_g2(triple):
    d2, forms2 = invariant_form_space(triple, 2)
    d3, forms3 = invariant_form_space(triple, 3)
    assert lie_stabilizer_dim((forms3[0], forms2[0])) == 14


def test_enveloping_dim_full(triple):
    t7 = reduce_mod(triple, 7)
    assert enveloping_dim(t7.matrices) == 49


def test_enveloping_dim_small_example():
    F = PrimeField(7)
    diag = Matrix.from_ints(F, [[2, 0], [0, 3]])
    assert enveloping_dim([diag]) == 2  # commutative algebra of diagonals


@pytest.mark.parametrize("ell", [7, 11, 13])
def test_generation_certificate_generates(triple, ell):
    rep = generation_certificate(reduce_mod(triple, ell))
    assert rep.verdict == "Generates"
    assert rep.enveloping == 49
    assert rep.invariant_form_dims == (1, 1)
    assert rep.reasons == []


def test_generation_certificate_inconclusive_at_5(triple):
    rep = generation_certificate(reduce_mod(triple, 5))
    assert rep.verdict == "Inconclusive"
    assert rep.ell_gt_5 is False


def test_reduce_mod_rejects_denominator_primes(triple):
    n = triple.denominator()
    bad = next(p for p in (2, 3, 5, 7, 11, 13) if n % p == 0) \
        if any(n % p == 0 for p in (2, 3, 5, 7, 11, 13)) else None
    if bad is None:
        pytest.skip("realized denominator is a unit at all small primes")
    if bad == 2:
        with pytest.raises((DenominatorClash, InvalidCharacteristic)):
            reduce_mod(triple, bad)
    else:
        with pytest.raises(DenominatorClash):
            reduce_mod(triple, bad)


def test_reduce_mod_2_rejected(triple):
    with pytest.raises(InvalidCharacteristic):
        reduce_mod(triple, 2)


def test_generation_certificate_requires_finite_field(triple):
    with pytest.raises(ValueError):
        generation_certificate(triple)


def test_stabilizes_detects_failure():
    bad = rational_matrix([[2 if i == j else 0 for j in range(7)]
                           for i in range(7)])
    assert not stabilizes(bad, (dickson_form(), g2_bilinear()))
