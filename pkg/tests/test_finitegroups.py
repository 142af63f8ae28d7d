import pytest

from g2rigid.errors import (BadCharacteristic, BadResidue, TooSmallPrime)
from g2rigid.finitegroups import (FiniteMatrixGroup, adjoint_decomposition,
                                  bigness_check, build_h56,
                                  conjugacy_classes, fixed_space_dim, h1_dim,
                                  sym_power_rep)
from g2rigid.matrix import Matrix
from g2rigid.rings import PrimeField


@pytest.fixture(scope="module")
def h29():
    return build_h56(29)


def test_h_order_and_classes(h29):
    assert h29.order == 56
    classes = conjugacy_classes(h29)
    assert len(classes) == 8
    assert sorted(len(c) for c in classes) == [1, 7, 8, 8, 8, 8, 8, 8]


def test_h_class_equation(h29):
    classes = conjugacy_classes(h29)
    assert sum(len(c) for c in classes) == 56


def test_h_adjoint_decomposition(h29):
    rep = adjoint_decomposition(h29)
    assert rep.dimension == 49
    assert rep.pairs == ((1, 7), (7, 6))


def test_h_requires_seventh_roots():
    # the monomial model needs a primitive 7th root of unity mod ellprime
    with pytest.raises(BadResidue):
        build_h56(31)
    with pytest.raises(BadResidue):
        build_h56(7)


def test_h_cohomology_vanishes(h29):
    assert fixed_space_dim(h29) == 0
    assert h1_dim(h29) == 0


def test_h_bigness_honest_failure(h29):
    """Adjoint H^0 and H^1 vanish and every 7-dimensional summand has an
    eigenspace witness, but the six summands on which the group acts by a
    nontrivial character admit none: every candidate element of order 7
    scales such a line by a nontrivial root of unity, so each corner
    functional vanishes there identically.  The verdict is Fails."""
    rep = bigness_check(h29)
    assert rep.h0_ad0_dim == 0
    assert rep.h1_ad0_dim == 0
    witnessed_dims = sorted(int(d) for _, d, _, _ in rep.witnesses)
    assert witnessed_dims.count(7) == 6
    assert rep.failures  # the character-line summands
    assert all("dimension 1" in f or "1-dimensional" in f
               for f in rep.failures if "no eigenspace witness" in f)
    assert rep.verdict == "Fails"


def test_scalar_group_bigness_trivial_case():
    F = PrimeField(29)
    group = FiniteMatrixGroup(F, 2, [Matrix.scalar(F, 2, F.from_int(-1))])
    assert group.order == 2
    assert h1_dim(group) == 0
    # adjoint action is trivial, so H^0(ad^0) is the full trace-zero space
    assert fixed_space_dim(group) == 3


def test_sl2_sym6_adjoint_constituents():
    rep = sym_power_rep(17, 6)
    d = adjoint_decomposition(rep)
    assert d.dimension == 49
    assert d.pairs == ((1, 1), (3, 1), (5, 1), (7, 1), (9, 1), (11, 1),
                       (13, 1))


def test_sl2_sym2_adjoint_constituents():
    rep = sym_power_rep(11, 2)
    d = adjoint_decomposition(rep)
    assert d.dimension == 9
    assert d.pairs == ((1, 1), (3, 1), (5, 1))


def test_sl2_rejects_small_characteristic():
    with pytest.raises(TooSmallPrime):
        sym_power_rep(13, 6)  # needs ell > 2m + 1 headroom for splitting
    with pytest.raises(BadCharacteristic):
        sym_power_rep(4, 2)
