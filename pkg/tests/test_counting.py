import itertools

import pytest
from hypothesis import given, settings, strategies as st

from g2rigid.counting import (count_naive, count_transfer, fiber_factors,
                              quad_char, series_term)
from g2rigid.errors import NotInBase, TooLarge
from g2rigid.rings import PrimeField, ext_field

F3 = PrimeField(3)
F5 = PrimeField(5)


def _brute(field_, s, variant="consecutive"):
    """Independent oracle: evaluate the factored fiber polynomial pointwise."""
    ff = fiber_factors(s, ring=field_, variant=variant)
    nz = 0
    tchi = 0
    for point in itertools.product(field_.elements(), repeat=6):
        v = ff.value_at(field_, list(point))
        c = quad_char(field_, v)
        if c:
            nz += 1
        tchi += c
    return nz, tchi


def test_f3_worked_example():
    # spot value frozen from the independent pointwise oracle
    assert _brute(F3, F3.from_int(2)) == (5, -1)


@pytest.mark.parametrize("field_,svals", [
    (F3, [2]),
    (F5, [2, 3, 4]),
])
def test_naive_matches_brute(field_, svals):
    for s in svals:
        se = field_.from_int(s)
        assert count_naive(field_, se) == _brute(field_, se)


@pytest.mark.parametrize("field_,svals", [
    (F3, [2]),
    (F5, [2, 3, 4]),
])
def test_transfer_matches_naive(field_, svals):
    for s in svals:
        se = field_.from_int(s)
        _, tchi = count_naive(field_, se)
        assert count_transfer(field_, se) == tchi


def test_transfer_matches_naive_extensions():
    F9 = ext_field(3, 2)
    s9 = F9.from_int(2)
    _, t9 = count_naive(F9, s9)
    assert count_transfer(F9, s9) == t9 == 277

    F25 = ext_field(5, 2)
    s25 = F25.from_int(2)
    assert count_transfer(F25, s25) == -5051


def test_cyclic_variant_consistent():
    s = F5.from_int(3)
    n_nz, n_chi = count_naive(F5, s, variant="cyclic")
    assert count_transfer(F5, s, variant="cyclic") == n_chi
    assert _brute(F5, s, variant="cyclic") == (n_nz, n_chi)


def test_trivial_character_counts_nonzero_fibers():
    s = F5.from_int(2)
    n_nz, _ = count_naive(F5, s)
    t_triv = count_transfer(F5, s, trivial_character=True)
    # with chi replaced by the trivial character the sum counts points
    # where every factor is nonzero
    assert t_triv == count_naive(F5, s, trivial_character=True)[1]
    assert t_triv <= 5 ** 6


def test_chi_plus_trivial_double_counts_squares():
    # N_square-fibers relation: (triv + chi)/2 counts points with f_s a
    # nonzero square
    s = F3.from_int(2)
    _, tchi = count_naive(F3, s)
    ttriv = count_naive(F3, s, trivial_character=True)[1]
    assert (ttriv + tchi) % 2 == 0
    ff = fiber_factors(s, ring=F3)
    squares = sum(
        1 for point in itertools.product(F3.elements(), repeat=6)
        if quad_char(F3, ff.value_at(F3, list(point))) == 1)
    assert (ttriv + tchi) // 2 == squares


def test_modulus_independence():
    t0, _ = series_term(3, 2, 3)
    t1, _ = series_term(3, 2, 3, modulus_skip=1)
    assert t0 == t1


def test_series_term_cross_check_flags():
    t1, crossed1 = series_term(3, 2, 1)
    assert crossed1 and t1 == -1
    t4, crossed4 = series_term(3, 2, 4, naive_budget=10 ** 5)
    assert not crossed4  # 3^8 points exceed the budget for the naive pass


def test_bad_parameters():
    with pytest.raises(NotInBase):
        count_transfer(F3, F3.zero)
    with pytest.raises(NotInBase):
        count_transfer(F3, F3.one)
    with pytest.raises(TooLarge):
        series_term(3, 2, 12)


def test_fiber_factor_count_and_degree():
    ff = fiber_factors(F5.from_int(2), ring=F5)
    assert len(ff.factors) == 13
    ffc = fiber_factors(F5.from_int(2), ring=F5, variant="cyclic")
    assert len(ffc.factors) == 14


@settings(deadline=None, max_examples=10)
@given(st.integers(2, 4))
def test_quad_char_multiplicative(a):
    F = F5
    x, y = F.from_int(a), F.from_int(3)
    assert quad_char(F, F.mul(x, y)) == quad_char(F, x) * quad_char(F, y)
