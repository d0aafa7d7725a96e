import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from k3clifford.clifford import (
    admissible,
    admissible_points,
    admissible_window_scan,
    clifford_certificate,
    enumeration_bounds,
    f_value,
    gamma_of_bundle,
    min_clifford_pencil,
    root_bounds,
    verify_theorem31,
    witness_for_gamma,
)
from k3clifford.errors import BoundViolation, ExternalResultRequired, GammaTooSmall, InvalidRank, RegimeViolation
from k3clifford.lattice import C, DivisorClass, Regime, intersect, new_params, self_int


def test_f_examples():
    p = new_params(14, 0)
    assert f_value(p, -1, 1) == p.d - 8 == 6
    assert f_value(p, 1, 0) == 6
    assert f_value(new_params(30, 8), 0, 0) == -2


@given(st.integers(-1, 40), st.integers(0, 200), st.integers(-100, 100), st.integers(-100, 100))
def test_f_identity(s, rel, m, n):
    p = new_params(2 * s + 13 + rel, s)
    D = DivisorClass(m, n)
    assert f_value(p, m, n) == intersect(p, C, D) - self_int(p, D) - 2


@given(st.integers(-1, 40), st.integers(0, 200), st.integers(-100, 100), st.integers(-100, 100))
def test_positive_square_constraint_is_self_int(s, rel, m, n):
    p = new_params(2 * s + 13 + rel, s)
    assert admissible(p, m, n).positive_square == (self_int(p, DivisorClass(m, n)) > 0)


def test_admissible_examples():
    assert tuple(admissible(new_params(14, 0), -1, 1)) == (True, True, True)
    assert tuple(admissible(new_params(13, 0), 1, 0)) == (True, True, False)
    assert not admissible(new_params(14, 0), -3, 2).positive_square


def test_enumeration_bounds_examples():
    b = enumeration_bounds(new_params(14, 0))
    assert (b.n_lo, b.n_hi) == (0, 2)
    b = enumeration_bounds(new_params(12, -1))
    assert b.n_hi >= 1
    lo, hi = b.m_range(1)
    assert lo <= -1 <= hi


def test_bounds_contain_window_scan_50_18():
    p = new_params(50, 18)
    inside = {pt.cls for pt in admissible_points(p)}
    assert inside == set(oracle.admissible_set(50, 18, 50))


def test_bounds_complete_on_random_params():
    rng = random.Random(7)
    for _ in range(30):
        s = rng.randint(-1, 30)
        p = new_params(rng.randint(2 * s + 13, 2 * s + 100), s)
        b = enumeration_bounds(p)
        span_n = 2 * max(abs(b.n_lo), abs(b.n_hi), 1)
        span_m = 2 * max(max(abs(x) for x in b.m_range(n)) for n in (b.n_lo, b.n_hi))
        assert {pt.cls for pt in admissible_points(p)} == set(admissible_window_scan(p, span_m, span_n))


@pytest.mark.parametrize(
    "g,s,expected",
    [(14, 0, (6, [(-1, 1)])), (13, 0, (5, [(-1, 1)])), (12, -1, (5, [(-1, 1)])), (30, 8, (14, [(1, 0)]))],
)
def test_min_clifford_pencil(g, s, expected):
    assert min_clifford_pencil(new_params(g, s)) == expected
    assert oracle.min_f(g, s, 60) == expected


def test_sharpness_at_13_0():
    best, argmin = min_clifford_pencil(new_params(13, 0))
    assert best < (13 - 1) // 2
    assert DivisorClass(-1, 1) in argmin


def test_verify_theorem31_examples():
    cert = verify_theorem31(new_params(14, 0, Regime.THEOREM))
    assert cert.theorem_holds and cert.gamma_rank2 == 5 and cert.cliff_max == 6
    cert = verify_theorem31(new_params(30, 8, Regime.THEOREM))
    assert cert.theorem_holds and cert.gamma_rank2 == 9 and cert.cliff_max == 14
    assert cert.gap_strict
    with pytest.raises(RegimeViolation):
        verify_theorem31(new_params(13, 0))


def test_admissible_set_never_empty_in_theorem_regime():
    # H is admissible once s >= 1 and C - H while s <= 1
    for s in range(-1, 40):
        for g in range(2 * s + 14, 2 * s + 120):
            p = new_params(g, s, Regime.THEOREM)
            assert (s >= 1 and admissible(p, 1, 0)) or (s <= 1 and admissible(p, -1, 1))
            assert clifford_certificate(p).admissible_min is not None


def test_gamma_of_bundle():
    assert gamma_of_bundle(2, 14, 4) == 5
    assert gamma_of_bundle(1, 0, 1) == 0
    assert gamma_of_bundle(2, 15, 4) == Fraction(11, 2)
    with pytest.raises(InvalidRank):
        gamma_of_bundle(0, 3, 1)


def test_witness_examples():
    p, cert = witness_for_gamma(6, 14)
    assert (p.g, p.s) == (14, 0)
    assert cert.gamma_rank2 == 5 == Fraction(6, 2) + 2 and cert.cliff2_equal
    p, cert = witness_for_gamma(7)
    assert (p.g, p.s) == (15, 0)
    assert cert.gamma_rank2 == Fraction(11, 2) and cert.cliff2_equal
    assert min_clifford_pencil(p)[0] >= 7


def test_witness_errors():
    with pytest.raises(GammaTooSmall):
        witness_for_gamma(4)
    with pytest.raises(ExternalResultRequired):
        witness_for_gamma(5)
    p, cert = witness_for_gamma(5, 12)
    assert (p.g, p.s) == (12, -1) and cert.cliff2_equal
    with pytest.raises(ValueError):
        witness_for_gamma(6, 20)


@pytest.mark.parametrize("g,s,lo,disc,hi", [(14, 0, 4, 40, 64), (16, 1, 9, 45, 81), (13, 0, 1, 25, 49)])
def test_root_bounds(g, s, lo, disc, hi):
    rb = root_bounds(new_params(g, s))
    assert rb.disc == disc
    assert (rb.d - 12) ** 2 == lo and (rb.d - 6) ** 2 == hi
    assert lo < disc < hi
    assert rb.identity_holds


def test_root_bounds_failure_outside_regime():
    # s = -3 gives b < 1 here
    with pytest.raises(BoundViolation):
        root_bounds(new_params(30, -3))


def test_root_bounds_hold_in_theorem_regime():
    for s in range(-1, 40):
        for g in range(2 * s + 14, 2 * s + 120):
            root_bounds(new_params(g, s, Regime.THEOREM))


def test_rank2_sandwich():
    for s in range(-1, 31):
        for g in range(2 * s + 14, 2 * s + 101):
            cert = verify_theorem31(new_params(g, s, Regime.THEOREM))
            assert cert.gamma_rank2 >= cert.mercat_lower
            assert (cert.gamma_rank2 == cert.mercat_lower) == (s == (g - 14) // 2)
