import pytest

import oracle
from k3clifford.errors import PreconditionViolation
from k3clifford.fixedcomp import (
    Contradiction,
    box_solutions,
    check_pencil_c_minus_h,
    exceptional_box_check,
    exceptional_candidates,
    exceptional_triples,
    no_isotropic_decomposition,
)
from k3clifford.lattice import new_params


def grid(s_lo=-1, s_hi=25, rel_lo=13, rel_hi=80):
    for s in range(s_lo, s_hi + 1):
        for g in range(2 * s + rel_lo, 2 * s + rel_hi + 1):
            yield new_params(g, s)


def test_pencil_mdotc_zero_at_15_1():
    rep = check_pencil_c_minus_h(new_params(15, 1))
    assert rep.contradiction is Contradiction.M_DOT_C_NONPOSITIVE
    assert rep.detail["M_dot_C"] == 0


def test_pencil_no_candidate_at_14_0():
    rep = check_pencil_c_minus_h(new_params(14, 0))
    assert rep.contradiction is Contradiction.NO_CANDIDATE_F
    # no (-2)-class of degree <= d - 9 = 5
    assert oracle.minus_two_classes(14, 0, 5) == set()


def test_pencil_at_20_3():
    rep = check_pencil_c_minus_h(new_params(20, 3))
    assert rep.contradiction is Contradiction.M_DOT_C_NONPOSITIVE
    M = rep.detail["M"]
    assert M == [-5, 2]
    assert rep.detail["M_dot_C"] == oracle.pair(20, 3, M, (0, 1)) == -9


def test_pencil_always_excluded_in_regime():
    for p in grid():
        assert check_pencil_c_minus_h(p).ok


def test_pencil_precondition():
    with pytest.raises(PreconditionViolation):
        check_pencil_c_minus_h(new_params(20, -3))


def test_exceptional_triples_on_grid():
    found = [(p.g, p.s) for p in exceptional_triples(grid())]
    assert found == [(12, -1), (15, 1), (20, 3)]


@pytest.mark.parametrize("g,s,F", [(16, 0, (4, -1)), (25, 5, (5, -1))])
def test_excluded_candidates(g, s, F):
    (cand,) = exceptional_candidates(new_params(g, s))
    assert cand.F.cls == F
    assert cand.C_minus_F_dot_C == oracle.pair(g, s, (-F[0], 1 - F[1]), (0, 1)) == -4
    assert not cand.survives


def test_box_12_minus_1():
    rep = exceptional_box_check(new_params(12, -1))
    assert rep.contradiction is Contradiction.BOX_EMPTY
    assert rep.detail["DH_range"] == [8, 10]
    assert rep.detail["DC_range"] == [18, 21]
    assert rep.detail["elimination"] == [-22, 37, 22]
    assert rep.detail["n_range"] == [0, 0]


def test_box_15_1():
    rep = exceptional_box_check(new_params(15, 1))
    assert rep.contradiction is Contradiction.BOX_EMPTY
    assert rep.detail["DC_range"] == [15, 27]
    # every value of D.C = 14m + 28n is a multiple of 14
    assert not any(v % 14 == 0 for v in range(15, 28))


def test_box_20_3():
    rep = exceptional_box_check(new_params(20, 3))
    assert rep.contradiction is Contradiction.ONLY_TWO_H
    assert rep.detail["DH_range"] == [10, 14]
    assert rep.detail["DC_range"] == [31, 37]
    assert rep.detail["elimination"] == [-52, 61, 52]
    assert rep.detail["solutions"] == [[2, 0]]


@pytest.mark.parametrize("g,s", [(12, -1), (15, 1), (20, 3)])
def test_box_stable_under_widening(g, s):
    p = new_params(g, s)
    (cand,) = [c for c in exceptional_candidates(p) if c.survives]
    narrow, _ = box_solutions(p, cand.F.cls)
    wide, _ = box_solutions(p, cand.F.cls, widen=2)
    assert narrow == wide


def test_box_rejects_ordinary_params():
    with pytest.raises(PreconditionViolation):
        exceptional_box_check(new_params(14, 0))


@pytest.mark.parametrize("g,s,E,value", [(13, 0, (3, -1), -6), (21, 4, (4, -1), -16)])
def test_no_isotropic_decomposition(g, s, E, value):
    rep = no_isotropic_decomposition(new_params(g, s))
    assert rep.contradiction is Contradiction.CF_DOT_C_NONPOSITIVE
    rows = {tuple(r["E"]): r["C_dot_C_minus_2E"] for r in rep.detail["isotropic"]}
    assert rows[E] == value == oracle.pair(g, s, (0, 1), (-2 * E[0], 1 - 2 * E[1]))


def test_no_isotropic_candidate():
    assert no_isotropic_decomposition(new_params(14, 0)).contradiction is Contradiction.NO_CANDIDATE_F


def test_isotropic_decomposition_excluded_in_regime():
    for p in grid():
        assert no_isotropic_decomposition(p).ok
