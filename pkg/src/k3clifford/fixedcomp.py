"""Arithmetic that rules out fixed components and isotropic decompositions.

Each closed-form value used below is also recomputed through the pairing; a
disagreement raises InternalInconsistency rather than producing a report.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from k3clifford.classifier import (
    IsotropicCase,
    MinusTwoCase,
    MinusTwoRecord,
    isotropic_primitive,
    minus_two_closed_form,
)
from k3clifford.errors import InternalInconsistency, PreconditionViolation
from k3clifford.lattice import C, H, DivisorClass, Regime, SurfaceParams, discriminant, intersect, require_regime, self_int


class Target(str, enum.Enum):
    PENCIL_C_MINUS_H = "PencilCminusH"
    GENERAL_D = "GeneralD"


class Contradiction(str, enum.Enum):
    NO_CANDIDATE_F = "NoCandidateF"
    M_DOT_C_NONPOSITIVE = "MdotCNonpositive"
    CF_DOT_C_NONPOSITIVE = "CFdotCNonpositive"
    BOX_EMPTY = "BoxEmpty"
    ONLY_TWO_H = "OnlyTwoH"


@dataclass(frozen=True)
class ExclusionReport:
    """Outcome of one exclusion argument.

    ``contradiction`` is None when the argument did not go through.
    """

    params: SurfaceParams
    target: Target
    contradiction: Contradiction | None
    candidate_F: MinusTwoRecord | None = None
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.contradiction is not None

    def as_dict(self) -> dict:
        return {
            "target": self.target.value,
            "contradiction": None if self.contradiction is None else self.contradiction.value,
            "candidate_F": None if self.candidate_F is None else self.candidate_F.as_dict(),
            "detail": self.detail,
        }


def _agree(name: str, closed: int | Fraction, paired: int) -> int:
    if closed != paired:
        raise InternalInconsistency(f"{name}: closed form gives {closed}, pairing gives {paired}")
    return paired


def _check_pre(p: SurfaceParams) -> None:
    require_regime(p, Regime.BASE)
    if p.s < -1:
        raise PreconditionViolation(f"needs s >= -1, got s={p.s}")


def _no_s_minus_3(records: Iterable[MinusTwoRecord]) -> list[MinusTwoRecord]:
    records = list(records)
    assert not any(
        r.case in (MinusTwoCase.C_MINUS_H, MinusTwoCase.G_THIRDS_H_MINUS_C) for r in records
    ), "s = -3 cases cannot occur when s >= -1"
    return records


def check_pencil_c_minus_h(p: SurfaceParams) -> ExclusionReport:
    """Show |C - H| has no fixed component.

    A fixed component F would need F.H <= d-9; the only such case is
    F = ((s+5)/2)H - C, and then M = C - H - F has M.C <= 0.
    """
    _check_pre(p)
    s = p.s
    cmh = DivisorClass(-1, 1)
    sq = _agree("(C-H)^2", 2 * s + 4, self_int(p, cmh))
    detail: dict = {"C_minus_H_squared": sq}
    if sq < 2:
        return ExclusionReport(p, Target.PENCIL_C_MINUS_H, None, detail=detail)
    candidates = [r for r in _no_s_minus_3(minus_two_closed_form(p)) if r.r <= p.d - 9]
    if not candidates:
        return ExclusionReport(p, Target.PENCIL_C_MINUS_H, Contradiction.NO_CANDIDATE_F, detail=detail)
    (F,) = candidates
    assert F.case is MinusTwoCase.HALF_S_PLUS_5_H_MINUS_C
    M = cmh - F.cls
    mc = _agree("M.C", Fraction(-(3 * s * s + 6 * s - 9), 4), intersect(p, M, C))
    detail.update({"M": [M.m, M.n], "M_dot_C": mc})
    verdict = Contradiction.M_DOT_C_NONPOSITIVE if mc <= 0 else None
    return ExclusionReport(p, Target.PENCIL_C_MINUS_H, verdict, F, detail)


@dataclass(frozen=True)
class ExceptionalCandidate:
    params: SurfaceParams
    F: MinusTwoRecord
    C_minus_F_dot_C: int

    @property
    def survives(self) -> bool:
        return self.C_minus_F_dot_C > 0


def exceptional_candidates(p: SurfaceParams) -> list[ExceptionalCandidate]:
    """(-2)-classes F with 1 <= F.H <= d-6, paired with (C - F).C."""
    _check_pre(p)
    s = p.s
    out = []
    for F in _no_s_minus_3(minus_two_closed_form(p)):
        if not 1 <= F.r <= p.d - 6:
            continue
        if F.case is MinusTwoCase.S_PLUS_4_H_MINUS_C:
            closed: int | Fraction = -(3 * s * s + 12 * s + 4)
        else:
            closed = Fraction(-(3 * s * s - 59), 4)
        val = _agree("(C-F).C", closed, intersect(p, C - F.cls, C))
        out.append(ExceptionalCandidate(p, F, val))
    return out


def exceptional_triples(scan: Iterable[SurfaceParams]) -> list[SurfaceParams]:
    """Parameters where (C - F).C > 0, so the generic argument does not exclude F."""
    return [p for p in scan if any(c.survives for c in exceptional_candidates(p))]


def _box_bounds(p: SurfaceParams, x_rng: tuple[int, int], y_rng: tuple[int, int]):
    """n-range from eliminating m: d*(D.H) - 6*(D.C) = disc * n."""
    disc = discriminant(p)
    lo = p.d * x_rng[0] - 6 * y_rng[1]
    hi = p.d * x_rng[1] - 6 * y_rng[0]
    return lo, hi, disc, -(-lo // disc), hi // disc


def box_solutions(p: SurfaceParams, F: DivisorClass, widen: int = 1) -> tuple[list[DivisorClass], dict]:
    """Integer classes X = C - D with F.H+3 <= X.H <= C.H-3 and F.C+1 <= X.C <= C.C-1.

    ``widen`` > 1 scans a proportionally larger rectangle than the elimination
    bound, which is how the tests confirm the bound loses nothing.
    """
    x_rng = (intersect(p, F, H) + 3, p.d - 3)
    y_rng = (intersect(p, F, C) + 1, self_int(p, C) - 1)
    lo, hi, disc, n_lo, n_hi = _box_bounds(p, x_rng, y_rng)
    if widen > 1:
        span = max(abs(n_lo), abs(n_hi), 1) * widen
        n_lo, n_hi = -span, span
    sols = []
    for n in range(n_lo, n_hi + 1):
        m_lo = -(-(x_rng[0] - p.d * n) // 6)
        m_hi = (x_rng[1] - p.d * n) // 6
        if widen > 1:
            w = max(abs(m_lo), abs(m_hi), 1) * widen
            m_lo, m_hi = -w, w
        for m in range(m_lo, m_hi + 1):
            X = DivisorClass(m, n)
            if x_rng[0] <= intersect(p, X, H) <= x_rng[1] and y_rng[0] <= intersect(p, X, C) <= y_rng[1]:
                sols.append(X)
    detail = {
        "DH_range": list(x_rng),
        "DC_range": list(y_rng),
        "elimination": [lo, disc, hi],
        "n_range": [-(-lo // disc), hi // disc],
        "solutions": [[X.m, X.n] for X in sols],
    }
    return sols, detail


def exceptional_box_check(p: SurfaceParams) -> ExclusionReport:
    """Rule out a fixed component F of |C - D| at an exceptional (g, s) by direct enumeration."""
    survivors = [c for c in exceptional_candidates(p) if c.survives]
    if not survivors:
        raise PreconditionViolation(f"(g={p.g}, s={p.s}) is not an exceptional parameter")
    (cand,) = survivors
    sols, detail = box_solutions(p, cand.F.cls)
    if not sols:
        verdict: Contradiction | None = Contradiction.BOX_EMPTY
    elif sols == [DivisorClass(2, 0)]:
        # |2H| is base point free
        verdict = Contradiction.ONLY_TWO_H
    else:
        verdict = None
    return ExclusionReport(p, Target.GENERAL_D, verdict, cand.F, detail)


def _c_minus_2e_closed(p: SurfaceParams, case: IsotropicCase) -> int | Fraction:
    s = p.s
    if case is IsotropicCase.S_PLUS_3_H_MINUS_C:
        return -2 * (s + 3) * (3 * s + 1)
    if case is IsotropicCase.THREE_C_MINUS_4H:
        return -16 * (s + 1)
    if case is IsotropicCase.HALF_S_PLUS_4_H_MINUS_C:
        return Fraction(-(s + 4) * (3 * s - 8), 2)
    return -10 * (s - 1)


def no_isotropic_decomposition(p: SurfaceParams) -> ExclusionReport:
    """For each primitive isotropic E, C.(C - 2E) < 0, so C - rE cannot split off cleanly."""
    _check_pre(p)
    records = isotropic_primitive(p)
    if not records:
        return ExclusionReport(p, Target.GENERAL_D, Contradiction.NO_CANDIDATE_F, detail={"isotropic": []})
    rows = []
    for rec in records:
        val = _agree("C.(C-2E)", _c_minus_2e_closed(p, rec.case), intersect(p, C, C - rec.cls.scale(2)))
        rows.append({"E": [rec.cls.m, rec.cls.n], "E_dot_C": intersect(p, rec.cls, C), "C_dot_C_minus_2E": val})
    verdict = Contradiction.CF_DOT_C_NONPOSITIVE if all(r["C_dot_C_minus_2E"] < 0 for r in rows) else None
    return ExclusionReport(p, Target.GENERAL_D, verdict, detail={"isotropic": rows})
