"""Minimisation of D.C - D^2 - 2 over the admissible region, and the rank-2 bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from k3clifford.errors import (
    BoundViolation,
    DegenerateDiscriminant,
    ExternalResultRequired,
    GammaTooSmall,
    InvalidRank,
)
from k3clifford.lattice import DivisorClass, Regime, SurfaceParams, discriminant, new_params, require_regime

PENCIL_ASSUMPTION = (
    "Cliff(C) is computed by a pencil cut out by a divisor D on S; "
    "only the lattice inequality on D is verified here"
)


def f_value(p: SurfaceParams, m: int, n: int) -> int:
    """Clifford index of D|_C for D = mH + nC, i.e. D.C - D^2 - 2."""
    return -6 * m * m + (1 - 2 * n) * p.d * m + (n - n * n) * (2 * p.g - 2) - 2


class Constraints(NamedTuple):
    positive_square: bool
    degree_window: bool
    half_degree: bool

    def __bool__(self) -> bool:  # all three hold
        return self.positive_square and self.degree_window and self.half_degree


def admissible(p: SurfaceParams, m: int, n: int) -> Constraints:
    """Evaluate the three constraints on D = mH + nC.

    - D^2 > 0, written as 3m^2 + mnd + n^2(g-1) > 0
    - 3 <= D.H <= d - 3
    - deg D|_C <= g - 1, written as md + (2n-1)(g-1) <= 0
    """
    d, g1 = p.d, p.g - 1
    return Constraints(
        3 * m * m + m * n * d + n * n * g1 > 0,
        3 <= 6 * m + n * d <= d - 3,
        m * d + (2 * n - 1) * g1 <= 0,
    )


@dataclass(frozen=True)
class AdmissiblePoint:
    cls: DivisorClass
    f_value: int
    constraints: Constraints


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _ceil_ratio_sqrt(num: int, disc: int) -> int:
    """Smallest k >= 0 with k * sqrt(disc) >= num, for num >= 0."""
    k = math.isqrt(num * num // disc)
    while k * k * disc < num * num:
        k += 1
    return k


@dataclass(frozen=True)
class EnumerationBounds:
    """A box proven to contain every admissible point.

    For n < 0 the degree window and the half-degree constraint together force
    |n| * disc <= 6(g-1) - 3d. For n > 0 a positive square forces m/n > -b
    (the smaller root), which with D.H <= d-3 gives n * sqrt(disc) < d - 3.
    """

    d: int
    n_lo: int
    n_hi: int

    def m_range(self, n: int) -> tuple[int, int]:
        return _ceil_div(3 - n * self.d, 6), (self.d - 3 - n * self.d) // 6


def enumeration_bounds(p: SurfaceParams) -> EnumerationBounds:
    disc = discriminant(p)
    if disc <= 0:
        raise DegenerateDiscriminant(f"discriminant {disc} <= 0 for (g={p.g}, s={p.s})")
    n_lo = -(max(0, 6 * (p.g - 1) - 3 * p.d) // disc)
    n_hi = _ceil_ratio_sqrt(p.d - 3, disc)
    return EnumerationBounds(p.d, n_lo, n_hi)


def admissible_points(p: SurfaceParams) -> list[AdmissiblePoint]:
    bounds = enumeration_bounds(p)
    pts = []
    for n in range(bounds.n_lo, bounds.n_hi + 1):
        lo, hi = bounds.m_range(n)
        for m in range(lo, hi + 1):
            c = admissible(p, m, n)
            if c:
                pts.append(AdmissiblePoint(DivisorClass(m, n), f_value(p, m, n), c))
    return pts


def admissible_window_scan(p: SurfaceParams, m_span: int, n_span: int) -> list[DivisorClass]:
    """Admissible classes with |m| <= m_span, |n| <= n_span, by plain search."""
    return [
        DivisorClass(m, n)
        for n in range(-n_span, n_span + 1)
        for m in range(-m_span, m_span + 1)
        if admissible(p, m, n)
    ]


def min_clifford_pencil(p: SurfaceParams) -> tuple[int, list[DivisorClass]] | None:
    """Minimum of f over the admissible set and every class attaining it, ordered by (n, m)."""
    pts = admissible_points(p)
    if not pts:
        return None
    best = min(pt.f_value for pt in pts)
    argmin = sorted((pt.cls for pt in pts if pt.f_value == best), key=lambda c: (c.n, c.m))
    return best, argmin


@dataclass(frozen=True)
class RootBounds:
    """The roots a > b of 6x^2 - 2dx + 2g - 2, held as (d, disc) with disc = d^2 - 12(g-1).

    a = (d + sqrt(disc))/6 and b = (d - sqrt(disc))/6; comparisons square both sides.
    """

    d: int
    disc: int
    g: int

    def b_exceeds(self, q: Fraction) -> bool:
        """b > q, i.e. d - 6q > sqrt(disc)."""
        lhs = self.d - 6 * Fraction(q)
        return lhs > 0 and lhs * lhs > self.disc

    def b_below(self, q: Fraction) -> bool:
        """b < q, i.e. sqrt(disc) > d - 6q."""
        lhs = self.d - 6 * Fraction(q)
        return lhs < 0 or lhs * lhs < self.disc

    @property
    def identity_holds(self) -> bool:
        # b is a root iff disc = d^2 - 12(g-1); then a + b = d/3 and 6ab = 2g - 2
        return self.d * self.d - self.disc == 12 * (self.g - 1)


def root_bounds(p: SurfaceParams) -> RootBounds:
    """Check 1 < b < 2, i.e. (d-12)^2 < disc < (d-6)^2 when d >= 12.

    Only the base regime is required, so the bound can be probed just outside
    the theorem regime; inside it the bound must hold.
    """
    require_regime(p, Regime.BASE)
    rb = RootBounds(p.d, discriminant(p), p.g)
    assert rb.identity_holds
    if not (rb.b_exceeds(Fraction(1)) and rb.b_below(Fraction(2))):
        raise BoundViolation(f"1 < b < 2 fails for (g={p.g}, s={p.s}): d={p.d}, disc={rb.disc}")
    return rb


def gamma_of_bundle(rank: int, degree: int, h0: int) -> Fraction:
    if rank < 1:
        raise InvalidRank(f"rank must be >= 1, got {rank}")
    return Fraction(degree - 2 * (h0 - rank), rank)


@dataclass(frozen=True)
class CliffordCertificate:
    params: SurfaceParams
    cliff_max: int
    admissible_min: tuple[int, list[DivisorClass]] | None
    theorem_holds: bool
    gamma_rank2: Fraction
    mercat_lower: Fraction
    cliff2_equal: bool
    gap_strict: bool
    assumptions: tuple[str, ...] = (PENCIL_ASSUMPTION,)

    def as_dict(self) -> dict:
        amin = self.admissible_min
        return {
            "cliff_max": self.cliff_max,
            "admissible_min": None
            if amin is None
            else {"f_value": amin[0], "argmin": [[c.m, c.n] for c in amin[1]]},
            "theorem_holds": self.theorem_holds,
            "gamma_rank2": str(self.gamma_rank2),
            "mercat_lower": str(self.mercat_lower),
            "cliff2_equal": self.cliff2_equal,
            "gap_strict": self.gap_strict,
            "assumptions": list(self.assumptions),
        }


def clifford_certificate(p: SurfaceParams) -> CliffordCertificate:
    """Evaluate the Clifford-index inequality for any base-regime parameters."""
    cliff_max = (p.g - 1) // 2
    amin = min_clifford_pencil(p)
    holds = amin is None or amin[0] >= cliff_max
    # a rank-2 bundle of degree g - s with four sections
    gamma2 = gamma_of_bundle(2, p.d, 4)
    mercat = Fraction(cliff_max, 2) + 2
    return CliffordCertificate(
        params=p,
        cliff_max=cliff_max,
        admissible_min=amin,
        theorem_holds=holds,
        gamma_rank2=gamma2,
        mercat_lower=mercat,
        cliff2_equal=gamma2 == mercat,
        gap_strict=gamma2 < cliff_max,
    )


def verify_theorem31(p: SurfaceParams) -> CliffordCertificate:
    require_regime(p, Regime.THEOREM)
    return clifford_certificate(p)


def witness_genera(gamma: int) -> tuple[int, int]:
    return 2 * gamma + 1, 2 * gamma + 2


def witness_offset(g: int) -> int:
    return (g - 14) // 2


def witness_for_gamma(gamma: int, g: int | None = None) -> tuple[SurfaceParams, CliffordCertificate]:
    """Parameters and certificate for a curve with Clifford index gamma and Cliff_2 = gamma/2 + 2.

    ``g`` picks one of the two witness genera 2*gamma+1 (default) or 2*gamma+2.
    """
    if gamma < 5:
        raise GammaTooSmall(f"gamma must be >= 5, got {gamma}")
    genera = witness_genera(gamma)
    g = genera[0] if g is None else g
    if g not in genera:
        raise ValueError(f"genus {g} is not a witness genus for gamma={gamma}; expected one of {genera}")
    if g == 11:
        raise ExternalResultRequired("genus 11 lies outside the verified range; it rests on a separate result")
    p = new_params(g, witness_offset(g), Regime.THEOREM)
    cert = verify_theorem31(p)
    assert cert.cliff_max == gamma
    return p, cert
