"""(-2)-classes, primitive isotropic classes and ampleness of C.

Each classification comes in two independent forms: an exhaustive search over
the lattice, and the closed-form list of cases. Tests check that they agree.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterator

from k3clifford.errors import ClassificationMismatch, DegenerateDiscriminant, PreconditionViolation
from k3clifford.lattice import H, DivisorClass, SurfaceParams, discriminant, intersect, self_int


class MinusTwoCase(str, enum.Enum):
    GENERIC_HIGH_DEGREE = "F.H>=d-5"
    C_MINUS_H = "s=-3, F=C-H"
    G_THIRDS_H_MINUS_C = "s=-3, 3|g, F=(g/3)H-C"
    S_PLUS_4_H_MINUS_C = "g=4s+16, F=(s+4)H-C"
    HALF_S_PLUS_5_H_MINUS_C = "g=5(s+5)/2, F=((s+5)/2)H-C"
    UNMATCHED = "unmatched"


class IsotropicCase(str, enum.Enum):
    S_PLUS_3_H_MINUS_C = "g=4s+13, E=(s+3)H-C"
    THREE_C_MINUS_4H = "g=4s+13, E=3C-4H"
    HALF_S_PLUS_4_H_MINUS_C = "g=5s/2+11, E=((s+4)/2)H-C"
    THREE_C_MINUS_5H = "g=5s/2+11, E=3C-5H"


@dataclass(frozen=True)
class MinusTwoRecord:
    cls: DivisorClass
    r: int
    case: MinusTwoCase

    def as_dict(self) -> dict:
        return {"m": self.cls.m, "n": self.cls.n, "r": self.r, "case": self.case.value}


@dataclass(frozen=True)
class IsotropicRecord:
    cls: DivisorClass
    case: IsotropicCase
    t: int
    b: int

    def as_dict(self) -> dict:
        return {"m": self.cls.m, "n": self.cls.n, "case": self.case.value, "t": self.t, "b": self.b}


@dataclass(frozen=True)
class AnalyticCase:
    """One sign-quadrant step of the ampleness argument, evaluated for concrete (g, s)."""

    name: str
    inequality: str
    value: int
    holds: bool
    witness: DivisorClass | None = None

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "inequality": self.inequality,
            "value": self.value,
            "holds": self.holds,
        }


@dataclass(frozen=True)
class AmpleCertificate:
    params: SurfaceParams
    verdict: bool
    analytic_cases: tuple[AnalyticCase, ...]
    falsifier_window: int
    candidates_checked: int
    counterexample: DivisorClass | None = None
    counterexample_source: str | None = None

    def as_dict(self) -> dict:
        cx = self.counterexample
        return {
            "verdict": self.verdict,
            "analytic_cases": [c.as_dict() for c in self.analytic_cases],
            "falsifier_window": self.falsifier_window,
            "candidates_checked": self.candidates_checked,
            "counterexample": None if cx is None else [cx.m, cx.n],
            "counterexample_source": self.counterexample_source,
        }


def is_perfect_square(x: int) -> int | None:
    if x < 0:
        return None
    t = math.isqrt(x)
    return t if t * t == x else None


def _sort_key(rec: MinusTwoRecord) -> tuple[int, int, int]:
    return (rec.r, rec.cls.n, rec.cls.m)


def _minus_two_cases(p: SurfaceParams) -> Iterator[tuple[MinusTwoCase, DivisorClass]]:
    g, s = p.g, p.s
    if s == -3:
        yield MinusTwoCase.C_MINUS_H, DivisorClass(-1, 1)
        if g % 3 == 0:
            yield MinusTwoCase.G_THIRDS_H_MINUS_C, DivisorClass(g // 3, -1)
    if s >= -1 and g == 4 * s + 16:
        yield MinusTwoCase.S_PLUS_4_H_MINUS_C, DivisorClass(s + 4, -1)
    if s >= 1 and s % 2 == 1 and 2 * g == 5 * (s + 5):
        yield MinusTwoCase.HALF_S_PLUS_5_H_MINUS_C, DivisorClass((s + 5) // 2, -1)


def classify_minus_two(p: SurfaceParams, cls: DivisorClass) -> MinusTwoCase:
    """Name the case a (-2)-class falls under, or UNMATCHED."""
    for case, known in _minus_two_cases(p):
        if known == cls:
            return case
    if intersect(p, cls, H) >= p.d - 5:
        return MinusTwoCase.GENERIC_HIGH_DEGREE
    return MinusTwoCase.UNMATCHED


def minus_two_bruteforce(p: SurfaceParams, r_max: int) -> list[MinusTwoRecord]:
    """All classes F with F^2 = -2 and 1 <= F.H <= r_max, found by search.

    From n^2 * disc = r^2 + 12 the coefficient n is bounded by
    n^2 <= (r_max^2 + 12) / disc, and m = (r - dn)/6 must be integral.
    """
    if r_max < 1:
        raise PreconditionViolation("r_max must be >= 1")
    disc = discriminant(p)
    if disc <= 0:
        raise DegenerateDiscriminant(f"discriminant {disc} <= 0 for (g={p.g}, s={p.s})")
    n_max = math.isqrt((r_max * r_max + 12) // disc)
    found = []
    for n in range(-n_max, n_max + 1):
        for r in range(1, r_max + 1):
            if (r - p.d * n) % 6:
                continue
            cls = DivisorClass((r - p.d * n) // 6, n)
            if self_int(p, cls) == -2:
                assert n != 0, "3m^2 = -1 has no integer solution"
                found.append(MinusTwoRecord(cls, r, classify_minus_two(p, cls)))
    return sorted(found, key=_sort_key)


def minus_two_closed_form(p: SurfaceParams) -> list[MinusTwoRecord]:
    """The (-2)-classes of degree at most d-6 predicted by the case list.

    Classes with F.H >= d-5 are not bounded and are not enumerated.
    """
    out = [MinusTwoRecord(cls, intersect(p, cls, H), case) for case, cls in _minus_two_cases(p)]
    return sorted(out, key=_sort_key)


def _isotropic_case(p: SurfaceParams, cls: DivisorClass) -> IsotropicCase | None:
    g, s = p.g, p.s
    if s >= 0 and g == 4 * s + 13:
        if cls == DivisorClass(s + 3, -1):
            return IsotropicCase.S_PLUS_3_H_MINUS_C
        if cls == DivisorClass(-4, 3):
            return IsotropicCase.THREE_C_MINUS_4H
    if s >= 4 and s % 2 == 0 and 2 * g == 5 * s + 22:
        if cls == DivisorClass((s + 4) // 2, -1):
            return IsotropicCase.HALF_S_PLUS_4_H_MINUS_C
        if cls == DivisorClass(-5, 3):
            return IsotropicCase.THREE_C_MINUS_5H
    return None


def isotropic_primitive(p: SurfaceParams) -> list[IsotropicRecord]:
    """Primitive classes E with E^2 = 0 and E.H > 0.

    E^2 = 0 means m/n is a root of 3x^2 + dx + (g-1), i.e. m/n = (-d +- t)/6
    with t^2 = d^2 - 12(g-1); this only has rational roots when t is an integer.
    """
    if p.s < -1:
        raise PreconditionViolation("isotropic classification needs s >= -1")
    t = is_perfect_square(discriminant(p))
    if t is None:
        return []
    records = []
    for num in (-p.d + t, -p.d - t):
        k = math.gcd(num, 6)
        cls = DivisorClass(num // k, 6 // k)
        if intersect(p, cls, H) < 0:
            cls = -cls
        assert self_int(p, cls) == 0
        case = _isotropic_case(p, cls)
        if case is None:
            raise ClassificationMismatch(f"isotropic class {cls} for (g={p.g}, s={p.s}) matches no case")
        b2 = p.g - p.s - 6 - t
        records.append(IsotropicRecord(cls, case, t, b2 // 2))
    return sorted(records, key=lambda rec: (intersect(p, rec.cls, H), rec.cls.n, rec.cls.m))


def isotropic_bruteforce(p: SurfaceParams, window: int) -> list[DivisorClass]:
    """Primitive E with E^2 = 0, E.H > 0 and |m|, |n| <= window, by search."""
    out = []
    for m in range(-window, window + 1):
        for n in range(-window, window + 1):
            if math.gcd(m, n) != 1:
                continue
            cls = DivisorClass(m, n)
            if self_int(p, cls) == 0 and intersect(p, cls, H) > 0:
                out.append(cls)
    return sorted(out, key=lambda c: (intersect(p, c, H), c.n, c.m))


def ample_analytic_cases(p: SurfaceParams) -> list[AnalyticCase]:
    g, s, d = p.g, p.s, p.d
    cases = [
        AnalyticCase("m>=0,n>=0", "C.D = m*d + n*(2g-2) > 0 with d, 2g-2 > 0", min(d, 2 * g - 2), d > 0 and g >= 2),
        AnalyticCase("m<=0,n<=0", "excluded by D.H = 6m + dn > 0", 0, True),
    ]
    q = g * (g - 2 * s - 12) + s * s + 12
    cases.append(AnalyticCase("m>0,n<0", "g(g-2s-12) + s^2 + 12 > 0", q, q > 0))
    # n*C.D >= -m*D.H - 2 >= -m - 2, worst case m = -3
    cases.append(AnalyticCase("m<=-3,n>0", "n*C.D >= -m - 2 >= 1", 1, True))
    cases.append(AnalyticCase("m=-1,n>0", "C.D >= g + s - 2 > 0", g + s - 2, g + s - 2 > 0))
    cases.append(AnalyticCase("m=-2,n>=2", "C.D >= 2(g + s - 2) > 0", 2 * (g + s - 2), g + s - 2 > 0))
    d2 = 4 * s - 2 * g + 22
    assert d2 == self_int(p, DivisorClass(-2, 1))
    cases.append(
        AnalyticCase(
            "m=-2,n=1",
            "(C-2H)^2 = 4s - 2g + 22 != -2",
            d2,
            d2 != -2,
            witness=DivisorClass(-2, 1),
        )
    )
    return cases


def _falsifier_scan(p: SurfaceParams, window: int) -> tuple[int, DivisorClass | None]:
    """Check C.D > 0 for every nonzero D with D.H > 0 and D^2 >= -2 in the window."""
    checked = 0
    d, c2 = p.d, 2 * p.g - 2
    for n in range(-window, window + 1):
        # D.H = 6m + dn > 0  <=>  m > -dn/6
        for m in range(max(-window, (-d * n) // 6 + 1), window + 1):
            if 6 * m * m + 2 * d * m * n + c2 * n * n < -2:
                continue
            checked += 1
            if d * m + c2 * n <= 0:
                return checked, DivisorClass(m, n)
    return checked, None


def ample_certificate(p: SurfaceParams, window: int = 50) -> AmpleCertificate:
    """Certify that C is ample: the case analysis plus a bounded falsifier scan.

    Any class with D.H > 0 and D^2 >= -2 is treated as a possible irreducible
    curve, which over-approximates the real set. When the case analysis breaks
    down, the class where it breaks is reported as the counterexample.
    """
    if p.g < 2 or p.g + p.s <= 2:
        raise PreconditionViolation(f"ampleness needs g >= 2 and g + s > 2, got (g={p.g}, s={p.s})")
    if window < 1:
        raise PreconditionViolation("window must be >= 1")
    cases = ample_analytic_cases(p)
    checked, cx = _falsifier_scan(p, window)
    source = "falsifier" if cx is not None else None
    if cx is None:
        broken = next((c for c in cases if not c.holds), None)
        if broken is not None:
            cx = broken.witness
            source = f"analytic:{broken.name}"
    verdict = cx is None and all(c.holds for c in cases)
    return AmpleCertificate(p, verdict, tuple(cases), window, checked, cx, source)


@dataclass(frozen=True)
class ClassReport:
    params: SurfaceParams
    minus_two_bruteforce: list[MinusTwoRecord]
    minus_two_closed_form: list[MinusTwoRecord]
    isotropic: list[IsotropicRecord] = field(default_factory=list)

    @property
    def minus_two_agree(self) -> bool:
        return {r.cls for r in self.minus_two_bruteforce} == {r.cls for r in self.minus_two_closed_form}


def class_report(p: SurfaceParams) -> ClassReport:
    """Both (-2)-enumerations up to degree d-6, and the isotropic classes when s >= -1."""
    brute = minus_two_bruteforce(p, p.d - 6)
    closed = minus_two_closed_form(p)
    iso = isotropic_primitive(p) if p.s >= -1 else []
    return ClassReport(p, brute, closed, iso)

