"""The rank-2 even lattice ZH + ZC with Gram matrix ((6, d), (d, 2g-2)).

Every quantity is a Python ``int``; there is no fixed-width arithmetic anywhere,
so results are exact for arbitrarily large inputs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

from k3clifford.errors import RegimeViolation


class Regime(str, enum.Enum):
    """Which family of inequalities the parameters must satisfy.

    ``BASE`` is the regime in which the surface exists and the classification
    results apply; ``THEOREM`` is the stricter regime of the main theorem.
    ``RAW`` skips validation and is only meant for probing boundary cases.
    """

    BASE = "base"
    THEOREM = "theorem"
    RAW = "raw"


class DivisorClass(NamedTuple):
    """The class m*H + n*C."""

    m: int
    n: int

    def __add__(self, other):  # type: ignore[override]
        return DivisorClass(self.m + other.m, self.n + other.n)

    def __sub__(self, other):
        return DivisorClass(self.m - other.m, self.n - other.n)

    def __neg__(self):
        return DivisorClass(-self.m, -self.n)

    def scale(self, k: int) -> DivisorClass:
        return DivisorClass(k * self.m, k * self.n)

    def __str__(self) -> str:
        return f"{self.m}H{self.n:+d}C"


H = DivisorClass(1, 0)
C = DivisorClass(0, 1)


def base_failures(g: int, s: int) -> list[str]:
    d = g - s
    failed = []
    if not d > 0:
        failed.append("d > 0")
    if not g >= 0:
        failed.append("g >= 0")
    if not g >= 2 * s + 13:
        failed.append("g >= 2s+13")
    if (d, g) == (7, 4):
        failed.append("(d,g) != (7,4)")
    return failed


def theorem_failures(g: int, s: int) -> list[str]:
    failed = []
    if not s >= -1:
        failed.append("s >= -1")
    if not g >= 2 * s + 14:
        failed.append("g >= 2s+14")
    # the theorem regime implies the base one, but report both if anything slips
    failed.extend(f for f in base_failures(g, s) if f not in failed)
    return failed


@dataclass(frozen=True)
class SurfaceParams:
    """Genus g, offset s and degree d = g - s of the curve C on the surface."""

    g: int
    s: int
    d: int
    regime: Regime = Regime.BASE

    def __post_init__(self) -> None:
        for name in ("g", "s", "d"):
            if not isinstance(getattr(self, name), int) or isinstance(getattr(self, name), bool):
                raise TypeError(f"{name} must be an int")
        if self.d != self.g - self.s:
            raise ValueError(f"inconsistent degree: d={self.d} but g-s={self.g - self.s}")
        failed = regime_failures(self.g, self.s, self.regime)
        if failed:
            raise RegimeViolation(failed, self.g, self.s)

    @property
    def c_squared(self) -> int:
        return 2 * self.g - 2

    @property
    def gram(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((6, self.d), (self.d, 2 * self.g - 2))

    def satisfies(self, regime: Regime) -> bool:
        return not regime_failures(self.g, self.s, regime)

    def with_regime(self, regime: Regime) -> SurfaceParams:
        return new_params(self.g, self.s, regime)

    def as_dict(self) -> dict:
        return {"g": self.g, "s": self.s, "d": self.d, "regime": self.regime.value}


def regime_failures(g: int, s: int, regime: Regime) -> list[str]:
    if regime is Regime.BASE:
        return base_failures(g, s)
    if regime is Regime.THEOREM:
        return theorem_failures(g, s)
    return []


def require_regime(p: SurfaceParams, regime: Regime) -> None:
    """Raise RegimeViolation unless ``p`` satisfies ``regime`` (whatever it was built with)."""
    failed = regime_failures(p.g, p.s, regime)
    if failed:
        raise RegimeViolation(failed, p.g, p.s)


def new_params(g: int, s: int, regime: Regime | str = Regime.BASE) -> SurfaceParams:
    """Validate (g, s) against ``regime``.

    Raises RegimeViolation listing every failed condition.
    """
    return SurfaceParams(g, s, g - s, Regime(regime))


def intersect(p: SurfaceParams, d1: DivisorClass, d2: DivisorClass) -> int:
    m1, n1 = d1
    m2, n2 = d2
    return 6 * m1 * m2 + p.d * (m1 * n2 + m2 * n1) + (2 * p.g - 2) * n1 * n2


def self_int(p: SurfaceParams, D: DivisorClass) -> int:
    return intersect(p, D, D)


def chi(p: SurfaceParams, D: DivisorClass) -> int:
    """Riemann-Roch Euler characteristic D^2/2 + 2.

    Defined for every class; it equals h^0 only for effective classes with
    vanishing higher cohomology, which is not checked here.
    """
    return self_int(p, D) // 2 + 2


def discriminant(p: SurfaceParams) -> int:
    """d^2 - 12(g-1), minus the determinant of the Gram matrix."""
    return p.d * p.d - 12 * (p.g - 1)
