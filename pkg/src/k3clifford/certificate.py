"""The full verification pipeline for one (g, s) and its JSON document."""

from __future__ import annotations

import datetime as _dt
import json
from dataclasses import asdict, dataclass, field

from k3clifford import __version__
from k3clifford.classifier import ample_certificate, class_report
from k3clifford.clifford import clifford_certificate, enumeration_bounds, root_bounds
from k3clifford.errors import BoundViolation, RegimeViolation
from k3clifford.fixedcomp import (
    check_pencil_c_minus_h,
    exceptional_box_check,
    exceptional_candidates,
    no_isotropic_decomposition,
)
from k3clifford.lattice import Regime, SurfaceParams, discriminant, new_params

SCHEMA_VERSION = "k3clifford.certificate/1"

STATUS_CHECKED = "checked"
STATUS_REGIME_VIOLATION = "regime_violation"
STATUS_EXTERNAL = "external_result_required"


@dataclass
class CertificateDocument:
    schema_version: str
    tool_version: str
    status: str
    params: dict
    verdicts: dict = field(default_factory=dict)
    errors: list = field(default_factory=list)
    ample: dict | None = None
    minus_two: dict | None = None
    isotropic: list | None = None
    fixedcomp: dict | None = None
    clifford: dict | None = None
    witness: dict | None = None
    generated_at: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == STATUS_CHECKED and all(self.verdicts.values())

    @property
    def exit_code(self) -> int:
        if self.status == STATUS_REGIME_VIOLATION:
            return 2
        return 0 if self.passed else 1

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> CertificateDocument:
        return cls(**json.loads(text))


def default_window(p: SurfaceParams) -> int:
    if discriminant(p) <= 0:
        return 50
    return max(50, 4 * enumeration_bounds(p).n_hi)


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def certify(
    g: int,
    s: int,
    regime: Regime | str = Regime.THEOREM,
    window: int | None = None,
    timestamp: bool = True,
) -> CertificateDocument:
    """Run every check for (g, s) and collect the results in one document."""
    regime = Regime(regime)
    doc = CertificateDocument(
        schema_version=SCHEMA_VERSION,
        tool_version=__version__,
        status=STATUS_CHECKED,
        params={"g": g, "s": s, "d": g - s, "regime": regime.value},
        generated_at=_now() if timestamp else None,
    )
    try:
        p = new_params(g, s, regime)
    except RegimeViolation as exc:
        doc.status = STATUS_REGIME_VIOLATION
        doc.errors = list(exc.failed)
        return doc

    v = doc.verdicts
    w = window if window is not None else default_window(p)
    if p.g >= 2 and p.g + p.s > 2:
        amp = ample_certificate(p, w)
        doc.ample = amp.as_dict()
        v["ample"] = amp.verdict

    rep = class_report(p)
    disc = discriminant(p)
    recs = rep.minus_two_bruteforce + rep.minus_two_closed_form
    doc.minus_two = {
        "r_max": p.d - 6,
        "bruteforce": [r.as_dict() for r in rep.minus_two_bruteforce],
        "closed_form": [r.as_dict() for r in rep.minus_two_closed_form],
    }
    v["minus_two_equivalent"] = rep.minus_two_agree
    v["minus_two_identity"] = all(r.cls.n ** 2 * disc == r.r ** 2 + 12 for r in recs)

    if p.s >= -1:
        # class_report raises ClassificationMismatch on an unmatched isotropic class
        doc.isotropic = [r.as_dict() for r in rep.isotropic]
        v["isotropic_b_identity"] = all(
            r.b * (r.t + 2 * r.b) == 3 * p.s + 6 + r.b * r.b for r in rep.isotropic
        )
        fc: dict = {}
        pencil = check_pencil_c_minus_h(p)
        fc["pencil_c_minus_h"] = pencil.as_dict()
        v["pencil_c_minus_h_fixed_component_free"] = pencil.ok
        iso = no_isotropic_decomposition(p)
        fc["no_isotropic_decomposition"] = iso.as_dict()
        v["no_isotropic_decomposition"] = iso.ok
        exceptional = any(c.survives for c in exceptional_candidates(p))
        fc["exceptional"] = exceptional
        if exceptional:
            box = exceptional_box_check(p)
            fc["box_check"] = box.as_dict()
            v["exceptional_box_check"] = box.ok
        doc.fixedcomp = fc

    cert = clifford_certificate(p)
    doc.clifford = cert.as_dict()
    v["clifford_bound"] = cert.theorem_holds
    if regime is Regime.THEOREM:
        v["rank2_gap_strict"] = cert.gap_strict
        try:
            root_bounds(p)
            v["root_bounds"] = True
        except BoundViolation as exc:
            doc.errors.append(str(exc))
            v["root_bounds"] = False
    return doc


def external_witness_document(g: int, s: int, gamma: int, timestamp: bool = True) -> CertificateDocument:
    return CertificateDocument(
        schema_version=SCHEMA_VERSION,
        tool_version=__version__,
        status=STATUS_EXTERNAL,
        params={"g": g, "s": s, "d": g - s, "regime": Regime.THEOREM.value},
        errors=[f"genus {g} is outside the theorem regime; this case relies on a separately published result"],
        witness={"gamma": gamma, "genus": g, "verified": False},
        generated_at=_now() if timestamp else None,
    )
