"""Command line: certify, scan, classify, witness.

Data goes to stdout (or to a file under $K3CLIFFORD_OUT_DIR), diagnostics to
stderr. Exit codes: 0 all checks passed, 1 some check failed, 2 bad parameters.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

from k3clifford.certificate import (
    STATUS_REGIME_VIOLATION,
    CertificateDocument,
    certify,
    external_witness_document,
)
from k3clifford.classifier import class_report, isotropic_bruteforce
from k3clifford.clifford import witness_genera, witness_offset
from k3clifford.errors import GammaTooSmall, K3CliffordError, RegimeViolation
from k3clifford.fixedcomp import exceptional_candidates
from k3clifford.lattice import Regime, discriminant, new_params

OUT_DIR_ENV = "K3CLIFFORD_OUT_DIR"

CSV_FIELDS = ["g", "s", "d", "regime", "status", "passed", "min_f", "cliff_max", "gamma_rank2", "exceptional"]


def parse_interval(text: str) -> tuple[int, int]:
    """'A:B' -> (A, B), inclusive; a single integer means A:A."""
    try:
        if ":" in text:
            a, b = text.split(":", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A:B, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty interval {text!r}")
    return lo, hi


def positive_int(text: str) -> int:
    val = int(text)
    if val < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return val


@dataclass(frozen=True)
class ScanConfig:
    s_range: tuple[int, int]
    g_rel: tuple[int, int] | None = None
    g_abs: tuple[int, int] | None = None
    regime: Regime = Regime.THEOREM
    window: int | None = None
    output_format: str = "jsonl"
    exceptional_only: bool = False

    def cells(self) -> Iterator[tuple[int, int]]:
        for s in range(self.s_range[0], self.s_range[1] + 1):
            if self.g_abs is not None:
                lo, hi = self.g_abs
            else:
                rel = self.g_rel or (14, 14)
                lo, hi = 2 * s + rel[0], 2 * s + rel[1]
            for g in range(lo, hi + 1):
                yield g, s


def _summary_line(doc: CertificateDocument) -> dict:
    amin = (doc.clifford or {}).get("admissible_min")
    return {
        "g": doc.params["g"],
        "s": doc.params["s"],
        "d": doc.params["d"],
        "regime": doc.params["regime"],
        "status": doc.status,
        "passed": doc.passed,
        "min_f": None if amin is None else amin["f_value"],
        "cliff_max": (doc.clifford or {}).get("cliff_max"),
        "gamma_rank2": (doc.clifford or {}).get("gamma_rank2"),
        "exceptional": (doc.fixedcomp or {}).get("exceptional"),
    }


class Emitter:
    """Writes documents in the chosen format; CSV and pretty are projections of the JSON."""

    def __init__(self, out: TextIO, fmt: str):
        self.out = out
        self.fmt = fmt
        self._csv = None
        if fmt == "csv":
            self._csv = csv.DictWriter(out, fieldnames=CSV_FIELDS, lineterminator="\n")
            self._csv.writeheader()

    def document(self, doc: CertificateDocument) -> None:
        if self.fmt == "jsonl":
            self.out.write(doc.to_json() + "\n")
        elif self.fmt == "csv":
            self._csv.writerow(_summary_line(doc))
        else:
            self.out.write(_pretty(doc) + "\n")
        self.out.flush()

    def record(self, payload: dict) -> None:
        if self.fmt == "jsonl":
            self.out.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
        elif self.fmt == "csv":
            print(json.dumps(payload, sort_keys=True), file=sys.stderr)
        else:
            self.out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _pretty(doc: CertificateDocument) -> str:
    p = doc.params
    head = f"(g={p['g']}, s={p['s']}, d={p['d']}, regime={p['regime']}): {doc.status}"
    lines = [head]
    for name, ok in doc.verdicts.items():
        lines.append(f"  {'ok  ' if ok else 'FAIL'} {name}")
    if doc.clifford:
        c = doc.clifford
        amin = c["admissible_min"]
        lines.append(
            f"  cliff_max={c['cliff_max']} min_f={None if amin is None else amin['f_value']}"
            f" argmin={None if amin is None else amin['argmin']} gamma_rank2={c['gamma_rank2']}"
            f" mercat_lower={c['mercat_lower']}"
        )
    for err in doc.errors:
        lines.append(f"  error: {err}")
    return "\n".join(lines)


def _open_output(args, command: str) -> tuple[TextIO, bool]:
    if args.output:
        return open(args.output, "w", encoding="utf-8"), True
    out_dir = os.environ.get(OUT_DIR_ENV)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        ext = {"jsonl": "jsonl", "csv": "csv", "pretty": "txt"}[getattr(args, "format", "jsonl")]
        path = os.path.join(out_dir, f"{command}.{ext}")
        print(f"writing {path}", file=sys.stderr)
        return open(path, "w", encoding="utf-8"), True
    return sys.stdout, False


def _certify_cell(job: tuple[int, int, str, int | None, bool]) -> CertificateDocument:
    g, s, regime, window, ts = job
    return certify(g, s, regime, window, ts)


def run_scan(config: ScanConfig, emitter: Emitter, timestamp: bool = True, jobs: int = 1) -> int:
    cells: Iterable[tuple[int, int]] = config.cells()
    if config.exceptional_only:
        cells = [(g, s) for g, s in cells if _is_exceptional(g, s, config.regime)]
    work = [(g, s, config.regime.value, config.window, timestamp) for g, s in cells]
    counts = {"cells": 0, "passed": 0, "failed": 0, "regime_violations": 0, "exceptional": 0}
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            docs: Iterable[CertificateDocument] = pool.map(_certify_cell, work, chunksize=8)
            code = _drain(docs, emitter, counts)
    else:
        code = _drain(map(_certify_cell, work), emitter, counts)
    emitter.record({"kind": "summary", **counts})
    return code


def _drain(docs: Iterable[CertificateDocument], emitter: Emitter, counts: dict) -> int:
    worst = 0
    try:
        for doc in docs:
            emitter.document(doc)
            counts["cells"] += 1
            if doc.status == STATUS_REGIME_VIOLATION:
                counts["regime_violations"] += 1
            elif doc.passed:
                counts["passed"] += 1
            else:
                counts["failed"] += 1
            if (doc.fixedcomp or {}).get("exceptional"):
                counts["exceptional"] += 1
            worst = max(worst, doc.exit_code)
    except K3CliffordError:
        emitter.out.flush()
        raise
    return worst


def _is_exceptional(g: int, s: int, regime: Regime) -> bool:
    try:
        p = new_params(g, s, regime)
    except RegimeViolation:
        return False
    if p.s < -1:
        return False
    return any(c.survives for c in exceptional_candidates(p))


def cmd_certify(args) -> int:
    doc = certify(args.g, args.s, args.regime, args.window, not args.no_timestamp)
    out, close = _open_output(args, "certify")
    try:
        Emitter(out, args.format).document(doc)
    finally:
        if close:
            out.close()
    if doc.status == STATUS_REGIME_VIOLATION:
        print("regime violation: " + "; ".join(doc.errors), file=sys.stderr)
    return doc.exit_code


def cmd_scan(args) -> int:
    if args.g_range is not None and args.g_rel is not None:
        print("--g-range and --g-rel are mutually exclusive", file=sys.stderr)
        return 2
    config = ScanConfig(
        s_range=args.s_range,
        g_rel=args.g_rel,
        g_abs=args.g_range,
        regime=Regime(args.regime),
        window=args.window,
        output_format=args.format,
        exceptional_only=args.filter == "exceptional",
    )
    out, close = _open_output(args, "scan")
    try:
        return run_scan(config, Emitter(out, args.format), not args.no_timestamp, args.jobs)
    finally:
        if close:
            out.close()


def cmd_classify(args) -> int:
    p = new_params(args.g, args.s, args.regime)
    rep = class_report(p)
    payload: dict = {
        "kind": "classification",
        "params": p.as_dict(),
        "discriminant": discriminant(p),
        "minus_two": {
            "r_max": p.d - 6,
            "bruteforce": [r.as_dict() for r in rep.minus_two_bruteforce],
            "closed_form": [r.as_dict() for r in rep.minus_two_closed_form],
            "agree": rep.minus_two_agree,
        },
    }
    if p.s >= -1:
        payload["isotropic"] = [r.as_dict() for r in rep.isotropic]
        payload["isotropic_bruteforce"] = [[c.m, c.n] for c in isotropic_bruteforce(p, args.window or 100)]
        payload["exceptional"] = [
            {"F": c.F.as_dict(), "C_minus_F_dot_C": c.C_minus_F_dot_C, "survives": c.survives}
            for c in exceptional_candidates(p)
        ]
    out, close = _open_output(args, "classify")
    try:
        out.write(json.dumps(payload, sort_keys=True, indent=None if args.format == "jsonl" else 2) + "\n")
    finally:
        if close:
            out.close()
    return 0 if rep.minus_two_agree else 1


def cmd_witness(args) -> int:
    gamma = args.gamma
    if gamma < 5:
        raise GammaTooSmall(f"gamma must be >= 5, got {gamma}")
    out, close = _open_output(args, "witness")
    emitter = Emitter(out, args.format)
    worst = 0
    ts = not args.no_timestamp
    try:
        for g in witness_genera(gamma):
            s = witness_offset(g)
            if g == 11:
                doc = external_witness_document(g, s, gamma, ts)
            else:
                doc = certify(g, s, Regime.THEOREM, args.window, ts)
                equal = bool(doc.clifford and doc.clifford["cliff2_equal"])
                doc.witness = {"gamma": gamma, "genus": g, "verified": True}
                doc.verdicts["cliff2_equal"] = equal
                doc.verdicts["cliff_max_is_gamma"] = bool(doc.clifford and doc.clifford["cliff_max"] == gamma)
                worst = max(worst, doc.exit_code)
            emitter.document(doc)
    finally:
        if close:
            out.close()
    return worst


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="k3clifford", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["jsonl", "csv", "pretty"], default="jsonl")
    common.add_argument("--window", type=positive_int, default=None, help="falsifier search window")
    common.add_argument("--no-timestamp", action="store_true", help="omit generated_at for reproducible output")
    common.add_argument("--output", default=None, help=f"output file (default: stdout or ${OUT_DIR_ENV})")

    def regime(default: str) -> argparse.ArgumentParser:
        parent = argparse.ArgumentParser(add_help=False)
        parent.add_argument("--regime", choices=["base", "theorem"], default=default)
        return parent

    p = sub.add_parser("certify", parents=[common, regime("theorem")], help="run every check for one (g, s)")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("scan", parents=[common, regime("theorem")], help="certify a grid of (g, s)")
    # negative starts need the --s-range=-1:25 spelling
    p.add_argument("--s-range", type=parse_interval, required=True, metavar="A:B")
    p.add_argument("--g-rel", type=parse_interval, default=None, metavar="A:B", help="g - 2s in A:B")
    p.add_argument("--g-range", type=parse_interval, default=None, metavar="A:B", help="absolute g in A:B")
    p.add_argument("--filter", choices=["all", "exceptional"], default="all")
    p.add_argument("--jobs", type=positive_int, default=1)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("classify", parents=[common, regime("base")], help="list (-2) and isotropic classes")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("witness", parents=[common], help="genus witnesses for a Clifford index")
    p.add_argument("--gamma", type=int, required=True)
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (RegimeViolation, GammaTooSmall) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except K3CliffordError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
