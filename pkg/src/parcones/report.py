"""Cone reports for single documents and whole corpora."""
from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence

from .cones import (
    BundleData,
    Cone2D,
    eff_cone_lower,
    eff_cone_upper,
    is_k_homogeneous,
    nef_cone_1,
    nef_cone_upper,
    semistability_routes,
)
from .document import BundleDocument, DocumentError, parse_document, rational_json
from .errors import ConsistencyError, InadmissibleGammaError, ParconesError, ValidationError
from .oracle import cross_check, default_gammas, lift
from .ring import NumericalClass

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_ORACLE = 2
EXIT_IO = 3

REPORT_VERSION = 1


@dataclass
class ReportFlags:
    ks: Optional[Sequence[int]] = None
    check_oracle: bool = False
    gammas: Optional[Sequence[int]] = None
    strict: bool = False


def generator_json(c: NumericalClass) -> list:
    """``[[xi_exp, L_exp, num, den], ...]`` in descending xi exponent."""
    return [
        [a, b, coeff.numerator, coeff.denominator]
        for (a, b), coeff in sorted(c.coeffs.items(), reverse=True)
    ]


def cone_json(cone: Cone2D) -> list:
    return [generator_json(g) for g in cone.generators]


def run_report(doc: BundleDocument, flags: Optional[ReportFlags] = None) -> dict:
    """Structured report for one document; a pure function of its inputs."""
    flags = flags or ReportFlags()
    if flags.strict and doc.warnings:
        raise ValidationError([f"strict: {w}" for w in doc.warnings])
    b = BundleData.of(doc.spec)
    r = b.rank
    ks = list(range(1, r)) if flags.ks is None else sorted(set(flags.ks))
    bad = [k for k in ks if not 1 <= k <= r - 1]
    if bad:
        raise ValidationError(f"k values {bad} outside 1..{r - 1}")

    by_hn, by_cones = semistability_routes(b)
    if by_hn != by_cones:
        raise ConsistencyError(f"semistability routes disagree: HN {by_hn}, cones {by_cones}")
    report = {
        "report_version": REPORT_VERSION,
        "name": doc.name,
        "rank": r,
        "degree": doc.spec.degree,
        "level": b.level,
        "pardeg": rational_json(b.ring.pardeg),
        "slope": rational_json(b.ring.pardeg / r),
        "hn": [
            {"rank": rk, "deg": rational_json(d), "slope": rational_json(d / rk)}
            for rk, d in b.hn.pieces
        ],
        "nu": [{"k": k, "value": rational_json(v)} for k, v in b.nu.items()] if r >= 2 else [],
        "nef_divisors": cone_json(nef_cone_1(b)),
        "per_k": [
            {
                "k": k,
                "eff_lower": cone_json(eff_cone_lower(b, k)),
                "nef_upper": cone_json(nef_cone_upper(b, k)),
                "eff_upper": cone_json(eff_cone_upper(b, k)),
                "k_homogeneous": is_k_homogeneous(b, k),
            }
            for k in ks
        ],
        "semistable": {"hn_route": by_hn, "cone_route": by_cones, "verdict": by_hn},
    }
    if flags.check_oracle:
        gammas = list(flags.gammas) if flags.gammas else default_gammas(b)
        for g in gammas:
            lift(b, g)
        xc = cross_check(b, None, gammas)
        report["oracle"] = {
            "gammas": gammas,
            "per_gamma": {str(g): ok for g, ok in xc.per_gamma().items()},
            "passed": xc.passed,
            "failures": xc.failures(),
        }
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _rat(d: dict) -> str:
    return str(d["num"]) if d["den"] == 1 else f"{d['num']}/{d['den']}"


def _cone_text(gens: list) -> str:
    def term(a, b, num, den):
        coeff = num if den == 1 else f"{num}/{den}"
        mono = "*".join(([("xi" if a == 1 else f"xi^{a}")] if a else []) + (["L"] if b else [])) or "1"
        return mono if coeff == 1 else (f"-{mono}" if coeff == -1 else f"{coeff}*{mono}")

    polys = []
    for g in gens:
        parts = [term(*t) for t in g]
        s = parts[0] if parts else "0"
        for p in parts[1:]:
            s += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        polys.append(s)
    return "<" + ", ".join(polys) + ">"


def report_text(report: dict) -> str:
    """Human-readable rendering carrying the same numbers as the JSON."""
    lines = [
        f"bundle {report['name']}",
        f"  rank {report['rank']}, degree {report['degree']}, level N = {report['level']}",
        f"  par-deg {_rat(report['pardeg'])}, par-slope {_rat(report['slope'])}",
        "  HN quotients (rank, par-deg, slope): "
        + ", ".join(f"({h['rank']}, {_rat(h['deg'])}, {_rat(h['slope'])})" for h in report["hn"]),
    ]
    if report["nu"]:
        lines.append("  nu: " + ", ".join(f"nu_{n['k']} = {_rat(n['value'])}" for n in report["nu"]))
    lines.append(f"  Nef^1 = {_cone_text(report['nef_divisors'])}")
    for rec in report["per_k"]:
        k = rec["k"]
        lines.append(f"  k = {k}:")
        lines.append(f"    Eff_{k} = {_cone_text(rec['eff_lower'])}")
        lines.append(f"    Nef^{k} = {_cone_text(rec['nef_upper'])}")
        lines.append(f"    Eff^{k} = {_cone_text(rec['eff_upper'])}")
        lines.append(f"    {k}-homogeneous: {'yes' if rec['k_homogeneous'] else 'no'}")
    ss = report["semistable"]
    lines.append(
        f"  semistable: {'yes' if ss['verdict'] else 'no'}"
        f" (HN route {ss['hn_route']}, cone route {ss['cone_route']})"
    )
    if "oracle" in report:
        o = report["oracle"]
        per = ", ".join(f"gamma={g}: {'pass' if ok else 'FAIL'}" for g, ok in o["per_gamma"].items())
        lines.append(f"  oracle: {'pass' if o['passed'] else 'FAIL'} ({per})")
        lines.extend(f"    {f}" for f in o["failures"])
    return "\n".join(lines) + "\n"


@dataclass
class FileResult:
    name: str
    path: str
    status: str  # ok | invalid | oracle_mismatch | io_error
    exit_code: int
    report: Optional[dict] = None
    errors: List[str] = field(default_factory=list)


def process_file(path: Path, flags: ReportFlags) -> FileResult:
    name = path.stem
    try:
        data = path.read_bytes()
    except OSError as exc:
        return FileResult(name, str(path), "io_error", EXIT_IO, errors=[f"{path}: {exc.strerror or exc}"])
    try:
        doc = parse_document(data, source=str(path))
        report = run_report(doc, flags)
    except (DocumentError, ValidationError, InadmissibleGammaError) as exc:
        issues = getattr(exc, "issues", None) or [str(exc)]
        return FileResult(name, str(path), "invalid", EXIT_INVALID, errors=list(issues))
    except ConsistencyError as exc:
        return FileResult(name, str(path), "oracle_mismatch", EXIT_ORACLE, errors=[str(exc)])
    except ParconesError as exc:
        return FileResult(name, str(path), "invalid", EXIT_INVALID, errors=[str(exc)])
    if "oracle" in report and not report["oracle"]["passed"]:
        return FileResult(doc.name, str(path), "oracle_mismatch", EXIT_ORACLE, report, report["oracle"]["failures"])
    return FileResult(doc.name, str(path), "ok", EXIT_OK, report)


def run_corpus(directory, flags: Optional[ReportFlags] = None, workers: int = 4) -> dict:
    """Report on every ``*.json`` file in ``directory``; results ordered by file name."""
    flags = flags or ReportFlags()
    start = time.perf_counter()
    root = Path(directory)
    if not root.is_dir():
        raise FileNotFoundError(f"corpus directory {root} not found")
    files = sorted(root.glob("*.json"))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda p: process_file(p, flags), files))
    semistable = sum(1 for r in results if r.report and r.report["semistable"]["verdict"])
    valid = [r for r in results if r.report is not None]
    checked = [r for r in valid if "oracle" in r.report]
    passed = sum(1 for r in checked if r.report["oracle"]["passed"])
    return {
        "files": [
            {"file": Path(r.path).name, "name": r.name, "status": r.status, "errors": r.errors, "report": r.report}
            for r in results
        ],
        "counts": {
            "total": len(results),
            "valid": len(valid),
            "invalid": sum(1 for r in results if r.status == "invalid"),
            "io_errors": sum(1 for r in results if r.status == "io_error"),
            "semistable": semistable,
            "unstable": len(valid) - semistable,
        },
        "oracle_pass_rate": (passed / len(checked)) if checked else None,
        "runtime_seconds": round(time.perf_counter() - start, 3),
        "exit_code": max((r.exit_code for r in results), default=EXIT_OK),
    }


def corpus_text(summary: dict) -> str:
    lines = []
    for f in summary["files"]:
        lines.append(f"{f['file']}: {f['status']}")
        lines.extend(f"  {e}" for e in f["errors"])
        if f["report"] is not None:
            verdict = "semistable" if f["report"]["semistable"]["verdict"] else "unstable"
            lines.append(f"  {verdict}, rank {f['report']['rank']}, level {f['report']['level']}")
    c = summary["counts"]
    rate = summary["oracle_pass_rate"]
    lines.append(
        f"{c['total']} files: {c['valid']} valid ({c['semistable']} semistable, {c['unstable']} unstable), "
        f"{c['invalid']} invalid, {c['io_errors']} unreadable"
    )
    lines.append(f"oracle pass rate: {'n/a' if rate is None else f'{rate:.0%}'}")
    lines.append(f"runtime: {summary['runtime_seconds']}s")
    return "\n".join(lines) + "\n"
