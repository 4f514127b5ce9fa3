"""JSON bundle documents: parsing with full error collection, and serialization.

Rationals are always ``{"num": int, "den": int}`` objects, never decimals.
See ``docs/schema.md`` for the layout.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Optional, Union

from .errors import ValidationError
from .parabolic import HNData, ParabolicBundleSpec, ParabolicLine, ParabolicPoint

SCHEMA_VERSION = 1


class DocumentError(ValidationError):
    """Every problem found in a document, each prefixed by its field path."""


@dataclass
class BundleDocument:
    name: str
    spec: ParabolicBundleSpec
    schema_version: int = SCHEMA_VERSION
    genus: Optional[int] = None
    warnings: List[str] = field(default_factory=list)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


class _Reader:
    def __init__(self):
        self.errors: List[str] = []
        self.warnings: List[str] = []

    def err(self, path, msg):
        self.errors.append(f"{path}: {msg}")

    def integer(self, obj, key, path, required=True):
        if key not in obj:
            if required:
                self.err(f"{path}.{key}" if path else key, "missing required field")
            return None
        v = obj[key]
        if not _is_int(v):
            self.err(f"{path}.{key}" if path else key, f"expected an integer, got {v!r}")
            return None
        return v

    def rational(self, obj, path, num_key="num", den_key="den"):
        if not isinstance(obj, dict):
            self.err(path, "expected an object with num/den")
            return None
        num = self.integer(obj, num_key, path)
        den = self.integer(obj, den_key, path)
        if num is None or den is None:
            return None
        if den <= 0:
            self.err(f"{path}.{den_key}", "denominator must be positive")
            return None
        if gcd(num, den) != 1:
            self.warnings.append(f"{path}: {num}/{den} normalized to {Fraction(num, den)}")
        return Fraction(num, den)

    def listing(self, obj, key, path, required=True):
        if key not in obj:
            if required:
                self.err(f"{path}.{key}" if path else key, "missing required field")
            return None
        v = obj[key]
        if not isinstance(v, list):
            self.err(f"{path}.{key}" if path else key, "expected a list")
            return None
        return v


def parse_document(data: Union[bytes, str], source: str = "<input>") -> BundleDocument:
    """Parse and validate a document; raises :class:`DocumentError` listing all problems."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentError([f"{source}: not valid UTF-8 ({exc.reason} at byte {exc.start})"])
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise DocumentError([f"{source}: syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}"])
    if not isinstance(raw, dict):
        raise DocumentError([f"{source}: top level must be an object"])

    rd = _Reader()
    version = rd.integer(raw, "schema_version", "")
    if version is not None and version != SCHEMA_VERSION:
        rd.err("schema_version", f"unsupported version {version} (expected {SCHEMA_VERSION})")
    name = raw.get("name")
    if name is None:
        name = source.rsplit("/", 1)[-1].rsplit(".", 1)[0]
        rd.warnings.append(f"name: missing, using {name!r}")
    elif not isinstance(name, str):
        rd.err("name", "expected a string")
        name = ""
    rank = rd.integer(raw, "rank", "")
    degree = rd.integer(raw, "degree", "")
    genus = rd.integer(raw, "genus", "", required=False)
    if genus is not None and genus < 0:
        rd.err("genus", "must be nonnegative")

    points = []
    for i, p in enumerate(rd.listing(raw, "points", "") or []):
        path = f"points[{i}]"
        if not isinstance(p, dict):
            rd.err(path, "expected an object")
            continue
        label = p.get("label")
        if not isinstance(label, str) or not label:
            rd.err(f"{path}.label", "expected a nonempty string")
            continue
        weights = []
        for j, w in enumerate(rd.listing(p, "weights", path) or []):
            wpath = f"{path}.weights[{j}]"
            alpha = rd.rational(w, wpath)
            mult = rd.integer(w, "mult", wpath) if isinstance(w, dict) else None
            if alpha is None or mult is None:
                continue
            if not 0 <= alpha < 1:
                rd.err(wpath, f"weight {alpha} not in [0,1)")
            if mult < 1:
                rd.err(f"{wpath}.mult", "multiplicity must be positive")
            weights.append((alpha, mult))
        points.append(ParabolicPoint(label, tuple(weights)))

    split = None
    hn = None
    if "split" in raw and "hn" in raw:
        rd.err("split/hn", "supply at most one of split and hn")
    if "split" in raw:
        split = []
        for i, s in enumerate(rd.listing(raw, "split", "") or []):
            path = f"split[{i}]"
            if not isinstance(s, dict):
                rd.err(path, "expected an object")
                continue
            deg = rd.integer(s, "degree", path)
            ws = s.get("weights", {})
            if not isinstance(ws, dict):
                rd.err(f"{path}.weights", "expected an object mapping point labels to rationals")
                continue
            parsed = {}
            for label, w in sorted(ws.items()):
                alpha = rd.rational(w, f"{path}.weights.{label}")
                if alpha is not None:
                    if not 0 <= alpha < 1:
                        rd.err(f"{path}.weights.{label}", f"weight {alpha} not in [0,1)")
                    parsed[label] = alpha
            if deg is not None:
                split.append(ParabolicLine(deg, parsed))
    elif "hn" in raw:
        pieces = []
        for i, h in enumerate(rd.listing(raw, "hn", "") or []):
            path = f"hn[{i}]"
            if not isinstance(h, dict):
                rd.err(path, "expected an object")
                continue
            r = rd.integer(h, "rank", path)
            d = rd.rational(h, path, "deg_num", "deg_den")
            if r is not None and d is not None:
                pieces.append((r, d))
        if pieces:
            try:
                hn = HNData(tuple(pieces))
            except ValidationError as exc:
                rd.errors.extend(f"hn: {m}" for m in exc.issues)

    spec = None
    if not rd.errors and rank is not None and degree is not None:
        try:
            spec = ParabolicBundleSpec(
                rank=rank,
                degree=degree,
                points=tuple(points),
                split=tuple(split) if split is not None else None,
                explicit_hn=hn,
                name=name,
            )
        except ValidationError as exc:
            rd.errors.extend(exc.issues)
        if spec is not None and not spec.has_hn_source:
            rd.err("split/hn", f"underdetermined bundle: rank {rank} needs split or hn data")
    if rd.errors:
        raise DocumentError([f"{source}: {m}" for m in rd.errors])
    return BundleDocument(name, spec, version, genus, rd.warnings)


def rational_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def document_to_dict(doc: BundleDocument) -> dict:
    spec = doc.spec
    out = {
        "schema_version": SCHEMA_VERSION,
        "name": doc.name,
        "rank": spec.rank,
        "degree": spec.degree,
        "points": [
            {
                "label": p.label,
                "weights": [dict(rational_json(a), mult=m) for a, m in p.weights],
            }
            for p in spec.points
        ],
    }
    if doc.genus is not None:
        out["genus"] = doc.genus
    if spec.split is not None:
        out["split"] = [
            {"degree": s.degree, "weights": {label: rational_json(w) for label, w in s.weights}}
            for s in spec.split
        ]
    elif spec.explicit_hn is not None:
        out["hn"] = [
            {"rank": r, "deg_num": d.numerator, "deg_den": d.denominator}
            for r, d in spec.explicit_hn.pieces
        ]
    return out


def serialize_document(doc: BundleDocument) -> str:
    return json.dumps(document_to_dict(doc), indent=2, sort_keys=True) + "\n"


def document_from_spec(spec: ParabolicBundleSpec, genus: Optional[int] = None) -> BundleDocument:
    return BundleDocument(spec.name, spec, SCHEMA_VERSION, genus)
