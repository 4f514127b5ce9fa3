"""Regenerate fixtures/*.json and their golden reports in fixtures/golden/.

Every fixture is run through the orbifold cross-check before it is written;
the script refuses to write a fixture the oracle disagrees with.

    python scripts/make_fixtures.py
"""
import sys
from fractions import Fraction as F
from pathlib import Path

from parcones.corpus import with_explicit_hn
from parcones.document import document_from_spec, serialize_document
from parcones.oracle import cross_check
from parcones.parabolic import ParabolicBundleSpec
from parcones.report import ReportFlags, report_json, run_report

ROOT = Path(__file__).resolve().parents[1] / "fixtures"

split = ParabolicBundleSpec.from_split

FIXTURES = {
    # semistable, r = 2, d = 1, N = 2
    "example_A": split([(0, {"x": F(1, 2)}), (0, {"x": F(1, 2)})]),
    # unstable, r = 2, d = 3/2, HN (1, 1/2), (1, 1)
    "example_B": split([(0, {"x": F(1, 2)}), (1, {"x": 0})]),
    # unstable, r = 3, d = 3/2, HN (2, 0), (1, 3/2)
    "example_C": split([(0, {"x": 0}), (0, {"x": 0}), (1, {"x": F(1, 2)})]),
    "rank_one": split([(3, {"x": F(1, 2)})]),
    "classical_semistable": split([(1, {}), (1, {}), (1, {})]),
    "classical_unstable": split([(-1, {}), (0, {}), (0, {}), (2, {})]),
    "two_points_level6": split(
        [(0, {"x": F(1, 2), "y": F(1, 3)}), (0, {"x": 0, "y": F(2, 3)}), (1, {"x": F(1, 2), "y": F(1, 3)})]
    ),
    "shift_r2_three": split(
        [(0, {"x": F(1, 4)}), (2, {"x": F(1, 4)}), (2, {"x": F(1, 4)}), (2, {"x": F(1, 4)})]
    ),
    "hn_length3": split(
        [(-2, {"x": F(1, 3)}), (0, {"x": F(1, 3)}), (0, {"x": F(1, 3)}), (3, {"x": F(2, 3)}), (3, {"x": F(2, 3)})]
    ),
    "hn_length4_rank8": split(
        [
            (-3, {"x": F(1, 12)}), (-1, {"x": F(5, 12)}), (-1, {"x": F(5, 12)}),
            (0, {"x": F(7, 12)}), (0, {"x": F(7, 12)}), (0, {"x": F(7, 12)}),
            (4, {"x": F(11, 12)}), (4, {"x": F(11, 12)}),
        ]
    ),
    "semistable_mixed_weights": split(
        [(0, {"x": F(1, 4), "y": F(3, 4)}), (0, {"x": F(3, 4), "y": F(1, 4)}), (1, {"x": 0, "y": 0})]
    ),
}
FIXTURES["explicit_hn_C"] = with_explicit_hn(FIXTURES["example_C"])


def main() -> int:
    (ROOT / "golden").mkdir(parents=True, exist_ok=True)
    flags = ReportFlags(check_oracle=True)
    for name, spec in sorted(FIXTURES.items()):
        spec = ParabolicBundleSpec(spec.rank, spec.degree, spec.points, spec.split, spec.explicit_hn, name)
        xc = cross_check(spec)
        if not xc.passed:
            print(f"{name}: oracle mismatch, not written", *xc.failures(), sep="\n  ")
            return 2
        doc = document_from_spec(spec)
        (ROOT / f"{name}.json").write_text(serialize_document(doc))
        (ROOT / "golden" / f"{name}.report.json").write_text(report_json(run_report(doc, flags)))
        print(f"{name}: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
