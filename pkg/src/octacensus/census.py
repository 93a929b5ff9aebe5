"""Full census pipeline: classification, fingerprints, matching and reports.

Outputs (all deterministic for a fixed config):

``census.jsonl``
    one JSON object per pattern, schema version :data:`SCHEMA_VERSION`;
``census.csv``
    the same records flattened;
``triangulations.txt``
    the 4-tetrahedron triangulation of every pattern in the plain text format;
``report.json`` / ``report.csv``
    the comparison of computed tallies with the published reference values.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .enumeration import all_pairings, orbit_representatives
from .homology import h1
from .matching import DEFAULT_BUDGET, DEFAULT_CEILING, derived_seed, match_classes
from .octmodel import GluingPattern
from .quotient import (BOUNDARY_TYPES, boundary_name, boundary_type, edge_class_sizes,
                       edge_classes, euler_characteristic_boundary, euler_characteristic_m)
from .triangulation import octa_to_tri
from .turaev_viro import tv_invariant

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1

# published tallies the census is compared against
REFERENCE = {
    "raw_count": 8505,
    "orbit_count": 298,
    "boundary_distribution": {"empty": 37, "S1": 81, "S1+S1": 9, "S2": 113, "S2+S1": 2, "S3": 56},
    "S3_homology": {"Z^3": 52, "Z_3 + Z^3": 4},
    "S2+S1_homology": {"Z^3": 2},
    # distinct manifolds per boundary type: (hyperbolic, non-hyperbolic)
    "distinct_manifolds": {"empty": (0, 17), "S1": (9, 21), "S1+S1": (2, 5), "S2": (63, 16),
                           "S2+S1": (2, 0), "S3": (56, 0)},
    # lower bounds on fingerprint classes among the candidates
    "fingerprint_lower_bounds": {"empty": 16, "S1": 17},
}

MATCHED_TYPES = ("empty", "S1", "S1+S1", "S2", "S2+S1")


class CensusError(RuntimeError):
    pass


@dataclass(frozen=True)
class CensusConfig:
    r_max: int = 8
    match_budget: int = DEFAULT_BUDGET
    seed: int = 1
    ceiling: int = DEFAULT_CEILING
    matched_types: tuple[str, ...] = MATCHED_TYPES
    threads: int = 1

    def digest(self) -> str:
        """sha256 of the canonical JSON form (thread count excluded)."""
        data = asdict(self)
        data.pop("threads")
        data["matched_types"] = list(data["matched_types"])
        text = json.dumps(data, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()


@dataclass
class CensusRecord:
    row_id: int
    encoding: tuple[int, ...]
    orbit_size: int
    boundary: str
    edge_class_sizes: tuple[int, ...]
    h1: str
    tv: tuple[float, ...]  # TV_3 .. TV_rmax
    fingerprint_class: int = -1
    match_class: int = -1
    provenance: dict = field(default_factory=dict)

    def fingerprint(self):
        return (self.h1, tuple(_fp_round(v) for v in self.tv))

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "row": self.row_id,
            "encoding": list(self.encoding),
            "orbit_size": self.orbit_size,
            "boundary": self.boundary,
            "edge_class_sizes": list(self.edge_class_sizes),
            "h1": self.h1,
            "tv": {str(r): v for r, v in enumerate(self.tv, start=3)},
            "fingerprint_class": self.fingerprint_class,
            "match_class": self.match_class,
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, obj: dict) -> CensusRecord:
        tv = tuple(obj["tv"][k] for k in sorted(obj["tv"], key=int))
        return cls(obj["row"], tuple(obj["encoding"]), obj["orbit_size"], obj["boundary"],
                   tuple(obj["edge_class_sizes"]), obj["h1"], tv, obj["fingerprint_class"],
                   obj["match_class"], obj["provenance"])


def _fp_round(v: float) -> float:
    # fingerprints compare TV values to 8 decimals; +0.0 absorbs -0.0
    return round(v, 8) + 0.0


@dataclass
class CheckEntry:
    name: str
    reference: str
    expected: object
    computed: object
    passed: bool

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class ComparisonReport:
    entries: list[CheckEntry]
    config_digest: str

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if not e.passed]

    def to_json(self) -> dict:
        return {"schema": SCHEMA_VERSION, "config_digest": self.config_digest,
                "passed": self.passed, "entries": [e.to_json() for e in self.entries]}


@dataclass
class CensusResult:
    config: CensusConfig
    records: list[CensusRecord]
    invariant_checks: list[CheckEntry]
    report: ComparisonReport

    def classes(self, kind: str, boundary: str) -> int:
        attr = {"fingerprint": "fingerprint_class", "match": "match_class"}[kind]
        return len({getattr(r, attr) for r in self.records if r.boundary == boundary})


# ----------------------------------------------------------------------
# pipeline


def _tv_values(code, r_max: int) -> tuple[float, ...]:
    t = octa_to_tri(GluingPattern.decode(code))
    return tuple(tv_invariant(t, r).value for r in range(3, r_max + 1))


def _boundary_order(name: str) -> int:
    return [boundary_name(b) for b in BOUNDARY_TYPES].index(name)


def build_records(config: CensusConfig) -> list[CensusRecord]:
    """One record per orbit, sorted by (boundary type, encoding), without classes."""
    rows = []
    for summary in orbit_representatives():
        p = summary.pattern
        try:
            rows.append((boundary_name(boundary_type(p)), summary, p, str(h1(p)),
                         edge_class_sizes(p)))
        except Exception as exc:
            raise CensusError(f"pattern {summary.representative}: {exc}") from exc
    rows.sort(key=lambda row: (_boundary_order(row[0]), row[1].representative))
    codes = [row[1].representative for row in rows]
    if config.threads > 1:
        with ProcessPoolExecutor(config.threads) as pool:
            tvs = list(pool.map(_tv_values, codes, [config.r_max] * len(codes)))
    else:
        tvs = []
        for code in codes:
            try:
                tvs.append(_tv_values(code, config.r_max))
            except Exception as exc:
                raise CensusError(f"pattern {code}: {exc}") from exc
    provenance = {"tool_version": __version__, "seed": config.seed,
                  "config_digest": config.digest()}
    return [CensusRecord(i, s.representative, s.orbit_size, name, sizes, hom, tv,
                         provenance=dict(provenance))
            for i, ((name, s, p, hom, sizes), tv) in enumerate(zip(rows, tvs))]


def assign_fingerprint_classes(records: list[CensusRecord]) -> None:
    ids: dict = {}
    for r in records:
        r.fingerprint_class = ids.setdefault((r.boundary,) + r.fingerprint(), r.row_id)


def refined_fingerprint_classes(records: list[CensusRecord], boundary: str,
                                r_to: int = 16) -> int:
    """Number of fingerprint classes of one boundary type with TV up to ``r_to``.

    Higher levels are computed one at a time and only for records whose
    class is still shared, so the cost stays near the minimum needed.
    """
    group = [r for r in records if r.boundary == boundary]
    keys = {r.row_id: r.fingerprint() for r in group}
    r = max((len(rec.tv) + 2 for rec in group), default=2)
    while r < r_to:
        r += 1
        counts = Counter(keys.values())
        shared = [rec for rec in group if counts[keys[rec.row_id]] > 1]
        if not shared:
            break
        log.info("TV level %d for %d %s records", r, len(shared), boundary)
        for rec in shared:
            t = octa_to_tri(GluingPattern.decode(rec.encoding))
            keys[rec.row_id] += (_fp_round(tv_invariant(t, r).value),)
    return len(set(keys.values()))


def assign_match_classes(records: list[CensusRecord], config: CensusConfig) -> None:
    """Matching runs per boundary type, only inside fingerprint classes."""
    by_type: dict[str, list[CensusRecord]] = {}
    for r in records:
        by_type.setdefault(r.boundary, []).append(r)
    for name, group in by_type.items():
        if name not in config.matched_types:
            for r in group:
                r.match_class = r.row_id
            continue
        log.info("matching %d %s patterns", len(group), name)
        tris = [octa_to_tri(GluingPattern.decode(r.encoding)) for r in group]
        classes = match_classes(tris, config.match_budget, derived_seed(config.seed, name),
                                config.ceiling, groups=[r.fingerprint_class for r in group])
        for r, c in zip(group, classes):
            r.match_class = group[c].row_id


def invariant_checks(records: list[CensusRecord]) -> list[CheckEntry]:
    """Structural consistency of a finished census."""
    out = []
    seen = Counter(r.encoding for r in records)
    out.append(CheckEntry("records_unique", "orbit representatives", 298,
                          len(seen), len(seen) == len(records) == 298))
    computed = Counter(r.boundary for r in records)
    expected = Counter(boundary_name(boundary_type(s.pattern)) for s in orbit_representatives())
    out.append(CheckEntry("records_per_boundary_type", "classification", dict(expected),
                          dict(computed), computed == expected))
    fp_of_class: dict = {}
    consistent = True
    for r in records:
        key = (r.boundary, r.fingerprint())
        consistent &= fp_of_class.setdefault(r.match_class, key) == key
    out.append(CheckEntry("match_classes_share_fingerprints", "matching soundness", True,
                          consistent, consistent))
    for name in BOUNDARY_TYPES:
        b = boundary_name(name)
        group = [r for r in records if r.boundary == b]
        lower = len({r.fingerprint_class for r in group})
        upper = len({r.match_class for r in group})
        out.append(CheckEntry(f"sandwich_{b}", "fingerprint classes <= match classes",
                              "lower <= upper", [lower, upper], lower <= upper))
    nonneg = all(v >= -1e-9 for r in records for v in r.tv)
    out.append(CheckEntry("tv_nonnegative", "observed property", True, nonneg, nonneg))
    return out


def compare_with_reference(records: list[CensusRecord], config_digest: str) -> ComparisonReport:
    entries = []
    raw = len(all_pairings()) * 81
    entries.append(CheckEntry("raw_count", "published raw gluing count",
                              REFERENCE["raw_count"], raw, raw == REFERENCE["raw_count"]))
    summaries = orbit_representatives()
    entries.append(CheckEntry("orbit_count", "published inequivalent patterns",
                              REFERENCE["orbit_count"], len(summaries),
                              len(summaries) == REFERENCE["orbit_count"]))
    total = sum(s.orbit_size for s in summaries)
    stab_ok = all(s.orbit_size * s.stabilizer_order == 48 for s in summaries)
    entries.append(CheckEntry("orbit_sizes", "orbit-stabilizer", [8505, True], [total, stab_ok],
                              total == 8505 and stab_ok))
    dist = Counter(r.boundary for r in records)
    for b, n in REFERENCE["boundary_distribution"].items():
        entries.append(CheckEntry(f"boundary_{b}", "published boundary-type distribution",
                                  n, dist.get(b, 0), dist.get(b, 0) == n))
    violations = 0
    for s in summaries:
        p = s.pattern
        sizes = [c.size for c in edge_classes(p)]
        violations += (boundary_type(p) == (3,)) != (sizes == [12])
    entries.append(CheckEntry("S3_single_edge_class", "genus-3 boundary criterion", 0,
                              violations, violations == 0))
    for b, key in (("S3", "S3_homology"), ("S2+S1", "S2+S1_homology")):
        tally = dict(sorted(Counter(r.h1 for r in records if r.boundary == b).items()))
        entries.append(CheckEntry(f"{b}_homology", "published homology column",
                                  REFERENCE[key], tally, tally == REFERENCE[key]))
    bad = sum(1 for s in summaries if 2 * euler_characteristic_m(s.pattern)
              != euler_characteristic_boundary(s.pattern))
    entries.append(CheckEntry("euler_identity", "chi(M) = chi(boundary)/2", 0, bad, bad == 0))
    for b, bound in REFERENCE["fingerprint_lower_bounds"].items():
        n = len({r.fingerprint_class for r in records if r.boundary == b})
        entries.append(CheckEntry(f"fingerprint_lower_bound_{b}",
                                  "published count of indistinguishable candidates",
                                  f">= {bound}", n, n >= bound))
    for b in MATCHED_TYPES:
        hyp, non = REFERENCE["distinct_manifolds"][b]
        n = len({r.match_class for r in records if r.boundary == b})
        entries.append(CheckEntry(f"match_upper_bound_{b}",
                                  "published candidates after matching (+ hyperbolic types)",
                                  f"<= {non} + {hyp}", n, n <= non + hyp))
    return ComparisonReport(entries, config_digest)


def run_census(config: CensusConfig = CensusConfig(), out_dir=None) -> CensusResult:
    records = build_records(config)
    assign_fingerprint_classes(records)
    assign_match_classes(records, config)
    result = CensusResult(config, records, invariant_checks(records),
                          compare_with_reference(records, config.digest()))
    if out_dir is not None:
        write_outputs(result, out_dir)
    return result


# ----------------------------------------------------------------------
# export

CSV_FIELDS = ["row", "encoding", "orbit_size", "boundary", "edge_class_sizes", "h1",
              "fingerprint_class", "match_class"]


def records_jsonl(records) -> str:
    return "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for r in records)


def records_csv(records) -> str:
    buf = io.StringIO()
    r_max = max((len(r.tv) + 2 for r in records), default=2)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS + [f"tv_{r}" for r in range(3, r_max + 1)])
    for r in records:
        writer.writerow([r.row_id, " ".join(map(str, r.encoding)), r.orbit_size, r.boundary,
                         " ".join(map(str, r.edge_class_sizes)), r.h1, r.fingerprint_class,
                         r.match_class] + [repr(v) for v in r.tv])
    return buf.getvalue()


def records_triangulations(records) -> str:
    parts = []
    for r in records:
        t = octa_to_tri(GluingPattern.decode(r.encoding))
        parts.append(f"## row {r.row_id} encoding {' '.join(map(str, r.encoding))}\n")
        parts.append(t.to_text())
        if not parts[-1].endswith("\n"):
            parts.append("\n")
    return "".join(parts)


def report_csv(entries) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["check", "reference", "expected", "computed", "passed"])
    for e in entries:
        writer.writerow([e.name, e.reference, json.dumps(e.expected, sort_keys=True),
                         json.dumps(e.computed, sort_keys=True), e.passed])
    return buf.getvalue()


EXPORTERS = {"jsonl": records_jsonl, "csv": records_csv, "triangulation-text": records_triangulations}


def export(records, fmt: str, path) -> Path:
    """Write records in one of :data:`EXPORTERS`' formats."""
    if fmt not in EXPORTERS:
        raise ValueError(f"unknown format {fmt!r}")
    path = Path(path)
    try:
        path.write_text(EXPORTERS[fmt](records))
    except OSError as exc:
        raise CensusError(f"cannot write {path}: {exc}") from exc
    return path


def write_outputs(result: CensusResult, out_dir) -> list[Path]:
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CensusError(f"cannot create {out}: {exc}") from exc
    paths = [export(result.records, "jsonl", out / "census.jsonl"),
             export(result.records, "csv", out / "census.csv"),
             export(result.records, "triangulation-text", out / "triangulations.txt")]
    report = result.report.to_json()
    report["invariant_checks"] = [e.to_json() for e in result.invariant_checks]
    for path, text in ((out / "report.json", json.dumps(report, sort_keys=True, indent=1) + "\n"),
                       (out / "report.csv",
                        report_csv(result.invariant_checks + result.report.entries))):
        try:
            path.write_text(text)
        except OSError as exc:
            raise CensusError(f"cannot write {path}: {exc}") from exc
        paths.append(path)
    return paths


def load_records(path) -> list[CensusRecord]:
    with open(path) as fh:
        return [CensusRecord.from_json(json.loads(line)) for line in fh if line.strip()]
