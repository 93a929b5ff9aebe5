"""Command line interface: ``octacensus <command> [options]``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from collections import Counter
from pathlib import Path

from . import census
from .enumeration import all_pairings, orbit_representatives
from .homology import h1
from .matching import DEFAULT_BUDGET
from .quotient import (boundary_name, boundary_type, edge_class_sizes,
                       euler_characteristic_boundary, euler_characteristic_m, vertex_links)


class CheckFailed(Exception):
    def __init__(self, names):
        super().__init__(", ".join(names))
        self.names = list(names)


def _emit(args, name: str, rows: list[dict], summary: dict) -> None:
    if args.format == "csv":
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v
                                 for k, v in row.items()})
        text = buf.getvalue()
    else:
        text = json.dumps({"summary": summary, "rows": rows}, sort_keys=True, indent=1) + "\n"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        path = out / f"{name}.{args.format}"
        path.write_text(text)
        print(json.dumps(summary, sort_keys=True))
        print(f"wrote {path}")
    else:
        sys.stdout.write(text)


def _representatives():
    return [(s, s.pattern) for s in orbit_representatives()]


def cmd_enumerate(args):
    rows = [{"encoding": list(s.representative), "orbit_size": s.orbit_size,
             "stabilizer_order": s.stabilizer_order} for s in orbit_representatives()]
    summary = {"pairings": len(all_pairings()), "raw_count": len(all_pairings()) * 81,
               "orbits": len(rows), "orbit_size_total": sum(r["orbit_size"] for r in rows)}
    _emit(args, "enumerate", rows, summary)
    failed = []
    if summary["orbit_size_total"] != summary["raw_count"]:
        failed.append("orbit_sizes_sum")
    if any(r["orbit_size"] * r["stabilizer_order"] != 48 for r in rows):
        failed.append("orbit_stabilizer")
    return failed


def cmd_classify(args):
    rows, failed = [], set()
    for s, p in _representatives():
        b = boundary_type(p)
        sizes = edge_class_sizes(p)
        chi_m, chi_b = euler_characteristic_m(p), euler_characteristic_boundary(p)
        rows.append({"encoding": list(s.representative), "boundary": boundary_name(b),
                     "edge_class_sizes": list(sizes),
                     "vertex_link_chi": [v.euler_characteristic for v in vertex_links(p)],
                     "chi_m": chi_m, "chi_boundary": chi_b})
        if (b == (3,)) != (list(sizes) == [12]):
            failed.add("S3_single_edge_class")
        if 2 * chi_m != chi_b:
            failed.add("euler_identity")
    summary = dict(Counter(r["boundary"] for r in rows))
    _emit(args, "classify", rows, summary)
    return sorted(failed)


def cmd_homology(args):
    rows = [{"encoding": list(s.representative), "boundary": boundary_name(boundary_type(p)),
             "h1": str(h1(p))} for s, p in _representatives()]
    tally: dict = {}
    for r in rows:
        tally.setdefault(r["boundary"], Counter())[r["h1"]] += 1
    _emit(args, "homology", rows, {b: dict(sorted(c.items())) for b, c in tally.items()})
    return []


def cmd_tv(args):
    config = census.CensusConfig(r_max=args.rmax, threads=args.threads)
    records = census.build_records(config)
    rows = [{"encoding": list(r.encoding), "boundary": r.boundary,
             **{f"tv_{k}": v for k, v in enumerate(r.tv, start=3)}} for r in records]
    census.assign_fingerprint_classes(records)
    summary = {b: len({r.fingerprint_class for r in records if r.boundary == b})
               for b in census.REFERENCE["boundary_distribution"]}
    _emit(args, "tv", rows, {"fingerprint_classes": summary})
    bad = [r for r in records for v in r.tv if v < -1e-9]
    return ["tv_nonnegative"] if bad else []


def cmd_match(args):
    config = census.CensusConfig(r_max=args.rmax, match_budget=args.budget, seed=args.seed,
                                 threads=args.threads)
    records = census.build_records(config)
    census.assign_fingerprint_classes(records)
    census.assign_match_classes(records, config)
    rows = [{"encoding": list(r.encoding), "boundary": r.boundary,
             "fingerprint_class": r.fingerprint_class, "match_class": r.match_class}
            for r in records]
    summary = {b: {"fingerprint_classes": len({r.fingerprint_class for r in records
                                               if r.boundary == b}),
                   "match_classes": len({r.match_class for r in records if r.boundary == b})}
               for b in census.REFERENCE["boundary_distribution"]}
    _emit(args, "match", rows, summary)
    return [e.name for e in census.invariant_checks(records) if not e.passed]


def _config(args) -> census.CensusConfig:
    return census.CensusConfig(r_max=args.rmax, match_budget=args.budget, seed=args.seed,
                               threads=args.threads)


def cmd_census(args):
    out = args.out or "census_out"
    result = census.run_census(_config(args), out)
    for e in result.invariant_checks:
        print(f"{'ok  ' if e.passed else 'FAIL'} {e.name}: {json.dumps(e.computed)}")
    print(f"wrote census to {out} (config {result.config.digest()[:12]})")
    return [e.name for e in result.invariant_checks if not e.passed]


def cmd_report(args):
    if args.records:
        records = census.load_records(args.records)
        digest = records[0].provenance.get("config_digest", "") if records else ""
    else:
        result = census.run_census(_config(args), args.out)
        records, digest = result.records, result.config.digest()
    failed = [e.name for e in census.invariant_checks(records) if not e.passed]
    if args.against_paper:
        report = census.compare_with_reference(records, digest)
        for e in report.entries:
            print(f"{'PASS' if e.passed else 'FAIL'} {e.name}: expected {json.dumps(e.expected)}"
                  f", computed {json.dumps(e.computed, sort_keys=True)}  [{e.reference}]")
        failed += [e.name for e in report.failures()]
    else:
        for b in census.REFERENCE["boundary_distribution"]:
            group = [r for r in records if r.boundary == b]
            print(f"{b}: {len(group)} patterns, "
                  f"{len({r.fingerprint_class for r in group})} fingerprint classes, "
                  f"{len({r.match_class for r in group})} match classes")
    return failed


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output directory")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="octacensus", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("enumerate", parents=[common], help="counts and orbit representatives")
    sub.add_parser("classify", parents=[common], help="boundary types and Euler checks")
    sub.add_parser("homology", parents=[common], help="first homology of every pattern")
    p = sub.add_parser("tv", parents=[common], help="Turaev-Viro invariants")
    p.add_argument("--rmax", type=int, default=8)
    for name, helptext in (("match", "randomized matching classes"),
                           ("census", "full pipeline with file output"),
                           ("report", "summary or comparison with published tallies")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--rmax", type=int, default=8)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        if name == "report":
            p.add_argument("--against-paper", action="store_true",
                           help="compare with the published reference tallies")
            p.add_argument("--records", help="read census.jsonl instead of recomputing")
    return parser


COMMANDS = {"enumerate": cmd_enumerate, "classify": cmd_classify, "homology": cmd_homology,
            "tv": cmd_tv, "match": cmd_match, "census": cmd_census, "report": cmd_report}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        failed = COMMANDS[args.command](args)
    except census.CensusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if failed:
        print(f"failed checks: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
