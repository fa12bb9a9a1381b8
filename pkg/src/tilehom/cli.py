"""Command line: ``tilehom list``, ``tilehom compute TARGET``, ``tilehom export NAME``.

Exit codes: 0 success or PASS, 1 check FAIL, 2 input error, 3 resource cap.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

from . import catalog, homology, schemefile, singular
from .report import build_report, check_report, render_text
from .scheme import SchemeError

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _resolve(target: str):
    if target in catalog.names():
        return catalog.get(target)
    if os.path.exists(target):
        return schemefile.load_scheme(target)
    raise SchemeError(f"unknown target {target!r}: not a catalog name or scheme file (try `tilehom list`)")


def _primes(text: str | None):
    if text is None:
        return None
    out = []
    for part in text.split(","):
        p = int(part)
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        out.append(p)
    return out


def cmd_list(args) -> int:
    entries = catalog.catalog()
    if args.json:
        data = [{"name": e.name, "d": e.scheme.d, "n": e.scheme.n, "expected": bool(e.expected),
                 "description": e.description} for e in entries]
        print(json.dumps(data, indent=2))
    else:
        for e in entries:
            flag = "expected" if e.expected else "-"
            print(f"{e.name:<26} d={e.scheme.d} n={e.scheme.n}  {flag:<9} {e.description}")
    return EXIT_OK


def cmd_export(args) -> int:
    sys.stdout.write(schemefile.dump_scheme(_resolve(args.target)))
    return EXIT_OK


def cmd_compute(args) -> int:
    scheme = _resolve(args.target)
    if args.no_symmetry:
        scheme = scheme.without_symmetry()
    primes = _primes(args.primes)
    timing = {}
    t0 = time.perf_counter()
    cplx = singular.generate(scheme, max_orbits=args.max_orbits)
    timing["generate"] = time.perf_counter() - t0
    if args.dump_complex:
        with open(args.dump_complex, "w", encoding="utf-8") as fh:
            json.dump(cplx.dump(), fh, indent=1, sort_keys=True)
            fh.write("\n")
    t0 = time.perf_counter()
    res = homology.compute(scheme, cplx, primes)
    timing["homology"] = time.perf_counter() - t0
    report = build_report(scheme, cplx.counts(), res)
    if args.ring and args.ring not in ("Z", "ZZ"):
        ring = homology.parse_ring(args.ring)
        lengths = homology.ring_lengths(scheme, cplx, ring)
        entry = {"ring": str(ring), "lengths": lengths}
        if ring.p:
            entry["orders"] = [f"{ring.p}^{x}" for x in lengths]
        report.ring = entry
    if args.timing:
        report.timing = {k: round(v, 3) for k, v in timing.items()}
    code = EXIT_OK
    if args.check:
        if scheme.expected:
            report.check = check_report(report, scheme.expected)
            if report.check["verdict"] == "FAIL":
                code = EXIT_FAIL
        else:
            report.check = {"verdict": "NONE", "first_mismatch": None, "fields": {}}
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        print(render_text(report))
    return code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tilehom", description="Integral homology of canonical projection tilings")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="list built-in schemes")
    p.add_argument("--json", action="store_true", help="structured output")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("export", help="print a scheme as a YAML scheme file")
    p.add_argument("target")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("compute", help="compute homology of a catalog scheme or scheme file")
    p.add_argument("target", help="catalog name or path to a scheme file")
    p.add_argument("--check", action="store_true", help="compare with the expected values of the scheme")
    p.add_argument("--primes", help="comma separated primes for mod-p ranks (default: 2,3,5,7 and torsion primes)")
    p.add_argument("--ring", help="extra single-ring run: Q, Fp (e.g. F2) or Zq for a prime power q (e.g. Z4)")
    p.add_argument("--max-orbits", type=int, default=singular.DEFAULT_MAX_ORBITS)
    p.add_argument("--no-symmetry", action="store_true", help="ignore the point group")
    p.add_argument("--json", action="store_true", help="emit the structured report on stdout")
    p.add_argument("--output", help="also write the structured report to this file")
    p.add_argument("--dump-complex", metavar="PATH", help="write the singular complex as JSON")
    p.add_argument("--timing", action="store_true", help="include per-phase timing (makes reports non-reproducible)")
    p.set_defaults(func=cmd_compute)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except singular.OrbitCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (SchemeError, homology.HomologyError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
