"""Command-line entry point.

Exit status: 0 success, 1 a verification failed, 2 usage error,
3 I/O error or corrupt catalog.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import claims
from .catalog import CatalogError, CycleCatalog, fixture_catalog
from .maps import MapError, make_map, preset
from .orbit import Bounds, BoundsError, classify_orbit, detect_cycle
from .reporting import records_to_csv, report_to_json, summary_text
from .scanner import scan_range

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {v}")
    return v


def _map_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("map")
    g.add_argument("--map", dest="map_name", help='preset: "3n+1", "5n+1" or "3n+5"')
    g.add_argument("--odd-mul", type=int, help="odd-branch multiplier a (custom map)")
    g.add_argument("--odd-add", type=int, help="odd-branch addend b (custom map)")


def _bounds_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("bounds")
    g.add_argument("--max-steps", type=int, default=100_000)
    g.add_argument("--max-value-bits", type=int, default=4096)
    g.add_argument("--no-stop-at-one", action="store_true",
                   help="iterate through 1 and report its cycle instead")


def _resolve_map(args, default: str | None = None):
    custom = args.odd_mul is not None or args.odd_add is not None
    if custom and args.map_name:
        raise UsageError("give either --map or --odd-mul/--odd-add, not both")
    if custom:
        if args.odd_mul is None or args.odd_add is None:
            raise UsageError("--odd-mul and --odd-add must be given together")
        return make_map(args.odd_mul, args.odd_add)
    name = args.map_name or default
    if name is None:
        raise UsageError("a map is required (--map or --odd-mul/--odd-add)")
    return preset(name)


def _resolve_bounds(args) -> Bounds:
    return Bounds(args.max_steps, args.max_value_bits, not args.no_stop_at_one)


def _open_out(path, default):
    return default if path in (None, "-") else open(path, "w", encoding="utf-8", newline="")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="collatzlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbit", help="classify one seed")
    _map_args(p)
    _bounds_args(p)
    p.add_argument("--seed", type=_positive_int, required=True)
    p.add_argument("--trajectory", action="store_true", help="print the visited values")
    p.add_argument("--head", type=_positive_int, help="print at most this many trajectory values")

    p = sub.add_parser("scan", help="classify every seed in a range")
    _map_args(p)
    _bounds_args(p)
    p.add_argument("--from", dest="lo", type=_positive_int, required=True)
    p.add_argument("--to", dest="hi", type=_positive_int, required=True)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--catalog", help="start from this catalog file")
    p.add_argument("--fixtures", action="store_true", help="start from the published cycles")
    p.add_argument("--save-catalog", help="write the updated catalog here")

    p = sub.add_parser("cycles", help="list or convert cycle catalogs")
    _map_args(p)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--fixtures", action="store_true", help="the published cycles of a preset map")
    src.add_argument("--catalog", help="a catalog file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--save", help="write the catalog file here")

    p = sub.add_parser("verify", help="check a claim; exit 1 on any failure")
    p.add_argument("claim", choices=("pow2", "entry", "digits", "mult5", "correspondence"))
    p.add_argument("--limit", type=_positive_int,
                   help="r_max (pow2, entry), largest multiple of 5 (mult5), k_max (correspondence)")
    p.add_argument("--steps", type=_positive_int, default=1000, help="correspondence steps")
    p.add_argument("--m", type=_positive_int, action="append",
                   help="pow2: cycle member(s) to test (default: every fixture element)")
    p.add_argument("--extra", type=_positive_int, action="append",
                   help="mult5: additional seeds (default: 225 17585 3698450)")
    p.add_argument("--catalog", help="digits: catalog file (default: 5n+1 fixtures)")
    return parser


def run_orbit(args, out) -> int:
    map = _resolve_map(args)
    bounds = _resolve_bounds(args)
    retain = "full" if args.trajectory else "none"
    if args.trajectory and args.head:
        retain = args.head
    orbit = classify_orbit(map, args.seed, bounds, retain=retain)
    print(f"map: {map.name}", file=out)
    print(f"seed: {orbit.seed}", file=out)
    print(f"classification: {orbit.classification.value}", file=out)
    print(f"steps: {orbit.steps_to_termination}", file=out)
    print(f"peak: {orbit.peak}", file=out)
    if orbit.cycle is not None:
        print(f"entry_steps: {orbit.entry_steps}", file=out)
        print(f"cycle_min: {orbit.cycle.min_element}", file=out)
        print(f"cycle_len: {orbit.cycle.length}", file=out)
        print("cycle: " + " ".join(map_str(orbit.cycle.elements)), file=out)
    elif orbit.reaches_one:
        loop = detect_cycle(map, 1, Bounds(bounds.max_steps, bounds.max_value_bits, False))
        if loop is not None:
            print("cycle_through_one: " + " ".join(map_str(loop[0])), file=out)
    else:
        print(f"bound: {orbit.bound}", file=out)
    if args.trajectory:
        print("trajectory:", file=out)
        for x in orbit.prefix:
            print(x, file=out)
    return EXIT_OK


def map_str(values):
    return [str(v) for v in values]


def _load_catalog(path: str) -> CycleCatalog:
    try:
        return CycleCatalog.load(path)
    except OSError as exc:
        raise CatalogError(f"cannot read catalog {path}: {exc}") from exc


def run_scan(args, out) -> int:
    map = _resolve_map(args)
    bounds = _resolve_bounds(args)
    if args.lo > args.hi:
        raise UsageError(f"--from {args.lo} is larger than --to {args.hi}")
    catalog = None
    if args.catalog:
        catalog = _load_catalog(args.catalog)
    if args.fixtures:
        fx = fixture_catalog(map.name)
        catalog = fx if catalog is None else catalog.merge(fx)
    report, catalog = scan_range(map, args.lo, args.hi, bounds, catalog, args.workers)
    data = records_to_csv(report.records) if args.format == "csv" else report_to_json(report)
    fh = _open_out(args.out, out)
    try:
        fh.write(data)
    finally:
        if fh is not out:
            fh.close()
    if args.save_catalog:
        catalog.save(args.save_catalog)
    print(summary_text(report), file=sys.stderr)
    return EXIT_OK


def run_cycles(args, out) -> int:
    if args.fixtures:
        map = _resolve_map(args)
        try:
            catalog = fixture_catalog(map.name)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    else:
        catalog = _load_catalog(args.catalog)
        if args.map_name or args.odd_mul is not None:
            map = _resolve_map(args)
            if map != catalog.map:
                raise UsageError(f"catalog is for {catalog.map.name}, not {map.name}")
    if args.format == "json":
        out.write(catalog.to_json())
    else:
        print(f"map: {catalog.map.name}  cycles: {len(catalog)}", file=out)
        for c in catalog.cycles:
            p = catalog.provenance(c.min_element)
            origin = p.source if p.seed is None else f"{p.source} (seed {p.seed})"
            print(f"min={c.min_element} len={c.length} [{origin}]: " + " ".join(map_str(c.elements)), file=out)
    if args.save:
        catalog.save(args.save)
    return EXIT_OK


def run_verify(args, out) -> int:
    claim = args.claim
    if claim == "pow2":
        r_max = args.limit or 20
        fx = fixture_catalog("5n+1")
        ms = args.m or [x for c in fx.cycles for x in c.elements]
        results = []
        for m in ms:
            try:
                results.append(claims.verify_pow2_same_cycle(m, r_max, catalog=fx))
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        result = claims.ClaimResult("pow2")
        for r in results:
            result.tested_instances += r.tested_instances
            result.failures.extend(r.failures)
    elif claim == "entry":
        result = claims.verify_10_pow2_entry(args.limit or 10)
    elif claim == "digits":
        catalog = _load_catalog(args.catalog) if args.catalog else None
        result = claims.verify_odd_digit_pattern(catalog)
    elif claim == "mult5":
        extras = args.extra if args.extra else claims.SAMPLE_MULTIPLES_OF_5
        result = claims.verify_multiples_of_5(max(args.limit or 1000, 5), extras)
    else:
        result = claims.verify_correspondence(args.limit or 1000, args.steps)

    for f in result.failures:
        print(json.dumps({"claim": result.claim_id, **{k: _jsonable(v) for k, v in f.items()}}), file=out)
    status = "PASS" if result.passed else "FAIL"
    extra = ""
    if result.measured_constants.get("offset") is not None:
        extra = f" offset={result.measured_constants['offset']}"
    print(f"{result.claim_id}: {status} instances={result.tested_instances} "
          f"failures={len(result.failures)}{extra}", file=sys.stderr)
    return EXIT_OK if result.passed else EXIT_FAIL


def _jsonable(v):
    if isinstance(v, int) and not isinstance(v, bool):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


COMMANDS = {"orbit": run_orbit, "scan": run_scan, "cycles": run_cycles, "verify": run_verify}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, MapError, BoundsError) as exc:
        print(f"collatzlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CatalogError, OSError) as exc:
        print(f"collatzlab: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
