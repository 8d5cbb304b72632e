"""Command-line interface.

Machine-readable output (JSON, CSV, or trace lines) goes to --output or
standard output; progress and diagnostics go to standard error.  Exit
codes: 0 success, 1 failed verification suite, 2 usage or input errors,
3 resumable abort (budget exceeded, checkpoint written), 4 model
inconsistency (an implementation bug).
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time

from .algebra import (
    count_normal_forms,
    free_check,
    format_word,
    normal_form_matrix,
    normalize,
    parse_word,
    verify_relations,
    word_matrix,
)
from .errors import (
    CheckpointFormatError,
    DegenerateInput,
    FleajumpError,
    MemoryBudgetExceeded,
    ModelInconsistency,
    NotATriangleState,
    ScanBudgetExceeded,
    UsageError,
    WordSyntaxError,
)
from .geometry import simulate, trace_lines
from .lattice import (
    parity_profile,
    primitive_form,
    quadruple_of,
    side_squares,
    triple,
)
from .orbits import brute_orbit, components, is_reduced, reduce
from .residues import audit_doc, audit_orbit
from .search import (
    FIXTURES,
    canonical_json,
    csv_rows,
    report_doc,
    scan,
    search,
)

_CONFIG_KEYS = ("bound", "workers", "memory_budget", "checkpoint", "format")


def _parse_point(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError("point must be 'x,y': %r" % text)
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise UsageError("point coordinates must be integers: %r" % text)


def _resolve_points(args):
    """Points from positionals or a named fixture, never both."""
    fixture = getattr(args, "fixture", None)
    raw = getattr(args, "points", []) or []
    if fixture is not None:
        if raw:
            raise UsageError("give either points or --fixture, not both")
        if fixture not in FIXTURES:
            raise UsageError(
                "unknown fixture %r; available: %s" % (fixture, ", ".join(sorted(FIXTURES)))
            )
        return FIXTURES[fixture], fixture
    if len(raw) != 3:
        raise UsageError("exactly three points required, e.g. 0,0 2,1 3,2")
    return tuple(_parse_point(p) for p in raw), None


def _load_config(path: str) -> dict:
    cfg = {}
    try:
        with open(path) as fh:
            for ln, line in enumerate(fh, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise UsageError("%s:%d: expected key=value" % (path, ln))
                key, value = line.split("=", 1)
                key = key.strip()
                if key not in _CONFIG_KEYS:
                    raise UsageError("%s:%d: unknown key %r" % (path, ln, key))
                cfg[key] = value.strip()
    except OSError as exc:
        raise UsageError("cannot read config %s: %s" % (path, exc))
    for key in ("bound", "workers", "memory_budget"):
        if key in cfg:
            try:
                cfg[key] = int(cfg[key])
            except ValueError:
                raise UsageError("config %s must be an integer" % key)
    return cfg


def _setting(args, cfg, key, default=None):
    value = getattr(args, key, None)
    if value is not None:
        return value
    return cfg.get(key, default)


def _emit(args, text: str):
    out = getattr(args, "output", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _progress(args, level: int, message: str):
    if args.verbose >= level:
        print(message, file=sys.stderr)


def _cmd_analyze(args) -> int:
    points, fixture = _resolve_points(args)
    t = triple(*points)
    ss = side_squares(t)
    q = quadruple_of(t)
    prim, index = primitive_form(t)
    pq = quadruple_of(prim) if index > 1 else q
    reduced, word = reduce(pq)
    doc = {
        "schema_version": 1,
        "kind": "analyze",
        "input": {"points": [list(p) for p in t], "fixture": fixture},
        "sides": list(ss),
        "quadruple": list(q),
        "parity_profile": parity_profile(ss),
        "primitivity": {
            "index": index,
            "rescaled_points": [list(p) for p in prim] if index > 1 else None,
            "rescaled_quadruple": list(pq) if index > 1 else None,
        },
        "is_reduced": is_reduced(pq),
        "reduced": {"quadruple": list(reduced), "word": format_word(word)},
    }
    _emit(args, canonical_json(doc))
    return 0


def _cmd_search(args) -> int:
    cfg = _load_config(args.config) if args.config else {}
    points, fixture = _resolve_points(args)
    bound = _setting(args, cfg, "bound")
    if bound is None:
        raise UsageError("--bound is required (flag or config)")
    workers = _setting(args, cfg, "workers", 1)
    memory_budget = _setting(args, cfg, "memory_budget", 0)
    checkpoint = _setting(args, cfg, "checkpoint")
    out_format = _setting(args, cfg, "format", "json")
    if out_format not in ("json", "csv"):
        raise UsageError("format must be json or csv")
    if memory_budget and not checkpoint:
        raise UsageError("--memory-budget requires --checkpoint for the spill file")
    labels = args.components.split(",") if args.components else None
    max_pending = memory_budget // 64 if memory_budget else 0
    if memory_budget and max_pending < 1:
        raise UsageError("memory budget too small for even one state")

    _progress(args, 1, "search: bound=%d workers=%d" % (bound, workers))
    t0 = time.monotonic()
    report = search(
        points,
        bound,
        labels=labels,
        workers=workers,
        max_pending=max_pending,
        checkpoint_prefix=checkpoint,
        resume=args.resume,
        backend=args.backend,
        fixture=fixture,
    )
    wall = time.monotonic() - t0
    for run in report.runs:
        _progress(
            args,
            2,
            "component %s: %d values reached, %d states"
            % (run.component.label, run.reach.count(), run.visited),
        )
    _progress(
        args,
        1,
        "done in %.2fs: %d missed integers, %d missed half-integers"
        % (wall, len(report.missed_integers), len(report.missed_half)),
    )
    if out_format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in csv_rows(report):
            writer.writerow(row)
        _emit(args, buf.getvalue())
    else:
        _emit(args, canonical_json(report_doc(report, wall)))
    return 0


def _cmd_normalize(args) -> int:
    word = parse_word(args.word)
    nf = normalize(word)
    verified = normal_form_matrix(nf) == word_matrix(word)
    doc = {
        "schema_version": 1,
        "kind": "normalize",
        "word": format_word(word),
        "body": format_word(nf.body),
        "tail": nf.tail,
        "verified": verified,
    }
    _emit(args, canonical_json(doc))
    if not verified:
        print("normal form failed matrix verification", file=sys.stderr)
        return 4
    return 0


def _cmd_simulate(args) -> int:
    points, _ = _resolve_points(args)
    word = parse_word(args.word) if args.word else ()
    trace = simulate(points, word)
    _emit(args, "\n".join(trace_lines(trace)) + "\n")
    return 0


def _verify_relations():
    checks = verify_relations()
    failures = [name for name, ok in checks if not ok]
    return {"checks": len(checks), "failures": failures}, not failures


def _verify_free():
    ok = free_check(7)
    return {"max_len": 7, "distinct_each_sign": 3280, "ok": ok}, ok


def _verify_counts():
    rows = {}
    ok = True
    for n in range(7):
        got = count_normal_forms(n)
        want = 3 ** (n + 1) - 2
        rows[str(n)] = {"got": got, "want": want}
        ok = ok and got == want
    return {"counts": rows, "ok": ok}, ok


def _verify_oracle():
    rows = {}
    ok = True
    for name, pts in sorted(FIXTURES.items()):
        q = quadruple_of(triple(*pts))
        reduced, _ = reduce(q)
        brute = brute_orbit(reduced, 6)
        bound = max(brute)
        report = search(pts, bound, fixture=name)
        missing = sorted(v for v in brute if not report.combined.contains(v))
        rows[name] = {"depth": 6, "bound": bound, "missing": missing}
        ok = ok and not missing
    return {"fixtures": rows, "ok": ok}, ok


def _cmd_verify(args) -> int:
    suites = {
        "relations": _verify_relations,
        "free": _verify_free,
        "counts": _verify_counts,
        "oracle": _verify_oracle,
    }
    body, ok = suites[args.suite]()
    doc = {"schema_version": 1, "kind": "verify", "suite": args.suite, "passed": ok}
    doc.update(body)
    _emit(args, canonical_json(doc))
    if not ok:
        print("verification suite %r failed" % args.suite, file=sys.stderr)
        return 1
    return 0


def _cmd_audit(args) -> int:
    cfg = _load_config(args.config) if args.config else {}
    points, fixture = _resolve_points(args)
    bound = _setting(args, cfg, "bound")
    if bound is None:
        raise UsageError("--bound is required (flag or config)")
    if bound < 1:
        raise UsageError("bound must be >= 1")
    t = triple(*points)
    prim, _ = primitive_form(t)
    reduced, _ = reduce(quadruple_of(prim))
    comps = components(reduced)
    t0 = time.monotonic()
    audits = []
    for comp in comps:
        _progress(args, 1, "auditing component %s" % comp.label)
        audits.append(audit_orbit(comp, bound))
    doc = audit_doc(
        audits,
        points=t,
        fixture=fixture,
        bound=bound,
        wall_time_s=time.monotonic() - t0,
    )
    _emit(args, canonical_json(doc))
    total = doc["overall"]["violations"]
    _progress(
        args,
        1,
        "audit: %d violations, %d valuation pairs, conformant=%s"
        % (total, len(doc["overall"]["valuation_pairs"]), doc["overall"]["conformant"]),
    )
    return 0


def _cmd_scan(args) -> int:
    cfg = _load_config(args.config) if args.config else {}
    bound = _setting(args, cfg, "bound")
    if bound is None:
        raise UsageError("--bound is required (flag or config)")
    doc = scan(
        args.max_coord,
        bound,
        time_budget_s=args.time_budget,
        backend=args.backend,
    )
    _emit(args, canonical_json(doc))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fleajump",
        description="Exact search of reachable triangle areas under square jumps",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="progress on stderr (-vv for per-component detail)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        # Accept -v after the subcommand too; SUPPRESS keeps a pre-command
        # -v from being reset by the subparser's default.
        p.add_argument(
            "-v",
            "--verbose",
            action="count",
            default=argparse.SUPPRESS,
            help=argparse.SUPPRESS,
        )
        return p

    def add_points(p, with_fixture=True):
        p.add_argument("points", nargs="*", help="three points as x,y")
        if with_fixture:
            p.add_argument("--fixture", help="named input: %s" % ", ".join(sorted(FIXTURES)))

    p = add_parser("analyze", help="quadruple, primitivity, reduced form")
    add_points(p)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_analyze)

    p = add_parser("search", help="reachable s-values and missed areas")
    add_points(p)
    p.add_argument("--bound", type=int)
    p.add_argument("--components", help="comma-separated labels, e.g. K,K2")
    p.add_argument("--workers", type=int)
    p.add_argument("--memory-budget", type=int, dest="memory_budget", help="bytes")
    p.add_argument("--checkpoint", help="spill/resume file prefix")
    p.add_argument("--resume", action="store_true")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--backend", choices=("pure", "compiled"))
    p.add_argument("--config", help="key=value file; flags take precedence")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_search)

    p = add_parser("normalize", help="single-sign normal form of a word")
    p.add_argument("--word", required=True, help="tokens U V W U' V' W'")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_normalize)

    p = add_parser("simulate", help="replay a word on actual points")
    add_points(p)
    p.add_argument("--word", default="", help="tokens U V W U' V' W'")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_simulate)

    p = add_parser("verify", help="built-in property suites")
    p.add_argument(
        "--suite", required=True, choices=("relations", "free", "counts", "oracle")
    )
    p.add_argument("--output")
    p.set_defaults(func=_cmd_verify)

    p = add_parser("audit", help="residue obstruction audit over an orbit")
    add_points(p)
    p.add_argument("--bound", type=int)
    p.add_argument("--config")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_audit)

    p = add_parser("scan", help="survey all primitive triangles in a box")
    p.add_argument("--max-coord", type=int, required=True, dest="max_coord")
    p.add_argument("--bound", type=int)
    p.add_argument("--time-budget", type=float, dest="time_budget")
    p.add_argument("--backend", choices=("pure", "compiled"))
    p.add_argument("--config")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        UsageError,
        WordSyntaxError,
        DegenerateInput,
        NotATriangleState,
        ScanBudgetExceeded,
        CheckpointFormatError,
    ) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except MemoryBudgetExceeded as exc:
        where = exc.checkpoint_path or "(no checkpoint path)"
        print("aborted: %s; resume from %s" % (exc, where), file=sys.stderr)
        return 3
    except ModelInconsistency as exc:
        print("model inconsistency: %s" % exc, file=sys.stderr)
        return 4
    except FleajumpError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
