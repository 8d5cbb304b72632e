"""Search pipeline: enumerate reachable s-values, extract missed areas.

Pipeline: points -> primitivity rescale -> quadruple -> reduce ->
component decomposition -> per-component bucket enumeration -> union ->
missed-value extraction.  Because positive jumps strictly increase s,
every value <= bound absent from the union is missed by all jump
sequences whatsoever, so bounded missed-set results are final.

Reports serialize to a stable JSON document.  Everything except the
"runtime" section is deterministic for a given input, independent of
worker count and backend; tests compare that payload byte for byte.
Checkpoints are plain text: a versioned header, one frontier state per
line in decimal, and a trailing record count.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from .algebra import Word, format_word
from .errors import (
    CheckpointFormatError,
    MemoryBudgetExceeded,
    ScanBudgetExceeded,
    UsageError,
)
from .kernel import default_backend, run_buckets
from .lattice import (
    PointTriple,
    Quadruple,
    primitive_form,
    quadruple_of,
    triple,
)
from .orbits import Component, canonical, components, reduce

SCHEMA_VERSION = 1
CHECKPOINT_MAGIC = "fleajump-checkpoint"
CHECKPOINT_VERSION = 1

FIXTURES = {
    "G": ((0, 0), (2, 1), (3, 2)),
    "H": ((0, 0), (2, 0), (4, 1)),
}


@dataclass
class ReachSet:
    """Bit-indexed membership set over s in [0, bound]."""

    bound: int
    bits: bytearray

    @classmethod
    def empty(cls, bound: int) -> "ReachSet":
        return cls(bound, bytearray((bound >> 3) + 1))

    def contains(self, s: int) -> bool:
        if s < 0 or s > self.bound:
            return False
        return bool(self.bits[s >> 3] & (1 << (s & 7)))

    def count(self) -> int:
        return int.from_bytes(self.bits, "little").bit_count()

    def values(self):
        for s in range(self.bound + 1):
            if self.bits[s >> 3] & (1 << (s & 7)):
                yield s

    def union(self, other: "ReachSet") -> "ReachSet":
        assert self.bound == other.bound
        merged = bytearray(a | b for a, b in zip(self.bits, other.bits))
        return ReachSet(self.bound, merged)


@dataclass
class ComponentRun:
    component: Component
    reach: ReachSet
    visited: int
    peak_pending: int


@dataclass
class SearchReport:
    points: PointTriple
    fixture: str | None
    index: int
    primitive_points: PointTriple | None
    quadruple: Quadruple
    reduced: Quadruple
    reduce_word: Word
    bound: int
    runs: list
    combined: ReachSet
    missed_integers: list  # (area, is_square) pairs, ascending
    missed_half: list  # odd s values, ascending
    workers: int
    backend: str


def save_checkpoint(path, *, label, bound, next_s, visited, peak, reached, frontier):
    """Write a resumable snapshot; only called at bucket boundaries."""
    lines = [
        "%s %d" % (CHECKPOINT_MAGIC, CHECKPOINT_VERSION),
        "label=%s" % label,
        "bound=%d" % bound,
        "next=%d" % next_s,
        "visited=%d" % visited,
        "peak=%d" % peak,
        "reached=%s" % bytes(reached).hex(),
    ]
    lines.extend("%d %d %d %d" % st for st in frontier)
    lines.append("end %d" % len(frontier))
    tmp = "%s.tmp.%d" % (path, os.getpid())
    with open(tmp, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def load_checkpoint(path) -> dict:
    """Parse and validate a checkpoint file."""
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise CheckpointFormatError("cannot read %s: %s" % (path, exc))

    def fail(why):
        raise CheckpointFormatError("%s: %s" % (path, why))

    if len(lines) < 8:
        fail("truncated header")
    if lines[0] != "%s %d" % (CHECKPOINT_MAGIC, CHECKPOINT_VERSION):
        fail("bad magic or version: %r" % lines[0])
    head = {}
    for i, key in enumerate(("label", "bound", "next", "visited", "peak", "reached")):
        prefix = key + "="
        if not lines[1 + i].startswith(prefix):
            fail("missing %s field" % key)
        head[key] = lines[1 + i][len(prefix):]
    try:
        bound = int(head["bound"])
        next_s = int(head["next"])
        visited = int(head["visited"])
        peak = int(head["peak"])
        bits = bytearray.fromhex(head["reached"])
    except ValueError as exc:
        fail("bad header value: %s" % exc)
    if len(bits) != (bound >> 3) + 1:
        fail("reached bitmap length mismatch")
    body = lines[7:]
    if not body or not body[-1].startswith("end "):
        fail("missing end record")
    try:
        count = int(body[-1][4:])
    except ValueError:
        fail("bad end record")
    states = []
    for line in body[:-1]:
        parts = line.split()
        if len(parts) != 4:
            fail("bad state record: %r" % line)
        try:
            states.append(tuple(int(x) for x in parts))
        except ValueError:
            fail("bad state record: %r" % line)
    if len(states) != count:
        fail("state count mismatch: %d != %d" % (len(states), count))
    for st in states:
        if not 0 <= st[3] <= bound:
            fail("state s out of range: %r" % (st,))
    return {
        "label": head["label"],
        "bound": bound,
        "next": next_s,
        "visited": visited,
        "peak": peak,
        "reached": bits,
        "frontier": states,
    }


def enumerate_component(
    comp: Component,
    bound: int,
    *,
    max_pending: int = 0,
    checkpoint_path=None,
    resume: bool = False,
    backend: str | None = None,
) -> ComponentRun:
    """Complete positive-orbit enumeration of one component up to bound.

    With a max_pending budget the run may abort at a bucket boundary;
    the pending frontier is spilled to checkpoint_path (when given) and
    MemoryBudgetExceeded is raised.  Resuming from that checkpoint
    reproduces the uninterrupted run bit for bit, statistics included.
    """
    base = ReachSet.empty(bound)
    visited0 = 0
    peak0 = 0
    if comp.start.s > bound:
        frontier = []
    else:
        frontier = [tuple(canonical(comp.start))]
    if resume and checkpoint_path and os.path.exists(checkpoint_path):
        ck = load_checkpoint(checkpoint_path)
        if ck["label"] != comp.label or ck["bound"] != bound:
            raise CheckpointFormatError(
                "%s holds label=%s bound=%d, expected label=%s bound=%d"
                % (checkpoint_path, ck["label"], ck["bound"], comp.label, bound)
            )
        base = ReachSet(bound, ck["reached"])
        visited0 = ck["visited"]
        peak0 = ck["peak"]
        frontier = ck["frontier"]

    bits, visited, peak, completed, next_s, rest = run_buckets(
        frontier, bound, max_pending, backend=backend
    )
    reach = base.union(ReachSet(bound, bytearray(bits)))
    visited += visited0
    peak = max(peak, peak0)
    if not completed:
        if checkpoint_path:
            save_checkpoint(
                checkpoint_path,
                label=comp.label,
                bound=bound,
                next_s=next_s,
                visited=visited,
                peak=peak,
                reached=reach.bits,
                frontier=rest,
            )
        raise MemoryBudgetExceeded(
            "component %s exceeded the pending-state budget at bucket %d"
            % (comp.label, next_s - 1),
            checkpoint_path,
        )
    return ComponentRun(comp, reach, visited, peak)


def _run_component(args):
    comp, bound, max_pending, checkpoint_path, resume, backend = args
    return enumerate_component(
        comp,
        bound,
        max_pending=max_pending,
        checkpoint_path=checkpoint_path,
        resume=resume,
        backend=backend,
    )


def _missed_sets(combined: ReachSet):
    missed_int = []
    for area in range(combined.bound // 2 + 1):
        if not combined.contains(2 * area):
            missed_int.append((area, math.isqrt(area) ** 2 == area))
    missed_half = [s for s in range(1, combined.bound + 1, 2) if not combined.contains(s)]
    return missed_int, missed_half


def search(
    points,
    bound: int,
    *,
    labels=None,
    workers: int = 1,
    max_pending: int = 0,
    checkpoint_prefix=None,
    resume: bool = False,
    backend: str | None = None,
    fixture: str | None = None,
) -> SearchReport:
    """Full pipeline from a point triple to the missed-value report."""
    if bound < 1:
        raise UsageError("bound must be >= 1")
    if workers < 1:
        raise UsageError("workers must be >= 1")
    t = triple(*points)
    prim, index = primitive_form(t)
    q = quadruple_of(prim)
    reduced, word = reduce(q)
    comps = components(reduced)
    if labels:
        known = {c.label for c in comps}
        bad = [x for x in labels if x not in known]
        if bad:
            raise UsageError(
                "unknown component label(s) %s; this input has %s"
                % (",".join(bad), ",".join(sorted(known)))
            )
        comps = [c for c in comps if c.label in labels]

    def ck_path(comp):
        if checkpoint_prefix is None:
            return None
        return "%s.%s.ckpt" % (checkpoint_prefix, comp.label)

    tasks = [
        (comp, bound, max_pending, ck_path(comp), resume, backend) for comp in comps
    ]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
            futures = [pool.submit(_run_component, task) for task in tasks]
            # collect in component order so errors surface deterministically
            runs = []
            first_error = None
            for fut in futures:
                try:
                    runs.append(fut.result())
                except MemoryBudgetExceeded as exc:
                    if first_error is None:
                        first_error = exc
            if first_error is not None:
                raise first_error
    else:
        runs = [_run_component(task) for task in tasks]

    combined = ReachSet.empty(bound)
    for run in runs:
        combined = combined.union(run.reach)
    missed_int, missed_half = _missed_sets(combined)
    return SearchReport(
        points=t,
        fixture=fixture,
        index=index,
        primitive_points=prim if index > 1 else None,
        quadruple=q,
        reduced=reduced,
        reduce_word=word,
        bound=bound,
        runs=runs,
        combined=combined,
        missed_integers=missed_int,
        missed_half=missed_half,
        workers=workers,
        backend=backend or default_backend(),
    )


def report_doc(report: SearchReport, wall_time_s: float) -> dict:
    """JSON-ready document; all determinism-sensitive data in the payload,
    wall time and execution details under "runtime"."""
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "search",
        "input": {
            "points": [[p.x, p.y] for p in report.points],
            "fixture": report.fixture,
        },
        "primitivity": {
            "index": report.index,
            "rescaled_points": (
                None
                if report.primitive_points is None
                else [[p.x, p.y] for p in report.primitive_points]
            ),
        },
        "quadruple": list(report.quadruple),
        "reduced": {
            "quadruple": list(report.reduced),
            "word": format_word(report.reduce_word),
        },
        "bound": report.bound,
        "components": [
            {
                "label": run.component.label,
                "start": list(run.component.start),
                "merged": list(run.component.merged),
                "reached_count": run.reach.count(),
                "states_visited": run.visited,
                "peak_frontier": run.peak_pending,
            }
            for run in report.runs
        ],
        "combined": {"reached_count": report.combined.count()},
        "missed_integers": [
            {"area": area, "is_square": sq} for area, sq in report.missed_integers
        ],
        "missed_half_integers": list(report.missed_half),
        "stats": {
            "states_visited": sum(run.visited for run in report.runs),
            "peak_frontier": max((run.peak_pending for run in report.runs), default=0),
        },
        "runtime": {
            "wall_time_s": wall_time_s,
            "workers": report.workers,
            "backend": report.backend,
        },
    }


def canonical_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def payload_json(doc: dict) -> str:
    """Canonical text of a report without its runtime section."""
    return canonical_json({k: v for k, v in doc.items() if k != "runtime"})


def csv_rows(report: SearchReport):
    """One row per missed value: kind, value, is_square."""
    yield ("kind", "value", "is_square")
    for area, sq in report.missed_integers:
        yield ("integer", str(area), "true" if sq else "false")
    for s in report.missed_half:
        yield ("half_integer", str(s), "")


def scan(
    max_coord: int,
    bound: int,
    *,
    time_budget_s: float | None = None,
    backend: str | None = None,
) -> dict:
    """Search every primitive triangle class in the coordinate box.

    Triples are deduplicated by congruence of their reduced form (side
    multiset plus reduced s).  Non-primitive triples are excluded and
    counted; collinear triples are kept, since their orbits are just as
    well-defined.  A time budget turns the result into a partial table
    flagged as such.
    """
    if max_coord < 1 or max_coord > 8:
        raise ScanBudgetExceeded("max_coord must be in [1, 8]")
    if bound < 1:
        raise UsageError("bound must be >= 1")
    start_time = time.monotonic()
    pts = [(x, y) for x in range(max_coord + 1) for y in range(max_coord + 1)]
    classes: dict = {}
    nonprimitive = 0
    total = 0
    for combo in combinations(pts, 3):
        total += 1
        t = triple(*combo)
        prim, index = primitive_form(t)
        if index > 1:
            nonprimitive += 1
            continue
        reduced, _ = reduce(quadruple_of(t))
        key = (tuple(sorted((reduced.b + reduced.c, reduced.a + reduced.c,
                             reduced.a + reduced.b))), reduced.s)
        if key not in classes:
            classes[key] = (combo, canonical(reduced))
    rows = []
    partial = False
    for key in sorted(classes):
        if time_budget_s is not None and time.monotonic() - start_time > time_budget_s:
            partial = True
            break
        combo, reduced = classes[key]
        report = search(combo, bound, backend=backend)
        nonsquare = [a for a, sq in report.missed_integers if not sq]
        rows.append(
            {
                "points": [list(p) for p in combo],
                "reduced": list(reduced),
                "sides": list(key[0]),
                "max_missed_nonsquare_area": max(nonsquare) if nonsquare else None,
                "max_missed_half_s": max(report.missed_half) if report.missed_half else None,
                "missed_integer_count": len(report.missed_integers),
                "missed_half_count": len(report.missed_half),
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "scan",
        "max_coord": max_coord,
        "bound": bound,
        "triples_total": total,
        "excluded_nonprimitive": nonprimitive,
        "classes": rows,
        "partial": partial,
    }
