import json
import math

import pytest

from fleajump.errors import (
    CheckpointFormatError,
    MemoryBudgetExceeded,
    ScanBudgetExceeded,
    UsageError,
)
from fleajump.lattice import quadruple_of, triple
from fleajump.orbits import components
from fleajump.search import (
    FIXTURES,
    ReachSet,
    canonical_json,
    csv_rows,
    enumerate_component,
    load_checkpoint,
    payload_json,
    report_doc,
    save_checkpoint,
    scan,
    search,
)


def test_reachset_basics():
    r = ReachSet.empty(20)
    assert r.count() == 0 and not r.contains(0)
    r.bits[0] |= 0b10  # s = 1
    r.bits[2] |= 0b1  # s = 16
    assert r.contains(1) and r.contains(16)
    assert not r.contains(2) and not r.contains(-1) and not r.contains(21)
    assert r.count() == 2
    assert list(r.values()) == [1, 16]
    other = ReachSet.empty(20)
    other.bits[0] |= 0b100
    merged = r.union(other)
    assert sorted(merged.values()) == [1, 2, 16]


def test_search_first_fixture_missed_sets(g_points):
    report = search(g_points, 4000, fixture="G")
    nonsquare = [a for a, sq in report.missed_integers if not sq]
    squares = [a for a, sq in report.missed_integers if sq]
    assert nonsquare == [5, 29, 80, 99, 179]
    assert squares == [n * n for n in range(45)]  # every square through 1936
    assert report.missed_half == []
    assert report.index == 1 and report.reduce_word == ()


def test_search_second_fixture_missed_integers(h_points):
    report = search(h_points, 1000, fixture="H")
    assert [a for a, _ in report.missed_integers] == [
        0, 2, 8, 30, 32, 40, 158, 168, 190, 238, 312,
    ]


def test_search_component_filter(g_points):
    full = search(g_points, 600)
    only_k = search(g_points, 600, labels=["K"])
    assert [run.component.label for run in only_k.runs] == ["K"]
    k_run = next(run for run in full.runs if run.component.label == "K")
    assert bytes(only_k.runs[0].reach.bits) == bytes(k_run.reach.bits)
    with pytest.raises(UsageError):
        search(g_points, 600, labels=["K9"])


def test_search_validates_arguments(g_points):
    with pytest.raises(UsageError):
        search(g_points, 0)
    with pytest.raises(UsageError):
        search(g_points, 100, workers=0)


def test_search_cross_component_membership(g_points):
    report = search(g_points, 4000)
    by_label = {run.component.label: run.reach for run in report.runs}
    assert not by_label["K"].contains(662)  # area 331
    assert by_label["K2"].contains(662)
    assert by_label["K3"].contains(662)


def test_search_rescales_nonprimitive_input(g_points):
    doubled = [(2 * x, 2 * y) for x, y in g_points]
    report = search(doubled, 500)
    assert report.index == 4
    assert report.primitive_points is not None
    base = search(g_points, 500)
    assert bytes(report.combined.bits) == bytes(base.combined.bits)


def test_workers_do_not_change_the_payload(h_points):
    one = search(h_points, 3000, workers=1)
    many = search(h_points, 3000, workers=3)
    doc1 = report_doc(one, 0.0)
    doc2 = report_doc(many, 0.0)
    assert payload_json(doc1) == payload_json(doc2)
    assert doc1["runtime"]["workers"] == 1 and doc2["runtime"]["workers"] == 3


def test_checkpoint_round_trip(tmp_path):
    path = str(tmp_path / "r.ckpt")
    frontier = [(1, 2, 3, 7), (0, 0, 1, 9)]
    save_checkpoint(
        path,
        label="K2",
        bound=100,
        next_s=7,
        visited=42,
        peak=9,
        reached=bytearray(13),
        frontier=frontier,
    )
    ck = load_checkpoint(path)
    assert ck["label"] == "K2" and ck["bound"] == 100 and ck["next"] == 7
    assert ck["visited"] == 42 and ck["peak"] == 9
    assert ck["frontier"] == frontier
    assert len(ck["reached"]) == 13


def test_checkpoint_rejects_corruption(tmp_path):
    path = str(tmp_path / "r.ckpt")
    save_checkpoint(
        path,
        label="K",
        bound=40,
        next_s=3,
        visited=1,
        peak=1,
        reached=bytearray(6),
        frontier=[(0, 0, 1, 5)],
    )
    good = open(path).read()

    def write(text):
        with open(path, "w") as fh:
            fh.write(text)

    # truncation drops the end record
    write("".join(good.splitlines(keepends=True)[:-1]))
    with pytest.raises(CheckpointFormatError):
        load_checkpoint(path)
    write(good.replace("fleajump-checkpoint 1", "fleajump-checkpoint 2"))
    with pytest.raises(CheckpointFormatError):
        load_checkpoint(path)
    write(good.replace("end 1", "end 2"))
    with pytest.raises(CheckpointFormatError):
        load_checkpoint(path)
    write(good.replace("0 0 1 5", "0 0 1"))
    with pytest.raises(CheckpointFormatError):
        load_checkpoint(path)
    with pytest.raises(CheckpointFormatError):
        load_checkpoint(str(tmp_path / "missing.ckpt"))


def test_enumerate_component_abort_spill_resume(tmp_path, g_points):
    comp = components(quadruple_of(triple(*g_points)))[0]
    bound = 2000
    full = enumerate_component(comp, bound)

    path = str(tmp_path / "k.ckpt")
    budget = 20
    for _ in range(100):
        try:
            run = enumerate_component(
                comp, bound, max_pending=budget, checkpoint_path=path, resume=True
            )
            break
        except MemoryBudgetExceeded as exc:
            assert exc.checkpoint_path == path
            budget += 100
    else:
        pytest.fail("resume loop did not converge")
    assert bytes(run.reach.bits) == bytes(full.reach.bits)
    assert run.visited == full.visited
    assert run.peak_pending == full.peak_pending


def test_resume_rejects_mismatched_metadata(tmp_path, g_points):
    comps = components(quadruple_of(triple(*g_points)))
    path = str(tmp_path / "k.ckpt")
    with pytest.raises(MemoryBudgetExceeded):
        enumerate_component(comps[0], 2000, max_pending=5, checkpoint_path=path)
    with pytest.raises(CheckpointFormatError):
        enumerate_component(comps[1], 2000, checkpoint_path=path, resume=True)
    with pytest.raises(CheckpointFormatError):
        enumerate_component(comps[0], 999, checkpoint_path=path, resume=True)


def test_component_start_above_bound_yields_empty_reach(g_points):
    comp = next(
        c
        for c in components(quadruple_of(triple(*g_points)))
        if c.label == "K2"  # starts at s = 12
    )
    run = enumerate_component(comp, 5)
    assert run.reach.count() == 0 and run.visited == 0


def test_report_doc_and_payload(h_points):
    report = search(h_points, 200, fixture="H", workers=1)
    doc = report_doc(report, 1.23)
    assert doc["schema_version"] == 1 and doc["kind"] == "search"
    assert doc["input"]["fixture"] == "H"
    assert doc["bound"] == 200
    assert {c["label"] for c in doc["components"]} == {"K", "K1", "K2"}
    text = canonical_json(doc)
    assert text.endswith("\n") and json.loads(text) == doc
    # payload identity ignores runtime alone
    doc2 = report_doc(report, 9.99)
    assert payload_json(doc) == payload_json(doc2)
    assert canonical_json(doc) != canonical_json(doc2)


def test_csv_rows(h_points):
    report = search(h_points, 200)
    rows = list(csv_rows(report))
    assert rows[0] == ("kind", "value", "is_square")
    assert ("integer", "0", "true") in rows
    assert ("integer", "2", "false") in rows
    kinds = {r[0] for r in rows[1:]}
    assert kinds <= {"integer", "half_integer"}
    half = [r for r in rows if r[0] == "half_integer"]
    assert all(r[2] == "" and int(r[1]) % 2 == 1 for r in half)


def test_scan_budget_and_partial():
    with pytest.raises(ScanBudgetExceeded):
        scan(20, 100)
    with pytest.raises(ScanBudgetExceeded):
        scan(0, 100)
    doc = scan(2, 100, time_budget_s=0.0)
    assert doc["partial"] is True and doc["classes"] == []


def test_scan_minimal_box():
    doc = scan(1, 100)
    assert doc["triples_total"] == math.comb(4, 3)
    assert len(doc["classes"]) == 1
    row = doc["classes"][0]
    assert row["sides"] == [0, 1, 1]  # reduces to the degenerate state
    assert row["missed_integer_count"] == 0 and row["missed_half_count"] == 0


def test_scan_contains_both_fixture_families():
    doc = scan(3, 1000)
    by_key = {(tuple(row["sides"]), row["reduced"][3]): row for row in doc["classes"]}
    g_row = by_key[((2, 5, 13), 1)]
    assert g_row["max_missed_nonsquare_area"] == 179
    assert g_row["missed_half_count"] == 0
    # the second fixture's orbit family appears through a congruent
    # in-box start that reduces to the same component family
    h_row = by_key[((5, 5, 18), 3)]
    assert h_row["missed_integer_count"] == 11
    assert h_row["max_missed_nonsquare_area"] == 312
    assert h_row["missed_half_count"] > 0
    assert doc["excluded_nonprimitive"] > 0
