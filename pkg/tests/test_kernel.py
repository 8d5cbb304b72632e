import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fleajump.kernel import available_backends, default_backend, run_buckets
from fleajump.lattice import quadruple_of, triple
from fleajump.orbits import canonical, reduce
from fleajump._kernel_py import iter_reach_states

HAS_COMPILED = "compiled" in available_backends()

coord = st.integers(min_value=-6, max_value=6)
reduced_starts = (
    st.tuples(st.tuples(coord, coord), st.tuples(coord, coord), st.tuples(coord, coord))
    .filter(lambda ps: len(set(ps)) == 3)
    .map(lambda ps: tuple(canonical(reduce(quadruple_of(triple(*ps)))[0])))
)


def g_start():
    return tuple(canonical(quadruple_of(triple((0, 0), (2, 1), (3, 2)))))


def test_pure_kernel_reaches_expected_values():
    reached, visited, peak, completed, next_s, rest = run_buckets(
        [g_start()], 40, backend="pure"
    )
    values = {s for s in range(41) if reached[s >> 3] & (1 << (s & 7))}
    assert completed and next_s == 41 and rest == []
    # one-jump successors 3, 6, 14 of s=1 are all present
    assert {1, 3, 6, 14} <= values
    assert 0 not in values and 2 not in values
    assert visited >= len(values)
    assert peak >= 1


def test_empty_frontier():
    reached, visited, peak, completed, next_s, rest = run_buckets([], 10)
    assert bytes(reached) == bytes(2)
    assert (visited, peak, completed, rest) == (0, 0, True, [])


def test_frontier_out_of_range_rejected():
    with pytest.raises(ValueError):
        run_buckets([(0, 0, 1, 50)], 10)


@pytest.mark.skipif(not HAS_COMPILED, reason="compiled kernel unavailable")
def test_backends_bit_identical_on_fixture():
    start = g_start()
    for bound in (1, 7, 100, 2000):
        pure = run_buckets([start], bound, backend="pure")
        comp = run_buckets([start], bound, backend="compiled")
        assert bytes(pure[0]) == bytes(comp[0])
        assert pure[1:] == comp[1:]


@pytest.mark.skipif(not HAS_COMPILED, reason="compiled kernel unavailable")
@given(reduced_starts, st.integers(min_value=1, max_value=300))
@settings(max_examples=60, deadline=None)
def test_backends_bit_identical_on_random_starts(start, bound):
    if start[3] > bound:
        return
    pure = run_buckets([start], bound, backend="pure")
    comp = run_buckets([start], bound, backend="compiled")
    assert bytes(pure[0]) == bytes(comp[0]) and pure[1:] == comp[1:]


@pytest.mark.parametrize("backend", ["pure"] + (["compiled"] if HAS_COMPILED else []))
def test_abort_and_continue_reproduces_full_run(backend):
    start, bound = g_start(), 600
    full = run_buckets([start], bound, backend=backend)
    assert full[3] is True

    reached, visited, peak, completed, next_s, rest = run_buckets(
        [start], bound, max_pending=5, backend=backend
    )
    assert completed is False and rest
    assert all(st[3] >= next_s for st in rest)
    # drive the remaining frontier to completion, possibly across several
    # budget-limited hops, merging exactly as a resume would
    hops = 0
    while not completed:
        hops += 1
        r2, v2, p2, completed, next_s, rest = run_buckets(
            rest, bound, max_pending=50 * hops, backend=backend
        )
        reached = bytearray(a | b for a, b in zip(reached, r2))
        visited += v2
        peak = max(peak, p2)
    assert bytes(reached) == bytes(full[0])
    assert visited == full[1]
    assert peak == full[2]


def test_abort_frontier_is_sorted_and_deduplicated_only_per_bucket():
    start, bound = g_start(), 400
    _, _, _, completed, next_s, rest = run_buckets(
        [start], bound, max_pending=3, backend="pure"
    )
    assert not completed
    assert rest == sorted(rest)


def test_iter_reach_states_matches_run_buckets():
    start, bound = g_start(), 300
    reached, visited, _, completed, _, _ = run_buckets([start], bound, backend="pure")
    states = list(iter_reach_states([start], bound))
    assert completed
    assert len(states) == visited
    assert len(set(states)) == visited
    assert [st[3] for st in states] == sorted(st[3] for st in states)
    assert {st[3] for st in states} == {
        s for s in range(bound + 1) if reached[s >> 3] & (1 << (s & 7))
    }


def test_default_backend_and_env_override():
    assert default_backend() in available_backends()
    env = dict(os.environ, FLEAJUMP_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c",
         "from fleajump.kernel import default_backend; print(default_backend())"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "pure"


@pytest.mark.skipif(not HAS_COMPILED, reason="compiled kernel unavailable")
def test_compiled_kernel_magnitude_guard():
    big = (1 << 50, 1, 1, 0)
    with pytest.raises(ValueError):
        run_buckets([big], 10, backend="compiled")
    # auto selection silently falls back to the pure kernel
    out = run_buckets([big], 10)
    assert out[3] is True
