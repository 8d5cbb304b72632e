"""Pure-Python bucket enumeration kernel.

Reference implementation of the hot loop; the compiled kernel in
_kernel.pyx mirrors these semantics exactly and both must produce
identical outputs, including the statistics.

States are (a, b, c, s) tuples, canonical under cyclic rotation of
(a, b, c).  Buckets are keyed by s and processed in increasing order;
every successor lands in a strictly larger bucket, so each bucket is
final when processed.  Duplicates are kept until a bucket is processed
and removed there, which keeps the pending-state accounting identical
across backends.
"""

from __future__ import annotations


def run_buckets(frontier, bound: int, max_pending: int = 0):
    """Enumerate positive-jump successors of `frontier` up to `bound`.

    frontier: iterable of canonical (a, b, c, s) with 0 <= s <= bound.
    max_pending: abort threshold on queued states, 0 = unlimited; checked
    after each processed bucket, so aborts happen only at bucket
    boundaries.

    Returns (reached, visited, peak_pending, completed, next_s, rest):
    reached is a bitmap over [0, bound] (bytearray, little-endian bits),
    visited counts unique processed states, rest is the sorted list of
    still-queued states when aborted (empty when completed).
    """
    reached = bytearray((bound >> 3) + 1)
    buckets: list = [None] * (bound + 1)
    pending = 0
    for st in frontier:
        s = st[3]
        if not 0 <= s <= bound:
            raise ValueError("frontier state out of range: %r" % (st,))
        if buckets[s] is None:
            buckets[s] = [st]
        else:
            buckets[s].append(st)
        pending += 1
    peak = pending
    visited = 0

    for s in range(bound + 1):
        lst = buckets[s]
        if not lst:
            continue
        buckets[s] = None
        reached[s >> 3] |= 1 << (s & 7)
        unique = sorted(set(lst))
        visited += len(unique)
        pending -= len(lst)
        for a, b, c, _ in unique:
            side = b + c
            if side:
                s2 = s + side
                if s2 <= bound:
                    x = a + side + 2 * s
                    abc = min((x, b, c), (b, c, x), (c, x, b))
                    if buckets[s2] is None:
                        buckets[s2] = [abc + (s2,)]
                    else:
                        buckets[s2].append(abc + (s2,))
                    pending += 1
            side = a + c
            if side:
                s2 = s + side
                if s2 <= bound:
                    x = b + side + 2 * s
                    abc = min((a, x, c), (x, c, a), (c, a, x))
                    if buckets[s2] is None:
                        buckets[s2] = [abc + (s2,)]
                    else:
                        buckets[s2].append(abc + (s2,))
                    pending += 1
            side = a + b
            if side:
                s2 = s + side
                if s2 <= bound:
                    x = c + side + 2 * s
                    abc = min((a, b, x), (b, x, a), (x, a, b))
                    if buckets[s2] is None:
                        buckets[s2] = [abc + (s2,)]
                    else:
                        buckets[s2].append(abc + (s2,))
                    pending += 1
        if pending > peak:
            peak = pending
        if max_pending and pending > max_pending:
            rest = []
            for s2 in range(s + 1, bound + 1):
                if buckets[s2]:
                    rest.extend(sorted(buckets[s2]))
            return reached, visited, peak, False, s + 1, rest

    return reached, visited, peak, True, bound + 1, []


def iter_reach_states(frontier, bound: int):
    """Yield each unique state once, in bucket order (analysis helper)."""
    buckets: list = [None] * (bound + 1)
    for st in frontier:
        s = st[3]
        if not 0 <= s <= bound:
            raise ValueError("frontier state out of range: %r" % (st,))
        if buckets[s] is None:
            buckets[s] = [st]
        else:
            buckets[s].append(st)
    def push(s2, x, y, z):
        st = min((x, y, z), (y, z, x), (z, x, y)) + (s2,)
        if buckets[s2] is None:
            buckets[s2] = [st]
        else:
            buckets[s2].append(st)

    for s in range(bound + 1):
        lst = buckets[s]
        if not lst:
            continue
        buckets[s] = None
        for st in sorted(set(lst)):
            yield st
            a, b, c, _ = st
            side = b + c
            if side and s + side <= bound:
                push(s + side, a + side + 2 * s, b, c)
            side = a + c
            if side and s + side <= bound:
                push(s + side, a, b + side + 2 * s, c)
            side = a + b
            if side and s + side <= bound:
                push(s + side, a, b, c + side + 2 * s)
