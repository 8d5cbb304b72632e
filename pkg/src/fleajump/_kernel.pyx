# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled bucket enumeration kernel.

Mirrors _kernel_py.run_buckets exactly: same bucket order, same
deduplication point, same statistics, bit-identical reached bitmap.
Uses 64-bit arithmetic, so the caller must keep bounds small enough
that state components stay below 2^62 (see kernel.py).
"""

from cython.operator cimport dereference as deref, preincrement as inc
from libcpp.algorithm cimport sort as cpp_sort
from libcpp.map cimport map as cppmap
from libcpp.vector cimport vector

ctypedef long long i64

cdef extern from *:
    """
    struct FJState {
        long long a, b, c;
        bool operator<(const FJState& o) const {
            if (a != o.a) return a < o.a;
            if (b != o.b) return b < o.b;
            return c < o.c;
        }
        bool operator==(const FJState& o) const {
            return a == o.a && b == o.b && c == o.c;
        }
    };
    """
    cdef cppclass FJState:
        i64 a
        i64 b
        i64 c
        bint operator<(const FJState& o)
        bint operator==(const FJState& o)


cdef inline bint _less(i64 ax, i64 ay, i64 az, i64 bx, i64 by, i64 bz):
    if ax != bx:
        return ax < bx
    if ay != by:
        return ay < by
    return az < bz


cdef inline FJState _canon(i64 x, i64 y, i64 z):
    # least cyclic rotation of (x, y, z)
    cdef FJState r
    r.a, r.b, r.c = x, y, z
    if _less(y, z, x, r.a, r.b, r.c):
        r.a, r.b, r.c = y, z, x
    if _less(z, x, y, r.a, r.b, r.c):
        r.a, r.b, r.c = z, x, y
    return r


def run_buckets(frontier, bound_arg, max_pending_arg=0):
    """See _kernel_py.run_buckets; identical contract and outputs."""
    cdef i64 bound = bound_arg
    cdef i64 max_pending = max_pending_arg
    if bound < 0:
        raise ValueError("bound must be nonnegative")

    cdef cppmap[i64, vector[FJState]] buckets
    cdef vector[FJState] cur
    cdef FJState st
    cdef i64 s, side, s2, pending = 0, peak, visited = 0
    cdef size_t i, n

    for obj in frontier:
        s = obj[3]
        if s < 0 or s > bound:
            raise ValueError("frontier state out of range: %r" % (obj,))
        st.a = obj[0]
        st.b = obj[1]
        st.c = obj[2]
        buckets[s].push_back(st)
        pending += 1
    peak = pending

    reached = bytearray((bound >> 3) + 1)
    cdef unsigned char[::1] bits = reached

    cdef bint completed = True
    cdef i64 next_s = bound + 1
    cdef cppmap[i64, vector[FJState]].iterator it

    while buckets.size() > 0:
        it = buckets.begin()
        s = deref(it).first
        cur.swap(deref(it).second)
        buckets.erase(it)
        bits[s >> 3] |= <unsigned char> (1 << (s & 7))
        pending -= <i64> cur.size()
        cpp_sort(cur.begin(), cur.end())
        n = cur.size()
        for i in range(n):
            st = cur[i]
            if i > 0 and st == cur[i - 1]:
                continue
            visited += 1
            side = st.b + st.c
            if side != 0:
                s2 = s + side
                if s2 <= bound:
                    buckets[s2].push_back(_canon(st.a + side + 2 * s, st.b, st.c))
                    pending += 1
            side = st.a + st.c
            if side != 0:
                s2 = s + side
                if s2 <= bound:
                    buckets[s2].push_back(_canon(st.a, st.b + side + 2 * s, st.c))
                    pending += 1
            side = st.a + st.b
            if side != 0:
                s2 = s + side
                if s2 <= bound:
                    buckets[s2].push_back(_canon(st.a, st.b, st.c + side + 2 * s))
                    pending += 1
        if pending > peak:
            peak = pending
        if max_pending != 0 and pending > max_pending:
            completed = False
            next_s = s + 1
            break

    rest = []
    it = buckets.begin()
    while it != buckets.end():
        s2 = deref(it).first
        cpp_sort(deref(it).second.begin(), deref(it).second.end())
        n = deref(it).second.size()
        for i in range(n):
            st = deref(it).second[i]
            rest.append((st.a, st.b, st.c, s2))
        inc(it)

    return reached, int(visited), int(peak), bool(completed), int(next_s), rest
