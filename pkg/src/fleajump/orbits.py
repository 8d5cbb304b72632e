"""Reduced states, the four-component orbit decomposition, and the
brute-force oracle.

Positive jumps strictly increase s by a positive side square, so the
positive-semigroup orbit of a start state can be enumerated in
nondecreasing s buckets and every bounded reachability answer is final.
The full two-sided orbit of a reduced state K splits into the positive
orbits of at most four starts: K itself plus one per negative jump,
orientation-normalized by a transposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import AXES, Generator, apply_generator, apply_omega
from .lattice import Quadruple, check_relations

# transposition paired with each axis: it fixes the moved coordinate's
# side square and restores positive orientation
_NORMALIZER = {"U": "T1", "V": "T2", "W": "T3"}


def canonical(q: Quadruple) -> Quadruple:
    """Lexicographically least cyclic rotation of (a, b, c); s unchanged.

    Cyclic conjugation relabels the three generators cyclically and fixes
    s, so rotations of a state have identical positive-orbit s-sets and
    can share one representative.
    """
    a, b, c, s = q
    abc = min((a, b, c), (b, c, a), (c, a, b))
    return Quadruple(*abc, s)


def _sides(q: Quadruple) -> tuple[int, int, int]:
    return q.b + q.c, q.a + q.c, q.a + q.b


def is_reduced(q: Quadruple) -> bool:
    """True iff 0 <= s < every positive side square.

    Zero sides (collinear degenerate states, where s is forced to 0) are
    excluded from the minimum; a negative side square means the state is
    not a triangle state and is never reduced.
    """
    if q.s < 0:
        return False
    sides = _sides(q)
    if any(x < 0 for x in sides):
        return False
    positive = [x for x in sides if x > 0]
    return bool(positive) and q.s < min(positive)


def reduce(q: Quadruple) -> tuple[Quadruple, tuple]:
    """Drive a state to reduced form with negative jumps.

    Returns the reduced quadruple and the word that maps the input to it
    (at most one orientation transposition, expressed as the jump word
    U V' U, followed by negative jumps; s strictly decreases, so the
    loop terminates).  Largest eligible side square first; ties prefer
    axis order U < V < W.
    """
    assert check_relations(q)
    applied = []
    if q.s < 0:
        q = apply_omega("T3", q)
        applied += [Generator("U", 1), Generator("V", -1), Generator("U", 1)]
    while True:
        eligible = [
            (side, i) for i, side in enumerate(_sides(q)) if 1 <= side <= q.s
        ]
        if not eligible:
            break
        _, i = max(eligible, key=lambda pair: (pair[0], -pair[1]))
        q = apply_generator(q, AXES[i], -1)
        applied.append(Generator(AXES[i], -1))
    assert is_reduced(q)
    return q, tuple(reversed(applied))


@dataclass
class Component:
    label: str  # 'K', 'K1', 'K2' or 'K3'
    start: Quadruple  # canonical, s >= 0
    merged: list = field(default_factory=list)  # labels folded into this one


def components(q: Quadruple) -> list[Component]:
    """The at-most-four positive-orbit starts covering the full orbit.

    Start k_i is the negative jump along axis i followed by the paired
    transposition (restoring s >= 0).  Starts congruent to an earlier one
    (same side-square multiset, hence same s) are merged: swapping two
    coordinates while fixing s relabels the generator set, so congruent
    starts have identical positive-orbit s-sets.
    """
    if not is_reduced(q):
        raise ValueError("component decomposition requires a reduced state")
    comps = [Component("K", canonical(q))]
    keys = {(tuple(sorted(_sides(q))), q.s): 0}
    for i, axis in enumerate(AXES):
        p = apply_omega(_NORMALIZER[axis], apply_generator(q, axis, -1))
        assert p.s >= 0
        label = "K%d" % (i + 1)
        key = (tuple(sorted(_sides(p))), p.s)
        at = keys.get(key)
        if at is None:
            keys[key] = len(comps)
            comps.append(Component(label, canonical(p)))
        else:
            comps[at].merged.append(label)
    return comps


def brute_orbit(q: Quadruple, depth: int) -> set[int]:
    """|s| values over all words of length <= depth in all six generators.

    Breadth-first with exact-state deduplication; the oracle for the
    component decomposition.
    """
    if depth > 7:
        raise ValueError("budget: depth <= 7")
    seen = {tuple(q)}
    frontier = [Quadruple(*q)]
    for _ in range(depth):
        nxt = []
        for state in frontier:
            for axis in AXES:
                for sign in (1, -1):
                    cand = apply_generator(state, axis, sign)
                    key = tuple(cand)
                    if key not in seen:
                        seen.add(key)
                        nxt.append(cand)
        frontier = nxt
    return {abs(s) for (_, _, _, s) in seen}
