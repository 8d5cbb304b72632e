"""Coordinate-level square jumps and the algebra/geometry cross-check.

A jump moves two of the three points: with moving pair (P, Q) and
r = (P-Q) rotated a quarter turn, both points translate by r, so
P, Q, Q+r, P+r is a square with that vertex order and the pair's
distance is preserved.  Which quarter-turn direction realizes the
algebraic generator (sign +1 adds the moving side square to s) depends
on the current orientation, so `simulate` resolves it per step by
matching quadruples and treats a double mismatch as a model bug.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Optional

from .algebra import Generator, apply_generator
from .errors import ModelInconsistency
from .lattice import (
    Point,
    PointTriple,
    Quadruple,
    _quadruple_raw,
    quadruple_of,
    side_squares,
    triple,
)


class JumpChoice(NamedTuple):
    axis: str  # 'U', 'V' or 'W'
    rotation: int  # +90 or -90


class TraceStep(NamedTuple):
    index: int
    points: PointTriple
    choice: Optional[JumpChoice]
    quadruple: Quadruple


Trace = list  # list of TraceStep

# moving pair per axis; the remaining point stays fixed
_MOVING = {"U": (1, 2), "V": (2, 0), "W": (0, 1)}


def _rotate(x: int, y: int, rotation: int) -> tuple[int, int]:
    if rotation == 90:
        return -y, x
    if rotation == -90:
        return y, -x
    raise ValueError("rotation must be +90 or -90: %r" % (rotation,))


def jump_points(t: PointTriple, j: JumpChoice) -> PointTriple:
    """Square jump of the moving pair; the third point is fixed.

    A coincident moving pair translates by the zero vector, so the jump
    is a no-op there; coincidence with the fixed point is allowed, since
    replays can pass through such configurations.
    """
    t = PointTriple(Point(*t[0]), Point(*t[1]), Point(*t[2]))
    j = JumpChoice(*j)
    i_p, i_q = _MOVING[j.axis]
    p, q = t[i_p], t[i_q]
    rx, ry = _rotate(p.x - q.x, p.y - q.y, j.rotation)
    pts = list(t)
    pts[i_p] = Point(p.x + rx, p.y + ry)
    pts[i_q] = Point(q.x + rx, q.y + ry)
    return PointTriple(*pts)


def simulate(t: PointTriple, w: Iterable[Generator]) -> Trace:
    """Replay a word on actual points, rightmost generator first.

    At each step the quarter-turn direction is chosen so that the
    resulting quadruple equals the matrix action; if neither direction
    matches, the algebraic model and the geometry disagree, which is an
    implementation bug surfaced as ModelInconsistency.
    """
    cur = triple(*t)
    q = quadruple_of(cur)
    steps: Trace = [TraceStep(0, cur, None, q)]
    for i, g in enumerate(reversed(tuple(w)), start=1):
        g = Generator(*g)
        expected = apply_generator(q, g.axis, g.sign)
        for rotation in (90, -90):
            choice = JumpChoice(g.axis, rotation)
            cand = jump_points(cur, choice)
            if _quadruple_raw(cand) == expected:
                break
        else:
            raise ModelInconsistency(
                "no rotation realizes %s%s at step %d from %r"
                % (g.axis, "" if g.sign > 0 else "'", i, cur)
            )
        cur, q = cand, expected
        steps.append(TraceStep(i, cur, choice, q))
    return steps


def congruent(t1: PointTriple, t2: PointTriple) -> bool:
    """Triangles are congruent iff their side-square multisets agree."""
    return sorted(side_squares(t1)) == sorted(side_squares(t2))


def cross_validate(t: PointTriple, w: Iterable[Generator]) -> bool:
    """Check the coordinate replay of w against the matrix model.

    At every step: the recomputed quadruple equals the matrix-applied
    one, the two untouched components of (a, b, c) are unchanged, and s
    moves by exactly sign times the untouched side square.
    """
    word = tuple(Generator(*g) for g in w)
    try:
        trace = simulate(t, word)
    except ModelInconsistency:
        return False
    for step, g in zip(trace[1:], reversed(word)):
        prev = trace[step.index - 1].quadruple
        if _quadruple_raw(step.points) != step.quadruple:
            return False
        if step.quadruple != apply_generator(prev, g.axis, g.sign):
            return False
        fixed = {"U": (1, 2), "V": (0, 2), "W": (0, 1)}[g.axis]
        if any(step.quadruple[i] != prev[i] for i in fixed):
            return False
        side = prev[fixed[0]] + prev[fixed[1]]
        if step.quadruple.s - prev.s != g.sign * side:
            return False
    return True


def trace_lines(trace: Trace):
    """Line-delimited export: index, nine coordinates, axis, rotation, s."""
    for step in trace:
        coords = " ".join("%d %d" % (p.x, p.y) for p in step.points)
        if step.choice is None:
            axis, rot = "-", "-"
        else:
            axis, rot = step.choice.axis, "%+d" % step.choice.rotation
        yield "%d %s %s %s %d" % (step.index, coords, axis, rot, step.quadruple.s)
