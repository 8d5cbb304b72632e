"""Exact lattice-point layer: side squares, the algebraic quadruple, and
primitivity.

A configuration of three distinct lattice points is summarized by the
quadruple (a, b, c; s) where A = b+c, B = a+c, C = a+b are the squared side
lengths and s is twice the signed triangle area.  The defining relation

    s*s == a*b + a*c + b*c

holds exactly, and equivalently s*s == A*B - c*c for each of the three
side pairings.  All arithmetic uses Python integers, so products of any
magnitude stay exact; there is no wraparound to detect.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import DegenerateInput, FactorizationBudgetExceeded, NotATriangleState


class Point(NamedTuple):
    x: int
    y: int


class PointTriple(NamedTuple):
    p1: Point
    p2: Point
    p3: Point


class SideSquares(NamedTuple):
    A: int
    B: int
    C: int


class Quadruple(NamedTuple):
    a: int
    b: int
    c: int
    s: int


def triple(p1, p2, p3) -> PointTriple:
    """Build a PointTriple from coordinate pairs, requiring distinct points."""
    t = PointTriple(Point(*p1), Point(*p2), Point(*p3))
    if t.p1 == t.p2 or t.p1 == t.p3 or t.p2 == t.p3:
        raise DegenerateInput("points must be pairwise distinct: %r" % (t,))
    return t


def _dist2(p: Point, q: Point) -> int:
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def side_squares(t: PointTriple) -> SideSquares:
    """Squared side lengths opposite P1, P2, P3 respectively."""
    t = triple(*t)
    return SideSquares(
        A=_dist2(t.p2, t.p3),
        B=_dist2(t.p1, t.p3),
        C=_dist2(t.p1, t.p2),
    )


def _quadruple_raw(t: PointTriple) -> Quadruple:
    """Quadruple arithmetic with no distinctness check.

    Replay traces legitimately pass through configurations where a
    moving point lands on the fixed one (a zero side square); only
    user-facing constructors insist on distinct points.
    """
    t = PointTriple(Point(*t[0]), Point(*t[1]), Point(*t[2]))
    A = _dist2(t.p2, t.p3)
    B = _dist2(t.p1, t.p3)
    C = _dist2(t.p1, t.p2)
    # A+B+C is always even, so the halves below are exact
    a = (B + C - A) // 2
    b = (C + A - B) // 2
    c = (A + B - C) // 2
    s = (t.p2.x - t.p1.x) * (t.p3.y - t.p1.y) - (t.p2.y - t.p1.y) * (t.p3.x - t.p1.x)
    q = Quadruple(a, b, c, s)
    assert check_relations(q)
    return q


def quadruple_of(t: PointTriple) -> Quadruple:
    """Quadruple (a, b, c; s) of a point triple.

    a = (B+C-A)/2 and cyclically; s is the cross product of the edge
    vectors P2-P1 and P3-P1, positive for counterclockwise order.
    """
    return _quadruple_raw(triple(*t))


def sides_of(q: Quadruple) -> SideSquares:
    """Recover side squares from a quadruple; all three must be positive."""
    ss = SideSquares(A=q.b + q.c, B=q.a + q.c, C=q.a + q.b)
    if ss.A < 1 or ss.B < 1 or ss.C < 1:
        raise NotATriangleState("non-positive side square in %r" % (q,))
    return ss


def check_relations(q: Quadruple) -> bool:
    """Exact check of s^2 = ab+ac+bc and its three side-square forms."""
    a, b, c, s = q
    if s * s != a * b + a * c + b * c:
        return False
    A, B, C = b + c, a + c, a + b
    return (
        s * s == A * B - c * c
        and s * s == B * C - a * a
        and s * s == C * A - b * b
    )


def gaussian_gcd(z: tuple[int, int], w: tuple[int, int]) -> tuple[int, int]:
    """Greatest common divisor in the Gaussian integers (up to units).

    Euclid's algorithm with rounded division; the remainder norm strictly
    decreases, so it terminates.
    """
    zx, zy = z
    wx, wy = w
    while wx or wy:
        n = wx * wx + wy * wy
        # multiply z by conj(w), then round each coordinate to nearest / n
        px = zx * wx + zy * wy
        py = zy * wx - zx * wy
        qx = (2 * px + n) // (2 * n)
        qy = (2 * py + n) // (2 * n)
        rx = zx - (qx * wx - qy * wy)
        ry = zy - (qx * wy + qy * wx)
        zx, zy, wx, wy = wx, wy, rx, ry
    return zx, zy


def primitivity_index(t: PointTriple) -> int:
    """Norm of the Gaussian gcd of the two edge vectors from P1.

    The edge vectors, read as Gaussian integers, generate an ideal; its
    index in Z[i] is the returned value.  Index 1 means the triple is
    primitive (its differences lie in no proper square sublattice).
    """
    t = triple(*t)
    e2 = (t.p2.x - t.p1.x, t.p2.y - t.p1.y)
    e3 = (t.p3.x - t.p1.x, t.p3.y - t.p1.y)
    gx, gy = gaussian_gcd(e2, e3)
    return gx * gx + gy * gy


def primitive_form(t: PointTriple) -> tuple[PointTriple, int]:
    """Rescale a triple by its primitivity index.

    Divides both edge vectors by their Gaussian gcd (a rotation plus
    scaling, so orientation is preserved) and anchors the result at the
    origin.  Returns the primitive triple and the index.
    """
    t = triple(*t)
    e2 = (t.p2.x - t.p1.x, t.p2.y - t.p1.y)
    e3 = (t.p3.x - t.p1.x, t.p3.y - t.p1.y)
    gx, gy = gaussian_gcd(e2, e3)
    n = gx * gx + gy * gy
    if n == 1:
        return t, 1

    def div(v):
        # exact division by g = gx + i*gy in Z[i]
        px = v[0] * gx + v[1] * gy
        py = v[1] * gx - v[0] * gy
        assert px % n == 0 and py % n == 0
        return Point(px // n, py // n)

    return PointTriple(Point(0, 0), div(e2), div(e3)), n


def is_sum_of_two_squares(n: int, budget: int = 10**12) -> bool:
    """True iff n = x^2 + y^2 for integers x, y.

    Equivalent condition via trial division: every prime 3 (mod 4) divides
    n to an even power.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > budget:
        raise FactorizationBudgetExceeded("n=%d above budget %d" % (n, budget))
    while n % 2 == 0:
        n //= 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if p % 4 == 3 and e % 2 == 1:
                return False
        p += 2
    if n > 1 and n % 4 == 3:
        return False
    return True


PRIMITIVE_PATTERN = "primitive-pattern"
ALL_EVEN = "all-even"
OTHER = "other"


def parity_profile(ss: SideSquares) -> str:
    """Classify side-square parities.

    Primitive triples show exactly one even side square, the two odd ones
    congruent to 1 (mod 4).
    """
    A, B, C = ss
    odd = [x for x in (A, B, C) if x % 2]
    if not odd:
        return ALL_EVEN
    if len(odd) == 2 and all(x % 4 == 1 for x in odd):
        return PRIMITIVE_PATTERN
    return OTHER
