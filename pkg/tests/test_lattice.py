import math
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fleajump.errors import (
    DegenerateInput,
    FactorizationBudgetExceeded,
    NotATriangleState,
)
from fleajump.lattice import (
    ALL_EVEN,
    OTHER,
    PRIMITIVE_PATTERN,
    Quadruple,
    check_relations,
    gaussian_gcd,
    is_sum_of_two_squares,
    parity_profile,
    primitive_form,
    primitivity_index,
    quadruple_of,
    side_squares,
    sides_of,
    triple,
)

coord = st.integers(min_value=-40, max_value=40)
point = st.tuples(coord, coord)


def distinct_triples():
    return (
        st.tuples(point, point, point)
        .filter(lambda ps: len(set(ps)) == 3)
        .map(lambda ps: triple(*ps))
    )


def test_triple_rejects_coincident_points():
    with pytest.raises(DegenerateInput):
        triple((0, 0), (0, 0), (1, 1))
    with pytest.raises(DegenerateInput):
        triple((2, 3), (1, 1), (2, 3))


def test_quadruple_of_reference_triangle(g_points):
    t = triple(*g_points)
    assert side_squares(t) == (2, 13, 5)
    assert quadruple_of(t) == (8, -3, 5, 1)


def test_quadruple_of_second_fixture(h_points):
    assert quadruple_of(triple(*h_points)) == (8, -4, 9, 2)


def test_quadruple_of_collinear_points():
    assert quadruple_of(triple((0, 0), (1, 0), (2, 0))) == (2, -1, 2, 0)


def test_quadruple_orientation_sign():
    ccw = quadruple_of(triple((0, 0), (1, 0), (0, 1)))
    cw = quadruple_of(triple((0, 0), (0, 1), (1, 0)))
    assert ccw.s == 1 and cw.s == -1
    assert (ccw.a, ccw.b, ccw.c) == (cw.a, cw.b, cw.c)


def test_sides_of_round_trip(g_points):
    q = quadruple_of(triple(*g_points))
    assert sides_of(q) == side_squares(triple(*g_points))


def test_sides_of_rejects_nonpositive_side():
    with pytest.raises(NotATriangleState):
        sides_of(Quadruple(0, 0, 0, 0))
    with pytest.raises(NotATriangleState):
        sides_of(Quadruple(5, -2, 2, 1))


@given(distinct_triples())
def test_relations_hold_for_any_triple(t):
    q = quadruple_of(t)
    assert check_relations(q)
    A, B, C = q.b + q.c, q.a + q.c, q.a + q.b
    assert sorted((A, B, C)) == sorted(side_squares(t))
    # twice the area via the shoelace formula, as a cross-check on s
    (x1, y1), (x2, y2), (x3, y3) = t
    assert q.s == x1 * (y2 - y3) + x2 * (y3 - y1) + x3 * (y1 - y2)


def test_exhaustive_small_box_invariants():
    pts = [(x, y) for x in range(4) for y in range(4)]
    seen = 0
    for combo in combinations(pts, 3):
        q = quadruple_of(triple(*combo))
        assert check_relations(q)
        A, B, C = sides_of(q)
        assert q.s * q.s == A * B - q.c * q.c
        # a side square is a sum of two squares by construction
        assert is_sum_of_two_squares(A)
        seen += 1
    assert seen == math.comb(16, 3)


def test_gaussian_gcd_examples():
    # 2 = -i (1+i)^2, so gcd(2, 1+i) ~ 1+i
    g = gaussian_gcd((2, 0), (1, 1))
    assert g[0] ** 2 + g[1] ** 2 == 2
    g = gaussian_gcd((6, 2), (2, 4))
    assert g[0] ** 2 + g[1] ** 2 == 20
    assert gaussian_gcd((7, 0), (0, 0)) == (7, 0)


@given(st.tuples(coord, coord), st.tuples(coord, coord))
def test_gaussian_gcd_divides_both(z, w):
    gx, gy = gaussian_gcd(z, w)
    n = gx * gx + gy * gy
    if n == 0:
        assert z == (0, 0) and w == (0, 0)
        return
    for vx, vy in (z, w):
        # v * conj(g) must be divisible by |g|^2 for g to divide v
        assert (vx * gx + vy * gy) % n == 0
        assert (vy * gx - vx * gy) % n == 0


def test_primitivity_index_examples(g_points, h_points):
    assert primitivity_index(triple(*g_points)) == 1
    assert primitivity_index(triple(*h_points)) == 1
    # doubling a primitive triple multiplies the index by 4
    doubled = [(2 * x, 2 * y) for x, y in g_points]
    assert primitivity_index(triple(*doubled)) == 4
    assert primitivity_index(triple((0, 0), (2, 4), (6, 2))) == 20


def test_primitive_form_rescales_exactly():
    doubled = triple((0, 0), (4, 2), (6, 4))
    prim, index = primitive_form(doubled)
    assert index == 4
    assert primitivity_index(prim) == 1
    # rescaling divides every side square by the index
    A, B, C = side_squares(doubled)
    assert side_squares(prim) == (A // 4, B // 4, C // 4)


@given(distinct_triples())
@settings(max_examples=80)
def test_primitive_form_properties(t):
    prim, index = primitive_form(t)
    assert index == primitivity_index(t)
    assert primitivity_index(prim) == 1
    assert prim.p1 == (0, 0) or index == 1
    qa, qb = quadruple_of(t), quadruple_of(prim)
    assert (qa.a, qa.b, qa.c, qa.s) == tuple(x * index for x in qb)


def test_is_sum_of_two_squares_examples():
    assert is_sum_of_two_squares(1)
    assert is_sum_of_two_squares(2)
    assert is_sum_of_two_squares(5)
    assert not is_sum_of_two_squares(3)
    assert not is_sum_of_two_squares(21)
    assert is_sum_of_two_squares(9)  # 9 = 9 + 0
    assert not is_sum_of_two_squares(2023)  # 7 * 17^2
    with pytest.raises(ValueError):
        is_sum_of_two_squares(0)
    with pytest.raises(FactorizationBudgetExceeded):
        is_sum_of_two_squares(10**13)


@given(st.integers(min_value=1, max_value=500))
def test_is_sum_of_two_squares_against_enumeration(n):
    brute = any(
        x * x + y * y == n
        for x in range(int(math.isqrt(n)) + 1)
        for y in range(x, int(math.isqrt(n)) + 1)
    )
    assert is_sum_of_two_squares(n) == brute


def test_parity_profile(g_points):
    assert parity_profile(side_squares(triple(*g_points))) == PRIMITIVE_PATTERN
    assert parity_profile((4, 8, 4)) == ALL_EVEN
    assert parity_profile((3, 4, 7)) == OTHER  # odd sides 3 (mod 4)


@given(distinct_triples())
@settings(max_examples=80)
def test_primitive_triples_have_primitive_parity_pattern(t):
    prim, _ = primitive_form(t)
    q = quadruple_of(prim)
    if q.s % 2 == 1:
        assert parity_profile(side_squares(prim)) == PRIMITIVE_PATTERN
