"""Quadratic-residue obstructions along orbits.

Each visited state is classified by the parities of s and a side square
X, yielding a residue condition whose failure would make a perfect
square reachable:

    s even, X even:  s/2 must not be a square mod X/2
    s even, X odd:   s/2 must not be a square mod X
    s odd,  X odd:   (s+X)/2 must not be a square mod X
    s odd,  X even:  no condition (tallied as uncovered)

The audit evaluates the condition for all three sides of every state
and reports violations verbatim.  It also inventories the 2-adic
valuation pairs (u, v) = (v2(s), v2(X)) over states where both are
even, and checks them against the expected pattern:

    u = 1          -> v = 2
    u = 2          -> v in {4, 5}
    odd  u >= 3    -> v in {u+1, u+3, ..., 2u} or v = 2u+1
    even u >= 4    -> v in {u, u+2, ..., 2u} or v = 2u+1

Nonconforming pairs are reported as findings, not crashes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Optional

from .errors import InvalidModulus, ResidueBudgetExceeded, UndefinedValuation
from .kernel import iter_reach_states
from .lattice import Quadruple
from .orbits import Component, canonical

EVEN_EVEN = "EvenEven"
EVEN_ODD = "EvenOdd"
ODD_ODD = "OddOdd"
UNCOVERED = "Uncovered"

CASES = (EVEN_EVEN, EVEN_ODD, ODD_ODD, UNCOVERED)


def v2(n: int) -> int:
    """Exponent of the largest power of 2 dividing n."""
    if n == 0:
        raise UndefinedValuation("v2(0) is undefined")
    return (n & -n).bit_length() - 1


class ValuationProfile(NamedTuple):
    u: Optional[int]  # v2(s), None when s = 0
    v: Optional[int]  # v2(X), None when X = 0
    w: Optional[int]  # v2(s+X), None when s+X = 0


def valuation_profile(s: int, side: int) -> ValuationProfile:
    return ValuationProfile(
        v2(s) if s else None,
        v2(side) if side else None,
        v2(s + side) if s + side else None,
    )


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n, by binary reciprocity."""
    if n < 1 or n % 2 == 0:
        raise InvalidModulus("n must be odd and positive: %r" % (n,))
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_qr(r: int, m: int, budget: int = 10**6) -> bool:
    """True iff x^2 = r (mod m) has a solution, by direct enumeration.

    x only needs to run to m/2 since (m-x)^2 = x^2.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if m > budget:
        raise ResidueBudgetExceeded("m=%d above budget %d" % (m, budget))
    r %= m
    return any(x * x % m == r for x in range(m // 2 + 1))


@lru_cache(maxsize=None)
def _factor(m: int) -> tuple:
    out = []
    e = 0
    while m % 2 == 0:
        m //= 2
        e += 1
    if e:
        out.append((2, e))
    p = 3
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def _is_square_mod(r: int, m: int) -> bool:
    """Exact square test mod m via factorization.

    Used by the audits where moduli grow past the enumeration budget of
    is_qr; agreement of the two on small moduli is property-tested.
    """
    if m < 1:
        raise ValueError("m must be positive")
    r %= m
    if m == 1 or r == 0:
        return True
    for p, e in _factor(m):
        pe = p**e
        rp = r % pe
        if rp == 0:
            continue
        f = 0
        while rp % p == 0:
            rp //= p
            f += 1
        if f % 2 == 1:
            return False
        k = e - f  # need the unit rp to be a square mod p^k, k >= 1
        if p == 2:
            if k == 1:
                continue
            if k == 2:
                if rp % 4 != 1:
                    return False
            elif rp % 8 != 1:
                return False
        elif pow(rp, (p - 1) // 2, p) != 1:
            return False
    return True


class Obstruction(NamedTuple):
    case: str
    residue: Optional[int]
    modulus: Optional[int]


def obstruction_case(q: Quadruple) -> Obstruction:
    """Classify a state by the parities of (s, A) with A = b+c.

    Returns the residue condition to test; reachable perfect squares
    would require the residue to be a square mod the modulus.
    """
    s = q.s
    A = q.b + q.c
    if A < 1:
        raise ValueError("A = b+c must be positive")
    return _classify(s, A)


def _classify(s: int, side: int) -> Obstruction:
    if s % 2 == 0:
        if side % 2 == 0:
            m = side // 2
            return Obstruction(EVEN_EVEN, (s // 2) % m, m)
        return Obstruction(EVEN_ODD, (s // 2) % side, side)
    if side % 2 == 1:
        return Obstruction(ODD_ODD, ((s + side) // 2) % side, side)
    return Obstruction(UNCOVERED, None, None)


def conforms(u: int, v: int) -> bool:
    """Membership of a valuation pair in the expected pattern."""
    if u == 1:
        return v == 2
    if u == 2:
        return v in (4, 5)
    if u % 2 == 1:
        return v == 2 * u + 1 or (u + 1 <= v <= 2 * u and (v - u) % 2 == 1)
    return v == 2 * u + 1 or (u <= v <= 2 * u and v % 2 == u % 2)


@dataclass
class ComponentAudit:
    label: str
    start: Quadruple
    states: int = 0
    tallies: dict = field(default_factory=lambda: {c: 0 for c in CASES})
    violations: list = field(default_factory=list)
    jacobi_tallies: dict = field(
        default_factory=lambda: {EVEN_ODD: {-1: 0, 0: 0, 1: 0}, ODD_ODD: {-1: 0, 0: 0, 1: 0}}
    )
    valuation_pairs: set = field(default_factory=set)

    @property
    def violation_count(self) -> int:
        return len(self.violations)

    def nonconforming(self) -> list:
        return sorted(p for p in self.valuation_pairs if not conforms(*p))


def audit_orbit(comp: Component, bound: int) -> ComponentAudit:
    """Evaluate the residue conditions over every state of one component.

    All three sides of each state are classified and tested separately.
    Violations (a residue condition that fails, meaning the obstruction
    does not apply where expected) are collected verbatim as findings.
    """
    audit = ComponentAudit(comp.label, comp.start)
    start = canonical(comp.start)
    if start.s > bound:
        return audit
    for a, b, c, s in iter_reach_states([tuple(start)], bound):
        audit.states += 1
        for side_label, side in (("A", b + c), ("B", a + c), ("C", a + b)):
            ob = _classify(s, side)
            audit.tallies[ob.case] += 1
            if ob.case == UNCOVERED:
                continue
            if ob.case in audit.jacobi_tallies and ob.modulus % 2 == 1:
                audit.jacobi_tallies[ob.case][jacobi(ob.residue, ob.modulus)] += 1
            if _is_square_mod(ob.residue, ob.modulus):
                audit.violations.append(
                    {
                        "state": [a, b, c, s],
                        "side": side_label,
                        "side_square": side,
                        "case": ob.case,
                        "residue": ob.residue,
                        "modulus": ob.modulus,
                    }
                )
        if s and s % 2 == 0:
            for side in (b + c, a + c, a + b):
                if side and side % 2 == 0:
                    audit.valuation_pairs.add((v2(s), v2(side)))
    return audit


def valuation_pairs(comp: Component, bound: int):
    """Inventory of (v2(s), v2(side)) pairs with both even, plus the
    conformance verdict against the expected pattern."""
    pairs = set()
    start = canonical(comp.start)
    if start.s <= bound:
        for a, b, c, s in iter_reach_states([tuple(start)], bound):
            if s == 0 or s % 2:
                continue
            for side in (b + c, a + c, a + b):
                if side and side % 2 == 0:
                    pairs.add((v2(s), v2(side)))
    bad = sorted(p for p in pairs if not conforms(*p))
    return pairs, not bad, bad


def square_absence_check(report) -> bool:
    """True iff no perfect-square area <= bound/2 is reachable."""
    if report.bound < 2:
        return True
    n = 0
    while 2 * n * n <= report.bound:
        if report.combined.contains(2 * n * n):
            return False
        n += 1
    return True


def audit_doc(audits: list, *, points, fixture, bound, wall_time_s: float) -> dict:
    """JSON-ready audit report over all components of one input."""
    overall_pairs = set()
    overall_violations = 0
    for a in audits:
        overall_pairs |= a.valuation_pairs
        overall_violations += a.violation_count
    nonconforming = sorted(p for p in overall_pairs if not conforms(*p))
    return {
        "schema_version": 1,
        "kind": "audit",
        "input": {"points": [list(p) for p in points], "fixture": fixture},
        "bound": bound,
        "components": [
            {
                "label": a.label,
                "start": list(a.start),
                "states": a.states,
                "tallies": dict(a.tallies),
                "violations": list(a.violations),
                "jacobi_tallies": {
                    case: {str(sym): n for sym, n in t.items()}
                    for case, t in a.jacobi_tallies.items()
                },
                "valuation_pairs": [list(p) for p in sorted(a.valuation_pairs)],
                "nonconforming_pairs": [list(p) for p in a.nonconforming()],
            }
            for a in audits
        ],
        "overall": {
            "violations": overall_violations,
            "valuation_pairs": [list(p) for p in sorted(overall_pairs)],
            "conformant": not nonconforming,
            "nonconforming_pairs": [list(p) for p in nonconforming],
        },
        "runtime": {"wall_time_s": wall_time_s},
    }
