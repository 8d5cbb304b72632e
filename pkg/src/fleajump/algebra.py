"""Generator matrices, the six-element symmetry group, and jump words.

Three 4x4 integer matrices U, V, W act on column vectors (a, b, c, s) by
left multiplication.  Each generator adds the matching side square to s
and moves one of a, b, c; its inverse subtracts.  Together with the
coordinate relabelings Omega = {I, T1, T2, T3, C, C2} (transpositions
negate s, the 3-cycles fix it) they satisfy the pair rule

    X * Y**-1 * X == Y * X**-1 * Y == T_k      for {X, Y} a generator pair

and the conjugation rule T_k X T_k = (relabeled X)**-1.  Those two rules
drive `normalize`, which rewrites any word as a single-sign body times an
Omega tail.
"""

from __future__ import annotations

import itertools
from typing import Iterable, NamedTuple

from .errors import WordSyntaxError
from .lattice import Quadruple


class Generator(NamedTuple):
    axis: str  # 'U', 'V' or 'W'
    sign: int  # +1 or -1


Word = tuple  # tuple of Generator
Mat4 = tuple  # 4 rows of 4 ints


class NormalForm(NamedTuple):
    body: Word
    tail: str  # Omega element name


AXES = "UVW"

_GEN = {
    "U": ((1, 1, 1, 2), (0, 1, 0, 0), (0, 0, 1, 0), (0, 1, 1, 1)),
    "V": ((1, 0, 0, 0), (1, 1, 1, 2), (0, 0, 1, 0), (1, 0, 1, 1)),
    "W": ((1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 1, 2), (1, 1, 0, 1)),
}
_GEN_INV = {
    "U": ((1, 1, 1, -2), (0, 1, 0, 0), (0, 0, 1, 0), (0, -1, -1, 1)),
    "V": ((1, 0, 0, 0), (1, 1, 1, -2), (0, 0, 1, 0), (-1, 0, -1, 1)),
    "W": ((1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 1, -2), (-1, -1, 0, 1)),
}

IDENTITY: Mat4 = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))

OMEGA_NAMES = ("I", "T1", "T2", "T3", "C", "C2")

_OMEGA = {
    "I": IDENTITY,
    # transpositions swap two of a,b,c and negate s
    "T1": ((1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, -1)),
    "T2": ((0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, -1)),
    "T3": ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, -1)),
    # 3-cycle (a,b,c) -> (b,c,a), s fixed
    "C": ((0, 1, 0, 0), (0, 0, 1, 0), (1, 0, 0, 0), (0, 0, 0, 1)),
    "C2": ((0, 0, 1, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 1)),
}

# orientation-reversing sign flip of a,b,c; conjugates each generator to
# its inverse
Y_MATRIX: Mat4 = ((-1, 0, 0, 0), (0, -1, 0, 0), (0, 0, -1, 0), (0, 0, 0, 1))

# pair rule target: the transposition fixing the axis absent from the pair
PAIR_RULE = {
    frozenset("UV"): "T3",
    frozenset("VW"): "T1",
    frozenset("UW"): "T2",
}

# conjugation by a transposition relabels axes and flips the sign
CONJ = {
    "T1": {"U": "U", "V": "W", "W": "V"},
    "T2": {"U": "W", "V": "V", "W": "U"},
    "T3": {"U": "V", "V": "U", "W": "W"},
}


def mat_mul(x: Mat4, y: Mat4) -> Mat4:
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(4)) for j in range(4))
        for i in range(4)
    )


def mat_vec(m: Mat4, v) -> tuple:
    return tuple(sum(m[i][k] * v[k] for k in range(4)) for i in range(4))


def mat_det(m: Mat4) -> int:
    total = 0
    for perm in itertools.permutations(range(4)):
        term = 1
        for i, j in enumerate(perm):
            term *= m[i][j]
        inv = sum(perm[i] > perm[j] for i in range(4) for j in range(i + 1, 4))
        total += -term if inv % 2 else term
    return total


def mat_transpose(m: Mat4) -> Mat4:
    return tuple(tuple(m[j][i] for j in range(4)) for i in range(4))


def gen_matrix(g: Generator) -> Mat4:
    g = Generator(*g)
    return _GEN[g.axis] if g.sign > 0 else _GEN_INV[g.axis]


def omega_matrix(name: str) -> Mat4:
    return _OMEGA[name]


_OMEGA_BY_MAT = {m: n for n, m in _OMEGA.items()}


def omega_mul(a: str, b: str) -> str:
    return _OMEGA_BY_MAT[mat_mul(_OMEGA[a], _OMEGA[b])]


def word_matrix(w: Iterable[Generator]) -> Mat4:
    m = IDENTITY
    for g in w:
        m = mat_mul(m, gen_matrix(g))
    return m


def apply_generator(q: Quadruple, axis: str, sign: int) -> Quadruple:
    """One generator application in closed form (t = +-1)."""
    a, b, c, s = q
    if axis == "U":
        side = b + c
        return Quadruple(a + side + 2 * sign * s, b, c, sign * side + s)
    if axis == "V":
        side = a + c
        return Quadruple(a, b + side + 2 * sign * s, c, sign * side + s)
    side = a + b
    return Quadruple(a, b, c + side + 2 * sign * s, sign * side + s)


def apply_word(w: Iterable[Generator], q: Quadruple) -> Quadruple:
    """Left action of a word: rightmost generator acts first."""
    for axis, sign in reversed(tuple(w)):
        q = apply_generator(q, axis, sign)
    return q


def apply_omega(name: str, q: Quadruple) -> Quadruple:
    return Quadruple(*mat_vec(_OMEGA[name], q))


def jump(q: Quadruple, axis: str, t: int) -> Quadruple:
    """Jump of multiplicity t along one axis, in closed form.

    Axis U:  (a,b,c;s) -> (a + (b+c)t^2 + 2st, b, c; (b+c)t + s);
    V and W move b and c instead.  Equals the t-th matrix power.
    """
    a, b, c, s = q
    if axis == "U":
        side = b + c
        return Quadruple(a + side * t * t + 2 * s * t, b, c, side * t + s)
    if axis == "V":
        side = a + c
        return Quadruple(a, b + side * t * t + 2 * s * t, c, side * t + s)
    if axis == "W":
        side = a + b
        return Quadruple(a, b, c + side * t * t + 2 * s * t, side * t + s)
    raise ValueError("axis must be U, V or W: %r" % (axis,))


def bar(q: Quadruple) -> Quadruple:
    """Orientation mirror (-a, -b, -c; s); the Y-matrix action."""
    return Quadruple(-q.a, -q.b, -q.c, q.s)


def parse_word(text: str) -> Word:
    """Parse whitespace-separated tokens U V W U' V' W'.

    The leftmost token is the outermost (last-applied) factor.
    """
    out = []
    for tok in text.split():
        axis = tok[0].upper()
        if axis not in AXES or tok[1:] not in ("", "'"):
            raise WordSyntaxError("bad word token %r" % tok)
        out.append(Generator(axis, -1 if tok.endswith("'") else 1))
    return tuple(out)


def format_word(w: Iterable[Generator]) -> str:
    return " ".join(g.axis + ("'" if g.sign < 0 else "") for g in w)


def _cancel_free(gens: list) -> list:
    out = []
    for g in gens:
        if out and out[-1].axis == g.axis and out[-1].sign == -g.sign:
            out.pop()
        else:
            out.append(g)
    return out


def normalize(w: Iterable[Generator]) -> NormalForm:
    """Rewrite a word as single-sign body times an Omega tail.

    Strategy: cancel adjacent inverse pairs eagerly; then repeatedly find
    the rightmost generator whose sign disagrees with the current leading
    sign and whose left neighbour agrees, apply the pair rule there,
    conjugate-relabel the suffix, and fold the transposition into the
    tail.  Each pass moves the rightmost disagreement strictly left, so
    the loop terminates.  The product body * tail equals the input word
    as a matrix identity.
    """
    word = _cancel_free([Generator(*g) for g in w])
    tail = "I"
    while word:
        lead = word[0].sign
        pos = None
        for i in range(len(word) - 1, 0, -1):
            if word[i].sign == -lead and word[i - 1].sign == lead:
                pos = i
                break
        if pos is None:
            break  # single-sign already (a disagreement at index 0 is impossible)
        x, y = word[pos - 1].axis, word[pos].axis
        t = PAIR_RULE[frozenset((x, y))]
        # X Y^-1 -> Y and X^-1 Y -> Y^-1, then conjugate everything right
        # of the site by the transposition
        rewritten = (
            word[: pos - 1]
            + [Generator(y, lead)]
            + [Generator(CONJ[t][g.axis], -g.sign) for g in word[pos + 1 :]]
        )
        tail = omega_mul(t, tail)
        word = _cancel_free(rewritten)
    return NormalForm(tuple(word), tail)


def normal_form_matrix(nf: NormalForm) -> Mat4:
    return mat_mul(word_matrix(nf.body), omega_matrix(nf.tail))


def _semigroup_matrices(max_len: int, sign: int) -> list:
    """Matrices of all words of one sign with length <= max_len, by length."""
    layers = [[IDENTITY]]
    gens = [gen_matrix(Generator(axis, sign)) for axis in AXES]
    for _ in range(max_len):
        layers.append([mat_mul(m, g) for m in layers[-1] for g in gens])
    return [m for layer in layers for m in layer]


def free_check(max_len: int) -> bool:
    """True iff all single-sign words of length <= max_len are distinct.

    Checks the positive semigroup and the negative one; each contains
    (3**(max_len+1) - 1) / 2 words.
    """
    if max_len > 9:
        raise ValueError("budget: max_len <= 9")
    expected = (3 ** (max_len + 1) - 1) // 2
    for sign in (1, -1):
        mats = _semigroup_matrices(max_len, sign)
        if not (len(mats) == expected and len(set(mats)) == expected):
            return False
    return True


def count_normal_forms(n: int) -> int:
    """Distinct matrices among both-sign single-sign words of length <= n."""
    if n > 9:
        raise ValueError("budget: n <= 9")
    return len(set(_semigroup_matrices(n, 1)) | set(_semigroup_matrices(n, -1)))


def _omega_perm(name: str):
    """Permutation of (a, b, c) implemented by an Omega matrix."""
    m = _OMEGA[name]
    return tuple(next(j for j in range(3) if m[i][j]) for i in range(3))


def verify_relations() -> list[tuple[str, bool]]:
    """Exact machine check of the structural matrix identities.

    Returns (name, passed) pairs; all must pass for a sound build.
    """
    checks: list[tuple[str, bool]] = []
    U, V, W = (_GEN[x] for x in AXES)
    Ui, Vi, Wi = (_GEN_INV[x] for x in AXES)
    T3 = _OMEGA["T3"]

    def prod(*ms):
        m = IDENTITY
        for x in ms:
            m = mat_mul(m, x)
        return m

    checks.append(("U V' U = T3", prod(U, Vi, U) == T3))
    checks.append(("U' V U' = T3", prod(Ui, V, Ui) == T3))
    checks.append(("V U' V = T3", prod(V, Ui, V) == T3))
    checks.append(("V' U V' = T3", prod(Vi, U, Vi) == T3))

    for t, relabel in CONJ.items():
        tm = _OMEGA[t]
        for axis in AXES:
            ok = prod(tm, _GEN[axis], tm) == _GEN_INV[relabel[axis]]
            checks.append(("%s %s %s = %s'" % (t, axis, t, relabel[axis]), ok))

    C = _OMEGA["C"]
    checks.append(("C^3 = I", prod(C, C, C) == IDENTITY))

    # closure and S3 structure: products stay in Omega, the induced
    # permutations compose correctly, and the s entry matches parity
    closed = True
    homomorphic = True
    for a in OMEGA_NAMES:
        for b in OMEGA_NAMES:
            m = mat_mul(_OMEGA[a], _OMEGA[b])
            if m not in _OMEGA_BY_MAT:
                closed = False
                continue
            # Row i of a symmetry matrix reads coordinate perm(i), so the
            # matrix product M(a)M(b) reads through b's perm after a's.
            pa, pb = _omega_perm(a), _omega_perm(b)
            composed = tuple(pb[pa[i]] for i in range(3))
            if composed != _omega_perm(_OMEGA_BY_MAT[m]):
                homomorphic = False
    checks.append(("Omega closed under product", closed))
    checks.append(("Omega product matches S3 composition", homomorphic))
    parity_ok = all(
        _OMEGA[n][3][3] == (-1 if n.startswith("T") else 1) for n in OMEGA_NAMES
    )
    checks.append(("transpositions negate s, cycles fix s", parity_ok))

    for axis in AXES:
        ok = prod(Y_MATRIX, _GEN[axis], Y_MATRIX) == _GEN_INV[axis]
        checks.append(("Y %s Y = %s'" % (axis, axis), ok))

    # 2*(ab+ac+bc-s^2) as a symmetric matrix; preserved by all actions
    form = ((0, 1, 1, 0), (1, 0, 1, 0), (1, 1, 0, 0), (0, 0, 0, -2))
    mats = (
        [(_GEN[x], x) for x in AXES]
        + [(_GEN_INV[x], x + "'") for x in AXES]
        + [(_OMEGA[n], n) for n in OMEGA_NAMES]
    )
    for m, name in mats:
        ok = mat_mul(mat_transpose(m), mat_mul(form, m)) == form
        checks.append(("%s preserves ab+ac+bc-s^2" % name, ok))

    for axis in AXES:
        checks.append(("det %s = 1" % axis, mat_det(_GEN[axis]) == 1))
        checks.append(("det %s' = 1" % axis, mat_det(_GEN_INV[axis]) == 1))
    for n in OMEGA_NAMES:
        # A transposition contributes -1 on the coordinate block and -1
        # on the s entry, so every symmetry matrix has determinant +1.
        checks.append(("det %s = 1" % n, mat_det(_OMEGA[n]) == 1))

    return checks
