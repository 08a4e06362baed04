import sympy
from hypothesis import given, settings, strategies as st

from ncq import FieldMode
from ncq.linalg import Echelon, det, inverse, mat_mul, nullspace, rank, identity

Q = FieldMode.cyclotomic(2, 1)  # alpha = -1, so this is just Q
GEN = FieldMode.generic()

matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


def sparse(rows, mode=Q):
    return [{j: mode(v) for j, v in enumerate(r) if v} for r in rows]


def to_sympy(v):
    return sympy.Rational(str(v))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rank_and_nullspace_against_sympy(rows):
    ncols = len(rows[0])
    M = sympy.Matrix(rows)
    assert rank(sparse(rows)) == M.rank()
    basis = nullspace(sparse(rows), ncols, Q.one)
    assert len(basis) == len(M.nullspace())
    B = sympy.Matrix([[to_sympy(v.get(j, Q.zero)) for j in range(ncols)] for v in basis]).T \
        if basis else sympy.zeros(ncols, 0)
    assert M * B == sympy.zeros(len(rows), len(basis))
    assert B.rank() == len(basis)


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_rref_matches_sympy(rows):
    ech = Echelon()
    for r in sparse(rows):
        ech.add(r)
    ours = [[to_sympy(row.get(j, Q.zero)) for j in range(len(rows[0]))] for row in ech.rref().values()]
    theirs, _ = sympy.Matrix(rows).rref()
    theirs = [list(theirs.row(i)) for i in range(theirs.rows) if any(theirs.row(i))]
    assert ours == theirs


def test_contains_and_duplicates():
    ech = Echelon()
    assert ech.add({0: Q(2), 3: Q(1)}) is not None
    assert ech.add({0: Q(4), 3: Q(2)}) is None
    assert ech.contains({0: Q(-1), 3: Q(-1) / 2})
    assert not ech.contains({1: Q.one})
    assert len(ech) == 1


def test_det_and_inverse_over_function_field():
    a = GEN.alpha
    A = [[a, GEN.one, GEN.zero], [GEN.zero, a * a, GEN(3)], [GEN.one, GEN.zero, a - 1]]
    s = sympy.Symbol("a")
    S = sympy.Matrix([[s, 1, 0], [0, s**2, 3], [1, 0, s - 1]])
    expected = sympy.expand(S.det())
    got = det(A, GEN.zero)
    assert sympy.simplify(sympy.sympify(str(got)) - expected) == 0
    inv = inverse(A, GEN.zero, GEN.one)
    assert mat_mul(A, inv, GEN.zero) == identity(3, GEN.zero, GEN.one)


def test_singular_inverse_is_none():
    A = [[Q(1), Q(2)], [Q(2), Q(4)]]
    assert inverse(A, Q.zero, Q.one) is None
