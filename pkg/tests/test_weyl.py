from itertools import combinations

import pytest

from ncq import FieldMode, build_rewrite_system, quantum_plane, type_s_prime_cy
from ncq.errors import BadParameter, DimensionMismatch, NeitherHolds, NotNormal, OrderInfinite
from ncq.linalg import nullspace
from ncq.weyl import (MatrixPair, SimpleModuleParam, are_equivalent, build_pair, classify_sample,
                      default_sample, is_irreducible, lambda_shift_equivalent, localize_degree_zero,
                      normalize, quotient_by_x, verify_weyl_relation, weyl_report)

from conftest import system

MINUS1 = FieldMode.cyclotomic(2, 1)
ZETA9 = FieldMode.cyclotomic(9, 1)


def P(mode, lam, eta):
    return SimpleModuleParam(mode(lam), mode(eta))


def intertwiner_dim(mode, p1, p2):
    """Oracle: dim {X : X U1 = U2 X, X W1 = W2 X}; by Schur this is 1 or 0 for simple pairs."""
    l = p1.l
    rows = []
    for A1, A2 in ((p1.U, p2.U), (p1.W, p2.W)):
        for i in range(l):
            for j in range(l):
                row = {}
                for k in range(l):
                    for col, c in ((i * l + k, A1[k][j]), (k * l + j, -A2[i][k])):
                        if c:
                            row[col] = row.get(col, mode.zero) + c
                rows.append({c: v for c, v in row.items() if v})
    return len(nullspace(rows, l * l, mode.one))


@pytest.mark.parametrize("mode_name", ["generic", "cyclotomic(2,1)", "cyclotomic(6,1)", "cyclotomic(9,1)"])
def test_localization(mode_name):
    s = system(mode_name)
    a = s.mode.alpha
    rel = localize_degree_zero(s)
    assert (rel.q, rel.c) == (a ** 3, -a)
    n = normalize(rel)
    assert n.rhs == 1 and n.mu == a ** 3
    assert normalize(rel, -a).rhs == a * a
    rep = weyl_report(s)
    assert rep["expected_q_c"]


def test_localization_values():
    rel = localize_degree_zero(system("cyclotomic(2,1)"))
    assert (rel.q, rel.c) == (-1, 1)
    z6 = system("cyclotomic(6,1)")
    rel = localize_degree_zero(z6)
    assert (rel.q, rel.c) == (-1, -z6.mode.alpha)


def test_not_normal():
    from ncq.dsl import parse_presentation
    s = build_rewrite_system(parse_presentation("rels z*y - y*z, y*x - x*y - x^2, z*x - x*z;"))
    with pytest.raises(NotNormal):
        localize_degree_zero(s, x="y", y="x")
    with pytest.raises(NotNormal):
        quotient_by_x(s, x="y")


@pytest.mark.parametrize("mode_name", ["generic", "cyclotomic(6,1)"])
def test_quotient_by_x(mode_name):
    s = system(mode_name)
    q = quotient_by_x(s)
    assert q == quantum_plane(s.mode)
    qs = build_rewrite_system(q)
    assert [qs.hilbert_dimension(d) for d in range(5)] == [1, 2, 3, 4, 5]


def test_pair_examples():
    p = build_pair(MINUS1, P(MINUS1, 1, 1))
    h = MINUS1(1) / 2
    assert p.l == 2
    assert p.U == [[MINUS1(-1), MINUS1(0)], [MINUS1(0), MINUS1(1)]]
    assert p.W == [[-h, MINUS1(1)], [MINUS1(1), h]]
    n = build_pair(MINUS1, P(MINUS1, 3, 0))
    assert n.U == [[0, 1], [0, 0]]
    assert n.W == [[0, 3], [1, 0]]
    with pytest.raises(OrderInfinite):
        build_pair(FieldMode.generic(), P(FieldMode.generic(), 1, 1))
    with pytest.raises(BadParameter):
        build_pair(MINUS1, P(MINUS1, 0, 1))


def test_orientation_at_minus_one():
    for prm in ((1, 1), (3, 0), (0, 0), (-2, 0)):
        rel = verify_weyl_relation(MINUS1, build_pair(MINUS1, P(MINUS1, *prm)))
        assert rel["WU-qUW=I"]
        # q = -1 makes the two orientations the same equation
        assert rel["UW-qWU=I"]


def test_neither_holds():
    z = [[MINUS1.zero] * 2 for _ in range(2)]
    with pytest.raises(NeitherHolds):
        verify_weyl_relation(MINUS1, MatrixPair(2, z, z, "diagonal", q=MINUS1(-1)))


@pytest.mark.parametrize("mode_name, l", [("cyclotomic(9,1)", 3), ("cyclotomic(5,1)", 5), ("cyclotomic(4,1)", 4)])
def test_exactly_one_orientation_for_l_above_two(mode_name, l):
    mode = FieldMode.parse(mode_name)
    for prm in default_sample(mode):
        pair = build_pair(mode, prm)
        assert pair.l == l
        rel = verify_weyl_relation(mode, pair)
        assert rel == {"WU-qUW=I": True, "UW-qWU=I": False}
        assert is_irreducible(mode, pair)


def test_display_reading_changes_size():
    assert build_pair(ZETA9, P(ZETA9, 1, 1), reading="display").l == 9
    assert build_pair(ZETA9, P(ZETA9, 1, 1)).l == 3


@pytest.mark.parametrize("mode", [MINUS1, ZETA9])
def test_equivalence_matches_intertwiner_oracle(mode):
    pairs = [build_pair(mode, prm) for prm in default_sample(mode)]
    q = pairs[0].q
    pairs += [build_pair(mode, SimpleModuleParam(mode(1) * q, mode(1))),
              build_pair(mode, SimpleModuleParam(mode(2) * q * q, mode(1)))]
    for p1 in pairs:
        assert are_equivalent(mode, p1, p1)
    for p1, p2 in combinations(pairs, 2):
        eq = are_equivalent(mode, p1, p2)
        assert eq == (intertwiner_dim(mode, p1, p2) == 1)
        assert eq == are_equivalent(mode, p2, p1)


def test_lambda_shift():
    assert lambda_shift_equivalent(ZETA9, 1, 1)
    assert lambda_shift_equivalent(MINUS1, 2, 5)


def test_dimension_mismatch():
    a = build_pair(MINUS1, P(MINUS1, 1, 1))
    b = build_pair(ZETA9, P(ZETA9, 1, 1))
    with pytest.raises(DimensionMismatch):
        are_equivalent(MINUS1, a, b)


def test_classify_default_sample():
    rep = classify_sample(ZETA9, default_sample(ZETA9))
    assert rep["l"] == 3
    assert rep["pairwise_inequivalent"]
    assert rep["relation_orientation"] == [["WU-qUW=I"]]
    assert all(e["irreducible"] and e["exactly_one_orientation"] for e in rep["entries"])
