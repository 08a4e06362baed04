import random

import pytest

from ncq.center import central_basis
from ncq.errors import TruncationTooShallow
from ncq.veronese import (CONVENTIONS, PREFERRED, beilinson, block_center,
                          check_convention, generator_span_dim, quasi_veronese, resolve_convention,
                          truncate, twisted_center_sum, veronese_center_dim)

from conftest import system

_trunc = {}


def trunc(mode_name, D):
    key = (mode_name, D)
    if key not in _trunc:
        _trunc[key] = truncate(system(mode_name), D)
    return _trunc[key]


def test_truncation_dims(generic):
    assert truncate(generic, 0).dims == (1,)
    assert truncate(generic, 2).dims == (1, 3, 6)
    assert truncate(generic, 4).dims == (1, 3, 6, 10, 15)
    t = truncate(generic, 2)
    with pytest.raises(TruncationTooShallow):
        t.product((1, 0, 0), (0, 1, 1))
    assert truncate(generic, 6).check_associativity(trials=60)


def test_beilinson(cy):
    b = beilinson(truncate(cy, 2))
    assert b.dimension == 15
    assert b.vertices == 3
    assert len(b.arrows(0)) == 3 and b.arrows(2) == []
    assert len(b.relations) == 3  # 9 paths of length 2 onto a 6-dim A_2
    assert b.check_upper_triangular()


def test_conventions():
    t = trunc("cyclotomic(6,1)", 11)
    chosen, reports = resolve_convention(t, 3)
    assert chosen == PREFERRED
    ok = {rep.name: rep.ok for rep in reports}
    assert ok == {"a_kj*b_ik": True, "a_ik*b_kj": True, "a_ik*b_jk": False}
    assert set(CONVENTIONS) == set(ok)


def test_decoy_convention_fails_degree_test():
    rep = check_convention(trunc("generic", 11), 3, "a_ik*b_jk")
    assert not rep.ok


def test_r_equals_one_is_a(generic):
    t = trunc("generic", 6)
    qv = quasi_veronese(t, 1, 4)
    for d in range(5):
        assert qv.dim(d) == t.dim(d)
    for d in range(4):
        assert veronese_center_dim(t, 1, d, qv) == central_basis(generic, d).dimension


def test_degree_zero_block_dimension():
    qv = quasi_veronese(trunc("generic", 11), 3, 2)
    # diagonal A_0 blocks, A_1 just above, A_2 in the corner
    assert qv.dim(0) == 3 * 1 + 2 * 3 + 1 * 6
    assert qv.dim(1) == 3 * 10 + 2 * 15 + 1 * 21 + 2 * 6 + 1 * 3


def test_associativity_and_unit():
    qv = quasi_veronese(trunc("cyclotomic(2,1)", 11), 3, 2)
    alg = qv.algebra
    rng = random.Random(1)
    unit = alg.unit()
    for _ in range(100):
        degs = [rng.randint(0, 1) for _ in range(3)]
        if sum(degs) > 2:
            continue
        a, b, c = (alg.random_element(rng, d) for d in degs)
        assert alg.multiply(alg.multiply(a, b), c) == alg.multiply(a, alg.multiply(b, c))
        assert alg.multiply(unit, a) == a == alg.multiply(a, unit)


def test_generators_generate():
    qv = quasi_veronese(trunc("generic", 11), 3, 2)
    for d in range(3):
        assert generator_span_dim(qv, d) == qv.dim(d)


@pytest.mark.parametrize("mode_name", ["generic", "cyclotomic(2,1)"])
def test_veronese_center_matches_base(mode_name):
    s = system(mode_name)
    t = trunc(mode_name, 11)
    qv = quasi_veronese(t, 3, 2)
    for d in range(3):
        assert veronese_center_dim(t, 3, d, qv) == central_basis(s, 3 * d).dimension


def test_generic_values():
    t = trunc("generic", 11)
    assert veronese_center_dim(t, 3, 1) == 1
    assert veronese_center_dim(t, 3, 2) == 1


def test_twisted_center_at_zeta6(zeta6):
    t = trunc("cyclotomic(6,1)", 11)
    qv = quasi_veronese(t, 3, 2)
    tw = twisted_center_sum(zeta6, 3, 2)
    assert len(tw) == 3
    assert sorted(tw.values()) == [3, 3, 4]
    assert veronese_center_dim(t, 3, 2, qv) == sum(tw.values()) == 10
    assert central_basis(zeta6, 6).dimension == 4


def test_center_elements_commute():
    t = trunc("cyclotomic(2,1)", 6)
    qv = quasi_veronese(t, 3, 1, convention=PREFERRED)
    alg = qv.algebra
    rng = random.Random(3)
    center = block_center(qv, 1)
    assert center
    for z in center:
        for _ in range(5):
            a = alg.random_element(rng, 0)
            assert alg.multiply(z, a) == alg.multiply(a, z)


def test_shallow_truncation():
    t = trunc("generic", 5)
    with pytest.raises(TruncationTooShallow):
        quasi_veronese(t, 3, 2)
    with pytest.raises(TruncationTooShallow):
        resolve_convention(t, 3)
    qv = quasi_veronese(t, 3, 1, convention=PREFERRED)
    with pytest.raises(TruncationTooShallow):
        block_center(qv, 1)
