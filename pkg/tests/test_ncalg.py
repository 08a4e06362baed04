from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from ncq import FieldMode, build_rewrite_system, quantum_plane, type_s_prime, type_s_prime_cy
from ncq.center import central_element_g, g_power_expansion
from ncq.dsl import parse_presentation
from ncq.errors import BadParameter, DegenerateLeading, InhomogeneousRelation, NonConfluent
from ncq.ncalg import FreePolynomial

from conftest import system


def test_cy_rules(generic):
    s = generic
    a = s.mode.alpha
    inv = a.inverse()
    assert sorted(s.rules) == [(1, 0), (2, 0), (2, 1)]
    assert s.rules[(1, 0)] == [((0, 1), inv)]
    assert s.rules[(2, 0)] == [((0, 2), a)]
    assert dict(s.rules[(2, 1)]) == {(1, 2): inv, (0, 0): inv}
    assert all(r["resolved"] for r in s.overlap_report)
    assert [r["word"] for r in s.overlap_report] == ["zyx"]


def test_quantum_plane_single_rule():
    s = build_rewrite_system(quantum_plane(FieldMode.generic()))
    assert list(s.rules) == [(1, 0)]
    assert s.rules[(1, 0)] == [((0, 1), s.mode.alpha.inverse())]
    assert s.overlap_report == []


def test_duplicate_leading_word():
    with pytest.raises((DegenerateLeading, NonConfluent)):
        build_rewrite_system(parse_presentation("rels x*y, x*y - y*x;"))


def test_non_confluent():
    p = parse_presentation("rels z*y - y*z - x^2, y*x - x*y, z*x - 2*x*z;")
    with pytest.raises(NonConfluent, match="zyx"):
        build_rewrite_system(p)


def test_missing_rule():
    with pytest.raises(DegenerateLeading):
        build_rewrite_system(parse_presentation("rels z*y - y*z, y*x - x*y;"))


def test_general_family_constraint():
    mode = FieldMode.cyclotomic(2, 1)
    with pytest.raises(BadParameter):
        type_s_prime(mode, 0)
    z4 = FieldMode.cyclotomic(4, 2)  # alpha = -1, beta = i gives alpha*beta^2 = 1
    with pytest.raises(BadParameter):
        type_s_prime(z4, z4.zeta)
    s = build_rewrite_system(type_s_prime(mode, 2))
    assert s.hilbert_dimension(4) == 15


def test_inhomogeneous_rejected(generic):
    x = generic.presentation.gen("x")
    with pytest.raises(InhomogeneousRelation):
        type(generic.presentation)(generic.mode, ("x",), (x * x + x,))


@pytest.mark.parametrize("word, expected", [
    ("y*x", "a^-1*x*y"),
    ("z*y", "a^-1*y*z + a^-1*x^2"),
    ("z*x", "a*x*z"),
    ("z*y^2", "a^-2*y^2*z + a^-4*(1+a^3)*x^2*y"),
    ("y*z*x", "x*y*z"),
    ("z*y*x", "a^-1*x*y*z + a^-1*x^3"),
])
def test_normal_forms(cy, word, expected):
    assert cy.parse(word) == cy.parse(expected)


def test_relations_reduce_to_zero(cy):
    for rel in cy.presentation.relations:
        assert not cy.normal_form(rel)


def test_g_squared_matches_kappa(cy):
    g = central_element_g(cy)
    k = g_power_expansion(cy.mode, 2)
    assert cy.multiply(g, g) == k.as_polynomial(cy)


@pytest.mark.parametrize("d", range(13))
def test_hilbert(cy, d):
    assert cy.hilbert_dimension(d) == comb(d + 2, 2) == len(cy.monomials(d))


def test_monomials_ascending(generic):
    assert generic.monomials(2) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]


def test_commutators(cy):
    x, y, z = (cy.gen(c) for c in "xyz")
    a = cy.mode.alpha
    assert not cy.commutator(x, cy.power(x, 2))
    assert not cy.commutator(central_element_g(cy), x)
    yz = cy.commutator(y, z)
    assert yz == cy.parse("(1 - a^-1)*y*z - a^-1*x^2")
    if a != 1:
        assert yz


def test_normal_elements(generic, minus1):
    assert generic.is_normal_element(generic.gen("x"), 5)
    assert minus1.is_normal_element(minus1.gen("x"), 5)
    assert not generic.is_normal_element(generic.gen("y"), 2)
    assert generic.is_normal_element(central_element_g(generic), 4)


# -- properties -------------------------------------------------------------

words = st.lists(st.integers(0, 2), min_size=0, max_size=6)


def _word(s, letters):
    out = FreePolynomial.constant(s.mode, s.names, 1)
    for g in letters:
        out = out * FreePolynomial.generator(s.mode, s.names, g)
    return out


@settings(max_examples=40, deadline=None)
@given(words, words, st.sampled_from(list(("cyclotomic(2,1)", "cyclotomic(6,1)", "generic"))))
def test_normal_form_is_ring_map(w1, w2, mode_name):
    s = system(mode_name)
    f, g = _word(s, w1), _word(s, w2)
    nf = s.normal_form(f * g)
    assert nf == s.multiply(s.normal_form(f), s.normal_form(g))
    assert s.normal_form(nf.to_free()) == nf
    # independent reducer: leftmost rewriting on plain letter words
    assert s.reduce_words((f * g).letter_terms()) == {
        tuple(i for i, e in enumerate(m) for _ in range(e)): c for m, c in nf.terms.items()}


@settings(max_examples=25, deadline=None)
@given(words, words, words)
def test_associative(w1, w2, w3):
    s = system("generic")
    f, g, h = (s.normal_form(_word(s, w)) for w in (w1, w2, w3))
    assert s.multiply(s.multiply(f, g), h) == s.multiply(f, s.multiply(g, h))


def test_type_s_prime_cy_is_general_family_at_beta_alpha():
    mode = FieldMode.cyclotomic(6, 1)
    assert type_s_prime_cy(mode).relations == type_s_prime(mode, mode.alpha).relations
