import pytest
from hypothesis import given, settings, strategies as st

from ncq import FieldMode, quantum_plane, type_s_prime, type_s_prime_cy
from ncq.dsl import parse_expression, parse_presentation
from ncq.errors import BadParameter, DSLSyntaxError, InhomogeneousRelation

CY6 = "field cyclotomic(6,1); gens x,y,z; rels y*z - a*z*y + x^2, z*x - a*x*z, x*y - a*y*x;"


def test_cy_at_zeta6():
    p = parse_presentation(CY6)
    assert p == type_s_prime_cy(FieldMode.cyclotomic(6, 1))


def test_quantum_plane():
    p = parse_presentation("field generic; gens y,z; rels y*z - a*z*y;")
    assert p == quantum_plane(FieldMode.generic())


def test_inhomogeneous():
    with pytest.raises(InhomogeneousRelation, match="line 1, column 6"):
        parse_presentation("rels x*y - y;")


def test_default_generators_and_caller_mode():
    mode = FieldMode.cyclotomic(2, 1)
    p = parse_presentation("rels y*z - a*z*y + x^2, z*x - a*x*z, x*y - a*y*x;", mode=mode)
    assert p == type_s_prime_cy(mode)


def test_param_b():
    p = parse_presentation("field cyclotomic(6,1); param b = 2; rels y*z - a*z*y + x^2, "
                           "z*x - b*x*z, x*y - b*y*x;")
    assert p.relations == type_s_prime(FieldMode.cyclotomic(6, 1), 2).relations


@pytest.mark.parametrize("text, line, col", [
    ("field cyclotomic(6,1)\nrels x*y;", 2, 1),
    ("rels x*y - q*y*x;", 1, 12),
    ("rels x*y +;", 1, 11),
    ("gens x,a; rels x*x;", 1, 8),
    ("rels x*y;\n  junk", 2, 3),
])
def test_errors_carry_position(text, line, col):
    with pytest.raises(DSLSyntaxError) as ei:
        parse_presentation(text)
    assert (ei.value.line, ei.value.column) == (line, col)
    j = ei.value.to_json()
    assert j["line"] == line and j["column"] == col


def test_bad_field():
    with pytest.raises(BadParameter):
        parse_presentation("field cyclotomic(3,1); rels x*y;")


def test_zeta_name_checked():
    mode = FieldMode.cyclotomic(6, 1)
    assert parse_expression("zeta6^2", mode) == mode.zeta ** 2
    with pytest.raises(DSLSyntaxError):
        parse_expression("zeta5", mode)


def test_expression_values():
    mode = FieldMode.generic()
    a = mode.alpha
    assert parse_expression("(a^3-1)/a", mode) == (a ** 3 - 1) / a
    assert parse_expression("-a^-2 + 3/4", mode) == -a.inverse() ** 2 + mode(3) / 4
    f = parse_expression("z*y*x - 2*x^3", mode, generators=("x", "y", "z"))
    assert f.letter_terms() == {(2, 1, 0): mode.one, (0, 0, 0): -mode(2)}


@pytest.mark.parametrize("text", [
    CY6,
    "field generic; gens y,z; rels y*z - a*z*y;",
    "field cyclotomic(9,2); param b = a^2 + 1; rels y*z - a*z*y + x^2, z*x - b*x*z, x*y - b*y*x;",
    "field generic; gens u,v; rels u*v - (a^3-1)/a*v*u + 3*u^2;",
])
def test_round_trip(text):
    p = parse_presentation(text)
    q = parse_presentation(p.to_text())
    assert q == p
    assert q.to_text() == p.to_text()


coeffs = st.integers(-5, 5)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(coeffs, coeffs, st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=5),
       st.sampled_from(["generic", "cyclotomic(6,1)", "cyclotomic(9,1)"]))
def test_round_trip_random(terms, mode_name):
    mode = FieldMode.parse(mode_name)
    names = ("x", "y", "z")
    body = " + ".join(f"({c}*a^2 + ({d}))*{names[i]}*{names[j]}" for c, d, i, j in terms)
    try:
        p = parse_presentation(f"field {mode_name}; rels {body};")
    except InhomogeneousRelation:  # everything cancelled
        return
    assert parse_presentation(p.to_text()) == p
    assert p.mode == mode
