import pytest

from ncq import INFINITE, FieldMode, quantum_plane, type_s_prime, type_s_prime_cy
from ncq.dsl import parse_presentation
from ncq.errors import KernelTooBig, NonSquare, NotOnScheme, ShapeMismatch
from ncq.geometry import (Form, ProjPoint, compute_sigma, expected_lambda, geometry_report,
                          kernel_dimension, norm_of_sigma, on_scheme, order_of_sigma, point_scheme,
                          relation_matrix, sigma_at)
from ncq.linalg import det

MODES = ["cyclotomic(2,1)", "cyclotomic(6,1)", "cyclotomic(9,1)", "generic"]


def cy(mode_name):
    return type_s_prime_cy(FieldMode.parse(mode_name))


def formula(mode, pt):
    """Piecewise sigma: line (0,b,c) -> (0,b,ac), conic (a,b,c) -> (a, ab, c/a)."""
    a = mode.alpha
    x, y, z = pt
    if not x:
        return ProjPoint((x, y, a * z))
    return ProjPoint((x, a * y, z / a))


@pytest.mark.parametrize("mode_name", MODES)
def test_lambda_and_cubic(mode_name):
    p = cy(mode_name)
    data = point_scheme(p)
    lam = expected_lambda(p.mode)
    assert data.lam == lam
    X = [Form.var(p.mode, 3, i) for i in range(3)]
    x, y, z = X
    assert data.cubic == x * (x * x - y * z * lam) * data.unit
    assert data.cubic == det(relation_matrix(p, X), Form(p.mode, 3))


def test_lambda_at_minus_one():
    assert point_scheme(cy("cyclotomic(2,1)")).lam == 2


@pytest.mark.parametrize("mode_name", MODES)
def test_off_scheme_points(mode_name):
    p = cy(mode_name)
    pt = ProjPoint.of(p.mode, 1, 0, 0)
    assert det(relation_matrix(p, pt), p.mode.zero)
    with pytest.raises(NotOnScheme):
        sigma_at(p, pt)
    data = point_scheme(p)
    assert not on_scheme(data, pt)
    assert on_scheme(data, ProjPoint.of(p.mode, 0, 1, 0))


@pytest.mark.parametrize("mode_name", MODES)
def test_sigma_matches_formulas(mode_name):
    p = cy(mode_name)
    mode = p.mode
    lam = expected_lambda(mode)
    pts = [ProjPoint.of(mode, 0, 1, 1), ProjPoint.of(mode, 0, 2, -3),
           ProjPoint((mode.one, mode.one, lam.inverse())),
           ProjPoint((mode(3), mode(2), mode(9) / (2 * lam)))]
    for pt in pts:
        assert sigma_at(p, pt) == formula(mode, pt)
    assert sigma_at(p, pts[0]) == ProjPoint((mode.zero, mode.one, mode.alpha))
    for fixed in ((0, 1, 0), (0, 0, 1)):
        pt = ProjPoint.of(mode, *fixed)
        assert sigma_at(p, pt) == pt
        assert kernel_dimension(p, pt) == 1


def iterate_order(mode, cap=40):
    """Oracle: least i where sigma^i fixes sample points on both components."""
    lam = expected_lambda(mode)
    pts = [ProjPoint.of(mode, 0, 1, 1), ProjPoint((mode(2), mode.one, mode(4) / lam))]
    cur = list(pts)
    for i in range(1, cap + 1):
        cur = [formula(mode, q) for q in cur]
        if cur == pts:
            return i
    return INFINITE


@pytest.mark.parametrize("mode_name, order, norm", [
    ("cyclotomic(2,1)", 2, 2), ("cyclotomic(6,1)", 6, 2), ("cyclotomic(9,1)", 9, 3),
    ("cyclotomic(5,1)", 5, 5), ("cyclotomic(4,1)", 4, 4), ("generic", INFINITE, INFINITE),
])
def test_order_and_norm(mode_name, order, norm):
    p = cy(mode_name)
    sig = compute_sigma(p)
    assert sig.symbolic_ok and sig.intersections_ok
    assert order_of_sigma(p, sig) == order == iterate_order(p.mode)
    assert norm_of_sigma(p, sig) == norm == p.mode.order_of_alpha_cubed()


def test_report_shape():
    rep = geometry_report(cy("cyclotomic(6,1)"))
    assert rep["sigma_order"] == 6 and rep["sigma_norm"] == 2
    assert rep["singular_kernel_dims"] == {"(0 : 1 : 0)": 1, "(0 : 0 : 1)": 1}
    assert geometry_report(cy("generic"))["sigma_norm"] == "infinite"


def test_quantum_plane():
    mode = FieldMode.parse("cyclotomic(6,1)")
    p = quantum_plane(mode)
    assert point_scheme(p).whole_space
    assert sigma_at(p, ProjPoint.of(mode, 1, 1)) == ProjPoint((mode.one, mode.alpha))
    M = relation_matrix(p, ProjPoint.of(mode, 1, 0))
    assert len(M) == 1 and len(M[0]) == 2
    rep = geometry_report(p)
    assert rep["components"] == ["P1"] and rep["sigma_order"] == 6


def test_kernel_too_big():
    p = parse_presentation("rels x*x, x*y, x*z;")
    pt = ProjPoint.of(FieldMode.generic(), 0, 1, 0)
    assert kernel_dimension(p, pt) == 3
    with pytest.raises(KernelTooBig):
        sigma_at(p, pt)


def test_non_square_and_shape():
    with pytest.raises(NonSquare):
        point_scheme(parse_presentation("rels z*y - y*z, y*x - x*y;"))
    with pytest.raises(ShapeMismatch):  # polynomial ring: E is all of P^2
        point_scheme(parse_presentation("rels z*y - y*z, y*x - x*y, z*x - x*z;"))


def test_general_family_cubic():
    mode = FieldMode.cyclotomic(6, 1)
    data = point_scheme(type_s_prime(mode, 2))
    assert data.lam is not None and len(data.components) == 2
