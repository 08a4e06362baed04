"""Graded centers: degreewise nullspaces, generator extraction, and powers of g."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import NotCentral, WrongCase
from .linalg import Echelon, nullspace, reduced_basis
from .ncalg import NormalPolynomial, mono_key


@dataclass(frozen=True)
class CentralBasis:
    degree: int
    basis: tuple

    @property
    def dimension(self):
        return len(self.basis)


@dataclass(frozen=True)
class KappaExpansion:
    """Coefficients kappa^n_{3n-2j,j,j} of g^n, keyed by j."""

    n: int
    coefficients: dict

    def monomial(self, j):
        return (3 * self.n - 2 * j, j, j)

    def as_polynomial(self, system):
        return NormalPolynomial(system.mode, system.names,
                                {self.monomial(j): c for j, c in self.coefficients.items()})


def central_element_g(system):
    """g = xyz + (1 - alpha^3)^{-1} x^3."""
    a = system.mode.alpha
    one = system.mode.one
    return NormalPolynomial(system.mode, system.names,
                            {(1, 1, 1): one, (3, 0, 0): (one - a ** 3).inverse()})


def _descending_columns(system, d):
    """Monomials of degree d, largest first, so basis vectors lead with their largest term."""
    return sorted(system.monomials(d), key=mono_key, reverse=True)


def _vectors_to_polys(system, vectors, monos):
    return tuple(NormalPolynomial(system.mode, system.names, {monos[c]: v for c, v in vec.items()})
                 for vec in vectors)


def central_basis(system, d):
    """Joint nullspace of X -> [X, w] for the generators w, on A_d."""
    monos = _descending_columns(system, d)
    rows = {}
    for col, m in enumerate(monos):
        mp = system.monomial(m)
        for w in range(system.n):
            c = system.commutator(mp, system.gen(w))
            for target, v in c.terms.items():
                rows.setdefault((w, target), {})[col] = v
    basis = nullspace(list(rows.values()), len(monos), system.mode.one)
    return CentralBasis(d, _vectors_to_polys(system, reduced_basis(basis), monos))


def twisted_central_dimension(system, d, c):
    """dim {m in A_d : w m = c m w for every generator w}; c = 1 is the center."""
    monos = system.monomials(d)
    rows = {}
    for col, m in enumerate(monos):
        mp = system.monomial(m)
        for w in range(system.n):
            gw = system.gen(w)
            f = system.multiply(gw, mp) - system.multiply(mp, gw).scale(c)
            for target, v in f.terms.items():
                rows.setdefault((w, target), {})[col] = v
    return len(nullspace(list(rows.values()), len(monos), system.mode.one))


def roots_of_unity(mode, r):
    """All c in the coefficient field with c^r = 1."""
    if mode.is_generic:
        cands = [mode.one, -mode.one]
    else:
        powers = [mode.zeta ** k for k in range(mode.n)]
        cands = powers + [-p for p in powers]
    out = []
    for c in cands:
        if c ** r == 1 and c not in out:
            out.append(c)
    return out


def verify_central(system, f):
    f = system.normal_form(f)
    return all(not system.commutator(f, system.gen(w)) for w in range(system.n))


def _span_vectors(polys, index):
    rows = []
    for p in polys:
        rows.append({index.setdefault(m, len(index)): c for m, c in p.terms.items()})
    return rows


def _products_of_degree(system, gens, d):
    """All products of the (commuting) generators with total degree d."""
    degs = [g.degree() for g in gens]
    out = []

    def rec(start, remaining, prod):
        if remaining == 0:
            out.append(prod)
            return
        for i in range(start, len(gens)):
            if degs[i] <= remaining:
                rec(i, remaining - degs[i], system.multiply(prod, gens[i]))

    rec(0, d, system.one())
    return out


def subalgebra_dimension(system, gens, d, check_central=True):
    """Dimension of the degree-d part of the subalgebra generated by central ``gens``."""
    gens = [system.normal_form(g) for g in gens]
    if check_central:
        for g in gens:
            if not verify_central(system, g):
                raise NotCentral(f"{g} is not central")
    index = {}
    ech = Echelon()
    for p in _products_of_degree(system, gens, d):
        for row in _span_vectors([p], index):
            ech.add(row)
    return ech.rank


def subalgebra_piece(system, gens, d):
    """Products of ``gens`` of total degree d (a spanning set, not reduced)."""
    return _products_of_degree(system, [system.normal_form(g) for g in gens], d)


def center_generators(system, D):
    """Greedy extraction: new generators in degree d complement the products of earlier ones."""
    gens = []
    for d in range(1, D + 1):
        monos = _descending_columns(system, d)
        col = {m: i for i, m in enumerate(monos)}
        ech = Echelon()
        for p in _products_of_degree(system, gens, d):
            ech.add({col[m]: c for m, c in p.terms.items()})
        new = []
        for z in central_basis(system, d).basis:
            row = ech.add({col[m]: c for m, c in z.terms.items()})
            if row is not None:
                new.append(row)
        if new:
            gens.extend(_vectors_to_polys(system, reduced_basis(new), monos))
    return gens


def generators_by_degree(system, gens):
    out = {}
    for g in gens:
        out.setdefault(g.degree(), []).append(g)
    return out


def g_power_expansion(mode, n):
    """kappa^n via kappa^{m+1}_j = alpha^{1-j} kappa^m_{j-1} + alpha^{-3j} (1-alpha^3)^{-1} kappa^m_j."""
    a = mode.alpha
    inv = (mode.one - a ** 3).inverse()
    kappa = {0: inv, 1: mode.one}
    for m in range(1, n):
        nxt = {}
        for j in range(m + 2):
            v = mode.zero
            if j - 1 in kappa:
                v = v + a ** (1 - j) * kappa[j - 1]
            if j in kappa:
                v = v + a ** (-3 * j) * inv * kappa[j]
            nxt[j] = v
        kappa = nxt
    return KappaExpansion(n, kappa)


def kappa_recursion_holds(mode, expansion):
    """Check (1 - a^{3n-3j}) k_j = a^{3n-5j-3} (1-a^3)^{-1} (1-a^{3j+3}) k_{j+1} for all j."""
    a, one, n = mode.alpha, mode.one, expansion.n
    k = expansion.coefficients
    results = {}
    for j in range(n + 1):
        lhs = (one - a ** (3 * n - 3 * j)) * k[j]
        rhs = (a ** (3 * n - 5 * j - 3) * (one - a ** 3).inverse()
               * (one - a ** (3 * j + 3)) * k.get(j + 1, mode.zero))
        results[j] = lhs == rhs
    return results


def kappa_closed_forms_hold(mode, expansion):
    a, one, n = mode.alpha, mode.one, expansion.n
    k = expansion.coefficients
    top = k[n] == a ** (-(n - 1) * n // 2)
    bottom = k[0] == (one - a ** 3) ** (-n)
    return top and bottom


def case2_identity_check(system):
    """x^m y^m z^m = c g^m - c (1-a^3)^{-m} x^{|a|} with m = |a^3|, c = a^{(m-1)m/2}; and x^m y^m z^m central."""
    mode = system.mode
    order = mode.order_of_alpha()
    if mode.is_generic or order % 3:
        raise WrongCase(f"Case 2 needs 3 | |alpha|; |alpha| = {order}")
    m = mode.order_of_alpha_cubed()
    a = mode.alpha
    c = a ** ((m - 1) * m // 2)
    g = central_element_g(system)
    lhs = system.monomial((m, m, m))
    rhs = system.power(g, m).scale(c) - system.monomial((order, 0, 0)).scale(
        c * (mode.one - a ** 3) ** (-m))
    return lhs == rhs and verify_central(system, lhs)


def expected_center_generators(system):
    """{g} in generic mode, {x^n, y^n, z^n, g} with n = |alpha| otherwise."""
    g = central_element_g(system)
    if system.mode.is_generic:
        return [g]
    n = system.mode.order_of_alpha()
    return [system.monomial((n, 0, 0)), system.monomial((0, n, 0)), system.monomial((0, 0, n)), g]


def same_span(system, polys_a, polys_b):
    index = {}
    ea, eb, both = Echelon(), Echelon(), Echelon()
    for ech, polys in ((ea, polys_a), (eb, polys_b)):
        for row in _span_vectors(polys, index):
            ech.add(row)
            both.add(row)
    return ea.rank == eb.rank == both.rank
