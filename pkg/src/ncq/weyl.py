"""Localization at x, the quotient by x, and matrix models of simple quantized-Weyl modules.

With x normal, x w = tau(w) x for every generator w. In A[x^-1]_0 put
u = y x^-1, v = z x^-1; then x (uv) x = tau(y) z and x (vu) x = tau(z) y, so
the relation uv = q vu + c is read off from a linear relation in A_2.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BadParameter, DimensionMismatch, NeitherHolds, NotNormal, OrderInfinite
from .linalg import Echelon, identity, mat_mul, mat_sub, mat_scale, nullspace
from .ncalg import FreePolynomial, NormalPolynomial, QuadraticPresentation
from .scalar import INFINITE


# -- localization and quotient -------------------------------------------------

@dataclass(frozen=True)
class LocalizedRelation:
    q: object
    c: object
    route: str = "tau"

    def __str__(self):
        return f"uv = ({self.q})*vu + ({self.c})"


def _twist(system, xi=0):
    """tau with x w = tau(w) x, as {generator index: scalar}; requires w x = c x w for every other w."""
    x = system.gen(xi)
    tau = {xi: system.mode.one}
    for w in range(system.n):
        if w == xi:
            continue
        gw = system.gen(w)
        wx = system.multiply(gw, x)
        xw = system.multiply(x, gw)
        ratio = _proportional(wx, xw)
        if ratio is None:
            raise NotNormal(f"{system.names[w]}{system.names[xi]} is not a multiple of "
                            f"{system.names[xi]}{system.names[w]}")
        # w x = r x w  =>  x w = r^-1 w x
        tau[w] = ratio.inverse()
    return tau


def _proportional(f, g):
    if not f or not g or set(f.terms) != set(g.terms):
        return None
    m = next(iter(g.terms))
    r = f.terms[m] / g.terms[m]
    return r if f == g.scale(r) else None


def _solve_qc(system, lhs, vu, xx):
    """Find (q, c) with lhs = q*vu + c*xx in A_2."""
    monos = sorted(set(lhs.terms) | set(vu.terms) | set(xx.terms))
    rows = [{k: v for k, v in enumerate((lhs.coefficient(m), -vu.coefficient(m), -xx.coefficient(m))) if v}
            for m in monos]
    ker = [v for v in nullspace(rows, 3, system.mode.one)]
    ker = [v for v in ker if v.get(0)]
    if len(nullspace(rows, 3, system.mode.one)) != 1 or not ker:
        raise NotNormal("degree-zero relation between u and v is not of the form uv = q vu + c")
    v = ker[0]
    inv = v[0].inverse()
    zero = system.mode.zero
    return v.get(1, zero) * inv, v.get(2, zero) * inv


def localize_degree_zero(system, x="x", y="y", z="z", check_degree=3):
    """Relation uv = q vu + c in A[x^-1]_0, by two independent routes that must agree."""
    names = system.names
    xi, yi, zi = (names.index(g) for g in (x, y, z))
    if not system.is_normal_element(system.gen(xi), check_degree):
        raise NotNormal(f"{x} is not normal")
    tau = _twist(system, xi)
    gx, gy, gz = system.gen(xi), system.gen(yi), system.gen(zi)
    xx = system.multiply(gx, gx)
    # route 1: x^-1 on the left, x (uv) x = tau(y) z
    lhs1 = system.multiply(gy.scale(tau[yi]), gz)
    vu1 = system.multiply(gz.scale(tau[zi]), gy)
    q1, c1 = _solve_qc(system, lhs1, vu1, xx)
    # route 2: x^-1 on the right, (uv) x^2 = y rho(z) with rho = tau^-1
    lhs2 = system.multiply(gy, gz.scale(tau[zi].inverse()))
    vu2 = system.multiply(gz, gy.scale(tau[yi].inverse()))
    q2, c2 = _solve_qc(system, lhs2, vu2, xx)
    if (q1, c1) != (q2, c2):
        raise NotNormal(f"routes disagree: ({q1}, {c1}) vs ({q2}, {c2})")
    return LocalizedRelation(q1, c1)


@dataclass
class WeylNormalization:
    """uv - q vu = c becomes uw - mu wu = rhs under w = scalar * v."""

    scalar: object
    mu: object
    rhs: object

    def as_dict(self):
        return {"w_over_v": str(self.scalar), "mu": str(self.mu), "rhs": str(self.rhs)}


def normalize(rel, scalar=None):
    """Derived choice scalar = 1/c gives rhs 1; any other scalar is reported as-is."""
    s = rel.c.inverse() if scalar is None else scalar
    return WeylNormalization(s, rel.q, rel.c * s)


def weyl_report(system):
    mode = system.mode
    rel = localize_degree_zero(system)
    derived = normalize(rel)
    claimed = normalize(rel, -mode.alpha)
    return {
        "q": str(rel.q), "c": str(rel.c),
        "expected_q_c": rel.q == mode.alpha ** 3 and rel.c == -mode.alpha,
        "derived": derived.as_dict(),
        "with_w_equals_minus_alpha_v": claimed.as_dict(),
        "weyl_parameter_order": _order(rel.q),
    }


def _order(s):
    o = s.multiplicative_order()
    return "infinite" if o == INFINITE else o


def quotient_by_x(system, x="x", check_degree=3):
    """Drop every term containing x: k<gens>/(I + (x)) = k<gens - x>/(I|x=0)."""
    p = system.presentation
    xi = p.generators.index(x)
    if not system.is_normal_element(system.gen(xi), check_degree):
        raise NotNormal(f"{x} is not normal")
    keep = [i for i in range(p.ngens) if i != xi]
    names = tuple(p.generators[i] for i in keep)
    remap = {old: new for new, old in enumerate(keep)}
    rels = []
    for r in p.relations:
        terms = {}
        for w, c in r.terms.items():
            if any(g == xi for g, _ in w):
                continue
            terms[tuple((remap[g], e) for g, e in w)] = c
        f = FreePolynomial(p.mode, names, terms)
        if f:
            rels.append(f)
    return QuadraticPresentation(p.mode, names, tuple(rels), name="quantum-plane")


# -- matrix pairs ----------------------------------------------------------------

@dataclass(frozen=True)
class SimpleModuleParam:
    """A point (lam, eta) of A^2: eta != 0 gives Diagonal(lam, eta), eta = 0 gives Nilpotent(lam)."""

    lam: object
    eta: object

    def family(self):
        if self.eta:
            if not self.lam:
                raise BadParameter("lambda = 0 with eta != 0 has no pair in either family")
            return "diagonal"
        return "nilpotent"

    def __str__(self):
        return f"({self.lam}, {self.eta})"


@dataclass
class MatrixPair:
    l: int
    U: list
    W: list
    family: str
    params: dict = field(default_factory=dict)
    q: object = None

    def __str__(self):
        show = lambda M: "[" + "; ".join(", ".join(str(v) for v in r) for r in M) + "]"
        return f"{self.family}{self.params}: U = {show(self.U)}, W = {show(self.W)}"


def weyl_parameter(mode, reading="derived"):
    """q = alpha^3 from the localization (derived) or q = alpha (the displayed reading)."""
    if reading == "derived":
        return mode.alpha ** 3
    if reading == "display":
        return mode.alpha
    raise BadParameter(f"unknown reading {reading!r}")


def build_pair(mode, param, q=None, reading="derived"):
    if mode.is_generic:
        raise OrderInfinite("generic alpha: no finite-dimensional simple modules to build")
    q = weyl_parameter(mode, reading) if q is None else mode(q)
    l = q.multiplicative_order()
    if l == INFINITE or l < 2:
        raise OrderInfinite(f"Weyl parameter {q} has order {l}")
    zero, one = mode.zero, mode.one
    lam, eta = mode(param.lam), mode(param.eta)
    fam = SimpleModuleParam(lam, eta).family()
    U = [[zero] * l for _ in range(l)]
    W = [[zero] * l for _ in range(l)]
    if fam == "diagonal":
        for m in range(1, l + 1):
            U[m - 1][m - 1] = lam * q ** m
            # solving the relation on the diagonal gives exponent m in every row
            W[m - 1][m - 1] = ((one - q) * q ** m * lam).inverse()
        for i in range(l - 1):
            W[i][i + 1] = one
        W[l - 1][0] = eta
        return MatrixPair(l, U, W, "diagonal", {"lambda": str(lam), "eta": str(eta)}, q)
    for i in range(l - 1):
        U[i][i + 1] = one
    for m in range(1, l):
        W[m][m - 1] = sum((q ** i for i in range(l - m)), zero)
    W[0][l - 1] = lam
    return MatrixPair(l, U, W, "nilpotent", {"beta": str(lam)}, q)


def _is_identity(M, mode):
    return M == identity(len(M), mode.zero, mode.one)


def verify_weyl_relation(mode, pair, q=None):
    """Which of W*U - q*U*W = I and U*W - q*W*U = I hold."""
    q = pair.q if q is None else q
    UW = mat_mul(pair.U, pair.W, mode.zero)
    WU = mat_mul(pair.W, pair.U, mode.zero)
    report = {
        "WU-qUW=I": _is_identity(mat_sub(WU, mat_scale(q, UW)), mode),
        "UW-qWU=I": _is_identity(mat_sub(UW, mat_scale(q, WU)), mode),
    }
    if not any(report.values()):
        raise NeitherHolds(f"no orientation of the Weyl relation holds for {pair}")
    return report


def _flatten(M):
    return {i * len(M) + j: v for i, r in enumerate(M) for j, v in enumerate(r) if v}


def word_basis(mode, U, W, max_length=None):
    """Words in U, W (as (label, matrix)) whose matrices are a basis of their span; BFS by length."""
    l = len(U)
    max_length = 2 * l * l if max_length is None else max_length
    ech = Echelon()
    start = ("", identity(l, mode.zero, mode.one))
    ech.add(_flatten(start[1]))
    basis, frontier = [start], [start]
    for _ in range(max_length):
        nxt = []
        for label, M in frontier:
            for name, G in (("U", U), ("W", W)):
                P = mat_mul(M, G, mode.zero)
                if ech.add(_flatten(P)) is not None:
                    nxt.append((label + name, P))
        if not nxt:
            break
        basis.extend(nxt)
        frontier = nxt
    return basis


def span_dimension(mode, pair, max_length=None):
    return len(word_basis(mode, pair.U, pair.W, max_length))


def is_irreducible(mode, pair, max_length=None):
    return span_dimension(mode, pair, max_length) == pair.l ** 2


def _word_matrix(mode, label, U, W):
    M = identity(len(U), mode.zero, mode.one)
    for ch in label:
        M = mat_mul(M, U if ch == "U" else W, mode.zero)
    return M


def _trace_prod(A, B, zero):
    n = len(A)
    total = zero
    for i in range(n):
        Ai = A[i]
        for k in range(n):
            if Ai[k]:
                b = B[k][i]
                if b:
                    total = total + Ai[k] * b
    return total


def are_equivalent(mode, p1, p2):
    """Simultaneous similarity of irreducible pairs via trace data on a word basis.

    With b_i a word basis for p1, the pairs are similar iff tr(b_i b_j) and tr(s b_i b_j)
    (s = U, W) agree: those numbers fix the left action of U and W in the basis, and
    the Gram matrix fixes that the same words are a basis for p2.
    """
    if p1.l != p2.l:
        raise DimensionMismatch(f"pairs have sizes {p1.l} and {p2.l}")
    zero = mode.zero
    basis = word_basis(mode, p1.U, p1.W)
    if len(basis) != p1.l ** 2:
        raise BadParameter("first pair is not irreducible")
    mats2 = [_word_matrix(mode, label, p2.U, p2.W) for label, _ in basis]
    mats1 = [M for _, M in basis]
    for S1, S2 in ((None, None), (p1.U, p2.U), (p1.W, p2.W)):
        left1 = mats1 if S1 is None else [mat_mul(S1, M, zero) for M in mats1]
        left2 = mats2 if S2 is None else [mat_mul(S2, M, zero) for M in mats2]
        for A1, A2 in zip(left1, left2):
            for B1, B2 in zip(mats1, mats2):
                if _trace_prod(A1, B1, zero) != _trace_prod(A2, B2, zero):
                    return False
    return True


def spectrum_of_U(pair):
    """Diagonal entries (U is triangular in both families)."""
    return [pair.U[i][i] for i in range(pair.l)]


def default_sample(mode):
    """Two lambda-classes, two etas, three betas."""
    return [SimpleModuleParam(mode(1), mode(1)), SimpleModuleParam(mode(1), mode(2)),
            SimpleModuleParam(mode(2), mode(1)), SimpleModuleParam(mode(0), mode(0)),
            SimpleModuleParam(mode(1), mode(0)), SimpleModuleParam(mode(3), mode(0))]


def classify_sample(mode, sample, reading="derived"):
    if not sample:
        return {"l": None, "relation_orientation": [], "entries": [], "inequivalence_matrix": []}
    pairs = [build_pair(mode, p, reading=reading) for p in sample]
    entries, orientations = [], set()
    for p, pair in zip(sample, pairs):
        rel = verify_weyl_relation(mode, pair)
        held = tuple(k for k, v in rel.items() if v)
        orientations.add(held)
        entries.append({"param": str(p), "family": pair.family, "relation": rel,
                        "relation_ok": len(held) >= 1, "exactly_one_orientation": len(held) == 1,
                        "irreducible": is_irreducible(mode, pair)})
    n = len(pairs)
    ineq = [[i != j and not are_equivalent(mode, pairs[i], pairs[j]) if i != j else False
             for j in range(n)] for i in range(n)]
    return {
        "l": pairs[0].l,
        "q": str(pairs[0].q),
        "relation_orientation": sorted(sorted(o) for o in orientations),
        "entries": entries,
        "inequivalence_matrix": ineq,
        "pairwise_inequivalent": all(ineq[i][j] for i in range(n) for j in range(n) if i != j),
    }


def lambda_shift_equivalent(mode, lam, eta, reading="derived"):
    """Diagonal(lam, eta) versus Diagonal(lam*q, eta): lam only matters modulo <q>."""
    p = build_pair(mode, SimpleModuleParam(mode(lam), mode(eta)), reading=reading)
    shifted = build_pair(mode, SimpleModuleParam(mode(lam) * p.q, mode(eta)), reading=reading)
    return are_equivalent(mode, p, shifted)
