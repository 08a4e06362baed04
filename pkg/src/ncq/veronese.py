"""Beilinson algebra and quasi-Veronese algebras on degree-truncated data.

Degree-d elements of A^[r] are r x r arrays whose (i, j) block lives in
A_{rd + j - i}. The block product is fixed by testing candidate index
conventions for degree consistency, the unit law and associativity.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import BadParameter, TruncationTooShallow
from .linalg import Echelon, nullspace
from .ncalg import FreePolynomial, mono_key


class TruncatedGradedAlgebra:
    """A_0..A_D with normal-monomial bases; products come from the rewrite system on demand."""

    def __init__(self, system, D):
        if D < 0:
            raise BadParameter("truncation degree must be nonnegative")
        self.system, self.D = system, D
        self.mode = system.mode
        self.basis = [system.monomials(d) for d in range(D + 1)]

    @property
    def dims(self):
        return tuple(len(b) for b in self.basis)

    def dim(self, d):
        return len(self.basis[d]) if 0 <= d <= self.D else 0

    def product(self, m1, m2):
        """Terms of m1*m2 as {mono: coef}; degrees must stay inside the truncation."""
        if sum(m1) + sum(m2) > self.D:
            raise TruncationTooShallow(f"product of degree {sum(m1) + sum(m2)} exceeds D = {self.D}")
        return self.system.mono_product(m1, m2)

    def table(self, i, j):
        return {(m1, m2): self.product(m1, m2) for m1 in self.basis[i] for m2 in self.basis[j]}

    def multiply(self, f, g):
        out = {}
        for m1, c1 in f.items():
            for m2, c2 in g.items():
                for m, c in self.product(m1, m2).items():
                    v = out.get(m)
                    v = c1 * c2 * c if v is None else v + c1 * c2 * c
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
        return out

    def random_element(self, rng, d, nterms=3, coeffs=range(-3, 4)):
        monos = self.basis[d]
        out = {}
        for m in rng.sample(monos, min(nterms, len(monos))):
            c = self.mode(rng.choice([c for c in coeffs if c]))
            out[m] = c
        return out

    def check_associativity(self, trials=50, seed=0):
        rng = random.Random(seed)
        for _ in range(trials):
            degs = [rng.randint(0, max(self.D // 3, 0)) for _ in range(3)]
            if sum(degs) > self.D:
                continue
            a, b, c = (self.random_element(rng, d) for d in degs)
            if self.multiply(self.multiply(a, b), c) != self.multiply(a, self.multiply(b, c)):
                return False
        return True


def truncate(system, D):
    return TruncatedGradedAlgebra(system, D)


# -- block algebras -------------------------------------------------------------

# Each convention says, for a product a*b landing in block (i, j), which factor
# blocks contribute: a at pos_a(i, j, k), b at pos_b(i, j, k), multiplied a then b.
CONVENTIONS = {
    # literal reading of the index display: (ab)_ij = sum_k a_kj b_ik
    "a_kj*b_ik": (lambda i, j, k: (k, j), lambda i, j, k: (i, k)),
    "a_ik*b_kj": (lambda i, j, k: (i, k), lambda i, j, k: (k, j)),
    "a_ik*b_jk": (lambda i, j, k: (i, k), lambda i, j, k: (j, k)),
}
PREFERRED = "a_kj*b_ik"


class BlockAlgebra:
    """Homogeneous elements are (degree, {((i, j), mono): coef})."""

    def __init__(self, t, r, block_degree, convention):
        self.t, self.r = t, r
        self.block_degree = block_degree
        self.convention = convention
        pa, pb = CONVENTIONS[convention]
        # for each pair of factor positions, the output position
        self._route = {}
        for i in range(r):
            for j in range(r):
                for k in range(r):
                    self._route.setdefault((pa(i, j, k), pb(i, j, k)), []).append((i, j))

    def positions(self, d):
        return [(i, j) for i in range(self.r) for j in range(self.r)
                if self.block_degree(d, i, j) is not None and self.block_degree(d, i, j) >= 0]

    def basis(self, d):
        out = []
        for (i, j) in self.positions(d):
            e = self.block_degree(d, i, j)
            if e > self.t.D:
                raise TruncationTooShallow(
                    f"block ({i},{j}) of degree {d} needs A_{e}, truncation stops at {self.t.D}")
            for m in sorted(self.t.basis[e], key=mono_key, reverse=True):
                out.append(((i, j), m))
        return out

    def dim(self, d):
        return len(self.basis(d))

    def multiply(self, a, b):
        """Product of homogeneous elements; raises ValueError when an entry lands in the wrong degree."""
        da, ea = a
        db, eb = b
        d = da + db
        out = {}
        for (pa, m1), c1 in ea.items():
            for (pb, m2), c2 in eb.items():
                for pos in self._route.get((pa, pb), ()):
                    want = self.block_degree(d, *pos)
                    if want is None or want != sum(m1) + sum(m2):
                        raise ValueError(f"{self.convention}: entry at {pos} has degree "
                                         f"{sum(m1) + sum(m2)}, block expects {want}")
                    for m, c in self.t.product(m1, m2).items():
                        key = (pos, m)
                        v = out.get(key)
                        v = c1 * c2 * c if v is None else v + c1 * c2 * c
                        if v:
                            out[key] = v
                        else:
                            out.pop(key, None)
        return (d, out)

    def unit(self):
        one = self.t.mode.one
        return (0, {((i, i), (0,) * self.t.system.n): one for i in range(self.r)})

    def random_element(self, rng, d, nterms=3):
        basis = self.basis(d)
        picks = rng.sample(basis, min(nterms, len(basis)))
        return (d, {k: self.t.mode(rng.choice([-2, -1, 1, 2, 3])) for k in picks})


@dataclass
class ConventionReport:
    name: str
    degree_consistent: bool
    unital: bool
    associative: bool

    @property
    def ok(self):
        return self.degree_consistent and self.unital and self.associative


def _qv_block_degree(r):
    return lambda d, i, j: r * d + j - i


def check_convention(t, r, convention, trials=100, seed=0, max_degree=1):
    alg = BlockAlgebra(t, r, _qv_block_degree(r), convention)
    rng = random.Random(seed)
    consistent = unital = assoc = True
    try:
        for _ in range(trials):
            a, b, c = (alg.random_element(rng, rng.randint(0, max_degree)) for _ in range(3))
            u = alg.unit()
            if alg.multiply(u, a) != a or alg.multiply(a, u) != a:
                unital = False
            if alg.multiply(alg.multiply(a, b), c) != alg.multiply(a, alg.multiply(b, c)):
                assoc = False
    except ValueError:
        consistent = unital = assoc = False
    return ConventionReport(convention, consistent, unital, assoc)


def resolve_convention(t, r, trials=100, seed=0):
    """Run every candidate; keep the literal reading if it passes, else the first that does."""
    need = 4 * r - 1  # three factors of degree <= 1, top block
    if t.D < need:
        raise TruncationTooShallow(f"convention test needs A up to degree {need}")
    reports = [check_convention(t, r, name, trials, seed) for name in CONVENTIONS]
    passing = [rep.name for rep in reports if rep.ok]
    chosen = PREFERRED if PREFERRED in passing else (passing[0] if passing else None)
    return chosen, reports


@dataclass
class QuasiVeroneseTruncation:
    r: int
    D: int
    algebra: BlockAlgebra
    convention: str
    convention_reports: list = field(default_factory=list)

    def dim(self, d):
        return self.algebra.dim(d)

    def multiply(self, a, b):
        return self.algebra.multiply(a, b)

    def generators(self):
        """Block units e_ii, degree-0 arrows e_{i,i+1} (x) A_1 and the wrap-around e_{r-1,0} (x) A_1 in degree 1."""
        t, r = self.algebra.t, self.r
        one = t.mode.one
        gens = [(0, {((i, i), (0,) * t.system.n): one}) for i in range(r)]
        for m in t.basis[1]:
            for i in range(r - 1):
                gens.append((0, {((i, i + 1), m): one}))
            gens.append((1, {((r - 1, 0), m): one}))
        if r == 1:
            gens = [(1, {((0, 0), m): one}) for m in t.basis[1]]
        return gens


def quasi_veronese(t, r, D, convention=None, trials=100):
    if r < 1:
        raise BadParameter("r must be positive")
    if t.D < r * D + r - 1:
        raise TruncationTooShallow(f"A^[{r}] through degree {D} needs A up to {r * D + r - 1}; got {t.D}")
    reports = []
    if convention is None:
        if r == 1:
            convention = PREFERRED
        else:
            convention, reports = resolve_convention(t, r, trials)
            if convention is None:
                raise ValueError("no block multiplication convention is associative and unital")
    alg = BlockAlgebra(t, r, _qv_block_degree(r), convention)
    return QuasiVeroneseTruncation(r, D, alg, convention, reports)


def block_center(qv, d):
    """Basis of Z(A^[r])_d: joint nullspace of X -> [X, s] over the generators s."""
    alg, t = qv.algebra, qv.algebra.t
    if t.D < qv.r * (d + 1):
        # commutators with the degree-1 generator reach A_{r(d+1)}
        raise TruncationTooShallow(
            f"center of A^[{qv.r}] in degree {d} needs A up to {qv.r * (d + 1)}; got {t.D}")
    cols = alg.basis(d)
    rows = {}
    for s_idx, s in enumerate(qv.generators()):
        for c, key in enumerate(cols):
            X = (d, {key: t.mode.one})
            left = alg.multiply(X, s)[1]
            right = alg.multiply(s, X)[1]
            for k in set(left) | set(right):
                v = left.get(k, t.mode.zero) - right.get(k, t.mode.zero)
                if v:
                    rows.setdefault((s_idx, k), {})[c] = v
    basis = nullspace(list(rows.values()), len(cols), t.mode.one)
    return [(d, {cols[c]: v for c, v in vec.items()}) for vec in basis]


def veronese_center_dim(t, r, d, qv=None):
    if qv is None:
        if t.D < r * (d + 1):
            raise TruncationTooShallow(f"need A up to degree {r * (d + 1)}; got {t.D}")
        qv = quasi_veronese(t, r, d)
    return len(block_center(qv, d))


def generator_span_dim(qv, d):
    """Dimension of the degree-d span of words in the generators (checks that they generate)."""
    gens = qv.generators()
    index = {}
    ech = Echelon()
    frontier = [qv.algebra.unit()]
    for _ in range(2 * qv.r * (d + 1)):
        nxt = []
        for w in frontier:
            for s in gens:
                if w[0] + s[0] > d:
                    continue
                p = qv.algebra.multiply(w, s)
                if not p[1]:
                    continue
                if p[0] == d:
                    ech.add({index.setdefault(k, len(index)): v for k, v in p[1].items()})
                nxt.append(p)
        frontier = _dedupe(nxt)
        if not frontier:
            break
    return ech.rank


def _dedupe(elements):
    """Keep a linearly independent subset per degree so the frontier stays small."""
    by_degree = {}
    out = []
    for d, e in elements:
        ech, index = by_degree.setdefault(d, (Echelon(), {}))
        row = {index.setdefault(k, len(index)): v for k, v in e.items()}
        if ech.add(row) is not None:
            out.append((d, e))
    return out


# -- Beilinson algebra ---------------------------------------------------------

@dataclass
class BeilinsonQuiverAlgebra:
    t: TruncatedGradedAlgebra
    n: int                      # number of vertices (= d for a d-dimensional algebra)
    relations: list             # kernel of A_1 (x) A_1 -> A_2, as free polynomials

    def blocks(self):
        return {(i, j): self.t.dim(j - i) for i in range(self.n) for j in range(i, self.n)}

    @property
    def dimension(self):
        return sum(self.blocks().values())

    @property
    def vertices(self):
        return self.n

    def arrows(self, i):
        """Arrow basis from vertex i to i+1: the degree-1 monomials."""
        return list(self.t.basis[1]) if i + 1 < self.n else []

    def algebra(self):
        return BlockAlgebra(self.t, self.n, lambda d, i, j: (j - i) if (d == 0 and j >= i) else None,
                            "a_ik*b_kj")

    def check_upper_triangular(self, trials=50, seed=0):
        """Products of strictly upper elements stay strictly upper; also associativity."""
        alg = self.algebra()
        rng = random.Random(seed)
        for _ in range(trials):
            a, b, c = (alg.random_element(rng, 0) for _ in range(3))
            strict = [(0, {k: v for k, v in e[1].items() if k[0][0] < k[0][1]}) for e in (a, b)]
            prod = alg.multiply(*strict)[1]
            if any(pos[0] >= pos[1] for pos, _ in prod):
                return False
            if alg.multiply(alg.multiply(a, b), c) != alg.multiply(a, alg.multiply(b, c)):
                return False
        return True


def beilinson(t, d=3):
    if t.D < d - 1:
        raise TruncationTooShallow(f"Beilinson algebra needs A up to degree {d - 1}")
    s = t.system
    words = [(m1, m2) for m1 in t.basis[1] for m2 in t.basis[1]]
    # columns are the 2-paths; rows the A_2 coordinates
    rows = {}
    for c, (m1, m2) in enumerate(words):
        for m, v in t.product(m1, m2).items():
            rows.setdefault(m, {})[c] = v
    kernel = nullspace(list(rows.values()), len(words), t.mode.one)
    rels = []
    for vec in kernel:
        f = FreePolynomial(t.mode, s.names, {})
        for c, v in vec.items():
            m1, m2 = words[c]
            g1, g2 = m1.index(1), m2.index(1)
            f = f + FreePolynomial(t.mode, s.names, {((g1, 1), (g2, 1)) if g1 != g2 else ((g1, 2),): v})
        rels.append(f)
    return BeilinsonQuiverAlgebra(t, d, rels)


def twisted_center_sum(system, r, d):
    """Sum over r-th roots of unity c in the field of dim {m in A_rd : w m = c m w}.

    A central block element is diag(m, c m, ..., c^{r-1} m) with w m = c m w, so this
    is the exact dimension of Z(A^[r])_d; it equals dim Z(A)_rd when 1 is the only
    r-th root of unity that admits such m.
    """
    from .center import roots_of_unity, twisted_central_dimension

    return {str(c): twisted_central_dimension(system, r * d, c) for c in roots_of_unity(system.mode, r)}


def veronese_report(system, r=3, max_degree=4):
    from .center import central_basis

    # centers need r(d+1); resolving the block convention needs 4r-1
    t = truncate(system, max(r * (max_degree + 1), 4 * r - 1))
    qv = quasi_veronese(t, r, max_degree)
    degrees = []
    for d in range(max_degree + 1):
        v = veronese_center_dim(t, r, d, qv)
        b = central_basis(system, r * d).dimension
        tw = twisted_center_sum(system, r, d)
        degrees.append({"d": d, "center_dim_veronese": v, "center_dim_base_at_rd": b, "match": v == b,
                        "twisted_dims": tw, "matches_twisted_sum": v == sum(tw.values())})
    return {
        "r": r,
        "convention": qv.convention,
        "convention_checks": [vars(rep) for rep in qv.convention_reports],
        "degree0_dim": qv.dim(0),
        "degrees": degrees,
    }
