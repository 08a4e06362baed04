"""Point schemes of quadratic presentations and the automorphism sigma.

The relation matrix comes from multilinearizing each relation:
f(p, q) = sum_j M(p)_{ij} q_j. Its determinant (square case) cuts out E, and
sigma(p) spans the kernel of M(p).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import KernelTooBig, NonSquare, NotOnScheme, ShapeMismatch
from .linalg import det, nullspace
from .scalar import INFINITE


class Form:
    """Commutative polynomial in k variables; terms keyed by exponent tuples."""

    __slots__ = ("mode", "k", "terms")

    def __init__(self, mode, k, terms=None):
        self.mode, self.k = mode, k
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def var(cls, mode, k, i):
        e = [0] * k
        e[i] = 1
        return cls(mode, k, {tuple(e): mode.one})

    @classmethod
    def const(cls, mode, k, c):
        return cls(mode, k, {(0,) * k: mode.scalar(c)})

    def _lift(self, other):
        return other if isinstance(other, Form) else Form.const(self.mode, self.k, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return Form(self.mode, self.k, out)

    __radd__ = __add__

    def __neg__(self):
        return Form(self.mode, self.k, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Form):
            c = self.mode.scalar(other)
            return Form(self.mode, self.k, {e: c * v for e, v in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return Form(self.mode, self.k, out)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Form)) or hasattr(other, "mode"):
            return not (self - other).terms
        return NotImplemented

    __hash__ = None

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.mode.zero)

    def __call__(self, *point):
        total = self.mode.zero
        for e, c in self.terms.items():
            t = c
            for v, k in zip(point, e):
                if k:
                    t = t * v ** k
            total = total + t
        return total

    def to_string(self, names):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                s = str(c)
                parts.append(f"({s})*{mono}" if c.needs_parens() else f"{s}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple

    def __post_init__(self):
        coords = tuple(self.coords)
        lead = next((c for c in coords if c), None)
        if lead is None:
            raise ValueError("projective point needs a nonzero coordinate")
        inv = lead.inverse()
        object.__setattr__(self, "coords", tuple(c * inv for c in coords))

    @classmethod
    def of(cls, mode, *coords):
        return cls(tuple(mode.scalar(c) for c in coords))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __str__(self):
        return "(" + " : ".join(str(c) for c in self.coords) + ")"


def relation_matrix(p, pt):
    """Rows indexed by relations, columns by generators: f_i(pt, q) = (M q)_i.

    ``pt`` may hold Scalars or Forms; entries have the same type.
    """
    coords = list(pt)
    n = p.ngens
    zero = coords[0] * 0 if not hasattr(coords[0], "inverse") else p.mode.zero
    rows = []
    for rel in p.relations:
        row = [zero] * n
        for (s, t), c in rel.letter_terms().items():
            row[t] = row[t] + coords[s] * c
        rows.append(row)
    return rows


def _kernel(M, mode):
    rows = [{j: v for j, v in enumerate(r) if v} for r in M]
    return nullspace(rows, len(M[0]), mode.one)


def kernel_dimension(p, pt):
    return len(_kernel(relation_matrix(p, pt), p.mode))


@dataclass
class PointSchemeData:
    cubic: object  # Form, or None when E is the whole ambient space
    components: list
    lam: object = None
    unit: object = None
    whole_space: bool = False
    names: tuple = ("x", "y", "z")

    def component_strings(self):
        if self.whole_space:
            return [f"P{len(self.names) - 1}"]
        return [c.to_string(self.names) for c in self.components]


def _symbolic_point(mode, k):
    return [Form.var(mode, k, i) for i in range(k)]


def point_scheme(p):
    """Factor det M(p) as unit * x * (x^2 - lambda*y*z)."""
    mode, n, r = p.mode, p.ngens, len(p.relations)
    if r == 1 and n == 2:
        # one bilinear equation in two unknowns always has a nonzero solution
        return PointSchemeData(None, [], whole_space=True, names=p.generators)
    if r != n:
        raise NonSquare(f"{r} relations in {n} generators")
    if n != 3:
        raise ShapeMismatch("point-scheme factoring is implemented for three generators")
    X = _symbolic_point(mode, 3)
    cubic = det(relation_matrix(p, X), Form(mode, 3))
    unit = cubic.coefficient((3, 0, 0))
    if not unit:
        raise ShapeMismatch(f"cubic {cubic.to_string(p.generators)} has no x^3 term")
    lam = -cubic.coefficient((1, 1, 1)) / unit
    x, y, z = X
    line = x
    conic = x * x - y * z * lam
    if cubic != line * conic * unit:
        raise ShapeMismatch(f"cubic {cubic.to_string(p.generators)} is not of the form x*(x^2 - l*y*z)")
    if not lam:
        raise ShapeMismatch("conic degenerates (lambda = 0)")
    return PointSchemeData(cubic, [line, conic], lam, unit, names=p.generators)


def expected_lambda(mode):
    a = mode.alpha
    return (a ** 3 - 1) / a


def on_scheme(data, pt):
    if data.whole_space:
        return True
    return not data.cubic(*pt)


def sigma_at(p, pt):
    pt = pt if isinstance(pt, ProjPoint) else ProjPoint.of(p.mode, *pt)
    ker = _kernel(relation_matrix(p, pt), p.mode)
    if not ker:
        raise NotOnScheme(f"{pt} is not on the point scheme")
    if len(ker) > 1:
        raise KernelTooBig(f"kernel of M{pt} has dimension {len(ker)}")
    v = ker[0]
    return ProjPoint(tuple(v.get(j, p.mode.zero) for j in range(p.ngens)))


# -- sampling and fitting -----------------------------------------------------

def line_samples(mode, count=20):
    return [ProjPoint.of(mode, 0, 1, t) for t in range(1, count + 1)]


def conic_samples(mode, lam, count=20):
    """(t : 1 : t^2/lambda) lies on x^2 = lambda*y*z."""
    return [ProjPoint((mode(t), mode.one, mode(t * t) / lam)) for t in range(1, count + 1)]


def fit_projective_map(sources, targets, mode):
    """Matrix T (up to scalar) with T*s parallel to t for each pair; None if not unique."""
    k = len(sources[0])
    rows = []
    for s, t in zip(sources, targets):
        # (T s)_i t_j - (T s)_j t_i = 0 for i < j; unknown T[i][m] sits at column i*k + m
        for i in range(k):
            for j in range(i + 1, k):
                row = {}
                for m in range(k):
                    for col, coef in ((i * k + m, s[m] * t[j]), (j * k + m, -(s[m] * t[i]))):
                        if coef:
                            row[col] = row.get(col, mode.zero) + coef
                rows.append({c: v for c, v in row.items() if v})
    ker = nullspace(rows, k * k, mode.one)
    if len(ker) != 1:
        return None
    v = ker[0]
    T = [[v.get(i * k + m, mode.zero) for m in range(k)] for i in range(k)]
    lead = next(e for r in T for e in r if e).inverse()
    return [[e * lead for e in r] for r in T]


def apply(T, coords):
    return tuple(sum((T[i][j] * coords[j] for j in range(len(coords))), coords[0] * 0)
                 for i in range(len(T)))


def _is_diagonal(T):
    return all(not T[i][j] for i in range(len(T)) for j in range(len(T)) if i != j)


def _parallel(u, v):
    k = len(u)
    return all(u[i] * v[j] == u[j] * v[i] for i in range(k) for j in range(i + 1, k))


@dataclass
class SigmaData:
    line_map: list    # 2x2 on (y, z) coordinates of the line x = 0
    conic_map: list   # 3x3 on the conic
    samples_checked: int = 0
    symbolic_ok: bool = False
    intersections_ok: bool = False
    singular_kernel_dims: dict = field(default_factory=dict)

    @property
    def diagonal(self):
        return _is_diagonal(self.line_map) and _is_diagonal(self.conic_map)


def _symbolic_check(p, data, sig):
    """M(p)*sigma(p) vanishes identically on parameterized generic points of both components."""
    mode = p.mode
    s, t = _symbolic_point(mode, 2)
    zero = Form(mode, 2)
    line_pt = [zero, s, t]
    conic_pt = [s * t, s * s, t * t * data.lam.inverse()]
    for pt, img in ((line_pt, [zero] + list(apply(sig.line_map, line_pt[1:]))),
                    (conic_pt, list(apply(sig.conic_map, conic_pt)))):
        M = relation_matrix(p, pt)
        for row in M:
            if sum((row[j] * img[j] for j in range(3)), zero):
                return False
    return True


def compute_sigma(p, data=None, samples=20):
    """Fit sigma on each component, check every sample and the generic points, and the two
    intersection points (0:1:0), (0:0:1)."""
    mode = p.mode
    data = data or point_scheme(p)
    if data.whole_space:
        raise ShapeMismatch("sigma fitting expects a line and a conic; use quantum_plane_sigma")
    line = line_samples(mode, samples)
    conic = conic_samples(mode, data.lam, samples)
    line_img = [sigma_at(p, q) for q in line]
    conic_img = [sigma_at(p, q) for q in conic]
    L = fit_projective_map([q.coords[1:] for q in line[:3]], [q.coords[1:] for q in line_img[:3]], mode)
    C = fit_projective_map([q.coords for q in conic[:4]], [q.coords for q in conic_img[:4]], mode)
    if L is None or C is None:
        raise ShapeMismatch("sigma is not projective-linear on a component")
    sig = SigmaData(L, C)
    checked = 0
    for q, img in zip(line, line_img):
        if not (on_scheme(data, img) and not img.coords[0]
                and _parallel(apply(L, q.coords[1:]), img.coords[1:])):
            raise ShapeMismatch(f"sigma{q} = {img} disagrees with the fitted line map")
        checked += 1
    for q, img in zip(conic, conic_img):
        if not (on_scheme(data, img) and not data.components[1](*img)
                and _parallel(apply(C, q.coords), img.coords)):
            raise ShapeMismatch(f"sigma{q} = {img} disagrees with the fitted conic map")
        checked += 1
    sig.samples_checked = checked
    sig.symbolic_ok = _symbolic_check(p, data, sig)
    ok = True
    for e in ((0, 1, 0), (0, 0, 1)):
        pt = ProjPoint.of(mode, *e)
        sig.singular_kernel_dims[str(pt)] = kernel_dimension(p, pt)
        try:
            img = sigma_at(p, pt)
        except KernelTooBig:
            continue
        from_line = (mode.zero,) + apply(L, pt.coords[1:])
        ok = ok and _parallel(from_line, img.coords) and _parallel(apply(C, pt.coords), img.coords)
    sig.intersections_ok = ok
    return sig


def _lcm(values):
    out = 1
    for v in values:
        if v == INFINITE:
            return INFINITE
        out = math.lcm(out, v)
    return out


def _ratio_orders(T):
    d = [T[i][i] for i in range(len(T))]
    return [(x / d[0]).multiplicative_order() for x in d[1:]]


def _iterate_order(sig, mode, cap):
    """Fallback for non-diagonal maps: smallest i <= cap with both powers scalar."""
    from .linalg import mat_mul

    L, C = sig.line_map, sig.conic_map
    Li, Ci = L, C
    for i in range(1, cap + 1):
        if _is_diagonal(Li) and _is_diagonal(Ci) and len(set(map(str, _diag(Li)))) == 1 \
                and len(set(map(str, _diag(Ci)))) == 1:
            return i
        Li, Ci = mat_mul(Li, L, mode.zero), mat_mul(Ci, C, mode.zero)
    return INFINITE


def _diag(T):
    return [T[i][i] for i in range(len(T))]


def order_of_sigma(p, sig=None):
    """Least i with sigma^i = id on E; points of each component have nonzero coordinates
    generically, so a diagonal map is the identity iff its entries agree."""
    sig = sig or compute_sigma(p)
    if sig.diagonal:
        return _lcm(_ratio_orders(sig.line_map) + _ratio_orders(sig.conic_map))
    return _iterate_order(sig, p.mode, 4 * max(p.mode.n, 1))


def norm_of_sigma(p, sig=None):
    """Least i such that sigma^i on E comes from one element of PGL_3.

    The conic spans P^2, so the only candidate is the conic map power C^i; it must
    also induce L^i on the line.
    """
    sig = sig or compute_sigma(p)
    L, C = sig.line_map, sig.conic_map
    if sig.diagonal:
        return ((C[2][2] * L[0][0]) / (C[1][1] * L[1][1])).multiplicative_order()
    from .linalg import mat_mul

    mode = p.mode
    Li, Ci = L, C
    for i in range(1, 4 * max(mode.n, 1) + 1):
        restricted = [[Ci[1][1], Ci[1][2]], [Ci[2][1], Ci[2][2]]]
        if not Ci[1][0] and not Ci[2][0] and _parallel(
                [v for r in restricted for v in r], [v for r in Li for v in r]):
            return i
        Li, Ci = mat_mul(Li, L, mode.zero), mat_mul(Ci, C, mode.zero)
    return INFINITE


def quantum_plane_sigma(p, samples=20):
    """sigma on P^1 for a single relation in two generators, as a fitted 2x2 matrix."""
    mode = p.mode
    pts = [ProjPoint.of(mode, 1, t) for t in range(1, samples + 1)]
    imgs = [sigma_at(p, q) for q in pts]
    T = fit_projective_map([q.coords for q in pts[:3]], [q.coords for q in imgs[:3]], mode)
    if T is None or not all(_parallel(apply(T, q.coords), i.coords) for q, i in zip(pts, imgs)):
        raise ShapeMismatch("sigma on P^1 is not projective-linear")
    return T


def _order_str(v):
    return "infinite" if v == INFINITE else v


def geometry_report(p, samples=20):
    data = point_scheme(p)
    if data.whole_space:
        T = quantum_plane_sigma(p, samples)
        return {"lambda": None, "components": data.component_strings(),
                "sigma": [[str(v) for v in r] for r in T],
                "sigma_order": _order_str(_lcm(_ratio_orders(T))) if _is_diagonal(T) else None,
                "sigma_norm": 1, "samples_checked": samples}
    sig = compute_sigma(p, data, samples)
    return {
        "lambda": str(data.lam),
        "components": data.component_strings(),
        "cubic": data.cubic.to_string(p.generators),
        "sigma_order": _order_str(order_of_sigma(p, sig)),
        "sigma_norm": _order_str(norm_of_sigma(p, sig)),
        "samples_checked": sig.samples_checked,
        "symbolic_check": sig.symbolic_ok,
        "intersections_agree": sig.intersections_ok,
        "singular_kernel_dims": sig.singular_kernel_dims,
        "line_map": [[str(v) for v in r] for r in sig.line_map],
        "conic_map": [[str(v) for v in r] for r in sig.conic_map],
    }
