"""Free-algebra arithmetic and PBW rewriting for quadratic presentations.

Generators are ordered x < y < z (in general: by position) and words are
compared degree-lexicographically.  A presentation is accepted when every
relation can be solved for a distinct descending pair ``ts`` (t > s) and every
descending pair occurs; the irreducible words are then exactly the ascending
words, stored as exponent tuples ``(i, j, k)`` meaning x^i y^j z^k.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb

from .errors import BadParameter, DegenerateLeading, InhomogeneousRelation, NonConfluent
from .linalg import Echelon


def _term_str(coef, mono_str):
    if not mono_str:
        return str(coef)
    if coef == 1:
        return mono_str
    if coef == -1:
        return "-" + mono_str
    s = str(coef)
    if coef.needs_parens():
        s = f"({s})"
    return f"{s}*{mono_str}"


def _join_terms(parts):
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


class _SparsePoly:
    """Finitely supported map monomial -> Scalar with no stored zeros."""

    __slots__ = ("mode", "names", "terms")

    def __init__(self, mode, names, terms=None):
        self.mode = mode
        self.names = tuple(names)
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def _new(self, terms):
        return type(self)(self.mode, self.names, terms)

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def coefficient(self, mono):
        return self.terms.get(mono, self.mode.zero)

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            nv = out[k] + v if k in out else v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        c = self.mode.scalar(c)
        if not c:
            return self._new({})
        return self._new({k: c * v for k, v in self.terms.items()})

    def __truediv__(self, c):
        return self.scale(self.mode.scalar(c).inverse())

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


def _merge_rle(w1, w2):
    if w1 and w2 and w1[-1][0] == w2[0][0]:
        return w1[:-1] + ((w1[-1][0], w1[-1][1] + w2[0][1]),) + w2[1:]
    return w1 + w2


def expand_word(rle):
    return tuple(g for g, e in rle for _ in range(e))


def compress_word(letters):
    out = []
    for g in letters:
        if out and out[-1][0] == g:
            out[-1][1] += 1
        else:
            out.append([g, 1])
    return tuple((g, e) for g, e in out)


class FreePolynomial(_SparsePoly):
    """Element of the free algebra; words are run-length encoded ((gen, exp), ...)."""

    __slots__ = ()

    @classmethod
    def generator(cls, mode, names, i):
        return cls(mode, names, {((i, 1),): mode.one})

    @classmethod
    def constant(cls, mode, names, c):
        return cls(mode, names, {(): mode.scalar(c)})

    def _lift(self, other):
        if isinstance(other, FreePolynomial):
            return other
        if isinstance(other, str):
            return None
        try:
            c = self.mode.scalar(other)
        except (TypeError, BadParameter):
            return None
        return FreePolynomial.constant(self.mode, self.names, c)

    def __mul__(self, other):
        if isinstance(other, FreePolynomial):
            out = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = _merge_rle(w1, w2)
                    nv = out[w] + c1 * c2 if w in out else c1 * c2
                    out[w] = nv
            return self._new(out)
        try:
            c = self.mode.scalar(other)
        except (TypeError, BadParameter):
            return NotImplemented
        return self.scale(c)

    def __rmul__(self, other):
        try:
            c = self.mode.scalar(other)
        except (TypeError, BadParameter):
            return NotImplemented
        return self.scale(c)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = FreePolynomial.constant(self.mode, self.names, 1)
        for _ in range(k):
            out = out * self
        return out

    def degrees(self):
        return {sum(e for _, e in w) for w in self.terms}

    def is_homogeneous(self, d=None):
        degs = self.degrees()
        return len(degs) == 1 and (d is None or degs == {d})

    def letter_terms(self):
        """Terms keyed by plain letter tuples."""
        return {expand_word(w): c for w, c in self.terms.items()}

    def __str__(self):
        items = sorted(self.terms.items(), key=lambda kv: (-len(expand_word(kv[0])), tuple(-g for g in expand_word(kv[0]))))
        parts = []
        for w, c in items:
            mono = "*".join(self.names[g] + (f"^{e}" if e > 1 else "") for g, e in w)
            parts.append(_term_str(c, mono))
        return _join_terms(parts)


def mono_key(mono):
    """Degree-lexicographic sort key for an exponent tuple (x < y < z)."""
    letters = tuple(g for g, e in enumerate(mono) for _ in range(e))
    return (len(letters), letters)


class NormalPolynomial(_SparsePoly):
    """Linear combination of normal monomials x^i y^j z^k, keyed by exponent tuples."""

    __slots__ = ()

    def _lift(self, other):
        if isinstance(other, NormalPolynomial):
            return other
        if isinstance(other, str):
            return None
        try:
            c = self.mode.scalar(other)
        except (TypeError, BadParameter):
            return None
        return NormalPolynomial(self.mode, self.names, {(0,) * len(self.names): c})

    def __mul__(self, c):
        if isinstance(c, _SparsePoly):
            raise TypeError("multiply normal polynomials through RewriteSystem.multiply")
        return self.scale(c)

    __rmul__ = __mul__

    def degrees(self):
        return {sum(m) for m in self.terms}

    def degree(self):
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop()

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def leading_monomial(self):
        return max(self.terms, key=mono_key) if self.terms else None

    def to_free(self):
        out = {}
        for m, c in self.terms.items():
            out[tuple((g, e) for g, e in enumerate(m) if e)] = c
        return FreePolynomial(self.mode, self.names, out)

    def __str__(self):
        parts = []
        for m in sorted(self.terms, key=mono_key, reverse=True):
            mono = "*".join(self.names[g] + (f"^{e}" if e > 1 else "") for g, e in enumerate(m) if e)
            parts.append(_term_str(self.terms[m], mono))
        return _join_terms(parts)


# -- presentations ------------------------------------------------------------

@dataclass(frozen=True)
class QuadraticPresentation:
    mode: object
    generators: tuple
    relations: tuple
    beta: object = None
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relations", tuple(self.relations))
        if len(set(self.generators)) != len(self.generators):
            raise BadParameter("duplicate generator names")
        for r in self.relations:
            if not r or not r.is_homogeneous(2):
                raise InhomogeneousRelation(f"relation {r} is not homogeneous of degree 2")

    @property
    def ngens(self):
        return len(self.generators)

    def gen(self, name):
        return FreePolynomial.generator(self.mode, self.generators, self.generators.index(name))

    def to_text(self):
        head = f"field {self.mode};"
        if self.beta is not None:
            head += f" param b = {self.beta};"
        rels = ", ".join(str(r) for r in self.relations)
        return f"{head} gens {','.join(self.generators)}; rels {rels};"

    def __str__(self):
        return self.to_text()


def type_s_prime_cy(mode):
    """Calabi-Yau Type S' algebra: yz - a zy + x^2, zx - a xz, xy - a yx."""
    names = ("x", "y", "z")
    x, y, z = (FreePolynomial.generator(mode, names, i) for i in range(3))
    a = mode.alpha
    rels = (y * z - a * z * y + x * x, z * x - a * x * z, x * y - a * y * x)
    return QuadraticPresentation(mode, names, rels, name="type-s-prime-cy")


def type_s_prime(mode, beta):
    """General Type S' family: yz - a zy + x^2, zx - b xz, xy - b yx with a b^2 not in {0, 1}."""
    beta = mode.scalar(beta)
    ab2 = mode.alpha * beta * beta
    if not ab2 or ab2 == 1:
        raise BadParameter("Type S' requires alpha*beta^2 not in {0, 1}")
    names = ("x", "y", "z")
    x, y, z = (FreePolynomial.generator(mode, names, i) for i in range(3))
    a = mode.alpha
    rels = (y * z - a * z * y + x * x, z * x - beta * x * z, x * y - beta * y * x)
    return QuadraticPresentation(mode, names, rels, beta=beta, name="type-s-prime")


def quantum_plane(mode):
    names = ("y", "z")
    y, z = (FreePolynomial.generator(mode, names, i) for i in range(2))
    return QuadraticPresentation(mode, names, (y * z - mode.alpha * z * y,), name="quantum-plane")


# -- rewriting ----------------------------------------------------------------

class RewriteSystem:
    """Rules ``ts -> lower terms`` for every descending pair t > s, checked for confluence.

    The object is immutable after construction apart from internal product
    caches, which only memoize pure functions of the rules.
    """

    def __init__(self, presentation):
        self.presentation = presentation
        self.mode = presentation.mode
        self.names = presentation.generators
        self.n = len(self.names)
        self.rules = {}
        for rel in presentation.relations:
            terms = rel.letter_terms()
            lead = max(terms)
            coef = terms[lead]
            if not coef:
                raise DegenerateLeading(f"leading coefficient of {rel} vanishes")
            if lead[0] <= lead[1]:
                raise DegenerateLeading(
                    f"leading word {self._word_str(lead)} of {rel} is not a descending pair")
            if lead in self.rules:
                raise DegenerateLeading(f"leading word {self._word_str(lead)} occurs twice")
            inv = -coef.inverse()
            self.rules[lead] = [(w, inv * c) for w, c in terms.items() if w != lead]
        missing = [(t, s) for t in range(self.n) for s in range(t) if (t, s) not in self.rules]
        if missing:
            raise DegenerateLeading(
                "no rule for " + ", ".join(self._word_str(w) for w in missing)
                + "; normal words would not be ordered monomials")
        self._gen_cache = {}
        self._mono_cache = {}
        self.overlap_report = self.check_overlaps()
        bad = [r for r in self.overlap_report if not r["resolved"]]
        if bad:
            raise NonConfluent(
                "overlaps fail: " + ", ".join(r["word"] for r in bad))

    def _word_str(self, letters):
        return "".join(self.names[g] for g in letters)

    # -- generic word reduction (no PBW shortcut) ----------------------------

    def reduce_words(self, terms):
        """Fully reduce a {letter tuple: Scalar} dict, rewriting leftmost reducible pairs."""
        todo = dict(terms)
        done = {}
        while todo:
            w, c = todo.popitem()
            if not c:
                continue
            pos = next((i for i in range(len(w) - 1) if (w[i], w[i + 1]) in self.rules), None)
            if pos is None:
                nv = done[w] + c if w in done else c
                if nv:
                    done[w] = nv
                else:
                    done.pop(w, None)
                continue
            for rhs, rc in self.rules[(w[pos], w[pos + 1])]:
                nw = w[:pos] + rhs + w[pos + 2:]
                todo[nw] = todo.get(nw, self.mode.zero) + c * rc
        return {w: c for w, c in done.items() if c}

    def check_overlaps(self):
        """Resolve every length-3 overlap ambiguity abc with ab and bc both leading words."""
        report = []
        for (a, b) in sorted(self.rules):
            for (b2, c) in sorted(self.rules):
                if b2 != b:
                    continue
                left = {}
                for rhs, rc in self.rules[(a, b)]:
                    left[rhs + (c,)] = left.get(rhs + (c,), self.mode.zero) + rc
                right = {}
                for rhs, rc in self.rules[(b, c)]:
                    right[(a,) + rhs] = right.get((a,) + rhs, self.mode.zero) + rc
                ok = self.reduce_words(left) == self.reduce_words(right)
                report.append({"word": self._word_str((a, b, c)), "resolved": ok})
        return report

    # -- normal forms ---------------------------------------------------------

    def one(self):
        return NormalPolynomial(self.mode, self.names, {(0,) * self.n: self.mode.one})

    def zero(self):
        return NormalPolynomial(self.mode, self.names)

    def gen(self, name):
        i = self.names.index(name) if isinstance(name, str) else name
        m = [0] * self.n
        m[i] = 1
        return NormalPolynomial(self.mode, self.names, {tuple(m): self.mode.one})

    def monomial(self, exps, coef=None):
        coef = self.mode.one if coef is None else self.mode.scalar(coef)
        return NormalPolynomial(self.mode, self.names, {tuple(exps): coef})

    def _times_gen(self, mono, g):
        """Normal form of mono * gen_g as a {mono: Scalar} dict (memoized)."""
        key = (mono, g)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        last = max((i for i, e in enumerate(mono) if e), default=-1)
        if last <= g:
            m = list(mono)
            m[g] += 1
            res = {tuple(m): self.mode.one}
        else:
            prefix = list(mono)
            prefix[last] -= 1
            prefix = tuple(prefix)
            res = {}
            for (u, v), c in self.rules[(last, g)]:
                for m1, c1 in self._times_gen(prefix, u).items():
                    cc = c * c1
                    for m2, c2 in self._times_gen(m1, v).items():
                        nv = res[m2] + cc * c2 if m2 in res else cc * c2
                        if nv:
                            res[m2] = nv
                        else:
                            del res[m2]
        self._gen_cache[key] = res
        return res

    def _times_word(self, terms, letters):
        for g in letters:
            out = {}
            for m, c in terms.items():
                for m2, c2 in self._times_gen(m, g).items():
                    nv = out[m2] + c * c2 if m2 in out else c * c2
                    if nv:
                        out[m2] = nv
                    else:
                        del out[m2]
            terms = out
        return terms

    def mono_product(self, m1, m2):
        key = (m1, m2)
        hit = self._mono_cache.get(key)
        if hit is None:
            letters = [g for g, e in enumerate(m2) for _ in range(e)]
            hit = self._times_word({m1: self.mode.one}, letters)
            self._mono_cache[key] = hit
        return hit

    def normal_form(self, f):
        if isinstance(f, NormalPolynomial):
            return f
        out = {}
        start = (0,) * self.n
        for w, c in f.terms.items():
            for m, c2 in self._times_word({start: c}, expand_word(w)).items():
                nv = out[m] + c2 if m in out else c2
                if nv:
                    out[m] = nv
                else:
                    del out[m]
        return NormalPolynomial(self.mode, self.names, out)

    def multiply(self, f, g):
        f, g = self.normal_form(f), self.normal_form(g)
        out = {}
        for m1, c1 in f.terms.items():
            for m2, c2 in g.terms.items():
                c = c1 * c2
                for m, c3 in self.mono_product(m1, m2).items():
                    nv = out[m] + c * c3 if m in out else c * c3
                    if nv:
                        out[m] = nv
                    else:
                        del out[m]
        return NormalPolynomial(self.mode, self.names, out)

    def power(self, f, k):
        out = self.one()
        for _ in range(k):
            out = self.multiply(out, f)
        return out

    def commutator(self, f, g):
        return self.multiply(f, g) - self.multiply(g, f)

    def monomials(self, d):
        """Normal monomials of degree d in ascending deglex order."""
        monos = []
        for combo in combinations_with_replacement(range(self.n), d):
            m = [0] * self.n
            for g in combo:
                m[g] += 1
            monos.append(tuple(m))
        return sorted(monos, key=mono_key)

    def hilbert_dimension(self, d):
        """Number of words of length d containing no leading word (counted by transfer matrix)."""
        if d == 0:
            return 1
        counts = [1] * self.n
        for _ in range(d - 1):
            counts = [sum(counts[s] for s in range(self.n) if (s, t) not in self.rules)
                      for t in range(self.n)]
        return sum(counts)

    def expected_hilbert_dimension(self, d):
        return comb(d + self.n - 1, self.n - 1)

    def is_normal_element(self, f, D):
        """True iff f*A_e and A_e*f span the same subspace for every e <= D."""
        f = self.normal_form(f)
        for e in range(D + 1):
            left, right, both = Echelon(), Echelon(), Echelon()
            index = {}
            for m in self.monomials(e):
                mp = self.monomial(m)
                for ech, p in ((left, self.multiply(f, mp)), (right, self.multiply(mp, f))):
                    row = {index.setdefault(k, len(index)): v for k, v in p.terms.items()}
                    ech.add(row)
                    both.add(row)
            if not (left.rank == right.rank == both.rank):
                return False
        return True

    def parse(self, text):
        from .dsl import parse_expression

        value = parse_expression(text, self.mode, generators=self.names,
                                 beta=self.presentation.beta)
        if not isinstance(value, FreePolynomial):
            value = FreePolynomial.constant(self.mode, self.names, value)
        return self.normal_form(value)


def build_rewrite_system(presentation):
    return RewriteSystem(presentation)


def normal_form(system, f):
    return system.normal_form(f)


def multiply(system, f, g):
    return system.multiply(f, g)


def commutator(system, f, g):
    return system.commutator(f, g)


def hilbert_dimension(system, d):
    return system.hilbert_dimension(d)


def is_normal_element(system, f, D):
    return system.is_normal_element(f, D)
