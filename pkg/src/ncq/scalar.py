"""Exact coefficient fields.

Two field modes are supported:

* ``FieldMode.cyclotomic(n, e)`` -- the cyclotomic field Q(zeta_n) with the
  parameter alpha = zeta_n^e.  Elements are rational polynomials in zeta_n
  reduced modulo the n-th cyclotomic polynomial, so equality is equality of
  canonical residues.
* ``FieldMode.generic()`` -- the rational function field Q(a) with alpha = a
  transcendental.  Elements are stored as num/den with den monic and
  gcd(num, den) = 1.

Polynomial arithmetic is delegated to python-flint.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from flint import fmpq, fmpq_poly, fmpz_poly

from .errors import BadParameter

INFINITE = math.inf


@dataclass(frozen=True)
class FieldMode:
    kind: str
    n: int = 0
    e: int = 0

    def __post_init__(self):
        if self.kind == "generic":
            if self.n or self.e:
                raise BadParameter("generic mode takes no (n, e)")
            return
        if self.kind != "cyclotomic":
            raise BadParameter(f"unknown field kind {self.kind!r}")
        if self.n < 1:
            raise BadParameter("cyclotomic order must be positive")
        # alpha^3 = 1  <=>  n | 3e
        if (3 * self.e) % self.n == 0:
            raise BadParameter(f"alpha = zeta{self.n}^{self.e} has alpha^3 = 1")

    @classmethod
    def cyclotomic(cls, n, e=1):
        return cls("cyclotomic", n, e)

    @classmethod
    def generic(cls):
        return cls("generic")

    @classmethod
    def parse(cls, text):
        """Parse ``generic`` or ``cyclotomic(n,e)`` (``cyclotomic(n)`` means e = 1)."""
        t = text.replace(" ", "").lower()
        if t == "generic":
            return cls.generic()
        if t.startswith("cyclotomic(") and t.endswith(")"):
            parts = t[len("cyclotomic("):-1].split(",")
            try:
                nums = [int(p) for p in parts]
            except ValueError:
                raise BadParameter(f"bad field mode {text!r}") from None
            if len(nums) in (1, 2):
                return cls.cyclotomic(*nums)
        raise BadParameter(f"bad field mode {text!r}")

    @property
    def is_generic(self):
        return self.kind == "generic"

    def __str__(self):
        return "generic" if self.is_generic else f"cyclotomic({self.n},{self.e})"

    # -- per-mode constants -------------------------------------------------

    @cached_property
    def modulus(self):
        return fmpq_poly(fmpz_poly.cyclotomic(self.n)) if not self.is_generic else None

    @cached_property
    def zero(self):
        return self.scalar(0)

    @cached_property
    def one(self):
        return self.scalar(1)

    @cached_property
    def zeta(self):
        if self.is_generic:
            raise BadParameter("generic mode has no root of unity zeta")
        return CyclotomicScalar(self, fmpq_poly([0, 1]))

    @cached_property
    def alpha(self):
        if self.is_generic:
            return RationalFunction(self, fmpq_poly([0, 1]), fmpq_poly([1]))
        return self.zeta ** self.e

    @cached_property
    def symbol(self):
        return "a" if self.is_generic else f"zeta{self.n}"

    def scalar(self, value):
        """Coerce an int, Fraction, fmpq, numeric string or Scalar into this field."""
        if isinstance(value, Scalar):
            if value.mode != self:
                raise BadParameter(f"scalar from {value.mode} used in {self}")
            return value
        if isinstance(value, str):
            return parse_scalar(value, self)
        if isinstance(value, Fraction):
            value = fmpq(value.numerator, value.denominator)
        if isinstance(value, (int, fmpq)):
            if self.is_generic:
                return RationalFunction(self, fmpq_poly([value]), fmpq_poly([1]))
            return CyclotomicScalar(self, fmpq_poly([value]))
        raise TypeError(f"cannot coerce {type(value).__name__} to a scalar")

    __call__ = scalar

    # -- order data ---------------------------------------------------------

    def order_of_alpha(self):
        if self.is_generic:
            return INFINITE
        return self.n // math.gcd(self.n, self.e)

    def order_of_alpha_cubed(self):
        if self.is_generic:
            return INFINITE
        m = self.order_of_alpha()
        return m // math.gcd(m, 3)

    def power_sum(self, j):
        """sum_{v=0}^{j-1} alpha^(3v); the empty sum (j = 0) is 0."""
        a3 = self.alpha ** 3
        total, term = self.zero, self.one
        for _ in range(j):
            total = total + term
            term = term * a3
        return total


def order_of_alpha(mode):
    return mode.order_of_alpha()


def order_of_alpha_cubed(mode):
    return mode.order_of_alpha_cubed()


def power_sum(mode, j):
    return mode.power_sum(j)


def _poly_str(poly, var):
    coeffs = poly.coeffs()
    if not coeffs:
        return "0"
    out = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        neg = c < 0
        c = -c if neg else c
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _nterms(poly):
    return sum(1 for c in poly.coeffs() if c != 0)


class Scalar:
    """Immutable exact field element; concrete subclasses per field mode."""

    __slots__ = ("mode",)

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.mode != self.mode:
                raise BadParameter(f"mixing scalars of {self.mode} and {other.mode}")
            return other
        if isinstance(other, (int, Fraction, fmpq)):
            return self.mode.scalar(other)
        return None

    def __radd__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o + self

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o - self

    def __rmul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o * self

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o / self

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.mode.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __pos__(self):
        return self

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def is_zero(self):
        return not self

    def __repr__(self):
        return f"Scalar({str(self)!r}, {self.mode})"

    def multiplicative_order(self):
        """Least k > 0 with self^k = 1, or INFINITE."""
        if not self:
            return INFINITE
        if self.mode.is_generic:
            # the only roots of unity in Q(a) are +-1
            if self == 1:
                return 1
            return 2 if self == -1 else INFINITE
        w = math.lcm(2, self.mode.n)
        if self ** w != 1:
            return INFINITE
        return min(d for d in range(1, w + 1) if w % d == 0 and self ** d == 1)


class CyclotomicScalar(Scalar):
    __slots__ = ("poly",)

    def __init__(self, mode, poly):
        self.mode = mode
        self.poly = poly % mode.modulus if poly.degree() >= mode.modulus.degree() else poly

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicScalar(self.mode, self.poly + o.poly)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicScalar(self.mode, self.poly - o.poly)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicScalar(self.mode, self.poly * o.poly)

    def __neg__(self):
        return CyclotomicScalar(self.mode, -self.poly)

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero scalar")
        g, s, _ = self.poly.xgcd(self.mode.modulus)
        # modulus is irreducible, so g is a nonzero constant
        return CyclotomicScalar(self.mode, s / g[0])

    def __bool__(self):
        return not self.poly.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.poly == o.poly

    def __hash__(self):
        return hash((self.mode, tuple(str(c) for c in self.poly.coeffs())))

    def __str__(self):
        return _poly_str(self.poly, self.mode.symbol)

    def is_rational(self):
        return self.poly.degree() <= 0

    def needs_parens(self):
        return _nterms(self.poly) > 1


class RationalFunction(Scalar):
    __slots__ = ("num", "den")

    def __init__(self, mode, num, den, normalize=True):
        self.mode = mode
        if normalize:
            if num.is_zero():
                num, den = num, fmpq_poly([1])
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num, den = num / g, den / g
                lc = den.leading_coefficient()
                if lc != 1:
                    num, den = num / lc, den / lc
        self.num, self.den = num, den

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.mode, self.num + o.num, self.den)
        return RationalFunction(self.mode, self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.mode, self.num - o.num, self.den)
        return RationalFunction(self.mode, self.num * o.den - o.num * self.den, self.den * o.den)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.mode, self.num * o.num, self.den * o.den)

    def __neg__(self):
        return RationalFunction(self.mode, -self.num, self.den, normalize=False)

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero scalar")
        return RationalFunction(self.mode, self.den, self.num)

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((tuple(str(c) for c in self.num.coeffs()), tuple(str(c) for c in self.den.coeffs())))

    def __str__(self):
        num = _poly_str(self.num, "a")
        if self.den.is_one():
            return num
        if _nterms(self.num) > 1 or (self.num.degree() > 0 and self.num.coeffs()[-1] not in (1, -1)):
            num = f"({num})"
        den = _poly_str(self.den, "a")
        if _nterms(self.den) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def is_rational(self):
        return self.num.degree() <= 0 and self.den.degree() == 0

    def needs_parens(self):
        return not self.den.is_one() or _nterms(self.num) > 1


def parse_scalar(text, mode, beta=None):
    from .dsl import parse_expression

    value = parse_expression(text, mode, beta=beta)
    if not isinstance(value, Scalar):
        raise BadParameter(f"{text!r} is not a scalar")
    return value
