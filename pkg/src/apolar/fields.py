"""Coefficient fields.

Three backends are supported:

* ``QQ`` -- exact rationals, elements are :class:`fractions.Fraction`.
* ``GF(p)`` -- a prime field, elements are :class:`ModP`.
* ``CC(bits)`` -- arbitrary precision complex floats.  Every instance owns a
  private mpmath context, so different precisions can coexist in one process.

Elements support the usual arithmetic operators; everything that depends on
the backend (conversion, zero tests, printing) goes through the field object.
"""
from __future__ import annotations

import re
from fractions import Fraction

import mpmath
from mpmath.ctx_mp import MPContext

from .errors import FieldMismatchError


class Field:
    exact = True
    characteristic = 0
    tag = "?"

    def __eq__(self, other):
        return isinstance(other, Field) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return self.tag

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def is_zero(self, x):
        return x == 0

    def check(self, other):
        if self != other:
            raise FieldMismatchError(f"cannot mix {self} with {other}")


class RationalField(Field):
    tag = "Q"

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, ModP):
            raise FieldMismatchError("cannot lift a prime field element to Q")
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    def format(self, x):
        return str(x)

    def parse(self, s):
        return Fraction(str(s).strip())


class ModP:
    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise FieldMismatchError(f"GF({self.p}) vs GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pow__(self, k):
        return ModP(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} mod {self.p}"


def _is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class PrimeField(Field):
    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.tag = f"Fp:{p}"

    def __call__(self, x):
        if isinstance(x, ModP):
            if x.p != self.p:
                raise FieldMismatchError(f"GF({x.p}) element in GF({self.p})")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return ModP(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return ModP(int(x), self.p)

    def format(self, x):
        return str(x.v)

    def parse(self, s):
        return self(s)


_COMPLEX_RE = re.compile(
    r"^\s*(?P<re>[+-]?[0-9.]+(?:e[+-]?\d+)?)?\s*(?:(?P<im>[+-]\s*[0-9.]*(?:e[+-]?\d+)?)j)?\s*$",
    re.IGNORECASE,
)


class ComplexField(Field):
    """Complex numbers carried at ``bits`` of binary precision."""

    exact = False

    def __init__(self, bits=256):
        self.bits = int(bits)
        self.tag = f"C:{self.bits}"
        self.ctx = MPContext()
        self.ctx.prec = self.bits
        # default tolerance for zero tests and pivoting
        self.eps = self.ctx.mpf(2) ** (-(self.bits // 2))

    def __call__(self, x):
        ctx = self.ctx
        if isinstance(x, Fraction):
            return ctx.mpc(ctx.mpf(x.numerator) / x.denominator)
        if isinstance(x, ModP):
            raise FieldMismatchError("cannot embed a prime field element in C")
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (mpmath.mpc, mpmath.mpf)) or hasattr(x, "_mpc_") or hasattr(x, "_mpf_"):
            return ctx.mpc(x)
        return ctx.mpc(x)

    def is_zero(self, x, tol=None):
        return abs(x) <= (self.eps if tol is None else tol)

    def abs(self, x):
        return abs(self.ctx.mpc(x))

    def format(self, x, digits=None):
        ctx = self.ctx
        x = ctx.mpc(x)
        digits = digits or max(5, int(self.bits * 0.30103))
        re_s = ctx.nstr(x.real, digits, min_fixed=-1, max_fixed=-1) if x.real else "0"
        if x.imag == 0:
            return re_s
        im_s = ctx.nstr(abs(x.imag), digits, min_fixed=-1, max_fixed=-1)
        sign = "-" if x.imag < 0 else "+"
        return f"{re_s}{sign}{im_s}j"

    def parse(self, s):
        s = str(s).strip().replace(" ", "")
        m = _COMPLEX_RE.match(s)
        if not m:
            raise ValueError(f"cannot parse complex scalar {s!r}")
        re_part = m.group("re") or "0"
        im_part = m.group("im")
        if im_part is None:
            im = "0"
        elif im_part in ("+", "-"):
            im = im_part + "1"
        else:
            im = im_part
        if "/" in re_part:
            return self(Fraction(re_part))
        return self.ctx.mpc(self.ctx.mpf(re_part), self.ctx.mpf(im))


QQ = RationalField()

_prime_cache = {}
_complex_cache = {}


def GF(p):
    if p not in _prime_cache:
        _prime_cache[p] = PrimeField(p)
    return _prime_cache[p]


def CC(bits=256):
    if bits not in _complex_cache:
        _complex_cache[bits] = ComplexField(bits)
    return _complex_cache[bits]


def field_from_tag(tag):
    tag = tag.strip()
    if tag == "Q":
        return QQ
    if tag.startswith("Fp:"):
        return GF(int(tag[3:]))
    if tag.startswith("C:"):
        return CC(int(tag[2:]))
    raise ValueError(f"unknown field tag {tag!r}")


def convert(x, source, target):
    """Map a scalar of ``source`` into ``target`` (Q -> anything, C -> C)."""
    if source == target:
        return x
    if isinstance(target, ComplexField) and isinstance(source, ComplexField):
        return target.ctx.mpc(x)
    if source == QQ:
        return target(x)
    raise FieldMismatchError(f"no map from {source} to {target}")
