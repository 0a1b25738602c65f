"""Homogeneous forms and the differentiation (apolarity) action.

The same class stores forms in ``R = k[x_0..x_n]`` and differential operators
in ``T = k[d_0..d_n]``; which ring a form belongs to is a matter of how it is
used.  Monomials of a given degree are listed in descending lexicographic
order (``x_0^d`` first), and this order fixes every matrix built from forms.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb, factorial, prod

from .errors import FieldMismatchError


@lru_cache(maxsize=None)
def monomials(nvars, degree):
    """All exponent vectors of length ``nvars`` summing to ``degree``."""
    if degree < 0:
        return ()
    if nvars == 1:
        return ((degree,),)
    out = []
    # stars and bars, descending lex
    for bars in combinations(range(degree + nvars - 1), nvars - 1):
        exps, prev = [], -1
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(degree + nvars - 2 - prev)
        out.append(tuple(exps))
    out.sort(reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars, degree):
    return {m: i for i, m in enumerate(monomials(nvars, degree))}


def num_monomials(nvars, degree):
    return comb(nvars - 1 + degree, degree) if degree >= 0 else 0


def _multinomial(exps):
    out = factorial(sum(exps))
    for e in exps:
        out //= factorial(e)
    return out


class MultiPoly:
    """Immutable homogeneous form over a field.

    ``terms`` maps exponent tuples to nonzero field elements.
    """

    __slots__ = ("field", "nvars", "degree", "_terms")

    def __init__(self, field, nvars, degree, terms=None):
        if nvars < 1:
            raise ValueError("a form needs at least one variable")
        if degree < 0:
            raise ValueError("degree must be non-negative")
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or sum(exp) != degree or min(exp) < 0:
                raise ValueError(f"exponent {exp} does not fit a degree {degree} form in {nvars} variables")
            c = field(c)
            if c != 0:
                clean[exp] = clean.get(exp, field.zero) + c if exp in clean else c
        self.field = field
        self.nvars = nvars
        self.degree = degree
        self._terms = {e: c for e, c in clean.items() if c != 0}

    @classmethod
    def _raw(cls, field, nvars, degree, terms):
        obj = object.__new__(cls)
        obj.field = field
        obj.nvars = nvars
        obj.degree = degree
        obj._terms = terms
        return obj

    # construction helpers

    @classmethod
    def zero(cls, field, nvars, degree):
        return cls._raw(field, nvars, degree, {})

    @classmethod
    def monomial(cls, field, exp, coeff=1):
        return cls(field, len(exp), sum(exp), {tuple(exp): coeff})

    @classmethod
    def linear(cls, field, coeffs):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(field, n, 1, terms)

    @classmethod
    def from_vector(cls, field, nvars, degree, vec):
        mons = monomials(nvars, degree)
        if len(vec) != len(mons):
            raise ValueError("coefficient vector has the wrong length")
        return cls._raw(field, nvars, degree,
                        {m: field(c) for m, c in zip(mons, vec) if c != 0})

    # accessors

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), reverse=True)

    def coeff(self, exp):
        return self._terms.get(tuple(exp), self.field.zero)

    def is_zero(self):
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def to_vector(self):
        z = self.field.zero
        return [self._terms.get(m, z) for m in monomials(self.nvars, self.degree)]

    def leading_coefficient(self):
        return self.items()[0][1] if self._terms else self.field.zero

    def normalized(self):
        """Scale so that the first nonzero coefficient (monomial order) is 1."""
        if not self._terms:
            return self
        return self.scale(self.field.one / self.leading_coefficient())

    # arithmetic

    def _compatible(self, other):
        if not isinstance(other, MultiPoly):
            return False
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        return True

    def __add__(self, other):
        if not self._compatible(other):
            return NotImplemented
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return MultiPoly._raw(self.field, self.nvars, self.degree, terms)

    def __neg__(self):
        return MultiPoly._raw(self.field, self.nvars, self.degree,
                              {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not self._compatible(other):
            return NotImplemented
        return self + (-other)

    def scale(self, s):
        s = self.field(s)
        if s == 0:
            return MultiPoly.zero(self.field, self.nvars, self.degree)
        return MultiPoly._raw(self.field, self.nvars, self.degree,
                              {e: c * s for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            self._compatible(other)
            terms = {}
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    s = terms.get(e)
                    terms[e] = c1 * c2 if s is None else s + c1 * c2
            terms = {e: c for e, c in terms.items() if c != 0}
            return MultiPoly._raw(self.field, self.nvars, self.degree + other.degree, terms)
        return self.scale(other)

    __rmul__ = scale

    def __pow__(self, k):
        out = MultiPoly.monomial(self.field, (0,) * self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.field == other.field and self.nvars == other.nvars
                and self.degree == other.degree and self._terms == other._terms)

    def __hash__(self):
        return hash((self.field, self.nvars, self.degree, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return f"0 (deg {self.degree})"
        parts = []
        for e, c in self.items():
            mon = "*".join(f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"({c})" + (f"*{mon}" if mon else ""))
        return " + ".join(parts)

    # calculus

    def __call__(self, point):
        return self.evaluate(point)

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise ValueError("point has the wrong number of coordinates")
        f = self.field
        q = [f(c) for c in point]
        total = f.zero
        for e, c in self._terms.items():
            t = c
            for qi, k in zip(q, e):
                if k:
                    t = t * qi ** k
            total = total + t
        return total

    def diff(self, i):
        """Partial derivative with respect to variable ``i``."""
        if self.degree == 0:
            return MultiPoly.zero(self.field, self.nvars, 0)
        terms = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        return MultiPoly._raw(self.field, self.nvars, self.degree - 1,
                              {e: c for e, c in terms.items() if c != 0})

    def gradient(self):
        return [self.diff(i) for i in range(self.nvars)]

    def substitute_linear(self, matrix):
        """Compose with the linear map ``x_i = sum_j matrix[i][j] * y_j``."""
        if len(matrix) != self.nvars:
            raise ValueError("substitution matrix needs one row per variable")
        f = self.field
        m = len(matrix[0])
        forms = [MultiPoly.linear(f, [f(c) for c in row]) if any(c != 0 for c in row)
                 else MultiPoly.zero(f, m, 1) for row in matrix]
        powers = [{0: MultiPoly.monomial(f, (0,) * m)} for _ in forms]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * forms[i]
            return cache[k]

        out = MultiPoly.zero(f, m, self.degree)
        for e, c in self._terms.items():
            t = MultiPoly.monomial(f, (0,) * m, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            out = out + t
        return out

    def change_field(self, field):
        from .fields import convert

        return MultiPoly(field, self.nvars, self.degree,
                         {e: convert(c, self.field, field) for e, c in self._terms.items()})


def apolar_apply(D, f):
    """Let the operator ``D`` (a form in the dual variables) act on ``f``.

    On monomials ``d^a . x^b = b!/(b-a)! x^(b-a)`` when ``b >= a`` and 0
    otherwise; extended bilinearly.
    """
    if D.nvars != f.nvars:
        raise ValueError(f"variable count mismatch: {D.nvars} vs {f.nvars}")
    if D.field != f.field:
        raise FieldMismatchError(f"{D.field} vs {f.field}")
    field = f.field
    if field.characteristic and field.characteristic <= f.degree:
        raise ValueError(f"prime {field.characteristic} must exceed the degree {f.degree}")
    e, d = D.degree, f.degree
    if e > d:
        return MultiPoly.zero(field, f.nvars, 0)
    terms = {}
    for a, da in D._terms.items():
        for b, cb in f._terms.items():
            if any(ai > bi for ai, bi in zip(a, b)):
                continue
            k = prod(factorial(bi) // factorial(bi - ai) for ai, bi in zip(a, b))
            r = tuple(bi - ai for ai, bi in zip(a, b))
            v = da * cb * k
            s = terms.get(r)
            terms[r] = v if s is None else s + v
    return MultiPoly._raw(field, f.nvars, d - e, {m: c for m, c in terms.items() if c != 0})


def power_of_linear(point, d):
    """Expand ``l^d`` where ``l = sum a_i x_i`` for ``point = (a_0, ..., a_n)``."""
    coords = point.coords if isinstance(point, DualPoint) else point
    field = point.field if isinstance(point, DualPoint) else None
    if field is None:
        raise TypeError("power_of_linear expects a DualPoint")
    n = len(coords)
    terms = {}
    for exp in monomials(n, d):
        c = field(_multinomial(exp))
        for a, k in zip(coords, exp):
            if k:
                c = c * a ** k
        if c != 0:
            terms[exp] = c
    return MultiPoly._raw(field, n, d, terms)


class DualPoint:
    """A point of the dual projective space, i.e. a linear form up to scale."""

    __slots__ = ("field", "coords")

    def __init__(self, coords, field):
        coords = tuple(field(c) for c in coords)
        if not coords:
            raise ValueError("a point needs coordinates")
        if field.exact:
            if all(c == 0 for c in coords):
                raise ValueError("the zero vector is not a projective point")
        elif max(abs(c) for c in coords) == 0:
            raise ValueError("the zero vector is not a projective point")
        self.field = field
        self.coords = coords

    def __len__(self):
        return len(self.coords)

    def linear_form(self):
        return MultiPoly.linear(self.field, list(self.coords))

    def canonical(self):
        """Representative with first nonzero coordinate equal to 1."""
        if self.field.exact:
            lead = next(c for c in self.coords if c != 0)
        else:
            big = max(abs(c) for c in self.coords)
            lead = next(c for c in self.coords if abs(c) > big * self.field.eps)
        return DualPoint([c / lead for c in self.coords], self.field)

    def same_point(self, other, tol=None):
        if len(self) != len(other):
            return False
        a, b = self.canonical().coords, other.canonical().coords
        if self.field.exact:
            return a == b
        tol = self.field.eps if tol is None else tol
        scale = max(1, max(abs(x) for x in a))
        return max(abs(x - y) for x, y in zip(a, b)) <= tol * scale

    def __eq__(self, other):
        return isinstance(other, DualPoint) and self.field == other.field and self.same_point(other)

    def __hash__(self):
        if self.field.exact:
            return hash(self.canonical().coords)
        return hash(len(self.coords))

    def __repr__(self):
        return f"DualPoint({[self.field.format(c) for c in self.coords]})"
