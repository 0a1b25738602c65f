"""Complete intersection fixtures and their Artinian reductions by linear forms.

A codimension ``m+1`` linear space ``L = Z(h_1..h_{m+1})`` cutting an
``m``-dimensional complete intersection ``X`` gives an Artinian Gorenstein
quotient of the polynomial ring in the free coordinates of ``L``; its dual
socle generator is the hypersurface ``f_L`` apolar to the empty section.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from importlib import resources
from math import prod

from . import linalg
from .apolarity import GradedIdealPieces, dual_socle_generator
from .errors import DegenerateInputError, NotGorensteinError
from .fields import QQ
from .poly import MultiPoly, monomials, num_monomials


@dataclass
class CompleteIntersection:
    ambient_dim: int
    generators: list
    witness_points: list = dc_field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        for g in self.generators:
            if g.nvars != self.ambient_dim + 1:
                raise ValueError("generator lives in the wrong number of variables")
        self.witness_points = [tuple(QQ(c) for c in p) for p in self.witness_points]

    @property
    def field(self):
        return self.generators[0].field

    @property
    def degrees(self):
        return [g.degree for g in self.generators]

    @property
    def codim(self):
        return len(self.generators)

    @property
    def dim(self):
        return self.ambient_dim - self.codim

    @property
    def degree(self):
        return prod(self.degrees)

    @property
    def socle_degree(self):
        return sum(d - 1 for d in self.degrees)

    @property
    def genus(self):
        """Arithmetic genus, for curves: adjunction on a complete intersection."""
        if self.dim != 1:
            return None
        return 1 + self.degree * (sum(self.degrees) - self.ambient_dim - 1) // 2

    def expected_hilbert_function(self):
        """Hilbert function of an Artinian reduction: prod (1 + t + ... + t^(d_i - 1)).

        Listed up to one past the socle degree, where it must vanish.
        """
        h = [1]
        for d in self.degrees:
            out = [0] * (len(h) + d - 1)
            for i, a in enumerate(h):
                for j in range(d):
                    out[i + j] += a
            h = out
        return tuple(h) + (0,)

    def jacobian(self, point):
        return [[g.diff(j).evaluate(point) for j in range(self.ambient_dim + 1)]
                for g in self.generators]

    def contains(self, point):
        return all(g.evaluate(point) == 0 for g in self.generators)

    def smooth_at(self, point):
        return linalg.rank(self.jacobian(point), self.field) == self.codim

    def check(self):
        """Spot-check membership and smoothness at every witness point."""
        return all(self.contains(p) and self.smooth_at(p) for p in self.witness_points)

    def to_json(self):
        from .io import poly_to_json

        out = {"ambient_dim": self.ambient_dim,
               "generators": [poly_to_json(g) for g in self.generators],
               "witness_points": [[str(c) for c in p] for p in self.witness_points]}
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, data):
        from .io import poly_from_json

        gens = [poly_from_json(g) for g in data["generators"]]
        return cls(int(data["ambient_dim"]), gens,
                   [tuple(Fraction(str(c)) for c in p) for p in data.get("witness_points", [])],
                   data.get("name", ""))


def load_fixture(name_or_path):
    """Load a fixture by bundled name (``genus4_canonical``) or file path."""
    text = None
    name = str(name_or_path)
    if not name.endswith(".json") or "/" not in name:
        base = name[:-5] if name.endswith(".json") else name
        res = resources.files("apolar.fixtures").joinpath(base + ".json")
        if res.is_file():
            text = res.read_text()
    if text is None:
        with open(name) as fh:
            text = fh.read()
    return CompleteIntersection.from_json(json.loads(text))


class LinearSubspace:
    """``Z(h_1..h_k)`` together with a coordinate chart.

    The chart solves the forms for the lexicographically first independent set
    of (pivot) variables; the remaining free variables are coordinates on the
    subspace, and ``embed`` maps them back to ambient coordinates.
    """

    def __init__(self, forms):
        if not forms:
            raise ValueError("need at least one cutting form")
        self.forms = list(forms)
        self.field = forms[0].field
        self.nvars = forms[0].nvars
        for h in forms:
            if h.degree != 1 or h.nvars != self.nvars or h.field != self.field:
                raise ValueError("cutting forms must be linear, in one space and field")
        rows = [h.to_vector() for h in forms]
        red, piv = linalg.rref(rows, self.field, self.nvars)
        if len(piv) != len(forms):
            raise DegenerateInputError("cutting forms are linearly dependent")
        self.pivots = piv
        self.free = [j for j in range(self.nvars) if j not in piv]
        f = self.field
        # x = chart * y, one column per free variable
        self.chart = [[f.zero] * len(self.free) for _ in range(self.nvars)]
        for k, j in enumerate(self.free):
            self.chart[j][k] = f.one
        for r, pc in enumerate(piv):
            for k, j in enumerate(self.free):
                self.chart[pc][k] = -red[r][j]

    @property
    def codim(self):
        return len(self.forms)

    @property
    def dim(self):
        return len(self.free) - 1

    def embed(self, y):
        return [sum((row[k] * y[k] for k in range(len(y))), start=self.field.zero)
                for row in self.chart]

    def free_coords(self, x):
        return [x[j] for j in self.free]

    def restrict(self, g):
        """The form ``g`` pulled back to the free coordinates."""
        if g.field != self.field:
            g = g.change_field(self.field)
        return g.substitute_linear(self.chart)

    def contains(self, x, tol=None):
        vals = [h.evaluate(x) for h in self.forms]
        if self.field.exact:
            return all(v == 0 for v in vals)
        return all(self.field.is_zero(v, tol) for v in vals)

    def to_json(self):
        from .io import poly_to_json

        return {"forms": [poly_to_json(h) for h in self.forms],
                "pivots": self.pivots, "free": self.free}


def random_linear_subspace(ambient_dim, codim, rng, lo=-10, hi=10, field=QQ):
    forms = []
    while True:
        forms = [MultiPoly.linear(field, [rng.randint(lo, hi) for _ in range(ambient_dim + 1)])
                 for _ in range(codim)]
        try:
            return LinearSubspace(forms)
        except DegenerateInputError:
            continue


def ideal_pieces_after_reduction(X, L, top=None):
    """Graded pieces of ``(I_X + (h)) / (h)`` in the free coordinates of ``L``."""
    if L.codim != X.dim + 1:
        raise DegenerateInputError(f"need a codimension {X.dim + 1} subspace, got {L.codim}")
    top = X.socle_degree if top is None else top
    gens = [L.restrict(g) for g in X.generators]
    n = len(L.free)
    field = L.field
    pieces = {}
    for e in range(1, top + 1):
        vecs = []
        for g in gens:
            if g.degree > e:
                continue
            for mon in monomials(n, e - g.degree):
                vecs.append((g * MultiPoly.monomial(field, mon)).to_vector())
        if vecs:
            red, _ = linalg.rref(vecs, field, num_monomials(n, e))
        else:
            red = []
        pieces[e] = [MultiPoly.from_vector(field, n, e, v) for v in red]
    return GradedIdealPieces(field, n, pieces)


def reduction_hilbert_function(X, L):
    """Hilbert function of the reduction up to one past the socle degree.

    A zero value there certifies the quotient is Artinian, i.e. L misses X.
    """
    top = X.socle_degree + 1
    return ideal_pieces_after_reduction(X, L, top).hilbert_function(top)


def apolar_hypersurface(X, L, check=True):
    """The form ``f_L`` in the free coordinates of ``L`` apolar to ``L cap X``."""
    top = X.socle_degree + 1
    ideal = ideal_pieces_after_reduction(X, L, top)
    hf = ideal.hilbert_function(top)
    if check and hf != X.expected_hilbert_function():
        raise DegenerateInputError(
            f"non-general section: Hilbert function {hf} != {X.expected_hilbert_function()}")
    try:
        return dual_socle_generator(ideal, X.socle_degree)
    except NotGorensteinError as exc:
        raise NotGorensteinError(exc.kernel_dim,
                                 "section not Artinian Gorenstein as expected") from exc


def sample_section(X, rng, lo=-10, hi=10):
    """Random general ``L`` of codimension ``dim X + 1``; resampled once on failure."""
    last = None
    for _ in range(2):
        L = random_linear_subspace(X.ambient_dim, X.dim + 1, rng, lo, hi, X.field)
        if reduction_hilbert_function(X, L) == X.expected_hilbert_function():
            return L
        last = L
    raise DegenerateInputError("two sampled sections were not general",
                               forms=[str(h) for h in last.forms])


def random_complete_intersection(ambient_dim, degrees, n_witness, rng, lo=-3, hi=3,
                                 name=""):
    """A complete intersection through ``n_witness`` random rational points.

    Each generator is a random integer combination of a basis of the forms of
    its degree that vanish at all witness points.
    """
    nv = ambient_dim + 1
    for _ in range(50):
        pts = [tuple(QQ(rng.randint(-3, 3)) for _ in range(nv)) for _ in range(n_witness)]
        if any(all(c == 0 for c in p) for p in pts) or len(set(pts)) < n_witness:
            continue
        gens = []
        for d in degrees:
            mons = monomials(nv, d)
            ev = [[prod((c ** k for c, k in zip(p, m)), start=QQ.one) for m in mons] for p in pts]
            basis = linalg.kernel_basis(ev, QQ, len(mons))
            vec = [QQ.zero] * len(mons)
            for b in basis:
                den = 1
                for c in b:
                    den = den * c.denominator // _gcd(den, c.denominator)
                k = rng.randint(lo, hi)
                vec = [v + k * c * den for v, c in zip(vec, b)]
            gens.append(MultiPoly.from_vector(QQ, nv, d, vec))
        if any(g.is_zero() for g in gens):
            continue
        X = CompleteIntersection(ambient_dim, gens, pts, name)
        if not X.check():
            continue
        try:
            sample_section(X, rng)
        except DegenerateInputError:
            continue
        return X
    raise DegenerateInputError("could not build a smooth complete intersection")


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
