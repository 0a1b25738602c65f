import random
import sys

import pytest

from apolar import QQ, GF, MultiPoly, DualPoint, load_fixture, monomials


def random_form(field, nvars, degree, rng, lo=-5, hi=5, density=1.0):
    terms = {}
    for m in monomials(nvars, degree):
        if rng.random() <= density:
            c = rng.randint(lo, hi)
            if c:
                terms[m] = field(c)
    if not terms:
        terms[monomials(nvars, degree)[0]] = field.one
    return MultiPoly(field, nvars, degree, terms)


def random_points(field, nvars, count, rng, lo=-4, hi=4):
    pts, seen = [], set()
    while len(pts) < count:
        c = [rng.randint(lo, hi) for _ in range(nvars)]
        if not any(c):
            continue
        p = DualPoint([field(x) for x in c], field)
        key = p.canonical().coords
        if key in seen:
            continue
        seen.add(key)
        pts.append(p)
    return pts


def x(field, nvars, *exp, coeff=1):
    return MultiPoly.monomial(field, tuple(exp), coeff)


@pytest.fixture(scope="session")
def genus4():
    return load_fixture("genus4_canonical")


@pytest.fixture(scope="session")
def genus5():
    return load_fixture("genus5_canonical")


@pytest.fixture(scope="session")
def elliptic():
    return load_fixture("elliptic_quartic")


@pytest.fixture
def rng():
    return random.Random(20240611)


FIELDS = [QQ, GF(101)]


def pytest_terminal_summary(terminalreporter):
    lines = []
    for mod in list(sys.modules.values()):
        lines.extend(getattr(mod, "CRITERION_LINES", None) or [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(set(lines)):
            terminalreporter.write_line(line)
