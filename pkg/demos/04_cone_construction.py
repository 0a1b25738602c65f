# Cone construction: a point p of the curve and L span a hyperplane; it cuts
# d-1 more points, and their projections from p into L are apolar to f_L.
import random

from apolar import apolar_hypersurface, cone_decomposition, is_apolar, load_fixture
from apolar import sample_section

X = load_fixture("genus4_canonical")
L = sample_section(X, random.Random(3))
f = apolar_hypersurface(X, L)
print(f)                                   # a binary cubic

for p in X.witness_points[:3]:
    dec = cone_decomposition(X, L, p, f_L=f)
    print(p, dec.length, float(dec.residual))
    for q, lam in dec.summands:
        print("   ", q, dec.field.format(lam, 12))

# cross-check through the apolarity lemma rather than the linear solve
print(is_apolar(dec.points(), f.change_field(dec.field), tol=1e-30))
