# Tangent construction: hyperplanes through L tangent to the curve.  There
# are 6g-6 of them; each gives f_L as a sum of 2g-4 cubes.
import random

from apolar import apolar_hypersurface, load_fixture, sample_section
from apolar import tangent_decomposition, tangent_pencil

X = load_fixture("genus4_canonical")
L = sample_section(X, random.Random(5))
f = apolar_hypersurface(X, L)

pencil = tangent_pencil(X, L)
print(pencil.total_multiplicity)           # 18 = 6g - 6
print(pencil.accounting)                   # the discriminant also sees 6 nodes, twice each

for datum in pencil.data[:3]:
    dec = tangent_decomposition(X, L, datum, f_L=f)
    print(dec.length, float(dec.residual))   # 4 = 2g - 4 cubes
