# A genus 5 canonical curve (three quadrics in P^4) and the cubic its
# codimension 2 sections leave behind.
import random

from apolar import apolar_hypersurface, hilbert_function, load_fixture
from apolar import reduction_hilbert_function, sample_section

X = load_fixture("genus5_canonical")
print(X.degrees, X.degree, X.genus)        # [2, 2, 2] 8 5
print(X.witness_points[:2])

rng = random.Random(1)
L = sample_section(X, rng)
print([str(h) for h in L.forms], L.free)

# 1, g-2, g-2, 1 and then nothing: L misses X
print(reduction_hilbert_function(X, L))

f = apolar_hypersurface(X, L)
print(f)
print(hilbert_function(f))

# another L, another cubic; same Hilbert function
print(hilbert_function(apolar_hypersurface(X, sample_section(X, rng))))
