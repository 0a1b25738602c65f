# Powersum decompositions from point sets, and generic ranks.
import random

from apolar import QQ, DualPoint, MultiPoly, generic_rank, is_apolar, power_of_linear
from apolar import solve_powersum, specialness_report, terracini_generic_rank
from apolar.io import certificate_to_json, dumps

f = MultiPoly.monomial(QQ, (3, 0)) + MultiPoly.monomial(QQ, (0, 3), 8)
pts = [DualPoint([1, 0], QQ), DualPoint([0, 1], QQ)]
print(is_apolar(pts, f))
dec = solve_powersum(pts, f)
print(dumps(certificate_to_json(dec)))

# a random ternary cubic needs 4 cubes; three generic points are not enough
g = sum((power_of_linear(DualPoint(c, QQ), 3) for c in ([1, 0, 0], [0, 1, 1], [1, -1, 2], [2, 1, 3])),
        MultiPoly.zero(QQ, 3, 3))
four = [DualPoint(c, QQ) for c in ([1, 0, 0], [0, 1, 1], [1, -1, 2], [2, 1, 3])]
print(is_apolar(four, g), is_apolar(four[:3], g))

# the Alexander-Hirschowitz table, and the Terracini test agreeing with it
for n in range(1, 5):
    print(n, generic_rank(3, n), terracini_generic_rank(3, n, random.Random(n)))
print(generic_rank(3, 4))   # 8, not the expected 7

# the tangent construction beats the generic count from genus 11 on
for g in (8, 10, 11, 15):
    r = specialness_report(g)
    print(g, r.construction_count, r.generic_count, r.is_special)
