# Apolarity in two variables: differentiate, read off the catalecticant,
# and recover a form from its apolar ideal.
from apolar import QQ, DualPoint, MultiPoly, apolar_apply, apolar_ideal, apolar_ideal_piece
from apolar import catalecticant_matrix, dual_socle_generator, hilbert_function, power_of_linear

x0_cubed = MultiPoly.monomial(QQ, (3, 0))
fermat = x0_cubed + MultiPoly.monomial(QQ, (0, 3))
print(fermat)

# d0 d1 kills both cubes, so it is in the apolar ideal
d01 = MultiPoly.monomial(QQ, (1, 1))
print(apolar_apply(d01, fermat))          # 0

# the catalecticant in degree 2 has rank 2, so one quadric operator survives
print(catalecticant_matrix(fermat, 2))
print(apolar_ideal_piece(fermat, 2))      # [x0*x1], read as d0 d1
print(hilbert_function(fermat))           # (1, 2, 2, 1)

# operators act on powers of linear forms by evaluation
l = DualPoint([1, 2], QQ)
print(apolar_apply(d01, power_of_linear(l, 3)))   # 3!/1! * (1 * 2) * (x0 + 2 x1)

# Macaulay: the apolar ideal determines the form up to scale
f = fermat + MultiPoly.monomial(QQ, (2, 1), 3)
print(dual_socle_generator(apolar_ideal(f), 3))
