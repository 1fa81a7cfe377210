# coding: utf-8

# # Colors: graded groups, bicharacters, and parity
#
# A "color" is a finite abelian grading group together with a skew-symmetric
# bicharacter chi.  The bicharacter drives every sign that appears later: the
# braiding that swaps tensor factors, the graded commutator, and the parity
# split of degrees into even and odd.  Everything is exact — scalars live in
# the cyclotomic field generated by a root of unity whose order the color
# fixes up front.

from colorenv import (
    AbelianGroup,
    Bicharacter,
    Color,
    enumerate_bicharacters,
    parity,
)

# # The super color
#
# The smallest interesting example: Z_2 with chi(a, b) = (-1)^(a*b).  Degree
# 0 is even, degree 1 is odd — the classical sign rule of superalgebra.

group = AbelianGroup([2])
super_color = Color(group, Bicharacter(group, [[1]]))
for g in group.elements():
    print(f"degree {g}: parity {parity(super_color, g):+d}")

# # Bicharacter values are exact roots of unity

z6 = AbelianGroup([6])
chi = Bicharacter(z6, [[3]])
print("chi(1,1) on Z_6 =", chi.chi((1,), (1,)))
print("chi(2,3) on Z_6 =", chi.chi((2,), (3,)))

# # Classification by enumeration
#
# For a cyclic group the bicharacters correspond to group homomorphisms into
# the dual, so Z_n carries exactly n of them.  Restricting to the
# skew-symmetric ones collapses the count dramatically: odd cyclic groups
# keep only the trivial one, even cyclic groups keep the trivial one and the
# even/odd sign rule.

for n in range(2, 9):
    g = AbelianGroup([n])
    total = enumerate_bicharacters(g)
    skew = enumerate_bicharacters(g, skew_only=True)
    print(f"Z_{n}: {len(total)} bicharacters, {len(skew)} skew-symmetric")

# # A rank-two example
#
# On Z_2 x Z_2 the skew-symmetric bicharacters include the off-diagonal one
# that makes the two nontrivial degrees anticommute with each other while
# each stays even against itself — a genuinely non-super color.

g22 = AbelianGroup([2, 2])
for b in enumerate_bicharacters(g22, skew_only=True):
    print("Z_2 x Z_2 skew bicharacter, exponent matrix", b.emat)
