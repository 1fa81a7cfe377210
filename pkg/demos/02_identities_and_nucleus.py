# coding: utf-8

# # Identity checkers, the alternative nucleus, and identity transfer
#
# Structure-constant algebras over a color come with exact checkers for the
# graded antisymmetry, Jacobi, Malcev, and alternativity identities.  The
# interesting boundary: the seven-dimensional algebra of imaginary octonions
# under the commutator satisfies the Malcev identity but NOT Jacobi, so it
# lives strictly between Lie and "nothing".

from colorenv import (
    check_color_alternative,
    check_color_antisymmetry,
    check_color_jacobi,
    check_malcev_color,
    color_nucleus,
    identity_transfer_check,
    minus_algebra,
)
from colorenv.fixtures import BUILDERS, m7_mutations

sl2 = BUILDERS["sl2"]()
m7 = BUILDERS["m7"]()
octonions = BUILDERS["octonions"]()

# # A Lie algebra passes everything up the chain

for check in (check_color_antisymmetry, check_color_jacobi, check_malcev_color):
    print("sl2:", check(sl2).to_text())

# # The octonion commutator algebra is Malcev but not Lie

print("m7: ", check_color_jacobi(m7).to_text())
print("m7: ", check_malcev_color(m7).to_text())

# # The octonions themselves are alternative, and their alternative nucleus
# # is the whole eight-dimensional space

print("octonions:", check_color_alternative(octonions).to_text())
nucleus = color_nucleus(octonions)
print(f"octonion nucleus: {len(nucleus)} of {octonions.dim()} dimensions")

# the commutator algebra of the nucleus is Malcev — the abstract source of m7
print("nucleus minus-algebra:", check_malcev_color(minus_algebra(octonions)).to_text())

# # The checkers really discriminate
#
# Perturbing a single structure constant of m7 by +1 (degree-compatibly)
# breaks the Malcev identity every time, across twenty seeded draws.

failures = sum(not check_malcev_color(mu).passed for mu in m7_mutations(20))
print(f"mutated m7 tables failing Malcev: {failures}/20")

# # Transfer through the Grassmann envelope
#
# Multiplying each slot of an identity by private anticommuting generators
# turns a color identity into an ordinary one.  The transferred verdict must
# agree with the direct checker — here on m7, where both say "Malcev holds".

rep = identity_transfer_check(m7, "malcev")
print(rep.to_text())
print("agrees with the direct checker:", rep.params["agrees_with_direct"])
