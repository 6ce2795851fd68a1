"""The Bernoulli embedding of observables into the Vinogradov algebra, and what breaks it."""
from fractions import Fraction

from linfkit.arith import phi_coeff
from linfkit.linfty import check_morphism
from linfkit.multisymplectic import MssSpace, phi_morphism
from linfkit.polyforms import volume_form

print("phi_k:", [str(phi_coeff(k)) for k in range(1, 8)])

M = MssSpace(4, 3, volume_form(4))
corpus = M.hamiltonian_corpus(linear=4)
rep = check_morphism(phi_morphism(M), 4, corpus=corpus)
print(f"Phi on (R^4, vol): passed={rep.passed} checked={rep.checked}")

rep = check_morphism(phi_morphism(M, overrides={3: Fraction(1, 2)}), 3, corpus=corpus)
print(f"with phi_3 = 1/2: passed={rep.passed}")
print("witness inputs:", rep.failure["inputs"])
print("residual:", rep.failure["value"])
