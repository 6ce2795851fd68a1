"""Rogers observables on (R^3, vol): brackets by hand, then the full L-infinity check."""
from linfkit.linfty import check_linfty
from linfkit.multisymplectic import MssSpace, rogers_bracket, rogers_structure, vinogradov_structure
from linfkit.polyforms import PolyField, volume_form

M = MssSpace(3, 2, volume_form(3))
ex, ey, ez = (M.pair_for_field(PolyField.coordinate(3, i)) for i in range(3))

print("Hamiltonian pair of d/dx:", ex)
print("{ex, ey}   =", rogers_bracket(M, 2, ex, ey))
print("{ex,ey,ez} =", rogers_bracket(M, 3, ex, ey, ez))

corpus = M.hamiltonian_corpus()
print(f"corpus of {len(corpus)} observables")
for name, mu in (("Rogers", rogers_structure(M)), ("Vinogradov", vinogradov_structure(M))):
    rep = check_linfty(mu, M.n + 2, corpus=corpus)
    print(f"{name}: passed={rep.passed} checked={rep.checked}")
