from fractions import Fraction as F

import pytest

from linfkit.graded import varsigma
from linfkit.linfty import LInftyMorphism, check_linfty, check_maps_vanish, check_morphism
from linfkit.multisymplectic import (
    MssSpace, NotHamiltonian, Section, SectionSpace, gauge_map, gauge_tau, insertion_residual,
    pairing_identities, pairing_minus, pairing_plus, phi_component, phi_morphism, rogers_bracket,
    rogers_structure, vinogradov_bracket, vinogradov_structure,
)
from linfkit.polyforms import Poly, PolyField, PolyForm, symplectic_form, volume_form


def r3():
    return MssSpace(3, 2, volume_form(3))


def coord(N, i):
    return PolyField.coordinate(N, i)


def test_instance_validation():
    with pytest.raises(ValueError, match="closed"):
        # d(z dx dy) = dx dy dz
        MssSpace(3, 1, PolyForm.basic(3, [0, 1], Poly.var(3, 2)), check_nondegenerate=False)
    with pytest.raises(ValueError, match="degenerate"):
        MssSpace(4, 2, PolyForm.basic(4, [0, 1, 2]))
    with pytest.raises(ValueError):
        MssSpace(3, 1, volume_form(3))
    M = r3()
    assert MssSpace.from_json(M.to_json()).omega == M.omega


def test_hamiltonian_fields():
    M = r3()
    x, y, z = (Poly.var(3, i) for i in range(3))
    alpha = PolyForm.basic(3, [2], x * y)
    X = M.hamiltonian_field(alpha)
    assert M.is_hamiltonian_pair(X, alpha)
    # d(xy dz) = y dx dz + x dy dz = -iota_X vol  =>  X = (-x, y, 0)
    assert X == PolyField.vector([-x, y, Poly(3)])
    with pytest.raises(NotHamiltonian):
        M.hamiltonian_field(alpha, degree_bound=0)
    S = MssSpace(2, 1, symplectic_form(2))
    H = PolyForm.function(Poly.var(2, 0) * Poly.var(2, 1))
    assert S.is_hamiltonian_pair(S.hamiltonian_field(H), H)


def test_corpus_is_hamiltonian_and_deterministic():
    for M in (MssSpace(2, 1, symplectic_form(2)), r3(), MssSpace(4, 3, volume_form(4))):
        corpus = M.hamiltonian_corpus()
        assert corpus == M.hamiltonian_corpus()
        for e in corpus:
            if e.deg == 0:
                assert M.is_hamiltonian_pair(e.X or PolyField(M.N, 1), e.form or PolyForm(M.N, M.n - 1))
            else:
                assert -M.n + 1 <= e.deg < 0


def test_rogers_bracket_by_hand():
    M = r3()
    ex, ey = (M.pair_for_field(coord(3, i)) for i in range(2))
    # varsigma(2) = 1 and iota(ex ^ ey) vol = dz
    assert varsigma(2) == 1
    assert rogers_bracket(M, 2, ex, ey) == Section(0, None, PolyForm.basic(3, [2]))
    ez = M.pair_for_field(coord(3, 2))
    # varsigma(3) = -1, iota(ex ^ ey ^ ez) vol = 1
    assert rogers_bracket(M, 3, ex, ey, ez) == Section(-1, None, PolyForm.function(Poly.const(3, -1)))
    f = M.lower(PolyForm.function(Poly.var(3, 0)))
    assert rogers_bracket(M, 1, f) == Section(0, None, PolyForm.basic(3, [0]))
    assert not rogers_bracket(M, 2, ex, f)


@pytest.mark.parametrize("N,n,omega", [
    (2, 1, symplectic_form(2)), (3, 2, volume_form(3)), (4, 1, symplectic_form(4)),
])
def test_rogers_is_linfty(N, n, omega):
    M = MssSpace(N, n, omega)
    rep = check_linfty(rogers_structure(M), n + 2, corpus=M.hamiltonian_corpus())
    assert rep.passed, rep.failure
    assert rep.mode == "exhaustive"


def test_vinogradov_is_linfty_r3():
    M = r3()
    rep = check_linfty(vinogradov_structure(M), 4, corpus=M.hamiltonian_corpus())
    assert rep.passed, rep.failure


def test_corrupted_rogers_fails():
    M = r3()
    mu = rogers_structure(M)
    from linfkit.nr import lincomb
    mu.brackets[3] = lincomb([(2, mu.brackets[3])])
    rep = check_linfty(mu, 4, corpus=M.hamiltonian_corpus())
    assert not rep.passed and rep.failure["arity"] == 3


def test_pairings_by_hand():
    N = 3
    x = Poly.var(N, 0)
    e1 = Section(0, coord(N, 0), PolyForm.basic(N, [1], x))
    e2 = Section(0, coord(N, 1), PolyForm.basic(N, [0]))
    # 1/2 (iota_X1 a2 -+ iota_X2 a1) = 1/2 (1 -+ x)
    half = F(1, 2)
    assert pairing_minus(e1, e2).form == PolyForm.function(Poly.const(N, half) - x.scale(half))
    assert pairing_plus(e1, e2).form == PolyForm.function(Poly.const(N, half) + x.scale(half))
    assert pairing_minus(e2, e1) == -pairing_minus(e1, e2)
    assert pairing_minus(e1, e2).deg == -1


@pytest.mark.parametrize("N", [3, 4])
def test_pairing_identities(N):
    M = MssSpace(N, N - 1, volume_form(N))
    corpus = M.hamiltonian_corpus()
    ids = pairing_identities(M)
    assert {"mu2", "mu3", "pair_mu2"} <= set(ids)
    assert ("recursion_4" in ids) == (N == 4)
    for name, (k, m) in ids.items():
        rep = check_maps_vanish({k: m}, M.space, "skew", corpus)
        assert rep.passed, (name, rep.failure)


def test_pairing_identities_r5_sampled_corpus():
    M = MssSpace(5, 4, volume_form(5))
    corpus = M.hamiltonian_corpus(linear=4)
    for name, (k, m) in pairing_identities(M).items():
        if name.startswith(("recursion", "higher")):
            assert check_maps_vanish({k: m}, M.space, "skew", corpus).passed, name


def test_pairing_identity_detects_wrong_coefficient():
    M = MssSpace(4, 3, volume_form(4))
    from linfkit.nr import lincomb, nr_commutator
    from linfkit.multisymplectic import pairing_map
    pi = rogers_structure(M).brackets
    wrong = lincomb([(1, nr_commutator(pairing_map(M.space), pi[3], "skew")), (-1, pi[4])])
    assert not check_maps_vanish({4: wrong}, M.space, "skew", M.hamiltonian_corpus()).passed


@pytest.mark.parametrize("s", [0, 2, 3])
def test_insertions_as_pairing(s):
    N = 4
    fields = [coord(N, 0).scale(Poly.var(N, 1)), coord(N, 1), coord(N, 2) + coord(N, 3), coord(N, 3)]
    B = volume_form(N).scale(Poly.var(N, 2) + Poly.const(N, 1))
    for m in range(1, 5):
        assert not insertion_residual(B, fields[:m], s), m
    # the m = 2 coefficient is -varsigma(2) 2!/4 = -1/2, not +1/2
    assert varsigma(2) == 1


def test_gauge_transformation():
    M = r3()
    corpus = M.hamiltonian_corpus()
    B = volume_form(3).iota(PolyField.euler(3)).scale(Poly.var(3, 0))
    Mt = MssSpace(3, 2, M.omega + B.d(), check_nondegenerate=False)
    for a in corpus:
        assert gauge_tau(B, a).X == a.X
        for b in corpus:
            assert gauge_tau(B, vinogradov_bracket(M, 2, a, b)) == \
                vinogradov_bracket(Mt, 2, gauge_tau(B, a), gauge_tau(B, b))
            ta, tb = gauge_tau(B, a), gauge_tau(B, b)
            assert pairing_plus(ta, tb) == pairing_plus(a, b)
            # the skew pairing moves by iota_X1 iota_X2 B
            shift = B.iota(b.X).iota(a.X) if a.X is not None and b.X is not None else None
            expect = pairing_minus(a, b) + (Section(-1, None, shift) if shift else Section.zero())
            assert pairing_minus(ta, tb) == expect
    tau = LInftyMorphism(vinogradov_structure(M), vinogradov_structure(Mt), {1: gauge_map(B, M.space)})
    assert check_morphism(tau, 3, corpus=corpus).passed


def test_phi_components():
    M = r3()
    assert phi_component(M, 1)(M.lower(PolyForm.function(Poly.var(3, 0)))).form == PolyForm.function(Poly.var(3, 0))
    assert phi_component(M, 4).__class__.__name__ == "ZeroMap"


def test_phi_morphism_r3():
    M = r3()
    rep = check_morphism(phi_morphism(M), 3, corpus=M.hamiltonian_corpus())
    assert rep.passed, rep.failure


def test_phi_corrupted_fails_with_witness():
    M = MssSpace(4, 3, volume_form(4))
    corpus = M.hamiltonian_corpus(linear=2)
    rep = check_morphism(phi_morphism(M, overrides={3: F(1, 2)}), 3, corpus=corpus)
    assert not rep.passed and rep.failure["arity"] == 3
    assert rep.failure["value"] and len(rep.failure["inputs"]) == 3
    # on R^3 Phi_3 vanishes on the corpus, so the same corruption is invisible there
    assert check_morphism(phi_morphism(r3(), overrides={3: F(1, 2)}), 3, corpus=r3().hamiltonian_corpus()).passed


def test_section_space_degrees():
    S = SectionSpace(3, 1)
    assert S.degree(S.form(volume_form(3))) == 2
    assert S.shift(1).degree(S.form(volume_form(3))) == 1
    with pytest.raises(ValueError):
        S.degree(S.zero())
