import random
from fractions import Fraction

import pytest

from conftest import DENSE_SPACES, random_map
from linfkit.coalgebra import (
    coder_exponential, coproduct_of, corestrict, is_coalgebra_morphism, is_coderivation,
    lift_along_morphism, lift_to_coderivation, lift_to_morphism, symmetric_product,
    unshuffle_coproduct, words,
)
from linfkit.graded import GradedSpace
from linfkit.linfty import so_algebra
from linfkit.nr import maps_equal

V = GradedSpace([("a", 0), ("b", 1), ("c", 0)])


def test_coproduct_size_and_cocommutativity():
    word = ("a", "b", "c")
    cop = unshuffle_coproduct(word, V)
    assert len(cop) == 2 ** 3 - 2
    for (left, right), c in cop.items():
        dl = sum(V.degree_of(l) for l in left)
        dr = sum(V.degree_of(l) for l in right)
        assert cop[(right, left)] == c * (-1) ** (dl * dr)


def test_symmetric_product_signs():
    b = V.basis_element("b")
    assert symmetric_product([b, b], V) == {}
    a = V.basis_element("a")
    assert symmetric_product([b, a], V) == {("a", "b"): 1}


def test_words_skip_forced_zeros():
    ws = list(words(V, 2))
    assert ("b", "b") not in ws and ("a", "a") in ws


@pytest.mark.parametrize("seed", range(4))
def test_coderivation_lift_round_trip(seed):
    rng = random.Random(seed)
    W = DENSE_SPACES[seed % len(DENSE_SPACES)]
    q = {k: random_map(W, k, 1, "sym", rng, 0.8) for k in (1, 2, 3)}
    Q = lift_to_coderivation(q, W, 5)
    ok, witness = is_coderivation(Q)
    assert ok, witness
    back = corestrict(Q, 3)
    for k in (1, 2, 3):
        assert maps_equal(back[k], q[k])


@pytest.mark.parametrize("seed", range(3))
def test_morphism_lift_round_trip(seed):
    rng = random.Random(100 + seed)
    W = DENSE_SPACES[seed]
    f = {k: random_map(W, k, 0, "sym", rng, 0.8) for k in (1, 2, 3)}
    F = lift_to_morphism(f, W, W, 4)
    ok, witness = is_coalgebra_morphism(F)
    assert ok, witness
    back = corestrict(F, 3)
    for k in (1, 2, 3):
        assert maps_equal(back[k], f[k])


def test_lie_algebra_coderivation_squares_to_zero():
    L = so_algebra(3).as_linfty().to_sym()
    Q = lift_to_coderivation(L.brackets, L.space, 4)
    for w in words(L.space, 4):
        assert Q(Q.on_word(w)) == {}


def test_corrupted_bracket_gives_nonzero_square():
    L = so_algebra(3).as_linfty()
    br = L.brackets[2]
    br.table[("A12", "A13")] = br.table[("A12", "A13")] + L.space.element({"A12": 1})
    S = L.to_sym()
    Q = lift_to_coderivation(S.brackets, S.space, 3)
    assert any(Q(Q.on_word(w)) for w in words(S.space, 3))


def test_exponential_is_morphism_with_inverse():
    rng = random.Random(5)
    W = DENSE_SPACES[0]
    p = {2: random_map(W, 2, 0, "sym", rng, 0.8), 3: random_map(W, 3, 0, "sym", rng, 0.5)}
    E = coder_exponential(p, W, 4)
    ok, witness = is_coalgebra_morphism(E)
    assert ok, witness
    neg = {k: m.__class__(m.source, m.target, m.arity, m.degree, m.symmetry,
                          {key: -v for key, v in m.table.items()}) for k, m in p.items()}
    Einv = coder_exponential(neg, W, 4)
    for w in words(W, 4):
        assert Einv(E.on_word(w)) == {w: 1}


def test_exponential_rejects_linear_part():
    rng = random.Random(1)
    W = DENSE_SPACES[0]
    with pytest.raises(ValueError):
        coder_exponential({1: random_map(W, 1, 0, "sym", rng, 1.0)}, W, 3)


def test_lift_along_morphism_is_documented_stub():
    with pytest.raises(NotImplementedError):
        lift_along_morphism({}, None, 2)


def test_coproduct_of_linear():
    t = {("a", "c"): Fraction(2)}
    assert coproduct_of(t, V) == {(("a",), ("c",)): 2, (("c",), ("a",)): 2}
