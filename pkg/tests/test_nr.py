import random
from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from conftest import DENSE_SPACES, SPACES, all_tuples, random_map
from linfkit.graded import GradedSpace, Permutation, koszul_sign, odd_koszul_sign
from linfkit.nr import (
    TableMap, associator, dec_map, dec_map_inv, first_difference, lincomb, maps_equal,
    nr_commutator, nr_skew, nr_sym, power, symmetrize, antisymmetrize,
)


def brute_nr(f, g, skew):
    """Oracle: average over all of S_N instead of unshuffles."""
    m, n = g.arity, f.arity
    N = m + n - 1
    norm = Fraction(1, factorial(m) * factorial(n - 1))
    pre = -1 if (skew and (g.degree * (n - 1)) % 2) else 1
    perms = [Permutation(p) for p in permutations(range(1, N + 1))]

    def ev(xs):
        degs = [f.source.degree(x) for x in xs]
        total = f.target.zero()
        for s in perms:
            sign = (odd_koszul_sign if skew else koszul_sign)(s, degs)
            ys = s.apply(xs)
            total = total + sign * f(g(*ys[:m]), *ys[m:])
        return pre * norm * total
    return ev


def degree_pairs(arity, tag):
    return [-1, 0, 1] if tag == "sym" else [1 - arity, 2 - arity, 0]


@pytest.mark.parametrize("tag", ["sym", "skew"])
def test_nr_product_matches_brute_force(tag, rng):
    for V in SPACES[:3]:
        for a, b in [(2, 1), (1, 2), (2, 2), (3, 1)]:
            f = random_map(V, a, rng.choice(degree_pairs(a, tag)), tag, rng)
            g = random_map(V, b, rng.choice(degree_pairs(b, tag)), tag, rng)
            prod = nr_sym(f, g) if tag == "sym" else nr_skew(f, g)
            oracle = brute_nr(f, g, tag == "skew")
            for xs in all_tuples(V, a + b - 1):
                assert prod(*xs) == oracle(xs)


def _prelie_sign(g, h, tag):
    from linfkit.nr import commutator_degree
    return -1 if (commutator_degree(g, tag) * commutator_degree(h, tag)) % 2 else 1


@pytest.mark.parametrize("tag", ["sym", "skew"])
def test_associator_symmetry_many_maps(tag):
    # right pre-Lie: alpha(f, g, h) = (-1)^(g h) alpha(f, h, g)
    rng = random.Random(7 if tag == "sym" else 11)
    nontrivial = 0
    for trial in range(60):
        V = DENSE_SPACES[trial % len(DENSE_SPACES)]
        ar = [rng.randint(2, 3), rng.randint(1, 2), rng.randint(1, 2)]
        degs = [-1, 0, 1] if tag == "sym" else None
        f, g, h = (random_map(V, a, rng.choice(degs or [1 - a, 2 - a, 3 - a]), tag, rng, 0.9)
                   for a in ar)
        lhs = associator(f, g, h, tag)
        rhs = associator(f, h, g, tag)
        s = _prelie_sign(g, h, tag)
        diff = lincomb([(1, lhs), (-s, rhs)])
        tuples = all_tuples(V, diff.arity)
        assert all(not diff(*xs).terms for xs in tuples)
        nontrivial += any(lhs(*xs).terms for xs in tuples)
    # 180 random maps; the identity must be exercised on many nonzero associators
    assert nontrivial >= 15


def test_decalage_intertwines_products(rng):
    nontrivial = 0
    for trial in range(50):
        V = (DENSE_SPACES + SPACES)[trial % 7]
        a, b = rng.randint(1, 3), rng.randint(1, 2)
        f = random_map(V, a, rng.choice([1 - a, 2 - a, 3 - a]), "skew", rng, 0.9)
        g = random_map(V, b, rng.choice([1 - b, 2 - b, 3 - b]), "skew", rng, 0.9)
        lhs = dec_map(nr_skew(f, g))
        rhs = nr_sym(dec_map(f), dec_map(g))
        W = V.shift(1)
        for xs in all_tuples(W, a + b - 1):
            assert lhs(*xs) == rhs(*xs)
            nontrivial += bool(lhs(*xs).terms)
    assert nontrivial >= 50


def test_decalage_round_trip(rng):
    V = SPACES[1]
    f = random_map(V, 3, 0, "skew", rng)
    back = dec_map_inv(dec_map(f))
    assert back.symmetry == "skew" and back.degree == f.degree
    for xs in all_tuples(V, 3):
        assert back(*xs) == f(*xs)


def test_commutator_graded_jacobi(rng):
    V = SPACES[0]
    for tag in ("sym", "skew"):
        maps = [random_map(V, a, rng.choice(degree_pairs(a, tag)), tag, rng) for a in (1, 2, 2)]
        f, g, h = maps
        from linfkit.nr import commutator_degree as cd
        F_, G_, H_ = (cd(m, tag) for m in maps)
        s = lambda a, b: -1 if (a * b) % 2 else 1
        # [f,[g,h]] = [[f,g],h] + (-1)^(fg) [g,[f,h]]
        lhs = nr_commutator(f, nr_commutator(g, h, tag), tag)
        r1 = nr_commutator(nr_commutator(f, g, tag), h, tag)
        r2 = nr_commutator(g, nr_commutator(f, h, tag), tag)
        total = lincomb([(1, lhs), (-1, r1), (-s(F_, G_), r2)])
        for xs in all_tuples(V, total.arity):
            assert not total(*xs).terms


def test_symmetrize_projects(rng):
    V = SPACES[1]
    f = random_map(V, 2, 0, "none", rng)
    s, a = symmetrize(f), antisymmetrize(f)
    assert maps_equal(symmetrize(s), s)
    assert maps_equal(antisymmetrize(a), a)
    x, y = V.basis_element("b"), V.basis_element("c")
    assert s(x, y) == s(y, x) * -1    # both odd: eps = -1


def test_power_and_identity(rng):
    V = SPACES[2]
    f = random_map(V, 2, 1, "sym", rng)
    p1, p2 = power(f, 1), power(f, 2)
    assert p1 is f
    assert maps_equal(p2, nr_sym(f, f))
    ident = power(f, 0)
    x = V.basis_element("u")
    assert ident(x) == x


def test_table_map_json_round_trip(rng):
    V = SPACES[1]
    f = random_map(V, 2, 1, "skew", rng)
    g = TableMap.from_json(f.to_json(), V)
    assert maps_equal(f, g)
    with pytest.raises(ValueError):
        TableMap.from_json({"arity": 1, "degree": 0, "entries": [{"in": ["zz"], "out": {}}]}, V)


def test_table_map_rejects_forced_zero_entries():
    V = GradedSpace([("e", 0)])
    m = TableMap(V, V, 2, 0, "skew")
    with pytest.raises(ValueError):
        m.set(("e", "e"), V.element({"e": 1}))


def test_mixed_symmetry_rejected(rng):
    V = SPACES[0]
    f = random_map(V, 2, 0, "sym", rng)
    g = random_map(V, 2, 0, "skew", rng)
    with pytest.raises(ValueError):
        nr_sym(f, g)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000), a=st.integers(1, 2), b=st.integers(1, 2))
def test_property_dec_skew_vs_sym(seed, a, b):
    r = random.Random(seed)
    V = SPACES[seed % 3]
    f = random_map(V, a, r.choice(degree_pairs(a, "skew")), "skew", r)
    g = random_map(V, b, r.choice(degree_pairs(b, "skew")), "skew", r)
    diff = first_difference(dec_map(nr_skew(f, g)), nr_sym(dec_map(f), dec_map(g)))
    assert diff is None
