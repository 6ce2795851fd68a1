"""Acceptance suite: one pass/fail line per criterion, exact tolerances, runtime bounds.

Run ``pytest tests/test_acceptance.py -v`` (the lines appear in the terminal
summary) or ``python3 tests/test_acceptance.py``.
"""
import random
import sys
import time
from itertools import combinations
from fractions import Fraction as F
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from conftest import ACCEPTANCE_LINES, DENSE_SPACES, SPACES, all_tuples, random_map  # noqa: E402
from linfkit.arith import bernoulli, phi_coeff  # noqa: E402
from linfkit.coalgebra import corestrict, is_coderivation, lift_to_coderivation  # noqa: E402
from linfkit.comoment import (  # noqa: E402
    ActionData, check_cocycle, comoment_from_potential, equivariance_report, euler_potential,
    gauge_shift_comoment, obstruction_cocycle, pentagon_report, so_n_action, verify_comoment,
)
from linfkit.linfty import LieAlgebra, check_linfty, check_maps_vanish, check_morphism, getzler_truncate, so_algebra  # noqa: E402
from linfkit.multisymplectic import (  # noqa: E402
    MssSpace, insertion_residual, pairing_identities, phi_morphism, rogers_structure,
)
from linfkit.nr import associator, commutator_degree, dec_map, lincomb, maps_equal, nr_skew, nr_sym  # noqa: E402
from linfkit.polyforms import (  # noqa: E402
    Poly, PolyField, PolyForm, multicartan_defect, monomials, symplectic_form, volume_form,
)
from test_linfty import crossed_module  # noqa: E402

EXHAUSTIVE = 10 ** 6


def record(number, title, ok, detail, elapsed, limit):
    within = elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    line = f"[{status}] criterion {number:2d} {title}: {detail} ({elapsed:.1f}s, limit {limit}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok and within


# 1 -------------------------------------------------------------------------------------------

def criterion_1():
    ok = [bernoulli(k) for k in range(4)] == [1, F(-1, 2), F(1, 6), 0]
    phis = [phi_coeff(k) for k in range(1, 11)]
    ok &= phis == [1, -1, F(1, 3), 0, F(-1, 45), 0, F(2, 945), 0, F(-1, 4725), 0]
    return ok, "B_0..B_3 and phi_1..phi_10 exact"


# 2, 3 ----------------------------------------------------------------------------------------

def _triples(tag, count, seed):
    rng = random.Random(seed)
    for trial in range(count):
        V = (DENSE_SPACES + SPACES)[trial % 7]
        ar = [rng.randint(2, 3), rng.randint(1, 2), rng.randint(1, 2)]
        if tag == "sym":
            degs = [rng.choice([-1, 0, 1]) for _ in ar]
        else:
            degs = [rng.choice([1 - a, 2 - a, 3 - a]) for a in ar]
        yield V, [random_map(V, a, d, tag, rng, 0.9) for a, d in zip(ar, degs)]


def criterion_2():
    maps = nontrivial = 0
    for tag in ("sym", "skew"):
        for V, (f, g, h) in _triples(tag, 30, 2 if tag == "sym" else 3):
            maps += 3
            s = -1 if (commutator_degree(g, tag) * commutator_degree(h, tag)) % 2 else 1
            lhs = associator(f, g, h, tag)
            diff = lincomb([(1, lhs), (-s, associator(f, h, g, tag))])
            for xs in all_tuples(V, diff.arity):
                if diff(*xs).terms:
                    return False, f"{tag} associator asymmetric on {xs}"
                nontrivial += bool(lhs(*xs).terms)
    return maps >= 50 and nontrivial > 0, f"{maps} maps, {nontrivial} nonzero associator values, zero residual"


def criterion_3():
    maps = checked = nonzero = 0
    for V, (f, g, _) in _triples("skew", 40, 5):
        maps += 2
        lhs, rhs = dec_map(nr_skew(f, g)), nr_sym(dec_map(f), dec_map(g))
        for xs in all_tuples(V.shift(1), lhs.arity):
            a = lhs(*xs)
            if a != rhs(*xs):
                return False, f"Dec mismatch on {xs}"
            checked += 1
            nonzero += bool(a.terms)
    return maps >= 50 and nonzero > 0, f"{maps} maps, {checked} tuples ({nonzero} nonzero), exact"


# 4 -------------------------------------------------------------------------------------------

def criterion_4():
    trials = 0
    for seed in range(4):
        rng = random.Random(40 + seed)
        V = DENSE_SPACES[seed % 3]
        q = {k: random_map(V, k, 1, "sym", rng, 0.8) for k in (1, 2, 3)}
        Q = lift_to_coderivation(q, V, 5)
        ok, witness = is_coderivation(Q)
        if not ok:
            return False, f"not a coderivation: {witness}"
        back = corestrict(Q, 3)
        if not all(maps_equal(back[k], q[k]) for k in q):
            return False, "corestriction does not recover q"
        trials += 1
    return True, f"{trials} random q, truncation N = 5"


# 5 -------------------------------------------------------------------------------------------

INSTANCES = {
    "R^2 symplectic n=1": (2, 1, symplectic_form(2)),
    "R^3 vol n=2": (3, 2, volume_form(3)),
    "R^4 vol n=3": (4, 3, volume_form(4)),
}


def criterion_5():
    parts = []
    for name, (N, n, omega) in INSTANCES.items():
        M = MssSpace(N, n, omega, D=2)
        rep = check_linfty(rogers_structure(M), n + 2, corpus=M.hamiltonian_corpus(), max_exhaustive=EXHAUSTIVE)
        if not rep.passed or rep.mode != "exhaustive":
            return False, f"{name}: {rep.failure}"
        parts.append(f"{name} {sum(rep.checked.values())} tuples")
    return True, "; ".join(parts)


# 6 -------------------------------------------------------------------------------------------

def criterion_6():
    parts = []
    for N in (4, 5):
        M = MssSpace(N, N - 1, volume_form(N))
        corpus = M.hamiltonian_corpus()
        total = 0
        for name, (k, m) in pairing_identities(M).items():
            if k > 4:
                continue
            rep = check_maps_vanish({k: m}, M.space, "skew", corpus, max_exhaustive=EXHAUSTIVE)
            if not rep.passed:
                return False, f"{name} on R^{N}: {rep.failure}"
            total += rep.checked[k]
        parts.append(f"R^{N} n={N - 1}: {total} tuples")
    fields = [PolyField.coordinate(4, 0).scale(Poly.var(4, 1)), PolyField.coordinate(4, 1),
              PolyField.coordinate(4, 2) + PolyField.coordinate(4, 3), PolyField.coordinate(4, 3)]
    B = volume_form(4).scale(Poly.var(4, 2) + Poly.const(4, 1))
    for s in range(4):
        for m in range(1, 5):
            if insertion_residual(B, fields[:m], s):
                return False, f"insertion coefficient wrong for m={m}, s={s}"
    return True, "recursion, mu2, mu3, [<>,mu2]=0 on " + ", ".join(parts) + "; insertions m<=4"


# 7 -------------------------------------------------------------------------------------------

def criterion_7():
    parts = []
    for N in (3, 4):
        M = MssSpace(N, N - 1, volume_form(N))
        rep = check_morphism(phi_morphism(M), N, corpus=M.hamiltonian_corpus(), max_exhaustive=EXHAUSTIVE)
        if not rep.passed:
            return False, f"Phi on R^{N}: {rep.failure}"
        parts.append(f"R^{N} arities 1..{N} ({sum(rep.checked.values())} tuples)")
    M = MssSpace(4, 3, volume_form(4))
    bad = check_morphism(phi_morphism(M, overrides={3: F(1, 2)}), 3, corpus=M.hamiltonian_corpus(),
                         max_exhaustive=EXHAUSTIVE)
    if bad.passed:
        return False, "phi_3 = 1/2 was not detected"
    return True, "; ".join(parts) + f"; phi_3=1/2 fails at arity {bad.failure['arity']} with witness"


# 8 -------------------------------------------------------------------------------------------

def _so_n(n):
    A = so_n_action(n)
    M = MssSpace(n, n - 1, volume_form(n))
    return A, M, comoment_from_potential(euler_potential(n), A, M)


def criterion_8():
    A, M, f = _so_n(3)
    rep = pentagon_report(M, volume_form(3).iota(PolyField.euler(3)), f, A, 3)
    return rep.passed, f"so(3) on R^3, B = iota_E vol, m = 1..3 checked {rep.checked}"


# 9 -------------------------------------------------------------------------------------------

def criterion_9():
    for n in (2, 3, 4):
        A, M, f = _so_n(n)
        for label, rep in (("verify", verify_comoment(f, A, M)), ("equivariance", equivariance_report(f, A))):
            if not rep.passed:
                return False, f"so({n}) {label}: {rep.failure}"
        ft, Mt = gauge_shift_comoment(f, volume_form(n).iota(PolyField.euler(n)), A, M)
        rep = verify_comoment(ft, A, Mt)
        if not rep.passed:
            return False, f"so({n}) gauge-shifted: {rep.failure}"
    return True, "so(n) on R^n for n = 2, 3, 4: comoment, equivariance, gauge shift against omega + dB"


# 10 ------------------------------------------------------------------------------------------

def criterion_10():
    rng = random.Random(10)
    N = 4
    linear = list(monomials(N, 1))
    quad = list(monomials(N, 2))
    count = 0
    for m in (1, 2, 3):
        for _ in range(4):
            xs = [PolyField.vector([Poly(N, {e: F(rng.randint(-2, 2)) for e in linear if rng.random() < 0.6})
                                    for _ in range(N)]) for _ in range(m)]
            p = rng.randint(m, N)
            form = PolyForm(N, p, {I: Poly(N, {e: F(rng.randint(-2, 2)) for e in quad if rng.random() < 0.4})
                                   for I in combinations(range(N), p)})
            if multicartan_defect(xs, form):
                return False, f"multi-Cartan defect for m={m}"
            count += 1
    g = so_algebra(4)
    for t in g.basis_wedges(3):
        if g.ce_boundary(g.ce_boundary({t: F(1)})):
            return False, f"dd != 0 on {t}"
    A, M, _ = _so_n(4)
    cc = check_cocycle(g, obstruction_cocycle(A, M, [1, 2, 3, 4]), M.n + 1)
    # so(4) orbits are 3-dimensional, so c_p itself is zero there; e(2) on R^2 gives a nonzero one
    e2 = LieAlgebra(["R", "Tx", "Ty"], {("R", "Tx"): {"Ty": -1}, ("R", "Ty"): {"Tx": 1}})
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    A2 = ActionData(e2, {"R": PolyField.vector([-y, x]), "Tx": PolyField.coordinate(2, 0),
                         "Ty": PolyField.coordinate(2, 1)})
    c2 = obstruction_cocycle(A2, MssSpace(2, 1, volume_form(2)), [1, -2])
    cc2 = check_cocycle(e2, c2, 2)
    return cc.passed and cc2.passed and bool(c2), \
        f"{count} multi-Cartan cases m<=3; dd=0 on {len(g.basis_wedges(3))} triples; " \
        f"delta c_p = 0 on so(4) ({cc.checked} checks) and on e(2) with c_p != 0"


# 11 ------------------------------------------------------------------------------------------

def criterion_11():
    G = getzler_truncate(crossed_module(), 4)
    rep = check_linfty(G, 4)
    u, v = G.space.basis_element("u"), G.space.basis_element("v")
    # [du, v] - [dv, u] = v - (-v) = 2v, so b_1 = 1/2 gives v
    b1 = G.brackets[2](u, v) == G.space.element({"v": 1})
    return rep.passed and b1, f"4-dim DGLA in degrees -1, 0, arities 1..4, b_1 = 1/2 observed: {b1}"


CRITERIA = [
    (1, "coefficient tables", criterion_1, 1),
    (2, "pre-Lie associators", criterion_2, 30),
    (3, "decalage isomorphism", criterion_3, 30),
    (4, "coderivation lift", criterion_4, 30),
    (5, "Rogers L-infinity", criterion_5, 300),
    (6, "pairing identities", criterion_6, 300),
    (7, "embedding Phi", criterion_7, 300),
    (8, "pentagon", criterion_8, 120),
    (9, "comoments", criterion_9, 300),
    (10, "multi-Cartan and cocycles", criterion_10, 120),
    (11, "Getzler truncation", criterion_11, 60),
]


@pytest.mark.parametrize("number,title,fn,limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, limit):
    start = time.perf_counter()
    ok, detail = fn()
    assert record(number, title, ok, detail, time.perf_counter() - start, limit), detail


if __name__ == "__main__":
    results = []
    for number, title, fn, limit in CRITERIA:
        start = time.perf_counter()
        ok, detail = fn()
        results.append(record(number, title, ok, detail, time.perf_counter() - start, limit))
    sys.exit(0 if all(results) else 1)
