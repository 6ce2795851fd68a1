"""L-infinity structures, their morphisms and the standard constructions.

Two presentations are supported:

* ``"skew"``: skew-symmetric brackets ``mu_k`` of degree ``2 - k`` on ``V``,
  composed with the skew NR product.
* ``"sym"``: symmetric brackets of degree 1 on ``V[1]`` (L-infinity[1]),
  composed with the symmetric NR product.

Decalage turns one into the other.  Morphisms are written in the symmetric
presentation; skew morphisms are routed through decalage and back.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from math import comb

import sympy

from .arith import as_rational, format_rational, getzler_coeff
from .graded import (
    Element, GradedSpace, Permutation, koszul_sign, ordered_unshuffles,
)
from .nr import (
    FnMap, IdentityMap, MultiMap, TableMap, ZeroMap, dec_component,
    dec_map, dec_map_inv, lincomb, materialize, nr_commutator, nr_sym, product_for,
)


class LInftyStructure:
    """Brackets ``{k: MultiMap}`` on a space, in the given presentation."""

    def __init__(self, space, brackets: dict, presentation: str = "skew", validate: bool = True):
        if presentation not in ("skew", "sym"):
            raise ValueError("presentation must be 'skew' or 'sym'")
        self.space = space
        self.presentation = presentation
        self.brackets = {int(k): m for k, m in brackets.items() if m is not None}
        if validate:
            for k, m in self.brackets.items():
                if m.arity != k:
                    raise ValueError(f"bracket {k} has arity {m.arity}")
                if k > 1 and not m.has_symmetry(presentation):
                    raise ValueError(f"bracket {k} is {m.symmetry}, expected {presentation}")
                want = self.expected_degree(k)
                if m.degree != want and not isinstance(m, ZeroMap):
                    raise ValueError(f"bracket {k} has degree {m.degree}, expected {want}")

    def expected_degree(self, k: int) -> int:
        return 2 - k if self.presentation == "skew" else 1

    @property
    def max_arity(self) -> int:
        return max(self.brackets, default=0)

    def bracket(self, k: int) -> MultiMap | None:
        return self.brackets.get(k)

    def product(self):
        return product_for(self.presentation)

    def to_sym(self) -> "LInftyStructure":
        if self.presentation == "sym":
            return self
        return LInftyStructure(self.space.shift(1), {k: dec_map(m) for k, m in self.brackets.items()}, "sym")

    def to_skew(self) -> "LInftyStructure":
        if self.presentation == "skew":
            return self
        return LInftyStructure(self.space.shift(-1), {k: dec_map_inv(m) for k, m in self.brackets.items()}, "skew")

    def to_json(self) -> dict:
        out = {"space": self.space.to_json(), "presentation": self.presentation, "brackets": {}}
        for k in sorted(self.brackets):
            m = self.brackets[k]
            out["brackets"][str(k)] = (m if isinstance(m, TableMap) else materialize(m)).to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "LInftyStructure":
        try:
            space = GradedSpace.from_json(data["space"])
            pres = data.get("presentation", "skew")
            brackets = {int(k): TableMap.from_json(v, space, name=f"mu{k}")
                        for k, v in data.get("brackets", {}).items()}
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValueError(f"malformed L-infinity bundle: {exc}") from exc
        return cls(space, brackets, pres)


def jacobiator(mu: LInftyStructure, n: int) -> MultiMap:
    """The arity-``n`` component ``sum_(k=1)^n mu_(n-k+1) o mu_k``."""
    prod = mu.product()
    terms = []
    for k in range(1, n + 1):
        outer, inner = mu.bracket(n - k + 1), mu.bracket(k)
        if outer is None or inner is None:
            continue
        terms.append((1, prod(outer, inner)))
    if not terms:
        deg = 2 * mu.expected_degree(1) if mu.presentation == "sym" else 3 - n
        return ZeroMap(mu.space, mu.space, n, deg, mu.presentation)
    return lincomb(terms)


# --- checking on bases or corpora ---------------------------------------------------

@dataclass
class CheckReport:
    passed: bool
    checked: dict = field(default_factory=dict)
    failure: dict | None = None
    mode: str = "exhaustive"

    def to_json(self) -> dict:
        return {"passed": self.passed, "mode": self.mode,
                "checked": {str(k): v for k, v in sorted(self.checked.items())},
                "failure": self.failure}


def _forced_zero_elems(xs, space, tag) -> bool:
    seen = set()
    for x in xs:
        key = id(x)
        if key in seen:
            odd = space.degree(x) % 2 == 1
            if (tag == "sym" and odd) or (tag == "skew" and not odd):
                return True
        seen.add(key)
    return False


def argument_tuples(space, arity: int, tag: str, corpus=None, samples: int | None = None,
                    seed: int = 0, max_exhaustive: int = 20000):
    """Canonical argument tuples: basis tuples for finite spaces, corpus multisets otherwise.

    Returns ``(tuples, mode)``; falls back to ``samples`` seeded draws when the
    exhaustive list would exceed ``max_exhaustive`` or ``samples`` is given.
    """
    if corpus is None:
        if not isinstance(space, GradedSpace):
            raise ValueError("an infinite-dimensional space needs an explicit corpus")
        corpus = [space.basis_element(l) for l in space.labels]
    corpus = list(corpus)
    count = comb(len(corpus) + arity - 1, arity) if tag != "none" else len(corpus) ** arity
    if samples is None and count <= max_exhaustive:
        return [xs for xs in _tuples(corpus, arity, tag)
                if not _forced_zero_elems(xs, space, tag)], "exhaustive"
    rng = random.Random(seed)
    want = samples if samples is not None else 50
    out = []
    attempts = 0
    while len(out) < want and attempts < 50 * want:
        attempts += 1
        idx = sorted(rng.randrange(len(corpus)) for _ in range(arity))
        xs = tuple(corpus[i] for i in idx)
        if not _forced_zero_elems(xs, space, tag):
            out.append(xs)
    return out, "sampled"


def _tuples(corpus, arity, tag):
    if tag == "none":
        from itertools import product
        return product(corpus, repeat=arity)
    return combinations_with_replacement(corpus, arity)


def _describe(space, x):
    return space.describe(x) if hasattr(space, "describe") else repr(x)


def check_maps_vanish(maps: dict, space, tag: str, corpus=None, samples=None, seed=0,
                      max_exhaustive: int = 20000, target=None) -> CheckReport:
    """Check that each map ``{n: MultiMap}`` vanishes on the argument tuples."""
    report = CheckReport(True)
    target = target or space
    for n in sorted(maps):
        m = maps[n]
        tuples, mode = argument_tuples(space, n, tag, corpus, samples, seed, max_exhaustive)
        if mode == "sampled":
            report.mode = "sampled"
        count = 0
        for xs in tuples:
            val = m(*xs)
            count += 1
            if not m.target.is_zero(val):
                report.passed = False
                report.checked[n] = count
                report.failure = {"arity": n, "inputs": [_describe(space, x) for x in xs],
                                  "value": _describe(m.target, val)}
                return report
        report.checked[n] = count
    return report


def check_linfty(mu: LInftyStructure, up_to_arity: int, corpus=None, samples=None, seed=0,
                 max_exhaustive: int = 20000) -> CheckReport:
    """Verify that every Jacobiator component up to ``up_to_arity`` vanishes."""
    maps = {n: jacobiator(mu, n) for n in range(1, up_to_arity + 1)}
    return check_maps_vanish(maps, mu.space, mu.presentation, corpus, samples, seed, max_exhaustive)


# --- morphisms ----------------------------------------------------------------------

def _partitions_sorted(m: int, parts: int, least: int = 1):
    if parts == 0:
        if m == 0:
            yield ()
        return
    for k in range(least, m // parts + 1):
        for rest in _partitions_sorted(m - k, parts - 1, k):
            yield (k,) + rest


def s_operator_terms(components: dict, ell: int, xs, source_space) -> list:
    """Terms ``(sign, (y_1..y_l))`` of ``S_(l,m)(f)(x)``: ordered unshuffles, degree-0 components."""
    m = len(xs)
    degs = [source_space.degree(x) for x in xs]
    out = []
    for sizes in _partitions_sorted(m, ell):
        if any(k not in components for k in sizes):
            continue
        for sigma in ordered_unshuffles(*sizes):
            ys = sigma.apply(xs)
            vals, start = [], 0
            for k in sizes:
                v = components[k](*ys[start:start + k])
                if components[k].target.is_zero(v):
                    vals = None
                    break
                vals.append(v)
                start += k
            if vals is not None:
                out.append((koszul_sign(sigma, degs), tuple(vals)))
    return out


def _after_s(outer: MultiMap, components: dict, ell: int, m: int, source, target, name: str) -> MultiMap:
    """``outer o S_(l,m)(f)`` as a map of arity m."""

    def fn(xs):
        total = target.zero()
        for s, ys in s_operator_terms(components, ell, xs, source):
            v = outer(*ys)
            if not target.is_zero(v):
                total = total + (v if s == 1 else -v)
        return total

    res = FnMap(source, target, m, outer.degree, "sym", fn, name)
    if isinstance(source, GradedSpace) and isinstance(target, GradedSpace):
        return materialize(res)
    return res


class LInftyMorphism:
    """Components ``{k: f_k}`` from ``source`` to ``target`` in their shared presentation."""

    def __init__(self, source: LInftyStructure, target: LInftyStructure, components: dict):
        if source.presentation != target.presentation:
            raise ValueError("source and target must share a presentation")
        self.source, self.target = source, target
        self.presentation = source.presentation
        self.components = {int(k): f for k, f in components.items() if f is not None}
        for k, f in self.components.items():
            want = 0 if self.presentation == "sym" else 1 - k
            if f.arity != k or (f.degree != want and not isinstance(f, ZeroMap)):
                raise ValueError(f"component {k} must have arity {k} and degree {want}")

    def component(self, k):
        return self.components.get(k)

    def to_sym(self) -> "LInftyMorphism":
        if self.presentation == "sym":
            return self
        src, tgt = self.source.to_sym(), self.target.to_sym()
        comps = {k: dec_component(f, src.space, tgt.space, +1) for k, f in self.components.items()}
        return LInftyMorphism(src, tgt, comps)


def _from_sym_component(K: MultiMap, source, target) -> MultiMap:
    return dec_component(K, source, target, -1)


def morphism_defect(f: LInftyMorphism, m: int) -> MultiMap:
    """``K_m = sum_l (f_(m-l+1) o mu_l - mu'_l o S_(l,m)(f))``, zero iff ``f`` is a morphism in arity m.

    Skew morphisms are checked through decalage; the defect is returned in the
    skew presentation (degree ``2 - m``).
    """
    if f.presentation == "skew":
        K = morphism_defect(f.to_sym(), m)
        return _from_sym_component(K, f.source.space, f.target.space)
    mu, mu2 = f.source, f.target
    terms = []
    for ell in range(1, m + 1):
        fk, b = f.component(m - ell + 1), mu.bracket(ell)
        if fk is not None and b is not None:
            terms.append((1, nr_sym(fk, b)))
        b2 = mu2.bracket(ell)
        if b2 is not None:
            terms.append((-1, _after_s(b2, f.components, ell, m, mu.space, mu2.space, f"mu'{ell}S")))
    if not terms:
        return ZeroMap(mu.space, mu2.space, m, 1, "sym")
    return lincomb(terms)


def check_morphism(f: LInftyMorphism, up_to_arity: int, corpus=None, samples=None, seed=0,
                   max_exhaustive: int = 20000) -> CheckReport:
    maps = {m: morphism_defect(f, m) for m in range(1, up_to_arity + 1)}
    return check_maps_vanish(maps, f.source.space, f.presentation, corpus, samples, seed, max_exhaustive)


def compose_morphisms(g: LInftyMorphism, f: LInftyMorphism, max_arity: int) -> LInftyMorphism:
    """``(g o f)_m = sum_l g_l o S_(l,m)(f)``."""
    if f.presentation == "skew":
        h = compose_morphisms(g.to_sym(), f.to_sym(), max_arity)
        comps = {k: _from_sym_component(c, f.source.space, g.target.space)
                 for k, c in h.components.items()}
        return LInftyMorphism(f.source, g.target, comps)
    comps = {}
    for m in range(1, max_arity + 1):
        terms = [(1, _after_s(g.components[ell], f.components, ell, m, f.source.space,
                              g.target.space, f"g{ell}S"))
                 for ell in range(1, m + 1) if ell in g.components]
        if terms:
            comps[m] = lincomb(terms)
    return LInftyMorphism(f.source, g.target, comps)


def _invert_linear(f1: MultiMap) -> TableMap:
    src, tgt = f1.source, f1.target
    if not (isinstance(src, GradedSpace) and isinstance(tgt, GradedSpace)):
        raise ValueError("inversion needs finite spaces")
    if src.dim != tgt.dim:
        raise ValueError("f_1 is not invertible: dimensions differ")
    cols = [f1(src.basis_element(l)) for l in src.labels]
    M = sympy.Matrix(tgt.dim, src.dim, lambda i, j: sympy.Rational(
        *_pq(cols[j].coeff(tgt.labels[i]))))
    if M.det() == 0:
        raise ValueError("f_1 is not invertible")
    Minv = M.inv()
    inv = TableMap(tgt, src, 1, 0, "sym", name="f1^-1")
    for i, lbl in enumerate(tgt.labels):
        val = {src.labels[j]: Fraction(int(Minv[j, i].p), int(Minv[j, i].q)) for j in range(src.dim)}
        inv.set((lbl,), Element(src, val))
    return inv


def _pq(q: Fraction):
    return q.numerator, q.denominator


def invert_morphism(f: LInftyMorphism, max_arity: int) -> LInftyMorphism:
    """Inverse morphism of a morphism with invertible linear part, on finite spaces.

    ``g_1 = f_1^-1`` and
    ``g_m = -(g_1 o f_m + sum_(l=2)^(m-1) g_l o S_(l,m)(f)) o (g_1)^(x m)``,
    which makes ``g o f`` the identity up to ``max_arity``.
    """
    if f.presentation == "skew":
        h = invert_morphism(f.to_sym(), max_arity)
        comps = {k: _from_sym_component(c, f.target.space, f.source.space)
                 for k, c in h.components.items()}
        return LInftyMorphism(f.target, f.source, comps)
    src, tgt = f.source.space, f.target.space
    g = {1: _invert_linear(f.components[1])}
    for m in range(2, max_arity + 1):
        terms = []
        if m in f.components:
            terms.append((1, _compose_linear(g[1], f.components[m])))
        for ell in range(2, m):
            terms.append((1, _after_s(g[ell], f.components, ell, m, src, src, f"g{ell}S")))
        if not terms:
            continue
        inner = lincomb(terms)
        g1 = g[1]

        def fn(xs, inner=inner, g1=g1):
            return -inner(*(g1(x) for x in xs))

        g[m] = materialize(FnMap(tgt, src, m, 0, "sym", fn, f"g{m}"))
    return LInftyMorphism(f.target, f.source, g)


def _compose_linear(a: MultiMap, b: MultiMap) -> MultiMap:
    res = FnMap(b.source, a.target, b.arity, a.degree + b.degree, b.symmetry,
                lambda xs: a(b.evaluate(xs)), f"{a.name}.{b.name}")
    return materialize(res) if isinstance(b.source, GradedSpace) and isinstance(a.target, GradedSpace) else res


def identity_morphism(mu: LInftyStructure) -> LInftyMorphism:
    return LInftyMorphism(mu, mu, {1: IdentityMap(mu.space)})


# --- constructions ------------------------------------------------------------------

def getzler_truncate(dgla: LInftyStructure, max_arity: int = 4) -> LInftyStructure:
    """Truncate a DGLA to an L-infinity[1] structure on its degrees <= -1.

    ``{a}_1 = d a`` below the ground degree -1 and vanishes on it; for n >= 1
    ``{a_0..a_n} = b_n sum_(S_(n+1)) eps [[..[D a_s0, a_s1]..], a_sn]`` with
    ``D = d o pr_(-1)``.  The result keeps the DGLA degrees.
    """
    if dgla.presentation == "sym":
        dgla = dgla.to_skew()
    space = dgla.space
    if not isinstance(space, GradedSpace):
        raise ValueError("Getzler truncation needs a finite space")
    extra = set(dgla.brackets) - {1, 2}
    if extra:
        raise ValueError(f"a DGLA has brackets of arity 1 and 2 only, got {sorted(extra)}")
    d, br = dgla.bracket(1), dgla.bracket(2)
    if d is None or br is None:
        raise ValueError("DGLA needs a differential and a bracket")
    rep = check_linfty(dgla, 3)
    if not rep.passed:
        raise ValueError(f"input is not a DGLA: {rep.failure}")
    low = space.restrict(lambda l, deg: deg <= -1)
    ground = set(low.labels_in_degree(-1))

    def D(a: Element) -> Element:
        part = Element(space, {l: c for l, c in a.terms.items() if l in ground})
        return d(part)

    def lift(a: Element) -> Element:
        return Element(low, a.terms)

    def bracket1(xs):
        (a,) = xs
        part = Element(space, {l: c for l, c in a.terms.items() if l not in ground})
        return lift(d(part))

    brackets = {1: materialize(FnMap(low, low, 1, 1, "sym", bracket1, "g1"))}
    for n in range(1, max_arity):
        b = getzler_coeff(n)
        perms = [Permutation(p) for p in permutations(range(1, n + 2))]

        def fn(xs, b=b, perms=perms):
            degs = [low.degree(x) for x in xs]
            total = low.zero()
            for sigma in perms:
                ys = sigma.apply(xs)
                acc = D(ys[0])
                for y in ys[1:]:
                    if not acc.terms:
                        break
                    acc = br(acc, y)
                if acc.terms:
                    total = total + koszul_sign(sigma, degs) * lift(acc)
            return b * total

        brackets[n + 1] = materialize(FnMap(low, low, n + 1, 1, "sym", fn, f"g{n + 1}"))
    return LInftyStructure(low, brackets, "sym")


def _bracket_series(p: dict, x: dict, max_arity: int) -> dict:
    """``[p, x]`` for arity-graded families, truncated at ``max_arity``."""
    out: dict = {}
    for k, pk in p.items():
        for l, xl in x.items():
            a = k + l - 1
            if a > max_arity:
                continue
            out.setdefault(a, []).append((1, nr_commutator(pk, xl, "sym")))
    return {a: lincomb(ts) for a, ts in out.items()}


def _scale_family(fam: dict, c) -> dict:
    return {a: lincomb([(c, m)]) for a, m in fam.items()}


def _add_family(acc: dict, fam: dict) -> dict:
    out = dict(acc)
    for a, m in fam.items():
        out[a] = lincomb([(1, out[a]), (1, m)]) if a in out else m
    return out


def pushforward_structure(mu: LInftyStructure, p: dict, max_arity: int):
    """Push ``mu`` (symmetric) along ``exp(C_p)`` for degree-0 ``p`` with ``p_1 = 0``.

    Returns ``(mu', f)`` with ``mu' = mu + [p, mu] + 1/2 [p, [p, mu]] + ...`` and
    ``f = pr + p + 1/2 p o p + ...`` (left-nested powers).
    """
    if mu.presentation != "sym":
        raise ValueError("pushforward works in the symmetric presentation")
    if 1 in p:
        raise ValueError("p_1 must vanish")
    for k, pk in p.items():
        if pk.degree != 0 or not pk.has_symmetry("sym"):
            raise ValueError(f"p_{k} must be symmetric of degree 0")
    family = {k: m for k, m in mu.brackets.items() if k <= max_arity}
    total, current, j = dict(family), family, 0
    while current:
        j += 1
        current = _scale_family(_bracket_series(p, current, max_arity), Fraction(1, j))
        total = _add_family(total, current)
    fcomp = {1: IdentityMap(mu.space)}
    term, j = {k: m for k, m in p.items() if k <= max_arity}, 1
    while term:
        fcomp = _add_family(fcomp, term)
        j += 1
        nxt: dict = {}
        for a, ta in term.items():
            for k, pk in p.items():
                if a + k - 1 <= max_arity:
                    nxt.setdefault(a + k - 1, []).append((Fraction(1, j), nr_sym(ta, pk)))
        term = {a: lincomb(ts) for a, ts in nxt.items()}
    new_mu = LInftyStructure(mu.space, total, "sym", validate=False)
    return new_mu, LInftyMorphism(mu, new_mu, fcomp)


def direct_sum(a: LInftyStructure, b: LInftyStructure) -> LInftyStructure:
    """Direct sum of two finite structures with disjoint labels; mixed inputs give zero."""
    if a.presentation != b.presentation:
        raise ValueError("presentations differ")
    space = a.space.direct_sum(b.space)
    brackets = {}
    for k in sorted(set(a.brackets) | set(b.brackets)):
        m = TableMap(space, space, k, a.expected_degree(k), a.presentation, name=f"mu{k}")
        for part in (a.bracket(k), b.bracket(k)):
            if part is None:
                continue
            tbl = part if isinstance(part, TableMap) else materialize(part)
            for key, val in tbl.table.items():
                m.table[key] = Element(space, val.terms)
        brackets[k] = m
    return LInftyStructure(space, brackets, a.presentation)


# --- Lie algebras -------------------------------------------------------------------

class LieAlgebra:
    """A finite-dimensional Lie algebra from structure constants ``[e_i, e_j] = sum_k c e_k``.

    Exterior powers are dicts from basis-ordered label tuples to Fractions.
    """

    def __init__(self, labels, constants: dict, validate: bool = True):
        self.labels = tuple(labels)
        self.space = GradedSpace((l, 0) for l in self.labels)
        self._pos = {l: i for i, l in enumerate(self.labels)}
        self.c: dict = {}
        for (i, j), out in constants.items():
            out = {k: as_rational(v) for k, v in out.items() if as_rational(v) != 0}
            if i == j and out:
                raise ValueError(f"[{i}, {i}] must vanish")
            self.c[(i, j)] = dict(out)
            self.c[(j, i)] = {k: -v for k, v in out.items()}
        if validate:
            bad = self.jacobi_failure()
            if bad:
                raise ValueError(f"Jacobi identity fails on {bad}")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def bracket(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for k, v in self.c.get((a, b), {}).items():
                    out[k] = out.get(k, 0) + ca * cb * v
        return {k: v for k, v in out.items() if v}

    def jacobi_failure(self):
        for a, b, c in combinations_with_replacement(self.labels, 3):
            x, y, z = {a: 1}, {b: 1}, {c: 1}
            tot: dict = {}
            for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
                for k, val in self.bracket(u, self.bracket(v, w)).items():
                    tot[k] = tot.get(k, 0) + val
            if any(tot.values()):
                return (a, b, c)
        return None

    def wedge_canonical(self, labels):
        """``(sorted, sign)``; ``sign`` is 0 on a repeated label."""
        if len(set(labels)) != len(labels):
            return tuple(labels), 0
        perm = sorted(range(len(labels)), key=lambda i: self._pos[labels[i]])
        sign = Permutation([p + 1 for p in perm]).sign()
        return tuple(labels[i] for i in perm), sign

    def wedge(self, *elements: dict) -> dict:
        """Wedge of elements of exterior powers (dicts over label tuples)."""
        acc: dict = {(): Fraction(1)}
        for el in elements:
            nxt: dict = {}
            for t, c in acc.items():
                for u, a in el.items():
                    key, s = self.wedge_canonical(t + tuple(u))
                    if s:
                        nxt[key] = nxt.get(key, 0) + s * c * a
            acc = {k: v for k, v in nxt.items() if v}
        return acc

    def basis_wedges(self, k: int):
        from itertools import combinations
        return list(combinations(self.labels, k))

    def ce_boundary(self, chain: dict) -> dict:
        """``d(x_1 ^ ... ^ x_k) = sum_(i<j) (-1)^(i+j) [x_i, x_j] ^ (rest)``."""
        out: dict = {}
        for t, c in chain.items():
            k = len(t)
            for i in range(k):
                for j in range(i + 1, k):
                    br = self.bracket({t[i]: 1}, {t[j]: 1})
                    if not br:
                        continue
                    rest = tuple(t[a] for a in range(k) if a not in (i, j))
                    s = 1 if (i + j) % 2 == 0 else -1
                    for key, v in self.wedge({(l,): w for l, w in br.items()}, {rest: 1}).items():
                        out[key] = out.get(key, 0) + s * c * v
        return {k: v for k, v in out.items() if v}

    def adjoint_on_wedge(self, xi: dict, chain: dict) -> dict:
        """``[xi, x_1 ^ ... ^ x_k] = sum_l x_1 ^ .. ^ [xi, x_l] ^ .. ^ x_k``."""
        out: dict = {}
        for t, c in chain.items():
            for l in range(len(t)):
                br = self.bracket(xi, {t[l]: 1})
                if not br:
                    continue
                parts = [{(u,): 1} for u in t[:l]] + [{(k,): v for k, v in br.items()}] + \
                        [{(u,): 1} for u in t[l + 1:]]
                for key, v in self.wedge(*parts).items():
                    out[key] = out.get(key, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def as_linfty(self) -> LInftyStructure:
        br = TableMap(self.space, self.space, 2, 0, "skew", name="bracket")
        for i, a in enumerate(self.labels):
            for b in self.labels[i + 1:]:
                val = self.c.get((a, b))
                if val:
                    br.set((a, b), Element(self.space, val))
        return LInftyStructure(self.space, {2: br}, "skew")

    def to_json(self) -> dict:
        entries = []
        for i, a in enumerate(self.labels):
            for b in self.labels[i + 1:]:
                for k, v in sorted(self.c.get((a, b), {}).items(), key=lambda kv: self._pos[kv[0]]):
                    entries.append({"i": self._pos[a] + 1, "j": self._pos[b] + 1,
                                    "k": self._pos[k] + 1, "v": format_rational(v)})
        return {"dim": self.dim, "labels": list(self.labels), "c": entries}

    @classmethod
    def from_json(cls, data: dict) -> "LieAlgebra":
        try:
            dim = int(data["dim"])
            labels = data.get("labels") or [f"e{i}" for i in range(1, dim + 1)]
            if len(labels) != dim:
                raise ValueError("label count does not match dim")
            consts: dict = {}
            for e in data.get("c", []):
                i, j, k = (int(e[x]) for x in ("i", "j", "k"))
                if not all(1 <= v <= dim for v in (i, j, k)):
                    raise ValueError(f"structure constant index out of range: {e}")
                key = (labels[i - 1], labels[j - 1])
                consts.setdefault(key, {})[labels[k - 1]] = as_rational(e["v"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed Lie algebra: {exc}") from exc
        return cls(labels, consts)


def ce_boundary(g: LieAlgebra, chain: dict) -> dict:
    return g.ce_boundary(chain)


def so_algebra(n: int) -> LieAlgebra:
    """so(n) with basis ``A_ab = (-1)^(1+a+b) (E_ab - E_ba)``, ``a < b``, and the matrix commutator."""
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    labels = [f"A{a}{b}" if n < 10 else f"A{a}_{b}" for a, b in pairs]

    def mat(a, b):
        s = -1 if (1 + a + b) % 2 else 1
        M = [[0] * n for _ in range(n)]
        M[a - 1][b - 1] = s
        M[b - 1][a - 1] = -s
        return M

    mats = [mat(a, b) for a, b in pairs]

    def coords(M):
        out = {}
        for (a, b), lbl in zip(pairs, labels):
            s = -1 if (1 + a + b) % 2 else 1
            if M[a - 1][b - 1]:
                out[lbl] = Fraction(M[a - 1][b - 1] * s)
        return out

    consts = {}
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            A, B = mats[i], mats[j]
            C = [[sum(A[r][k] * B[k][c] - B[r][k] * A[k][c] for k in range(n)) for c in range(n)]
                 for r in range(n)]
            val = coords(C)
            if val:
                consts[(labels[i], labels[j])] = val
    return LieAlgebra(labels, consts)


__all__ = [
    "LInftyStructure", "LInftyMorphism", "CheckReport", "jacobiator", "check_linfty",
    "check_maps_vanish", "argument_tuples", "morphism_defect", "check_morphism",
    "compose_morphisms", "invert_morphism", "identity_morphism", "getzler_truncate",
    "pushforward_structure", "direct_sum", "LieAlgebra", "ce_boundary", "so_algebra",
    "s_operator_terms",
]
