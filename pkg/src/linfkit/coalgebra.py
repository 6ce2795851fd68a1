"""The truncated reduced symmetric coalgebra on a finite graded space.

Words are basis-sorted label tuples; a tensor of words is a dict
``word -> Fraction``.  All degrees are those of the space handed in, which for
L-infinity work is the shifted space ``V[1]``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

from .graded import GradedSpace, Element, forced_zero, koszul_sign, sort_with_sign, unshuffles, ordered_unshuffles
from .nr import TableMap


def canonical_word(labels, space: GradedSpace):
    """``(word, sign)`` with ``labels = sign * word`` in the symmetric algebra; sign 0 if it vanishes."""
    return sort_with_sign(labels, space, "sym")


def add_term(acc: dict, key, coeff) -> None:
    if coeff == 0:
        return
    v = acc.get(key, 0) + coeff
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def words(space: GradedSpace, max_length: int):
    """All non-vanishing basis words of length 1..max_length."""
    for n in range(1, max_length + 1):
        for t in combinations_with_replacement(space.labels, n):
            if not forced_zero(t, space, "sym"):
                yield t


def symmetric_product(elements, space: GradedSpace) -> dict:
    """Expand ``y_1 . y_2 . ... . y_l`` for elements ``y_i`` into canonical words."""
    acc: dict = {(): Fraction(1)}
    for y in elements:
        nxt: dict = {}
        for word, c in acc.items():
            for lbl, a in y.terms.items():
                key, sign = canonical_word(word + (lbl,), space)
                if sign:
                    add_term(nxt, key, sign * c * a)
        acc = nxt
        if not acc:
            break
    return acc


def unshuffle_coproduct(word, space: GradedSpace) -> dict:
    """Reduced coproduct ``sum_i sum_(Sh(i, n-i)) eps (x_s1..x_si) (x) (rest)``."""
    n = len(word)
    degs = [space.degree_of(l) for l in word]
    out: dict = {}
    for i in range(1, n):
        for sigma in unshuffles(i, n - i):
            ys = sigma.apply(word)
            add_term(out, (ys[:i], ys[i:]), koszul_sign(sigma, degs))
    return out


def coproduct_of(tensor: dict, space: GradedSpace) -> dict:
    out: dict = {}
    for w, c in tensor.items():
        for key, s in unshuffle_coproduct(w, space).items():
            add_term(out, key, c * s)
    return out


class CoalgebraMap:
    """A linear map on the truncated coalgebra, given on basis words."""

    def __init__(self, source: GradedSpace, target: GradedSpace, degree: int, on_word, trunc: int):
        self.source, self.target = source, target
        self.degree = degree
        self.trunc = trunc
        self._on_word = on_word
        self._cache: dict = {}

    def on_word(self, word) -> dict:
        if len(word) > self.trunc:
            raise ValueError(f"word longer than truncation {self.trunc}")
        try:
            return self._cache[word]
        except KeyError:
            val = self._cache[word] = self._on_word(word)
            return val

    def __call__(self, tensor: dict) -> dict:
        out: dict = {}
        for w, c in tensor.items():
            for w2, c2 in self.on_word(w).items():
                add_term(out, w2, c * c2)
        return out

    def then(self, other: "CoalgebraMap") -> "CoalgebraMap":
        """``other o self``."""
        return CoalgebraMap(self.source, other.target, self.degree + other.degree,
                            lambda w: other(self.on_word(w)), min(self.trunc, other.trunc))


def _block_values(components: dict, ys, sizes):
    vals, start = [], 0
    for k in sizes:
        m = components.get(k)
        if m is None:
            return None
        v = m(*(ys[start:start + k]))
        if not v.terms:
            return None
        vals.append(v)
        start += k
    return vals


def _partitions_sorted(m: int, parts: int, least: int = 1):
    if parts == 0:
        if m == 0:
            yield ()
        return
    for k in range(least, m // parts + 1):
        for rest in _partitions_sorted(m - k, parts - 1, k):
            yield (k,) + rest


def lift_to_morphism(components: dict, source: GradedSpace, target: GradedSpace, trunc: int) -> CoalgebraMap:
    """The coalgebra morphism whose corestriction has the given degree-0 components.

    ``F(x_1...x_m) = sum_l sum_(k_1 <= ... <= k_l) sum_(ordered unshuffles) eps f_k1(...) . ... . f_kl(...)``
    """
    for k, f in components.items():
        if f.degree != 0 or not f.has_symmetry("sym"):
            raise ValueError(f"component {k} must be symmetric of degree 0")

    def on_word(word):
        m = len(word)
        degs = [source.degree_of(l) for l in word]
        elems = [source.basis_element(l) for l in word]
        out: dict = {}
        for ell in range(1, m + 1):
            for sizes in _partitions_sorted(m, ell):
                for sigma in ordered_unshuffles(*sizes):
                    vals = _block_values(components, sigma.apply(elems), sizes)
                    if vals is None:
                        continue
                    s = koszul_sign(sigma, degs)
                    for w, c in symmetric_product(vals, target).items():
                        add_term(out, w, s * c)
        return out

    return CoalgebraMap(source, target, 0, on_word, trunc)


def lift_to_coderivation(components: dict, space: GradedSpace, trunc: int) -> CoalgebraMap:
    """``Q(x_1...x_n) = sum_i sum_(Sh(i, n-i)) eps q_i(x_s1..x_si) . x_s(i+1) ... x_sn``."""
    degrees = {q.degree for q in components.values()}
    if len(degrees) > 1:
        raise ValueError("coderivation components must share one degree")
    deg = degrees.pop() if degrees else 0

    def on_word(word):
        n = len(word)
        degs = [space.degree_of(l) for l in word]
        elems = [space.basis_element(l) for l in word]
        out: dict = {}
        for i in range(1, n + 1):
            q = components.get(i)
            if q is None:
                continue
            for sigma in unshuffles(i, n - i):
                ys = sigma.apply(elems)
                v = q(*ys[:i])
                if not v.terms:
                    continue
                s = koszul_sign(sigma, degs)
                for w, c in symmetric_product([v, *ys[i:]], space).items():
                    add_term(out, w, s * c)
        return out

    return CoalgebraMap(space, space, deg, on_word, trunc)


def lift_along_morphism(components: dict, morphism: CoalgebraMap, trunc: int):
    """Coderivations along a general morphism F are not implemented.

    Only the identity case (:func:`lift_to_coderivation`) is needed here; the
    general formula replaces the untouched factors by ``F`` applied to them.
    """
    raise NotImplementedError("coderivation lift along a non-identity morphism")


def _tensor_pair_apply(left: CoalgebraMap | None, right: CoalgebraMap | None, pairs: dict,
                       right_degree: int, space: GradedSpace) -> dict:
    out: dict = {}
    for (a, b), c in pairs.items():
        la = left.on_word(a) if left else {a: 1}
        rb = right.on_word(b) if right else {b: 1}
        sign = 1
        if right is not None and right_degree % 2:
            if sum(space.degree_of(l) for l in a) % 2:
                sign = -1
        for wa, ca in la.items():
            for wb, cb in rb.items():
                add_term(out, (wa, wb), sign * c * ca * cb)
    return out


def is_coalgebra_morphism(F: CoalgebraMap, trunc: int | None = None):
    """Check ``Delta F = (F (x) F) Delta`` on every basis word; returns ``(ok, witness)``."""
    trunc = trunc or F.trunc
    for w in words(F.source, trunc):
        lhs = coproduct_of(F.on_word(w), F.target)
        rhs = _tensor_pair_apply(F, F, unshuffle_coproduct(w, F.source), 0, F.source)
        if lhs != rhs:
            return False, {"word": list(w), "lhs": _fmt(lhs), "rhs": _fmt(rhs)}
    return True, None


def is_coderivation(Q: CoalgebraMap, trunc: int | None = None):
    """Check ``Delta Q = (Q (x) 1 + 1 (x) Q) Delta`` on every basis word."""
    trunc = trunc or Q.trunc
    for w in words(Q.source, trunc):
        lhs = coproduct_of(Q.on_word(w), Q.source)
        pairs = unshuffle_coproduct(w, Q.source)
        rhs = _tensor_pair_apply(Q, None, pairs, Q.degree, Q.source)
        for key, c in _tensor_pair_apply(None, Q, pairs, Q.degree, Q.source).items():
            add_term(rhs, key, c)
        if lhs != rhs:
            return False, {"word": list(w), "lhs": _fmt(lhs), "rhs": _fmt(rhs)}
    return True, None


def corestrict(F: CoalgebraMap, max_arity: int | None = None) -> dict:
    """Components ``pr o F`` restricted to words of each length, as symmetric tables."""
    max_arity = max_arity or F.trunc
    comps = {}
    for k in range(1, max_arity + 1):
        m = TableMap(F.source, F.target, k, F.degree, "sym", name=f"pr{k}")
        for w in words(F.source, k):
            if len(w) != k:
                continue
            val = {wd[0]: c for wd, c in F.on_word(w).items() if len(wd) == 1}
            if val:
                m.table[w] = Element(F.target, val)
        comps[k] = m
    return comps


def coder_exponential(components: dict, space: GradedSpace, trunc: int) -> CoalgebraMap:
    """``exp(C_p)`` for a degree-0 coderivation with ``p_1 = 0``; the series is finite."""
    p1 = components.get(1)
    if isinstance(p1, TableMap) and p1.table:
        raise ValueError("p_1 must vanish for the exponential to be a finite sum")
    C = lift_to_coderivation({k: v for k, v in components.items() if k != 1}, space, trunc)

    def on_word(word):
        out = {word: Fraction(1)}
        term = {word: Fraction(1)}
        for j in range(1, len(word)):
            term = {w: c / j for w, c in C(term).items()}
            if not term:
                break
            for w, c in term.items():
                add_term(out, w, c)
        return out

    return CoalgebraMap(space, space, 0, on_word, trunc)


def _fmt(tensor: dict) -> list:
    return [[list(map(list, k)) if isinstance(k[0], tuple) else list(k), str(v)]
            for k, v in sorted(tensor.items(), key=repr)]


__all__ = [
    "canonical_word", "words", "symmetric_product", "unshuffle_coproduct", "CoalgebraMap",
    "lift_to_morphism", "lift_to_coderivation", "lift_along_morphism", "is_coalgebra_morphism",
    "is_coderivation", "corestrict", "coder_exponential",
]
