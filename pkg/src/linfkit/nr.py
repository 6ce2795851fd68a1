"""Graded multilinear maps and the Nijenhuis-Richardson products.

A map knows its arity, degree, symmetry tag (``"sym"``, ``"skew"`` or
``"none"``) and its source and target spaces.  Spaces follow a small protocol:
``zero()``, ``degree(x)``, ``homogeneous_parts(x)``, ``is_zero(x)`` and
``shift(k)``.  Finite :class:`~linfkit.graded.GradedSpace` objects implement it,
and so do the section spaces of :mod:`linfkit.multisymplectic`.

Maps between finite spaces are stored as tables (:class:`TableMap`); products
of two tables are materialised.  Everything else is lazy (:class:`FnMap`).
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from math import factorial
from typing import Callable, Sequence

from .arith import as_rational, format_rational
from .graded import (
    GradedSpace, Permutation, dec_sign, forced_zero, koszul_sign,
    odd_koszul_sign, sort_with_sign, unshuffles,
)

SYMMETRIES = ("sym", "skew", "none")


class MultiMap:
    """Base class.  Subclasses implement :meth:`evaluate` on homogeneous inputs."""

    def __init__(self, source, target, arity: int, degree: int, symmetry: str = "none",
                 name: str | None = None):
        if symmetry not in SYMMETRIES:
            raise ValueError(f"unknown symmetry {symmetry!r}")
        if arity < 0:
            raise ValueError("arity must be non-negative")
        self.source = source
        self.target = target
        self.arity = arity
        self.degree = degree
        self.symmetry = symmetry
        self.name = name or type(self).__name__

    def __repr__(self) -> str:
        return f"<{self.name}: arity {self.arity}, degree {self.degree}, {self.symmetry}>"

    def evaluate(self, xs: tuple):
        raise NotImplementedError

    def __call__(self, *xs):
        if len(xs) != self.arity:
            raise ValueError(f"{self.name} expects {self.arity} arguments, got {len(xs)}")
        parts = [self.source.homogeneous_parts(x) for x in xs]
        total = self.target.zero()
        for combo in product(*parts):
            total = total + self.evaluate(combo)
        return total

    def has_symmetry(self, tag: str) -> bool:
        return self.arity <= 1 or self.symmetry == tag

    # linear combinations of maps
    def __add__(self, other: "MultiMap") -> "MultiMap":
        return lincomb([(1, self), (1, other)])

    def __sub__(self, other: "MultiMap") -> "MultiMap":
        return lincomb([(1, self), (-1, other)])

    def __neg__(self) -> "MultiMap":
        return lincomb([(-1, self)])

    def __rmul__(self, c) -> "MultiMap":
        return lincomb([(c, self)])


class FnMap(MultiMap):
    """A lazily evaluated map backed by a Python callable on homogeneous tuples."""

    def __init__(self, source, target, arity, degree, symmetry, fn: Callable, name=None,
                 memo: bool = False):
        super().__init__(source, target, arity, degree, symmetry, name)
        self._fn = fn
        self._memo = {} if memo else None

    def evaluate(self, xs):
        if self._memo is None:
            return self._fn(xs)
        try:
            return self._memo[xs]
        except KeyError:
            val = self._memo[xs] = self._fn(xs)
            return val
        except TypeError:
            return self._fn(xs)


class ZeroMap(MultiMap):
    def evaluate(self, xs):
        return self.target.zero()


class IdentityMap(MultiMap):
    def __init__(self, space, name="id"):
        super().__init__(space, space, 1, 0, "sym", name)

    def evaluate(self, xs):
        return xs[0]


class TableMap(MultiMap):
    """A map out of a finite graded space, stored on canonical label tuples.

    For symmetric and skew maps only basis-sorted tuples are stored; other
    orderings are recovered with the appropriate sign.  Values may live in any
    target space (finite or not).
    """

    def __init__(self, source: GradedSpace, target, arity, degree, symmetry="none",
                 table: dict | None = None, name=None):
        super().__init__(source, target, arity, degree, symmetry, name)
        self.table: dict[tuple, object] = {}
        for key, val in (table or {}).items():
            self.set(tuple(key), val)

    def set(self, labels: tuple, value) -> None:
        if len(labels) != self.arity:
            raise ValueError(f"entry {labels} has wrong arity")
        if self.target.is_zero(value):
            return
        if self.symmetry == "none":
            self.table[labels] = value
            return
        key, sign = sort_with_sign(labels, self.source, self.symmetry)
        if sign == 0:
            raise ValueError(f"entry {labels} must vanish for a {self.symmetry} map")
        self.table[key] = sign * value if sign == -1 else value

    def lookup(self, labels: tuple):
        if self.symmetry == "none":
            return self.table.get(labels)
        key, sign = sort_with_sign(labels, self.source, self.symmetry)
        if sign == 0:
            return None
        val = self.table.get(key)
        if val is None:
            return None
        return val if sign == 1 else -val

    def evaluate(self, xs):
        return self._expand(xs)

    def __call__(self, *xs):
        if len(xs) != self.arity:
            raise ValueError(f"{self.name} expects {self.arity} arguments, got {len(xs)}")
        return self._expand(xs)

    def _expand(self, xs):
        total = self.target.zero()
        for combo in product(*(x.terms.items() for x in xs)):
            val = self.lookup(tuple(lbl for lbl, _ in combo))
            if val is None:
                continue
            c = Fraction(1)
            for _, coeff in combo:
                c *= coeff
            total = total + (val if c == 1 else c * val)
        return total

    def to_json(self) -> dict:
        pos = self.source._pos
        entries = []
        for key in sorted(self.table, key=lambda t: [pos[l] for l in t]):
            val = self.table[key]
            out = val.to_json() if hasattr(val, "to_json") else self.target.describe(val)
            entries.append({"in": list(key), "out": out})
        return {"arity": self.arity, "degree": self.degree, "symmetry": self.symmetry,
                "entries": entries}

    @classmethod
    def from_json(cls, data: dict, source: GradedSpace, target: GradedSpace | None = None,
                  name=None) -> "TableMap":
        target = target or source
        try:
            arity, degree = int(data["arity"]), int(data["degree"])
            symmetry = data.get("symmetry", "none")
            m = cls(source, target, arity, degree, symmetry, name=name)
            for entry in data.get("entries", []):
                labels = tuple(entry["in"])
                for lbl in labels:
                    source.degree_of(lbl)
                value = target.element(entry["out"])
                for lbl in value.terms:
                    target.degree_of(lbl)
                m.set(labels, value)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed multimap: {exc}") from exc
        return m

    def __eq__(self, other) -> bool:
        if not isinstance(other, TableMap):
            return NotImplemented
        return (self.arity, self.degree, self.symmetry) == (other.arity, other.degree, other.symmetry) \
            and self.table == other.table

    __hash__ = None


def lincomb(pairs: Sequence[tuple]) -> MultiMap:
    """Sum ``sum_i c_i m_i`` of maps of equal arity; flattens nested sums."""
    flat = []
    for c, m in pairs:
        c = as_rational(c)
        if c == 0:
            continue
        if isinstance(m, _LinComb):
            flat.extend((c * c2, m2) for c2, m2 in m.pairs)
        else:
            flat.append((c, m))
    if not pairs:
        raise ValueError("empty linear combination")
    ref = pairs[0][1]
    for _, m in flat:
        if m.arity != ref.arity:
            raise ValueError("cannot add maps of different arity")
    nonzero = [(c, m) for c, m in flat if not isinstance(m, ZeroMap)]
    degrees = {m.degree for _, m in nonzero}
    if len(degrees) > 1:
        raise ValueError(f"cannot add maps of different degrees {sorted(degrees)}")
    degree = degrees.pop() if degrees else ref.degree
    syms = {m.symmetry for _, m in nonzero if m.arity > 1}
    symmetry = syms.pop() if len(syms) == 1 else ("none" if syms else ref.symmetry)
    if not nonzero:
        return ZeroMap(ref.source, ref.target, ref.arity, degree, symmetry)
    tables = [m for _, m in nonzero if isinstance(m, TableMap)]
    if len(tables) == len(nonzero) and isinstance(ref.target, GradedSpace):
        out = TableMap(ref.source, ref.target, ref.arity, degree, symmetry)
        for c, m in nonzero:
            for key, val in m.table.items():
                prev = out.table.get(key, ref.target.zero())
                out.table[key] = prev + c * val
        out.table = {k: v for k, v in out.table.items() if v}
        return out
    return _LinComb(nonzero, ref.source, ref.target, ref.arity, degree, symmetry)


class _LinComb(MultiMap):
    def __init__(self, pairs, source, target, arity, degree, symmetry):
        super().__init__(source, target, arity, degree, symmetry, "lincomb")
        self.pairs = pairs

    def evaluate(self, xs):
        total = self.target.zero()
        for c, m in self.pairs:
            v = m.evaluate(xs)
            if not self.target.is_zero(v):
                total = total + (v if c == 1 else c * v)
        return total


# --- enumeration and materialisation --------------------------------------------

def canonical_tuples(space: GradedSpace, arity: int, symmetry: str):
    """Basis tuples that determine a map of the given symmetry."""
    labels = space.labels
    if symmetry == "none" or arity <= 1:
        it = product(labels, repeat=arity) if symmetry == "none" else ((l,) for l in labels)
        if arity == 0:
            yield ()
            return
        yield from it
        return
    for t in combinations_with_replacement(labels, arity):
        if not forced_zero(t, space, symmetry):
            yield t


def materialize(m: MultiMap, space: GradedSpace | None = None, target=None) -> TableMap:
    """Evaluate ``m`` on canonical basis tuples and store the result as a table."""
    space = space or m.source
    target = target or m.target
    out = TableMap(space, target, m.arity, m.degree, m.symmetry, name=m.name)
    for t in canonical_tuples(space, m.arity, m.symmetry):
        val = m(*(space.basis_element(l) for l in t))
        if not target.is_zero(val):
            out.table[t] = val
    return out


def _finite_pair(f: MultiMap, g: MultiMap) -> bool:
    return (isinstance(f, TableMap) and isinstance(g, TableMap)
            and isinstance(g.target, GradedSpace))


def _degrees(space, xs):
    return [space.degree(x) for x in xs]


# --- Gerstenhaber and Nijenhuis-Richardson products -------------------------------

def gerstenhaber_i(f: MultiMap, g: MultiMap, i: int) -> MultiMap:
    """Insert ``g`` in slot ``i`` (1-based) of ``f``, with sign (-1)^(|g|(|x_1|+...+|x_(i-1)|))."""
    a, b = f.arity, g.arity
    if not 1 <= i <= a:
        raise ValueError("insertion slot out of range")

    def fn(xs):
        pre = sum(_degrees(f.source, xs[: i - 1]))
        inner = g.evaluate(xs[i - 1: i - 1 + b])
        if g.target.is_zero(inner):
            return f.target.zero()
        val = f(*xs[: i - 1], inner, *xs[i - 1 + b:])
        return -val if (g.degree * pre) % 2 else val

    m = FnMap(g.source, f.target, a + b - 1, f.degree + g.degree, "none", fn, f"{f.name}o{i}{g.name}")
    return materialize(m) if _finite_pair(f, g) else m


def gerstenhaber(f: MultiMap, g: MultiMap) -> MultiMap:
    return lincomb([(1, gerstenhaber_i(f, g, i)) for i in range(1, f.arity + 1)])


def _nr(f: MultiMap, g: MultiMap, skew: bool, strict: bool) -> MultiMap:
    tag = "skew" if skew else "sym"
    if strict and not (f.has_symmetry(tag) and g.has_symmetry(tag)):
        raise ValueError(f"NR product needs {tag} inputs, got {f.symmetry} and {g.symmetry}")
    if not g.has_symmetry(tag):
        raise ValueError(f"NR product needs a {tag} inner map")
    m, n = g.arity, f.arity
    shuffles = list(unshuffles(m, n - 1))
    pre = -1 if (skew and (g.degree * (n - 1)) % 2) else 1
    sign_fn = odd_koszul_sign if skew else koszul_sign

    def fn(xs):
        degs = _degrees(g.source, xs)
        total = f.target.zero()
        for sigma in shuffles:
            s = pre * sign_fn(sigma, degs)
            ys = sigma.apply(xs)
            inner = g.evaluate(ys[:m])
            if g.target.is_zero(inner):
                continue
            val = f(inner, *ys[m:])
            if not f.target.is_zero(val):
                total = total + (val if s == 1 else -val)
        return total

    out_sym = tag if (f.has_symmetry(tag) and g.has_symmetry(tag)) or n <= 2 else "none"
    name = f"{f.name}{'^' if skew else '_'}{g.name}"
    res = FnMap(g.source, f.target, m + n - 1, f.degree + g.degree, out_sym, fn, name)
    return materialize(res) if _finite_pair(f, g) else res


def nr_sym(f: MultiMap, g: MultiMap) -> MultiMap:
    """``f o_bar g (x) = sum_(Sh(m, n-1)) eps f(g(x_s1..x_sm), rest)``; needs symmetric inputs."""
    return _nr(f, g, skew=False, strict=True)


def nr_skew(f: MultiMap, g: MultiMap, strict: bool = True) -> MultiMap:
    """``f o_hat g = (-1)^(|g|(n-1)) sum chi f(g(...), rest)``.

    With ``strict=False`` only ``g`` must be skew.  That is enough for an arity-2
    outer map, since its single remaining slot carries no symmetry.
    """
    return _nr(f, g, skew=True, strict=strict)


def _tag(f: MultiMap, g: MultiMap) -> str:
    if f.has_symmetry("sym") and g.has_symmetry("sym") and not (
            f.has_symmetry("skew") and g.has_symmetry("skew")):
        return "sym"
    if f.has_symmetry("skew") and g.has_symmetry("skew") and not (
            f.has_symmetry("sym") and g.has_symmetry("sym")):
        return "skew"
    if f.arity <= 1 and g.arity <= 1:
        raise ValueError("two unary maps: pass product= explicitly")
    raise ValueError(f"mixed symmetries {f.symmetry} and {g.symmetry}")


def product_for(tag: str):
    return nr_sym if tag == "sym" else nr_skew


def commutator_degree(f: MultiMap, tag: str) -> int:
    """|f| for symmetric maps, ||f|| = |f| + arity - 1 for skew maps."""
    return f.degree if tag == "sym" else f.degree + f.arity - 1


def nr_commutator(f: MultiMap, g: MultiMap, tag: str | None = None) -> MultiMap:
    """``[f, g] = f o g - (-1)^(deg f * deg g) g o f`` in the matching NR algebra."""
    tag = tag or _tag(f, g)
    prod = product_for(tag)
    s = -1 if (commutator_degree(f, tag) * commutator_degree(g, tag)) % 2 else 1
    return lincomb([(1, prod(f, g)), (-s, prod(g, f))])


def associator(f: MultiMap, g: MultiMap, h: MultiMap, tag: str | None = None) -> MultiMap:
    """``(f o g) o h - f o (g o h)``."""
    tag = tag or _tag(f, g)
    prod = product_for(tag)
    return lincomb([(1, prod(prod(f, g), h)), (-1, prod(f, prod(g, h)))])


def power(f: MultiMap, m: int, tag: str | None = None) -> MultiMap:
    """Right-nested power ``f o (f o (... o f))``; ``m = 0`` is the identity."""
    if m == 0:
        if f.source is not f.target and f.source != f.target:
            raise ValueError("identity needs an endomorphism")
        return IdentityMap(f.source)
    tag = tag or f.symmetry
    prod = product_for(tag)
    out = f
    for _ in range(m - 1):
        out = prod(f, out)
    return out


# --- decalage and (anti)symmetrisation -------------------------------------------

def dec_map(f: MultiMap) -> MultiMap:
    """Decalage of an endomorphism: ``Dec(f)(x) = (-1)^(sum (n-i)|x_i|) f(x)``.

    The signs use unshifted degrees.  The result lives on ``V[1]``, has degree
    ``|f| + n - 1`` and the opposite symmetry.
    """
    return _dec(f, f.source.shift(1), f.target.shift(1), +1)


def dec_map_inv(f: MultiMap) -> MultiMap:
    """Inverse decalage: from ``V[1]`` back to ``V``."""
    return _dec(f, f.source.shift(-1), f.target.shift(-1), -1)


def dec_component(f: MultiMap, source_shifted, target_shifted, direction: int = +1) -> MultiMap:
    """Decalage of a map between different spaces, given the shifted spaces."""
    return _dec(f, source_shifted, target_shifted, direction)


def _dec(f, src, tgt, direction):
    n = f.arity
    flip = {"sym": "skew", "skew": "sym", "none": "none"}[f.symmetry]
    degree = f.degree + direction * (n - 1)
    old_src = f.source
    unshift = (lambda xs: [d + 1 for d in _degrees(src, xs)]) if direction > 0 \
        else (lambda xs: _degrees(src, xs))

    def fn(xs):
        val = f.evaluate(xs)
        return -val if dec_sign(unshift(xs)) == -1 else val

    if isinstance(f, TableMap) and isinstance(src, GradedSpace):
        out = TableMap(src, tgt, n, degree, flip, name=f"Dec({f.name})")
        for key, val in f.table.items():
            degs = [old_src.degree_of(l) for l in key]
            s = dec_sign(degs if direction > 0 else [src.degree_of(l) for l in key])
            out.table[key] = val if s == 1 else -val
        return out
    return FnMap(src, tgt, n, degree, flip, fn, f"Dec({f.name})")


def _averaged(f: MultiMap, skew: bool) -> MultiMap:
    n = f.arity
    perms = [Permutation(p) for p in permutations(range(1, n + 1))]
    norm = Fraction(1, factorial(n))
    sign_fn = odd_koszul_sign if skew else koszul_sign

    def fn(xs):
        degs = _degrees(f.source, xs)
        total = f.target.zero()
        for sigma in perms:
            val = f.evaluate(sigma.apply(xs))
            if not f.target.is_zero(val):
                total = total + sign_fn(sigma, degs) * val
        return norm * total

    tag = "skew" if skew else "sym"
    res = FnMap(f.source, f.target, n, f.degree, tag, fn, f"{tag}({f.name})")
    if isinstance(f, TableMap) and isinstance(f.target, GradedSpace):
        return materialize(res)
    return res


def symmetrize(f: MultiMap) -> MultiMap:
    return _averaged(f, skew=False)


def antisymmetrize(f: MultiMap) -> MultiMap:
    return _averaged(f, skew=True)


def maps_equal(f: MultiMap, g: MultiMap, tuples=None) -> bool:
    """Compare two maps on canonical basis tuples (or on the given tuples)."""
    return first_difference(f, g, tuples) is None


def first_difference(f: MultiMap, g: MultiMap, tuples=None):
    if f.arity != g.arity:
        raise ValueError("maps of different arity")
    space = f.source
    if tuples is None:
        tag = f.symmetry if f.symmetry == g.symmetry else "none"
        tuples = [tuple(space.basis_element(l) for l in t)
                  for t in canonical_tuples(space, f.arity, tag)]
    for xs in tuples:
        a, b = f(*xs), g(*xs)
        if a != b:
            return xs, a, b
    return None


def multimap_to_json(m: MultiMap) -> dict:
    if isinstance(m, TableMap):
        return m.to_json()
    return materialize(m).to_json()


__all__ = [
    "MultiMap", "FnMap", "TableMap", "ZeroMap", "IdentityMap", "lincomb", "materialize",
    "canonical_tuples", "gerstenhaber_i", "gerstenhaber", "nr_sym", "nr_skew",
    "nr_commutator", "associator", "power", "dec_map", "dec_map_inv", "dec_component",
    "symmetrize", "antisymmetrize", "maps_equal", "first_difference", "format_rational",
]
