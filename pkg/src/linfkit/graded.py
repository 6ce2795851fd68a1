"""Finite-dimensional graded vector spaces, permutations and sign rules.

Everything here is convention-bearing.  The sign rules are

* Koszul sign ``eps(sigma; x)``: the parity of the inversions of ``sigma``
  among odd-degree entries.
* odd sign ``chi(sigma; x) = sign(sigma) * eps(sigma; x)``.

A symmetric map satisfies ``f(x_s1, ..., x_sn) = eps * f(x)``; a
skew-symmetric map uses ``chi`` instead.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .arith import as_rational, format_rational


# --- permutations ---------------------------------------------------------------

class Permutation:
    """A permutation of ``{1..n}`` stored by its images ``(s(1), ..., s(n))``."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation{self.images}"

    def compose(self, other: "Permutation") -> "Permutation":
        """``(self o other)(i) = self(other(i))``."""
        if len(other) != len(self):
            raise ValueError("permutations of different size")
        return Permutation(self.images[j - 1] for j in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(inv)

    def apply(self, seq: Sequence) -> tuple:
        """``(x_s(1), ..., x_s(n))``."""
        if len(seq) != len(self.images):
            raise ValueError("sequence length does not match permutation")
        return tuple(seq[j - 1] for j in self.images)

    def sign(self) -> int:
        return _inversion_parity(self.images, None)


def _inversion_parity(images: Sequence[int], odd: Sequence[bool] | None) -> int:
    count = 0
    n = len(images)
    for a in range(n):
        ia = images[a]
        if odd is not None and not odd[ia - 1]:
            continue
        for b in range(a + 1, n):
            ib = images[b]
            if ia > ib and (odd is None or odd[ib - 1]):
                count += 1
    return -1 if count % 2 else 1


def koszul_sign(sigma: Permutation, degrees: Sequence[int]) -> int:
    """eps(sigma; x) for entries of the given degrees."""
    if len(degrees) != len(sigma):
        raise ValueError("degree list does not match permutation")
    return _inversion_parity(sigma.images, [d % 2 == 1 for d in degrees])


def odd_koszul_sign(sigma: Permutation, degrees: Sequence[int]) -> int:
    return sigma.sign() * koszul_sign(sigma, degrees)


def unshuffles(*sizes: int) -> Iterator[Permutation]:
    """Unshuffles of type ``(k1, ..., kl)``: increasing images inside each block.

    The images list is the concatenation of the chosen index sets, so the term
    indexed by ``sigma`` reads its first block as ``x_s(1), ..., x_s(k1)``.
    """
    if any(k < 0 for k in sizes):
        raise ValueError("block sizes must be non-negative")
    n = sum(sizes)
    yield from (Permutation(im) for im in _unshuffle_images(tuple(range(1, n + 1)), sizes, False))


def ordered_unshuffles(*sizes: int) -> Iterator[Permutation]:
    """Unshuffles whose adjacent equal-size blocks have increasing first entries.

    Used for ``k1 <= ... <= kl``, this picks one representative per way of
    splitting the entries into an unordered family of blocks.
    """
    n = sum(sizes)
    yield from (Permutation(im) for im in _unshuffle_images(tuple(range(1, n + 1)), sizes, True))


def _unshuffle_images(pool, sizes, ordered, prev_size=None, prev_first=0):
    if not sizes:
        yield ()
        return
    k = sizes[0]
    for block in combinations(pool, k):
        if ordered and k == prev_size and k > 0 and block[0] < prev_first:
            continue
        rest = tuple(i for i in pool if i not in block)
        first = block[0] if block else prev_first
        for tail in _unshuffle_images(rest, sizes[1:], ordered, k, first):
            yield block + tail


def varsigma(k: int) -> int:
    """The total-degree sign -(-1)^(k(k+1)/2)."""
    return -1 if (k * (k + 1) // 2) % 2 == 0 else 1


def dec_sign(degrees: Sequence[int]) -> int:
    """(-1)^(sum_i (n-i)|u_i|) with unshifted degrees, i counted from 1."""
    n = len(degrees)
    total = sum((n - i) * d for i, d in enumerate(degrees, start=1))
    return -1 if total % 2 else 1


# --- graded spaces ---------------------------------------------------------------

class GradedSpace:
    """A finite graded space given by an ordered basis of ``(label, degree)``.

    ``V.shift(k)`` is ``V[k]`` with ``V[k]^i = V^(i+k)``: each basis vector's
    degree drops by ``k``.  Labels are shared between a space and its shifts.
    """

    def __init__(self, basis: Iterable[tuple[str, int]]):
        basis = [(str(lbl), int(deg)) for lbl, deg in basis]
        labels = [lbl for lbl, _ in basis]
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be distinct")
        self.basis = tuple(basis)
        self._deg = dict(basis)
        self._pos = {lbl: i for i, lbl in enumerate(labels)}

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lbl for lbl, _ in self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return f"GradedSpace({list(self.basis)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedSpace) and self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def degree_of(self, label: str) -> int:
        try:
            return self._deg[label]
        except KeyError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def position(self, label: str) -> int:
        return self._pos[label]

    def labels_in_degree(self, d: int) -> list[str]:
        return [lbl for lbl, deg in self.basis if deg == d]

    def degrees(self) -> list[int]:
        return sorted(set(self._deg.values()))

    def shift(self, k: int) -> "GradedSpace":
        return GradedSpace((lbl, deg - k) for lbl, deg in self.basis)

    def restrict(self, predicate) -> "GradedSpace":
        return GradedSpace((lbl, deg) for lbl, deg in self.basis if predicate(lbl, deg))

    def direct_sum(self, other: "GradedSpace") -> "GradedSpace":
        clash = set(self.labels) & set(other.labels)
        if clash:
            raise ValueError(f"direct sum needs disjoint labels, shared: {sorted(clash)}")
        return GradedSpace(self.basis + other.basis)

    # element protocol shared with the infinite-dimensional spaces
    def zero(self) -> "Element":
        return Element(self, {})

    def basis_element(self, label: str) -> "Element":
        self.degree_of(label)
        return Element(self, {label: Fraction(1)})

    def element(self, coeffs) -> "Element":
        return Element(self, {lbl: as_rational(c) for lbl, c in coeffs.items()})

    def is_zero(self, x: "Element") -> bool:
        return not x.terms

    def degree(self, x: "Element") -> int:
        degs = {self.degree_of(lbl) for lbl in x.terms}
        if len(degs) != 1:
            raise ValueError("element is zero or not homogeneous")
        return degs.pop()

    def homogeneous_parts(self, x: "Element") -> list["Element"]:
        parts: dict[int, dict] = {}
        for lbl, c in x.terms.items():
            parts.setdefault(self.degree_of(lbl), {})[lbl] = c
        return [Element(self, parts[d]) for d in sorted(parts)]

    def describe(self, x: "Element"):
        return x.to_json()

    def to_json(self) -> dict:
        return {"basis": [{"id": lbl, "deg": deg} for lbl, deg in self.basis]}

    @classmethod
    def from_json(cls, data: dict) -> "GradedSpace":
        try:
            return cls((b["id"], b["deg"]) for b in data["basis"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed space: {exc}") from exc


class Element:
    """A sparse vector ``{label: Fraction}`` in a :class:`GradedSpace`.

    Equality compares coefficients only, so an element of ``V`` equals the same
    combination viewed in ``V[k]``.
    """

    __slots__ = ("space", "terms")

    def __init__(self, space: GradedSpace, terms: dict):
        self.space = space
        self.terms = {k: v for k, v in terms.items() if v != 0}

    def __add__(self, other: "Element") -> "Element":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Element(self.space, out)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-1) * other

    def __neg__(self) -> "Element":
        return (-1) * self

    def __rmul__(self, c) -> "Element":
        c = as_rational(c)
        return Element(self.space, {k: c * v for k, v in self.terms.items()})

    __mul__ = __rmul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"Element({self.to_json()})"

    def coeff(self, label: str) -> Fraction:
        return self.terms.get(label, Fraction(0))

    def to_json(self) -> dict:
        order = self.space._pos
        return {k: format_rational(self.terms[k])
                for k in sorted(self.terms, key=lambda l: order.get(l, len(order)))}


def sort_with_sign(labels: Sequence[str], space: GradedSpace, symmetry: str):
    """Sort labels into basis order, returning ``(sorted, sign)``.

    ``sign`` relates the two evaluations: ``f(labels) = sign * f(sorted)``.  It
    is ``0`` when the tuple is forced to vanish by the symmetry, i.e. a repeated
    odd label for a symmetric map or a repeated even label for a skew one.
    """
    items = list(labels)
    pos = space._pos
    sign = 1
    odd_swap = symmetry == "skew"
    for i in range(1, len(items)):
        j = i
        while j > 0 and pos[items[j - 1]] > pos[items[j]]:
            a, b = items[j - 1], items[j]
            s = -1 if (space.degree_of(a) * space.degree_of(b)) % 2 else 1
            sign *= -s if odd_swap else s
            items[j - 1], items[j] = b, a
            j -= 1
    if forced_zero(items, space, symmetry):
        return tuple(items), 0
    return tuple(items), sign


def forced_zero(labels: Sequence[str], space: GradedSpace, symmetry: str) -> bool:
    if symmetry not in ("sym", "skew") or len(labels) < 2:
        return False
    seen = set()
    for lbl in labels:
        if lbl in seen:
            odd = space.degree_of(lbl) % 2 == 1
            if (symmetry == "sym" and odd) or (symmetry == "skew" and not odd):
                return True
        seen.add(lbl)
    return False
