"""Polynomial differential forms and multivector fields on R^N, exactly.

Coordinates are indexed ``0..N-1``.  A polynomial is a dict from exponent
tuples to Fractions.  A p-form is a dict from increasing index tuples ``I`` to
polynomials, meaning ``sum_I f_I dx^I``; multivector fields use the same shape
with ``d/dx^I``.

Contraction follows ``iota(v_1 ^ ... ^ v_q) = iota(v_q) ... iota(v_1)`` and the
Lie derivative is ``L_p = d iota_p - (-1)^|p| iota_p d``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from .arith import as_rational, format_rational


class Poly:
    """A polynomial in N variables with rational coefficients."""

    __slots__ = ("N", "terms", "_hash")

    def __init__(self, N: int, terms: dict | None = None):
        self.N = N
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}
        self._hash = None

    @classmethod
    def const(cls, N: int, c) -> "Poly":
        return cls(N, {(0,) * N: as_rational(c)})

    @classmethod
    def var(cls, N: int, i: int) -> "Poly":
        e = [0] * N
        e[i] = 1
        return cls(N, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "Poly":
        return cls(len(exp), {tuple(exp): as_rational(c)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({self.to_json()})"

    def __add__(self, other: "Poly") -> "Poly":
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.N, out)

    def __neg__(self) -> "Poly":
        return Poly(self.N, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c) -> "Poly":
        if c == 1:
            return self
        return Poly(self.N, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(as_rational(other))
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.N, out)

    __rmul__ = __mul__

    def diff(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return Poly(self.N, out)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __call__(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Compose with ``x_i -> images[i]`` (all images in a common ring)."""
        M = images[0].N if images else 0
        out = Poly(M)
        powers: dict = {}
        for e, c in self.terms.items():
            term = Poly.const(M, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        p = Poly.const(M, 1)
                        for _ in range(k):
                            p = p * images[i]
                        powers[key] = p
                    term = term * powers[key]
            out = out + term
        return out

    def to_json(self) -> list:
        return [{"exp": list(e), "c": format_rational(self.terms[e])} for e in sorted(self.terms)]

    @classmethod
    def from_json(cls, N: int, data: list) -> "Poly":
        terms: dict = {}
        for t in data:
            e = tuple(int(x) for x in t["exp"])
            if len(e) != N or any(x < 0 for x in e):
                raise ValueError(f"bad exponent {t['exp']} for N={N}")
            terms[e] = terms.get(e, 0) + as_rational(t["c"])
        return cls(N, terms)


def _merge_sign(I: tuple, J: tuple):
    """``dx^I ^ dx^J = sign dx^(I u J)``; ``None`` when they overlap."""
    if set(I) & set(J):
        return None
    inv = sum(1 for a in I for b in J if a > b)
    return tuple(sorted(I + J)), (-1 if inv % 2 else 1)


class _Graded:
    """Shared storage for forms and multivector fields: ``{index tuple: Poly}``."""

    __slots__ = ("N", "p", "comps", "_hash")

    def __init__(self, N: int, p: int, comps: dict | None = None):
        self.N, self.p = N, p
        self.comps = {I: f for I, f in (comps or {}).items() if f.terms}
        self._hash = None

    def _new(self, comps):
        return type(self)(self.N, self.p, comps)

    def __bool__(self) -> bool:
        return bool(self.comps)

    def is_zero(self) -> bool:
        return not self.comps

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.comps
        if type(other) is not type(self):
            return False
        if not self.comps and not other.comps:
            return True
        return self.p == other.p and self.comps == other.comps

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, frozenset(self.comps.items()))) if self.comps else 0
        return self._hash

    def _check(self, other):
        if self.N != other.N:
            raise ValueError("dimension mismatch")
        if self.comps and other.comps and self.p != other.p:
            raise ValueError(f"cannot add degree {self.p} and degree {other.p}")

    def __add__(self, other):
        self._check(other)
        if not other.comps:
            return self
        if not self.comps:
            return other
        out = dict(self.comps)
        for I, f in other.comps.items():
            out[I] = out[I] + f if I in out else f
        return self._new(out)

    def __neg__(self):
        return self._new({I: -f for I, f in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, Poly):
            return self._new({I: f * c for I, f in self.comps.items()})
        c = as_rational(c)
        if c == 1:
            return self
        return self._new({I: f.scale(c) for I, f in self.comps.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, c):
        return self.scale(c)

    def degree_bound(self) -> int:
        return max((f.degree() for f in self.comps.values()), default=-1)

    def at(self, point) -> dict:
        return {I: f(point) for I, f in self.comps.items() if f(point) != 0}

    def to_json(self, key: str) -> dict:
        return {"N": self.N, key: self.p,
                "terms": [{"idx": list(I), "poly": self.comps[I].to_json()}
                          for I in sorted(self.comps)]}


class PolyForm(_Graded):
    """A polynomial p-form ``sum_I f_I dx^I``."""

    __slots__ = ()

    @classmethod
    def zero(cls, N: int, p: int) -> "PolyForm":
        return cls(N, p)

    @classmethod
    def basic(cls, N: int, idx: Sequence[int], coeff: Poly | None = None) -> "PolyForm":
        """``coeff * dx^(i1) ^ ... ^ dx^(ik)`` for any index order."""
        out = cls(N, 0, {(): coeff if coeff is not None else Poly.const(N, 1)})
        for i in idx:
            out = out.wedge(cls(N, 1, {(i,): Poly.const(N, 1)}))
        return out

    @classmethod
    def function(cls, f: Poly) -> "PolyForm":
        return cls(f.N, 0, {(): f})

    def __repr__(self) -> str:
        return f"PolyForm(p={self.p}, {self.to_json()['terms']})"

    def to_json(self) -> dict:
        return super().to_json("p")

    @classmethod
    def from_json(cls, data: dict) -> "PolyForm":
        try:
            N, p = int(data["N"]), int(data["p"])
            out = cls(N, p)
            for t in data.get("terms", []):
                idx = [int(i) for i in t["idx"]]
                if len(idx) != p or any(not 0 <= i < N for i in idx):
                    raise ValueError(f"bad index {idx} for a {p}-form on R^{N}")
                out = out + cls.basic(N, idx, Poly.from_json(N, t["poly"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed form: {exc}") from exc
        return out

    def wedge(self, other: "PolyForm") -> "PolyForm":
        out: dict = {}
        for I, f in self.comps.items():
            for J, g in other.comps.items():
                merged = _merge_sign(I, J)
                if merged is None:
                    continue
                K, s = merged
                h = f * g
                h = h if s == 1 else -h
                out[K] = out[K] + h if K in out else h
        return PolyForm(self.N, self.p + other.p, out)

    def d(self) -> "PolyForm":
        out: dict = {}
        for I, f in self.comps.items():
            for j in range(self.N):
                if j in I:
                    continue
                g = f.diff(j)
                if not g:
                    continue
                pos = sum(1 for i in I if i < j)
                K = tuple(sorted(I + (j,)))
                g = -g if pos % 2 else g
                out[K] = out[K] + g if K in out else g
        return PolyForm(self.N, self.p + 1, out)

    def iota_basis(self, j: int) -> "PolyForm":
        """Contraction with the coordinate field d/dx^j."""
        out: dict = {}
        for I, f in self.comps.items():
            if j not in I:
                continue
            r = I.index(j)
            K = I[:r] + I[r + 1:]
            g = -f if r % 2 else f
            out[K] = out[K] + g if K in out else g
        return PolyForm(self.N, self.p - 1, out)

    def iota(self, v: "PolyField") -> "PolyForm":
        """``iota_v`` for a multivector field ``v``, applying ``iota_(v_1)`` first."""
        if v.p == 0:
            return self.scale(v.comps.get((), Poly(self.N)))
        out = PolyForm(self.N, self.p - v.p)
        for J, g in v.comps.items():
            term = self
            for j in J:
                term = term.iota_basis(j)
                if not term:
                    break
            if term:
                out = out + term.scale(g)
        return out

    def lie(self, v: "PolyField") -> "PolyForm":
        a = self.iota(v).d()
        b = self.d().iota(v)
        return a - b if v.p % 2 == 0 else a + b

    def pullback(self, A: Sequence[Sequence]) -> "PolyForm":
        """Pull back along the linear map ``x -> A x`` from R^M (columns of A) to R^N (rows)."""
        A = [[as_rational(a) for a in row] for row in A]
        if len(A) != self.N:
            raise ValueError("matrix row count must equal the ambient dimension")
        M = len(A[0]) if A else 0
        images = [Poly(M, {tuple(1 if k == j else 0 for k in range(M)): A[i][j]
                           for j in range(M)}) for i in range(self.N)]
        dys = [PolyForm(M, 1, {(j,): Poly.const(M, A[i][j]) for j in range(M)})
               for i in range(self.N)]
        out = PolyForm(M, self.p)
        for I, f in self.comps.items():
            term = PolyForm(M, 0, {(): f.substitute(images)})
            for i in I:
                term = term.wedge(dys[i])
            out = out + term
        return out

    def poincare_primitive(self) -> "PolyForm":
        """Cone homotopy: ``h(x^e dx^I) = iota_E(x^e dx^I) / (|e| + p)``.

        Satisfies ``d h + h d = id`` on forms of positive degree.
        """
        if self.p <= 0:
            return PolyForm(self.N, self.p - 1)
        out: dict = {}
        for I, f in self.comps.items():
            for e, c in f.terms.items():
                scale = Fraction(1, sum(e) + self.p)
                for r, i in enumerate(I):
                    K = I[:r] + I[r + 1:]
                    e2 = list(e)
                    e2[i] += 1
                    val = c * scale * (-1 if r % 2 else 1)
                    g = Poly(self.N, {tuple(e2): val})
                    out[K] = out[K] + g if K in out else g
        return PolyForm(self.N, self.p - 1, out)


class PolyField(_Graded):
    """A polynomial multivector field ``sum_I f_I d/dx^I``; ``p`` is its degree."""

    __slots__ = ()

    @classmethod
    def vector(cls, coeffs: Sequence[Poly]) -> "PolyField":
        N = len(coeffs)
        return cls(N, 1, {(i,): f for i, f in enumerate(coeffs)})

    @classmethod
    def coordinate(cls, N: int, i: int) -> "PolyField":
        return cls(N, 1, {(i,): Poly.const(N, 1)})

    @classmethod
    def euler(cls, N: int, indices: Iterable[int] | None = None) -> "PolyField":
        idx = range(N) if indices is None else indices
        return cls(N, 1, {(i,): Poly.var(N, i) for i in idx})

    def __repr__(self) -> str:
        return f"PolyField(q={self.p}, {self.to_json()['terms']})"

    def to_json(self) -> dict:
        return super().to_json("q")

    @classmethod
    def from_json(cls, data: dict) -> "PolyField":
        try:
            N, q = int(data["N"]), int(data.get("q", 1))
            out = cls(N, q)
            for t in data.get("terms", []):
                idx = [int(i) for i in t["idx"]]
                if len(idx) != q or any(not 0 <= i < N for i in idx):
                    raise ValueError(f"bad index {idx} for a {q}-vector on R^{N}")
                f = Poly.from_json(N, t["poly"])
                vecs = [cls.coordinate(N, i) for i in idx]
                if not vecs:
                    out = out + cls(N, 0, {(): f})
                    continue
                term = vecs[0].scale(f)
                for w in vecs[1:]:
                    term = term.wedge(w)
                out = out + term
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed field: {exc}") from exc
        return out

    def component(self, i: int) -> Poly:
        return self.comps.get((i,), Poly(self.N))

    def apply(self, f: Poly) -> Poly:
        """Derivative of a function along a vector field."""
        out = Poly(self.N)
        for (i,), g in self.comps.items():
            out = out + g * f.diff(i)
        return out

    def bracket(self, other: "PolyField") -> "PolyField":
        """Lie bracket of vector fields, ``[X, Y]^i = X(Y^i) - Y(X^i)``."""
        if self.p != 1 or other.p != 1:
            raise ValueError("Lie bracket is defined on vector fields")
        comps = {}
        for i in range(self.N):
            comps[(i,)] = self.apply(other.component(i)) - other.apply(self.component(i))
        return PolyField(self.N, 1, comps)

    def wedge(self, other: "PolyField") -> "PolyField":
        out: dict = {}
        for I, f in self.comps.items():
            for J, g in other.comps.items():
                merged = _merge_sign(I, J)
                if merged is None:
                    continue
                K, s = merged
                h = f * g
                h = h if s == 1 else -h
                out[K] = out[K] + h if K in out else h
        return PolyField(self.N, self.p + other.p, out)

    def vector_factors(self):
        """Split into decomposable terms ``(f d/dx^i1) ^ d/dx^i2 ^ ...``."""
        for I, f in self.comps.items():
            vecs = [PolyField.coordinate(self.N, i) for i in I]
            if vecs:
                vecs[0] = vecs[0].scale(f)
            yield vecs, f


def wedge_fields(vs: Sequence[PolyField], N: int | None = None) -> PolyField:
    if not vs:
        return PolyField(N, 0, {(): Poly.const(N, 1)})
    out = vs[0]
    for v in vs[1:]:
        out = out.wedge(v)
    return out


def iota_seq(vs: Sequence[PolyField], form: PolyForm) -> PolyForm:
    """``iota(v_1 ^ ... ^ v_m) form = iota_(v_m) ... iota_(v_1) form``."""
    out = form
    for v in vs:
        out = out.iota(v)
        if not out:
            return PolyForm(form.N, form.p - len(vs))
    return out


def schouten_decomposable(xs: Sequence[PolyField], ys: Sequence[PolyField]) -> PolyField:
    """``[x_1^..^x_m, y_1^..^y_n] = sum (-1)^(i+j) [x_i, y_j] ^ (rest of x) ^ (rest of y)``."""
    N = (xs or ys)[0].N
    m, n = len(xs), len(ys)
    out = PolyField(N, m + n - 1)
    for i in range(m):
        for j in range(n):
            rest = [xs[a] for a in range(m) if a != i] + [ys[b] for b in range(n) if b != j]
            term = wedge_fields([xs[i].bracket(ys[j])] + rest)
            out = out + (term if (i + j) % 2 == 0 else -term)
    return out


def schouten(p: PolyField, q: PolyField) -> PolyField:
    """Schouten bracket, bilinear extension of :func:`schouten_decomposable`.

    Function coefficients are absorbed into the first vector factor, which is
    how the decomposable formula extends to coefficients.
    """
    out = PolyField(p.N, p.p + q.p - 1)
    for xs, _ in p.vector_factors():
        for ys, _ in q.vector_factors():
            out = out + schouten_decomposable(xs, ys)
    return out


def ce_boundary_fields(xs: Sequence[PolyField]) -> PolyField:
    """``d(x_1 ^ ... ^ x_m) = sum_(i<j) (-1)^(i+j) [x_i, x_j] ^ (rest)``; zero for m < 2."""
    m = len(xs)
    N = xs[0].N
    out = PolyField(N, m - 1)
    for i in range(m):
        for j in range(i + 1, m):
            rest = [xs[a] for a in range(m) if a not in (i, j)]
            term = wedge_fields([xs[i].bracket(xs[j])] + rest)
            out = out + (term if (i + j) % 2 == 0 else -term)
    return out


def multicartan_defect(xs: Sequence[PolyField], form: PolyForm) -> PolyForm:
    """LHS minus RHS of the multi-Cartan identity for vector fields ``xs``:

    ``(-1)^m d iota(x) a = iota(x) d a + iota(d x) a + sum_k (-1)^k iota(x without x_k) L_(x_k) a``
    with ``k`` counted from 1.
    """
    m = len(xs)
    lhs = iota_seq(xs, form).d()
    if m % 2:
        lhs = -lhs
    rhs = iota_seq(xs, form.d())
    if m >= 2:
        rhs = rhs + form.iota(ce_boundary_fields(xs))
    for k in range(1, m + 1):
        rest = [xs[a] for a in range(m) if a != k - 1]
        term = iota_seq(rest, form.lie(xs[k - 1]))
        rhs = rhs + (term if k % 2 == 0 else -term)
    return lhs - rhs


def volume_form(N: int) -> PolyForm:
    return PolyForm(N, N, {tuple(range(N)): Poly.const(N, 1)})


def symplectic_form(N: int) -> PolyForm:
    """The standard ``sum dx^(2i) ^ dx^(2i+1)`` on even-dimensional R^N."""
    if N % 2:
        raise ValueError("standard symplectic form needs even N")
    return PolyForm(N, 2, {(2 * i, 2 * i + 1): Poly.const(N, 1) for i in range(N // 2)})


def monomials(N: int, max_degree: int):
    for total in range(max_degree + 1):
        for e in product(range(total + 1), repeat=N):
            if sum(e) == total:
                yield e


def index_sets(N: int, p: int):
    return combinations(range(N), p)
