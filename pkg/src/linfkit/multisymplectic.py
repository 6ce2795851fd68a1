"""Multisymplectic data on R^N and the L-infinity algebras built from it.

Elements of the observable space and of the Vinogradov space are
:class:`Section` objects: a degree, an optional vector field and an optional
form.  In a :class:`SectionSpace` with form shift ``s`` a p-form sits in degree
``p - s``; vector fields (and Hamiltonian pairs) sit in degree 0.  The
observables and the Vinogradov space both use ``s = n - 1``.

All brackets are lazy :class:`~linfkit.nr.FnMap` objects, so the NR machinery
and the morphism checks apply verbatim.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial

import sympy

from .arith import as_rational, bernoulli, phi_coeff, vinogradov_coeff
from .graded import odd_koszul_sign, Permutation, varsigma
from .linfty import LInftyMorphism, LInftyStructure
from .nr import FnMap, IdentityMap, MultiMap, ZeroMap, lincomb, nr_commutator, nr_skew, power
from .polyforms import Poly, PolyField, PolyForm, iota_seq, monomials


class Section:
    """A homogeneous element ``X + form`` of degree ``deg``; ``deg is None`` means zero."""

    __slots__ = ("deg", "X", "form", "_hash")

    def __init__(self, deg: int | None, X: PolyField | None = None, form: PolyForm | None = None):
        X = X if X is not None and X.comps else None
        form = form if form is not None and form.comps else None
        self.deg = None if (X is None and form is None) else deg
        self.X, self.form = X, form
        self._hash = None

    @classmethod
    def zero(cls) -> "Section":
        return cls(None)

    def is_zero(self) -> bool:
        return self.deg is None

    def __bool__(self) -> bool:
        return self.deg is not None

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return self.deg is None
        if not isinstance(other, Section):
            return False
        if self.deg is None or other.deg is None:
            return self.deg is None and other.deg is None
        return (self.deg == other.deg and _same(self.X, other.X) and _same(self.form, other.form))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.deg, self.X, self.form))
        return self._hash

    def __add__(self, other: "Section") -> "Section":
        if other.deg is None:
            return self
        if self.deg is None:
            return other
        if self.deg != other.deg:
            raise ValueError(f"cannot add sections of degree {self.deg} and {other.deg}")
        return Section(self.deg, _plus(self.X, other.X), _plus(self.form, other.form))

    def __neg__(self) -> "Section":
        return self.scale(-1)

    def __sub__(self, other: "Section") -> "Section":
        return self + other.scale(-1)

    def scale(self, c) -> "Section":
        c = as_rational(c)
        if c == 1 or self.deg is None:
            return self
        if c == 0:
            return Section.zero()
        return Section(self.deg, self.X.scale(c) if self.X is not None else None,
                       self.form.scale(c) if self.form is not None else None)

    __rmul__ = scale
    __mul__ = scale

    def field_or_zero(self, N: int) -> PolyField:
        return self.X if self.X is not None else PolyField(N, 1)

    def form_or_zero(self, N: int, p: int) -> PolyForm:
        return self.form if self.form is not None else PolyForm(N, p)

    def to_json(self):
        if self.deg is None:
            return None
        return {"deg": self.deg,
                "X": self.X.to_json() if self.X is not None else None,
                "form": self.form.to_json() if self.form is not None else None}

    def __repr__(self) -> str:
        return f"Section({self.to_json()})"


def _same(a, b) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return a == b


def _plus(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a + b


class SectionSpace:
    """The graded space ``X(R^N) + Omega(R^N)[s]``, optionally decalaged ``offset`` times."""

    def __init__(self, N: int, s: int, offset: int = 0):
        self.N, self.s, self.offset = N, s, offset

    def __repr__(self) -> str:
        return f"SectionSpace(N={self.N}, s={self.s}, offset={self.offset})"

    def __eq__(self, other) -> bool:
        return isinstance(other, SectionSpace) and (self.N, self.s, self.offset) == (other.N, other.s, other.offset)

    def __hash__(self) -> int:
        return hash((self.N, self.s, self.offset))

    def shift(self, k: int) -> "SectionSpace":
        return SectionSpace(self.N, self.s, self.offset + k)

    def zero(self) -> Section:
        return Section.zero()

    def is_zero(self, x: Section) -> bool:
        return x.deg is None

    def degree(self, x: Section) -> int:
        if x.deg is None:
            raise ValueError("the zero section has no degree")
        return x.deg - self.offset

    def homogeneous_parts(self, x: Section) -> list:
        return [] if x.deg is None else [x]

    def describe(self, x: Section):
        return x.to_json()

    def form_degree(self, deg: int) -> int:
        return deg + self.s

    def pair(self, X: PolyField | None, form: PolyForm | None) -> Section:
        return Section(0, X, form)

    def form(self, form: PolyForm) -> Section:
        return Section(form.p - self.s, None, form)

    def field(self, X: PolyField) -> Section:
        return Section(0, X, None)


# --- multisymplectic manifolds --------------------------------------------------------

class NotHamiltonian(ValueError):
    pass


def _rank(rows) -> int:
    return sympy.Matrix(rows).rank() if rows else 0


def _sample_points(N: int, count: int = 10):
    pts = [tuple(Fraction(0) for _ in range(N))]
    for t in range(1, count + 1):
        pts.append(tuple(Fraction((t * (i + 2)) % 7 - 3, (i % 3) + 1) for i in range(N)))
    return pts


class MssSpace:
    """``(R^N, omega)`` with ``omega`` a closed (n+1)-form and a polynomial degree bound ``D``."""

    def __init__(self, N: int, n: int, omega: PolyForm, D: int = 2, check_nondegenerate: bool = True):
        if omega.N != N:
            raise ValueError("omega lives on a different R^N")
        if omega.p != n + 1 and omega.comps:
            raise ValueError(f"omega must be an {n + 1}-form, got degree {omega.p}")
        if omega.d():
            raise ValueError("omega is not closed")
        self.N, self.n, self.omega, self.D = N, n, omega, D
        if check_nondegenerate:
            bad = self.degenerate_point()
            if bad is not None:
                raise ValueError(f"omega is degenerate at {[str(c) for c in bad]}")
        self.space = SectionSpace(N, n - 1)

    def degenerate_point(self):
        """First sample point where ``X -> iota_X omega`` fails to be injective, or None."""
        constant = self.omega.degree_bound() <= 0
        for pt in _sample_points(self.N, 0 if constant else 10):
            rows = []
            for i in range(self.N):
                img = self.omega.iota_basis(i).at(pt)
                rows.append(img)
            keys = sorted({k for r in rows for k in r})
            mat = [[r.get(k, 0) for k in keys] for r in rows]
            if _rank(mat) < self.N:
                return pt
        return None

    def to_json(self) -> dict:
        return {"N": self.N, "n": self.n, "omega": self.omega.to_json(), "D": self.D}

    @classmethod
    def from_json(cls, data: dict, check_nondegenerate: bool = True) -> "MssSpace":
        try:
            N, n = int(data["N"]), int(data["n"])
            omega = PolyForm.from_json(data["omega"])
            D = int(data.get("D", 2))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed instance: {exc}") from exc
        return cls(N, n, omega, D, check_nondegenerate)

    def with_omega(self, omega: PolyForm) -> "MssSpace":
        return MssSpace(self.N, self.n, omega, self.D)

    # Hamiltonian data
    def hamiltonian_field(self, alpha: PolyForm, degree_bound: int | None = None) -> PolyField:
        """Solve ``d alpha = -iota_X omega`` for a polynomial field X."""
        if alpha.comps and alpha.p != self.n - 1:
            raise ValueError(f"Hamiltonian forms have degree {self.n - 1}")
        target = -alpha.d() if alpha.comps else PolyForm(self.N, self.n)
        bound = degree_bound if degree_bound is not None else max(target.degree_bound(), 0)
        unknowns = [(i, e) for i in range(self.N) for e in monomials(self.N, bound)]
        images = [self.omega.iota_basis(i).scale(Poly.monomial(e)) for i, e in unknowns]
        keys = sorted({(I, e) for img in images for I, f in img.comps.items() for e in f.terms}
                      | {(I, e) for I, f in target.comps.items() for e in f.terms})
        if not keys:
            return PolyField(self.N, 1)
        A = sympy.Matrix(len(keys), len(unknowns), lambda r, c: _coef(images[c], keys[r]))
        b = sympy.Matrix(len(keys), 1, lambda r, _: _coef(target, keys[r]))
        try:
            sol, params = A.gauss_jordan_solve(b)
        except ValueError:
            raise NotHamiltonian("no polynomial Hamiltonian field within the degree bound") from None
        sol = sol.subs({p: 0 for p in params})
        comps: dict = {}
        for (i, e), v in zip(unknowns, sol):
            if v != 0:
                q = Fraction(int(sympy.Rational(v).p), int(sympy.Rational(v).q))
                comps[(i,)] = comps.get((i,), Poly(self.N)) + Poly.monomial(e, q)
        return PolyField(self.N, 1, comps)

    def is_hamiltonian_pair(self, X: PolyField, alpha: PolyForm) -> bool:
        lhs = alpha.d() if alpha.comps else PolyForm(self.N, self.n)
        return lhs == -self.omega.iota(X)

    def ham_pair(self, alpha: PolyForm) -> Section:
        return Section(0, self.hamiltonian_field(alpha), alpha)

    def pair_for_field(self, X: PolyField) -> Section:
        """``(X, -h(iota_X omega))`` for a field whose contraction with omega is closed."""
        c = self.omega.iota(X)
        if c.d():
            raise NotHamiltonian("iota_X omega is not closed")
        return Section(0, X, -c.poincare_primitive())

    def lower(self, form: PolyForm) -> Section:
        if form.comps and not 0 <= form.p <= self.n - 2:
            raise ValueError("lower observables are forms of degree 0..n-2")
        return self.space.form(form)

    def linear_hamiltonian_fields(self):
        """A basis of linear fields ``X`` with ``d iota_X omega = 0``."""
        N = self.N
        cands = [PolyField(N, 1, {(i,): Poly.var(N, j)}) for i in range(N) for j in range(N)]
        conds = [self.omega.iota(X).d() for X in cands]
        keys = sorted({(I, e) for c in conds for I, f in c.comps.items() for e in f.terms})
        if not keys:
            basis = [[1 if r == c else 0 for r in range(len(cands))] for c in range(len(cands))]
        else:
            A = sympy.Matrix(len(keys), len(cands), lambda r, c: _coef(conds[c], keys[r]))
            basis = [[Fraction(int(sympy.Rational(v).p), int(sympy.Rational(v).q)) for v in vec]
                     for vec in A.nullspace()]
        out = []
        for vec in basis:
            X = PolyField(N, 1)
            for c, cand in zip(vec, cands):
                if c:
                    X = X + cand.scale(c)
            out.append(X)
        return out

    def hamiltonian_corpus(self, linear: int | None = None, closed: int = 1, lower: int = 1):
        """A deterministic corpus of observables.

        Constant fields, the first ``linear`` basis fields of the linear
        Hamiltonian algebra (all by default), ``closed`` exact pairs
        ``(0, d beta)`` and ``lower`` monomial forms in each negative degree,
        with monomial coefficients of degree at most ``D``.
        """
        N, n = self.N, self.n
        out = []
        fields = [PolyField.coordinate(N, i) for i in range(N)]
        lin = self.linear_hamiltonian_fields()
        fields += lin if linear is None else lin[:linear]
        for X in fields:
            out.append(self.pair_for_field(X))
        if n >= 2:
            for t in range(closed):
                beta = _monomial_form(N, n - 2, t, self.D)
                out.append(Section(0, None, beta.d()))
        for p in range(0, n - 1):
            for t in range(lower):
                out.append(self.lower(_monomial_form(N, p, t + 1, self.D)))
        return [e for e in out if e]


def _monomial_form(N: int, p: int, t: int, D: int = 2) -> PolyForm:
    idxs = list(combinations(range(N), p))
    idx = idxs[t % len(idxs)]
    exps = [e for e in monomials(N, max(D, 1)) if sum(e) >= 1]
    e = exps[(3 * t + p) % len(exps)]
    return PolyForm.basic(N, idx, Poly.monomial(e))


def _coef(form: PolyForm, key) -> sympy.Rational:
    I, e = key
    f = form.comps.get(I)
    if f is None:
        return sympy.Integer(0)
    c = f.terms.get(e, 0)
    c = Fraction(c)
    return sympy.Rational(c.numerator, c.denominator)


# --- brackets -------------------------------------------------------------------------

def _fields(xs):
    return [x.X for x in xs]


def _d_section(x: Section, space: SectionSpace) -> Section:
    """``d`` on a negative-degree section; lands in degree 0 as a closed pair when needed."""
    if x.deg >= 0:
        return Section.zero()
    df = x.form.d() if x.form is not None else None
    return Section(x.deg + 1, None, df)


def rogers_bracket(M: MssSpace, k: int, *es: Section) -> Section:
    """Rogers' k-ary bracket on observables."""
    n = M.n
    if not 1 <= k <= n + 1:
        if k >= 1:
            return Section.zero()
        raise ValueError("arity out of range")
    if len(es) != k:
        raise ValueError(f"expected {k} entries")
    if k == 1:
        return _d_section(es[0], M.space)
    if any(e.deg != 0 for e in es):
        return Section.zero()
    if any(e.X is None for e in es):
        return Section.zero()
    val = iota_seq(_fields(es), M.omega)
    if varsigma(k) == -1:
        val = -val
    if k == 2:
        return Section(0, es[0].X.bracket(es[1].X), val)
    return Section(2 - k, None, val)


def rogers_structure(M: MssSpace, space: SectionSpace | None = None, memo: bool = True) -> LInftyStructure:
    space = space or M.space
    brackets = {}
    for k in range(1, M.n + 2):
        brackets[k] = FnMap(space, space, k, 2 - k, "skew",
                            lambda xs, k=k: rogers_bracket(M, k, *xs), f"pi{k}", memo=memo)
    return LInftyStructure(space, brackets, "skew")


def _pairing(e1: Section, e2: Section, sign: int) -> Section:
    t1 = e2.form.iota(e1.X) if e1.X is not None and e2.form is not None else None
    t2 = e1.form.iota(e2.X) if e2.X is not None and e1.form is not None else None
    if t2 is not None and sign == -1:
        t2 = -t2
    out = _plus(t1, t2)
    if out is None or not out:
        return Section.zero()
    return Section(e1.deg + e2.deg - 1, None, out.scale(Fraction(1, 2)))


def pairing_minus(e1: Section, e2: Section) -> Section:
    """``1/2 (iota_X1 F2 - iota_X2 F1)``: skew, degree -1."""
    if e1.deg is None or e2.deg is None:
        return Section.zero()
    return _pairing(e1, e2, -1)


def pairing_plus(e1: Section, e2: Section) -> Section:
    """``1/2 (iota_X1 F2 + iota_X2 F1)``."""
    if e1.deg is None or e2.deg is None:
        return Section.zero()
    return _pairing(e1, e2, +1)


def pairing_map(space: SectionSpace, sign: str = "-", memo: bool = True) -> MultiMap:
    if sign == "-":
        return FnMap(space, space, 2, -1, "skew", lambda xs: pairing_minus(*xs), "<>-", memo=memo)
    return FnMap(space, space, 2, -1, "none", lambda xs: pairing_plus(*xs), "<>+", memo=memo)


# Vinogradov brackets

def _mu2(omega: PolyForm, e1: Section, e2: Section) -> Section:
    if e1.deg == 0 and e2.deg == 0:
        X1, X2 = e1.X, e2.X
        a1, a2 = e1.form, e2.form
        terms = []
        pm = pairing_minus(e1, e2)
        if pm:
            terms.append(pm.form.d())
        if X1 is not None and a2 is not None:
            terms.append(a2.d().iota(X1))
        if X2 is not None and a1 is not None:
            terms.append(-a1.d().iota(X2))
        if X1 is not None and X2 is not None:
            terms.append(omega.iota(X2).iota(X1))
        form = None
        for t in terms:
            if t:
                form = t if form is None else form + t
        X = X1.bracket(X2) if X1 is not None and X2 is not None else None
        return Section(0, X, form)
    if e1.deg == 0 and e2.deg < 0:
        return _half_lie(e1, e2)
    if e1.deg < 0 and e2.deg == 0:
        return -_half_lie(e2, e1)
    return Section.zero()


def _half_lie(e: Section, f: Section) -> Section:
    if e.X is None or f.form is None:
        return Section.zero()
    return Section(f.deg, None, f.form.lie(e.X).scale(Fraction(1, 2)))


def _front(xs, j):
    """Reorder so entry j comes first; returns (sign, ys) with ``mu(xs) = sign * mu(ys)``."""
    order = [j + 1] + [i + 1 for i in range(len(xs)) if i != j]
    sigma = Permutation(order)
    degs = [x.deg for x in xs]
    return odd_koszul_sign(sigma, degs), sigma.apply(xs)


def _mu3(omega: PolyForm, e1: Section, e2: Section, e3: Section) -> Section:
    xs = (e1, e2, e3)
    neg = [i for i, x in enumerate(xs) if x.deg != 0]
    if not neg:
        total = Section.zero()
        for a, b, c in ((e1, e2, e3), (e2, e3, e1), (e3, e1, e2)):
            total = total + pairing_plus(_mu2(omega, a, b), c)
        return total.scale(Fraction(-1, 3))
    if len(neg) > 1:
        return Section.zero()
    sign, (f, a, b) = _front(xs, neg[0])
    X1, X2 = a.X, b.X
    if X1 is None or X2 is None or f.form is None:
        return Section.zero()
    F = f.form
    val = (F.lie(X2).iota(X1) - F.lie(X1).iota(X2)).scale(Fraction(1, 2)) + F.iota(X1.bracket(X2))
    val = val.scale(Fraction(-1, 6))
    res = Section(f.deg - 1, None, val)
    return res if sign == 1 else -res


def _ternary_no_omega(N: int, a: Section, Y1: PolyField, Y2: PolyField) -> Section:
    zero_omega = PolyForm(N, 0)
    return _mu3(zero_omega, a, Section(0, Y1, None), Section(0, Y2, None))


def vinogradov_bracket(M: MssSpace, k: int, *vs: Section) -> Section:
    """The k-ary twisted Vinogradov bracket on sections."""
    omega = M.omega
    if k < 1:
        raise ValueError("arity out of range")
    if len(vs) != k:
        raise ValueError(f"expected {k} entries")
    if any(v.deg is None for v in vs):
        return Section.zero()
    if k == 1:
        return _d_section(vs[0], M.space)
    if sum(1 for v in vs if v.deg != 0) > 1:
        return Section.zero()
    if k == 2:
        return _mu2(omega, *vs)
    if k == 3:
        return _mu3(omega, *vs)
    if k % 2 == 0:
        return Section.zero()
    return _mu_odd(M, k, vs)


def _mu_odd(M: MssSpace, k: int, vs) -> Section:
    N, omega = M.N, M.omega
    ck = vinogradov_coeff(k)
    out_deg = 2 - k + sum(v.deg for v in vs)
    total = None
    fields = [v.X for v in vs]
    for i in range(k):
        form_i = vs[i].form
        if form_i is None:
            continue
        ys = [fields[a] for a in range(k) if a != i]
        if any(y is None for y in ys):
            continue
        head = Section(vs[i].deg, None, form_i)
        inner = None
        for a in range(k - 1):
            for b in range(a + 1, k - 1):
                t = _ternary_no_omega(N, head, ys[a], ys[b])
                if not t:
                    continue
                rest = [ys[c] for c in range(k - 1) if c not in (a, b)]
                val = iota_seq(rest, t.form)
                # 1-based (-1)^(i+j+1) with i = a+1, j = b+1
                if (a + b + 3) % 2:
                    val = -val
                inner = val if inner is None else inner + val
        if inner is None:
            continue
        inner = inner.scale(ck)
        if i % 2:
            inner = -inner
        total = inner if total is None else total + inner
    if all(f is not None for f in fields):
        sign = -1 if ((k + 1) // 2) % 2 else 1
        w = iota_seq(fields, omega).scale(sign * k * bernoulli(k - 1))
        total = w if total is None else total + w
    if total is None or not total:
        return Section.zero()
    return Section(out_deg, None, total)


def vinogradov_structure(M: MssSpace, max_arity: int | None = None, space: SectionSpace | None = None,
                         memo: bool = True) -> LInftyStructure:
    space = space or M.space
    top = max_arity if max_arity is not None else M.n + 1
    brackets = {}
    for k in range(1, top + 1):
        if k >= 4 and k % 2 == 0:
            continue
        brackets[k] = FnMap(space, space, k, 2 - k, "skew",
                            lambda xs, k=k: vinogradov_bracket(M, k, *xs), f"mu{k}", memo=memo)
    return LInftyStructure(space, brackets, "skew")


# --- gauge transformations and the embedding ---------------------------------------------

def gauge_tau(B: PolyForm, v: Section) -> Section:
    """``(X, alpha) -> (X, alpha + iota_X B)`` in degree 0, identity below."""
    if v.deg != 0 or v.X is None:
        return v
    shift = B.iota(v.X)
    return Section(0, v.X, _plus(v.form, shift) if shift else v.form)


def gauge_map(B: PolyForm, space: SectionSpace) -> MultiMap:
    return FnMap(space, space, 1, 0, "sym", lambda xs: gauge_tau(B, xs[0]), "tau_B")


def phi_component(M: MssSpace, k: int, coeff=None, space: SectionSpace | None = None) -> MultiMap:
    """``Phi_1 = id``, ``Phi_k = phi_k <,>_-^(k-1)`` (right-nested skew NR power)."""
    space = space or M.space
    if k == 1:
        return IdentityMap(space)
    c = phi_coeff(k) if coeff is None else as_rational(coeff)
    base = power(pairing_map(space), k - 1, "skew")
    if c == 0:
        return ZeroMap(space, space, k, 1 - k, "skew")
    m = lincomb([(c, base)])
    m.name = f"Phi{k}"
    return m


def phi_morphism(M: MssSpace, max_arity: int | None = None, overrides: dict | None = None) -> LInftyMorphism:
    """The embedding of the observables into the Vinogradov algebra, in the skew presentation."""
    top = max_arity if max_arity is not None else M.n + 1
    overrides = {int(k): v for k, v in (overrides or {}).items()}
    comps = {k: phi_component(M, k, overrides.get(k)) for k in range(1, top + 1)}
    return LInftyMorphism(rogers_structure(M), vinogradov_structure(M, max(top, M.n + 1)), comps)


def pairing_identities(M: MssSpace) -> dict:
    """Residual maps of the pairing identities, keyed by name: ``{name: (arity, map)}``.

    Every map vanishes identically when the identity holds.
    """
    S = M.space
    pi = rogers_structure(M).brackets
    mu = vinogradov_structure(M).brackets
    P = pairing_map(S)
    out = {
        "mu2": (2, lincomb([(1, mu[2]), (-1, pi[2]), (-1, nr_skew(mu[1], P)), (1, nr_skew(P, mu[1]))])),
        "pair_mu2": (3, nr_commutator(P, mu[2], "skew")),
        "mu3": (3, lincomb([(1, mu[3]), (-1, pi[3]), (Fraction(1, 2), nr_commutator(P, pi[2], "skew")),
                            (Fraction(1, 6), nr_commutator(power(P, 2, "skew"), pi[1], "skew"))])),
    }
    for k in range(4, M.n + 2):
        out[f"recursion_{k}"] = (k, lincomb([(1, nr_commutator(P, pi[k - 1], "skew")),
                                             (-Fraction(k, 2), pi[k])]))
        c = Fraction(2 ** (k - 3) * 6, factorial(k))
        out[f"higher_pi_{k}"] = (k, lincomb([(1, pi[k]), (-c, nr_skew(power(P, k - 3, "skew"), pi[3]))]))
    return out


def insertion_residual(B: PolyForm, fields, s: int = 0) -> PolyForm:
    """``<>^m(B, X_1..X_m) - (-varsigma(m) m!/2^m) iota_(X_m)..iota_(X_1) B`` in a space of shift ``s``."""
    S = SectionSpace(B.N, s)
    m = len(fields)
    got = power(pairing_map(S), m, "skew")(S.form(B), *(S.field(X) for X in fields))
    expect = iota_seq(fields, B).scale(-varsigma(m) * Fraction(factorial(m), 2 ** m))
    return (got.form if got.form is not None else PolyForm(B.N, B.p - m)) - expect


def conjectural_arities(M: MssSpace, max_arity: int) -> list:
    """Arities whose Phi components are used beyond the proven range n <= 4."""
    return [k for k in range(1, max_arity + 1) if M.n > 4 and k >= 5]


__all__ = [
    "Section", "SectionSpace", "MssSpace", "NotHamiltonian", "rogers_bracket", "rogers_structure",
    "pairing_minus", "pairing_plus", "pairing_map", "vinogradov_bracket", "vinogradov_structure",
    "gauge_tau", "gauge_map", "phi_component", "phi_morphism", "pairing_identities",
    "insertion_residual", "conjectural_arities",
]
