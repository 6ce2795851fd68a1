"""Lie algebra actions, homotopy comoment maps and the pentagon identity.

Components of a comoment are stored on basis-ordered generator tuples and
extended to the exterior powers by alternation.  All checks return plain
report objects with a witness on failure.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import sympy

from .arith import as_rational, format_rational
from .graded import varsigma
from .linfty import LieAlgebra, LInftyMorphism, check_maps_vanish, compose_morphisms, so_algebra
from .multisymplectic import (
    MssSpace, Section, gauge_tau, phi_morphism, rogers_structure,
)
from .nr import FnMap, TableMap
from .polyforms import Poly, PolyField, PolyForm, iota_seq


@dataclass
class Report:
    passed: bool
    checked: int = 0
    failure: dict | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "failure": self.failure,
                **({"details": self.details} if self.details else {})}


def _fail(report: Report, **witness) -> Report:
    report.passed = False
    report.failure = witness
    return report


# --- actions ---------------------------------------------------------------------------

class ActionData:
    """A Lie algebra together with fundamental vector fields ``v_xi`` on R^N.

    ``xi -> v_xi`` is validated to be a Lie algebra morphism on generators.
    """

    def __init__(self, algebra: LieAlgebra, fields: dict, validate: bool = True):
        missing = set(algebra.labels) - set(fields)
        if missing:
            raise ValueError(f"no fundamental field for {sorted(missing)}")
        self.algebra = algebra
        self.fields = {l: fields[l] for l in algebra.labels}
        self.N = next(iter(self.fields.values())).N if self.fields else 0
        if validate:
            bad = self.morphism_failure()
            if bad:
                raise ValueError(f"v is not a Lie algebra morphism on {bad}")

    def field(self, element: dict) -> PolyField:
        out = PolyField(self.N, 1)
        for l, c in element.items():
            out = out + self.fields[l].scale(c)
        return out

    def tuple_fields(self, labels) -> list:
        return [self.fields[l] for l in labels]

    def morphism_failure(self):
        g = self.algebra
        for a, b in combinations(g.labels, 2):
            lhs = self.field(g.bracket({a: 1}, {b: 1}))
            rhs = self.fields[a].bracket(self.fields[b])
            if lhs != rhs:
                return (a, b)
        return None

    def preserves(self, form: PolyForm):
        """First generator whose Lie derivative of ``form`` is nonzero, else None."""
        for l, v in self.fields.items():
            if form.lie(v):
                return l
        return None

    def to_json(self) -> dict:
        return {"algebra": self.algebra.to_json(),
                "fields": {l: v.to_json() for l, v in self.fields.items()}}

    @classmethod
    def from_json(cls, data: dict) -> "ActionData":
        if "so_n" in data:
            return so_n_action(int(data["so_n"]))
        try:
            g = LieAlgebra.from_json(data["algebra"])
            fields = {l: PolyField.from_json(v) for l, v in data["fields"].items()}
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValueError(f"malformed action: {exc}") from exc
        return cls(g, fields)


def so_n_action(n: int) -> ActionData:
    """so(n) on R^n with ``v_(A_ab) = (-1)^(1+a+b) (x^a d_b - x^b d_a)``."""
    if n < 2:
        raise ValueError("so(n) needs n >= 2")
    g = so_algebra(n)
    fields = {}
    idx = 0
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            s = -1 if (1 + a + b) % 2 else 1
            comps = {(b - 1,): Poly.var(n, a - 1).scale(s), (a - 1,): Poly.var(n, b - 1).scale(-s)}
            fields[g.labels[idx]] = PolyField(n, 1, comps)
            idx += 1
    return ActionData(g, fields)


# --- comoment candidates ----------------------------------------------------------------

class ComomentCandidate:
    """Components ``f_k: Lambda^k g -> Omega^(n-k)`` for ``1 <= k <= n``."""

    def __init__(self, action: ActionData, n: int, components: dict):
        self.action, self.n = action, n
        g = action.algebra
        self.components: dict = {}
        for k, table in components.items():
            k = int(k)
            if not 1 <= k <= n:
                raise ValueError(f"component index {k} outside 1..{n}")
            store = {}
            for labels, form in table.items():
                key, s = g.wedge_canonical(tuple(labels))
                if s == 0:
                    continue
                if form.comps and form.p != n - k:
                    raise ValueError(f"f_{k} must take values in {n - k}-forms")
                store[key] = store[key] + (form if s == 1 else -form) if key in store else \
                    (form if s == 1 else -form)
            self.components[k] = store

    def value(self, k: int, chain: dict) -> PolyForm:
        """``f_k`` on an element of ``Lambda^k g``; zero outside ``1..n``."""
        N = self.action.N
        out = PolyForm(N, self.n - k)
        if not 1 <= k <= self.n:
            return out
        g = self.action.algebra
        table = self.components.get(k, {})
        for labels, c in chain.items():
            key, s = g.wedge_canonical(tuple(labels))
            if s == 0 or key not in table:
                continue
            out = out + table[key].scale(c * s)
        return out

    def shifted(self, other: dict) -> "ComomentCandidate":
        comps = {}
        for k in range(1, self.n + 1):
            keys = set(self.components.get(k, {})) | set(other.get(k, {}))
            comps[k] = {key: self.components.get(k, {}).get(key, PolyForm(self.action.N, self.n - k))
                        + other.get(k, {}).get(key, PolyForm(self.action.N, self.n - k))
                        for key in keys}
        return ComomentCandidate(self.action, self.n, comps)

    def to_json(self) -> dict:
        return {str(k): {",".join(key): form.to_json() for key, form in sorted(tbl.items())}
                for k, tbl in sorted(self.components.items())}

    @classmethod
    def from_json(cls, action: ActionData, n: int, data: dict) -> "ComomentCandidate":
        try:
            comps = {int(k): {tuple(key.split(",")): PolyForm.from_json(v) for key, v in tbl.items()}
                     for k, tbl in data.items()}
        except (AttributeError, TypeError, KeyError) as exc:
            raise ValueError(f"malformed comoment: {exc}") from exc
        for tbl in comps.values():
            for key in tbl:
                unknown = set(key) - set(action.algebra.labels)
                if unknown:
                    raise ValueError(f"unknown generators {sorted(unknown)}")
        return cls(action, n, comps)


def _iota_v(A: ActionData, labels, form: PolyForm) -> PolyForm:
    return iota_seq(A.tuple_fields(labels), form)


def _iota_chain(A: ActionData, chain: dict, form: PolyForm, k: int) -> PolyForm:
    out = PolyForm(form.N, form.p - k)
    for labels, c in chain.items():
        out = out + _iota_v(A, labels, form).scale(c)
    return out


def _sign(k: int, form: PolyForm) -> PolyForm:
    return form if varsigma(k) == 1 else -form


def verify_comoment(f: ComomentCandidate, A: ActionData, M: MssSpace) -> Report:
    """Check ``-f_(k-1)(dp) = d f_k(p) + s(k) iota(v_p) omega`` for all basis p, ``1 <= k <= n+1``."""
    report = Report(True)
    bad = A.preserves(M.omega)
    if bad is not None:
        return _fail(report, reason="action does not preserve omega", generator=bad)
    g, n = A.algebra, M.n
    for k in range(1, n + 2):
        for p in combinations(g.labels, k):
            chain = {p: Fraction(1)}
            lhs = -f.value(k - 1, g.ce_boundary(chain)) if k > 1 else PolyForm(M.N, n)
            rhs = f.value(k, chain).d() + _sign(k, _iota_v(A, p, M.omega))
            report.checked += 1
            residual = lhs - rhs
            if residual:
                return _fail(report, k=k, p=list(p), residual=residual.to_json())
    return report


def mu_aux(f: ComomentCandidate, A: ActionData, M: MssSpace, k: int, p) -> PolyForm:
    """``f_(k-1)(dp) + s(k) iota(v_p) omega``, a closed form."""
    if not 2 <= k <= M.n + 1:
        raise ValueError("mu_aux needs 2 <= k <= n+1")
    g = A.algebra
    chain = {tuple(p): Fraction(1)}
    out = f.value(k - 1, g.ce_boundary(chain)) + _sign(k, _iota_v(A, p, M.omega))
    if out.d():
        raise AssertionError("mu_aux is not closed")
    return out


def comoment_from_potential(alpha: PolyForm, A: ActionData, M: MssSpace) -> ComomentCandidate:
    """``f_k(q) = (-1)^(k-1) s(k) iota(v_q) alpha`` for an invariant potential ``alpha``."""
    if alpha.d() != M.omega:
        raise ValueError("alpha is not a potential of omega")
    bad = A.preserves(alpha)
    if bad is not None:
        raise ValueError(f"alpha is not invariant under {bad}")
    comps = {}
    for k in range(1, M.n + 1):
        s = (-1) ** (k - 1) * varsigma(k)
        comps[k] = {p: _iota_v(A, p, alpha).scale(s) for p in combinations(A.algebra.labels, k)}
    return ComomentCandidate(A, M.n, comps)


def euler_potential(N: int) -> PolyForm:
    """``iota_E vol / N``, the rotation-invariant primitive of the volume form."""
    vol = PolyForm(N, N, {tuple(range(N)): Poly.const(N, 1)})
    return vol.iota(PolyField.euler(N)).scale(Fraction(1, N))


def equivariance_report(f: ComomentCandidate, A: ActionData) -> Report:
    """Check ``L_(v_xi) f_k(p) = f_k([xi, p])`` on generators and basis tuples."""
    report = Report(True)
    g = A.algebra
    for k in range(1, f.n + 1):
        for p in combinations(g.labels, k):
            chain = {p: Fraction(1)}
            for xi in g.labels:
                lhs = f.value(k, chain).lie(A.fields[xi])
                rhs = f.value(k, g.adjoint_on_wedge({xi: 1}, chain))
                report.checked += 1
                if lhs != rhs:
                    return _fail(report, k=k, p=list(p), xi=xi, residual=(lhs - rhs).to_json())
    return report


def gauge_shift_comoment(f: ComomentCandidate, B: PolyForm, A: ActionData, M: MssSpace):
    """``f~_k = f_k + b_k`` with ``b_k(p) = s(k+1) iota(v_p) B``; returns ``(f~, M~)``.

    The sign makes ``b_1(xi) = iota(v_xi) B``, matching the gauge map ``tau_B``.
    """
    bad = A.preserves(B)
    if bad is not None:
        raise ValueError(f"B is not strictly conserved along {bad}")
    M2 = MssSpace(M.N, M.n, M.omega + B.d(), M.D)
    shift = {}
    for k in range(1, M.n + 1):
        shift[k] = {p: _sign(k + 1, _iota_v(A, p, B)) for p in combinations(A.algebra.labels, k)}
    return f.shifted(shift), M2


# --- induced comoments ---------------------------------------------------------------------

def _to_fraction(v) -> Fraction:
    r = sympy.Rational(v)
    return Fraction(int(r.p), int(r.q))


def _subalgebra(g: LieAlgebra, gens: list, prefix: str = "h") -> tuple:
    """A Lie algebra on the span of ``gens`` (closed under the bracket) and its inclusion."""
    labels = [f"{prefix}{i + 1}" for i in range(len(gens))]
    M = sympy.Matrix(g.dim, len(gens), lambda r, c: sympy.Rational(
        *(_pq(gens[c].get(g.labels[r], 0)))))
    consts = {}
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            br = g.bracket(gens[i], gens[j])
            b = sympy.Matrix(g.dim, 1, lambda r, _: sympy.Rational(*_pq(br.get(g.labels[r], 0))))
            try:
                sol, params = M.gauss_jordan_solve(b)
            except ValueError:
                raise ValueError("generators do not span a subalgebra") from None
            sol = sol.subs({p: 0 for p in params})
            val = {labels[k]: _to_fraction(v) for k, v in enumerate(sol) if v != 0}
            if val:
                consts[(labels[i], labels[j])] = val
    h = LieAlgebra(labels, consts)
    return h, dict(zip(labels, gens))


def _pq(q):
    q = Fraction(q)
    return q.numerator, q.denominator


def restrict_to_subalgebra(f: ComomentCandidate, A: ActionData, inclusion: dict,
                           h: LieAlgebra | None = None):
    """``f o j`` for ``j: h -> g``; returns ``(comoment, action)`` of the subalgebra."""
    g = A.algebra
    if h is None:
        h, inclusion = _subalgebra(g, list(inclusion.values()))
    for a, b in combinations(h.labels, 2):
        lhs = {}
        for l, c in h.bracket({a: 1}, {b: 1}).items():
            for k, v in inclusion[l].items():
                lhs[k] = lhs.get(k, 0) + c * v
        rhs = g.bracket(inclusion[a], inclusion[b])
        if {k: v for k, v in lhs.items() if v} != rhs:
            raise ValueError(f"inclusion is not a Lie algebra morphism on {(a, b)}")
    sub_action = ActionData(h, {l: A.field(inclusion[l]) for l in h.labels})
    comps = {}
    for k in range(1, f.n + 1):
        comps[k] = {q: f.value(k, g.wedge(*({(l,): c for l, c in inclusion[x].items()} for x in q)))
                    for q in combinations(h.labels, k)}
    return ComomentCandidate(sub_action, f.n, comps), sub_action


def pullback_to_subspace(f: ComomentCandidate, A: ActionData, M: MssSpace, matrix):
    """``i^* o f`` for a linear invariant subspace spanned by the columns of ``matrix``."""
    Amat = [[as_rational(a) for a in row] for row in matrix]
    N, Np = len(Amat), len(Amat[0])
    if N != M.N:
        raise ValueError("matrix rows must match the ambient dimension")
    S = sympy.Matrix(N, Np, lambda r, c: sympy.Rational(*_pq(Amat[r][c])))
    if S.rank() != Np:
        raise ValueError("inclusion matrix must have independent columns")
    left = (S.T * S).inv() * S.T
    images = [Poly(Np, {tuple(1 if k == j else 0 for k in range(Np)): Amat[i][j] for j in range(Np)})
              for i in range(N)]
    new_fields = {}
    for l, v in A.fields.items():
        vals = [v.component(i).substitute(images) for i in range(N)]
        w = [Poly(Np) for _ in range(Np)]
        for r in range(Np):
            for i in range(N):
                c = _to_fraction(left[r, i])
                if c:
                    w[r] = w[r] + vals[i].scale(c)
        back = [Poly(Np) for _ in range(N)]
        for i in range(N):
            for r in range(Np):
                if Amat[i][r]:
                    back[i] = back[i] + w[r].scale(Amat[i][r])
        if any(back[i] != vals[i] for i in range(N)):
            raise ValueError(f"subspace is not invariant under {l}")
        new_fields[l] = PolyField.vector(w)
    sub_action = ActionData(A.algebra, new_fields)
    omega2 = M.omega.pullback(Amat)
    M2 = MssSpace(Np, M.n, omega2, M.D, check_nondegenerate=False)
    comps = {k: {key: form.pullback(Amat) for key, form in tbl.items()} for k, tbl in f.components.items()}
    return ComomentCandidate(sub_action, f.n, comps), sub_action, M2


def lie_kernel_comoment(f: ComomentCandidate, A: ActionData, M: MssSpace, p: dict):
    """``f^p_i(q) = -s(k) f_(i+k)(q ^ p)`` on the isotropy algebra ``g_p`` of a cycle ``p``.

    With ``iota(x_1 ^ .. ^ x_k) = iota_(x_k) .. iota_(x_1)`` this is the sign
    that solves the comoment equations for ``iota(v_p) omega``.

    Returns ``(comoment, action, M_p, alternative)`` where ``M_p`` carries
    ``iota(v_p) omega`` and ``alternative`` is the second formula
    ``(-1)^k iota(v_q) f_k(p)``, kept for comparison.
    """
    g = A.algebra
    ks = {len(t) for t in p}
    if len(ks) != 1:
        raise ValueError("p must be homogeneous")
    k = ks.pop()
    if g.ce_boundary(p):
        raise ValueError("p is not a cycle")
    gens = _isotropy(g, p)
    if not gens:
        raise ValueError("isotropy algebra is trivial")
    h, inclusion = _subalgebra(g, gens, "q")
    sub_action = ActionData(h, {l: A.field(inclusion[l]) for l in h.labels})
    omega_p = _iota_chain(A, p, M.omega, k)
    n2 = M.n - k
    Mp = MssSpace(M.N, n2, omega_p, M.D, check_nondegenerate=False)
    comps, alt = {}, {}
    fkp = f.value(k, p)
    for i in range(1, n2 + 1):
        comps[i], alt[i] = {}, {}
        for q in combinations(h.labels, i):
            qchain = g.wedge(*({(l,): c for l, c in inclusion[x].items()} for x in q))
            comps[i][q] = -_sign(k, f.value(i + k, g.wedge(qchain, p)))
            val = iota_seq(sub_action.tuple_fields(q), fkp)
            alt[i][q] = val if k % 2 == 0 else -val
    return (ComomentCandidate(sub_action, n2, comps), sub_action, Mp,
            ComomentCandidate(sub_action, n2, alt))


def _isotropy(g: LieAlgebra, p: dict) -> list:
    cols = [g.adjoint_on_wedge({l: 1}, p) for l in g.labels]
    keys = sorted({t for c in cols for t in c})
    if not keys:
        return [{l: Fraction(1)} for l in g.labels]
    A = sympy.Matrix(len(keys), g.dim, lambda r, c: sympy.Rational(*_pq(cols[c].get(keys[r], 0))))
    out = []
    for vec in A.nullspace():
        out.append({g.labels[i]: _to_fraction(v) for i, v in enumerate(vec) if v != 0})
    return out


def comoment_discrepancy(a: ComomentCandidate, b: ComomentCandidate) -> dict:
    """Components where two comoments differ, as ``{k: [tuples]}``."""
    out = {}
    for k in range(1, a.n + 1):
        keys = set(a.components.get(k, {})) | set(b.components.get(k, {}))
        diff = sorted(key for key in keys
                      if a.value(k, {key: 1}) != b.value(k, {key: 1}))
        if diff:
            out[k] = [list(d) for d in diff]
    return out


def induced_comoment(mode: str, f: ComomentCandidate, A: ActionData, M: MssSpace, data):
    """Dispatch for the three induced constructions.

    ``subalgebra``: ``data`` maps new labels to elements of g;
    ``submanifold``: ``data`` is the inclusion matrix;
    ``lie-kernel``: ``data`` is a cycle in ``Lambda^k g``.
    Returns ``(comoment, action, mss)``.
    """
    if mode == "subalgebra":
        c, act = restrict_to_subalgebra(f, A, data)
        return c, act, M
    if mode == "submanifold":
        return pullback_to_subspace(f, A, M, data)
    if mode == "lie-kernel":
        c, act, Mp, _ = lie_kernel_comoment(f, A, M, data)
        return c, act, Mp
    raise ValueError(f"unknown mode {mode!r}")


# --- obstruction cocycle ---------------------------------------------------------------------

def obstruction_cocycle(A: ActionData, M: MssSpace, point) -> dict:
    """``c_p(x_1..x_(n+1)) = (iota(v_1 ^ .. ^ v_(n+1)) omega)(point)`` on basis tuples."""
    point = [as_rational(c) for c in point]
    out = {}
    for t in combinations(A.algebra.labels, M.n + 1):
        val = _iota_v(A, t, M.omega)
        c = val.comps.get((), Poly(M.N))(point) if val.comps else Fraction(0)
        if c:
            out[t] = c
    return out


def cochain_on(g: LieAlgebra, cochain: dict, chain: dict) -> Fraction:
    total = Fraction(0)
    for t, c in chain.items():
        key, s = g.wedge_canonical(tuple(t))
        if s:
            total += c * s * cochain.get(key, 0)
    return total


def check_cocycle(g: LieAlgebra, cochain: dict, degree: int) -> Report:
    """``(delta c)(x) = c(dx)`` vanishes on every basis element of ``Lambda^(degree+1) g``."""
    report = Report(True)
    for t in combinations(g.labels, degree + 1):
        val = cochain_on(g, cochain, g.ce_boundary({t: Fraction(1)}))
        report.checked += 1
        if val:
            return _fail(report, tuple=list(t), value=format_rational(val))
    return report


# --- comoments as L-infinity morphisms and the pentagon -------------------------------------

def comoment_morphism(f: ComomentCandidate, A: ActionData, M: MssSpace) -> LInftyMorphism:
    """The skew L-infinity morphism ``g -> observables`` with ``(f)_1 = (v, f_1)`` and ``(f)_k = f_k``."""
    g = A.algebra
    src = g.as_linfty()
    tgt = rogers_structure(M)
    comps = {}
    for k in range(1, M.n + 1):
        tm = TableMap(g.space, M.space, k, 1 - k, "skew", name=f"f{k}")
        for p in combinations(g.labels, k):
            form = f.value(k, {p: 1})
            if k == 1:
                val = Section(0, A.fields[p[0]], form)
            else:
                val = Section(1 - k, None, form)
            if val:
                tm.table[p] = val
        comps[k] = tm
    return LInftyMorphism(src, tgt, comps)


def pentagon_defect(M: MssSpace, B: PolyForm, f: ComomentCandidate, A: ActionData, m: int,
                    phi_overrides: dict | None = None):
    """``(tau_B o Phi o f)_m - (Phi o f~)_m`` as a map on ``Lambda^m g``."""
    f_tilde, M2 = gauge_shift_comoment(f, B, A, M)
    top = max(m, M.n + 1)
    left = compose_morphisms(phi_morphism(M, top, phi_overrides), comoment_morphism(f, A, M), m)
    right = compose_morphisms(phi_morphism(M2, top, phi_overrides), comoment_morphism(f_tilde, A, M2), m)
    lm, rm = left.components.get(m), right.components.get(m)
    space = M.space

    def fn(xs):
        a = gauge_tau(B, lm.evaluate(xs)) if lm is not None else Section.zero()
        b = rm.evaluate(xs) if rm is not None else Section.zero()
        return a - b

    return FnMap(A.algebra.space, space, m, 1 - m, "skew", fn, f"pentagon{m}")


def pentagon_report(M: MssSpace, B: PolyForm, f: ComomentCandidate, A: ActionData, max_m: int,
                    phi_overrides: dict | None = None):
    maps = {m: pentagon_defect(M, B, f, A, m, phi_overrides) for m in range(1, max_m + 1)}
    return check_maps_vanish(maps, A.algebra.space, "skew")


__all__ = [
    "ActionData", "so_n_action", "ComomentCandidate", "verify_comoment", "mu_aux",
    "comoment_from_potential", "euler_potential", "equivariance_report", "gauge_shift_comoment",
    "restrict_to_subalgebra", "pullback_to_subspace", "lie_kernel_comoment", "comoment_discrepancy",
    "induced_comoment", "obstruction_cocycle", "check_cocycle", "comoment_morphism",
    "pentagon_defect", "pentagon_report", "Report",
]
