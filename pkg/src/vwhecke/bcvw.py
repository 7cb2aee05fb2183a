"""The type B/C VW-algebra as a presentation plus an exact relation checker.

Generators are named t1..t{k-1} (adjacent transpositions), e1..e{k-1}
(contractions), z1..zk (affine elements) and theta1..thetak (sign changes).
Relations with a scalar parameter (m0, m1, w_l) are checked as
proportionality; the scalar is then read off, never assumed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .exactlin import ONE, ZERO, ExactMatrix, GaussRat, NoSolution, gr, solve_linear, vectorize
from .liealg import (GroupSpec, LieAlgebraData, swap_sign_on_trivial_line,
                     transposition_sign)
from .tensorops import (TensorSpace, build_omega, build_swap, build_trivial_projector,
                        build_xi_leg, diagonal_action)


class NotScalarPlusTheta(ArithmeticError):
    pass


# ---------------------------------------------------------------- data types

@dataclass
class Assignment:
    k: int
    matrices: Dict[str, ExactMatrix]
    label: str = ""
    k_action: List[ExactMatrix] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return next(iter(self.matrices.values())).rows if self.matrices else 1

    def __getitem__(self, sym: str) -> ExactMatrix:
        return self.matrices[sym]

    def identity(self) -> ExactMatrix:
        return ExactMatrix.identity(self.dim)

    def validate(self):
        dims = {(m.rows, m.cols) for m in self.matrices.values()}
        if len(dims) > 1 or any(r != c for r, c in dims):
            raise ValueError("assignment matrices must be square of one size")


@dataclass
class RelationResult:
    relation_id: str
    instance: str
    latex_form: str
    status: str  # "pass" | "fail" | "skip"
    derived: Dict[str, str] = field(default_factory=dict)
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "relation_id": self.relation_id,
            "instance": self.instance,
            "latex_form": self.latex_form,
            "status": self.status,
            "derived_constants": dict(self.derived),
            "note": self.note,
        }


@dataclass
class RelationReport:
    label: str
    results: List[RelationResult]
    derived: Dict[str, Optional[GaussRat]]

    @property
    def all_passed(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def failures(self) -> List[RelationResult]:
        return [r for r in self.results if r.status == "fail"]

    def by_id(self, rid: str) -> List[RelationResult]:
        return [r for r in self.results if r.relation_id == rid]

    def status_of(self, rid: str) -> str:
        st = {r.status for r in self.by_id(rid)}
        if not st:
            return "absent"
        if "fail" in st:
            return "fail"
        return "pass" if "pass" in st else "skip"

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "all_passed": self.all_passed,
            "relations": [r.to_dict() for r in self.results],
            "derived_constants": {k: (None if v is None else str(v)) for k, v in sorted(self.derived.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


@dataclass(frozen=True)
class Relation:
    rid: str
    latex: str
    group: str  # "weyl" | "brauer" | "vw" | "bc" | "quotient"
    check: Callable[["_Ctx"], List[RelationResult]]


@dataclass
class Presentation:
    k: int
    relations: List[Relation]

    @property
    def generators(self) -> List[str]:
        k = self.k
        return ([f"t{i}" for i in range(1, k)] + [f"e{i}" for i in range(1, k)]
                + [f"z{i}" for i in range(1, k + 1)] + [f"theta{j}" for j in range(1, k + 1)])

    def ids(self) -> List[str]:
        return [r.rid for r in self.relations]

    def latex(self) -> Dict[str, str]:
        return {r.rid: r.latex for r in self.relations}


# ---------------------------------------------------------------- helpers

class _Ctx:
    def __init__(self, a: Assignment, params: Dict[str, Optional[GaussRat]]):
        self.a = a
        self.k = a.k
        self.I = a.identity()
        self.params = params
        self.derived: Dict[str, Optional[GaussRat]] = {}

    def m(self, sym: str) -> ExactMatrix:
        return self.a.matrices[sym]


def proportional(lhs: ExactMatrix, rhs: ExactMatrix) -> Tuple[bool, Optional[GaussRat]]:
    """(True, s) if lhs = s * rhs; s is None when rhs = 0 = lhs."""
    if rhs.is_zero():
        return lhs.is_zero(), None
    (r, c), v = next(iter(sorted(rhs.entries.items())))
    s = lhs[r, c] / v
    return lhs == rhs.scale(s), s


def _res(rid, inst, latex, ok, **derived) -> RelationResult:
    return RelationResult(rid, inst, latex, "pass" if ok else "fail",
                          {k: str(v) for k, v in derived.items() if v is not None})


def _comm(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a @ b - b @ a


def _scalar_relation(ctx: _Ctx, rid, inst, latex, lhs, rhs, key) -> RelationResult:
    """lhs = key * rhs, with key given in params or derived and kept consistent."""
    fixed = ctx.params.get(key)
    if fixed is not None:
        return _res(rid, inst, latex, lhs == rhs.scale(fixed), **{key: fixed})
    ok, s = proportional(lhs, rhs)
    if ok and s is not None:
        prev = ctx.derived.get(key)
        if prev is not None and prev != s:
            r = _res(rid, inst, latex, False, **{key: s})
            r.note = f"inconsistent with earlier {key}={prev}"
            return r
        ctx.derived[key] = s
    return _res(rid, inst, latex, ok, **{key: s})


# ---------------------------------------------------------------- relation bodies

def _weyl(ctx: _Ctx):
    k, I, m = ctx.k, ctx.I, ctx.m
    out = []
    for j in range(1, k + 1):
        th = m(f"theta{j}")
        out.append(_res("W.theta_sq", f"j={j}", r"\theta_j^2 = 1", th @ th == I))
    for i in range(1, k):
        t = m(f"t{i}")
        out.append(_res("W.t_sq", f"i={i}", r"t_{i,i+1}^2 = 1", t @ t == I))
        if i + 1 < k:
            u = m(f"t{i+1}")
            out.append(_res("W.braid", f"i={i}", r"t_{i,i+1}t_{i+1,i+2}t_{i,i+1} = t_{i+1,i+2}t_{i,i+1}t_{i+1,i+2}",
                            t @ u @ t == u @ t @ u))
        for j in range(i + 2, k):
            out.append(_res("W.far", f"i={i},j={j}", r"t_{i,i+1}t_{j,j+1} = t_{j,j+1}t_{i,i+1}",
                            _comm(t, m(f"t{j}")).is_zero()))
    if k >= 2:
        t, th = m(f"t{k-1}"), m(f"theta{k}")
        x = t @ th
        out.append(_res("W.order4", f"k={k}", r"(t_{k-1,k}\theta_k)^4 = 1", x @ x @ x @ x == I))
    for j in range(1, k):
        t = m(f"t{j}")
        out.append(_res("W.theta_conj", f"j={j}", r"\theta_j = t_{j,j+1}\theta_{j+1}t_{j,j+1}",
                        m(f"theta{j}") == t @ m(f"theta{j+1}") @ t))
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            out.append(_res("W.theta_comm", f"i={i},j={j}", r"\theta_i\theta_j = \theta_j\theta_i",
                            _comm(m(f"theta{i}"), m(f"theta{j}")).is_zero()))
    for i in range(1, k):
        for j in range(1, k + 1):
            if j in (i, i + 1):
                continue
            out.append(_res("W.t_theta", f"i={i},j={j}", r"[t_{i,i+1},\theta_j] = 0,\ j \neq i,i+1",
                            _comm(m(f"t{i}"), m(f"theta{j}")).is_zero()))
    return out


def _brauer(ctx: _Ctx):
    k, m = ctx.k, ctx.m
    out = []
    for i in range(1, k):
        e, t = m(f"e{i}"), m(f"t{i}")
        out.append(_scalar_relation(ctx, "B.e_sq", f"i={i}", r"e_{i,i+1}^2 = m_0 e_{i,i+1}", e @ e, e, "m0"))
        out.append(_res("B.te", f"i={i}", r"t_{i,i+1}e_{i,i+1} = e_{i,i+1} = e_{i,i+1}t_{i,i+1}",
                        t @ e == e and e @ t == e))
        if i + 1 < k:
            u = m(f"t{i+1}")
            out.append(_res("B.conj", f"i={i}", r"t_{i,i+1}t_{i+1,i+2}e_{i,i+1}t_{i+1,i+2}t_{i,i+1} = e_{i+1,i+2}",
                            t @ u @ e @ u @ t == m(f"e{i+1}")))
        for j in range(1, k):
            if abs(i - j) < 2:
                continue
            out.append(_res("B.t_e", f"i={i},j={j}", r"[t_{i,i+1},e_{j,j+1}] = 0,\ \{j,j+1\}\cap\{i,i+1\}=\emptyset",
                            _comm(t, m(f"e{j}")).is_zero()))
    return out


def _vw(ctx: _Ctx):
    k, I, m = ctx.k, ctx.I, ctx.m
    out = []
    for i in range(1, k):
        t, e = m(f"t{i}"), m(f"e{i}")
        zi, zj = m(f"z{i}"), m(f"z{i+1}")
        out.append(_res("V.cross", f"i={i}", r"t_{i,i+1}z_i - z_{i+1}t_{i,i+1} = 1 + e_{i,i+1}",
                        t @ zi - zj @ t == I + e))
        s = zi + zj
        ok = (e @ s).is_zero() and (s @ e).is_zero()
        _, lam = proportional(e @ s, e)
        out.append(_res("V.e_sum", f"i={i}", r"e_{i,i+1}(z_i+z_{i+1}) = 0 = (z_i+z_{i+1})e_{i,i+1}",
                        ok, e_sum_scalar=None if ok else lam))
        for j in range(1, k + 1):
            if j in (i, i + 1):
                continue
            out.append(_res("V.t_z", f"i={i},j={j}", r"[t_{i,i+1},z_j] = 0,\ j\neq i,i+1",
                            _comm(t, m(f"z{j}")).is_zero()))
            out.append(_res("V.e_z", f"i={i},j={j}", r"[e_{i,i+1},z_j] = 0,\ j\neq i,i+1",
                            _comm(e, m(f"z{j}")).is_zero()))
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            out.append(_res("V.z_z", f"i={i},j={j}", r"[z_i,z_j] = 0", _comm(m(f"z{i}"), m(f"z{j}")).is_zero()))
    if k >= 2:
        e, z1 = m("e1"), m("z1")
        zp = I
        for l in (1, 2):
            zp = zp @ z1
            out.append(_scalar_relation(ctx, "V.e_zl_e", f"l={l}", r"e_{12}z_1^l e_{12} = w_l e_{12}",
                                        e @ zp @ e, e, f"w{l}"))
    return out


def _bc(ctx: _Ctx):
    k, m = ctx.k, ctx.m
    out = []
    for i in range(1, k):
        e = m(f"e{i}")
        for j in range(1, k + 1):
            out.append(_res("C.e_theta", f"i={i},j={j}", r"[e_{i,i+1},\theta_j] = 0 \text{ for all } j",
                            _comm(e, m(f"theta{j}")).is_zero()))
        tt = m(f"theta{i}") @ m(f"theta{i+1}")
        out.append(_res("C.e_thth", f"i={i}", r"e_{i,i+1}\theta_i\theta_{i+1} = e_{i,i+1} = \theta_i\theta_{i+1}e_{i,i+1}",
                        e @ tt == e and tt @ e == e))
        out.append(_scalar_relation(ctx, "C.e_th_e", f"i={i}", r"e_{i,i+1}\theta_i e_{i,i+1} = m_1 e_{i,i+1}",
                                    e @ m(f"theta{i}") @ e, e, "m1"))
    for i in range(1, k + 1):
        for j in range(1, i):
            out.append(_res("C.theta_z", f"i={i},j={j}", r"[\theta_i, z_j] = 0,\ j < i",
                            _comm(m(f"theta{i}"), m(f"z{j}")).is_zero()))
    return out


def _anticommutator(ctx: _Ctx):
    """theta_k z_k + z_k theta_k = A + B theta_k (derivation, not a relation)."""
    k = ctx.k
    if k < 1:
        return []
    th, z = ctx.m(f"theta{k}"), ctx.m(f"z{k}")
    A, B = decompose_scalar_plus_theta(th @ z + z @ th, th)
    ok = A is not None
    if ok:
        ctx.derived["A"], ctx.derived["B"] = A, B
    r = _res("D.anticomm", f"k={k}", r"\theta_k z_k + z_k\theta_k = A + B\theta_k", ok, A=A, B=B)
    if not ok:
        r.status = "skip"
        r.note = "anticommutator is not in span{1, theta_k}"
    return [r]


def decompose_scalar_plus_theta(x: ExactMatrix, th: ExactMatrix) -> Tuple[Optional[GaussRat], Optional[GaussRat]]:
    n = x.rows
    basis = ExactMatrix.from_columns([vectorize(ExactMatrix.identity(n)), vectorize(th)], n * n)
    try:
        A, B = solve_linear(basis, vectorize(x))
    except NoSolution:
        return None, None
    return A, B


def _quotient(ctx: _Ctx):
    k, I, m = ctx.k, ctx.I, ctx.m
    out = []
    for i in range(1, k):
        t = m(f"t{i}")
        out.append(_res("Q.cross", f"i={i}", r"t_{i,i+1}z_i - z_{i+1}t_{i,i+1} = 1",
                        t @ m(f"z{i}") - m(f"z{i+1}") @ t == I))
        for j in range(1, k + 1):
            if j in (i, i + 1):
                continue
            out.append(_res("Q.t_z", f"i={i},j={j}", r"[t_{i,i+1},z_j] = 0,\ j\neq i,i+1",
                            _comm(t, m(f"z{j}")).is_zero()))
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            out.append(_res("Q.z_z", f"i={i},j={j}", r"[z_i,z_j] = 0", _comm(m(f"z{i}"), m(f"z{j}")).is_zero()))
    for j in range(1, k):
        out.append(_res("Q.theta_z", f"j={j}", r"[\theta_k, z_j] = 0,\ j\neq k",
                        _comm(m(f"theta{k}"), m(f"z{j}")).is_zero()))
    r, c = ctx.params.get("rShift"), ctx.params.get("cHecke")
    if k >= 1 and r is not None and c is not None:
        th, z = m(f"theta{k}"), m(f"z{k}")
        out.append(_res("Q.ideal", f"k={k}", r"\theta_k z_k + z_k\theta_k = 2c + 2r\theta_k",
                        th @ z + z @ th == I.scale(c * 2) + th.scale(r * 2), rShift=r, cHecke=c))
        eps = z - I.scale(r)
        out.append(_res("Q.eps_anticomm", f"k={k}", r"\theta_k\epsilon_k + \epsilon_k\theta_k = 2c,\ \epsilon_k = z_k - r",
                        th @ eps + eps @ th == I.scale(c * 2), cHecke=c))
    return out


# ---------------------------------------------------------------- presentations

def full_presentation(k: int) -> Presentation:
    return Presentation(k, [
        Relation("W", "W(B_k) Coxeter relations", "weyl", _weyl),
        Relation("B", "Brauer relations", "brauer", _brauer),
        Relation("V", "VW relations", "vw", _vw),
        Relation("C", "type B/C relations", "bc", _bc),
        Relation("D", "anticommutator derivation", "derive", _anticommutator),
    ])


def quotient_presentation(k: int) -> Presentation:
    return Presentation(k, [
        Relation("W", "W(B_k) Coxeter relations", "weyl", _weyl),
        Relation("Q", "relations after e = 0 and the theta_k z_k ideal", "quotient", _quotient),
    ])


def relation_catalogue(k: int = 3) -> List[Tuple[str, str]]:
    """(relation_id, latex) pairs of every relation family, for reports."""
    dummy = ExactMatrix.identity(1)
    syms = full_presentation(k).generators
    a = Assignment(k, {s: dummy for s in syms})
    ctx = _Ctx(a, {"rShift": ZERO, "cHecke": ZERO})
    seen = {}
    for rel in full_presentation(k).relations + quotient_presentation(k).relations:
        for r in rel.check(ctx):
            seen.setdefault(r.relation_id, r.latex_form)
    return sorted(seen.items())


def check_relations(p: Presentation, a: Assignment, params: Optional[Dict[str, GaussRat]] = None,
                    k_commutation: bool = True) -> RelationReport:
    a.validate()
    ctx = _Ctx(a, dict(params or {}))
    results: List[RelationResult] = []
    for rel in p.relations:
        results.extend(rel.check(ctx))
    if k_commutation and a.k_action:
        for sym in p.generators:
            if sym not in a.matrices:
                continue
            g = a.matrices[sym]
            ok = all(_comm(g, kb).is_zero() for kb in a.k_action)
            results.append(_res("K.commute", sym, r"[\pi(g), \rho(b)] = 0,\ b\in\mathfrak{k}", ok))
    return RelationReport(a.label, results, ctx.derived)


def derive_quotient_constants(report: RelationReport) -> Tuple[GaussRat, GaussRat]:
    """(rShift, cHecke) = (B/2, A/2) from theta_k z_k + z_k theta_k = A + B theta_k."""
    A, B = report.derived.get("A"), report.derived.get("B")
    if A is None or B is None:
        raise NotScalarPlusTheta("theta_k z_k + z_k theta_k is not in span{1, theta_k}")
    return B / 2, A / 2


def check_quotient_presentation(p: Presentation, a: Assignment, consts: Tuple[GaussRat, GaussRat]) -> RelationReport:
    r, c = consts
    ctx = _Ctx(a, {"rShift": gr(r), "cHecke": gr(c)})
    results = []
    e_zero = all(a.matrices[f"e{i}"].is_zero() for i in range(1, a.k) if f"e{i}" in a.matrices)
    pre = _res("Q.precondition", "e=0", r"e_{i,i+1} = 0", e_zero)
    if not e_zero:
        pre.note = "idempotents do not vanish; quotient relations are not expected to hold"
    results.append(pre)
    for rel in p.relations:
        results.extend(rel.check(ctx))
    return RelationReport(a.label, results, ctx.derived)


# ---------------------------------------------------------------- assignments

def printed_brauer_parameter(spec: GroupSpec) -> GaussRat:
    """The Brauer parameter as printed: -n for Sp, floor((p+q)/2) for O(p,q)."""
    return gr(-spec.n) if spec.is_sp else gr((spec.p + spec.q) // 2)


def printed_m1(spec: GroupSpec) -> GaussRat:
    return ZERO if spec.is_sp else gr(spec.p - spec.q)


def contraction_scale(data: LieAlgebraData) -> GaussRat:
    """Scalar s with pi(e) = s * pr forced by t z_1 - z_2 t = 1 + e on V (x) V.

    With Omega = x*swap + y*pr and pi(t) = sigma*swap: e = -sigma*y*eta*pr where
    eta is the swap eigenvalue on the invariant line.
    """
    sigma = transposition_sign(data.spec)
    eta = swap_sign_on_trivial_line(data.spec)
    return -gr(sigma) * data.m0 * eta


def standard_assignment(data: LieAlgebraData, k: int, mode: str = "derived") -> Assignment:
    """pi on V^{(x)k}: t -> sigma*swap, e -> s*pr, z_i -> sum_{j<i} Omega_{ji}, theta_i -> xi_i.

    mode "derived" uses the sign and scale forced by the VW relations;
    mode "literal" uses pi(t) = swap and e = m*pr with the printed m (data should
    then be calibrated with swap coefficient +1).
    """
    spec = data.spec
    space = TensorSpace(data.dimV, k)
    if mode == "derived":
        sigma = gr(transposition_sign(spec))
        escale = contraction_scale(data)
    elif mode == "literal":
        sigma = ONE
        escale = printed_brauer_parameter(spec)
    else:
        raise ValueError("mode must be 'derived' or 'literal'")
    mats: Dict[str, ExactMatrix] = {}
    for i in range(1, k):
        mats[f"t{i}"] = build_swap(space, i, i + 1).matrix.scale(sigma)
        mats[f"e{i}"] = build_trivial_projector(space, data, i).matrix.scale(escale)
    for j in range(1, k + 1):
        mats[f"theta{j}"] = build_xi_leg(space, data, j).matrix
    for i in range(1, k + 1):
        acc = ExactMatrix.zeros(space.totalDim)
        for j in range(1, i):
            acc = acc + build_omega(space, data, j, i).matrix
        mats[f"z{i}"] = acc
    kact = [diagonal_action(space, b) for b in data.basisK]
    return Assignment(k, mats, f"{spec} V^{k} ({mode})", kact)


def w0_centrality(a: Assignment) -> Dict[str, bool]:
    """pi(w0) = theta_1...theta_k commutes with every t and e image."""
    w0 = a.identity()
    for j in range(1, a.k + 1):
        w0 = w0 @ a.matrices[f"theta{j}"]
    out = {}
    for sym, m in a.matrices.items():
        if sym[0] in "te" and not sym.startswith("theta"):
            out[sym] = _comm(w0, m).is_zero()
    return out


def printed_constants(spec: GroupSpec) -> Dict[str, GaussRat]:
    return {"m0": printed_brauer_parameter(spec), "m1": printed_m1(spec)}
