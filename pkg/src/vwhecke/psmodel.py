"""Finite models of the functor images of minimal principal series modules.

The model of F_{mu,k}(X_delta^nu) is the M-invariant part of
mu* (x) 1_delta (x) V^{(x)k}. Since mu and delta are one-dimensional, their
M-values are folded into the fixed-vector condition on V^{(x)k}. The module
leg (leg 0) is handled by substitution: b acting on the cyclic vector is
replaced by scalars on its a- and k-parts and by zero on its n-part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from .bcvw import (Assignment, RelationReport, check_quotient_presentation, check_relations,
                   contraction_scale, derive_quotient_constants, full_presentation,
                   quotient_presentation)
from .exactlin import (ONE, ZERO, ExactMatrix, GaussRat, NoSolution, gr, inverse, kernel_basis,
                       rank, solve_linear, solve_many, span_basis, vectorize, vstack)
from .heckealg import HeckeModule, HeckeParams, principal_series
from .liealg import (GroupSpec, LieAlgebraData, build_algebra, casimir, dmu, f_vector,
                     iwasawa_coefficients, iwasawa_decompose, normalize_character, rho,
                     transposition_sign)
from .tensorops import (TensorSpace, build_omega, build_swap, build_trivial_projector,
                        build_xi_leg, diagonal_action, embed_one)
from .wbgroup import SignedPerm, enumerate_group, longest_element, reduced_word


class DimensionMismatch(ArithmeticError):
    pass


class SubspaceNotPreserved(ArithmeticError):
    pass


class IntertwinerFails(ArithmeticError):
    pass


class NotInvariant(ValueError):
    pass


SIDES = ("mu", "mubar")


# ---------------------------------------------------------------- spec

@dataclass(frozen=True)
class PsSpec:
    """A minimal principal series X_delta^nu together with the functor side.

    deltaK counts the generators of M on which delta is -1; sigma is the
    O(p-q) factor of delta (O(p,q) only). For O(p,q) the default convention
    puts the -1 values on the last q-k generators, which is the placement the
    character table needs; "literal" puts them on the first k.
    """

    group: GroupSpec
    deltaK: int
    nu: Tuple[GaussRat, ...]
    side: str = "mu"
    sigma: str = "triv"
    delta_convention: str = "table"

    def __post_init__(self):
        object.__setattr__(self, "nu", tuple(gr(x) for x in self.nu))
        n = self.group.rank
        if not 0 <= self.deltaK <= n:
            raise ValueError(f"deltaK must lie in 0..{n}")
        if len(self.nu) != n:
            raise ValueError(f"nu must have length {n}")
        if self.side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}")
        if self.sigma not in ("triv", "det"):
            raise ValueError("sigma must be triv or det")
        if self.delta_convention not in ("table", "literal"):
            raise ValueError("delta_convention must be table or literal")

    @property
    def n(self) -> int:
        return self.group.rank

    @property
    def legs(self) -> int:
        return self.deltaK if self.side == "mu" else self.n - self.deltaK

    @property
    def mu(self) -> str:
        """The K-character of the chosen side."""
        return character_pair(self.group, self.sigma)[0 if self.side == "mu" else 1]

    def delta_on_generators(self) -> Tuple[int, ...]:
        n, k = self.n, self.deltaK
        if self.group.is_sp or self.delta_convention == "literal":
            return tuple(-1 if i <= k else 1 for i in range(1, n + 1))
        return tuple(1 if i <= k else -1 for i in range(1, n + 1))

    @property
    def slots(self) -> Tuple[int, ...]:
        """Slots i whose generator m_i must act by -1 on the V legs."""
        return tuple(i for i, (m, tw) in enumerate(_twisted_generators(self)[: self.n], start=1) if tw == -1)

    @property
    def lam(self) -> Tuple[GaussRat, ...]:
        """The restricted character (nu on the occupied slots)."""
        return tuple(self.nu[s - 1] for s in self.slots)

    def describe(self) -> dict:
        return {"group": str(self.group), "deltaK": self.deltaK, "nu": [str(x) for x in self.nu],
                "side": self.side, "sigma": self.sigma, "mu": self.mu, "legs": self.legs,
                "slots": list(self.slots), "delta_convention": self.delta_convention}


def character_pair(spec: GroupSpec, sigma: str = "triv") -> Tuple[str, str]:
    """(mu, mubar) attached to a character of M."""
    if spec.is_sp:
        return ("triv", "det")
    return ("triv⊗det", "triv⊗triv") if sigma == "triv" else ("det⊗triv", "det⊗det")


def _character_on_diag(spec: GroupSpec, mu: str, diag: Sequence[int]) -> int:
    mu = normalize_character(spec, mu)
    if spec.is_sp:
        if mu == "triv":
            return 1
        out = 1
        for x in diag[: spec.n]:
            out *= x
        return out
    left, right = mu.split("⊗")
    out = 1
    if left == "det":
        for x in diag[: spec.p]:
            out *= x
    if right == "det":
        for x in diag[spec.p:]:
            out *= x
    return out


def _twisted_generators(ps: PsSpec) -> List[Tuple[ExactMatrix, Optional[int]]]:
    """M generators on V with the eigenvalue they must have on the legs.

    The first n entries are the slot generators m_1..m_n. A None twist marks a
    Lie algebra generator of O(p-q) that must act by zero.
    """
    spec = ps.group
    N = spec.dimV
    delta = ps.delta_on_generators()
    out: List[Tuple[ExactMatrix, Optional[int]]] = []
    for i in range(1, spec.rank + 1):
        d = [1] * N
        if spec.is_sp:
            d[i - 1] = d[spec.n + i - 1] = -1
        else:
            d[spec.p - i] = d[spec.p + i - 1] = -1
        out.append((ExactMatrix.diag(d), delta[i - 1] * _character_on_diag(spec, ps.mu, d)))
    if not spec.is_sp:
        r = spec.p - spec.q
        if r >= 1:
            d = [1] * N
            d[0] = -1
            sig = -1 if ps.sigma == "det" else 1
            out.append((ExactMatrix.diag(d), sig * _character_on_diag(spec, ps.mu, d)))
        for a in range(1, r + 1):
            for b in range(a + 1, r + 1):
                out.append((ExactMatrix.from_entries(N, N, {(a - 1, b - 1): 1, (b - 1, a - 1): -1}), None))
    return out


# ---------------------------------------------------------------- model space

@dataclass
class ModelSpace:
    ps: PsSpec
    data: LieAlgebraData
    ambient: TensorSpace
    invariantBasis: List[Tuple[GaussRat, ...]]
    labeledBasis: List[Tuple[GaussRat, ...]]
    labels: List[SignedPerm]
    cyclic: int = 0
    generatorMatrices: Dict[str, ExactMatrix] = field(default_factory=dict)
    ambientOperators: Dict[str, ExactMatrix] = field(default_factory=dict)
    order: str = "right"
    induction: str = "normalized"

    @property
    def k(self) -> int:
        return self.ambient.k

    @property
    def dim(self) -> int:
        return len(self.labeledBasis)

    @cached_property
    def basis_matrix(self) -> ExactMatrix:
        return ExactMatrix.from_columns(self.labeledBasis, self.ambient.totalDim)

    def restrict(self, op: ExactMatrix, name: str = "operator") -> ExactMatrix:
        """Matrix of op on the labeled basis; SubspaceNotPreserved if op leaves it."""
        if self.dim == 0:
            return ExactMatrix.zeros(0)
        B = self.basis_matrix
        images = [op.apply(B.column(j)) for j in range(B.cols)]
        try:
            cols = solve_many(B, images)
        except NoSolution as exc:
            raise SubspaceNotPreserved(f"{name} does not preserve the model") from exc
        return ExactMatrix.from_columns(cols, self.dim)

    def cyclic_vector(self) -> Tuple[GaussRat, ...]:
        return tuple(ONE if i == self.cyclic else ZERO for i in range(self.dim))

    def group_matrix(self, w: SignedPerm) -> ExactMatrix:
        k = self.k
        acc = ExactMatrix.identity(self.dim)
        for j in reduced_word(w):
            acc = acc @ self.generatorMatrices[f"t{j}" if j < k else f"theta{k}"]
        return acc

    def assignment(self) -> Assignment:
        return Assignment(self.k, dict(self.generatorMatrices), f"model {self.ps.describe()}")


def _full_action(space: TensorSpace, m: ExactMatrix) -> ExactMatrix:
    acc = ExactMatrix.identity(space.totalDim)
    for l in range(1, space.k + 1):
        acc = acc @ embed_one(space, l, m)
    return acc


def invariants_by_kernel(ps: PsSpec) -> List[Tuple[GaussRat, ...]]:
    """Joint fixed space of the twisted M-action, by exact kernel computation."""
    space = TensorSpace(ps.group.dimV, ps.legs)
    T = space.totalDim
    if ps.legs == 0:
        ok = all(tw in (None, 1) for _, tw in _twisted_generators(ps))
        return [(ONE,)] if ok else []
    rows = []
    for m, tw in _twisted_generators(ps):
        if tw is None:
            rows.append(diagonal_action(space, m))
        else:
            rows.append(_full_action(space, m) - ExactMatrix.identity(T).scale(tw))
    return kernel_basis(vstack(rows))


def invariants_by_orbit(ps: PsSpec) -> Tuple[List[Tuple[GaussRat, ...]], List[SignedPerm]]:
    """The W(B_k)-orbit of f_{s_1} (x) ... (x) f_{s_k} over the occupied slots s_i."""
    k = ps.legs
    slots = ps.slots
    if len(slots) != k:
        raise DimensionMismatch(f"{len(slots)} slots need a leg but the functor has {k} legs")
    space = TensorSpace(ps.group.dimV, k)
    if k == 0:
        return [(ONE,)], [SignedPerm(())]
    vecs, labs = [], []
    for w in enumerate_group(k):
        fs = [f_vector(ps.group, slots[abs(w(i)) - 1], 1 if w(i) > 0 else -1) for i in range(1, k + 1)]
        vecs.append(space.product_vector(fs))
        labs.append(w)
    return vecs, labs


def enumerate_m_invariants(ps: PsSpec, data: LieAlgebraData | None = None) -> ModelSpace:
    """Basis part of the model, computed by kernel and by orbit and cross-checked."""
    k = ps.legs
    expected = len(enumerate_group(k))
    kern = invariants_by_kernel(ps)
    if len(kern) != expected:
        raise DimensionMismatch(f"kernel dimension {len(kern)} != {expected}")
    vecs, labs = invariants_by_orbit(ps)
    if len(vecs) != expected or rank(ExactMatrix.from_columns(vecs + kern, len(vecs[0]))) != expected:
        raise DimensionMismatch("orbit vectors do not span the kernel")
    if data is None:
        data = build_algebra(ps.group)
    return ModelSpace(ps, data, TensorSpace(ps.group.dimV, k), kern, vecs, labs, 0)


# ---------------------------------------------------------------- leg 0

def leg0_scalar(ps: PsSpec, data: LieAlgebraData, b: ExactMatrix, induction: str = "normalized") -> GaussRat:
    """Scalar by which b acts on the cyclic vector of X_delta^nu, before the k-legs correction.

    normalized: the a-part acts by rho + s*nu with s the swap coefficient of Omega;
    literal: the a-part acts by nu. The k-part acts by dmu in both.
    """
    _, acoef, _ = iwasawa_coefficients(data, b)
    bK, _, _ = iwasawa_decompose(data, b)
    if induction == "normalized":
        r = rho(data)
        s = data.swap_coefficient
        vals = [r[i] + s * ps.nu[i] for i in range(len(acoef))]
    elif induction == "literal":
        vals = list(ps.nu)
    else:
        raise ValueError("induction must be normalized or literal")
    out = dmu(ps.group, ps.mu, bK)
    for c, v in zip(acoef, vals):
        out = out + c * v
    return out


def leg0_substitute(ps: PsSpec, data: LieAlgebraData, b: ExactMatrix, space: TensorSpace | None = None,
                    induction: str = "normalized") -> ExactMatrix:
    """S(b) = scalar(b) Id - sum over legs of (b_K)_leg on the ambient space."""
    if space is None:
        space = TensorSpace(ps.group.dimV, ps.legs)
    bK, _, _ = iwasawa_decompose(data, b)
    scal = leg0_scalar(ps, data, b, induction)
    I = ExactMatrix.identity(space.totalDim)
    if space.k == 0:
        return I.scale(scal)
    return I.scale(scal) - diagonal_action(space, bK)


def omega0(ps: PsSpec, data: LieAlgebraData, space: TensorSpace, l: int, part: str = "full",
           order: str = "right", induction: str = "normalized") -> ExactMatrix:
    """Omega_{0l} = sum_b (b*)_l S(b) (order right) or S(b) (b*)_l (order left)."""
    if part == "k":
        pairs = zip(data.basisK, data.dualK)
    elif part == "p":
        pairs = zip(data.basisP, data.dualP)
    else:
        pairs = zip(data.basis, data.dual)
    acc = ExactMatrix.zeros(space.totalDim)
    for b, bs in pairs:
        S = leg0_substitute(ps, data, b, space, induction)
        L = embed_one(space, l, bs)
        acc = acc + (L @ S if order == "right" else S @ L)
    return acc


def build_generators(ps: PsSpec, order: str = "right", induction: str = "normalized",
                     data: LieAlgebraData | None = None) -> ModelSpace:
    """The model with all generator matrices restricted to it."""
    if order not in ("right", "left"):
        raise ValueError("order must be right or left")
    model = enumerate_m_invariants(ps, data)
    model.order, model.induction = order, induction
    data, space, k = model.data, model.ambient, model.k
    amb: Dict[str, ExactMatrix] = {}
    if k >= 1:
        sigma = gr(transposition_sign(ps.group))
        escale = contraction_scale(data)
        for i in range(1, k):
            amb[f"t{i}"] = build_swap(space, i, i + 1).matrix.scale(sigma)
            amb[f"e{i}"] = build_trivial_projector(space, data, i).matrix.scale(escale)
        for j in range(1, k + 1):
            amb[f"theta{j}"] = build_xi_leg(space, data, j).matrix
        for l in range(1, k + 1):
            z = omega0(ps, data, space, l, "full", order, induction)
            for j in range(1, l):
                z = z + build_omega(space, data, j, l).matrix
            amb[f"z{l}"] = z
    model.ambientOperators = amb
    model.generatorMatrices = {name: model.restrict(m, name) for name, m in amb.items()}
    return model


# ---------------------------------------------------------------- derived data

@dataclass
class ModelReport:
    model: ModelSpace
    relations: RelationReport
    rShift: Optional[GaussRat]
    cHecke: Optional[GaussRat]
    quotient: Optional[RelationReport] = None


def analyse_model(model: ModelSpace) -> ModelReport:
    """Run the relation suite, derive (rShift, cHecke) and check the quotient relations."""
    a = model.assignment()
    rep = check_relations(full_presentation(model.k), a, k_commutation=False)
    if model.k == 0:
        return ModelReport(model, rep, ZERO, ZERO)
    r, c = derive_quotient_constants(rep)
    q = check_quotient_presentation(quotient_presentation(model.k), a, (r, c))
    return ModelReport(model, rep, r, c, q)


def m_commutation(model: ModelSpace) -> Dict[str, bool]:
    """Every ambient generator commutes with the M generators (so restriction is legitimate)."""
    out = {}
    space = model.ambient
    if space.k == 0:
        return out
    ms = []
    for m, tw in _twisted_generators(model.ps):
        ms.append(diagonal_action(space, m) if tw is None else _full_action(space, m))
    for name, op in model.ambientOperators.items():
        out[name] = all((op @ x - x @ op).is_zero() for x in ms)
    return out


def cyclic_omega_values(model: ModelSpace) -> Dict[int, Tuple[GaussRat, ...]]:
    """Omega_{0l} applied to the cyclic vector, in model coordinates."""
    out = {}
    space, k = model.ambient, model.k
    cyc = model.cyclic_vector()
    for l in range(1, k + 1):
        om = model.restrict(omega0(model.ps, model.data, space, l, "full", model.order, model.induction), f"Omega0{l}")
        out[l] = om.apply(cyc)
    return out


def _transposition_element(k: int, t: int, l: int) -> SignedPerm:
    imgs = list(range(1, k + 1))
    imgs[t - 1], imgs[l - 1] = imgs[l - 1], imgs[t - 1]
    return SignedPerm(imgs)


def cyclic_formula_check(model: ModelSpace, rShift: GaussRat, form: str = "shifted") -> Dict[int, bool]:
    """Compare Omega_{0l} on the cyclic vector with a closed formula.

    form "shifted": (lam_l + rShift) + sum_{t<l} pi(s_{tl}), with pi the model's
    W(B_k) action (which carries the sign of pi(t)).
    form "display": lam_l - sum_{t<l}(s_{tl} + id) - sum_{t>l} id, with s_{tl}
    the plain exchange of tensor legs t and l.
    """
    k = model.k
    lam = model.ps.lam
    cyc = model.cyclic_vector()
    got = cyclic_omega_values(model)
    sigma = gr(transposition_sign(model.ps.group))
    out = {}
    for l in range(1, k + 1):
        if form == "shifted":
            vec = [x * (lam[l - 1] + rShift) for x in cyc]
            for t in range(1, l):
                sv = model.group_matrix(_transposition_element(k, t, l)).apply(cyc)
                vec = [v + y for v, y in zip(vec, sv)]
        elif form == "display":
            vec = [x * (lam[l - 1] - (l - 1) - (k - l)) for x in cyc]
            for t in range(1, l):
                sv = model.group_matrix(_transposition_element(k, t, l)).apply(cyc)
                vec = [v - sigma * y for v, y in zip(vec, sv)]
        else:
            raise ValueError("form must be shifted or display")
        out[l] = tuple(vec) == tuple(got[l])
    return out


def hecke_oracle(model: ModelSpace, cHecke: GaussRat) -> Optional[HeckeModule]:
    """Principal series X(lam) of H_k(cHecke); None for k = 0 (the model is a line)."""
    if model.k == 0:
        return None
    return principal_series(HeckeParams(model.k, cHecke), model.ps.lam)


def hecke_isomorphism_check(model: ModelSpace, oracle: Optional[HeckeModule], rShift: GaussRat) -> ExactMatrix:
    """Change of basis P with columns w.cyclic; checks P^-1 R P against the oracle.

    Raises IntertwinerFails naming the first generator and basis vector that differ.
    """
    k = model.k
    if k == 0:
        return ExactMatrix.identity(1)
    cyc = model.cyclic_vector()
    cols = [model.group_matrix(w).apply(cyc) for w in oracle.basis]
    P = ExactMatrix.from_columns(cols, model.dim)
    try:
        Pinv = inverse(P)
    except (NoSolution, ZeroDivisionError) as exc:
        raise IntertwinerFails("translates of the cyclic vector are not a basis") from exc
    I = ExactMatrix.identity(model.dim)
    R = model.generatorMatrices
    pairs = [(f"t{i}", R[f"t{i}"], oracle.s[i]) for i in range(1, k)]
    pairs.append((f"theta{k}", R[f"theta{k}"], oracle.theta[k]))
    pairs += [(f"eps{l}", R[f"z{l}"] - I.scale(rShift), oracle.eps[l]) for l in range(1, k + 1)]
    for name, mine, theirs in pairs:
        conj = Pinv @ mine @ P
        if conj != theirs:
            diff = conj - theirs
            col = min(c for (_, c) in diff.entries)
            raise IntertwinerFails(f"{name} differs on basis vector {oracle.basis[col]}")
    return P


def functor_on_submodule(model: ModelSpace, vectors: Sequence[Sequence]) -> Tuple[Dict[str, ExactMatrix], int, int]:
    """Restrict all generators to span(vectors) (model coordinates).

    Returns (restricted matrices, dim sub, dim quotient); NotInvariant if some
    generator leaves the span.
    """
    basis = span_basis(vectors) if vectors else []
    d = len(basis)
    if d == 0:
        return {name: ExactMatrix.zeros(0) for name in model.generatorMatrices}, 0, model.dim
    B = ExactMatrix.from_columns(basis, model.dim)
    out = {}
    for name, m in model.generatorMatrices.items():
        try:
            cols = solve_many(B, [m.apply(B.column(j)) for j in range(d)])
        except NoSolution as exc:
            raise NotInvariant(f"{name} leaves the subspace") from exc
        out[name] = ExactMatrix.from_columns(cols, d)
    return out, d, model.dim - d


# ---------------------------------------------------------------- w0 and Omega^p

def w0_matrix(model: ModelSpace) -> ExactMatrix:
    return model.group_matrix(longest_element(model.k))


def tilde_z_check(model: ModelSpace) -> Dict[int, bool]:
    """(z_i - w0 z_i w0)/2 equals Omega^p_{0i} on the model."""
    w0 = w0_matrix(model)
    out = {}
    for i in range(1, model.k + 1):
        z = model.generatorMatrices[f"z{i}"]
        zt = (z - w0 @ z @ w0).scale(gr("1/2"))
        op = model.restrict(omega0(model.ps, model.data, model.ambient, i, "p", model.order, model.induction))
        out[i] = zt == op
    return out


def conjugation_table(model: ModelSpace) -> Dict[str, bool]:
    """w0 Omega^p_{ij} w0 = -Omega^p_{ij} iff i = 0; Omega^k commutes with w0."""
    w0a = _full_action(model.ambient, model.data.xi) if model.k else ExactMatrix.identity(1)
    out = {}
    space = model.ambient
    for j in range(1, model.k + 1):
        for part, sign in (("p", -1), ("k", 1)):
            op = omega0(model.ps, model.data, space, j, part, model.order, model.induction)
            out[f"Omega{part}_0{j}"] = w0a @ op @ w0a == op.scale(sign)
        for i in range(1, j):
            for part in ("p", "k"):
                op = build_omega(space, model.data, i, j, part).matrix
                out[f"Omega{part}_{i}{j}"] = w0a @ op @ w0a == op
    return out


def q_mu_operator(ps: PsSpec, data: LieAlgebraData) -> ExactMatrix:
    """2 xi (sum_b dmu(b) b* - C^k) on V, the sum running over a basis of k."""
    acc = ExactMatrix.zeros(data.dimV)
    for b, bs in zip(data.basisK, data.dualK):
        c = dmu(ps.group, ps.mu, b)
        if c:
            acc = acc + bs.scale(c)
    return (data.xi @ (acc - casimir(data, "k"))).scale(2)


def q_mu_decomposition(ps: PsSpec, data: LieAlgebraData) -> Tuple[Optional[GaussRat], Optional[GaussRat]]:
    """(A, B) with Q_mu = A Id + B xi, or (None, None)."""
    q = q_mu_operator(ps, data)
    N = data.dimV
    basis = ExactMatrix.from_columns([vectorize(ExactMatrix.identity(N)), vectorize(data.xi)], N * N)
    try:
        A, B = solve_linear(basis, vectorize(q))
    except NoSolution:
        return None, None
    return A, B


# ---------------------------------------------------------------- printed constants

def table_constants(spec: GroupSpec, mu: str) -> Dict[str, GaussRat]:
    """(r, c) as listed in the printed table of constants for each K-character."""
    mu = normalize_character(spec, mu)
    if spec.is_sp:
        n = spec.n
        return {"r": ZERO if mu == "triv" else ONE, "c": gr(-n)}
    return {"r": gr(spec.p + spec.q) / 2, "c": gr(spec.p - spec.q) / 2}


def stated_hecke_parameter(spec: GroupSpec, side: str) -> GaussRat:
    """Hecke parameter asserted for each side: Sp 0 and 1, O(p,q) (p-q)/2."""
    if spec.is_sp:
        return ZERO if side == "mu" else ONE
    return gr(spec.p - spec.q) / 2


def discrepancy_rows(ps: PsSpec, rShift: GaussRat, cHecke: GaussRat) -> List[dict]:
    """Printed table values next to derived ones, with flags for each mismatch."""
    tab = table_constants(ps.group, ps.mu)
    stated = stated_hecke_parameter(ps.group, ps.side)
    rows = [
        {"quantity": "c", "table": str(tab["c"]), "stated": str(stated), "derived": str(cHecke),
         "table_matches": tab["c"] == cHecke, "stated_matches": stated == cHecke,
         "abs_matches": _abs_eq(stated, cHecke)},
        {"quantity": "r", "table": str(tab["r"]), "derived": str(rShift),
         "table_matches": tab["r"] == rShift, "abs_matches": _abs_eq(tab["r"], rShift)},
    ]
    return rows


def _abs_eq(a: GaussRat, b: GaussRat) -> bool:
    return a == b or a == -b
