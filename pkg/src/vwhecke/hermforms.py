"""Invariant Hermitian forms on model spaces and on Hecke principal series.

A form G is invariant for a list of (X, X_star) pairs when X^H G = G X_star for
every pair. On a model the pairs are (t, t), (theta, theta), (e, e) and
(z~, -z~) with z~ = (z - w0 z w0)/2; on a Hecke module they are the group
generators and (eps~, -eps~) for the Drinfeld generators eps~.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .exactlin import (I, ONE, ZERO, ExactMatrix, GaussRat, NoSolution, gr, hermitian_signature,
                       inverse, is_hermitian, kernel_basis, solve_many, span_basis)
from .heckealg import HeckeModule, drinfeld_generator
from .liealg import GroupSpec, LieAlgebraData
from .psmodel import ModelSpace, PsSpec, build_generators, w0_matrix

Pairs = Dict[str, Tuple[ExactMatrix, ExactMatrix]]


class NotInvariantForm(ValueError):
    pass


@dataclass
class HermForm:
    gram: ExactMatrix
    normalization: GaussRat = ONE

    def __post_init__(self):
        if not is_hermitian(self.gram):
            raise ValueError("gram matrix is not Hermitian")

    @property
    def dim(self) -> int:
        return self.gram.rows

    def radical(self) -> List[Tuple[GaussRat, ...]]:
        return kernel_basis(self.gram) if self.dim else []

    def signature(self) -> Tuple[int, int, int]:
        return hermitian_signature(self.gram) if self.dim else (0, 0, 0)

    def is_positive_definite(self) -> bool:
        return self.signature() == (self.dim, 0, 0)

    def pair(self, u: Sequence[GaussRat], v: Sequence[GaussRat]) -> GaussRat:
        """<u, v> = u^H G v."""
        gv = self.gram.apply(v)
        return sum((a.conj() * b for a, b in zip(u, gv)), ZERO)


# ---------------------------------------------------------------- star pairs

def tilde_z(model: ModelSpace, i: int) -> ExactMatrix:
    w0 = w0_matrix(model)
    z = model.generatorMatrices[f"z{i}"]
    return (z - w0 @ z @ w0).scale(gr("1/2"))


def model_star_pairs(model: ModelSpace) -> Pairs:
    k = model.k
    R = model.generatorMatrices
    out: Pairs = {}
    for i in range(1, k):
        out[f"t{i}"] = (R[f"t{i}"], R[f"t{i}"])
        out[f"e{i}"] = (R[f"e{i}"], R[f"e{i}"])
    for j in range(1, k + 1):
        out[f"theta{j}"] = (R[f"theta{j}"], R[f"theta{j}"])
    for i in range(1, k + 1):
        zt = tilde_z(model, i)
        out[f"ztilde{i}"] = (zt, -zt)
    return out


def oracle_star_pairs(mod: HeckeModule) -> Pairs:
    k = mod.params.k
    out: Pairs = {}
    for i in range(1, k):
        out[f"s{i}"] = (mod.s[i], mod.s[i])
    out[f"theta{k}"] = (mod.theta[k], mod.theta[k])
    for i in range(1, k + 1):
        et = mod.act(drinfeld_generator(mod.params, i))
        out[f"epstilde{i}"] = (et, -et)
    return out


# ---------------------------------------------------------------- forms

def induced_form(model: ModelSpace) -> HermForm:
    """Gram of the labeled basis under the standard dot product on each leg (<1, 1> = 1)."""
    B = model.basis_matrix
    g = B.H() @ B
    return HermForm(g, g[model.cyclic, model.cyclic] if model.dim else ONE)


def check_star_invariance(pairs: Pairs, form: HermForm) -> Dict[str, bool]:
    G = form.gram
    return {name: X.H() @ G == G @ Xs for name, (X, Xs) in pairs.items()}


def _hermitian_basis(n: int) -> List[ExactMatrix]:
    out = []
    for a in range(n):
        out.append(ExactMatrix.from_entries(n, n, {(a, a): 1}))
    for a in range(n):
        for b in range(a + 1, n):
            out.append(ExactMatrix.from_entries(n, n, {(a, b): 1, (b, a): 1}))
            out.append(ExactMatrix.from_entries(n, n, {(a, b): I, (b, a): -I}))
    return out


def solve_invariant_form(pairs: Pairs, n: int, cyclic: int = 0) -> List[HermForm]:
    """Basis of the real space of invariant Hermitian forms.

    Hermitian matrices are parametrized by n^2 real unknowns; each constraint
    X^H G - G X_star = 0 splits into real and imaginary parts, so the system
    is linear over Q. Basis forms with <cyclic, cyclic> != 0 are scaled to 1.
    """
    if n == 0:
        return []
    herm = _hermitian_basis(n)
    rows: Dict[int, Dict[int, GaussRat]] = {}
    r = 0
    for X, Xs in pairs.values():
        XH = X.H()
        images = [XH @ E - E @ Xs for E in herm]
        for a in range(n):
            for b in range(n):
                re_row, im_row = {}, {}
                for j, img in enumerate(images):
                    v = img[a, b]
                    if v.re:
                        re_row[j] = GaussRat(v.re)
                    if v.im:
                        im_row[j] = GaussRat(v.im)
                for row in (re_row, im_row):
                    if row:
                        rows[r] = row
                        r += 1
    M = ExactMatrix(max(r, 1), len(herm), rows or {})
    out = []
    for sol in kernel_basis(M):
        g = ExactMatrix.zeros(n)
        for c, E in zip(sol, herm):
            if c:
                g = g + E.scale(c)
        norm = g[cyclic, cyclic]
        if norm:
            g = g.scale(ONE / norm)
        out.append(HermForm(g, g[cyclic, cyclic]))
    return out


def find_positive_definite(forms: Sequence[HermForm]) -> Tuple[Optional[HermForm], bool]:
    """(form, decided): a positive-definite member of the real span, if one is found.

    With at most one basis form the answer is exact. With more, small integer
    combinations are searched; a miss is then reported as undecided.
    """
    if not forms:
        return None, True
    for f in forms:
        for s in (ONE, -ONE):
            g = HermForm(f.gram.scale(s))
            if g.is_positive_definite():
                return g, True
    if len(forms) == 1:
        return None, True
    coeffs = [gr(x) for x in (-2, -1, 1, 2)]
    for combo in product([ZERO] + coeffs, repeat=len(forms)):
        if all(c == ZERO for c in combo):
            continue
        g = ExactMatrix.zeros(forms[0].dim)
        for c, f in zip(combo, forms):
            if c:
                g = g + f.gram.scale(c)
        h = HermForm(g)
        if h.is_positive_definite():
            return h, True
    return None, False


# ---------------------------------------------------------------- quotients

@dataclass
class Quotient:
    matrices: Dict[str, ExactMatrix]
    form: HermForm
    radical: List[Tuple[GaussRat, ...]]
    complement: ExactMatrix  # columns complete the radical to a basis

    @property
    def dim(self) -> int:
        return self.form.dim


def _complement(rad: List[Tuple[GaussRat, ...]], n: int) -> List[Tuple[GaussRat, ...]]:
    basis = list(rad)
    out = []
    for j in range(n):
        e = tuple(ONE if i == j else ZERO for i in range(n))
        if len(span_basis(basis + [e])) > len(basis):
            basis.append(e)
            out.append(e)
    return out


def langlands_quotient(matrices: Dict[str, ExactMatrix], form: HermForm, pairs: Optional[Pairs] = None) -> Quotient:
    """Quotient by the radical of an invariant form, with the generators descended.

    NotInvariantForm if the form fails the star pairs or the radical is not stable.
    """
    if pairs is not None and not all(check_star_invariance(pairs, form).values()):
        raise NotInvariantForm("form is not invariant")
    n = form.dim
    rad = form.radical()
    comp = _complement(rad, n)
    d = len(comp)
    if d == 0:
        return Quotient({k: ExactMatrix.zeros(0) for k in matrices}, HermForm(ExactMatrix.zeros(0)), rad,
                        ExactMatrix.zeros(n, 0))
    full = ExactMatrix.from_columns(list(rad) + comp, n)
    finv = inverse(full)
    r = len(rad)
    out = {}
    for name, X in matrices.items():
        Y = finv @ X @ full
        for c in range(r):
            if any(Y[row, c] for row in range(r, n)):
                raise NotInvariantForm(f"radical is not stable under {name}")
        out[name] = Y.submatrix(list(range(r, n)), list(range(r, n)))
    C = ExactMatrix.from_columns(comp, n)
    return Quotient(out, HermForm(C.H() @ form.gram @ C), rad, C)


def _proportional_forms(a: ExactMatrix, b: ExactMatrix) -> bool:
    for (r, c), v in sorted(b.entries.items()):
        return a == b.scale(a[r, c] / v)
    return a.is_zero()


def radical_is_submodule(matrices: Dict[str, ExactMatrix], form: HermForm) -> bool:
    rad = form.radical()
    if not rad:
        return True
    R = ExactMatrix.from_columns(rad, form.dim)
    for X in matrices.values():
        try:
            solve_many(R, [X.apply(v) for v in rad])
        except NoSolution:
            return False
    return True


def signature_additive(form: HermForm) -> bool:
    """signature(G) = signature(quotient form) + (0, 0, dim radical)."""
    p, m, z = form.signature()
    rad = form.radical()
    comp = _complement(rad, form.dim)
    if not comp:
        return (p, m) == (0, 0) and z == len(rad)
    C = ExactMatrix.from_columns(comp, form.dim)
    qp, qm, qz = HermForm(C.H() @ form.gram @ C).signature()
    return (p, m, z) == (qp, qm, qz + len(rad)) and qz == 0


def quotient_correspondence(model: ModelSpace, oracle: HeckeModule, P: ExactMatrix) -> Dict[str, bool]:
    """The intertwiner P (model = P oracle) matches Langlands quotients.

    Checks: the transported oracle form P^-H G_o P^-1 spans the model's form
    space when both are one-dimensional, P maps the oracle radical onto the
    model radical, and the descended generators agree under the induced map.
    """
    mp = model_star_pairs(model)
    op = oracle_star_pairs(oracle)
    mforms = solve_invariant_form(mp, model.dim, model.cyclic)
    oforms = solve_invariant_form(op, oracle.dim, 0)
    res = {"same_form_dimension": len(mforms) == len(oforms)}
    if not mforms or not oforms:
        res["forms_exist"] = False
        return res
    Pinv = inverse(P)
    transported = [HermForm(Pinv.H() @ f.gram @ Pinv) for f in oforms]
    res["transported_invariant"] = all(all(check_star_invariance(mp, f).values()) for f in transported)
    go = oforms[0]
    if len(mforms) == 1 and len(oforms) == 1:
        # independent solutions: the model's own form must be a multiple of the transported one
        gm = mforms[0]
        res["model_form_proportional"] = _proportional_forms(gm.gram, transported[0].gram)
    else:
        gm = transported[0]
    mrad = gm.radical()
    orad = go.radical()
    images = [P.apply(v) for v in orad]
    both = span_basis(list(mrad) + images) if (mrad or images) else []
    res["radicals_match"] = len(mrad) == len(orad) and len(both) == len(mrad)
    mq = langlands_quotient(model.generatorMatrices, gm)
    oq_mats = {"t" + k[1:] if k.startswith("s") else k: v for k, v in
               {**{f"s{i}": oracle.s[i] for i in range(1, oracle.params.k)},
                f"theta{oracle.params.k}": oracle.theta[oracle.params.k],
                **{f"z{i}": oracle.eps[i] for i in range(1, oracle.params.k + 1)}}.items()}
    oq = langlands_quotient(oq_mats, go)
    res["quotient_dims_match"] = mq.dim == oq.dim
    res["quotient_signatures_match"] = mq.form.signature() == oq.form.signature()
    return res


# ---------------------------------------------------------------- verdicts

NOT_UNITARY = "NOT_UNITARY"
UNKNOWN = "UNKNOWN"


def side_verdict(model: ModelSpace) -> dict:
    """Invariant forms of one side and whether they certify non-unitarity.

    Non-unitary is certified when the form space is one-dimensional and the
    form is indefinite on the Langlands quotient. Larger form spaces are
    reported as UNKNOWN.
    """
    pairs = model_star_pairs(model)
    forms = solve_invariant_form(pairs, model.dim, model.cyclic)
    info = {"legs": model.k, "dim": model.dim, "form_space_dim": len(forms),
            "grams": [str(f.gram) for f in forms], "verdict": UNKNOWN}
    if len(forms) == 1:
        q = langlands_quotient(model.generatorMatrices, forms[0], pairs)
        p, m, _ = q.form.signature()
        info["quotient_signature"] = [p, m]
        if p and m:
            info["verdict"] = NOT_UNITARY
    pd, decided = find_positive_definite(forms)
    info["positive_definite_exists"] = pd is not None if decided else None
    return info


def nonunitary_test(group: GroupSpec, deltaK: int, nu: Sequence, sigma: str = "triv") -> dict:
    """Run both functor sides; NOT_UNITARY if either side certifies it."""
    sides = {}
    for side in ("mu", "mubar"):
        ps = PsSpec(group, deltaK, tuple(gr(x) for x in nu), side, sigma)
        sides[side] = side_verdict(build_generators(ps))
    verdict = NOT_UNITARY if any(s["verdict"] == NOT_UNITARY for s in sides.values()) else UNKNOWN
    return {"group": str(group), "deltaK": deltaK, "nu": [str(gr(x)) for x in nu], "sigma": sigma,
            "sides": sides, "verdict": verdict}


def sl2_grid() -> List[GaussRat]:
    """nu = a + b i with a, b in {-2, -3/2, ..., 2}."""
    steps = [gr(x) / 2 for x in range(-4, 5)]
    return [GaussRat(a.re, b.re) for a in steps for b in steps]


def sl2_scan(grid: Optional[Sequence[GaussRat]] = None) -> List[dict]:
    """For Sp(2) with delta = delta^1: is there a positive-definite invariant form?"""
    spec = GroupSpec.sp(1)
    out = []
    for nu in (grid if grid is not None else sl2_grid()):
        model = build_generators(PsSpec(spec, 1, (nu,)))
        forms = solve_invariant_form(model_star_pairs(model), model.dim, model.cyclic)
        pd, decided = find_positive_definite(forms)
        out.append({"nu": nu, "form_space_dim": len(forms), "positive_definite": pd is not None,
                    "decided": decided})
    return out


def kp_adjointness(data: LieAlgebraData) -> Dict[str, bool]:
    """k basis elements are skew-Hermitian and p basis elements Hermitian on V."""
    return {
        "k_skew": all(b.H() == -b for b in data.basisK),
        "p_hermitian": all(b.H() == b for b in data.basisP),
    }
