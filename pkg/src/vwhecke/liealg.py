"""Explicit matrix models of sp_2n(C) and so(p,q)_C.

Both algebras are built from restricted-root vectors n_lam in the defining
representation V, their Cartan-involution images, the Cartan subspace a, and
(for so(p,q)) the compact centralizer m. The invariant form is kappa times the
trace form of V; kappa is fixed by calibrate_kappa so that the split Casimir on
V (x) V has a prescribed swap coefficient.

Matrix units are written 1-based in the helpers below to match the usual
E_{s,t} notation; ExactMatrix itself is 0-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

from .exactlin import (
    I,
    ONE,
    ZERO,
    ExactMatrix,
    GaussRat,
    NoSolution,
    gr,
    inverse,
    kron,
    solve_linear,
    vectorize,
)


class SpecInvalid(ValueError):
    pass


class FormDegenerate(ArithmeticError):
    pass


class NoCalibration(ArithmeticError):
    pass


class NotInAlgebra(ValueError):
    pass


class UnknownCharacter(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    """Sp_2n(R) (family "Sp", n) or O(p,q) with p+q = 2n+1 (family "Opq")."""

    family: str
    n: int
    p: int = 0
    q: int = 0

    def __post_init__(self):
        if self.family == "Sp":
            if self.n < 1:
                raise SpecInvalid("Sp needs n >= 1")
        elif self.family == "Opq":
            if not (self.p >= self.q >= 1):
                raise SpecInvalid(f"need p >= q >= 1, got ({self.p},{self.q})")
            if (self.p + self.q) % 2 != 1:
                raise SpecInvalid(f"p+q must be odd, got {self.p + self.q}")
            if self.n != (self.p + self.q - 1) // 2:
                raise SpecInvalid("n must equal (p+q-1)/2")
        else:
            raise SpecInvalid(f"unknown family {self.family!r}")

    @staticmethod
    def sp(n: int) -> "GroupSpec":
        return GroupSpec("Sp", n)

    @staticmethod
    def opq(p: int, q: int) -> "GroupSpec":
        if p + q < 1 or (p + q) % 2 != 1:
            raise SpecInvalid(f"p+q must be odd, got {p + q}")
        return GroupSpec("Opq", (p + q - 1) // 2, p, q)

    @staticmethod
    def parse(text: str) -> "GroupSpec":
        s = text.strip().lower()
        m = re.fullmatch(r"sp:(\d+)", s)
        if m:
            size = int(m.group(1))
            if size < 2 or size % 2:
                raise SpecInvalid(f"sp:N needs even N >= 2, got {size}")
            return GroupSpec.sp(size // 2)
        m = re.fullmatch(r"opq:(\d+),(\d+)", s)
        if m:
            return GroupSpec.opq(int(m.group(1)), int(m.group(2)))
        raise SpecInvalid(f"cannot parse group spec {text!r}")

    def __str__(self) -> str:
        if self.family == "Sp":
            return f"sp:{2 * self.n}"
        return f"opq:{self.p},{self.q}"

    @property
    def dimV(self) -> int:
        return 2 * self.n if self.family == "Sp" else self.p + self.q

    @property
    def rank(self) -> int:
        """Real rank: length of nu and number of O(1)/Z_2 generators of M."""
        return self.n if self.family == "Sp" else self.q

    @property
    def is_sp(self) -> bool:
        return self.family == "Sp"


@dataclass(frozen=True)
class Root:
    """Positive restricted root.

    kind "-" : eps_i - eps_j (i < j); "+" : eps_i + eps_j; "s" : the short/long
    root on eps_i alone (for so(p,q) it has multiplicity p-q, indexed by l).
    """

    kind: str
    i: int
    j: int = 0
    l: int = 0

    def label(self) -> str:
        if self.kind == "-":
            return f"e{self.i}-e{self.j}"
        if self.kind == "+":
            return f"e{self.i}+e{self.j}"
        return f"e{self.i}" + (f"^{self.l}" if self.l else "")


def _E(N: int, s: int, t: int) -> ExactMatrix:
    return ExactMatrix.unit(N, s - 1, t - 1)


def _combo(N: int, terms: Sequence[Tuple[int, int, int]]) -> ExactMatrix:
    """Sum of sign * E_{s,t} over (sign, s, t)."""
    entries: Dict[Tuple[int, int], int] = {}
    for sign, s, t in terms:
        entries[(s - 1, t - 1)] = entries.get((s - 1, t - 1), 0) + sign
    return ExactMatrix.from_entries(N, N, entries)


def sp_root_vectors(n: int) -> List[Tuple[Root, ExactMatrix]]:
    """Positive restricted-root vectors of sp_2n(R), entry-for-entry as printed."""
    N = 2 * n
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out.append((Root("-", i, j), _combo(N, [
                (1, i, j), (1, i, n + j), (-1, j, i), (1, j, n + i),
                (1, n + i, j), (1, n + i, n + j), (1, n + j, i), (-1, n + j, n + i)])))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out.append((Root("+", i, j), _combo(N, [
                (-1, i, j), (1, i, n + j), (-1, j, i), (1, j, n + i),
                (-1, n + i, j), (1, n + i, n + j), (-1, n + j, i), (1, n + j, n + i)])))
    for i in range(1, n + 1):
        out.append((Root("s", i), _combo(N, [(1, i, i), (-1, i, n + i), (1, n + i, i), (-1, n + i, n + i)])))
    return out


def sp_printed_negative_vectors(n: int) -> Dict[Root, ExactMatrix]:
    """The negative-root vectors exactly as printed (used only for comparison)."""
    N = 2 * n
    out = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out[Root("-", i, j)] = _combo(N, [
                (-1, i, j), (1, i, n + j), (1, j, i), (1, j, n + i),
                (1, n + i, j), (-1, n + i, n + j), (1, n + j, i), (1, n + j, n + i)])
            out[Root("+", i, j)] = _combo(N, [
                (1, i, j), (1, i, n + j), (1, j, i), (1, j, n + i),
                (-1, n + i, j), (-1, n + i, n + j), (-1, n + j, i), (-1, n + j, n + i)])
        out[Root("s", i)] = _combo(N, [(-1, i, i), (-1, i, n + i), (1, n + i, i), (1, n + i, n + i)])
    return out


def opq_printed_minus_vector(p: int, q: int, i: int, j: int) -> ExactMatrix:
    """n_{eps_i - eps_j} for so(p,q) exactly as printed; it is not in so(p,q)."""
    return _combo(p + q, [
        (1, p - j + 1, p - i + 1), (1, p - j + 1, p + i), (-1, p - i + 1, p - j + 1), (1, p - i + 1, p + j),
        (-1, p + i, p - j + 1), (-1, p + i, p + j), (-1, p + j, p - i + 1), (1, p + j, p + i)])


def opq_root_vectors(p: int, q: int) -> List[Tuple[Root, ExactMatrix]]:
    """Positive restricted-root vectors of so(p,q).

    eps_i + eps_j and eps_i^l are as printed. The printed eps_i - eps_j matrix
    fails the so(p,q) condition; the vector used here is the unique root vector
    that agrees with it in six of eight entries, with the overall sign chosen
    so that n_{eps_i-eps_j} f_j = 2 f_i as in the symplectic case.
    """
    N = p + q
    out = []
    for i in range(1, q + 1):
        for j in range(i + 1, q + 1):
            out.append((Root("-", i, j), _combo(N, [
                (-1, p - j + 1, p - i + 1), (1, p - j + 1, p + i), (1, p - i + 1, p - j + 1), (1, p - i + 1, p + j),
                (1, p + i, p - j + 1), (1, p + i, p + j), (1, p + j, p - i + 1), (-1, p + j, p + i)])))
    for i in range(1, q + 1):
        for j in range(i + 1, q + 1):
            out.append((Root("+", i, j), _combo(N, [
                (1, p - j + 1, p - i + 1), (-1, p - j + 1, p + i), (-1, p - i + 1, p - j + 1), (1, p - i + 1, p + j),
                (-1, p + i, p - j + 1), (1, p + i, p + j), (1, p + j, p - i + 1), (-1, p + j, p + i)])))
    for i in range(1, q + 1):
        for l in range(1, p - q + 1):
            out.append((Root("s", i, 0, l), _combo(N, [
                (1, l, p - i + 1), (-1, l, p + i), (-1, p - i + 1, l), (-1, p + i, l)])))
    return out


def a_vectors(spec: GroupSpec) -> List[ExactMatrix]:
    N = spec.dimV
    if spec.is_sp:
        n = spec.n
        # printed as E_{i,n+1} + E_{n+i,i}; the symmetric E_{i,n+i} is the one in a
        return [_combo(N, [(1, i, n + i), (1, n + i, i)]) for i in range(1, n + 1)]
    p, q = spec.p, spec.q
    return [_combo(N, [(1, p - i + 1, p + i), (1, p + i, p - i + 1)]) for i in range(1, q + 1)]


def xi_matrix(spec: GroupSpec) -> ExactMatrix:
    N = spec.dimV
    if spec.is_sp:
        n = spec.n
        ent = {}
        for i in range(n):
            ent[(i, n + i)] = I
            ent[(n + i, i)] = -I
        return ExactMatrix.from_entries(N, N, ent)
    return ExactMatrix.diag([ONE] * spec.p + [-ONE] * spec.q)


def invariant_form_matrix(spec: GroupSpec) -> ExactMatrix:
    """g with X^T g + g X = 0 for X in the algebra (J for Sp, I_{p,q} for so)."""
    N = spec.dimV
    if spec.is_sp:
        n = spec.n
        ent = {}
        for i in range(n):
            ent[(i, n + i)] = 1
            ent[(n + i, i)] = -1
        return ExactMatrix.from_entries(N, N, ent)
    return ExactMatrix.diag([1] * spec.p + [-1] * spec.q)


@dataclass(frozen=True)
class FBasis:
    """The f-basis of V: f_i = u + w and f_i' = u - w on the i-th (u, w) pair of a-coordinates."""

    toF: ExactMatrix
    fromF: ExactMatrix
    labels: Tuple[str, ...]

    def vector(self, label: str) -> Tuple[GaussRat, ...]:
        return self.fromF.column(self.labels.index(label))


def f_basis(spec: GroupSpec) -> FBasis:
    N = spec.dimV
    cols = []
    labels = []
    if spec.is_sp:
        pairs = [(i, spec.n + i) for i in range(1, spec.n + 1)]
        extra = []
    else:
        pairs = [(spec.p - i + 1, spec.p + i) for i in range(1, spec.q + 1)]
        extra = list(range(1, spec.p - spec.q + 1))
    for sign, tag in ((1, "f{}"), (-1, "f{}'")):
        for i, (u, w) in enumerate(pairs, start=1):
            col = [0] * N
            col[u - 1] = 1
            col[w - 1] = sign
            cols.append(col)
            labels.append(tag.format(i))
    for l in extra:
        col = [0] * N
        col[l - 1] = 1
        cols.append(col)
        labels.append(f"e{l}")
    fromF = ExactMatrix.from_columns(cols, N)
    return FBasis(inverse(fromF), fromF, tuple(labels))


def f_vector(spec: GroupSpec, i: int, sign: int = 1) -> Tuple[GaussRat, ...]:
    """f_i (sign=+1) or f_i' (sign=-1) in e-coordinates."""
    N = spec.dimV
    if spec.is_sp:
        u, w = i, spec.n + i
    else:
        u, w = spec.p - i + 1, spec.p + i
    v = [ZERO] * N
    v[u - 1] = ONE
    v[w - 1] = gr(sign)
    return tuple(v)


def cartan_involution(xi: ExactMatrix, x: ExactMatrix) -> ExactMatrix:
    return xi @ x @ xi


@dataclass(frozen=True)
class LieAlgebraData:
    spec: GroupSpec
    dimV: int
    basisK: Tuple[ExactMatrix, ...]
    basisP: Tuple[ExactMatrix, ...]
    xi: ExactMatrix
    formGram: ExactMatrix
    kappa: GaussRat
    aBasis: Tuple[ExactMatrix, ...]
    roots: Tuple[Root, ...]
    nPlusBasis: Tuple[ExactMatrix, ...]
    nMinusBasis: Tuple[ExactMatrix, ...]
    mBasis: Tuple[ExactMatrix, ...]
    dualK: Tuple[ExactMatrix, ...]
    dualP: Tuple[ExactMatrix, ...]
    m0: GaussRat | None = None
    swap_coefficient: GaussRat | None = None

    @property
    def basis(self) -> Tuple[ExactMatrix, ...]:
        return self.basisK + self.basisP

    @property
    def dual(self) -> Tuple[ExactMatrix, ...]:
        return self.dualK + self.dualP

    def form(self, x: ExactMatrix, y: ExactMatrix) -> GaussRat:
        return self.kappa * (x @ y).trace()

    def root_vector(self, root: Root) -> ExactMatrix:
        return self.nPlusBasis[self.roots.index(root)]

    def negative_root_vector(self, root: Root) -> ExactMatrix:
        return self.nMinusBasis[self.roots.index(root)]

    @cached_property
    def _coord_system(self) -> ExactMatrix:
        # columns: vectorized basisK, aBasis, nPlusBasis (the Iwasawa basis)
        cols = [vectorize(b) for b in self.basisK + self.aBasis + self.nPlusBasis]
        return ExactMatrix.from_columns(cols, self.dimV * self.dimV)


def _gram(mats: Sequence[ExactMatrix], kappa: GaussRat) -> ExactMatrix:
    n = len(mats)
    rows = [[kappa * (mats[i] @ mats[j]).trace() for j in range(n)] for i in range(n)]
    return ExactMatrix.from_rows(rows) if n else ExactMatrix.zeros(0)


def _duals(mats: Sequence[ExactMatrix], kappa: GaussRat) -> Tuple[ExactMatrix, ...]:
    """b*_j = sum_i (G^-1)_{ij} b_i so that B(b_i, b*_j) = delta_ij."""
    if not mats:
        return ()
    g = _gram(mats, kappa)
    try:
        ginv = inverse(g)
    except (ZeroDivisionError, NoSolution) as exc:
        raise FormDegenerate("trace form is degenerate on the chosen basis") from exc
    out = []
    N = mats[0].rows
    for j in range(len(mats)):
        acc = ExactMatrix.zeros(N)
        for i in range(len(mats)):
            c = ginv[i, j]
            if c:
                acc = acc + mats[i].scale(c)
        out.append(acc)
    return tuple(out)


def build_algebra(spec: GroupSpec, calibrate: bool = True, swap_sign: int | None = None) -> LieAlgebraData:
    """Construct the algebra; by default kappa is calibrated (see calibrate_kappa)."""
    N = spec.dimV
    xi = xi_matrix(spec)
    if spec.is_sp:
        pairs = sp_root_vectors(spec.n)
        mbasis: List[ExactMatrix] = []
    else:
        pairs = opq_root_vectors(spec.p, spec.q)
        r = spec.p - spec.q
        mbasis = [_combo(N, [(1, a, b), (-1, b, a)]) for a in range(1, r + 1) for b in range(a + 1, r + 1)]
    roots = tuple(rt for rt, _ in pairs)
    nplus = tuple(m for _, m in pairs)
    nminus = tuple(cartan_involution(xi, m) for m in nplus)
    avecs = tuple(a_vectors(spec))
    basisK = tuple(list(a + b for a, b in zip(nplus, nminus)) + mbasis)
    basisP = tuple(list(a - b for a, b in zip(nplus, nminus)) + list(avecs))
    kappa = ONE
    formGram = _gram(basisK + basisP, kappa)
    data = LieAlgebraData(
        spec=spec, dimV=N, basisK=basisK, basisP=basisP, xi=xi, formGram=formGram,
        kappa=kappa, aBasis=avecs, roots=roots, nPlusBasis=nplus, nMinusBasis=nminus,
        mBasis=tuple(mbasis), dualK=_duals(basisK, kappa), dualP=_duals(basisP, kappa))
    if calibrate:
        return with_calibration(data, swap_sign)
    return data


def with_kappa(data: LieAlgebraData, kappa) -> LieAlgebraData:
    kappa = gr(kappa)
    return replace(
        data, kappa=kappa, formGram=_gram(data.basis, kappa),
        dualK=tuple(d.scale(ONE / kappa) for d in _duals(data.basisK, ONE)),
        dualP=tuple(d.scale(ONE / kappa) for d in _duals(data.basisP, ONE)))


def change_basis(data: LieAlgebraData, mixK: ExactMatrix, mixP: ExactMatrix) -> LieAlgebraData:
    """Replace basisK and basisP by b'_j = sum_i mix[i, j] b_i and recompute the duals.

    Only the split Casimir pieces depend on this; the Iwasawa data is left as is.
    """
    def mix(mats, m):
        out = []
        for j in range(m.cols):
            acc = ExactMatrix.zeros(data.dimV)
            for i in range(m.rows):
                c = m[i, j]
                if c:
                    acc = acc + mats[i].scale(c)
            out.append(acc)
        return tuple(out)

    newK, newP = mix(data.basisK, mixK), mix(data.basisP, mixP)
    return replace(data, basisK=newK, basisP=newP, formGram=_gram(newK + newP, data.kappa),
                   dualK=_duals(newK, data.kappa), dualP=_duals(newP, data.kappa))


def dual_basis(data: LieAlgebraData) -> List[ExactMatrix]:
    """Dual basis of basisK + basisP for the kappa-scaled trace form."""
    return list(data.dual)


# Two-leg operators on V (x) V --------------------------------------------

def swap_matrix(d: int) -> ExactMatrix:
    ent = {(b * d + a, a * d + b): 1 for a in range(d) for b in range(d)}
    return ExactMatrix.from_entries(d * d, d * d, ent)


def trivial_projector_vv(spec: GroupSpec) -> ExactMatrix:
    """Projector of V (x) V onto its g-invariant line, killing the complement.

    The invariant vector is w = sum (g^-1)_{ab} e_a (x) e_b and the invariant
    functional is u (x) v -> u^T g v.
    """
    g = invariant_form_matrix(spec)
    ginv = inverse(g)
    d = spec.dimV
    w = vectorize(ginv)
    wf = vectorize(g)
    norm = sum((a * b for a, b in zip(wf, w)), ZERO)
    ent = {}
    for r, x in enumerate(w):
        if not x:
            continue
        for c, y in enumerate(wf):
            if y:
                ent[(r, c)] = x * y / norm
    return ExactMatrix.from_entries(d * d, d * d, ent)


def omega_vv(data: LieAlgebraData, part: str = "full") -> ExactMatrix:
    """sum_b b (x) b* on V (x) V over the chosen part of the basis."""
    if part == "k":
        pairs = zip(data.basisK, data.dualK)
    elif part == "p":
        pairs = zip(data.basisP, data.dualP)
    elif part == "full":
        pairs = zip(data.basis, data.dual)
    else:
        raise ValueError(f"unknown part {part!r}")
    d = data.dimV
    acc = ExactMatrix.zeros(d * d)
    for b, bs in pairs:
        acc = acc + kron(b, bs)
    return acc


def swap_sign_on_trivial_line(spec: GroupSpec) -> int:
    """+1 if the invariant line of V (x) V is symmetric, -1 if antisymmetric."""
    pr = trivial_projector_vv(spec)
    s = swap_matrix(spec.dimV)
    if s @ pr == pr:
        return 1
    if s @ pr == -pr:
        return -1
    raise NoCalibration("invariant line is neither symmetric nor antisymmetric")


def decompose_omega(data: LieAlgebraData) -> Tuple[GaussRat, GaussRat]:
    """(x, y) with Omega_12 = x*swap + y*pr on V (x) V; NoCalibration otherwise."""
    om = vectorize(omega_vv(data))
    s = vectorize(swap_matrix(data.dimV))
    pr = vectorize(trivial_projector_vv(data.spec))
    a = ExactMatrix.from_columns([s, pr], len(om))
    try:
        x, y = solve_linear(a, om)
    except NoSolution as exc:
        raise NoCalibration("Omega_12 is not in span{swap, pr}") from exc
    return x, y


def transposition_sign(spec: GroupSpec) -> int:
    """Sign s with pi(t) = s * swap.

    t e = e forces pi(t) to act by +1 on the invariant line of V (x) V, so s is
    the swap eigenvalue there: -1 for Sp, +1 for O(p,q).
    """
    return swap_sign_on_trivial_line(spec)


def default_swap_sign(spec: GroupSpec) -> int:
    """Swap coefficient of Omega_12 used by default.

    t z_1 - z_2 t = 1 + e on V (x) V needs (swap coefficient) * (sign of t) = -1.
    """
    return -transposition_sign(spec)


def calibrate_kappa(data: LieAlgebraData, swap_sign: int | None = None) -> GaussRat:
    """The kappa making Omega_12 = swap_sign*swap + m0*pr on V (x) V.

    Omega scales as 1/kappa, so kappa = x_1 / swap_sign where x_1 is the swap
    coefficient at kappa = 1.
    """
    if swap_sign is None:
        swap_sign = default_swap_sign(data.spec)
    base = data if data.kappa == ONE else with_kappa(data, ONE)
    x, _ = decompose_omega(base)
    if not x:
        raise NoCalibration("Omega_12 has no swap component")
    return x / gr(swap_sign)


def with_calibration(data: LieAlgebraData, swap_sign: int | None = None) -> LieAlgebraData:
    kappa = calibrate_kappa(data, swap_sign)
    cal = with_kappa(data, kappa)
    x, y = decompose_omega(cal)
    return replace(cal, m0=y, swap_coefficient=x)


# Casimirs, Iwasawa, characters ---------------------------------------------

def casimir(data: LieAlgebraData, part: str = "full") -> ExactMatrix:
    if part == "k":
        pairs = zip(data.basisK, data.dualK)
    elif part == "p":
        pairs = zip(data.basisP, data.dualP)
    else:
        pairs = zip(data.basis, data.dual)
    acc = ExactMatrix.zeros(data.dimV)
    for b, bs in pairs:
        acc = acc + b @ bs
    return acc


def iwasawa_decompose(data: LieAlgebraData, x: ExactMatrix) -> Tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
    """Unique x = xK + xA + xN with parts in k, a and n+."""
    try:
        coeffs = solve_linear(data._coord_system, vectorize(x))
    except NoSolution as exc:
        raise NotInAlgebra("matrix is not in the Lie algebra") from exc
    nk, na = len(data.basisK), len(data.aBasis)
    N = data.dimV

    def comb(mats, cs):
        acc = ExactMatrix.zeros(N)
        for m, c in zip(mats, cs):
            if c:
                acc = acc + m.scale(c)
        return acc

    return (comb(data.basisK, coeffs[:nk]), comb(data.aBasis, coeffs[nk:nk + na]), comb(data.nPlusBasis, coeffs[nk + na:]))


def iwasawa_coefficients(data: LieAlgebraData, x: ExactMatrix) -> Tuple[Tuple[GaussRat, ...], Tuple[GaussRat, ...], Tuple[GaussRat, ...]]:
    try:
        coeffs = solve_linear(data._coord_system, vectorize(x))
    except NoSolution as exc:
        raise NotInAlgebra("matrix is not in the Lie algebra") from exc
    nk, na = len(data.basisK), len(data.aBasis)
    return coeffs[:nk], coeffs[nk:nk + na], coeffs[nk + na:]


def rho(data: LieAlgebraData) -> Tuple[GaussRat, ...]:
    """Half-sum of positive restricted roots with multiplicity, on each a_{eps_i}.

    Computed as half the trace of ad(a_i) on n+, so multiplicities come for free.
    """
    out = []
    for a in data.aBasis:
        tr = ZERO
        for idx, n in enumerate(data.nPlusBasis):
            _, _, nc = iwasawa_coefficients(data, a @ n - n @ a)
            tr = tr + nc[idx]
        out.append(tr / 2)
    return tuple(out)


SP_CHARACTERS = ("triv", "det")
OPQ_CHARACTERS = ("triv⊗triv", "triv⊗det", "det⊗triv", "det⊗det")
_OPQ_ALIASES = {
    "triv*triv": "triv⊗triv", "triv*det": "triv⊗det", "det*triv": "det⊗triv", "det*det": "det⊗det",
    "triv,triv": "triv⊗triv", "triv,det": "triv⊗det", "det,triv": "det⊗triv", "det,det": "det⊗det",
    "sgn⊗sgn": "det⊗det", "triv⊗sgn": "triv⊗det", "sgn⊗triv": "det⊗triv",
}


def normalize_character(spec: GroupSpec, mu: str) -> str:
    if spec.is_sp:
        if mu in SP_CHARACTERS:
            return mu
        raise UnknownCharacter(f"unknown Sp character {mu!r}")
    mu = _OPQ_ALIASES.get(mu, mu)
    if mu in OPQ_CHARACTERS:
        return mu
    raise UnknownCharacter(f"unknown O(p,q) character {mu!r}")


def dmu(spec: GroupSpec, mu: str, b: ExactMatrix) -> GaussRat:
    """Differential of the K-character mu evaluated on b in k.

    For Sp, k = u(n) sits in sp_2n as [[A, B], [-B, A]]; the determinant
    character differentiates to -i*tr(B) + tr(A), the convention under which
    sum_b dmu(b) b* is the element xi itself (checked in the tests). All O(p)xO(q)
    characters have zero differential.
    """
    mu = normalize_character(spec, mu)
    if spec.is_sp and mu == "det":
        n = spec.n
        tr_a = ZERO
        tr_b = ZERO
        for i in range(n):
            tr_a = tr_a + b[i, i]
            tr_b = tr_b + b[i, n + i]
        return tr_a - I * tr_b
    return ZERO


def explicit_action_table(data: LieAlgebraData) -> Dict[str, Tuple[GaussRat, ...]]:
    """Images of f_k, f_k' under the stored root vectors (for audit output)."""
    spec = data.spec
    out = {}
    for root, m in zip(data.roots, data.nPlusBasis):
        for k in range(1, spec.rank + 1):
            for sign, tag in ((1, "f"), (-1, "f'")):
                out[f"n[{root.label()}]{tag}{k}"] = m.apply(f_vector(spec, k, sign))
    return out
