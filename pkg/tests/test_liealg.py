import random

import pytest

from vwhecke.exactlin import I, ONE, ZERO, ExactMatrix, gr, rank, solve_linear, vectorize
from vwhecke.liealg import (GroupSpec, NotInAlgebra, Root, SpecInvalid, UnknownCharacter, build_algebra, casimir,
                            change_basis, decompose_omega, dmu, f_basis, f_vector, invariant_form_matrix,
                            iwasawa_decompose, omega_vv, rho, swap_matrix, transposition_sign,
                            trivial_projector_vv, with_calibration)

FAMILIES = ["sp:2", "sp:4", "sp:6", "opq:3,2", "opq:4,3"]


def alg(text):
    return build_algebra(GroupSpec.parse(text))


@pytest.mark.parametrize("text", ["sp:5", "sp:0", "opq:2,2", "opq:2,3", "gl:3", "opq:3"])
def test_bad_specs_rejected(text):
    with pytest.raises(SpecInvalid):
        GroupSpec.parse(text)


@pytest.mark.parametrize("text", FAMILIES)
def test_dimension_and_bracket_closure(text):
    d = alg(text)
    n = d.spec.n
    assert len(d.basis) == n * (2 * n + 1)
    cols = ExactMatrix.from_columns([vectorize(b) for b in d.basis])
    assert rank(cols) == len(d.basis)
    if d.dimV <= 5:
        for x in d.basis:
            for y in d.basis:
                solve_linear(cols, vectorize(x @ y - y @ x))


@pytest.mark.parametrize("text", FAMILIES)
def test_preserves_invariant_form(text):
    d = alg(text)
    g = invariant_form_matrix(d.spec)
    assert all(b.transpose() @ g + g @ b == ExactMatrix.zeros(d.dimV) for b in d.basis)


@pytest.mark.parametrize("text", FAMILIES)
def test_cartan_eigenspaces(text):
    d = alg(text)
    assert d.xi @ d.xi == ExactMatrix.identity(d.dimV)
    assert all(d.xi @ b @ d.xi == b for b in d.basisK)
    assert all(d.xi @ b @ d.xi == -b for b in d.basisP)


def test_printed_matrices():
    d = alg("sp:4")
    m = d.root_vector(Root("-", 1, 2))
    assert [m[0, c] for c in range(4)] == [0, 1, 0, 1]
    o = alg("opq:3,2")
    m = o.root_vector(Root("s", 1, 0, 1))
    assert [m[2, c] for c in range(5)] == [-1, 0, 0, 0, 0]
    xi = ExactMatrix.from_entries(4, 4, {(0, 2): I, (1, 3): I, (2, 0): -I, (3, 1): -I})
    assert d.xi == xi


@pytest.mark.parametrize("text", FAMILIES)
def test_dual_basis_pairs_to_identity_and_splits(text):
    d = alg(text)
    for i, b in enumerate(d.basis):
        for j, bs in enumerate(d.dual):
            assert d.form(b, bs) == (ONE if i == j else ZERO)
    assert all(d.xi @ b @ d.xi == b for b in d.dualK)
    assert all(d.xi @ b @ d.xi == -b for b in d.dualP)


def test_casimir_scalars():
    c = casimir(alg("sp:2"))
    assert c == ExactMatrix.scalar(2, c[0, 0])
    for n in (1, 2, 3):
        ck = casimir(alg(f"sp:{2 * n}"), "k")
        assert ck == ExactMatrix.scalar(2 * n, n)


@pytest.mark.parametrize("text", FAMILIES)
def test_calibrated_omega_on_invariant_line(text):
    # Omega_12 w = -(C acting on V) w for the invariant vector w; independent of the read-off
    d = alg(text)
    cV = casimir(d)
    assert cV == ExactMatrix.scalar(d.dimV, cV[0, 0])
    eta = transposition_sign(d.spec)
    assert d.swap_coefficient * eta + d.m0 == -cV[0, 0]
    assert d.swap_coefficient == -eta
    om = omega_vv(d)
    assert om == swap_matrix(d.dimV).scale(d.swap_coefficient) + trivial_projector_vv(d.spec).scale(d.m0)
    assert om == omega_vv(d, "k") + omega_vv(d, "p")


@pytest.mark.parametrize("text,m0", [("sp:2", -2), ("sp:4", -4), ("sp:6", -6), ("opq:3,2", 5), ("opq:4,3", 7)])
def test_calibrated_read_off(text, m0):
    assert alg(text).m0 == m0


def test_unit_swap_calibration_for_orthogonal():
    d = with_calibration(build_algebra(GroupSpec.parse("opq:3,2"), calibrate=False), swap_sign=1)
    x, y = decompose_omega(d)
    assert x == 1 and y == -5


def _random_invertible(n, rnd):
    while True:
        m = ExactMatrix.from_rows([[gr(rnd.randint(-3, 3)) for _ in range(n)] for _ in range(n)])
        if rank(m) == n:
            return m


@pytest.mark.parametrize("text", ["sp:4", "opq:3,2"])
def test_omega_basis_independent(text):
    d = alg(text)
    rnd = random.Random(text)
    for _ in range(2):
        d2 = change_basis(d, _random_invertible(len(d.basisK), rnd), _random_invertible(len(d.basisP), rnd))
        assert d2.basisK != d.basisK
        for part in ("full", "k", "p"):
            assert omega_vv(d2, part) == omega_vv(d, part)


def test_iwasawa_examples():
    d = alg("sp:4")
    z = ExactMatrix.zeros(4)
    k0 = d.basisK[0]
    assert iwasawa_decompose(d, k0) == (k0, z, z)
    a = d.aBasis[0]
    assert iwasawa_decompose(d, a) == (z, a, z)
    r = Root("-", 1, 2)
    n, nh = d.root_vector(r), d.negative_root_vector(r)
    xk, xa, xn = iwasawa_decompose(d, nh)
    assert (xk, xa, xn) == (n + nh, z, -n)
    assert d.xi @ xk @ d.xi == xk
    with pytest.raises(NotInAlgebra):
        iwasawa_decompose(d, ExactMatrix.identity(4))


def test_negative_vectors_are_cartan_images():
    d = alg("sp:4")
    for r in d.roots:
        assert d.negative_root_vector(r) == d.xi @ d.root_vector(r) @ d.xi


def test_character_differentials():
    sp = GroupSpec.parse("sp:4")
    d = alg("sp:4")
    assert all(dmu(sp, "triv", b) == 0 for b in d.basisK)
    assert dmu(sp, "det", d.xi) == 2
    acc = ExactMatrix.zeros(4)
    for b, bs in zip(d.basisK, d.dualK):
        acc = acc + bs.scale(dmu(sp, "det", b))
    assert acc == d.xi
    o = alg("opq:3,2")
    assert all(dmu(o.spec, mu, b) == 0 for mu in ("det⊗triv", "triv⊗det") for b in o.basisK)
    with pytest.raises(UnknownCharacter):
        dmu(sp, "det⊗det", d.xi)


@pytest.mark.parametrize("text,expected", [("sp:4", ["2", "1"]), ("opq:3,2", ["3/2", "1/2"]),
                                           ("opq:4,3", ["5/2", "3/2", "1/2"])])
def test_rho(text, expected):
    assert [str(x) for x in rho(alg(text))] == expected


def test_a_acts_diagonally_on_f_basis():
    for text in FAMILIES:
        d = alg(text)
        for i, a in enumerate(d.aBasis, start=1):
            for j in range(1, d.spec.rank + 1):
                for sign in (1, -1):
                    f = f_vector(d.spec, j, sign)
                    want = tuple(x * (sign if i == j else 0) for x in f)
                    assert a.apply(f) == want


def _scaled(v, c):
    return tuple(x * c for x in v)


@pytest.mark.parametrize("text", FAMILIES)
def test_root_vectors_on_f_basis(text):
    d = alg(text)
    sp = d.spec
    zero = tuple([ZERO] * d.dimV)
    fb = f_basis(sp)
    assert fb.toF @ fb.fromF == ExactMatrix.identity(d.dimV)
    for r, m in zip(d.roots, d.nPlusBasis):
        for kk in range(1, sp.rank + 1):
            f, fp = f_vector(sp, kk), f_vector(sp, kk, -1)
            if r.kind == "+":
                assert m.apply(f) == zero
                # lands in the unprimed f's, not in f'
                if kk == r.i:
                    want = _scaled(f_vector(sp, r.j), -2 if sp.is_sp else 2)
                elif kk == r.j:
                    want = _scaled(f_vector(sp, r.i), -2)
                else:
                    want = zero
                assert m.apply(fp) == want
            if r.kind == "s":
                assert m.apply(f) == zero
                if kk != r.i:
                    assert m.apply(fp) == zero
                elif sp.is_sp:
                    assert m.apply(fp) == _scaled(f, 2)
                else:
                    assert m.apply(fp) == _scaled(fb.vector(f"e{r.l}"), 2)
            if r.kind == "-":
                assert m.apply(f) == (_scaled(f_vector(sp, r.i), 2) if kk == r.j else zero)
                assert m.apply(fp) == (_scaled(f_vector(sp, r.j, -1), -2) if kk == r.i else zero)
        if r.kind == "-":
            both = m + d.negative_root_vector(r)
            # factor 2 on both nonzero images
            assert both.apply(f_vector(sp, r.j)) == _scaled(f_vector(sp, r.i), 2)
            assert both.apply(f_vector(sp, r.i)) == _scaled(f_vector(sp, r.j), -2)
