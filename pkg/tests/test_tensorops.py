import random

import pytest

from vwhecke.exactlin import ExactMatrix, gr, kron, rank
from vwhecke.liealg import GroupSpec, build_algebra, invariant_form_matrix, transposition_sign
from vwhecke.tensorops import (BadLeg, TensorSpace, build_omega, build_swap, build_trivial_projector,
                               build_xi_leg, diagonal_action, embed_one)

FAMILIES = ["sp:2", "sp:4", "opq:3,2"]


def setup(text, k):
    d = build_algebra(GroupSpec.parse(text))
    return d, TensorSpace(d.dimV, k)


def rand_vec(n, rnd):
    return tuple(gr(rnd.randint(-3, 3)) for _ in range(n))


@pytest.mark.parametrize("text", FAMILIES)
def test_swap_on_product_vectors(text):
    d, sp = setup(text, 3)
    rnd = random.Random(0)
    s = build_swap(sp, 1, 2).matrix
    assert s @ s == ExactMatrix.identity(sp.totalDim)
    u, v, w = (rand_vec(d.dimV, rnd) for _ in range(3))
    assert s.apply(sp.product_vector([u, v, w])) == sp.product_vector([v, u, w])


@pytest.mark.parametrize("text", FAMILIES)
def test_swap_conjugation_moves_omega(text):
    d, sp = setup(text, 3)
    s = build_swap(sp, 1, 2).matrix
    assert s @ build_omega(sp, d, 1, 3).matrix @ s == build_omega(sp, d, 2, 3).matrix


@pytest.mark.parametrize("text", FAMILIES)
def test_single_leg_operator_is_identity_elsewhere(text):
    d, sp = setup(text, 3)
    rnd = random.Random(1)
    x = d.basisP[0]
    u, v, w = (rand_vec(d.dimV, rnd) for _ in range(3))
    assert embed_one(sp, 2, x).apply(sp.product_vector([u, v, w])) == sp.product_vector([u, x.apply(v), w])


@pytest.mark.parametrize("text", FAMILIES)
def test_trivial_projector(text):
    d, sp = setup(text, 2)
    pr = build_trivial_projector(sp, d, 1).matrix
    assert pr @ pr == pr
    assert rank(pr) == 1
    for b in d.basis:
        assert diagonal_action(sp, b) @ pr == ExactMatrix.zeros(sp.totalDim)
    s = build_swap(sp, 1, 2).matrix
    # antisymmetric line for Sp, symmetric for O(p,q)
    assert s @ pr == pr.scale(transposition_sign(d.spec))
    assert transposition_sign(d.spec) == (-1 if d.spec.is_sp else 1)
    g = invariant_form_matrix(d.spec)
    g2 = kron(g, g)
    assert pr.transpose() @ g2 == g2 @ pr


def test_projector_rank_on_three_legs():
    d, sp = setup("sp:4", 3)
    pr = build_trivial_projector(sp, d, 2).matrix
    assert rank(pr) == d.dimV


@pytest.mark.parametrize("text", FAMILIES)
def test_omega_split_and_read_off(text):
    d, sp = setup(text, 2)
    om = build_omega(sp, d, 1, 2).matrix
    assert om == build_omega(sp, d, 1, 2, "k").matrix + build_omega(sp, d, 1, 2, "p").matrix
    s = build_swap(sp, 1, 2).matrix
    pr = build_trivial_projector(sp, d, 1).matrix
    assert om - s.scale(d.swap_coefficient) == pr.scale(d.m0)


def test_xi_legs():
    d, sp = setup("sp:4", 3)
    x1, x2, x3 = (build_xi_leg(sp, d, i).matrix for i in (1, 2, 3))
    assert x2 @ x2 == ExactMatrix.identity(sp.totalDim)
    om = build_omega(sp, d, 1, 2).matrix
    assert x3 @ om == om @ x3
    op = build_omega(sp, d, 1, 2, "p").matrix
    ok = build_omega(sp, d, 1, 2, "k").matrix
    assert x1 @ x2 @ op @ x2 @ x1 == op
    assert x2 @ op @ x2 == -op
    assert x1 @ ok == ok @ x1


def test_leg_checks():
    d, sp = setup("sp:2", 2)
    with pytest.raises(BadLeg):
        build_swap(sp, 2, 1)
    with pytest.raises(BadLeg):
        build_omega(sp, d, 1, 3)
    with pytest.raises(BadLeg):
        build_xi_leg(sp, d, 0)
