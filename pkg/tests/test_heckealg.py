import random

import pytest
from hypothesis import given, settings, strategies as st

from vwhecke.exactlin import ExactMatrix, GaussRat, I, gr
from vwhecke.heckealg import (HeckeElement, HeckeParams, check_type_D_extension, commutator,
                              drinfeld_commutator_rhs, drinfeld_generator, element_relations, hmul,
                              lusztig_drinfeld, module_relations, normal_form_multiply, principal_series,
                              star_maps)
from vwhecke.wbgroup import SignedPerm, enumerate_group, generator, longest_element, regular_matrix


def random_element(k, rnd, terms=2, maxdeg=2):
    G = enumerate_group(k)
    out = HeckeElement.zero(k)
    for _ in range(terms):
        exps = [0] * k
        for _ in range(rnd.randint(0, maxdeg)):
            exps[rnd.randrange(k)] += 1
        coef = GaussRat(rnd.randint(-3, 3), rnd.randint(-1, 1))
        out = out + HeckeElement.monomial(rnd.choice(G), exps, coef)
    return out


def test_anticommutator_rank_one():
    for c in (0, 1, gr("1/2"), GaussRat(1, 2)):
        p = HeckeParams(1, c)
        s = HeckeElement.group(generator(1, 1))
        e = HeckeElement.eps(1, 1)
        assert hmul(p, s, e) + hmul(p, e, s) == HeckeElement.scalar(1, gr(c) * 2)


def test_group_times_one_and_simple_cross():
    p = HeckeParams(2, 1)
    w = SignedPerm([2, -1])
    assert hmul(p, HeckeElement.group(w), HeckeElement.scalar(2)) == HeckeElement.group(w)
    s = generator(2, 1)
    # s eps1 = eps2 s + 1, so eps2 s has normal form s eps1 - 1
    lhs = hmul(p, HeckeElement.eps(2, 2), HeckeElement.group(s))
    assert lhs == HeckeElement.monomial(s, (1, 0)) - HeckeElement.scalar(2)


@pytest.mark.parametrize("c", [0, 1, "1/2", "2/3"])
def test_principal_series_rank_one(c):
    nu = GaussRat("3/2", 1)
    mod = principal_series(HeckeParams(1, c), (nu,))
    assert mod.eps[1] == ExactMatrix.from_rows([[nu, gr(c) * 2], [0, -nu]])
    # hand-written 2x2 oracle for the anticommutator
    S = ExactMatrix.from_rows([[0, 1], [1, 0]])
    assert mod.theta[1] == S
    assert S @ mod.eps[1] + mod.eps[1] @ S == ExactMatrix.scalar(2, gr(c) * 2)


def test_principal_series_zero_parameter():
    mod = principal_series(HeckeParams(2, 0), (0, 0))
    one = [gr(1)] + [gr(0)] * 7
    assert all(all(x == 0 for x in mod.eps[i].apply(one)) for i in (1, 2))


@pytest.mark.parametrize("k,c", [(1, "1/2"), (2, 0), (2, 1), (3, "1/2"), (3, GaussRat(1, 1))])
def test_principal_series_relations(k, c):
    lam = [GaussRat(i, -i) / 3 + 1 for i in range(1, k + 1)]
    mod = principal_series(HeckeParams(k, c), lam)
    assert mod.dim == len(enumerate_group(k))
    assert all(module_relations(mod).values())


def test_group_part_is_regular_representation():
    mod = principal_series(HeckeParams(2, 1), (1, 2))
    G = enumerate_group(2)
    for w in G:
        assert mod.group_matrix(w) == regular_matrix(w, G)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_element_relations(k):
    assert all(element_relations(HeckeParams(k, gr("3/2"))).values())


def test_associativity_fuzz():
    rnd = random.Random(11)
    for case in range(1000):
        k = 1 + case % 3
        p = HeckeParams(k, GaussRat(rnd.randint(-2, 2), rnd.randint(-1, 1)) / 2)
        a, b, c = (random_element(k, rnd, terms=1 + case % 2, maxdeg=1 + case % 2) for _ in range(3))
        assert hmul(p, hmul(p, a, b), c) == hmul(p, a, hmul(p, b, c))


def test_pbw_monomials_independent():
    # the normal form of a sum of distinct PBW monomials never collapses
    p = HeckeParams(2, 1)
    monos = [HeckeElement.monomial(w, (a, b)) for w in enumerate_group(2) for a in range(3) for b in range(3)
             if a + b <= 2]
    total = HeckeElement.zero(2)
    for m in monos:
        total = total + normal_form_multiply(m, HeckeElement.scalar(2), p)
    assert len(total.terms) == len(monos)


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_text_round_trip(seed):
    rnd = random.Random(seed)
    e = random_element(2, rnd, terms=3)
    assert HeckeElement.parse(2, str(e)) == e


@pytest.mark.parametrize("k", [1, 2, 3])
def test_lusztig_drinfeld_round_trip(k):
    p = HeckeParams(k, gr("1/2"))
    rnd = random.Random(k)
    for _ in range(5):
        e = random_element(k, rnd)
        assert lusztig_drinfeld(lusztig_drinfeld(e, p, "to"), p, "from") == e
    assert lusztig_drinfeld(lusztig_drinfeld(HeckeElement.eps(k, 1), p, "to"), p, "from") == HeckeElement.eps(k, 1)


def test_drinfeld_generator_rank_one():
    c = gr("2/3")
    p = HeckeParams(1, c)
    s = HeckeElement.group(generator(1, 1))
    et = drinfeld_generator(p, 1)
    assert et == HeckeElement.eps(1, 1) - s.scale(c)
    assert hmul(p, s, et) + hmul(p, et, s) == HeckeElement.zero(1)


@pytest.mark.parametrize("k,c", [(2, 1), (2, "1/2"), (3, 1)])
def test_drinfeld_commutators(k, c):
    p = HeckeParams(k, c)
    gens = [drinfeld_generator(p, i) for i in range(1, k + 1)]
    for i in range(k):
        for j in range(i + 1, k):
            a = [0] * k
            b = [0] * k
            a[i], b[j] = 1, 1
            assert commutator(gens[i], gens[j], p) == drinfeld_commutator_rhs(p, a, b, gr("-1/4"))
    # group elements permute the Drinfeld generators
    for g in range(1, k + 1):
        w = HeckeElement.group(generator(k, g))
        for j in range(1, k + 1):
            img = generator(k, g)(j)
            assert hmul(p, w, gens[j - 1], w) == gens[abs(img) - 1].scale(1 if img > 0 else -1)


def test_star_examples():
    p = HeckeParams(2, 1)
    s = HeckeElement.group(generator(2, 1))
    assert star_maps(s, p) == s
    et = drinfeld_generator(p, 1)
    assert star_maps(et, p) == -et
    e1 = HeckeElement.eps(2, 1)
    assert star_maps(e1, p, "bullet") == e1
    assert star_maps(e1.scale(I), p, "bullet") == e1.scale(-I)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_star_is_antihomomorphism(k):
    rnd = random.Random(100 + k)
    p = HeckeParams(k, gr("3/2"))
    for which in ("star", "bullet"):
        for _ in range(4):
            a, b = random_element(k, rnd), random_element(k, rnd)
            lhs = star_maps(hmul(p, a, b), p, which)
            rhs = hmul(p, star_maps(b, p, which), star_maps(a, p, which))
            assert lhs == rhs


def test_star_equals_conjugated_bullet():
    # 100 random elements over k = 1..3 and three parameters
    rnd = random.Random(5)
    bad = 0
    for case in range(100):
        k = 1 + case % 3
        c = [0, 1, gr("1/2")][case % 3 if k > 1 else 1]
        p = HeckeParams(k, c)
        w0 = HeckeElement.group(longest_element(k))
        h = random_element(k, rnd)
        if star_maps(h, p) != hmul(p, w0, star_maps(h, p, "bullet"), w0):
            bad += 1
    assert bad == 0


@pytest.mark.parametrize("kk,order", [(2, 4), (3, 24)])
def test_type_D_extension(kk, order):
    rep = check_type_D_extension(kk)
    assert rep["ok"]
    assert rep["d_group_order"] == order
