from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from vwhecke.exactlin import (I, ONE, ZERO, ExactMatrix, GaussRat, NoSolution, congruence_diagonalize,
                              gr, hermitian_signature, inverse, kernel_basis, kron, rank, solve_linear)

small = st.integers(min_value=-6, max_value=6)
gauss = st.builds(lambda a, b, c, d: GaussRat(Fraction(a, abs(b) + 1), Fraction(c, abs(d) + 1)), small, small, small, small)


@given(gauss, gauss)
def test_conjugation_is_multiplicative(x, y):
    assert x.conj().conj() == x
    assert (x * y).conj() == x.conj() * y.conj()


@given(gauss)
def test_inverse_is_exact(x):
    if not x.is_zero():
        assert x * x.inv() == ONE


@given(gauss)
def test_parse_round_trip(x):
    assert GaussRat.parse(str(x)) == x


def test_parse_forms():
    assert GaussRat.parse("3/2") == gr(3) / 2
    assert GaussRat.parse("1/3+i") == GaussRat(Fraction(1, 3), 1)
    assert GaussRat.parse("-2*i") == GaussRat(0, -2)
    assert GaussRat.parse("i") == I


def _mat(entries):
    return ExactMatrix.from_rows([[gr(x) if not isinstance(x, GaussRat) else x for x in row] for row in entries])


mats = st.lists(st.lists(gauss, min_size=3, max_size=3), min_size=3, max_size=3).map(ExactMatrix.from_rows)


@given(mats, mats, mats)
def test_product_is_associative_and_adjoint_reverses(a, b, c):
    assert (a @ b) @ c == a @ (b @ c)
    assert (a @ b).H() == b.H() @ a.H()


@given(mats, mats)
def test_no_stored_zeros(a, b):
    for m in (a + b, a - a, a @ b, a.scale(ZERO)):
        assert all(not v.is_zero() for v in m.entries.values())


def test_kernel_examples():
    assert kernel_basis(ExactMatrix.identity(3)) == []
    assert len(kernel_basis(ExactMatrix.zeros(2))) == 2
    (v,) = kernel_basis(_mat([[1, I], [-I, 1]]))
    # proportional to (-i, 1)
    assert v[0] * 1 == v[1] * (-I)


def test_solve_examples():
    v = (gr(1), gr(2), gr(3))
    assert tuple(solve_linear(ExactMatrix.identity(3), v)) == v
    assert tuple(solve_linear(_mat([[1, 1]]), (gr(2),))) == (gr(2), ZERO)
    with pytest.raises(NoSolution):
        solve_linear(_mat([[1], [1]]), (gr(1), gr(2)))


@given(mats)
def test_inverse_or_singular(a):
    if rank(a) == 3:
        assert a @ inverse(a) == ExactMatrix.identity(3)


def test_signature_examples():
    assert hermitian_signature(ExactMatrix.identity(4)) == (4, 0, 0)
    assert hermitian_signature(ExactMatrix.diag([1, -1, 0])) == (1, 1, 1)
    assert hermitian_signature(_mat([[0, 1], [1, 0]])) == (1, 1, 0)


@given(mats)
def test_congruence_diagonalization(a):
    g = a + a.H()
    p, d = congruence_diagonalize(g)
    assert p.H() @ g @ p == ExactMatrix.diag(d)
    assert rank(p) == 3
    assert all(x.is_real() for x in d)


def test_kron_examples():
    assert kron(ExactMatrix.identity(2), ExactMatrix.identity(3)) == ExactMatrix.identity(6)
    b = _mat([[1, 2], [3, I]])
    assert kron(_mat([[2]]), b) == b.scale(2)
    d = ExactMatrix.diag([1, -1])
    assert kron(d, d) == ExactMatrix.diag([1, -1, -1, 1])


def test_matrix_text_round_trip():
    m = _mat([[1, I], [gr(3) / 2, 0]])
    assert ExactMatrix.parse(str(m)) == m
