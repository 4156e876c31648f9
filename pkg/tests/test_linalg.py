import numpy as np
import pytest
from hypothesis import given, strategies as st

from cycloclock import linalg
from cycloclock.clock import ClockModel, clock_time_operator, float_commutator, hamiltonian
from cycloclock.exactcyc import CyclotomicNumber, root_of_unity
from cycloclock.linalg import (DimMismatch, OperatorMatrix, Scale, ScaleMismatch,
                               ScalarKindMismatch, StateVector, adjoint, commutator,
                               embed, inner_product, matmul, matvec, trace)

from strategies import cyclotomic_numbers


@st.composite
def exact_matrices(draw, order, dim):
    return OperatorMatrix([[draw(cyclotomic_numbers(order)) for _ in range(dim)]
                           for _ in range(dim)], order)


@st.composite
def exact_vectors(draw, order, dim):
    return StateVector([draw(cyclotomic_numbers(order)) for _ in range(dim)], order)


@st.composite
def matrix_triples(draw):
    order = draw(st.sampled_from([3, 4, 5, 8]))
    dim = draw(st.integers(1, 3))
    return tuple(draw(exact_matrices(order, dim)) for _ in range(3))


def test_commutator_examples():
    a = OperatorMatrix([[1, 2], [3, 4]], 5)
    assert commutator(linalg.identity(2, 5), a) == linalg.zeros(2, 5)
    got = commutator(linalg.diagonal([0, 1], 7), OperatorMatrix([[0, 1], [1, 0]], 7))
    assert got == OperatorMatrix([[0, -1], [1, 0]], 7)
    z = root_of_unity(5, 2)
    b = OperatorMatrix([[z, 1], [0, z * z]], 5)
    assert adjoint(adjoint(b)) == b


def test_float_commutator_example():
    got = commutator(linalg.diagonal([0, 1]), OperatorMatrix([[0, 1], [1, 0]]))
    np.testing.assert_array_equal(got.entries, [[0, -1], [1, 0]])


def test_inner_product_examples():
    e0 = StateVector([1, 0, 0], 3)
    e1 = StateVector([0, 1, 0], 3)
    assert inner_product(e0, e0).value == 1
    assert not inner_product(e0, e1)


def test_inner_product_is_conjugate_linear_in_first_argument():
    z = root_of_unity(4, 1)
    x = StateVector([z, 0], 4)
    y = StateVector([1, 0], 4)
    assert inner_product(x, y).value == root_of_unity(4, 3)
    assert inner_product(y, x).value == z


def test_embed_examples():
    assert np.all(embed(linalg.zeros(3, 7)).entries == 0)
    got = embed(linalg.diagonal([root_of_unity(4, 1)], 4))
    assert abs(got.entries[0, 0] - 1j) < 1e-12


def test_embed_commutator_against_float_pipeline():
    model = ClockModel(5)
    exact = commutator(clock_time_operator(model), hamiltonian(model))
    diff = np.max(np.abs(embed(exact).entries - float_commutator(model)))
    assert diff < 1e-10


def test_scale_arithmetic():
    s, g = Scale(3) * Scale(6)
    assert (s, g) == (Scale(2), 3)
    s, g = Scale(5, 1) * Scale(5)
    assert (s, g) == (Scale(1, 1), 5)
    with pytest.raises(ValueError):
        Scale(4)


def test_scaled_vectors_inner_product_is_rational():
    # (1/sqrt(2)) * (1/2, -1/2) * sqrt(2) twice -> 1/2 * 2 = 1
    v = StateVector([CyclotomicNumber.from_rational(2, "1/2"),
                     CyclotomicNumber.from_rational(2, "-1/2")], 2, Scale(2))
    ip = inner_product(v, v)
    assert ip.scale == Scale() and ip.value == 1


def test_mismatch_errors():
    a = OperatorMatrix([[1]], 3)
    with pytest.raises(ScalarKindMismatch):
        matmul(a, OperatorMatrix([[1]], 4))
    with pytest.raises(ScalarKindMismatch):
        matmul(a, OperatorMatrix([[1]]))
    with pytest.raises(DimMismatch):
        matmul(a, OperatorMatrix([[1, 0], [0, 1]], 3))
    with pytest.raises(DimMismatch):
        inner_product(StateVector([1], 3), StateVector([1, 0], 3))
    with pytest.raises(ScaleMismatch):
        OperatorMatrix([[1]], 3) + OperatorMatrix([[1]], 3, Scale(omega=1))
    with pytest.raises(DimMismatch):
        OperatorMatrix([[1, 2]], 3)


def test_values_are_immutable():
    a = OperatorMatrix([[1, 2], [3, 4]], 5)
    with pytest.raises(ValueError):
        a.entries[0, 0] = CyclotomicNumber.zero(5)


@given(matrix_triples())
def test_exact_matmul_is_associative(triple):
    a, b, c = triple
    assert matmul(matmul(a, b), c) == matmul(a, matmul(b, c))


@given(matrix_triples())
def test_exact_commutator_properties(triple):
    a, b, _ = triple
    assert not any(commutator(a, a).entries.flat)
    assert not trace(commutator(a, b))


@given(st.sampled_from([3, 5, 8]).flatmap(
    lambda n: st.tuples(exact_matrices(n, 3), exact_vectors(n, 3), exact_vectors(n, 3))))
def test_adjoint_identity(args):
    a, x, y = args
    assert inner_product(x, matvec(a, y)) == inner_product(matvec(adjoint(a), x), y)


@given(st.integers(1, 64), st.integers(0, 2**32 - 1))
def test_float_matmul_associative(dim, seed):
    rng = np.random.default_rng(seed)
    a, b, c = (OperatorMatrix(rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))
               for _ in range(3))
    lhs, rhs = matmul(matmul(a, b), c), matmul(a, matmul(b, c))
    scale = max(1.0, float(np.max(np.abs(lhs.entries))))
    assert linalg.max_abs_diff(lhs, rhs) < 1e-9 * scale


@given(st.integers(1, 16), st.integers(0, 2**32 - 1))
def test_float_adjoint_identity(dim, seed):
    rng = np.random.default_rng(seed)
    a = OperatorMatrix(rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))
    x, y = (StateVector(rng.standard_normal(dim) + 1j * rng.standard_normal(dim)) for _ in range(2))
    assert abs(inner_product(x, matvec(a, y)) - inner_product(matvec(adjoint(a), x), y)) < 1e-9


def test_allclose_scales_tolerance_with_dim():
    a = linalg.zeros(4)
    b = OperatorMatrix(np.full((4, 4), 3e-9))
    assert linalg.allclose(a, b)
    assert not linalg.allclose(a, b, tol=1e-10)
