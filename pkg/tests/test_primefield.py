import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabshare.primefield import (
    FieldElement,
    FieldMatrix,
    is_prime,
    mod_nullspace,
    mod_rank,
    mod_rref,
    mod_solve,
    nullspace,
    row_reduce,
    row_span_contains,
    solve,
)

PRIMES = [2, 3, 5, 7]


def test_is_prime():
    assert [p for p in range(2, 20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert not is_prime(1) and not is_prime(0) and not is_prime(-3)


def test_element_arithmetic():
    a = FieldElement(4, 5)
    b = FieldElement(3, 5)
    assert (a + b).value == 2
    assert (a - b).value == 1
    assert (a * b).value == 2
    assert (-a).value == 1
    assert a.inverse().value == 4  # 4*4 = 16 = 1 mod 5
    assert (a / b).value == (4 * 2) % 5
    assert int(a + 1) == 0


def test_element_mixed_modulus_is_an_error():
    with pytest.raises(ValueError, match="mixed moduli"):
        FieldElement(1, 3) + FieldElement(1, 5)
    with pytest.raises(ValueError, match="mixed moduli"):
        FieldElement(1, 3) * FieldElement(1, 7)


def test_element_rejects_composite_modulus():
    with pytest.raises(ValueError, match="prime"):
        FieldElement(1, 6)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        FieldElement(0, 5).inverse()


def test_matrix_rejects_composite_modulus_and_bad_shape():
    with pytest.raises(ValueError, match="prime"):
        FieldMatrix([[1, 2]], 4)
    with pytest.raises(ValueError, match="2-D"):
        FieldMatrix([1, 2, 3], 5)


def test_matrix_entries_are_reduced_and_frozen():
    m = FieldMatrix([[5, -1], [7, 3]], 5)
    assert m.entries.tolist() == [[0, 4], [2, 3]]
    assert m.element(0, 1) == FieldElement(4, 5)
    with pytest.raises(ValueError):
        m.entries[0, 0] = 1


def test_row_reduce_identical_rows_mod2():
    red, rank, pivots = row_reduce(FieldMatrix([[1, 1], [1, 1]], 2))
    assert rank == 1
    assert pivots == [0]
    assert red.entries.tolist() == [[1, 1], [0, 0]]


def test_row_reduce_scalar_inverse_mod3():
    red, rank, _ = row_reduce(FieldMatrix([[2]], 3))
    assert red.entries.tolist() == [[1]]
    assert rank == 1


def test_row_reduce_identity_mod2():
    red, rank, pivots = row_reduce(FieldMatrix.identity(3, 2))
    assert rank == 3
    assert pivots == [0, 1, 2]
    assert red == FieldMatrix.identity(3, 2)


def test_solve_identity():
    x = solve(FieldMatrix.identity(2, 2), [1, 0])
    assert x.tolist() == [1, 0]


def test_solve_diagonal_mod3():
    x = solve(FieldMatrix([[2, 0], [0, 1]], 3), [1, 2])
    assert x.tolist() == [2, 2]


def test_solve_inconsistent_returns_none():
    assert solve(FieldMatrix([[1, 1], [1, 1]], 2), [0, 1]) is None


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError, match="rows"):
        solve(FieldMatrix([[1, 1]], 2), [1, 0])


def test_nullspace_examples():
    basis = nullspace(FieldMatrix([[1, 1]], 2))
    assert [v.tolist() for v in basis] == [[1, 1]]
    assert nullspace(FieldMatrix.identity(2, 3)) == []
    assert len(nullspace(FieldMatrix.zeros(2, 2, 2))) == 2


def test_empty_shapes():
    red, rank, pivots = mod_rref(np.zeros((0, 3), dtype=np.int64), 2)
    assert rank == 0 and pivots == []
    assert len(mod_nullspace(np.zeros((0, 3), dtype=np.int64), 2)) == 3


def test_row_span_contains():
    rows = [[1, 0, 1], [0, 1, 1]]
    assert row_span_contains(rows, [1, 1, 0], 2)
    assert not row_span_contains(rows, [0, 0, 1], 2)
    assert row_span_contains(np.zeros((0, 3), dtype=np.int64), [0, 0, 0], 2)


@st.composite
def matrix_and_prime(draw):
    p = draw(st.sampled_from(PRIMES))
    rows = draw(st.integers(1, 5))
    cols = draw(st.integers(1, 5))
    data = draw(st.lists(
        st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols),
        min_size=rows, max_size=rows))
    return np.array(data, dtype=np.int64), p


@given(matrix_and_prime())
def test_rank_nullity(mp):
    m, p = mp
    assert mod_rank(m, p) + len(mod_nullspace(m, p)) == m.shape[1]


@given(matrix_and_prime())
def test_rref_idempotent(mp):
    m, p = mp
    once, rank1, piv1 = mod_rref(m, p)
    twice, rank2, piv2 = mod_rref(once, p)
    assert np.array_equal(once, twice)
    assert rank1 == rank2 and piv1 == piv2


@given(matrix_and_prime(), st.data())
@settings(max_examples=60)
def test_solve_recovers_planted_solution(mp, data):
    m, p = mp
    planted = np.array(
        data.draw(st.lists(st.integers(0, p - 1), min_size=m.shape[1],
                           max_size=m.shape[1])), dtype=np.int64)
    b = m @ planted % p
    x = mod_solve(m, b, p)
    assert x is not None
    assert np.array_equal(m @ x % p, b)


@given(matrix_and_prime())
def test_nullspace_vectors_annihilate(mp):
    m, p = mp
    for v in mod_nullspace(m, p):
        assert not np.any(m @ v % p)
