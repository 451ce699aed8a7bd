import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabshare import pauli
from stabshare.pauli import (
    PauliProduct,
    PauliSubgroup,
    ResourceLimitError,
    commutation_exponent,
    dense_matrix,
    from_symplectic,
    identity,
    inverse,
    multiply,
    parse,
    power,
    subgroup_membership,
    symplectic_vector,
    to_string,
)


def ref_single(d: int, x: int, z: int) -> np.ndarray:
    """Independent single-qudit reference: X = sum |j><j+1|, Z = diag(w^j)."""
    xm = np.zeros((d, d), dtype=complex)
    zm = np.zeros((d, d), dtype=complex)
    for j in range(d):
        xm[j, (j + 1) % d] = 1
        zm[j, j] = np.exp(2j * np.pi * j / d)
    return np.linalg.matrix_power(xm, x) @ np.linalg.matrix_power(zm, z)


def ref_dense(p: PauliProduct) -> np.ndarray:
    out = np.array([[np.exp(2j * np.pi * p.phase / p.d)]])
    for a, b in zip(p.x, p.z):
        out = np.kron(out, ref_single(p.d, a, b))
    return out


def test_multiply_xz_order_no_reordering():
    x = parse("X")
    z = parse("Z")
    prod = multiply(x, z)
    assert (prod.x, prod.z, prod.phase) == ((1,), (1,), 0)


def test_multiply_zx_picks_up_phase():
    prod = multiply(parse("Z"), parse("X"))
    assert (prod.x, prod.z, prod.phase) == ((1,), (1,), 1)  # -1 = 1 mod 2


def test_multiply_qutrit_against_explicit_matrices():
    p = PauliProduct(3, (2,), (1,))
    q = PauliProduct(3, (1,), (0,))
    prod = multiply(p, q)
    assert (prod.x, prod.z, prod.phase) == ((0,), (1,), 2)
    assert np.allclose(ref_dense(prod), ref_dense(p) @ ref_dense(q))


def test_multiply_rejects_mismatches():
    with pytest.raises(ValueError):
        multiply(parse("X"), parse("XX"))
    with pytest.raises(ValueError):
        multiply(parse("X"), PauliProduct(3, (1,), (0,)))


def test_commutation_examples():
    assert commutation_exponent(parse("X"), parse("Z")) == 1
    p = PauliProduct(3, (1, 2), (0, 1))
    assert commutation_exponent(p, p) == 0
    assert commutation_exponent(PauliProduct(3, (2,), (0,)),
                                PauliProduct(3, (0,), (1,))) == 2


def test_qutrit_commutation_against_matrices():
    a = PauliProduct(3, (2,), (0,))
    b = PauliProduct(3, (0,), (1,))
    lam = commutation_exponent(a, b)
    lhs = ref_dense(a) @ ref_dense(b)
    rhs = np.exp(2j * np.pi * lam / 3) * ref_dense(b) @ ref_dense(a)
    assert np.allclose(lhs, rhs)


def test_dense_single_qubit():
    assert np.allclose(dense_matrix(parse("X")), [[0, 1], [1, 0]])
    assert np.allclose(dense_matrix(parse("Z")), [[1, 0], [0, -1]])


def test_dense_qutrit_z():
    w = np.exp(2j * np.pi / 3)
    assert np.allclose(dense_matrix(PauliProduct(3, (0,), (1,))),
                       np.diag([1, w, w**2]))


def test_dense_cap():
    with pytest.raises(ResourceLimitError):
        dense_matrix(identity(2, 13))
    with pytest.raises(ResourceLimitError):
        dense_matrix(identity(2, 3), cap=4)


def test_inverse_and_power():
    p = PauliProduct(3, (1, 2), (2, 1), phase=1)
    assert multiply(p, inverse(p)) == identity(3, 2)
    assert power(p, 3).is_identity and power(p, 3).phase == 0
    assert power(p, -1) == inverse(p)
    q = parse("Y")  # x1z1 with phase 0: squares to -I under this convention
    assert power(q, 2) == PauliProduct(2, (0,), (0,), phase=1)


small_pauli = st.builds(
    lambda d, m, data: PauliProduct(
        d, tuple(data[:m]), tuple(data[m:2 * m]), data[2 * m]),
    st.sampled_from([2, 3]),
    st.sampled_from([1, 2]),
    st.lists(st.integers(0, 2), min_size=5, max_size=5),
)


def _pair(strategy):
    return st.tuples(strategy, strategy).filter(
        lambda pq: pq[0].d == pq[1].d and pq[0].m == pq[1].m)


@given(_pair(small_pauli))
def test_commutation_antisymmetric(pq):
    p, q = pq
    assert commutation_exponent(p, q) == (-commutation_exponent(q, p)) % p.d


@given(_pair(small_pauli))
@settings(max_examples=80)
def test_dense_is_a_homomorphism(pq):
    p, q = pq
    lhs = dense_matrix(multiply(p, q))
    rhs = dense_matrix(p) @ dense_matrix(q)
    assert np.max(np.abs(lhs - rhs)) < 1e-12


@given(st.tuples(small_pauli, small_pauli, small_pauli).filter(
    lambda t: len({(p.d, p.m) for p in t}) == 1))
def test_multiply_associative_with_identity(t):
    p, q, r = t
    assert multiply(multiply(p, q), r) == multiply(p, multiply(q, r))
    e = identity(p.d, p.m)
    assert multiply(p, e) == p and multiply(e, p) == p


@pytest.mark.parametrize("d,m", [(2, 1), (2, 2), (3, 1)])
def test_orthonormal_operator_basis(d, m):
    ops = [PauliProduct(d, exps[:m], exps[m:])
           for exps in itertools.product(range(d), repeat=2 * m)]
    dim = d**m
    for p in ops:
        dp = dense_matrix(p)
        for q in ops:
            val = np.trace(dp.conj().T @ dense_matrix(q)) / dim
            want = 1.0 if p == q else 0.0
            assert abs(val - want) < 1e-12


def test_string_round_trip_qubit():
    p = parse("IXYZ")
    assert p == PauliProduct(2, (0, 1, 1, 0), (0, 0, 1, 1))
    assert to_string(p) == "IXYZ"
    assert parse(to_string(p)) == p


def test_string_round_trip_with_phase_and_qutrit():
    p = PauliProduct(3, (2, 0), (1, 2), phase=2)
    assert to_string(p) == "w2*x2z1.x0z2"
    assert parse(to_string(p), 3) == p
    q = PauliProduct(2, (1,), (1,), phase=1)
    assert to_string(q) == "w1*Y"
    assert parse(to_string(q)) == q


def test_parse_errors():
    with pytest.raises(ValueError):
        parse("XQ")
    with pytest.raises(ValueError):
        parse("x1z1", 4)
    with pytest.raises(ValueError):
        parse("IXZ", 3)
    with pytest.raises(ValueError):
        parse("")
    with pytest.raises(ValueError):
        parse("q3*X")


@given(small_pauli)
def test_string_round_trip_property(p):
    assert parse(to_string(p), p.d) == p


def test_symplectic_round_trip():
    p = PauliProduct(3, (1, 2), (0, 1))
    assert from_symplectic(3, symplectic_vector(p)) == p
    with pytest.raises(ValueError):
        from_symplectic(2, [1, 0, 1])


def test_subgroup_membership_examples():
    single_z = PauliSubgroup(2, 1, (parse("Z"),))
    assert subgroup_membership(single_z, parse("Z"))
    assert not subgroup_membership(single_z, parse("X"))
    full = PauliSubgroup(2, 1, (parse("X"), parse("Z")))
    assert subgroup_membership(full, parse("Y"))
    assert subgroup_membership(full, identity(2, 1))


def test_subgroup_rejects_dependent_generators():
    with pytest.raises(ValueError, match="dependent"):
        PauliSubgroup(2, 2, (parse("XX"), parse("XX")))


def test_exponents_reduced_mod_d():
    p = PauliProduct(3, (4, -1), (5, 3), phase=7)
    assert p.x == (1, 2) and p.z == (2, 0) and p.phase == 1
