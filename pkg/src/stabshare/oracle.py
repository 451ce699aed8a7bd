"""Dense-state brute-force engine for verifying every symbolic claim.

Builds exact codewords and the encoding isometry from the stabilizer
projector, computes reduced states, and re-derives information groups,
perfect presence, absence, Choi purity, and twirl concealment directly from
complex matrices.  Deliberately independent of the linear-algebra shortcuts
it is used to certify.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from . import pauli
from .code import StabilizerCode
from .infogroup import InfoGroup, group_from_rows
from .pauli import DEFAULT_AMPLITUDE_CAP, PauliProduct, ResourceLimitError

__all__ = [
    "DETECTION_TOL",
    "STATE_TOL",
    "ALGEBRA_TOL",
    "stabilizer_elements",
    "code_projector",
    "codewords",
    "encoding_isometry",
    "encode",
    "partial_trace",
    "reduced_state",
    "info_group_bruteforce",
    "pauli_eigen_sectors",
    "verify_perfect_presence",
    "verify_absence",
    "choi_check",
    "choi_decoupling",
    "verify_concealment",
    "expansion_consistency",
    "trace_distance",
    "hs_inner",
    "random_secret",
    "basis_secret",
]

# Separated so detection never flips on roundoff: 1e-9 decides whether a
# traced operator is nonzero, 1e-10 compares states, 1e-12 checks algebra.
DETECTION_TOL = 1e-9
STATE_TOL = 1e-10
ALGEBRA_TOL = 1e-12


def _check_cap(amplitudes: int, cap: int | None) -> None:
    cap = DEFAULT_AMPLITUDE_CAP if cap is None else cap
    if amplitudes > cap:
        raise ResourceLimitError(
            f"dense object needs {amplitudes} amplitudes, cap is {cap}")


def _digits(value: int, d: int, width: int) -> tuple[int, ...]:
    """Base-d digits of value, most significant first (site 1 leftmost)."""
    return tuple((value // d**(width - 1 - i)) % d for i in range(width))


def stabilizer_elements(code: StabilizerCode) -> list[PauliProduct]:
    """All d^(n-k) group elements as exact symbolic products."""
    gens = code.stabilizer
    out = []
    for exps in itertools.product(range(code.d), repeat=len(gens)):
        element = pauli.identity(code.d, code.n)
        for g, e in zip(gens, exps):
            element = element * pauli.power(g, e)
        out.append(element)
    return out


@functools.lru_cache(maxsize=32)
def code_projector(code: StabilizerCode, cap: int | None = None) -> np.ndarray:
    """Uniform average of all stabilizer group elements; must be a projector."""
    dim = code.d**code.n
    _check_cap(dim, cap)
    total = np.zeros((dim, dim), dtype=complex)
    for element in stabilizer_elements(code):
        total += pauli.dense_matrix(element, cap=dim)
    proj = total / code.d**(code.n - code.k)
    if np.max(np.abs(proj @ proj - proj)) > 1e-9 or abs(np.trace(proj)) < 0.5:
        raise ValueError(
            "stabilizer group does not average to a projector; "
            "the code is not well formed")
    proj.setflags(write=False)
    return proj


def _eigen_scalar_root(p: PauliProduct) -> complex:
    """nu with nu^d equal to the scalar p^d, so (p/nu)^d is the identity."""
    pd = pauli.power(p, p.d)
    # p^d is a pure phase; its exponent fixes the branch.
    return np.exp(2j * np.pi * pd.phase / p.d**2)


def _sector_projector(dense: np.ndarray, nu: complex, sector: int,
                      d: int) -> np.ndarray:
    omega = np.exp(2j * np.pi / d)
    dim = dense.shape[0]
    acc = np.zeros((dim, dim), dtype=complex)
    step = np.eye(dim, dtype=complex)
    for t in range(d):
        acc += step * omega**(-sector * t)
        step = step @ (dense / nu)
    return acc / d


@functools.lru_cache(maxsize=32)
def codewords(code: StabilizerCode, cap: int | None = None) -> tuple[np.ndarray, ...]:
    """The d^k orthonormal codewords.

    |c_0> is the first standard basis vector with a nonzero projection onto
    the code space, pinned to the principal joint eigensector of the
    logical-Z representatives (for the catalog codes, whose logical Z are
    diagonal, this is the plain projector scan).  |c_j> applies the logical-X
    representatives with the base-d digits of j as exponents.
    """
    d, n, k = code.d, code.n, code.k
    dim = d**n
    _check_cap(dim, cap)
    proj = np.array(code_projector(code, cap))
    for lz in code.logical_z:
        dense = pauli.dense_matrix(lz, cap=dim)
        proj = proj @ _sector_projector(dense, _eigen_scalar_root(lz), 0, d)

    c0 = None
    for m in range(dim):
        column = proj[:, m]
        norm = np.linalg.norm(column)
        if norm > 1e-8:
            c0 = column / norm
            break
    if c0 is None:
        raise ValueError("code projector is zero; the code is not well formed")

    lx_dense = [pauli.dense_matrix(g, cap=dim) for g in code.logical_x]
    words = []
    for j in range(d**k):
        vec = c0
        for site, e in enumerate(_digits(j, d, k)):
            vec = np.linalg.matrix_power(lx_dense[site], e) @ vec
        words.append(vec)

    gram = np.array([[np.vdot(a, b) for b in words] for a in words])
    if np.max(np.abs(gram - np.eye(d**k))) > 1e-9:
        raise ValueError("codewords are not orthonormal; invalid logical set")
    base = np.array(code_projector(code, cap))
    for w in words:
        if np.linalg.norm(base @ w - w) > 1e-9:
            raise ValueError("codeword escapes the stabilized subspace")
        w.setflags(write=False)
    return tuple(words)


@functools.lru_cache(maxsize=32)
def encoding_isometry(code: StabilizerCode, cap: int | None = None) -> np.ndarray:
    """V = sum_j |c_j><j| as a d^n x d^k matrix."""
    words = codewords(code, cap)
    v = np.column_stack(words)
    v.setflags(write=False)
    return v


def encode(code: StabilizerCode, secret, cap: int | None = None) -> np.ndarray:
    secret = np.asarray(secret, dtype=complex).reshape(-1)
    if secret.size != code.d**code.k:
        raise ValueError(
            f"secret has dimension {secret.size}, expected {code.d**code.k}")
    return encoding_isometry(code, cap) @ secret


def partial_trace(rho: np.ndarray, d: int, keep) -> np.ndarray:
    """Trace out every site not in `keep` (1-based); rho is (d^m, d^m)."""
    dim = rho.shape[0]
    m = round(np.log(dim) / np.log(d)) if dim > 1 else 0
    if d**m != dim:
        raise ValueError(f"dimension {dim} is not a power of d={d}")
    keep0 = sorted(int(i) - 1 for i in keep)
    if any(i < 0 or i >= m for i in keep0):
        raise ValueError(f"keep sites {sorted(keep)} out of range 1..{m}")
    if not keep0:
        return np.array([[np.trace(rho)]])
    tensor = rho.reshape((d,) * (2 * m))
    row_idx = list(range(m))
    col_idx = [m + i if i in keep0 else i for i in range(m)]
    out_idx = [i for i in keep0] + [m + i for i in keep0]
    reduced = np.einsum(tensor, row_idx + col_idx, out_idx)
    size = d ** len(keep0)
    return reduced.reshape(size, size)


def reduced_state(state_or_op, subset, d: int) -> np.ndarray:
    """Partial trace onto `subset`; vectors are promoted to projectors."""
    arr = np.asarray(state_or_op, dtype=complex)
    if arr.ndim == 1:
        arr = np.outer(arr, arr.conj())
    return partial_trace(arr, d, subset)


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """(1/2) ||a - b||_1 for Hermitian a, b."""
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(a - b))))


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    return complex(np.trace(a.conj().T @ b))


def random_secret(d: int, k: int, rng: np.random.Generator) -> np.ndarray:
    vec = rng.normal(size=d**k) + 1j * rng.normal(size=d**k)
    return vec / np.linalg.norm(vec)


def basis_secret(d: int, k: int, j: int) -> np.ndarray:
    vec = np.zeros(d**k, dtype=complex)
    vec[j] = 1.0
    return vec


def _encoded_logical(code: StabilizerCode, x, z,
                     cap: int | None = None) -> np.ndarray:
    """V (X^x Z^z) V-dagger as a dense carrier operator."""
    v = encoding_isometry(code, cap)
    op = pauli.dense_matrix(PauliProduct(code.d, tuple(x), tuple(z)),
                            cap=code.d**code.k)
    return v @ op @ v.conj().T


def info_group_bruteforce(code: StabilizerCode, subset,
                          cap: int | None = None,
                          tol: float = DETECTION_TOL) -> InfoGroup:
    """Test every input Pauli's traced image against zero; span the hits."""
    d, k = code.d, code.k
    subset = tuple(sorted(set(int(i) for i in subset)))
    hits = []
    for exps in itertools.product(range(d), repeat=2 * k):
        x, z = exps[:k], exps[k:]
        traced = partial_trace(_encoded_logical(code, x, z, cap), d, subset)
        if np.linalg.norm(traced) > tol:
            hits.append(np.array(exps, dtype=np.int64))
    hits = np.array(hits, dtype=np.int64)
    group = group_from_rows(d, k, hits, subset=subset)
    if len(hits) != d**group.rank:
        raise ValueError(
            f"traced hits do not form a subgroup: {len(hits)} hits, "
            f"span rank {group.rank}")
    return group


def pauli_eigen_sectors(p: PauliProduct,
                        cap: int | None = None) -> list[tuple[complex, np.ndarray]]:
    """Exact (eigenvalue, projector) pairs of a Pauli, via its cyclic powers."""
    dim = p.d**p.m
    _check_cap(dim, cap)
    dense = pauli.dense_matrix(p, cap=dim)
    nu = _eigen_scalar_root(p)
    omega = np.exp(2j * np.pi / p.d)
    sectors = []
    for j in range(p.d):
        proj = _sector_projector(dense, nu, j, p.d)
        if abs(np.trace(proj)) > 1e-9:
            sectors.append((nu * omega**j, proj))
    return sectors


def _sector_vector(proj: np.ndarray) -> np.ndarray:
    for m in range(proj.shape[0]):
        column = proj[:, m]
        norm = np.linalg.norm(column)
        if norm > 1e-8:
            return column / norm
    raise ValueError("empty eigensector")


def verify_perfect_presence(code: StabilizerCode, subset, p: PauliProduct,
                            cap: int | None = None,
                            tol: float = DETECTION_TOL) -> bool:
    """Encoded eigenvectors of distinct eigenvalues have orthogonal support on S."""
    if p.d != code.d or p.m != code.k:
        raise ValueError("operator must act on the k input qudits")
    vectors = [_sector_vector(proj) for _, proj in pauli_eigen_sectors(p, cap)]
    reduced = [reduced_state(encode(code, v, cap), subset, code.d)
               for v in vectors]
    for a, b in itertools.combinations(reduced, 2):
        if abs(hs_inner(a, b)) > tol:
            return False
    return True


def verify_absence(code: StabilizerCode, subset, secrets,
                   cap: int | None = None) -> float:
    """Max trace distance among reduced secrets and the secret-free state."""
    d, k = code.d, code.k
    v = encoding_isometry(code, cap)
    baseline = partial_trace(v @ v.conj().T / d**k, d, subset)
    reduced = [reduced_state(encode(code, s, cap), subset, d) for s in secrets]
    worst = 0.0
    for state in reduced:
        worst = max(worst, trace_distance(state, baseline))
    for a, b in itertools.combinations(reduced, 2):
        worst = max(worst, trace_distance(a, b))
    return worst


def _choi_marginal(code: StabilizerCode, subset,
                   pre_operator: PauliProduct | None,
                   cap: int | None) -> np.ndarray:
    """Reference+subset marginal of (I (x) V U)|Psi+> for a known input U."""
    d, n, k = code.d, code.n, code.k
    _check_cap(d**(n + k), cap)
    v = np.array(encoding_isometry(code, cap))
    if pre_operator is not None:
        v = v @ pauli.dense_matrix(pre_operator, cap=d**k)
    # Omega[(j, idx)] = V[idx, j] / sqrt(d^k); reference sites come first.
    omega_vec = (v.T / np.sqrt(d**k)).reshape(-1)
    keep = list(range(1, k + 1)) + [k + int(i) for i in subset]
    return reduced_state(omega_vec, keep, d)


def choi_check(code: StabilizerCode, subset,
               pre_operator: PauliProduct | None = None,
               cap: int | None = None) -> tuple[float, float]:
    """Purity of the reference+subset Choi marginal and the reference defect.

    Sends half of a maximally entangled state through the encoding (with an
    optional known input Pauli applied first).  Purity 1 together with a
    maximally mixed reference certifies a perfect channel into the subset.
    The converse needs the traced-out carriers to hold no entropy of their
    own (true for the full carrier set); membership testing for proper
    subsets uses choi_decoupling instead.
    """
    d, k = code.d, code.k
    rho_rs = _choi_marginal(code, subset, pre_operator, cap)
    purity = float(np.real(np.trace(rho_rs @ rho_rs)))
    rho_r = partial_trace(rho_rs, d, range(1, k + 1))
    defect = trace_distance(rho_r, np.eye(d**k) / d**k)
    return purity, defect


def choi_decoupling(code: StabilizerCode, subset,
                    pre_operator: PauliProduct | None = None,
                    cap: int | None = None) -> float:
    """Distance of the reference+subset Choi marginal from a product state.

    Zero iff the subset learns nothing about the reference, i.e. iff the
    subset is forbidden; applied to the complement it certifies that a
    subset can recover everything.
    """
    d, k = code.d, code.k
    rho_rs = _choi_marginal(code, subset, pre_operator, cap)
    rho_r = partial_trace(rho_rs, d, range(1, k + 1))
    m = round(np.log(rho_rs.shape[0]) / np.log(d))
    rho_s = partial_trace(rho_rs, d, range(k + 1, m + 1))
    return trace_distance(rho_rs, np.kron(rho_r, rho_s))


def verify_concealment(code: StabilizerCode, plan, secrets, subset,
                       cap: int | None = None) -> float:
    """Max pairwise distance of key-averaged reduced states; must vanish."""
    from .twirl import enumerate_keys, twirl_operator

    d, k = code.d, code.k
    n_keys = d**plan.key_length
    averaged = []
    for secret in secrets:
        secret = np.asarray(secret, dtype=complex).reshape(-1)
        acc = None
        for key in enumerate_keys(plan):
            u = pauli.dense_matrix(twirl_operator(plan, key), cap=d**k)
            rho = reduced_state(encode(code, u @ secret, cap), subset, d)
            acc = rho if acc is None else acc + rho
        averaged.append(acc / n_keys)
    worst = 0.0
    for a, b in itertools.combinations(averaged, 2):
        worst = max(worst, trace_distance(a, b))
    return worst


def expansion_consistency(code: StabilizerCode, secret, subset,
                          cap: int | None = None) -> float:
    """Max deviation between the direct reduced state and its Pauli expansion.

    Expands |psi><psi| in the input Pauli basis with Fourier coefficients
    c(x,z) = <psi| (X^x Z^z)^dagger |psi> and pushes each term through the
    encoding: the reassembled reduced state must match the direct one.
    """
    d, k = code.d, code.k
    secret = np.asarray(secret, dtype=complex).reshape(-1)
    direct = reduced_state(encode(code, secret, cap), subset, d)
    total = np.zeros_like(direct)
    for exps in itertools.product(range(d), repeat=2 * k):
        x, z = exps[:k], exps[k:]
        op = pauli.dense_matrix(PauliProduct(d, x, z), cap=d**k)
        coeff = np.vdot(op @ secret, secret)  # <psi| op^dagger |psi>
        if abs(coeff) < 1e-15:
            continue
        total += coeff * partial_trace(
            _encoded_logical(code, x, z, cap), d, subset)
    total /= d**k
    return float(np.max(np.abs(direct - total)))
