import numpy as np
import pytest

from stabshare import catalog, validate
from stabshare.code import StabilizerCode
from stabshare.infogroup import canonical_form, group_from_rows
from stabshare.pauli import from_symplectic
from stabshare.primefield import mod_rank


@pytest.fixture(scope="session")
def cnot():
    return catalog("cnot_2_1")


@pytest.fixture(scope="session")
def five_qubit():
    return catalog("five_qubit")


@pytest.fixture(scope="session")
def four_two_two():
    return catalog("four_two_two")


@pytest.fixture(scope="session")
def steane():
    return catalog("steane")


@pytest.fixture(scope="session")
def ghz4():
    return catalog("ghz_n", 4)


@pytest.fixture(scope="session")
def catalog_codes():
    """Every catalog code at the sizes the worked examples use."""
    codes = [catalog("cnot_2_1"), catalog("four_two_two"),
             catalog("five_qubit"), catalog("steane")]
    codes += [catalog("ghz_n", n) for n in (3, 4, 5, 6)]
    return codes


def random_code(rng: np.random.Generator, d: int, n: int, k: int,
                name: str = "random") -> StabilizerCode:
    """Random valid [[n,k]]_d code from a random symplectic basis.

    Draws a full-rank 2n x 2n matrix, canonicalizes it into n hyperbolic
    pairs, and takes the last n-k second-partners as the stabilizer and the
    first k pairs as logical representatives.  For d = 2, stabilizer rows
    whose X/Z supports overlap on an odd number of sites cannot have order
    two with w-phases, so those draws are rejected.
    """
    for _ in range(500):
        m = rng.integers(0, d, size=(2 * n, 2 * n))
        if mod_rank(m, d) != 2 * n:
            continue
        form = canonical_form(group_from_rows(d, n, m))
        assert form.r == n and form.s == 0
        pairs = [(np.array(form.basis[2 * i]), np.array(form.basis[2 * i + 1]))
                 for i in range(n)]
        stab_rows = [pairs[i][1] for i in range(k, n)]
        if d == 2 and any(int(row[:n] @ row[n:]) % 2 for row in stab_rows):
            continue
        code = StabilizerCode(
            name, d, n, k,
            tuple(from_symplectic(d, row) for row in stab_rows),
            tuple(from_symplectic(d, pairs[i][0]) for i in range(k)),
            tuple(from_symplectic(d, pairs[i][1]) for i in range(k)),
        )
        if validate(code).is_valid:
            return code
    raise RuntimeError(f"no random [[{n},{k}]]_{d} code found")
