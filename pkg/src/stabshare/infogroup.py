"""Subset information groups and scheme classification.

For a subset S of carriers, the information group G(S) collects the input
Pauli operators whose encoded images survive the partial trace onto S.  The
decision is pure linear algebra over Z_d: the encoded image of the input
operator with exponents (x|z) is, projectively, the bare product built from
the logical representatives with exponents -(x|z) (the shift operator
X = sum |j><j+1| lowers basis labels, so the isometry that raises powers of
the logical-X representatives encodes both X and Z as the inverses of their
representatives; whole-vector negation leaves every subgroup invariant, so
the plain linear map below is exact for every prime d).  The operator
survives the trace iff some stabilizer word makes its bare product act as
the identity on the complement of S.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .code import StabilizerCode
from .pauli import ResourceLimitError
from .primefield import mod_nullspace, mod_rank, mod_solve, row_space_basis

__all__ = [
    "InfoGroup",
    "CanonicalForm",
    "SubsetRecord",
    "SchemeTriplet",
    "SchemeConsistencyError",
    "pairing",
    "pairing_matrix",
    "info_group",
    "canonical_form",
    "is_full",
    "classify",
    "subsets_in_order",
    "complement",
    "threshold_q",
]

FULL_LISTING_MAX_N = 12
DEFAULT_CLASSIFY_CAP = 20


class SchemeConsistencyError(RuntimeError):
    """A classification postcondition (duality) failed; indicates a bug."""


def pairing(u, v, d: int) -> int:
    """Symplectic pairing u_x . v_z - u_z . v_x mod d on (x|z) vectors."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    half = u.size // 2
    return int((u[:half] @ v[half:] - u[half:] @ v[:half]) % d)


def pairing_matrix(rows, d: int) -> np.ndarray:
    """Antisymmetric Gram matrix of pairwise pairings."""
    rows = np.asarray(rows, dtype=np.int64)
    if rows.size == 0:
        return np.zeros((0, 0), dtype=np.int64)
    half = rows.shape[1] // 2
    return (rows[:, :half] @ rows[:, half:].T
            - rows[:, half:] @ rows[:, :half].T) % d


@dataclass(frozen=True)
class InfoGroup:
    """Projective subgroup of the k-qudit Pauli group, in echelon basis.

    ``generators`` are (x|z) rows in Z_d^(2k), reduced to row-echelon form,
    so two InfoGroups span the same subgroup iff they are equal.
    """

    d: int
    k: int
    generators: tuple[tuple[int, ...], ...]
    subset: tuple[int, ...] | None = None

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0

    @property
    def is_full(self) -> bool:
        return self.rank == 2 * self.k

    def generator_rows(self) -> np.ndarray:
        if not self.generators:
            return np.zeros((0, 2 * self.k), dtype=np.int64)
        return np.array(self.generators, dtype=np.int64)

    def contains(self, vec) -> bool:
        from .primefield import row_span_contains

        v = np.asarray(vec, dtype=np.int64)
        if self.is_trivial:
            return bool(np.all(v % self.d == 0))
        return row_span_contains(self.generator_rows(), v, self.d)

    def elements(self):
        """All d^rank member vectors (desk scale only)."""
        rows = self.generator_rows()
        for coeffs in itertools.product(range(self.d), repeat=self.rank):
            yield (np.array(coeffs, dtype=np.int64) @ rows) % self.d


def group_from_rows(d: int, k: int, rows,
                    subset: tuple[int, ...] | None = None) -> InfoGroup:
    rows = np.asarray(rows, dtype=np.int64)
    if rows.size == 0:
        basis = np.zeros((0, 2 * k), dtype=np.int64)
    else:
        basis = row_space_basis(rows, d)
    return InfoGroup(d, k, tuple(tuple(int(v) for v in row) for row in basis),
                     subset=subset)


def complement(subset, n: int) -> tuple[int, ...]:
    return tuple(sorted(set(range(1, n + 1)) - set(subset)))


def subsets_in_order(n: int):
    """All subsets of {1..n}, ordered by size then lexicographically."""
    for size in range(n + 1):
        yield from itertools.combinations(range(1, n + 1), size)


def info_group(code: StabilizerCode, subset) -> InfoGroup:
    """Generators of the information group of `subset` (1-based indices).

    Solves for all (v, a) with the complement-restriction of
    bare(v) + a . stabilizer_rows vanishing, then projects onto v.
    """
    d, n, k = code.d, code.n, code.k
    subset = tuple(sorted(set(int(i) for i in subset)))
    if subset and (subset[0] < 1 or subset[-1] > n):
        raise ValueError(f"subset {subset} out of range 1..{n}")

    comp = complement(subset, n)
    stacked = np.vstack([code.logical_rows(),
                         code.stabilizer_rows()])  # (2k + n-k) x 2n

    # Keep only the complement's x- and z-columns; kernel rows then describe
    # the (v, a) combinations that act as the identity off the subset.
    cols = [i - 1 for i in comp] + [n + i - 1 for i in comp]
    constraint = stacked[:, cols].T % d  # (2|comp|) x (2k + n-k)
    kernel = mod_nullspace(constraint, d)
    if not kernel:
        return group_from_rows(d, k, np.zeros((0, 2 * k)), subset=subset)
    projected = np.array(kernel, dtype=np.int64)[:, :2 * k]
    return group_from_rows(d, k, projected, subset=subset)


def is_full(group: InfoGroup) -> bool:
    """True iff the group is the whole projective Pauli group of k qudits."""
    return group.is_full


# ---------------------------------------------------------------------------
# Canonical symplectic decomposition.
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CanonicalForm:
    """Hyperbolic-pair / isotropic decomposition of an information group.

    basis holds a_1, b_1, ..., a_r, b_r, c_1, ..., c_s with pairing(a_i, b_i)
    = 1 and every other mutual pairing zero.  ``transform`` is a symplectic
    2k x 2k matrix whose columns are the images of the standard frame
    (e_1..e_k, f_1..f_k): column i is the image of e_i, column k+i of f_i.
    It maps the canonical generators X_i -> a_i, Z_i -> b_i (i <= r) and
    Z_(r+j) -> c_j, so conjugating by it carries canonical-frame operators
    into the original frame.
    """

    d: int
    k: int
    r: int
    s: int
    basis: tuple[tuple[int, ...], ...]
    transform: np.ndarray

    @property
    def key_length(self) -> int:
        return 2 * self.r + self.s


def _pairing_row(vec, k: int, d: int) -> np.ndarray:
    """Coefficients c with pairing(vec, w) = c . w for unknown w."""
    vec = np.asarray(vec, dtype=np.int64)
    out = np.empty(2 * k, dtype=np.int64)
    out[:k] = (-vec[k:]) % d
    out[k:] = vec[:k] % d
    return out


def _solve_with_pairings(current: list[np.ndarray], targets: list[int],
                         k: int, d: int) -> np.ndarray:
    rows = np.array([_pairing_row(v, k, d) for v in current])
    sol = mod_solve(rows, np.array(targets, dtype=np.int64), d)
    if sol is None:  # unreachable for independent `current`
        raise SchemeConsistencyError("symplectic completion system inconsistent")
    return sol % d


def canonical_form(group: InfoGroup) -> CanonicalForm:
    """Symplectic Gram-Schmidt plus completion to a full symplectic frame.

    Deterministic: always take the lowest-index remaining generator, pick its
    first partner with nonzero pairing, scale the partner so the pairing is
    one, and eliminate the pair from the rest.  Leftovers are isotropic.
    """
    d, k = group.d, group.k
    remaining = [row.copy() for row in group.generator_rows()]
    pairs: list[tuple[np.ndarray, np.ndarray]] = []
    isotropic: list[np.ndarray] = []

    while remaining:
        a = remaining.pop(0)
        if not a.any():
            continue
        partner_idx = None
        for j, w in enumerate(remaining):
            if pairing(a, w, d):
                partner_idx = j
                break
        if partner_idx is None:
            isotropic.append(a)
            continue
        b = remaining.pop(partner_idx)
        scale = pow(pairing(a, b, d), -1, d)
        b = b * scale % d
        remaining = [
            (w - pairing(w, b, d) * a + pairing(w, a, d) * b) % d
            for w in remaining
        ]
        pairs.append((a, b))

    r, s = len(pairs), len(isotropic)

    # Complete to a symplectic basis of Z_d^(2k): find a conjugate partner
    # for each isotropic generator, then fill up with fresh hyperbolic pairs.
    current: list[np.ndarray] = []
    for a, b in pairs:
        current.extend([a, b])
    current.extend(isotropic)

    partners: list[np.ndarray] = []
    for j, c in enumerate(isotropic):
        targets = [0] * len(current)
        targets[2 * r + j] = (-1) % d  # pairing(c_j, w) = -1, so pairing(w, c_j) = 1
        w = _solve_with_pairings(current, targets, k, d)
        partners.append(w)
        current.append(w)

    fillers: list[tuple[np.ndarray, np.ndarray]] = []
    while len(current) < 2 * k:
        if current:
            rows = np.array([_pairing_row(v, k, d) for v in current])
            null = mod_nullspace(rows, d)
            u = null[0] % d
        else:
            u = np.zeros(2 * k, dtype=np.int64)
            u[0] = 1
        current.append(u)
        targets = [0] * (len(current) - 1) + [1]  # pairing(u, v) = 1
        v = _solve_with_pairings(current, targets, k, d)
        current.append(v)
        fillers.append((u, v))

    transform = np.zeros((2 * k, 2 * k), dtype=np.int64)
    for i, (a, b) in enumerate(pairs):
        transform[:, i] = a
        transform[:, k + i] = b
    for j in range(s):
        transform[:, r + j] = partners[j]
        transform[:, k + r + j] = isotropic[j]
    for t, (u, v) in enumerate(fillers):
        transform[:, r + s + t] = u
        transform[:, k + r + s + t] = v

    basis = [vec for pair in pairs for vec in pair] + isotropic
    return CanonicalForm(
        d, k, r, s,
        tuple(tuple(int(x) for x in vec) for vec in basis),
        transform,
    )


# ---------------------------------------------------------------------------
# Classification into (A, F, I).
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubsetRecord:
    subset: tuple[int, ...]
    cls: str  # "A", "F" or "I"
    r: int
    s: int

    def to_dict(self) -> dict:
        return {"subset": list(self.subset), "class": self.cls,
                "r": self.r, "s": self.s}


@dataclass(frozen=True)
class SchemeTriplet:
    """The (access, forbidden, intermediate) classification of all subsets."""

    n: int
    d: int
    k: int
    authorized: tuple[tuple[int, ...], ...]
    forbidden: tuple[tuple[int, ...], ...]
    intermediate: tuple[tuple[int, ...], ...]
    minimal_authorized: tuple[tuple[int, ...], ...]
    maximal_forbidden: tuple[tuple[int, ...], ...]
    size_summary: tuple[tuple[int, int, int, int], ...]  # (size, nA, nF, nI)
    records: tuple[SubsetRecord, ...] | None  # kept for n <= FULL_LISTING_MAX_N

    def class_of(self, subset) -> str:
        key = tuple(sorted(subset))
        if key in set(self.authorized):
            return "A"
        if key in set(self.forbidden):
            return "F"
        return "I"

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "D": self.d,
            "k": self.k,
            "counts": {"A": len(self.authorized), "F": len(self.forbidden),
                       "I": len(self.intermediate)},
            "size_summary": [
                {"size": sz, "A": a, "F": f, "I": i}
                for sz, a, f, i in self.size_summary
            ],
            "minimal_authorized": [list(s) for s in self.minimal_authorized],
            "maximal_forbidden": [list(s) for s in self.maximal_forbidden],
        }
        if self.records is not None:
            out["records"] = [rec.to_dict() for rec in self.records]
        return out


def _rs_of(group: InfoGroup) -> tuple[int, int]:
    gram = pairing_matrix(group.generator_rows(), group.d)
    rank2r = mod_rank(gram, group.d) if gram.size else 0
    r = rank2r // 2
    return r, group.rank - 2 * r


def classify(code: StabilizerCode,
             max_carriers: int = DEFAULT_CLASSIFY_CAP) -> SchemeTriplet:
    """Classify every subset of carriers; verifies access/forbidden duality."""
    n = code.n
    if n > max_carriers:
        raise ResourceLimitError(
            f"classification enumerates 2^{n} subsets, cap is n <= {max_carriers}")

    records: list[SubsetRecord] = []
    by_class: dict[str, list[tuple[int, ...]]] = {"A": [], "F": [], "I": []}
    for subset in subsets_in_order(n):
        g = info_group(code, subset)
        if g.is_full:
            cls = "A"
        elif g.is_trivial:
            cls = "F"
        else:
            cls = "I"
        r, s = _rs_of(g)
        records.append(SubsetRecord(subset, cls, r, s))
        by_class[cls].append(subset)

    authorized = set(by_class["A"])
    forbidden = set(by_class["F"])
    for subset in subsets_in_order(n):
        comp = complement(subset, n)
        if (subset in authorized) != (comp in forbidden):
            raise SchemeConsistencyError(
                f"duality violated: {subset} in A is "
                f"{subset in authorized} but complement {comp} in F is "
                f"{comp in forbidden}")

    minimal_a = tuple(
        s for s in by_class["A"]
        if not any(tuple(sorted(set(s) - {i})) in authorized for i in s))
    maximal_f = tuple(
        s for s in by_class["F"]
        if not any(tuple(sorted(set(s) | {i})) in forbidden
                   for i in range(1, n + 1) if i not in s))

    summary = []
    for size in range(n + 1):
        of_size = [rec for rec in records if len(rec.subset) == size]
        summary.append((
            size,
            sum(1 for rec in of_size if rec.cls == "A"),
            sum(1 for rec in of_size if rec.cls == "F"),
            sum(1 for rec in of_size if rec.cls == "I"),
        ))

    return SchemeTriplet(
        n=n, d=code.d, k=code.k,
        authorized=tuple(by_class["A"]),
        forbidden=tuple(by_class["F"]),
        intermediate=tuple(by_class["I"]),
        minimal_authorized=minimal_a,
        maximal_forbidden=maximal_f,
        size_summary=tuple(summary),
        records=tuple(records) if n <= FULL_LISTING_MAX_N else None,
    )


def threshold_q(triplet: SchemeTriplet) -> int | None:
    """q if the access structure is exactly {S : |S| >= q}, else None."""
    if not triplet.authorized:
        return None
    q = min(len(s) for s in triplet.authorized)
    expected = sum(1 for s in subsets_in_order(triplet.n) if len(s) >= q)
    return q if len(triplet.authorized) == expected else None
