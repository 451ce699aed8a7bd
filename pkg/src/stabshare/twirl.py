"""Twirl plans: hiding the intermediate structure with a keyed Pauli.

The group generated by the union of all intermediate information groups is
canonicalized into r hyperbolic pairs and s isotropic generators.  In the
canonical frame the twirl generators are X_1, Z_1, ..., X_r, Z_r followed by
the conjugate partners X_(r+1), ..., X_(r+s) of the isotropic generators;
transporting them through the canonical transform gives plain Pauli products
on the input qudits.  Averaging over all d^(2r+s) keyed products kills every
nonidentity element of the intermediate group, so subsets that could see
partial information see none.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from . import infogroup
from .code import StabilizerCode
from .infogroup import CanonicalForm, InfoGroup, SchemeTriplet, pairing
from .pauli import PauliProduct, from_symplectic, power, symplectic_vector

__all__ = [
    "ClassicalPrescription",
    "TwirlPlan",
    "intermediate_group",
    "twirl_plan",
    "sample_twirl",
    "twirl_operator",
    "enumerate_keys",
    "twirl_average_is_zero",
]


@dataclass(frozen=True)
class ClassicalPrescription:
    """Access structure the classical key scheme must reproduce."""

    n: int
    authorized: tuple[tuple[int, ...], ...]
    forbidden: tuple[tuple[int, ...], ...]  # original forbidden plus intermediate
    threshold_q: int | None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "authorized": [list(s) for s in self.authorized],
            "forbidden": [list(s) for s in self.forbidden],
            "threshold_q": self.threshold_q,
        }


@dataclass(frozen=True, eq=False)
class TwirlPlan:
    d: int
    k: int
    intermediate: InfoGroup
    canonical: CanonicalForm
    twirl_generators: tuple[PauliProduct, ...]
    key_length: int
    prescription: ClassicalPrescription

    @property
    def is_empty(self) -> bool:
        return self.key_length == 0

    def to_dict(self) -> dict:
        from .pauli import to_string

        return {
            "D": self.d,
            "k": self.k,
            "r": self.canonical.r,
            "s": self.canonical.s,
            "key_length": self.key_length,
            "twirl_generators": [to_string(g) for g in self.twirl_generators],
            "intermediate_group": [list(row) for row in
                                   self.intermediate.generators],
            "classical_scheme": self.prescription.to_dict(),
        }


def intermediate_group(code: StabilizerCode,
                       triplet: SchemeTriplet) -> InfoGroup:
    """Group generated by the union of G(S) over all intermediate S.

    A plain set union of subgroups is generally not closed, so this is the
    span closure: the smallest group containing every intermediate G(S).
    """
    rows = []
    for subset in triplet.intermediate:
        rows.extend(infogroup.info_group(code, subset).generators)
    base = np.array(rows, dtype=np.int64) if rows else np.zeros((0, 2 * code.k))
    return infogroup.group_from_rows(code.d, code.k, base, subset=None)


def _prescription(triplet: SchemeTriplet) -> ClassicalPrescription:
    merged = tuple(sorted(
        triplet.forbidden + triplet.intermediate, key=lambda s: (len(s), s)))
    return ClassicalPrescription(
        n=triplet.n,
        authorized=triplet.authorized,
        forbidden=merged,
        threshold_q=infogroup.threshold_q(triplet),
    )


def twirl_plan(code: StabilizerCode,
               triplet: SchemeTriplet | None = None) -> TwirlPlan:
    """Derive the minimal twirl for a code (empty plan when I is empty)."""
    if triplet is None:
        triplet = infogroup.classify(code)
    group = intermediate_group(code, triplet)
    canonical = infogroup.canonical_form(group)
    k, d = code.k, code.d

    gens: list[PauliProduct] = []
    t = canonical.transform
    for i in range(canonical.r):
        gens.append(from_symplectic(d, t[:, i]))          # image of X_i
        gens.append(from_symplectic(d, t[:, k + i]))      # image of Z_i
    for j in range(canonical.s):
        gens.append(from_symplectic(d, t[:, canonical.r + j]))  # partner of c_j

    key_length = 2 * canonical.r + canonical.s
    if not group.is_trivial and canonical.r + canonical.s != k:
        raise infogroup.SchemeConsistencyError(
            f"intermediate group has r+s = {canonical.r + canonical.s}, "
            f"expected k = {k}")
    return TwirlPlan(
        d=d, k=k,
        intermediate=group,
        canonical=canonical,
        twirl_generators=tuple(gens),
        key_length=key_length,
        prescription=_prescription(triplet),
    )


def twirl_operator(plan: TwirlPlan, key) -> PauliProduct:
    """Product of the twirl generators raised to the key components."""
    key = tuple(int(v) % plan.d for v in key)
    if len(key) != plan.key_length:
        raise ValueError(
            f"key has {len(key)} digits, plan needs {plan.key_length}")
    out = PauliProduct(plan.d, (0,) * plan.k, (0,) * plan.k)
    for g, e in zip(plan.twirl_generators, key):
        out = out * power(g, e)
    return out


def sample_twirl(plan: TwirlPlan, seed: int) -> tuple[tuple[int, ...], PauliProduct]:
    """Draw a uniform key with a seeded generator; returns (key, operator)."""
    if plan.is_empty:
        raise ValueError("plan is empty; nothing to sample")
    rng = random.Random(seed)
    key = tuple(rng.randrange(plan.d) for _ in range(plan.key_length))
    return key, twirl_operator(plan, key)


def enumerate_keys(plan: TwirlPlan):
    """All d^key_length keys, in lexicographic order."""
    return itertools.product(range(plan.d), repeat=plan.key_length)


def twirl_average_is_zero(plan: TwirlPlan, g: PauliProduct) -> bool:
    """Whether averaging over all keys annihilates the group element g.

    Conjugating g by the keyed product only scales it by a root of unity, so
    the key average vanishes iff some twirl generator has nonzero pairing
    with g.  Must hold for every nonidentity element of the intermediate
    group.
    """
    vec = symplectic_vector(g)
    if g.is_identity:
        raise ValueError("g must be a nonidentity element")
    if not plan.intermediate.contains(vec):
        raise ValueError("g is not in the intermediate information group")
    return any(pairing(symplectic_vector(t), vec, plan.d)
               for t in plan.twirl_generators)
