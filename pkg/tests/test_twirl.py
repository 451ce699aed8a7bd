import numpy as np
import pytest

from stabshare import catalog, classify
from stabshare.infogroup import pairing
from stabshare.pauli import PauliProduct, parse, symplectic_vector
from stabshare.primefield import mod_solve
from stabshare.twirl import (
    enumerate_keys,
    intermediate_group,
    sample_twirl,
    twirl_average_is_zero,
    twirl_operator,
    twirl_plan,
)


def plan_for(name, n=None):
    c = catalog(name, n)
    t = classify(c)
    return c, t, twirl_plan(c, t)


def test_intermediate_group_examples(cnot, five_qubit):
    _, t, _ = plan_for("cnot_2_1")
    assert intermediate_group(cnot, t).generators == ((0, 1),)
    g5 = catalog("ghz_n", 5)
    t5 = classify(g5)
    assert intermediate_group(g5, t5).generators == ((0, 1),)
    tf = classify(five_qubit)
    assert intermediate_group(five_qubit, tf).is_trivial


def test_cnot_plan_is_x_twirl():
    _, _, plan = plan_for("cnot_2_1")
    assert [str(g) for g in plan.twirl_generators] == ["X"]
    assert plan.key_length == 1
    assert (plan.canonical.r, plan.canonical.s) == (0, 1)
    assert plan.prescription.threshold_q == 2


def test_ghz_plans_have_unit_key():
    for n in (3, 4, 5, 6):
        _, _, plan = plan_for("ghz_n", n)
        assert [str(g) for g in plan.twirl_generators] == ["X"]
        assert plan.key_length == 1
        assert plan.prescription.threshold_q == n


def test_four_two_two_plan():
    _, _, plan = plan_for("four_two_two")
    assert plan.canonical.r + plan.canonical.s == 2  # r + s = k
    assert plan.key_length == 2 * plan.canonical.r + plan.canonical.s
    assert plan.k <= plan.key_length <= 2 * plan.k
    assert plan.prescription.threshold_q == 3


def test_empty_plan_for_perfect_schemes(five_qubit, steane):
    for c in (five_qubit, steane):
        plan = twirl_plan(c)
        assert plan.is_empty
        assert plan.key_length == 0
        assert plan.twirl_generators == ()
        with pytest.raises(ValueError):
            sample_twirl(plan, 1)


def test_key_length_bounds_and_pair_count(catalog_codes):
    for c in catalog_codes:
        t = classify(c)
        plan = twirl_plan(c, t)
        if not t.intermediate:
            continue
        assert plan.canonical.r + plan.canonical.s == c.k
        assert c.k <= plan.key_length <= 2 * c.k
        if plan.canonical.r == 0:
            assert plan.key_length == c.k


def test_sample_twirl_examples():
    _, _, plan = plan_for("cnot_2_1")
    assert twirl_operator(plan, (0,)).is_identity
    assert twirl_operator(plan, (1,)) == parse("X")
    key, op = sample_twirl(plan, seed=7)
    assert key == sample_twirl(plan, seed=7)[0]  # deterministic
    assert op == twirl_operator(plan, key)
    with pytest.raises(ValueError, match="digits"):
        twirl_operator(plan, (0, 1))


def test_key_space_counts(catalog_codes):
    for c in catalog_codes:
        plan = twirl_plan(c)
        keys = list(enumerate_keys(plan))
        assert len(keys) == c.d**plan.key_length
        assert len(set(keys)) == len(keys)


def test_twirl_average_examples():
    _, _, plan = plan_for("cnot_2_1")
    assert twirl_average_is_zero(plan, parse("Z"))
    with pytest.raises(ValueError, match="nonidentity"):
        twirl_average_is_zero(plan, parse("I"))
    with pytest.raises(ValueError, match="not in the intermediate"):
        twirl_average_is_zero(plan, parse("X"))


def test_twirl_kills_every_intermediate_element(catalog_codes):
    for c in catalog_codes:
        plan = twirl_plan(c)
        if plan.is_empty:
            continue
        for vec in plan.intermediate.elements():
            if not vec.any():
                continue
            g = PauliProduct(c.d, tuple(vec[:c.k]), tuple(vec[c.k:]))
            assert twirl_average_is_zero(plan, g), (c.name, vec)


def test_twirl_generators_target_one_canonical_generator_each(catalog_codes):
    for c in catalog_codes:
        plan = twirl_plan(c)
        if plan.is_empty:
            continue
        basis = [np.array(v) for v in plan.canonical.basis]
        r = plan.canonical.r
        for idx, gen in enumerate(plan.twirl_generators):
            gvec = symplectic_vector(gen)
            # twirl generator order: a_1, b_1, ..., a_r, b_r, d_1, ..., d_s
            if idx < 2 * r:
                target = idx + 1 if idx % 2 == 0 else idx - 1
            else:
                target = 2 * r + (idx - 2 * r)
            for j, b in enumerate(basis):
                val = pairing(gvec, b, c.d)
                assert (val != 0) == (j == target), (c.name, idx, j)


def test_frame_consistency(catalog_codes):
    # Pulling the twirl generators back through the transform recovers the
    # canonical pattern X1, Z1, ..., Xr, Zr, X(r+1), ..., X(r+s).
    for c in catalog_codes:
        plan = twirl_plan(c)
        if plan.is_empty:
            continue
        t = plan.canonical.transform
        k, r, s = c.k, plan.canonical.r, plan.canonical.s
        expected = []
        for i in range(r):
            ei = np.zeros(2 * k, dtype=np.int64); ei[i] = 1
            fi = np.zeros(2 * k, dtype=np.int64); fi[k + i] = 1
            expected += [ei, fi]
        for j in range(s):
            ej = np.zeros(2 * k, dtype=np.int64); ej[r + j] = 1
            expected.append(ej)
        for gen, want in zip(plan.twirl_generators, expected):
            back = mod_solve(t, symplectic_vector(gen), c.d)
            assert back is not None and np.array_equal(back % c.d, want)


def test_plan_report_round_trip():
    import json

    _, _, plan = plan_for("four_two_two")
    payload = plan.to_dict()
    again = json.loads(json.dumps(payload))
    assert again == payload
    assert again["key_length"] == plan.key_length
    assert again["r"] + again["s"] == plan.k
