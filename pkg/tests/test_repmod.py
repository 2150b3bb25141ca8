"""Weight families, degenerate decomposition, seed reconstruction."""

import pytest

from qiso2.errors import DegenerateSeedError, NonExtendableError
from qiso2.freealg import (
    iso2_cubic_relations,
    iso2_defining_relations,
    m2_gen,
    m2hat_defining_relations,
)
from qiso2.repmod import (
    EXACT,
    Field,
    Window,
    apply_m2_to_weight,
    casimir_of,
    casimir_single_vector,
    check_relations_on_rep,
    compare_ops,
    decompose_degenerate,
    iso2_weight_action,
    ladder_point,
    nonclassical_rep,
    one_dim_iso2,
    one_dim_m2hat,
    reconstruct_from_seed,
    weight_rep_iso2,
    weight_rep_m2hat,
)
from qiso2.scalars import IUNIT, QHALF, RVAR, SVAR, integer, qpow

W5 = Window(-5, 5)
FN = Field.numeric(1.7, tol=1e-9)
SN, RN = 0.8 + 0.3j, 2.1 + 0j


@pytest.fixture(scope="module")
def iso2_ops():
    return weight_rep_iso2(W5, SVAR, RVAR)


@pytest.fixture(scope="module")
def m2hat_ops():
    return weight_rep_m2hat(W5, SVAR, RVAR)


def test_rotation_family_relations(iso2_ops):
    res = check_relations_on_rep(iso2_defining_relations(), iso2_ops, W5, EXACT)
    assert all(row["ok"] for row in res), [r for r in res if not r["ok"]]
    res = check_relations_on_rep(iso2_cubic_relations(), iso2_ops, W5, EXACT)
    assert all(row["ok"] for row in res), [r for r in res if not r["ok"]]


def test_casimir_acts_as_r_squared(iso2_ops):
    val, ok, _ = casimir_of(iso2_ops, W5, EXACT)
    assert ok and val == RVAR ** 2, str(val)
    # independent single-vector route, several base points
    for m0 in (-2, 0, 3):
        assert casimir_single_vector(EXACT, SVAR, RVAR, m0) == RVAR ** 2


def test_localized_family_relations(m2hat_ops):
    res = check_relations_on_rep(
        m2hat_defining_relations(kmin=-2, kmax=2), m2hat_ops, W5, EXACT)
    assert all(row["ok"] for row in res), [r for r in res if not r["ok"]]


def test_element_action_matches_matrix_column():
    elem = (m2_gen("E") + m2_gen("F")) * m2_gen("G", 0)
    act = iso2_weight_action(EXACT, SVAR, RVAR)
    for m in (-2, 0, 1):
        got = apply_m2_to_weight(elem, m, EXACT, SVAR, RVAR)
        want = act("T2", m)
        assert set(got) == set(want)
        assert all(got[k] == want[k] for k in got), m


def test_numeric_mode_agrees():
    wn = Window(-8, 8)
    ops = weight_rep_iso2(wn, SN, RN, FN)
    res = check_relations_on_rep(iso2_defining_relations(), ops, wn, FN)
    assert all(row["ok"] for row in res)
    val, ok, _ = casimir_of(ops, wn, FN)
    assert ok and abs(val - RN ** 2) < 1e-9


def test_ladder_detection():
    assert ladder_point(SVAR, EXACT) is None
    assert ladder_point(IUNIT * QHALF, EXACT) == ("half-odd", 0, 1)
    assert ladder_point(-IUNIT * QHALF ** 5, EXACT) == ("half-odd", 2, -1)
    assert ladder_point(IUNIT * qpow(2), EXACT) == ("integer", 2, 1)
    assert ladder_point(SN, FN) is None
    assert ladder_point(1j * FN.qhp(3), FN) == ("half-odd", 1, 1)


def test_integer_ladder_refused():
    with pytest.raises(NonExtendableError):
        weight_rep_iso2(W5, IUNIT * qpow(1), RVAR)
    with pytest.raises(NonExtendableError):
        weight_rep_m2hat(W5, IUNIT * qpow(1), RVAR)


def test_one_dimensional_families():
    od = one_dim_iso2(integer(5))
    res = check_relations_on_rep(iso2_defining_relations(), od, Window(0, 0), EXACT)
    assert all(row["ok"] for row in res)
    odm = one_dim_m2hat(integer(3))
    res = check_relations_on_rep(
        m2hat_defining_relations(kmin=-2, kmax=2), odm, Window(0, 0), EXACT)
    assert all(row["ok"] for row in res)


def test_degenerate_point_decomposes_into_blocks():
    dec = decompose_degenerate(0, 1, j_max=6)
    assert dec["pairing_consistent"]
    for et in (1, -1):
        ref = nonclassical_rep(6, RVAR, 1, et)
        for g in ("I", "T1", "T2"):
            ok, wit = compare_ops(dec["blocks"][et][g], ref[g], cols=range(0, 6))
            assert ok, (et, g, wit)


def test_blocks_standalone_relations_and_casimir():
    for et in (1, -1):
        ref = nonclassical_rep(8, RVAR, 1, et)
        res = check_relations_on_rep(iso2_defining_relations(), ref, Window(0, 8), EXACT)
        assert all(row["ok"] for row in res), (et, [r for r in res if not r["ok"]])
        val, ok, _ = casimir_of(ref, Window(0, 8), EXACT)
        assert ok and val == RVAR ** 2, (et, str(val))


def test_reconstruction_from_generic_seed():
    rec = reconstruct_from_seed(RVAR ** 2, SVAR, steps_up=6, steps_down=6)
    assert all(row["ok"] for row in rec["relations"]), rec["relations"]
    assert rec["casimir_matches_seed"]
    assert rec["r_value"] == RVAR
    assert rec["rescaled_matches"] is True, rec["rescale_witness"]
    assert rec["mirrored_lowering_breaks_relations"] is True


def test_wrong_seed_constant_detected():
    rec = reconstruct_from_seed(RVAR ** 2 * qpow(1), SVAR, steps_up=4, steps_down=4,
                                r_val=RVAR, check_mirrored_variant=False)
    assert rec["rescaled_matches"] is False


def test_degenerate_seed_refused():
    with pytest.raises(DegenerateSeedError) as exc:
        reconstruct_from_seed(RVAR ** 2, IUNIT * QHALF ** 3)
    assert exc.value.m == 1 and exc.value.sign == 1


def test_numeric_reconstruction():
    rec = reconstruct_from_seed(RN ** 2, SN, steps_up=5, steps_down=5, field=FN)
    assert all(row["ok"] for row in rec["relations"])
    assert rec["casimir_matches_seed"]
    assert rec["rescaled_matches"] is True, rec["rescale_witness"]
