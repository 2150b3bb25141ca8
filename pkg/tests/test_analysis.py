"""Classification, equivalence, intertwiners, classical limit."""

import cmath
import random

import pytest

from qiso2.analysis import (
    block_params_equivalent,
    canonical_block_params,
    canonical_weight_params,
    classical_commutator_defect,
    classify_weight_parameter,
    intertwiner_sigma,
    nonclassical_peak_entry,
    spectrum_collisions,
    weight_params_equivalent,
)
from qiso2.errors import NonExtendableError, ReducibleParametersError
from qiso2.repmod import EXACT, Field, Window
from qiso2.scalars import IUNIT, QHALF, RVAR, SVAR, integer, qpow

FN = Field.numeric(1.7, tol=1e-9)
SN = 0.8 + 0.3j


def test_classification_dichotomy():
    assert classify_weight_parameter(SVAR) == {"kind": "generic"}
    assert classify_weight_parameter(IUNIT * QHALF ** 3) == {
        "kind": "reducible", "m": 1, "sign": 1}
    assert classify_weight_parameter(-IUNIT * qpow(2)) == {
        "kind": "non-extendable", "n": 2, "sign": -1}
    assert classify_weight_parameter(SN, FN) == {"kind": "generic"}
    assert classify_weight_parameter(1j * FN.qhp(1), FN)["kind"] == "reducible"


def test_spectrum_collisions_sit_on_the_ladder():
    w = Window(-6, 6)
    assert spectrum_collisions(SVAR, w, EXACT) == []
    col = spectrum_collisions(IUNIT * QHALF, w, EXACT)
    assert col and all(m1 + m2 == -1 for m1, m2 in col)
    coln = spectrum_collisions(1j * FN.qhp(3), w, FN)
    assert coln and all(m1 + m2 == -3 for m1, m2 in coln)


def test_equivalence_exact():
    assert weight_params_equivalent(SVAR, RVAR, SVAR * qpow(3), -RVAR)
    assert not weight_params_equivalent(SVAR, RVAR, SVAR * qpow(3), RVAR * qpow(1))
    assert not weight_params_equivalent(SVAR, RVAR, SVAR * QHALF, RVAR)


def test_equivalence_numeric():
    assert weight_params_equivalent(SN, 2.1, SN * 1.7 ** 2, -2.1, FN)
    assert not weight_params_equivalent(SN, 2.1, SN * 1.31, 2.1, FN)


def test_equivalence_guards():
    with pytest.raises(ReducibleParametersError):
        weight_params_equivalent(IUNIT * QHALF, RVAR, SVAR, RVAR)
    with pytest.raises(NonExtendableError):
        weight_params_equivalent(IUNIT * qpow(1), RVAR, SVAR, RVAR)


def test_block_labels():
    assert block_params_equivalent((RVAR, 1, 1), (RVAR, 1, 1))
    assert block_params_equivalent((RVAR, 1, 1), (-RVAR, 1, -1))
    assert not block_params_equivalent((RVAR, 1, 1), (RVAR, 1, -1))
    assert not block_params_equivalent((RVAR, 1, 1), (RVAR, -1, 1))
    assert canonical_block_params(RVAR, 1, -1) == (-RVAR, 1, 1)


def test_canonical_forms():
    s_can, r_can = canonical_weight_params(SVAR * qpow(5), -RVAR)
    assert s_can == SVAR and r_can == RVAR
    s_can, _ = canonical_weight_params(SVAR * QHALF ** 3, RVAR)
    assert s_can == SVAR * QHALF
    s_can, _ = canonical_weight_params(integer(3) * qpow(-4), RVAR)
    assert s_can == integer(3)
    s_can, r_can = canonical_weight_params(0.8 * 1.7 ** 3 + 0j, -2.1 + 0j, FN)
    s_can2, _ = canonical_weight_params(0.8 + 0j, 2.1 + 0j, FN)
    assert abs(s_can - s_can2) < 1e-9
    assert 1 <= abs(s_can) < 1.7
    assert r_can == 2.1 + 0j


def test_intertwiner_separates_orbits():
    sig_eq = intertwiner_sigma(SN, 2.1, SN * 1.7, -2.1, 1.7, window=(-12, 12))
    sig_ne = intertwiner_sigma(SN, 2.1, SN * 1.24, 2.1, 1.7, window=(-12, 12))
    assert sig_eq < 1e-8, sig_eq
    assert sig_ne > 1e-2, sig_ne
    # r sign flips are invisible, r scale changes are not
    sig_rflip = intertwiner_sigma(SN, 2.1, SN, -2.1, 1.7, window=(-12, 12))
    sig_rscale = intertwiner_sigma(SN, 2.1, SN, 1.3, 1.7, window=(-12, 12))
    assert sig_rflip < 1e-8 and sig_rscale > 1e-2


def test_equivalent_pairs_always_have_intertwiners():
    # sampled invariant: whenever the parameter test says yes, the windowed
    # numeric search must exhibit a witness
    rng = random.Random(5)
    q = 1.7
    checked = 0
    while checked < 20:
        radius = rng.uniform(0.6, 1.5)
        angle = rng.uniform(0.2, 3.0)
        s1 = radius * cmath.exp(1j * angle)
        r1 = rng.uniform(0.5, 3.0)
        n = rng.randrange(-2, 3)
        sign = rng.choice([1.0, -1.0])
        s2 = s1 * q ** n
        r2 = sign * r1
        try:
            assert weight_params_equivalent(s1, r1, s2, r2, Field.numeric(q, tol=1e-9))
        except (ReducibleParametersError, NonExtendableError):
            continue
        sig = intertwiner_sigma(s1, r1, s2, r2, q, window=(-12, 12))
        assert sig < 1e-8, (s1, r1, n, sign, sig)
        checked += 1


def test_classical_limit_defect_shrinks_linearly():
    w = Window(-8, 8)
    d3 = classical_commutator_defect(1e-3, 0.4, w)
    d4 = classical_commutator_defect(1e-4, 0.4, w)
    assert 0.05 <= d4 / d3 <= 0.2, (d3, d4)


def test_nonclassical_blocks_blow_up_classically():
    assert nonclassical_peak_entry(1e-3) >= 0.5 / 1e-3
    assert nonclassical_peak_entry(1e-4) >= 0.5 / 1e-4
