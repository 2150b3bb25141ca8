"""Acceptance gate: one test per shipped guarantee.

Each criterion records PASS or FAIL into RESULTS; the conftest terminal
summary prints one line per criterion after the run.  Tolerances and window
sizes here are the contract, do not loosen them.
"""

import cmath
import random
from contextlib import contextmanager

import pytest

from qiso2.analysis import (
    block_params_equivalent,
    classical_commutator_defect,
    classify_weight_parameter,
    find_intertwiner,
    nonclassical_peak_entry,
    spectrum_collisions,
    weight_params_equivalent,
)
from qiso2.errors import NonExtendableError
from qiso2.freealg import (
    ISO2,
    M2HAT,
    Iso2Element,
    casimir_element,
    casimir_symmetric_form,
    check_confluence,
    gen_iso2,
    iso2_defining_relations,
    iso2_rules_broken,
    m2hat_defining_relations,
    nf_iso2,
)
from qiso2.morphism import build_psi, check_homomorphism_samples, verify_relations
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
    nonclassical_rep,
    reconstruct_from_seed,
    weight_rep_iso2,
    weight_rep_m2hat,
)
from qiso2.scalars import IUNIT, ONE, QHALF, RVAR, SVAR, integer, qhpow, qpow

RESULTS = {}

Q_NUM = 1.7
S_NUM = 0.8 + 0.3j
R_NUM = 2.1
FN = Field.numeric(Q_NUM, tol=1e-9)


@contextmanager
def criterion(n, label):
    RESULTS[n] = (False, label)
    yield
    RESULTS[n] = (True, label)


@pytest.fixture(scope="module")
def psi():
    return build_psi()


def test_criterion_01_casimir_identity():
    with criterion(1, "symmetric casimir reduces to the 3-term form"):
        C = nf_iso2(casimir_symmetric_form())
        assert C == casimir_element()
        assert set(C.terms) == {(2, 0, 0), (0, 2, 0), (1, 1, 1)}
        assert C.terms[(2, 0, 0)] == qpow(-1)
        assert C.terms[(0, 2, 0)] == qpow(1)
        assert C.terms[(1, 1, 1)] == qhpow(-3) * (ONE - qpow(2))


def test_criterion_02_serre_type_relations():
    with criterion(2, "cubic consequences normalize exactly"):
        I = gen_iso2("I")
        T2 = gen_iso2("T2")
        qq = qpow(1) + qpow(-1)
        lhs1 = nf_iso2(I * I * T2 - qq * (I * T2 * I) + T2 * I * I)
        assert lhs1 == Iso2Element({(0, 1, 0): -ONE}), str(lhs1)
        lhs2 = nf_iso2(I * T2 * T2 - qq * (T2 * I * T2) + T2 * T2 * I)
        assert lhs2.is_zero(), str(lhs2)


def test_criterion_03_centrality():
    with criterion(3, "casimir commutes with all generators"):
        C = casimir_element()
        for g in ("I", "T1", "T2"):
            X = nf_iso2(gen_iso2(g))
            assert (C * X - X * C).is_zero(), g


def test_criterion_04_confluence():
    with criterion(4, "rewrite systems confluent, broken variant is not"):
        assert check_confluence(ISO2) == []
        assert check_confluence(M2HAT) == []
        failures = check_confluence(ISO2, rules=iso2_rules_broken())
        assert len(failures) >= 1
        assert ("I", "T2", "T1") in [f[0] for f in failures]


def test_criterion_05_embedding_is_a_homomorphism(psi):
    with criterion(5, "relation images vanish, 100 random pairs multiplicative"):
        rows = verify_relations(psi)
        assert len(rows) == 3 and all(row["ok"] for row in rows), rows
        fails = check_homomorphism_samples(psi, n=100, seed=11, max_degree=3)
        assert fails == [], fails[:1]


def test_criterion_06_representation_relations():
    with criterion(6, "weight families satisfy relations on [-12,12], exact + numeric"):
        w = Window(-12, 12)
        ops_r = weight_rep_iso2(w, SVAR, RVAR)
        res = check_relations_on_rep(iso2_defining_relations(), ops_r, w, EXACT)
        assert all(row["ok"] for row in res), [r for r in res if not r["ok"]]
        ops_pi = weight_rep_m2hat(w, SVAR, RVAR)
        res = check_relations_on_rep(
            m2hat_defining_relations(kmin=-2, kmax=2), ops_pi, w, EXACT)
        assert all(row["ok"] for row in res), [r for r in res if not r["ok"]]
        ops_n = weight_rep_iso2(w, S_NUM, R_NUM, FN)
        res = check_relations_on_rep(iso2_defining_relations(), ops_n, w, FN)
        assert all(row["ok"] for row in res), [r for r in res if not r["ok"]]


def test_criterion_07_factorization(psi):
    with criterion(7, "rotation family factors through the embedding, entrywise"):
        act = iso2_weight_action(EXACT, SVAR, RVAR)
        for g in ("I", "T1", "T2"):
            img = psi.images[g]
            for m in range(-6, 7):
                got = apply_m2_to_weight(img, m, EXACT, SVAR, RVAR)
                want = act(g, m)
                assert set(got) == set(want), (g, m)
                assert all(got[k] == want[k] for k in got), (g, m)


def test_criterion_08_casimir_scalarity():
    with criterion(8, "casimir scalar on both families, oracle and window independent"):
        for w in (Window(-5, 5), Window(-8, 8)):
            ops = weight_rep_iso2(w, SVAR, RVAR)
            val, ok, _ = casimir_of(ops, w, EXACT)
            assert ok and val == RVAR ** 2, (w, str(val))
        for m0 in (-3, 0, 2, 5):
            assert casimir_single_vector(EXACT, SVAR, RVAR, m0) == RVAR ** 2
        for eps in (1, -1):
            for et in (1, -1):
                blk = nonclassical_rep(7, RVAR, eps, et)
                val, ok, _ = casimir_of(blk, Window(0, 7), EXACT)
                assert ok and val == RVAR ** 2, (eps, et, str(val))


def test_criterion_09_degenerate_decomposition():
    with criterion(9, "pairing basis block-diagonalizes the degenerate family"):
        dec = decompose_degenerate(0, 1, j_max=8)
        assert dec["s_value"] == IUNIT * QHALF
        assert dec["pairing_consistent"]  # off-diagonal blocks exactly zero
        for et in (1, -1):
            ref = nonclassical_rep(8, RVAR, 1, et)
            for g in ("I", "T1", "T2"):
                ok, wit = compare_ops(dec["blocks"][et][g], ref[g], cols=range(0, 8))
                assert ok, (et, g, wit)


def test_criterion_10_trace_separation():
    with criterion(10, "block traces separate the inequivalent labels"):
        kappa0 = QHALF - qhpow(-1)

        def t2_trace(r, et, size):
            blk = nonclassical_rep(size, r, 1, et)
            tr = None
            for j in range(0, size):
                v = blk["T2"].entry(j, j)
                tr = v if tr is None else tr + v
            return tr

        for size in (1, 4, 9):
            for et in (1, -1):
                want = -(integer(et)) * RVAR / kappa0
                assert t2_trace(RVAR, et, size) == want, (size, et)
        # injective on label classes: equal exactly for the flip-equivalent pair
        labels = [(RVAR, 1), (RVAR, -1), (integer(2) * RVAR, 1), (-RVAR, -1)]
        traces = [t2_trace(r, et, 5) for r, et in labels]
        for a in range(len(labels)):
            for b in range(a + 1, len(labels)):
                same = traces[a] == traces[b]
                equivalent = block_params_equivalent(
                    (labels[a][0], 1, labels[a][1]), (labels[b][0], 1, labels[b][1]))
                assert same == equivalent, (labels[a], labels[b])


def test_criterion_11_reconstruction():
    with criterion(11, "seed recursion holds for j 0..15 and rescales onto the family"):
        rec = reconstruct_from_seed(RVAR ** 2, SVAR, steps_up=17, steps_down=17)
        assert all(row["ok"] for row in rec["relations"])
        assert rec["casimir_matches_seed"]
        assert rec["rescaled_matches"] is True, rec["rescale_witness"]
        ops = rec["ops"]
        C = RVAR ** 2
        s = SVAR

        def combo(a_t1, a_t2, col):
            out = {}
            for row, v in ops["T1"].cols[col].items():
                out[row] = out.get(row, v - v) + a_t1 * v
            for row, v in ops["T2"].cols[col].items():
                out[row] = out.get(row, v - v) + a_t2 * v
            return {k: v for k, v in out.items() if not v.is_zero()}

        bracket = (qpow(1) - qpow(-1))
        for j in range(0, 16):
            # raising definition: (i T1 - s^-1 q^(-j+1/2) T2) |j> = |j+1>
            up = combo(IUNIT, -(s ** -1) * qhpow(-2 * j + 1), j)
            assert list(up) == [j + 1] and up[j + 1].is_one(), j
            # lowering identity: (i T1 + s q^(j+3/2) T2) |j+1> = -C q |j>
            down = combo(IUNIT, s * qhpow(2 * j + 3), j + 1)
            assert list(down) == [j] and down[j] == -C * qpow(1), j
            # the diagonal is the weight bracket
            diag = ops["I"].entry(j, j)
            assert diag == IUNIT * (s * qpow(j) - s ** -1 * qpow(-j)) / bracket, j
        for j in range(0, -16, -1):
            # mirrored recursion on the other side of the seed vector
            dn = combo(IUNIT, s * qhpow(2 * j + 1), j)
            assert list(dn) == [j - 1] and dn[j - 1].is_one(), j
            back = combo(IUNIT, -(s ** -1) * qhpow(-2 * j + 3), j - 1)
            assert list(back) == [j] and back[j] == -C * qpow(1), j


def test_criterion_12_classical_limit():
    with criterion(12, "relation defect scales linearly, block entries blow up"):
        w = Window(-8, 8)
        d3 = classical_commutator_defect(1e-3, 0.4, w)
        d4 = classical_commutator_defect(1e-4, 0.4, w)
        assert 0.05 <= d4 / d3 <= 0.2, (d3, d4)
        assert nonclassical_peak_entry(1e-3) >= 0.5 / 1e-3
        assert nonclassical_peak_entry(1e-4) >= 0.5 / 1e-4


def test_criterion_13_equivalence_suite():
    with criterion(13, "30-point equivalence grid, intertwiners confirm each side"):
        q = Q_NUM
        s0, r0 = S_NUM, R_NUM
        weight_exact = [
            ((SVAR, RVAR), (SVAR, RVAR), True),
            ((SVAR, RVAR), (SVAR * qpow(1), RVAR), True),
            ((SVAR, RVAR), (SVAR * qpow(3), -RVAR), True),
            ((SVAR, RVAR), (SVAR * qpow(-2), RVAR), True),
            ((SVAR, RVAR), (SVAR, -RVAR), True),
            ((SVAR, RVAR), (SVAR * QHALF, RVAR), False),
            ((SVAR, RVAR), (integer(2) * SVAR, RVAR), False),
            ((SVAR, RVAR), (SVAR, RVAR * qpow(1)), False),
            ((SVAR, RVAR), (SVAR ** -1, RVAR), False),
            ((SVAR, RVAR), (SVAR, integer(2) * RVAR), False),
        ]
        for p1, p2, want in weight_exact:
            assert weight_params_equivalent(p1[0], p1[1], p2[0], p2[1]) is want, (p1, p2)

        positives = [
            (s0, r0),
            (s0 * q, -r0),
            (s0 * q ** 2, -r0),
            (s0 / q, r0),
            (s0, -r0),
        ]
        negatives = [
            (s0, 1.3),
            (s0, 2.0),
            (s0 * 1.24, r0),
            (-s0, r0),
            (1.0 / s0, r0),
        ]
        for p2 in positives:
            assert weight_params_equivalent(s0, r0, p2[0], p2[1], FN), p2
        for p2 in negatives:
            assert not weight_params_equivalent(s0, r0, p2[0], p2[1], FN), p2

        block_grid = [
            ((RVAR, 1, 1), (RVAR, 1, 1), True),
            ((RVAR, 1, 1), (-RVAR, 1, -1), True),
            ((RVAR, -1, 1), (-RVAR, -1, -1), True),
            ((RVAR, 1, 1), (RVAR, 1, -1), False),
            ((RVAR, 1, 1), (-RVAR, 1, 1), False),
            ((RVAR, 1, 1), (RVAR, -1, 1), False),
            ((2.1, 1, 1), (-2.1, 1, -1), True),
            ((2.1, 1, 1), (1.3, 1, 1), False),
            ((2.1, -1, -1), (-2.1, -1, 1), True),
            ((2.1, 1, -1), (2.1, -1, -1), False),
        ]
        for p1, p2, want in block_grid:
            assert block_params_equivalent(p1, p2) is want, (p1, p2)

        # the numeric search must confirm every decision it can see
        for p2 in positives:
            res = find_intertwiner((s0, r0), p2, window=(-20, 20), q=q)
            assert res["matrix"] is not None, (p2, res["residual"])
            assert res["residual"] < 1e-8, (p2, res["residual"])
        for p2 in negatives:
            res = find_intertwiner((s0, r0), p2, window=(-20, 20), q=q)
            assert res["matrix"] is None, p2
            assert res["residual"] > 1e-2, (p2, res["residual"])


def test_criterion_14_degeneracy_dichotomy():
    with criterion(14, "classification agrees with spectra and constructability"):
        w = Window(-7, 7)
        rng = random.Random(19)
        # twenty generic points, angle kept away from the imaginary axis
        for _ in range(20):
            s = rng.uniform(0.5, 2.0) * cmath.exp(1j * rng.uniform(0.2, 1.2))
            assert classify_weight_parameter(s, FN) == {"kind": "generic"}, s
            assert spectrum_collisions(s, w, FN) == [], s
            weight_rep_iso2(w, s, R_NUM, FN)  # must build without poles
        # the half-odd ladder: reducible, collisions, still constructible
        for m in range(-2, 3):
            for sign, unit in ((1, IUNIT), (-1, -IUNIT)):
                s = unit * QHALF ** (2 * m + 1)
                cls = classify_weight_parameter(s)
                assert cls == {"kind": "reducible", "m": m, "sign": sign}, (m, sign)
                col = spectrum_collisions(s, w, EXACT)
                assert col and all(m1 + m2 == -(2 * m + 1) for m1, m2 in col)
                weight_rep_iso2(w, s, RVAR)
                dec = decompose_degenerate(m, sign, j_max=3)
                assert dec["pairing_consistent"], (m, sign)
        # the integer ladder: non-extendable, collisions, construction refused
        for n in range(-2, 3):
            for sign, unit in ((1, IUNIT), (-1, -IUNIT)):
                s = unit * qpow(n)
                cls = classify_weight_parameter(s)
                assert cls == {"kind": "non-extendable", "n": n, "sign": sign}, (n, sign)
                col = spectrum_collisions(s, w, EXACT)
                assert col and all(m1 + m2 == -2 * n for m1, m2 in col)
                with pytest.raises(NonExtendableError):
                    weight_rep_iso2(w, s, RVAR)
