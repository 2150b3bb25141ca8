"""The embedding of the rotation algebra into the localized one."""

import pytest

from qiso2.freealg import casimir_element, m2_gen
from qiso2.morphism import (
    Morphism,
    _candidate_images,
    _factors_weight_family,
    build_psi,
    check_homomorphism_samples,
    verify_relations,
)


@pytest.fixture(scope="module")
def psi():
    return build_psi()


def test_selection(psi):
    assert psi.meta["binding"] == "natural"
    assert psi.meta["ladder_sign"] == -1
    assert psi.meta["rejected"] == []


def test_relations_map_to_zero(psi):
    assert all(row["ok"] for row in verify_relations(psi))


def test_twist_partner_fails_factorization():
    # flipping the sign on F is an automorphism of the target, so the twin
    # candidate passes the relations; only the weight-family factorization
    # separates the two
    twin = Morphism(_candidate_images(1, "natural"), meta={})
    assert all(row["ok"] for row in verify_relations(twin))
    assert not _factors_weight_family(twin, (-2, 2))


def test_swapped_bindings_fail_relations():
    for f in (-1, 1):
        swapped = Morphism(_candidate_images(f, "swapped"), meta={})
        assert not all(row["ok"] for row in verify_relations(swapped))


def test_casimir_image_is_f_times_e(psi):
    cim = psi.apply(casimir_element())
    assert cim == m2_gen("F") * m2_gen("E"), str(cim)


def test_casimir_image_is_central(psi):
    cim = psi.apply(casimir_element())
    for name in ("E", "F", "K"):
        x = m2_gen(name)
        assert (cim * x - x * cim).is_zero(), name


def test_random_products_are_multiplicative(psi):
    fails = check_homomorphism_samples(psi, n=25, seed=3)
    assert fails == [], fails[:1]
