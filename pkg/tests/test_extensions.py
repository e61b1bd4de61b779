import random

import numpy as np
import pytest

from nilaffine.algebra import RestrictedStructure
from nilaffine.cochain import Cochain1, Cochain2
from nilaffine.extensions import (
    build_extension,
    cocycle_from_name,
    isomorphism_defect,
    render_extension_table,
    verify_extension,
)
from nilaffine.restricted import RestrictedCochain2, d1_star, restricted_kernel


def sample_structures(p, rng):
    lam = [rng.randrange(1, p) for _ in range(p)]
    out = [RestrictedStructure.zero(p), RestrictedStructure.from_lambda(p, lam)]
    if p % 3 == 2:
        out.append(RestrictedStructure(p, [-x for x in lam], lam))
    return out


def test_bar_extension():
    p = 11
    s = RestrictedStructure.zero(p)
    e = build_extension(s, cocycle_from_name("bar:3", p))
    x = np.array([0, 0, 2] + [0] * (p - 2))
    assert e.pmap(x)[p] == pow(2, p, p)
    assert not e.tensor[:, :, p].any()


def test_e14_extension_bracket():
    p = 7
    e = build_extension(RestrictedStructure.zero(p), cocycle_from_name("e14", p))
    rng = random.Random(0)
    a = np.array([rng.randrange(p) for _ in range(p)] + [0])
    b = np.array([rng.randrange(p) for _ in range(p)] + [0])
    assert e.bracket(a, b)[p] == (a[0] * b[3] - a[3] * b[0]) % p
    assert e.pmap(a)[p] == 0


@pytest.mark.parametrize("p", [5, 7])
def test_iff_kernel_membership(p):
    rng = random.Random(p)
    for s in sample_structures(p, rng):
        for v in restricted_kernel(s):
            c = RestrictedCochain2.from_vector(p, v)
            assert verify_extension(build_extension(s, c), samples=5).passed
        for _ in range(20):
            v = np.array([rng.randrange(p) for _ in range(p * (p - 1) // 2 + p)])
            c = RestrictedCochain2.from_vector(p, v)
            report = verify_extension(build_extension(s, c), samples=5)
            assert not report.passed
            assert report.failures()[0].witness


def test_jacobi_witness_for_non_cocycle():
    p = 7
    c = RestrictedCochain2.from_sigma(Cochain2.basis_cochain(p, 1, 5))
    report = verify_extension(build_extension(RestrictedStructure.zero(p), c), samples=2)
    check = report["jacobi_basis_triples"]
    assert not check.passed and len(check.witness["triple"]) == 3


def test_phi_p1_fails_when_mu_plus_lambda_nonzero():
    p = 11
    s = RestrictedStructure.from_lambda(p, [1] * p)
    report = verify_extension(build_extension(s, cocycle_from_name("phi_p1", p)), samples=3)
    assert not report["ad_p_equals_ad_of_pmap"].passed


def test_reference_pmap_breaks_additivity():
    p = 7
    e = build_extension(RestrictedStructure.zero(p), cocycle_from_name("phi_p1", p), method="reference")
    assert not verify_extension(e, samples=3)["jacobson_additivity"].passed


@pytest.mark.parametrize("p", [5, 7, 11])
def test_cohomologous_cocycles_give_isomorphic_extensions(p):
    rng = random.Random(p)
    for s in sample_structures(p, rng):
        c = cocycle_from_name("e14", p) + cocycle_from_name("bar:2", p)
        psi = Cochain1.from_array(p, [rng.randrange(p) for _ in range(p)])
        e1 = build_extension(s, c)
        e2 = build_extension(s, c + d1_star(psi, s))
        assert isomorphism_defect(e1, e2, psi) == []
        assert isomorphism_defect(e1, build_extension(s, c), psi) != [] or not psi.array.any()


def test_c_only_from_cocycle_pairs():
    p = 7
    c = cocycle_from_name("phi_p1", p)
    e = build_extension(RestrictedStructure.zero(p), c)
    for i in range(p):
        for j in range(p):
            assert (e.tensor[i, j, p] != 0) == (c.sigma(i + 1, j + 1) != 0)


def test_table_rows():
    rows = render_extension_table(RestrictedStructure.zero(11))
    assert [r["cocycle"] for r in rows[:3]] == ["e14", "e25", "phi_p1"]
    assert len(rows) == 3 + 11
    assert rows[0]["bracket_delta"] == "alpha_1*beta_4 - alpha_4*beta_1"
    assert rows[3]["pmap_delta"] == "alpha_1^11"

    rows = render_extension_table(RestrictedStructure.from_lambda(11, [1] * 11))
    assert "phi_p1" not in [r["cocycle"] for r in rows]


def test_table_reference_reading():
    rows = render_extension_table(RestrictedStructure.zero(5), reading="reference")
    assert {r["cocycle"]: r["pmap_delta"] for r in rows}["e25"] == "(1/2)*alpha_1^3*alpha_2^2"


def test_unknown_cocycle_name():
    with pytest.raises(ValueError):
        cocycle_from_name("bar:9", 7)
    with pytest.raises(ValueError):
        cocycle_from_name("e99", 7)
