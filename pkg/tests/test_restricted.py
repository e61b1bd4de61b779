import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilaffine.algebra import AlgebraElement, RestrictedStructure, basis_element
from nilaffine.cochain import Cochain1, Cochain2, d1
from nilaffine.fplinalg import FpMatrix, rank
from nilaffine.restricted import (
    BruteForceCapError,
    ClosedFormUnavailable,
    RestrictedCochain2,
    bracket_depth,
    closed_form_for,
    closed_form_polynomial,
    compatibility_sum,
    d1_star,
    d1_star_matrix,
    d2_star,
    d2_star_matrix,
    ind1,
    ind2_matrix,
    ind2_piecewise,
    omega_eval,
    restricted_h1,
    restricted_h2,
    tag_cochain,
    tilde_closed_form,
    tilde_eval_bruteforce,
)

from conftest import PRIMES


def structures(p, rng, count=3):
    out = [RestrictedStructure.zero(p)]
    for _ in range(count):
        lam = [rng.randrange(p) for _ in range(p)]
        out.append(RestrictedStructure.from_lambda(p, lam))
        if p % 3 == 2:
            out.append(RestrictedStructure(p, [rng.randrange(p) for _ in range(p)], lam))
            out.append(RestrictedStructure(p, [-x for x in lam], lam))
    return out


def random_cochain(p, rng):
    return Cochain2.from_array(p, [rng.randrange(p) for _ in range(p * (p - 1) // 2)])


@pytest.mark.parametrize("p", PRIMES)
def test_long_brackets_vanish(p):
    # the sequence sum only sees (p-1)-fold brackets, and none survive
    assert bracket_depth(p) < p - 1


def test_bracket_depth_small_case():
    # e_1 -> e_3 -> e_4 via e_2 then e_1; [e_4, e_1] = 0
    assert bracket_depth(5) == 3


@pytest.mark.parametrize("p", [5, 7])
def test_compatibility_sum_vanishes_on_basis_pairs(p):
    rng = random.Random(p)
    phi = random_cochain(p, rng)
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            assert compatibility_sum(phi, basis_element(p, i), basis_element(p, j)) == 0


@pytest.mark.parametrize("p", [5, 7, 11])
def test_tilde_matches_derived_closed_forms(p):
    rng = random.Random(p)
    tags = ["e14", "e25", "e1p", "phi_p1"] + [f"phi:{k}" for k in range(3, p + 2)]
    for tag in tags:
        phi = tag_cochain(tag, p)
        for _ in range(10):
            g = AlgebraElement.random(p, rng)
            assert tilde_eval_bruteforce(phi, g) == tilde_closed_form(tag, p, g)


def test_reference_formulas_are_not_compatible():
    # alpha_1^(p-1) alpha_2 fails additivity: it is nonzero on e_1 + e_2 yet vanishes on e_1 and e_2
    p = 7
    poly = closed_form_polynomial("phi_p1", p, reading="reference")
    assert poly.evaluate([1, 1, 0, 0, 0, 0, 0], p) == 1
    assert poly.evaluate([1, 0, 0, 0, 0, 0, 0], p) == 0
    assert compatibility_sum(tag_cochain("phi_p1", p), basis_element(p, 1), basis_element(p, 2)) == 0


def test_closed_form_registry():
    assert str(closed_form_polynomial("e25", 5, "reference")) == "(1/2)*alpha_1^3*alpha_2^2"
    assert str(closed_form_polynomial("phi_p1", 11, "reference")) == "alpha_1^10*alpha_2"
    assert str(closed_form_polynomial("e25", 7, "reference")) == "0"
    assert str(closed_form_polynomial("phi_p1", 11)) == "0"
    with pytest.raises(ClosedFormUnavailable):
        closed_form_polynomial("e37", 7)
    with pytest.raises(ClosedFormUnavailable):
        closed_form_for(Cochain2.basis_cochain(7, 1, 5))


def test_bruteforce_cap():
    g = AlgebraElement.random(23, random.Random(0))
    with pytest.raises(BruteForceCapError):
        tilde_eval_bruteforce(tag_cochain("phi_p1", 23), g)
    assert tilde_eval_bruteforce(tag_cochain("phi_p1", 23), g, cap=23) == 0


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([5, 7]), st.integers(0, 2**32))
def test_compatibility_law(p, seed):
    rng = random.Random(seed)
    phi = random_cochain(p, rng)
    c = RestrictedCochain2(phi, tuple(rng.randrange(p) for _ in range(p)))
    g, h = AlgebraElement.random(p, rng), AlgebraElement.random(p, rng)
    lhs = omega_eval(c, g + h)
    rhs = omega_eval(c, g) + omega_eval(c, h) + compatibility_sum(phi, g, h)
    assert lhs == rhs % p
    a = rng.randrange(p)
    assert omega_eval(c, a * g) == pow(a, p, p) * omega_eval(c, g) % p


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([5, 7]), st.integers(0, 2**32))
def test_tilde_is_linear(p, seed):
    rng = random.Random(seed)
    f1, f2 = random_cochain(p, rng), random_cochain(p, rng)
    a = rng.randrange(p)
    g = AlgebraElement.random(p, rng)
    combo = tilde_eval_bruteforce(a * f1 + f2, g)
    assert combo == (a * tilde_eval_bruteforce(f1, g) + tilde_eval_bruteforce(f2, g)) % p


def test_omega_basis_values_and_methods():
    p = 7
    c = RestrictedCochain2(tag_cochain("phi_p1", p), (1, 2, 3, 4, 5, 6, 0))
    for k in range(1, p + 1):
        assert omega_eval(c, basis_element(p, k)) == c.tau[k - 1]
    g = AlgebraElement.random(p, random.Random(3))
    assert omega_eval(c, g, "bruteforce") == omega_eval(c, g, "closed") == omega_eval(c, g, "auto")
    with pytest.raises(ValueError):
        omega_eval(c, g, "guess")


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_ind1_and_d1_star(p):
    rng = random.Random(p)
    for s in structures(p, rng, 2):
        psi = Cochain1.from_array(p, [rng.randrange(p) for _ in range(p)])
        tau = ind1(psi, s)
        c = d1_star(psi, s)
        assert c.sigma == d1(psi)
        for _ in range(5):
            g = AlgebraElement.random(p, rng)
            # the full compatible map of d^1 psi is g -> psi(g^[p])
            gp = s.pmap_array(g.array)
            assert omega_eval(c, g) == int(psi.array @ gp) % p
        assert tau == c.tau


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 23])
def test_ind2_piecewise_matches_wedge(p):
    rng = random.Random(p)
    for s in structures(p, rng, 2):
        for _ in range(5):
            phi = random_cochain(p, rng)
            m = ind2_matrix(phi, s)
            assert ind2_piecewise(phi, s) == m
            g, h = AlgebraElement.random(p, rng), AlgebraElement.random(p, rng)
            assert m.evaluate(g, h) == phi.wedge(g.array, s.pmap_array(h.array))


def test_ind2_independent_of_tau():
    p = 11
    rng = random.Random(1)
    s = RestrictedStructure(p, [rng.randrange(p) for _ in range(p)], [rng.randrange(p) for _ in range(p)])
    phi = random_cochain(p, rng)
    a = RestrictedCochain2(phi, (0,) * p)
    b = RestrictedCochain2(phi, tuple(rng.randrange(p) for _ in range(p)))
    assert d2_star(a, s) == d2_star(b, s)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_restricted_complex(p):
    rng = random.Random(p)
    for s in structures(p, rng, 2):
        assert not (d2_star_matrix(s) @ d1_star_matrix(s) % p).any()


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 23])
def test_restricted_dimensions_by_rank(p):
    rng = random.Random(p)
    for s in structures(p, rng, 2):
        h1, h2 = restricted_h1(s), restricted_h2(s)
        n2 = p * (p - 1) // 2 + p
        r1 = rank(FpMatrix(d1_star_matrix(s), p))
        r2 = rank(FpMatrix(d2_star_matrix(s), p))
        assert h1.dimension == p - r1 == 2
        assert h2.dimension == n2 - r2 - r1
        assert h2.consistent


@pytest.mark.parametrize("p", [7, 11, 13, 17, 23])
def test_restricted_h2_away_from_the_degenerate_cases(p):
    # mu = 0 and p > 5: the closed-form answer holds
    rng = random.Random(p)
    s = RestrictedStructure.from_lambda(p, [rng.randrange(1, p) for _ in range(p)])
    rep = restricted_h2(s)
    assert rep.matches_expected, rep.mismatches
    assert rep.dimension == (p + 2 if p % 3 == 2 else p + 3)


def test_mu_kills_phi_p1():
    # e_{p-1} is hit by the p-map, so phi_{p+1}(e_1 ^ e_{p-1}) = a_{1,p-1} enters ind^2
    p = 11
    lam = [1] + [0] * (p - 1)
    s = RestrictedStructure(p, [-x for x in lam], lam)
    assert ind2_matrix(tag_cochain("phi_p1", p), s)[2, 1] != 0
    rep = restricted_h2(s)
    assert rep.dimension == p + 2
    assert "(phi_{p+1}, tilde)" not in rep.extra["named_classes"]


def test_restricted_cochain_coordinates():
    p = 5
    c = RestrictedCochain2(Cochain2.basis_cochain(p, 1, 4), (0, 1, 0, 0, 4))
    assert RestrictedCochain2.from_vector(p, c.vector) == c
    assert c.to_dict() == {"sigma": [["e^{1,4}", 1]], "tau": [["bar e^{2}", 1], ["bar e^{5}", -1]]}
    assert (2 * c + c).tau == (0, 3, 0, 0, 2)
    with pytest.raises(ValueError):
        RestrictedCochain2(Cochain2.zero(p), (0,))
