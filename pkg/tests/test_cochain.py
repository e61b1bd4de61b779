import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilaffine.algebra import truncated_algebra
from nilaffine.cochain import (
    Cochain1,
    Cochain2,
    Cochain3,
    basic_equation_row,
    basis,
    d1,
    d2,
    d2_closed_form,
    d2_matrix_closed_form,
    d_matrix,
    degree_range,
    helper_F,
    helper_G,
    helper_M,
    helper_s,
    index_helpers,
    phi_k,
)

from conftest import PRIMES, residues


def test_index_helpers():
    assert helper_s(6) == 2 and helper_s(7) == 3
    assert helper_M(7, 9) == 2 and helper_M(7, 8) == 1
    assert helper_F(23, 28) == 8
    assert helper_G(23, 28) == 1 and helper_G(7, 16) == 3
    assert index_helpers(7, 16) == (7, None, 3, 4)
    for bad in (lambda: helper_s(2), lambda: helper_M(7, 14), lambda: helper_G(7, 5), lambda: helper_F(7, 19)):
        with pytest.raises(ValueError):
            bad()


@pytest.mark.parametrize("p", PRIMES)
def test_helpers_bound_the_bases(p):
    for k in degree_range(2, p):
        labs = basis(2, p, k)
        assert labs[0][0] == helper_M(p, k)
        if k <= p + 1:
            assert len(labs) == helper_s(k)
        else:
            assert len(labs) == len(basis(2, p, 2 * p + 2 - k))
    for k in degree_range(3, p):
        us = [lab[0] for lab in basis(3, p, k)]
        assert min(us) == helper_G(p, k) and max(us) == helper_F(p, k)


def test_bases():
    assert basis(2, 5, 5) == [(1, 4), (2, 3)]
    assert basis(3, 5, 5) == []
    assert basis(1, 5) == [(1,), (2,), (3,), (4,), (5,)]
    full = basis(3, 7)
    assert full == sorted(full) and len(full) == 35


def test_cochain_evaluation_and_signs():
    p = 7
    phi = Cochain2.from_terms(p, {(1, 4): 2, (5, 3): 1})
    assert phi(1, 4) == 2 and phi(4, 1) == 5
    assert phi(3, 5) == 6 and phi(2, 2) == 0
    assert str(Cochain2.from_terms(5, {(1, 5): 1, (2, 4): -1})) == "e^{1,5} - e^{2,4}"
    zeta = Cochain3.from_terms(p, {(2, 1, 3): 1})
    assert zeta(1, 2, 3) == p - 1


def test_d1_examples():
    p = 7
    assert d1(Cochain1.basis_cochain(p, 3)) == Cochain2.basis_cochain(p, 1, 2)
    assert d1(Cochain1.basis_cochain(p, 1)).is_zero()
    assert d1(Cochain1.basis_cochain(p, 5)) == Cochain2.basis_cochain(p, 2, 3)
    assert d_matrix(1, p, 1).is_zero() and d_matrix(1, p, 2).is_zero()


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_d2_vanishes_in_low_degree(p):
    for k in (3, 4, 5):
        assert d_matrix(2, p, k).is_zero()


def _d2_by_definition(phi: Cochain2, x, y, z):
    alg = truncated_algebra(phi.p)
    return (phi.wedge(alg.bracket(x, y), z) - phi.wedge(alg.bracket(x, z), y)
            + phi.wedge(alg.bracket(y, z), x)) % phi.p


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([5, 7, 11]).flatmap(lambda p: st.tuples(
    st.just(p), residues(p, p * (p - 1) // 2), residues(p, p), residues(p, p), residues(p, p))))
def test_d2_matches_definition_on_random_elements(data):
    p, coeffs, x, y, z = data
    phi = Cochain2.from_array(p, coeffs)
    val = d2(phi)
    # evaluate the 3-cochain on x ^ y ^ z by multilinearity
    total = 0
    for (u, v, w), c in val.terms().items():
        det = np.linalg.det(np.array([[x[u - 1], x[v - 1], x[w - 1]],
                                      [y[u - 1], y[v - 1], y[w - 1]],
                                      [z[u - 1], z[v - 1], z[w - 1]]], dtype=float))
        total += c * int(round(det))
    assert total % p == _d2_by_definition(phi, x, y, z)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_two_d2_implementations_agree(p):
    for k in degree_range(2, p):
        assert d2_matrix_closed_form(p, k) == d_matrix(2, p, k)


def test_closed_form_skips_invalid_terms():
    terms, skipped = d2_closed_form(23, 5, 23)
    assert skipped
    assert all(max(t) <= 23 for t in terms)


@pytest.mark.parametrize("p", PRIMES)
def test_d2_after_d1_is_zero(p):
    assert not (d_matrix(2, p).array @ d_matrix(1, p).array % p).any()


@pytest.mark.parametrize("p", [5, 7, 23])
def test_phi_k(p):
    assert phi_k(p, 3) == Cochain2.basis_cochain(p, 1, 2)
    assert phi_k(p, 5) == Cochain2.basis_cochain(p, 2, 3)
    for k in range(3, p + 1):
        assert phi_k(p, k) == d1(Cochain1.basis_cochain(p, k))
    for k in range(3, p + 2):
        assert d2(phi_k(p, k)).is_zero()
    with pytest.raises(ValueError):
        phi_k(p, 2 * p)


def test_phi_6_at_5():
    assert phi_k(5, 6) == Cochain2.from_terms(5, {(1, 5): 1, (2, 4): -1})


def test_basic_equation_examples():
    assert basic_equation_row(23, 28, 1, 5) == {(5, 23): 0, (6, 22): 1}
    assert basic_equation_row(23, 28, 2, 3) == {(5, 23): 1}
    assert basic_equation_row(23, 29, 1, 5) == {(6, 23): 1}
    with pytest.raises(ValueError):
        basic_equation_row(23, 28, 1, 2)


@pytest.mark.parametrize("p", [5, 7, 11, 23])
def test_basic_equation_rows_match_matrix(p):
    for k in degree_range(3, p):
        m = d_matrix(2, p, k).array
        cols = basis(2, p, k)
        for r, (u, v, w) in enumerate(basis(3, p, k)):
            row = basic_equation_row(p, k, u, v)
            expect = np.zeros(len(cols), dtype=np.int64)
            for pair, val in row.items():
                expect[cols.index(pair)] = val
            assert np.array_equal(m[r], expect), (k, u, v)
