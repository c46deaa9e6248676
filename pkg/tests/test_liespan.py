import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from wielandt.ensembles import RngSpec, random_su, random_su_system
from wielandt.liespan import (
    LieGeneratingSystem,
    SuElement,
    bracket_from_word,
    commutator,
    divisors,
    lie_length,
    mobius,
    su_basis,
    su_coords,
    su_from_coords,
    witt_dimension,
    witt_lower_bound,
)


def rsu(n, seed):
    return random_su(n, RngSpec(seed))


def test_su_element_validation():
    with pytest.raises(ValueError):
        SuElement(np.eye(2))  # Hermitian, not skew
    with pytest.raises(ValueError):
        SuElement(1j * np.eye(2))  # skew-Hermitian but not traceless
    with pytest.raises(ValueError):
        SuElement(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        LieGeneratingSystem([rsu(2, 0), rsu(3, 0)])


def test_commutator_examples():
    X = rsu(3, 1)
    assert np.allclose(commutator(X, X).mat, 0)
    A = SuElement(1j * np.diag([1, -1]))
    B = SuElement(np.array([[0, 1], [-1, 0]]))
    assert np.allclose(commutator(A, B).mat, 2j * np.array([[0, 1], [1, 0]]))
    with pytest.raises(ValueError):
        commutator(rsu(2, 0), rsu(3, 0))


@given(st.integers(0, 2**32 - 1), st.integers(2, 5))
def test_jacobi_identity(seed, n):
    X, Y, Z = (rsu(n, seed + i).mat for i in range(3))
    br = lambda a, b: a @ b - b @ a  # noqa: E731
    J = br(X, br(Y, Z)) + br(Y, br(Z, X)) + br(Z, br(X, Y))
    assert np.max(np.abs(J)) < 1e-10


def test_su_basis_sizes_and_independence():
    assert len(su_basis(2)) == 3 and len(su_basis(4)) == 15
    for n in (2, 3, 5):
        M = su_basis(n).matrices()
        R = np.concatenate([M.real.reshape(len(M), -1), M.imag.reshape(len(M), -1)], axis=1)
        assert np.linalg.matrix_rank(R) == n * n - 1
    with pytest.raises(ValueError):
        su_basis(1)


def test_su_basis_order():
    B = su_basis(3).matrices()
    assert np.allclose(B[0], 1j * np.diag([1, -1, 0]))
    assert np.allclose(B[2][0, 1], 1) and np.allclose(B[2][1, 0], -1)  # E_12 - E_21
    assert np.allclose(B[5][0, 1], 1j) and np.allclose(B[5][1, 0], 1j)  # i(E_12 + E_21)


def test_su_coords_examples():
    B = su_basis(3)
    X = 1j * np.diag([1, -1, 0])
    c = su_coords(X, B)
    assert np.allclose(c, np.eye(8)[0])
    # independent solve of the 8x8 real linear system
    M = B.matrices()
    A = np.concatenate([M.real.reshape(8, -1), M.imag.reshape(8, -1)], axis=1).T
    sol = np.linalg.lstsq(A, np.concatenate([X.real.ravel(), X.imag.ravel()]), rcond=None)[0]
    assert np.allclose(sol, c)
    assert np.max(np.abs(su_from_coords(c, B) - X)) < 1e-12
    assert np.allclose(su_coords(np.zeros((3, 3)), B), 0)
    with pytest.raises(ValueError):
        su_coords(np.eye(3), B)
    with pytest.raises(ValueError):
        su_coords(X, su_basis(2))


@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
def test_su_coords_round_trip(seed, n):
    B = su_basis(n)
    X = rsu(n, seed)
    c = su_coords(X, B)
    assert c.dtype == np.float64
    assert np.max(np.abs(su_from_coords(c, B) - X.mat)) < 1e-10


def test_lie_length_full_basis():
    assert lie_length(LieGeneratingSystem(su_basis(3).basis_mats)).value == 1


def test_lie_length_single_element():
    rep = lie_length([rsu(3, 4)])
    assert rep.value is None and rep.dims_per_depth == [1, 1]


def test_lie_length_su2_pair():
    for seed in range(5):
        U = random_su_system(2, 2, RngSpec(seed))
        assert lie_length(U).value == 2 == oracles.brute_lie_length([e.mat for e in U], 3)


@pytest.mark.parametrize("n", [2, 3])
def test_lie_length_matches_enumeration(n):
    for seed in range(5):
        U = random_su_system(n, 2, RngSpec(seed, stream=n))
        assert lie_length(U).value == oracles.brute_lie_length([e.mat for e in U], 6)


def test_lie_length_non_generating_subalgebra():
    # two elements of the diagonal torus stay abelian
    U = [1j * np.diag([1, -1, 0]), 1j * np.diag([0, 1, -1])]
    assert lie_length(U).value is None


def test_lie_report_invariants():
    for n in (3, 4):
        U = random_su_system(n, 2, RngSpec(9))
        rep = lie_length(U)
        d = rep.dims_per_depth
        assert all(a <= b for a, b in zip(d, d[1:])) and d[-1] <= n * n - 1
        incr = [d[0]] + [b - a for a, b in zip(d, d[1:])]
        assert all(x <= witt_dimension(2, m + 1) for m, x in enumerate(incr))
        assert rep.value >= witt_lower_bound(2, n)
        assert rep.nodes_kept == n * n - 1
        for w in rep.kept_words:
            SuElement(bracket_from_word(U, w), atol=1e-10)  # closure check


def test_lie_unitary_conjugation_invariance():
    r = np.random.default_rng(0)
    for seed in range(5):
        U = random_su_system(3, 2, RngSpec(seed))
        Q, _ = np.linalg.qr(r.standard_normal((3, 3)) + 1j * r.standard_normal((3, 3)))
        V = U.transformed(lambda X: Q @ X @ Q.conj().T)
        assert lie_length(V).value == lie_length(U).value


def test_mobius_examples_and_roots_of_unity():
    assert mobius(1) == 1 and mobius(4) == 0 and mobius(6) == 1
    for d in range(1, 21):
        assert mobius(d) == oracles.mobius_by_roots(d)
    with pytest.raises(ValueError):
        mobius(0)


def test_witt_examples():
    assert witt_dimension(2, 1) == 2
    assert witt_dimension(2, 2) == 1 == oracles.lyndon_count(2, 2)
    assert witt_dimension(2, 6) == 9 == oracles.lyndon_count(2, 6)
    with pytest.raises(ValueError):
        witt_dimension(0, 3)


def test_witt_large_arguments_exact():
    # far beyond 64-bit range; Python integers stay exact
    assert witt_dimension(3, 60) > 2**64
    assert witt_dimension(2, 61) == (2**61 - 2) // 61


@given(st.integers(1, 4), st.integers(1, 7))
def test_witt_matches_lyndon(g, k):
    assert witt_dimension(g, k) == oracles.lyndon_count(g, k)


def test_witt_lower_bound_examples():
    assert witt_lower_bound(2, 2) == 2
    assert witt_lower_bound(2, 3) == 4
    for n in range(2, 6):
        assert witt_lower_bound(n * n - 1, n) == 1
    with pytest.raises(ValueError):
        witt_lower_bound(1, 3)


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
