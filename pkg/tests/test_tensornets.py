import numpy as np
import pytest

import oracles
from wielandt.ensembles import RngSpec, ginibre_system, random_peps_tensor
from wielandt.numkernel import matrix_rank
from wielandt.tensornets import (
    BudgetExceeded,
    MpsTensor,
    PepsTensor,
    generic_injectivity_bound,
    int_root,
    mps_gamma_matrix,
    mps_injectivity_index,
    peps_counting_lower_bound,
    peps_gamma_matrix,
    peps_injective,
    reassemble,
    string_bond_tensor,
)
from wielandt.wordspan import wie_length

UNITS2 = [np.eye(4)[k].reshape(2, 2) for k in range(4)]
GHZ = [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])]


def test_mps_gamma_entries():
    S = ginibre_system(2, 2, RngSpec(0))
    G = mps_gamma_matrix(MpsTensor(S), 2)
    assert G.shape == (4, 4)
    for w in range(4):
        i, j = divmod(w, 2)
        for a in range(2):
            for b in range(2):
                X = np.zeros((2, 2))
                X[a, b] = 1
                assert np.isclose(G[w, a * 2 + b], np.trace(X @ S[i] @ S[j]))


def test_mps_gamma_examples():
    assert matrix_rank(mps_gamma_matrix(UNITS2, 1)) == 4
    for L in (1, 2, 3, 5):
        assert matrix_rank(mps_gamma_matrix(GHZ, L)) == 2
    S = ginibre_system(2, 2, RngSpec(1))
    assert matrix_rank(mps_gamma_matrix(S, 2)) == 4 == oracles.brute_exact_dim(list(S.mats), 2)
    with pytest.raises(BudgetExceeded):
        mps_gamma_matrix(GHZ, 21)
    with pytest.raises(ValueError):
        mps_gamma_matrix(GHZ, 0)


def test_mps_injectivity_index_examples():
    assert mps_injectivity_index(UNITS2) == 1
    assert mps_injectivity_index(GHZ) is None
    S = ginibre_system(4, 2, RngSpec(2))
    assert mps_injectivity_index(S, cross_check=True) == 4 == generic_injectivity_bound(4, 2, 1)
    assert oracles.brute_exact_dim(list(S.mats), 4) == 16
    assert oracles.brute_exact_dim(list(S.mats), 3) < 16


def test_mps_gamma_rank_threshold():
    for seed in range(5):
        S = ginibre_system(3, 2, RngSpec(seed))
        idx = mps_injectivity_index(S, cross_check=True)
        assert idx == wie_length(S).value
        for L in (idx - 1, idx, idx + 1):
            assert (matrix_rank(mps_gamma_matrix(S, L)) == 9) == (L >= idx)


def test_peps_tensor_validation():
    with pytest.raises(ValueError):
        PepsTensor(np.zeros((2, 2, 2, 2, 3)))
    with pytest.raises(ValueError):
        PepsTensor(np.full((1, 2, 2, 2, 2), np.nan))
    Av = np.ones((1, 2, 2))
    with pytest.raises(ValueError):
        PepsTensor(np.zeros((1, 2, 2, 2, 2)), (Av, Av))


def test_peps_gamma_matches_explicit_contraction():
    for seed in range(3):
        T = random_peps_tensor(2, 3, RngSpec(seed))
        G = peps_gamma_matrix(T, 2)
        assert G.shape == (81, 256)
        assert np.max(np.abs(G - oracles.peps_gamma_2x2(T.entries))) < 1e-12


def test_peps_gamma_l1_is_the_tensor():
    T = random_peps_tensor(2, 4, RngSpec(3))
    assert np.array_equal(peps_gamma_matrix(T, 1), T.entries.reshape(4, 16))


def seeds(d, n, seed):
    r = RngSpec(seed)
    return ginibre_system(n, d, r.substream(0)).mats, ginibre_system(n, d, r.substream(1)).mats


def test_string_bond_product_state():
    T = string_bond_tensor(2, 1, [np.eye(2)], [np.eye(2)])
    assert T.g == 1
    assert matrix_rank(peps_gamma_matrix(T, 2)) == 1
    assert not peps_injective(T, 2).injective


def test_string_bond_factorization():
    B, Bt = seeds(2, 2, 4)
    T = string_bond_tensor(2, 2, B, Bt)
    assert T.g == 4
    assert np.max(np.abs(reassemble(*T.factorized) - T.entries)) < 1e-12
    # pairing k = i * d + j
    assert np.allclose(T.entries[3], np.einsum("ud,lr->udlr", B[1], Bt[1]))
    assert np.allclose(T.entries[1], np.einsum("ud,lr->udlr", B[0], Bt[1]))
    unfactorized = PepsTensor(T.entries.copy())
    assert np.max(np.abs(peps_gamma_matrix(T, 2) - peps_gamma_matrix(unfactorized, 2))) < 1e-10
    with pytest.raises(ValueError):
        string_bond_tensor(2, 2, B[:1], Bt)


def test_string_bond_injective():
    for seed in range(3):
        B, Bt = seeds(2, 2, 10 + seed)
        assert wie_length(B).value <= 2 and wie_length(Bt).value <= 2
        rep = peps_injective(string_bond_tensor(2, 2, B, Bt), 2)
        assert rep.injective and rep.gamma_rank == 256


def test_string_bond_with_extra_levels():
    B, Bt = seeds(2, 2, 20)
    rest = random_peps_tensor(2, 1, RngSpec(21)).entries
    T = string_bond_tensor(2, 2, B, Bt, g=5, rest=rest)
    assert T.g == 5 and peps_injective(T, 2).injective
    with pytest.raises(ValueError):
        string_bond_tensor(2, 2, B, Bt, g=5)


def test_peps_injective_examples():
    T = random_peps_tensor(2, 4, RngSpec(30))
    rep = peps_injective(T, 2)
    assert rep.injective and rep.full_rank_target == 256
    ghz = np.zeros((2, 2, 2, 2, 2))
    ghz[0, 0, 0, 0, 0] = ghz[1, 1, 1, 1, 1] = 1
    assert not peps_injective(PepsTensor(ghz), 2).injective
    rep3 = peps_injective(random_peps_tensor(2, 3, RngSpec(31)), 2)
    assert not rep3.injective and rep3.gamma_rank <= 81
    with pytest.raises(BudgetExceeded):
        peps_gamma_matrix(random_peps_tensor(3, 2, RngSpec(0)), 2)


def test_peps_gauge_invariance():
    T = random_peps_tensor(2, 4, RngSpec(40))
    r = np.random.default_rng(0)
    P = r.standard_normal((2, 2)) + 1j * r.standard_normal((2, 2))
    Q = r.standard_normal((2, 2)) + 1j * r.standard_normal((2, 2))
    A = np.einsum("Uu,pudlr,dD,Ll,rR->pUDLR", P, T.entries, np.linalg.inv(P), Q, np.linalg.inv(Q))
    for L in (1, 2):
        assert matrix_rank(peps_gamma_matrix(PepsTensor(A), L)) == matrix_rank(peps_gamma_matrix(T, L))


def test_bounds():
    assert generic_injectivity_bound(4, 2, 1) == 4
    assert generic_injectivity_bound(2, 4, 2) == 2
    assert generic_injectivity_bound(16, 9, 2) == 6
    with pytest.raises(ValueError):
        generic_injectivity_bound(2, 3, 2)
    assert peps_counting_lower_bound(2, 4) == 2 and peps_counting_lower_bound(2, 16) == 1
    assert [int_root(g, 2) for g in (3, 4, 8, 9, 10**12)] == [1, 2, 2, 3, 10**6]
    assert int_root(2**60 - 1, 3) == 2**20 - 1 and int_root(2**60, 3) == 2**20
