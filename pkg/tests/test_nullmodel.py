import numpy as np

from comovement import (
    CorrelationMatrix,
    eigendecompose,
    make_ensemble,
    member_rng,
    shuffle_once,
)
from conftest import gaussian_correlation


def test_two_assets_shuffle_is_identity():
    C = CorrelationMatrix(labels=["a", "b"], values=np.array([[1.0, 0.37], [0.37, 1.0]]))
    out = shuffle_once(C, member_rng(123, 0))
    np.testing.assert_array_equal(out.values, C.values)


def test_identity_matrix_shuffles_to_itself():
    C = CorrelationMatrix(labels=list("abcd"), values=np.eye(4))
    out = shuffle_once(C, member_rng(99, 0))
    np.testing.assert_array_equal(out.values, np.eye(4))


def test_offdiagonal_multiset_is_preserved_exactly():
    C = gaussian_correlation(9, 50, seed=4)
    for m, member in enumerate(make_ensemble(C, 20, seed=7).matrices):
        np.testing.assert_array_equal(
            np.sort(member.offdiagonal()), np.sort(C.offdiagonal()), err_msg=f"member {m}"
        )
        assert np.all(np.diag(member.values) == 1.0)
        np.testing.assert_array_equal(member.values, member.values.T)


def test_ensemble_is_deterministic():
    C = gaussian_correlation(8, 40, seed=12)
    first = make_ensemble(C, 5, seed=42)
    second = make_ensemble(C, 5, seed=42)
    for a, b in zip(first.matrices, second.matrices):
        np.testing.assert_array_equal(a.values, b.values)


def test_members_differ_with_distinct_offdiagonals():
    C = gaussian_correlation(8, 40, seed=12)
    ensemble = make_ensemble(C, 2, seed=42)
    assert not np.array_equal(ensemble.matrices[0].values, ensemble.matrices[1].values)


def test_positional_ensemble_mean_matches_value_mean():
    # uniform permutation: each off-diagonal position has expectation equal to
    # the mean of the base values; check within 3 standard errors at M=1000
    C = gaussian_correlation(6, 30, seed=5)
    values = C.offdiagonal()
    target = values.mean()
    se = values.std() / np.sqrt(1000)
    stack = np.array([m.offdiagonal() for m in make_ensemble(C, 1000, seed=77).matrices])
    assert np.abs(stack.mean(axis=0) - target).max() <= 3 * se


def test_trace_and_frobenius_conservation():
    C = gaussian_correlation(10, 60, seed=6)
    base = eigendecompose(C)
    base_sq = (base.eigenvalues**2).sum()
    for member in make_ensemble(C, 10, seed=3).matrices:
        es = eigendecompose(member)  # works even if the member is indefinite
        assert abs(es.eigenvalues.sum() - C.n) < 1e-8
        assert abs((es.eigenvalues**2).sum() - base_sq) < 1e-8
