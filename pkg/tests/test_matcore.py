import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from opineq.errors import AsymmetricInput, DimensionMismatch, SpectrumOutOfDomain
from opineq.funcs import inverse, log, power, square, xlogx
from opineq.matcore import (
    SymMatrix,
    apply_fn,
    eigenvalues,
    eigh,
    eigh_batch,
    loewner_leq,
    quadratic_form,
    segment_point,
    spectral_norm,
)

from conftest import random_spd, random_sym


def test_symmatrix_symmetrizes_and_records_residual():
    M = SymMatrix([[1.0, 2.0 + 1e-12], [2.0, 5.0]])
    assert np.array_equal(M.array, M.array.T)
    assert M.asymmetry == pytest.approx(1e-12, rel=1e-3)
    with pytest.raises(AsymmetricInput):
        SymMatrix([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(ValueError):
        SymMatrix([[np.nan, 0.0], [0.0, 1.0]])
    with pytest.raises(DimensionMismatch):
        SymMatrix(np.zeros((2, 3)))


def test_eigh_diagonal():
    dec = eigh(np.diag([3.0, 1.0]))
    assert np.allclose(dec.eigenvalues, [1.0, 3.0])
    assert np.allclose(np.abs(dec.eigenvectors), [[0.0, 1.0], [1.0, 0.0]])


def test_eigh_textbook_2x2():
    dec = eigh([[0.0, 1.0], [1.0, 0.0]])
    assert np.allclose(dec.eigenvalues, [-1.0, 1.0], atol=1e-15)
    v = dec.eigenvectors
    s = 1 / np.sqrt(2)
    assert np.allclose(np.abs(v[:, 0]), [s, s])
    assert v[0, 0] * v[1, 0] < 0
    assert v[0, 1] * v[1, 1] > 0


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 13])
def test_eigh_invariants_random(rng, n):
    M = rng.standard_normal((n, n))
    M = M + M.T
    dec = eigh(M)
    Q, lam = dec.eigenvectors, dec.eigenvalues
    assert np.all(np.diff(lam) >= 0)
    assert np.max(np.abs(Q.T @ Q - np.eye(n))) <= 1e-10
    # reconstruction oracle: explicit Q diag(lam) Q^T
    assert np.max(np.abs(Q @ np.diag(lam) @ Q.T - M)) <= 1e-9 * (1 + np.max(np.abs(M)))


def test_eigh_repeated_eigenvalues_and_zero_matrix():
    lam, Q = eigh_batch(np.stack([2.0 * np.eye(4), np.zeros((4, 4))]))
    assert np.allclose(lam, [[2.0] * 4, [0.0] * 4])
    Q2 = np.linalg.qr(np.arange(16.0).reshape(4, 4) + np.eye(4))[0]
    M = Q2 @ np.diag([1.0, 1.0, 1.0, 5.0]) @ Q2.T
    assert np.allclose(eigenvalues(M), [1, 1, 1, 5], atol=1e-12)


def test_eigh_deterministic(rng):
    M = random_sym(rng, 6)
    a, b = eigh(M), eigh(M)
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert np.array_equal(a.eigenvectors, b.eigenvectors)


def test_apply_fn_examples():
    assert np.allclose(apply_fn(square(), np.diag([1.0, 2.0])).array, np.diag([1.0, 4.0]))
    M = np.array([[2.0, 1.0], [1.0, 2.0]])
    # direct 2x2 inversion: adj(M) / det(M)
    det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    adj = np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]])
    assert np.allclose(apply_fn(inverse(), M).array, adj / det, atol=1e-14)
    assert np.allclose(apply_fn(log(), np.diag([1.0, np.e])).array, np.diag([0.0, 1.0]), atol=1e-15)


def test_apply_fn_spectrum_out_of_domain():
    with pytest.raises(SpectrumOutOfDomain):
        apply_fn(log(), np.diag([1.0, -0.5]))
    with pytest.raises(SpectrumOutOfDomain):
        apply_fn(inverse(), np.diag([1.0, 1e-12]))
    apply_fn(square(), np.diag([1.0, -0.5]))


@pytest.mark.parametrize("f", [square(), inverse(), log(), xlogx(), power(1.5), power(-0.5)])
def test_apply_fn_spectrum_mapping(rng, f):
    for n in (2, 5):
        M = random_spd(rng, n)
        got = np.sort(eigenvalues(apply_fn(f, M)))
        want = np.sort(f(eigenvalues(M)))
        assert np.allclose(got, want, rtol=1e-9, atol=1e-12)


def test_inverse_times_matrix_is_identity(rng):
    for n in (2, 4, 8):
        M = random_spd(rng, n, 0.1, 10.0)
        lam = eigenvalues(M)
        kappa = lam[-1] / lam[0]
        assert np.max(np.abs(apply_fn(inverse(), M).array @ M - np.eye(n))) <= 1e-8 * kappa


def test_loewner_examples():
    v = loewner_leq(np.zeros((2, 2)), np.eye(2))
    assert v.holds and v.min_eig_of_difference == pytest.approx(1.0)
    v = loewner_leq(np.diag([1.0, -1.0]), np.zeros((2, 2)))
    assert not v.holds and v.min_eig_of_difference == pytest.approx(-1.0)
    assert v.tolerance_used == pytest.approx(1e-9 * 2)
    with pytest.raises(DimensionMismatch):
        loewner_leq(np.eye(2), np.eye(3))


def test_loewner_tolerance_env_override(monkeypatch):
    monkeypatch.setenv("OPINEQ_TOL", "1e-3")
    v = loewner_leq(np.zeros((1, 1)), -1e-4 * np.eye(1))
    assert v.holds and v.tolerance_used == pytest.approx(1e-3 * (1 + 1e-4))


def test_loewner_transitive(rng):
    for _ in range(20):
        X = random_sym(rng, 4)
        Y = X + random_spd(rng, 4, 0.0, 1.0)
        Z = Y + random_spd(rng, 4, 0.0, 1.0)
        assert loewner_leq(X, Y) and loewner_leq(Y, Z)
        assert loewner_leq(X, Z, 2e-9)


def test_segment_point():
    A, B = np.diag([1.0, 3.0]), np.diag([2.0, 2.0])
    assert segment_point(A, B, 0.0).array.tolist() == A.tolist()
    assert segment_point(A, B, 1.0).array.tolist() == B.tolist()
    assert np.array_equal(segment_point(A, B, 0.5).array, np.diag([1.5, 2.5]))
    assert np.array_equal(segment_point(np.eye(2), 3 * np.eye(2), 0.25).array, 1.5 * np.eye(2))
    with pytest.raises(ValueError):
        segment_point(A, B, 1.5)


def test_quadratic_form():
    assert quadratic_form(np.eye(2), [1.0, 1.0]) == 2.0
    assert quadratic_form(np.diag([2.0, 5.0]), [1.0, 0.0]) == 2.0
    assert quadratic_form([[2.0, 1.0], [1.0, 2.0]], [1.0, 1.0]) == 6.0
    with pytest.raises(DimensionMismatch):
        quadratic_form(np.eye(2), [1.0, 1.0, 1.0])


@settings(max_examples=60, deadline=None)
@given(arrays(float, (4, 4), elements=st.floats(-10, 10)),
       arrays(float, 4, elements=st.floats(-10, 10)))
def test_quadratic_form_rayleigh_bounds(M, x):
    M = 0.5 * (M + M.T)
    lam = eigenvalues(M)
    q = quadratic_form(M, x)
    nx = x @ x
    slack = 1e-9 * (1 + np.max(np.abs(lam))) * (1 + nx)
    assert lam[0] * nx - slack <= q <= lam[-1] * nx + slack


@settings(max_examples=40, deadline=None)
@given(arrays(float, (5, 5), elements=st.floats(-1e3, 1e3)))
def test_eigh_reconstruction_property(M):
    M = 0.5 * (M + M.T)
    dec = eigh(M)
    assert np.max(np.abs(dec.reconstruct() - M)) <= 1e-9 * (1 + np.max(np.abs(M)))
    assert spectral_norm(M) == pytest.approx(np.max(np.abs(dec.eigenvalues)))


def test_segment_path_convex_in_operator_order(rng):
    """phi(a s + (1-a) u) <= a phi(s) + (1-a) phi(u) for operator convex f."""
    fs = [square(), inverse(), power(1.5), xlogx(), power(-0.5)]
    for k in range(50):
        f = fs[k % len(fs)]
        n = 2 + k % 4
        A, B = random_spd(rng, n), random_spd(rng, n)
        s, u, a = rng.uniform(size=3)
        phi = lambda t: apply_fn(f, segment_point(A, B, t))
        lhs = phi(a * s + (1 - a) * u)
        rhs = a * phi(s) + (1 - a) * phi(u)
        assert loewner_leq(lhs, rhs)
