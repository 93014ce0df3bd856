"""Eigensolving fixtures, principal-pair conventions, and the lifting."""

import numpy as np
import pytest

from edgewalk import (
    apply_U,
    build_instance,
    build_P,
    build_T,
    build_U_dense,
    eigh,
    lift_eigenvectors,
    line_principal_pair,
    principal_pair,
    spectral_mapping_check,
)
from edgewalk.errors import DegenerateSpectrum, NotSymmetric
from edgewalk.spectral import d_star_apply, principal_vector

K5_EDGES = [(0, 1), (1, 2), (2, 3)]


def test_eigh_identity():
    values, _ = eigh(np.eye(3))
    assert np.allclose(values, [1, 1, 1])


def test_eigh_all_ones():
    values, vectors = eigh(np.ones((3, 3)))
    assert np.allclose(values, [3, 0, 0], atol=1e-12)
    assert np.allclose(vectors.T @ vectors, np.eye(3), atol=1e-12)


def test_eigh_triangle_T():
    T = build_T(build_instance(2, [(0, 1)]))
    values, vectors = eigh(T.matrix)
    assert np.allclose(values, [0.5, 0.5, -1.0], atol=1e-12)
    residual = T.matrix @ vectors - vectors * values
    assert np.abs(residual).max() <= 1e-10


def test_eigh_not_symmetric():
    with pytest.raises(NotSymmetric):
        eigh(np.array([[0.0, 1.0], [0.5, 0.0]]))
    with pytest.raises(NotSymmetric):
        eigh(np.zeros((2, 3)))


def test_eigh_residuals_random():
    rng = np.random.default_rng(8)
    for n in (5, 20, 60):
        a = rng.normal(size=(n, n))
        m = (a + a.T) / 2
        values, vectors = eigh(m)
        assert np.all(np.diff(values) <= 1e-12)
        scale = max(1.0, np.abs(values).max())
        assert np.abs(m @ vectors - vectors * values).max() <= 1e-10 * scale
        assert np.abs(vectors.T @ vectors - np.eye(n)).max() <= 1e-10


def test_principal_pair_triangle():
    summary = principal_pair(build_T(build_instance(2, [(0, 1)])))
    assert summary.lambda_max == pytest.approx(0.5, abs=1e-12)
    assert summary.theta_max == pytest.approx(np.pi / 3, abs=1e-12)
    assert summary.f @ np.full(3, 1 / np.sqrt(3)) >= 0


def test_principal_pair_degenerate():
    with pytest.raises(DegenerateSpectrum):
        principal_pair(build_T(build_instance(2, [(0, 1), (1, 2)])))


def test_principal_pair_k100_single_edge():
    T = build_T(build_instance(99, [(0, 1)]))
    summary = principal_pair(T)
    assert 1 - 4 / 9900 <= summary.lambda_max < 1
    assert int(np.floor(np.pi / (2 * summary.theta_max))) == 55


def test_principal_pair_residual_and_trace():
    g = build_instance(12, [(0, 1), (1, 2), (5, 6)])
    T = build_T(g)
    summary = principal_pair(T)
    assert abs(np.linalg.norm(summary.f) - 1.0) <= 1e-12
    residual = T.matrix @ summary.f - summary.lambda_max * summary.f
    assert np.linalg.norm(residual) <= 1e-10
    assert abs(summary.eigenvalues.sum()) <= 1e-10


def test_principal_vector_maximizes_overlap():
    # triangle with one marked edge: the top eigenvalue is double, and the
    # projection of the uniform vector beats any other eigenspace member
    T = build_T(build_instance(2, [(0, 1)]))
    values, vectors = eigh(T.matrix)
    f = principal_vector(values, vectors)
    j = np.full(3, 1 / np.sqrt(3))
    basis = vectors[:, :2]
    rng = np.random.default_rng(3)
    for _ in range(50):
        coeffs = rng.normal(size=2)
        v = basis @ coeffs
        v /= np.linalg.norm(v)
        assert (f @ j) ** 2 >= (v @ j) ** 2 - 1e-12


@pytest.mark.parametrize(
    "n,edges",
    [(2, [(0, 1)]), (4, K5_EDGES), (7, [(0, 3), (3, 5), (1, 2)])],
)
def test_lift_eigenvector_residual(n, edges):
    g = build_instance(n, edges)
    summary = principal_pair(build_T(g))
    lifted = lift_eigenvectors(g, summary)
    for phi, phase in (
        (lifted.phi_plus, np.exp(1j * summary.theta_max)),
        (lifted.phi_minus, np.exp(-1j * summary.theta_max)),
    ):
        assert abs(np.linalg.norm(phi) - 1.0) <= 1e-10
        assert np.linalg.norm(apply_U(g, phi) - phase * phi) <= 1e-10
    for beta in (lifted.beta_plus, lifted.beta_minus):
        assert abs(np.linalg.norm(beta) - 1.0) <= 1e-10
    assert np.abs(lifted.beta_plus.imag).max() <= 1e-12
    assert np.abs((1j * lifted.beta_minus).imag).max() <= 1e-12


def test_lift_beta_minus_is_swapped_base():
    # i beta_- equals the swap of d* f, a real unit vector
    g = build_instance(2, [(0, 1)])
    summary = principal_pair(build_T(g))
    lifted = lift_eigenvectors(g, summary)
    swapped = d_star_apply(g, summary.f)[g.arcs.inverse_index]
    assert np.abs(1j * lifted.beta_minus - swapped).max() <= 1e-12
    assert abs(np.linalg.norm(swapped) - 1.0) <= 1e-12


def test_mapping_check_triangle():
    g = build_instance(2, [(0, 1)])
    report = spectral_mapping_check(g)
    assert report.ok
    lams = [entry[0] for entry in report.entries]
    assert lams == pytest.approx([0.5, 0.5], abs=1e-12)
    # the walk spectrum also contains -1, outside the lifted range
    walk_values = np.linalg.eigvals(build_U_dense(g))
    assert np.min(np.abs(walk_values + 1.0)) <= 1e-10
    assert report.excluded == pytest.approx([-1.0], abs=1e-10)


def test_mapping_check_k5():
    assert spectral_mapping_check(build_instance(4, K5_EDGES)).ok


def test_mapping_check_excludes_unit_eigenvalue():
    g = build_instance(2, [(0, 1), (1, 2)])  # spanning complete bipartite
    report = spectral_mapping_check(g)
    assert any(abs(lam - 1.0) <= 1e-10 for lam in report.excluded)
    assert report.ok


def test_line_principal_pair_dense_vs_iterative():
    g = build_instance(24, [(0, 1), (2, 3)])
    P = build_P(g)
    lam_dense, vec_dense = line_principal_pair(P)
    lam_iter, vec_iter = line_principal_pair(P, dense_limit=1)
    assert lam_iter == pytest.approx(lam_dense, abs=1e-10)
    assert np.abs(np.abs(vec_dense @ vec_iter) - 1.0) <= 1e-8
