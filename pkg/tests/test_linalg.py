import numpy as np
import pytest

from ncgauss.errors import DimensionError, SymmetryError
from ncgauss.linalg import adjugate, determinant, eig_symmetric, spectrum_real_general
from ncgauss.states import ToyPoint, toy_covariance


def random_orthogonal(rng, n):
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    return q * np.sign(np.diag(r))


def test_eig_identity():
    assert np.allclose(eig_symmetric(np.eye(4)), np.ones(4))


def test_eig_diagonal_sorted():
    assert np.allclose(eig_symmetric(np.diag([3.0, 1.0, 2.0])), [1.0, 2.0, 3.0])


def test_eig_toy_covariance_multiplets():
    # explicit 8x8 at (0.6, 0): R=0.6, b=4 -> (b/2)(1 -+ R) = 0.8 and 3.2, x4 each
    sig = toy_covariance(ToyPoint(0.6, 0.0)).matrix
    w = eig_symmetric(sig)
    assert np.allclose(w[:4], 0.8, atol=1e-12)
    assert np.allclose(w[4:], 3.2, atol=1e-12)


def test_eig_recovers_random_spectrum():
    rng = np.random.default_rng(7)
    for _ in range(25):
        n = rng.integers(2, 9)
        d = np.sort(rng.uniform(-5, 5, size=n))
        q = random_orthogonal(rng, n)
        w = eig_symmetric(q @ np.diag(d) @ q.T)
        assert np.max(np.abs(w - d)) < 1e-10


def test_eig_reconstruction_residual():
    rng = np.random.default_rng(8)
    a = rng.normal(size=(6, 6))
    a = a + a.T
    w, q = eig_symmetric(a, vectors=True)
    assert np.linalg.norm(a - q @ np.diag(w) @ q.T) <= 1e-10 * np.linalg.norm(a)


def test_eig_rejects_bad_input():
    with pytest.raises(DimensionError):
        eig_symmetric(np.ones((2, 3)))
    with pytest.raises(SymmetryError):
        eig_symmetric(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(DimensionError):
        eig_symmetric(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_spectrum_rotation_generator():
    w = np.sort_complex(spectrum_real_general(np.array([[0.0, 1.0], [-1.0, 0.0]])))
    assert np.allclose(w, [-1j, 1j])


def test_spectrum_diagonal():
    w = np.sort_complex(spectrum_real_general(np.diag([2.0, 5.0])))
    assert np.allclose(w, [2.0, 5.0])


def test_spectrum_vacuum_against_standard_form():
    # J^-1 Sigma for Sigma = I/2: spectrum {+-i/2} with multiplicity 4
    from ncgauss.phasespace import commutative_form

    j = commutative_form(2, 2).matrix
    w = spectrum_real_general(np.linalg.inv(j) @ (0.5 * np.eye(8)))
    assert np.allclose(np.abs(w.real), 0.0, atol=1e-12)
    assert np.allclose(np.sort(np.abs(w.imag)), 0.5)


def test_spectrum_conjugate_pairs():
    rng = np.random.default_rng(9)
    for _ in range(20):
        n = rng.integers(2, 9)
        w = spectrum_real_general(rng.normal(size=(n, n)))
        assert abs(np.sum(w.imag)) < 1e-12 * max(1.0, np.max(np.abs(w)))


def test_adjugate_identity():
    for n in (1, 3, 8):
        assert np.allclose(adjugate(np.eye(n)), np.eye(n))


def test_adjugate_2x2_cofactor_form():
    m = np.array([[3.0, 4.0], [5.0, 6.0]])
    assert np.allclose(adjugate(m), [[6.0, -4.0], [-5.0, 3.0]])


def test_adjugate_product_identity():
    rng = np.random.default_rng(10)
    for _ in range(25):
        n = rng.integers(2, 9)
        m = rng.normal(size=(n, n)) + 2.0 * np.eye(n)
        adj = adjugate(m)
        det = determinant(m)
        assert np.max(np.abs(m @ adj - det * np.eye(n))) <= 1e-9 * max(1.0, abs(det))


def test_adjugate_singular_takes_cofactor_path():
    m = np.array([[1.0, 2.0], [2.0, 4.0]])  # rank 1
    adj, path = adjugate(m, return_path=True)
    assert path == "cofactor"
    assert np.allclose(m @ adj, np.zeros((2, 2)), atol=1e-12)
    _, path2 = adjugate(np.eye(3) * 2.0, return_path=True)
    assert path2 == "det-inverse"


def test_adjugate_trace_matches_closed_form():
    # Tr[adj Sigma] = (1-R^2)^3 b^7 / 16 on a sample of disk points
    rng = np.random.default_rng(11)
    for _ in range(40):
        r = rng.uniform(0.0, 0.97)
        phi = rng.uniform(0.0, 2 * np.pi)
        m, n = r * np.cos(phi), r * np.sin(phi)
        sig = toy_covariance(ToyPoint(m, n)).matrix
        b = (1 + r) / (1 - r)
        tau = (1 - r * r) ** 3 * b**7 / 16.0
        assert np.isclose(np.trace(adjugate(sig)), tau, rtol=1e-10)
