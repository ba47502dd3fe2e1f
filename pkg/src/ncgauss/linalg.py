"""Dense small-matrix kernel: eigendecompositions, determinant, adjugate.

All routines operate on plain ``numpy.ndarray`` values (row-major, float64)
and are tuned for the <= 8x8 matrices this package works with.  Inputs are
validated for finiteness and shape; nothing here allocates beyond a few
small temporaries, and every function is pure.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, SpectrumError, SymmetryError

#: relative tolerance for accepting a matrix as symmetric
SYMMETRY_RTOL = 1e-12

#: rcond threshold below which ``adjugate`` switches to the cofactor path
ADJUGATE_RCOND = 1e-10


def _as_square(m, name: str = "matrix") -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DimensionError(f"{name} contains non-finite entries")
    return a


def eig_symmetric(m, vectors: bool = False):
    """Eigenvalues (ascending) of a symmetric matrix.

    The input must be symmetric to within ``SYMMETRY_RTOL`` relative to its
    magnitude; it is then symmetrized (averaged with its transpose) before
    the solve so that round-off accumulated upstream cannot leak in.

    Args:
        m: square symmetric matrix
        vectors: if True, also return the orthonormal eigenvector matrix Q
            with ``m ~ Q @ diag(w) @ Q.T``

    Returns:
        ``w`` ascending, or ``(w, Q)`` when ``vectors`` is set.
    """
    a = _as_square(m)
    scale = max(np.max(np.abs(a)), 1.0)
    if np.max(np.abs(a - a.T)) > SYMMETRY_RTOL * scale:
        raise SymmetryError("matrix is not symmetric within tolerance")
    a = 0.5 * (a + a.T)
    if vectors:
        w, q = np.linalg.eigh(a)
        return w, q
    return np.linalg.eigvalsh(a)


def spectrum_real_general(m, check_residual: bool = True) -> np.ndarray:
    """Complex eigenvalues of a real square matrix (unordered).

    When ``check_residual`` is set, every eigenpair is verified to satisfy
    ``|m v - lam v| <= 1e-9 |m|``; a violation (defective or severely
    non-normal input) raises :class:`SpectrumError`.
    """
    a = _as_square(m)
    if check_residual:
        w, v = np.linalg.eig(a)
        norm = max(np.linalg.norm(a), 1.0)
        resid = np.linalg.norm(a @ v - v * w[None, :], axis=0)
        if np.any(resid > 1e-9 * norm):
            raise SpectrumError(
                f"eigenpair residual {resid.max():.3e} exceeds 1e-9*|m|"
            )
        return w
    return np.linalg.eigvals(a)


def determinant(m) -> float:
    """Determinant of a square matrix."""
    return float(np.linalg.det(_as_square(m)))


def _cofactor_adjugate(a: np.ndarray) -> np.ndarray:
    """Adjugate from first principles (cofactor expansion); O(n^5)."""
    n = a.shape[0]
    if n == 1:
        return np.ones((1, 1))
    cof = np.empty_like(a)
    rows = np.arange(n)
    for i in range(n):
        for j in range(n):
            minor = a[np.ix_(rows != i, rows != j)]
            cof[i, j] = (-1) ** (i + j) * np.linalg.det(minor)
    return cof.T


def adjugate(m, return_path: bool = False):
    """Adjugate adj(m) with ``m @ adj(m) = det(m) * I``.

    Well-conditioned inputs take the fast ``det(m) * inv(m)`` route; when
    the smallest singular value falls below ``ADJUGATE_RCOND`` times the
    largest (near-singular or singular input) the exact cofactor expansion
    is used instead.  ``return_path`` additionally reports which route ran
    (``"det-inverse"`` or ``"cofactor"``).
    """
    a = _as_square(m)
    sv = np.linalg.svd(a, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] <= ADJUGATE_RCOND * sv[0]:
        adj, path = _cofactor_adjugate(a), "cofactor"
    else:
        adj, path = np.linalg.det(a) * np.linalg.inv(a), "det-inverse"
    return (adj, path) if return_path else adj
