"""Symplectic structures of commutative and noncommutative phase space.

Coordinates are ordered ``(x^A_1..x^A_nA, p^A_1..p^A_nA, x^B_1.., p^B_1..)``,
i.e. party A's block first, positions before momenta inside each party.
The deformed structure couples positions to positions (strength ``theta``)
and momenta to momenta (strength ``eta``) inside each party; ``theta*eta < 1``
keeps the deformation invertible and the Darboux map real.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, DomainError, SymmetryError

#: real antisymmetric 2x2 generator ([[0, 1], [-1, 0]])
ROT2 = np.array([[0.0, 1.0], [-1.0, 0.0]])


@dataclass(frozen=True)
class NCParams:
    """Noncommutativity scales: ``theta`` (position-position), ``eta``
    (momentum-momentum).  Requires ``theta * eta < 1``."""

    theta: float = 0.0
    eta: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.theta) and np.isfinite(self.eta)):
            raise DomainError("theta and eta must be finite")
        if self.theta * self.eta >= 1.0:
            raise DomainError(
                f"theta*eta = {self.theta * self.eta:g} must be < 1"
            )

    @property
    def commutative(self) -> bool:
        return self.theta == 0.0 and self.eta == 0.0


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float)
    out.flags.writeable = False
    return out


def _check_block_diagonal(mat: np.ndarray, split: tuple[int, int], name: str):
    da = 2 * split[0]
    if np.any(mat[:da, da:]) or np.any(mat[da:, :da]):
        raise DimensionError(f"{name} must be block-diagonal over the (A, B) split")


@dataclass(frozen=True)
class SymplecticForm:
    """Real antisymmetric nonsingular 2n x 2n matrix with an (A, B) split."""

    matrix: np.ndarray
    block_split: tuple[int, int]

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=float)
        n_a, n_b = self.block_split
        dim = 2 * (n_a + n_b)
        if mat.shape != (dim, dim):
            raise DimensionError(
                f"matrix shape {mat.shape} does not match split {self.block_split}"
            )
        if not np.array_equal(mat, -mat.T):
            raise SymmetryError("symplectic form must be exactly antisymmetric")
        _check_block_diagonal(mat, self.block_split, "symplectic form")
        if abs(np.linalg.det(mat)) <= 1e-12:
            raise DomainError("symplectic form is singular")
        object.__setattr__(self, "matrix", _readonly(mat))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_modes(self) -> int:
        return self.dim // 2

    def block(self, party: str) -> np.ndarray:
        """The A or B diagonal block."""
        da = 2 * self.block_split[0]
        return self.matrix[:da, :da] if party == "A" else self.matrix[da:, da:]


@dataclass(frozen=True)
class DarbouxMap:
    """Invertible block-diagonal linear map from commutative to deformed
    coordinates, ``z = S xi``."""

    matrix: np.ndarray
    block_split: tuple[int, int]

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=float)
        n_a, n_b = self.block_split
        dim = 2 * (n_a + n_b)
        if mat.shape != (dim, dim):
            raise DimensionError(
                f"matrix shape {mat.shape} does not match split {self.block_split}"
            )
        _check_block_diagonal(mat, self.block_split, "Darboux map")
        if abs(np.linalg.det(mat)) <= 1e-12:
            raise DomainError("Darboux map is not invertible")
        object.__setattr__(self, "matrix", _readonly(mat))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def inverse_matrix(self) -> np.ndarray:
        return np.linalg.inv(self.matrix)


def _standard_block(n: int) -> np.ndarray:
    j = np.zeros((2 * n, 2 * n))
    j[:n, n:] = np.eye(n)
    j[n:, :n] = -np.eye(n)
    return j


def commutative_form(n_a: int, n_b: int) -> SymplecticForm:
    """Standard symplectic form ``J = Diag[J^A, J^B]``."""
    if n_a < 1 or n_b < 1:
        raise DomainError("both parties need at least one mode")
    dim = 2 * (n_a + n_b)
    j = np.zeros((dim, dim))
    j[: 2 * n_a, : 2 * n_a] = _standard_block(n_a)
    j[2 * n_a:, 2 * n_a:] = _standard_block(n_b)
    return SymplecticForm(j, (n_a, n_b))


def _nc_block(theta: float, eta: float) -> np.ndarray:
    o = np.zeros((4, 4))
    o[:2, :2] = theta * ROT2
    o[:2, 2:] = np.eye(2)
    o[2:, :2] = -np.eye(2)
    o[2:, 2:] = eta * ROT2
    return o


def nc_form(p: NCParams) -> SymplecticForm:
    """Deformed form for the two-mode-per-party layout (8x8).

    Both parties carry the same 4x4 block: position pair coupled with
    strength ``theta``, momentum pair with ``eta``, canonical x-p pairing
    untouched.  Reduces to :func:`commutative_form` at ``theta = eta = 0``.
    """
    block = _nc_block(p.theta, p.eta)
    o = np.zeros((8, 8))
    o[:4, :4] = block
    o[4:, 4:] = block
    return SymplecticForm(o, (2, 2))


def ppt_form(omega: SymplecticForm) -> SymplecticForm:
    """Partial-transpose image of a form: party B's block is negated.

    This is the structure against which the uncertainty relation must hold
    for separable states; applying it twice returns the original form.
    """
    mat = np.array(omega.matrix)
    da = 2 * omega.block_split[0]
    mat[da:, da:] *= -1.0
    return SymplecticForm(mat, omega.block_split)


def bopp_shift(p: NCParams) -> DarbouxMap:
    """Darboux map S with ``omega = S J S^T`` for the two-mode-pair layout.

    The defining constraint fixes only the product of the position and
    momentum scale factors, ``lam * mu = (1 + sqrt(1 - eta*theta)) / 2``;
    the symmetric gauge ``lam = mu`` is chosen so S -> identity smoothly
    as the deformation vanishes.
    """
    prod = p.theta * p.eta
    if prod >= 1.0:
        raise DomainError("Darboux map undefined: theta*eta must be < 1")
    lam = mu = np.sqrt(0.5 * (1.0 + np.sqrt(1.0 - prod)))
    s = np.zeros((4, 4))
    s[:2, :2] = lam * np.eye(2)
    s[:2, 2:] = -(p.theta / (2.0 * lam)) * ROT2
    s[2:, :2] = (p.eta / (2.0 * mu)) * ROT2
    s[2:, 2:] = mu * np.eye(2)
    full = np.zeros((8, 8))
    full[:4, :4] = s
    full[4:, 4:] = s
    return DarbouxMap(full, (2, 2))
