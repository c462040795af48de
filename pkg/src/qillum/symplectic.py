"""Symplectic linear algebra for zero-mean Gaussian states.

Quadratures are interleaved as (x1, p1, ..., xn, pn) and the vacuum has unit
variance, so a thermal mode with mean photon number nbar carries 2*nbar + 1 on
the diagonal. Physical covariance matrices have every symplectic eigenvalue
at or above 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh, schur

SYMMETRY_TOL = 1e-12
MINOR_TOL = 1e-12
PHYSICAL_TOL = 1e-9
PURITY_TOL = 1e-9
RECONSTRUCTION_TOL = 1e-9


def symplectic_form(n: int) -> np.ndarray:
    """Standard form Omega = direct sum of n blocks [[0, 1], [-1, 0]]."""
    if n < 1:
        raise ValueError("mode count must be at least 1")
    omega = np.zeros((2 * n, 2 * n))
    for j in range(n):
        omega[2 * j, 2 * j + 1] = 1.0
        omega[2 * j + 1, 2 * j] = -1.0
    return omega


@dataclass
class CovarianceMatrix:
    """Validated real covariance matrix of an n-mode Gaussian state.

    Validation covers symmetry and positive definiteness only; whether the
    matrix is a bona fide quantum state (symplectic spectrum >= 1) is a
    separate question answered by is_physical.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("covariance matrix must be square")
        if m.shape[0] % 2 != 0 or m.shape[0] == 0:
            raise ValueError("covariance matrix must be 2n x 2n with n >= 1")
        if np.max(np.abs(m - m.T)) > SYMMETRY_TOL:
            raise ValueError("covariance matrix is not symmetric to 1e-12")
        # Leading principal minors: cheap and deterministic at this scale.
        for k in range(1, m.shape[0] + 1):
            if np.linalg.det(m[:k, :k]) <= MINOR_TOL:
                raise ValueError(
                    f"covariance matrix is not positive definite "
                    f"(leading minor {k} is <= {MINOR_TOL})"
                )
        self.matrix = m

    @property
    def n(self) -> int:
        return self.matrix.shape[0] // 2


@dataclass
class GaussianState:
    """Covariance matrix plus quadrature mean vector.

    A coherent amplitude alpha displaces the mean to (2 Re alpha, 2 Im alpha)
    in this convention.
    """

    cov: CovarianceMatrix
    mean: np.ndarray = None

    def __post_init__(self):
        if self.mean is None:
            self.mean = np.zeros(2 * self.cov.n)
        else:
            self.mean = np.asarray(self.mean, dtype=float)
        if self.mean.shape != (2 * self.cov.n,):
            raise ValueError("mean vector length must be twice the mode count")

    @property
    def n(self) -> int:
        return self.cov.n


@dataclass
class WilliamsonDecomposition:
    """Symplectic S and eigenvalues nu with cov = S (direct sum nu_j I2) S^T."""

    symplectic: np.ndarray
    nu: np.ndarray

    def __post_init__(self):
        self.symplectic = np.asarray(self.symplectic, dtype=float)
        self.nu = np.asarray(self.nu, dtype=float)
        n = self.nu.shape[0]
        if self.symplectic.shape != (2 * n, 2 * n):
            raise ValueError("symplectic matrix shape does not match nu")
        if np.any(np.diff(self.nu) > 0):
            raise ValueError("symplectic eigenvalues must be sorted descending")
        omega = symplectic_form(n)
        err = np.max(np.abs(self.symplectic @ omega @ self.symplectic.T - omega))
        if err > RECONSTRUCTION_TOL:
            raise ValueError(f"matrix is not symplectic (S Omega S^T residual {err:.3e})")

    @property
    def n(self) -> int:
        return self.nu.shape[0]

    def reconstruct(self) -> np.ndarray:
        d = np.repeat(self.nu, 2)
        return (self.symplectic * d) @ self.symplectic.T


@dataclass(frozen=True)
class Bipartition:
    """Split of n modes given by the (nonempty, proper) set to transpose."""

    n_modes: int
    transposed: tuple

    def __post_init__(self):
        modes = tuple(sorted(set(int(m) for m in self.transposed)))
        object.__setattr__(self, "transposed", modes)
        if not modes:
            raise ValueError("bipartition needs at least one transposed mode")
        if len(modes) >= self.n_modes:
            raise ValueError("transposed set must be a proper subset of the modes")
        if modes[0] < 0 or modes[-1] >= self.n_modes:
            raise ValueError("mode index out of range (indices are 0-based)")


def _as_matrix(cov) -> np.ndarray:
    if isinstance(cov, CovarianceMatrix):
        return cov.matrix
    return CovarianceMatrix(np.asarray(cov, dtype=float)).matrix


def symplectic_eigenvalues(cov) -> np.ndarray:
    """Moduli of the paired eigenvalues of i*Omega*cov, one per pair, descending."""
    m = _as_matrix(cov)
    n = m.shape[0] // 2
    ev = np.linalg.eigvals(1j * symplectic_form(n) @ m)
    mods = np.sort(np.abs(ev))
    return mods[::2][::-1].copy()


def williamson_decompose(cov) -> WilliamsonDecomposition:
    """Numeric Williamson decomposition with a deterministic phase convention.

    Algorithm: with R = cov^(1/2), the real Schur form of the antisymmetric
    K = R Omega R consists of 2x2 blocks [[0, b], [-b, 0]] whose b are the
    symplectic eigenvalues. Columns are swapped so b > 0, blocks are sorted
    descending, and each block pair is rotated so the (x, x) entry of S is
    nonnegative and the (x, p) entry vanishes. The rotation keeps S symplectic
    and makes the output deterministic even for degenerate eigenvalues.
    """
    m = _as_matrix(cov)
    n = m.shape[0] // 2
    omega = symplectic_form(n)

    w, v = eigh(m)
    if w[0] <= 0:
        raise ValueError("covariance matrix is not positive definite")
    root = (v * np.sqrt(w)) @ v.T
    k = root @ omega @ root
    t, q = schur(k, output="real")

    # Schur of an antisymmetric matrix must come back block diagonal.
    block = np.zeros_like(t)
    for j in range(n):
        block[2 * j, 2 * j + 1] = t[2 * j, 2 * j + 1]
        block[2 * j + 1, 2 * j] = t[2 * j + 1, 2 * j]
    stray = np.max(np.abs(t - block))
    if stray > 1e-8 * max(1.0, np.max(np.abs(t))):
        raise ValueError(
            f"could not pair the symplectic spectrum (off-block residual {stray:.3e})"
        )

    nus = []
    for j in range(n):
        b = t[2 * j, 2 * j + 1]
        if b < 0:
            q[:, [2 * j, 2 * j + 1]] = q[:, [2 * j + 1, 2 * j]]
            b = -b
        nus.append(b)

    order = sorted(range(n), key=lambda j: -nus[j])
    perm = np.zeros((2 * n, 2 * n))
    for new, old in enumerate(order):
        perm[2 * old, 2 * new] = 1.0
        perm[2 * old + 1, 2 * new + 1] = 1.0
    q = q @ perm
    nus = np.array([nus[j] for j in order])

    s = (root @ q) * np.repeat(1.0 / np.sqrt(nus), 2)

    for j in range(n):
        c0, c1 = s[:, 2 * j].copy(), s[:, 2 * j + 1].copy()
        a, b = s[2 * j, 2 * j], s[2 * j, 2 * j + 1]
        r = np.hypot(a, b)
        if r < 1e-12:
            # x-row of this block is numerically empty; anchor on the p-row.
            a, b = s[2 * j + 1, 2 * j], s[2 * j + 1, 2 * j + 1]
            r = np.hypot(a, b)
        if r < 1e-12:
            continue
        s[:, 2 * j] = (a * c0 + b * c1) / r
        s[:, 2 * j + 1] = (-b * c0 + a * c1) / r

    dec = WilliamsonDecomposition(symplectic=s, nu=nus)
    resid = np.max(np.abs(dec.reconstruct() - m))
    if resid > RECONSTRUCTION_TOL * max(1.0, np.max(np.abs(m))):
        raise ValueError(f"decomposition failed to reconstruct (residual {resid:.3e})")
    return dec


def partial_transpose(cov, part: Bipartition) -> CovarianceMatrix:
    """Flip the sign of the p rows and columns of every transposed mode."""
    m = _as_matrix(cov)
    if part.n_modes != m.shape[0] // 2:
        raise ValueError("bipartition mode count does not match the covariance")
    out = m.copy()
    for mode in part.transposed:
        out[2 * mode + 1, :] *= -1.0
        out[:, 2 * mode + 1] *= -1.0
    return CovarianceMatrix(out)


def log_negativity(cov, part: Bipartition) -> float:
    """Sum of -log2 over partial-transpose symplectic eigenvalues below 1."""
    nu = symplectic_eigenvalues(partial_transpose(cov, part))
    return float(sum(-np.log2(v) for v in nu if v < 1.0))


def is_pure(cov, tol: float = PURITY_TOL) -> bool:
    """True iff every symplectic eigenvalue is within tol of 1."""
    return bool(np.all(np.abs(symplectic_eigenvalues(cov) - 1.0) <= tol))


def is_physical(cov, tol: float = PHYSICAL_TOL) -> bool:
    """True iff the matrix is a bona fide state: all symplectic eigenvalues >= 1 - tol."""
    return bool(np.all(symplectic_eigenvalues(cov) >= 1.0 - tol))
