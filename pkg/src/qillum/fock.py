"""Truncated number-basis oracle for the Gaussian machinery.

Everything here works with dense matrices in a photon-number cutoff, so it is
slow and memory-hungry but makes no Gaussian assumptions. Its job is to
cross-check the covariance-based overlap engine on small systems: build the
same two hypothesis states by explicit beamsplitter action, take matrix
powers by diagonalization, and compare.

Truncation error is tracked through analytic tail weights of the inputs
(geometric in the thermal and two-mode squeezed distributions), never by
renormalizing: a state that leaks past the cutoff keeps its deficit, and
callers get a budget number to compare gaps against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

DIMENSION_CAP = 4096
HERMITICITY_TOL = 1e-12
TAIL_LIMIT = 1e-8


class DimensionCapError(RuntimeError):
    """Requested truncation needs a matrix larger than the supported cap."""

    def __init__(self, mode_count: int, cutoff: int):
        self.dimension = (cutoff + 1) ** mode_count
        super().__init__(
            f"{mode_count}-mode cutoff {cutoff} needs dimension "
            f"{self.dimension} > cap {DIMENSION_CAP}"
        )


class TailBudgetError(ValueError):
    """Truncation tails too heavy for the requested comparison."""

    def __init__(self, budget: float, limit: float = TAIL_LIMIT):
        self.budget = budget
        super().__init__(
            f"truncation tail budget {budget:.3e} exceeds {limit:.1e}; "
            f"raise the cutoff or shrink the photon numbers"
        )


def _check_dimension(mode_count: int, cutoff: int):
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    if (cutoff + 1) ** mode_count > DIMENSION_CAP:
        raise DimensionCapError(mode_count, cutoff)


@dataclass
class FockOperator:
    """Hermitian operator on a truncated multimode number basis."""

    mode_count: int
    cutoff: int
    matrix: np.ndarray

    def __post_init__(self):
        _check_dimension(self.mode_count, self.cutoff)
        self.matrix = np.asarray(self.matrix, dtype=float)
        dim = (self.cutoff + 1) ** self.mode_count
        if self.matrix.shape != (dim, dim):
            raise ValueError(f"matrix must be {dim}x{dim} for this truncation")
        if np.max(np.abs(self.matrix - self.matrix.T)) > HERMITICITY_TOL:
            raise ValueError("matrix is not symmetric")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix))


def _as_array(op) -> np.ndarray:
    return op.matrix if isinstance(op, FockOperator) else np.asarray(op, dtype=float)


def thermal_weights(nbar: float, cutoff: int) -> np.ndarray:
    """Occupation probabilities nbar^n / (nbar+1)^(n+1), n = 0..cutoff."""
    if nbar < 0:
        raise ValueError("mean photon number must be nonnegative")
    if nbar == 0:
        w = np.zeros(cutoff + 1)
        w[0] = 1.0
        return w
    n = np.arange(cutoff + 1)
    return np.exp(n * math.log(nbar / (nbar + 1.0)) - math.log(nbar + 1.0))


def thermal_tail(nbar: float, cutoff: int) -> float:
    """Weight beyond the cutoff: (nbar/(nbar+1))^(cutoff+1)."""
    if nbar <= 0:
        return 0.0
    return (nbar / (nbar + 1.0)) ** (cutoff + 1)


def thermal_fock(nbar: float, cutoff: int) -> FockOperator:
    _check_dimension(1, cutoff)
    return FockOperator(1, cutoff, np.diag(thermal_weights(nbar, cutoff)))


def tmsv_amplitudes(n_signal: float, cutoff: int) -> np.ndarray:
    """Schmidt coefficients of the two-mode squeezed vacuum on |n, n>."""
    if n_signal < 0:
        raise ValueError("photon number must be nonnegative")
    if n_signal == 0:
        a = np.zeros(cutoff + 1)
        a[0] = 1.0
        return a
    n = np.arange(cutoff + 1)
    return np.exp(
        0.5 * (n * math.log(n_signal / (n_signal + 1.0)) - math.log(n_signal + 1.0))
    )


def tmsv_fock(n_signal: float, cutoff: int) -> FockOperator:
    """Two-mode squeezed vacuum, mode order (signal, idler)."""
    _check_dimension(2, cutoff)
    amp = tmsv_amplitudes(n_signal, cutoff)
    d = cutoff + 1
    psi = np.zeros((d, d))
    np.fill_diagonal(psi, amp)
    vec = psi.reshape(d * d)
    return FockOperator(2, cutoff, np.outer(vec, vec))


def target_absent_fock(n_signal: float, n_background: float, cutoff: int) -> FockOperator:
    """No target: thermal return times the thermal idler marginal. Order (return, idler)."""
    _check_dimension(2, cutoff)
    m = np.kron(
        np.diag(thermal_weights(n_background, cutoff)),
        np.diag(thermal_weights(n_signal, cutoff)),
    )
    return FockOperator(2, cutoff, m)


def _beamsplitter(reflectivity: float, cutoff: int) -> np.ndarray:
    """exp(theta (a+ b - a b+)) on the (signal, background) pair.

    theta = arccos(sqrt(kappa)) sends the signal into the output with
    amplitude sqrt(kappa) and the background with sqrt(1 - kappa).
    """
    d = cutoff + 1
    n = np.arange(1, d)
    low = np.zeros((d, d))
    low[n - 1, n] = np.sqrt(n)  # annihilation
    theta = math.acos(math.sqrt(reflectivity))
    gen = np.kron(low.T, low) - np.kron(low, low.T)
    return expm(theta * gen)


def target_present_fock(
    n_signal: float, n_background: float, reflectivity: float, cutoff: int
) -> FockOperator:
    """Target present: signal mixed with background on a beamsplitter.

    The background is taken thermal with n_background / (1 - reflectivity)
    photons before the beamsplitter, so the return mode ends up with variance
    2 kappa n_signal + 2 n_background + 1 like the Gaussian builder. The
    mixture over background number states is processed as one stacked matrix
    product. Mode order of the result is (return, idler).

    reflectivity 1 keeps the signal intact (the background drops out), and
    reflectivity 0 reduces to the product state.
    """
    if not 0.0 <= reflectivity <= 1.0:
        raise ValueError("reflectivity must lie in [0, 1]")
    _check_dimension(2, cutoff)
    if reflectivity == 0.0:
        return target_absent_fock(n_signal, n_background, cutoff)
    d = cutoff + 1
    amp = tmsv_amplitudes(n_signal, cutoff)
    psi = np.zeros((d, d))
    np.fill_diagonal(psi, amp)
    if reflectivity == 1.0:
        vec = psi.reshape(d * d)
        return FockOperator(2, cutoff, np.outer(vec, vec))

    u = _beamsplitter(reflectivity, cutoff)
    w = thermal_weights(n_background / (1.0 - reflectivity), cutoff)
    # Columns of stacked: one purification branch per (background m, idler i);
    # axes (signal, background) x (m, i).
    stacked = np.zeros((d, d, d, d))
    r = np.arange(d)
    stacked[:, r, r, :] = psi[:, None, :] * np.sqrt(w)[None, :, None]
    mixed = u @ stacked.reshape(d * d, d * d)
    # Regroup rows to (return, idler), columns to traced-out (background, m).
    regrouped = (
        mixed.reshape(d, d, d, d).transpose(0, 3, 1, 2).reshape(d * d, d * d)
    )
    return FockOperator(2, cutoff, regrouped @ regrouped.T)


def _eigen_clean(m: np.ndarray):
    vals, vecs = np.linalg.eigh(m)
    scale = max(float(vals[-1]), 1.0)
    if float(vals[0]) < -1e-10 * scale:
        raise ValueError(f"matrix has negative eigenvalue {vals[0]:.3e}")
    return np.clip(vals, 0.0, None), vecs


def trace_power(op, p: float) -> float:
    """Tr[m^p] by diagonalization; tiny negative eigenvalues are clipped."""
    if p <= 0:
        raise ValueError("power must be positive")
    vals, _ = _eigen_clean(_as_array(op))
    return float(np.sum(vals**p))


def trace_power_product(op_a, op_b, s: float) -> float:
    """Tr[a^s b^(1-s)] through the eigenbases of both operators."""
    if not 0.0 < s < 1.0:
        raise ValueError("s must lie strictly inside (0, 1)")
    a = _as_array(op_a)
    b = _as_array(op_b)
    if a.shape != b.shape:
        raise ValueError("operators must share a truncation")
    va, ua = _eigen_clean(a)
    vb, ub = _eigen_clean(b)
    overlap_sq = (ua.T @ ub) ** 2
    return float(va**s @ overlap_sq @ vb ** (1.0 - s))


def helstrom_probability(op_a, op_b) -> float:
    """Single-copy minimum error probability (1 - |a - b|_1 / 2) / 2."""
    diff = _as_array(op_a) - _as_array(op_b)
    trace_norm = float(np.sum(np.abs(np.linalg.eigvalsh(diff))))
    return 0.5 * (1.0 - 0.5 * trace_norm)


def oracle_tail_budget(
    n_signal: float, n_background: float, reflectivity: float, cutoff: int
) -> dict:
    """Truncation-error allowance for an oracle comparison at this cutoff.

    Sums the analytic tail weights of every input distribution (the
    beamsplitter conserves total photon number, so output leakage is bounded
    by input leakage) and floors the result at 64 eps times the matrix
    dimension to cover plain rounding.
    """
    dim = (cutoff + 1) ** 2
    absent = thermal_tail(n_background, cutoff) + thermal_tail(n_signal, cutoff)
    present = thermal_tail(n_signal, cutoff)  # Schmidt weights are thermal
    if 0.0 < reflectivity < 1.0:
        present += thermal_tail(n_background / (1.0 - reflectivity), cutoff)
    elif reflectivity == 0.0:
        present = absent
    floor = 64.0 * np.finfo(float).eps * dim
    return {
        "absent_tail": absent,
        "present_tail": present,
        "rounding_floor": floor,
        "budget": max(absent, present, floor),
    }


def oracle_overlap(
    n_signal: float,
    n_background: float,
    reflectivity: float,
    s: float,
    cutoff: int,
) -> float:
    """q(s) for the two-mode detection pair, straight from truncated matrices.

    Refuses to answer when the analytic tail budget exceeds 1e-8: a result
    would look precise while silently missing that much weight.
    """
    budget = oracle_tail_budget(n_signal, n_background, reflectivity, cutoff)
    tails = max(budget["absent_tail"], budget["present_tail"])
    if tails > TAIL_LIMIT:
        raise TailBudgetError(tails)
    absent = target_absent_fock(n_signal, n_background, cutoff)
    present = target_present_fock(n_signal, n_background, reflectivity, cutoff)
    return trace_power_product(absent, present, s)


def quadrature_covariance(op) -> np.ndarray:
    """Covariance matrix of a two-mode operator in the interleaved layout.

    Bridges back to the Gaussian side: entry (j, k) is the symmetrized moment
    <R_j R_k + R_k R_j> / 2 - <R_j><R_k> with R = (x1, p1, x2, p2) and
    vacuum variance 1.
    """
    m = _as_array(op)
    dim = m.shape[0]
    d = int(round(math.sqrt(dim)))
    if d * d != dim:
        raise ValueError("expected a two-mode operator")
    low = np.zeros((d, d))
    n = np.arange(1, d)
    low[n - 1, n] = np.sqrt(n)
    eye = np.eye(d)
    a1 = np.kron(low, eye)
    a2 = np.kron(eye, low)
    quads = [
        a1 + a1.T,
        -1j * (a1 - a1.T),
        a2 + a2.T,
        -1j * (a2 - a2.T),
    ]
    means = [float(np.real(np.trace(m @ r))) for r in quads]
    cov = np.zeros((4, 4))
    for j in range(4):
        for k in range(j, 4):
            sym = 0.5 * (quads[j] @ quads[k] + quads[k] @ quads[j])
            cov[j, k] = cov[k, j] = float(np.real(np.trace(m @ sym))) - means[j] * means[k]
    return cov
