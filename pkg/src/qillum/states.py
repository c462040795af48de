"""State builders for Gaussian target detection with an entangled probe.

Two probe families are covered: the two-mode squeezed vacuum (signal + one
idler) and its symmetric three-mode sibling (signal + two idlers, every pair
sharing the same correlation amplitude). The detection scenario mixes the
signal with a bright thermal background on a beamsplitter of reflectivity
kappa, so the two hypotheses are "return mode is pure background" (target
absent) and "return mode carries an attenuated signal" (target present).

Variance conventions follow the symplectic module: a mean photon number n
gives diagonal variance 2n + 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .symplectic import (
    CovarianceMatrix,
    WilliamsonDecomposition,
    williamson_decompose,
)

CORRELATION_SLACK = 1e-12


class AnalyticDomainError(ValueError):
    """Closed-form factorization entries left their validity domain."""

    def __init__(self, radicand: str, value: float):
        self.radicand = radicand
        self.value = value
        super().__init__(
            f"analytic factorization out of domain: radicand {radicand} = "
            f"{value:.6e} is negative; use the numeric decomposition instead"
        )


@dataclass
class IlluminationScenario:
    """Parameters of one detection run.

    correlation None means "use the maximal physical correlation of the chosen
    probe": the cubic-root amplitude for the three-mode probe, 2*sqrt(nS(nS+1))
    for the two-mode probe.
    """

    n_signal: float
    n_background: float
    reflectivity: float
    copies: int = 1
    correlation: float | None = None

    def __post_init__(self):
        if self.n_signal < 0 or self.n_background < 0:
            raise ValueError("photon numbers must be nonnegative")
        if not 0.0 <= self.reflectivity <= 1.0:
            raise ValueError("reflectivity must lie in [0, 1]")
        if int(self.copies) != self.copies or self.copies < 1:
            raise ValueError("copies must be a positive integer")
        self.copies = int(self.copies)
        if self.correlation is not None and self.correlation < 0:
            raise ValueError("correlation amplitude must be nonnegative")

    @property
    def signal_variance(self) -> float:
        return 2.0 * self.n_signal + 1.0

    @property
    def background_variance(self) -> float:
        return 2.0 * self.n_background + 1.0

    @property
    def return_variance(self) -> float:
        return 2.0 * self.reflectivity * self.n_signal + self.background_variance

    def three_mode_correlation(self) -> float:
        cmax = max_three_mode_correlation(self.n_signal)
        if self.correlation is None:
            return cmax
        if self.correlation > cmax + CORRELATION_SLACK:
            raise ValueError(
                f"correlation {self.correlation:.12g} exceeds the three-mode "
                f"maximum {cmax:.12g}"
            )
        return self.correlation

    def two_mode_correlation(self) -> float:
        cmax = tmsv_correlation(self.n_signal)
        if self.correlation is None:
            return cmax
        if self.correlation > cmax + CORRELATION_SLACK:
            raise ValueError(
                f"correlation {self.correlation:.12g} exceeds the two-mode "
                f"maximum {cmax:.12g}"
            )
        return self.correlation


def tmsv_correlation(n_signal: float) -> float:
    """Off-diagonal amplitude 2*sqrt(nS(1+nS)) of the two-mode squeezed vacuum."""
    if n_signal < 0:
        raise ValueError("photon number must be nonnegative")
    return 2.0 * math.sqrt(n_signal * (1.0 + n_signal))


def tmsv_cov(n_signal: float) -> CovarianceMatrix:
    """Two-mode squeezed vacuum covariance; symplectic spectrum is {1, 1}."""
    s = 2.0 * n_signal + 1.0
    c = tmsv_correlation(n_signal)
    m = np.diag([s, s, s, s])
    m[0, 2] = m[2, 0] = c
    m[1, 3] = m[3, 1] = -c
    return CovarianceMatrix(m)


def _cubic_residual(x: float, t: float) -> float:
    # Cancellation-free rewrite in t = S^2 - 1 = 4 nS (1 + nS); the raw
    # constant term S^6 - 1 wipes out all significant digits near nS ~ 1e-4.
    s2 = 1.0 + t
    return 4.0 * x**3 - 9.0 * s2 * x * x + 6.0 * s2 * s2 * x - t * (3.0 + t * (3.0 + t))


def _cubic_slope(x: float, t: float) -> float:
    s2 = 1.0 + t
    return 12.0 * x * x - 18.0 * s2 * x + 6.0 * s2 * s2


def max_three_mode_correlation(n_signal: float) -> float:
    """Largest correlation amplitude the symmetric three-mode probe supports.

    Square root of the unique real root in (0, S^2/2) of the determinant cubic
    of the probe covariance. Bracketed Newton with bisection fallback,
    converging to |dx| < 1e-15 * S^2 with two polish steps.
    """
    if n_signal < 0:
        raise ValueError("photon number must be nonnegative")
    if n_signal == 0:
        return 0.0
    t = 4.0 * n_signal * (1.0 + n_signal)
    s2 = 1.0 + t

    lo, hi = 0.0, 0.5 * s2
    x = 2.0 * n_signal * (1.0 - (4.0 / 3.0) * n_signal * n_signal)
    x = min(max(x, lo), hi)
    for _ in range(200):
        fx = _cubic_residual(x, t)
        if fx > 0:
            hi = x
        elif fx < 0:
            lo = x
        else:
            break
        slope = _cubic_slope(x, t)
        step = fx / slope if slope != 0 else 0.0
        xn = x - step
        if not lo < xn < hi:
            xn = 0.5 * (lo + hi)
        if abs(xn - x) < 1e-15 * s2:
            x = xn
            for _ in range(2):
                slope = _cubic_slope(x, t)
                if slope == 0:
                    break
                x -= _cubic_residual(x, t) / slope
            break
        x = xn
    return math.sqrt(max(x, 0.0))


def max_three_mode_correlation_small_asymptotic(n_signal: float) -> float:
    """Leading small-signal series of the maximal correlation. Tests only."""
    return math.sqrt(2.0 * n_signal) * (
        1.0 - (2.0 / 3.0) * n_signal**2 + (4.0 / 3.0) * n_signal**3
    )


def max_three_mode_correlation_large_asymptotic(n_signal: float) -> float:
    """Leading large-signal series of the maximal correlation. Tests only."""
    return n_signal + 0.5 - n_signal ** -5.0 / 72.0


def separability_threshold(n_signal: float) -> float:
    """Correlation amplitude below which the three-mode probe is fully separable."""
    ns = n_signal
    if ns < 0:
        raise ValueError("photon number must be nonnegative")
    v = (
        (2.0 + 5.0 * ns + 5.0 * ns * ns)
        - math.sqrt((1.0 + 3.0 * ns) * (2.0 + 3.0 * ns) * (2.0 + ns + ns * ns))
    ) / 2.0
    return math.sqrt(max(v, 0.0))


def three_mode_cov(n_signal: float, correlation: float) -> CovarianceMatrix:
    """Symmetric three-mode probe: diagonal S, +c on every x-x pair, -c on p-p.

    Rejects correlation above the cubic-root maximum (plus 1e-12 slack); such
    matrices stop being quantum states well before they stop being positive
    definite.
    """
    if correlation < 0:
        raise ValueError("correlation amplitude must be nonnegative")
    cmax = max_three_mode_correlation(n_signal)
    if correlation > cmax + CORRELATION_SLACK:
        raise ValueError(
            f"correlation {correlation:.12g} exceeds the three-mode maximum "
            f"{cmax:.12g} at n_signal={n_signal:g}"
        )
    s = 2.0 * n_signal + 1.0
    m = np.diag([s] * 6).astype(float)
    for j in range(3):
        for k in range(3):
            if j != k:
                m[2 * j, 2 * k] = correlation
                m[2 * j + 1, 2 * k + 1] = -correlation
    return CovarianceMatrix(m)


def target_absent_cov(scenario: IlluminationScenario) -> CovarianceMatrix:
    """Hypothesis "no target": thermal return, untouched idler pair.

    Mode order (return, idler1, idler2). Independent of the reflectivity.
    """
    s = scenario.signal_variance
    b = scenario.background_variance
    c = scenario.three_mode_correlation()
    m = np.zeros((6, 6))
    m[0, 0] = m[1, 1] = b
    for j in (1, 2):
        m[2 * j, 2 * j] = m[2 * j + 1, 2 * j + 1] = s
    m[2, 4] = m[4, 2] = c
    m[3, 5] = m[5, 3] = -c
    return CovarianceMatrix(m)


def target_present_cov(scenario: IlluminationScenario) -> CovarianceMatrix:
    """Hypothesis "target": return carries sqrt(kappa)-attenuated signal correlations."""
    s = scenario.signal_variance
    a = scenario.return_variance
    c = scenario.three_mode_correlation()
    sk = math.sqrt(scenario.reflectivity) * c
    m = np.zeros((6, 6))
    m[0, 0] = m[1, 1] = a
    for j in (1, 2):
        m[2 * j, 2 * j] = m[2 * j + 1, 2 * j + 1] = s
        m[0, 2 * j] = m[2 * j, 0] = sk
        m[1, 2 * j + 1] = m[2 * j + 1, 1] = -sk
    m[2, 4] = m[4, 2] = c
    m[3, 5] = m[5, 3] = -c
    return CovarianceMatrix(m)


def two_mode_target_absent_cov(scenario: IlluminationScenario) -> CovarianceMatrix:
    """Two-mode analog of target_absent_cov: thermal return, thermal idler."""
    b = scenario.background_variance
    s = scenario.signal_variance
    scenario.two_mode_correlation()  # validates the amplitude even though it drops out
    return CovarianceMatrix(np.diag([b, b, s, s]).astype(float))


def two_mode_target_present_cov(scenario: IlluminationScenario) -> CovarianceMatrix:
    a = scenario.return_variance
    s = scenario.signal_variance
    sk = math.sqrt(scenario.reflectivity) * scenario.two_mode_correlation()
    m = np.array(
        [
            [a, 0.0, sk, 0.0],
            [0.0, a, 0.0, -sk],
            [sk, 0.0, s, 0.0],
            [0.0, -sk, 0.0, s],
        ]
    )
    return CovarianceMatrix(m)


def _block_sorted(symplectic: np.ndarray, nus: np.ndarray) -> WilliamsonDecomposition:
    """Permute 2x2 column blocks so the eigenvalue list is descending."""
    n = len(nus)
    order = sorted(range(n), key=lambda j: -nus[j])
    cols = []
    for j in order:
        cols.extend([2 * j, 2 * j + 1])
    return WilliamsonDecomposition(
        symplectic=symplectic[:, cols], nu=np.array([nus[j] for j in order])
    )


def target_absent_williamson(scenario: IlluminationScenario) -> WilliamsonDecomposition:
    """Closed-form decomposition of the target-absent covariance.

    The idler pair diagonalizes by a balanced two-mode squeezer built from
    z = ((S-c)/(S+c))^(1/4); the return mode is already thermal. Valid for
    c < S, which every admissible scenario satisfies with room to spare.
    """
    s = scenario.signal_variance
    b = scenario.background_variance
    c = scenario.three_mode_correlation()
    if c >= s:
        raise AnalyticDomainError("(S - c)/(S + c)", (s - c) / (s + c))
    z = ((s - c) / (s + c)) ** 0.25
    inv = 1.0 / z
    rt2 = math.sqrt(2.0)
    z1 = np.diag([inv, z]) / rt2
    z2 = np.diag([z, inv]) / rt2
    sm = np.zeros((6, 6))
    sm[0:2, 0:2] = np.eye(2)
    sm[2:4, 2:4] = z1
    sm[2:4, 4:6] = -z2
    sm[4:6, 2:4] = z1
    sm[4:6, 4:6] = z2
    beta1 = math.sqrt(s * s - c * c)
    return _block_sorted(sm, np.array([b, beta1, beta1]))


@dataclass
class PresentStateFactorization:
    """Closed-form symplectic data for the target-present covariance.

    Carries the three symplectic eigenvalues (beta1 for the decoupled idler
    combination, beta_plus/beta_minus for the return-coupled pair), the
    discriminant xi, the four mu auxiliaries, and the scalar block entries of
    the assembled symplectic matrix. The mu pair identities are checked on
    construction; the products mu2_plus * mu2_minus cancel catastrophically in
    the naive form, so the builder uses conjugate expressions throughout.
    """

    beta1: float
    beta_plus: float
    beta_minus: float
    xi: float
    mu1_plus: float
    mu1_minus: float
    mu2_plus: float
    mu2_minus: float
    blocks: dict
    return_variance: float
    signal_variance: float
    correlation: float
    reflectivity: float

    def __post_init__(self):
        res = self.identity_residuals()
        for name in ("difference", "product"):
            if abs(res[name]) > 1e-10:
                raise ValueError(
                    f"mu identity '{name}' violated (relative residual {res[name]:.3e})"
                )

    def identity_residuals(self) -> dict:
        """Relative residuals of the four mu identities."""
        a = self.return_variance
        s = self.signal_variance
        c = self.correlation
        kap = self.reflectivity
        target = 8.0 * kap * c * c * (a - s + c) * (a - s - c)
        out = {
            "difference": (self.mu2_plus - self.mu2_minus - 2.0 * self.xi)
            / (2.0 * self.xi),
        }
        out["product"] = (
            (self.mu2_plus * self.mu2_minus - target) / target if target != 0 else 0.0
        )
        rhs3 = 2.0 * (a - s - c) * (
            a * self.mu2_plus - 4.0 * kap * c * c * (a - s + c)
        )
        rhs4 = -2.0 * (a - s + c) * (
            a * self.mu2_minus - 4.0 * kap * c * c * (a - s - c)
        )
        out["cross_plus"] = (
            (self.mu1_plus * self.mu2_plus - rhs3) / rhs3 if rhs3 != 0 else 0.0
        )
        out["cross_minus"] = (
            (self.mu1_minus * self.mu2_minus - rhs4) / rhs4 if rhs4 != 0 else 0.0
        )
        return out

    def williamson(self) -> WilliamsonDecomposition:
        """Assemble the symplectic matrix and sort its blocks descending."""
        bl = self.blocks
        rt2 = math.sqrt(2.0)
        z2 = np.diag([bl["z"], 1.0 / bl["z"]]) / rt2
        x1 = np.diag([bl["x_plus"], bl["y_plus"]])
        x2 = np.diag([bl["y_minus"], bl["x_minus"]])
        y1 = np.diag([bl["u_plus"], bl["v_plus"]])
        y2 = np.diag([bl["v_minus"], bl["u_minus"]])
        sm = np.zeros((6, 6))
        sm[0:2, 2:4] = x1
        sm[0:2, 4:6] = x2
        sm[2:4, 0:2] = z2
        sm[2:4, 2:4] = y1
        sm[2:4, 4:6] = y2
        sm[4:6, 0:2] = -z2
        sm[4:6, 2:4] = y1
        sm[4:6, 4:6] = y2
        return _block_sorted(sm, np.array([self.beta1, self.beta_plus, self.beta_minus]))


def _radicand(name: str, value: float, scale: float) -> float:
    if value < 0.0:
        if value < -1e-10 * max(scale, 1.0):
            raise AnalyticDomainError(name, value)
        return 0.0
    return value


def target_present_factorization(
    scenario: IlluminationScenario,
) -> PresentStateFactorization:
    """Closed-form Williamson data for the target-present covariance.

    Valid when the background dominates the probe (A > S + c and friends);
    outside that region the block entries turn complex and an
    AnalyticDomainError names the first offending radicand. The numeric
    decomposition has no such restriction.
    """
    s = scenario.signal_variance
    a = scenario.return_variance
    kap = scenario.reflectivity
    c = scenario.three_mode_correlation()

    if c >= s:
        raise AnalyticDomainError("(S - c)/(S + c)", (s - c) / (s + c))
    dmc = a - s - c
    dpc = a - s + c
    if dmc <= 0 or dpc <= 0:
        raise AnalyticDomainError("A - S - c", dmc if dmc <= 0 else dpc)

    # Conjugate forms: p - xi cancels badly, t / (p + xi) does not.
    p = a * a - s * s + c * c
    t = 8.0 * kap * c * c * dpc * dmc
    if p <= 0:
        raise AnalyticDomainError("A^2 - S^2 + c^2", p)
    xi = p * math.sqrt(_radicand("xi^2", 1.0 - t / (p * p), 1.0))
    if xi == 0:
        raise AnalyticDomainError("xi", 0.0)
    mu2p = p + xi
    mu2m = t / mu2p
    mu1p = (xi - 2.0 * a * c) + ((a - s) ** 2 - c * c)
    mu1m = (xi - 2.0 * a * c) - ((a - s) ** 2 - c * c)

    common = a * a + s * s - (1.0 + 4.0 * kap) * c * c
    scale = a * a + s * s
    bp = math.sqrt(_radicand("beta_plus^2", 0.5 * (common + xi), scale))
    bm = math.sqrt(_radicand("beta_minus^2", 0.5 * (common - xi), scale))
    beta1 = math.sqrt(s * s - c * c)
    if bp == 0 or bm == 0:
        raise AnalyticDomainError("beta", 0.0)
    if mu1p == 0 or mu1m == 0:
        raise AnalyticDomainError("mu1", 0.0)

    mu_scale = max(abs(mu1p), abs(mu1m), mu2p, 1.0) ** 2
    xp = 0.5 * math.sqrt(_radicand("x_plus^2", mu1p * mu2p / (dmc * xi * bp), mu_scale))
    xm = -0.5 * math.sqrt(
        _radicand("x_minus^2", mu1m * mu2m / (dpc * xi * bm), mu_scale)
    )
    yp = math.sqrt(_radicand("y_plus^2", dmc * mu2p * bp / (mu1p * xi), mu_scale))
    ym = math.sqrt(_radicand("y_minus^2", dpc * mu2m * bm / (mu1m * xi), mu_scale))
    up = math.sqrt(
        _radicand("u_plus^2", mu1p * mu2m / (8.0 * dpc * xi * bp), mu_scale)
    )
    um = math.sqrt(
        _radicand("u_minus^2", mu1m * mu2p / (8.0 * dmc * xi * bm), mu_scale)
    )
    vp = -math.sqrt(
        _radicand("v_plus^2", dpc * mu2m * bp / (2.0 * mu1p * xi), mu_scale)
    )
    vm = math.sqrt(
        _radicand("v_minus^2", dmc * mu2p * bm / (2.0 * mu1m * xi), mu_scale)
    )
    z = ((s - c) / (s + c)) ** 0.25

    return PresentStateFactorization(
        beta1=beta1,
        beta_plus=bp,
        beta_minus=bm,
        xi=xi,
        mu1_plus=mu1p,
        mu1_minus=mu1m,
        mu2_plus=mu2p,
        mu2_minus=mu2m,
        blocks={
            "x_plus": xp,
            "x_minus": xm,
            "y_plus": yp,
            "y_minus": ym,
            "u_plus": up,
            "u_minus": um,
            "v_plus": vp,
            "v_minus": vm,
            "z": z,
        },
        return_variance=a,
        signal_variance=s,
        correlation=c,
        reflectivity=kap,
    )


def target_present_williamson(
    scenario: IlluminationScenario,
) -> WilliamsonDecomposition:
    """Analytic decomposition when in domain, numeric otherwise."""
    try:
        return target_present_factorization(scenario).williamson()
    except AnalyticDomainError:
        return williamson_decompose(target_present_cov(scenario))
