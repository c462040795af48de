"""Shared builders for randomized covariance tests."""

import numpy as np

from qillum import symplectic_form


def rotation_symplectic(n: int, j: int, theta: float) -> np.ndarray:
    s = np.eye(2 * n)
    c, sn = np.cos(theta), np.sin(theta)
    s[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = [[c, sn], [-sn, c]]
    return s


def squeezer_symplectic(n: int, j: int, r: float) -> np.ndarray:
    s = np.eye(2 * n)
    s[2 * j, 2 * j] = np.exp(r)
    s[2 * j + 1, 2 * j + 1] = np.exp(-r)
    return s


def beamsplitter_symplectic(n: int, j: int, k: int, theta: float) -> np.ndarray:
    s = np.eye(2 * n)
    c, sn = np.cos(theta), np.sin(theta)
    for off in range(2):
        a, b = 2 * j + off, 2 * k + off
        s[a, a] = s[b, b] = c
        s[a, b] = sn
        s[b, a] = -sn
    return s


def random_symplectic(n: int, rng: np.random.Generator) -> np.ndarray:
    """A few alternating layers of rotations, squeezers, and beamsplitters."""
    s = np.eye(2 * n)
    for _ in range(3):
        for j in range(n):
            s = s @ rotation_symplectic(n, j, rng.uniform(0, 2 * np.pi))
            s = s @ squeezer_symplectic(n, j, rng.uniform(-0.8, 0.8))
        for j in range(n):
            for k in range(j + 1, n):
                s = s @ beamsplitter_symplectic(n, j, k, rng.uniform(0, 2 * np.pi))
    return s


def random_cov(n: int, rng: np.random.Generator, nu_lo=1.0, nu_hi=4.0):
    """Random physical covariance with known symplectic spectrum."""
    nus = np.sort(rng.uniform(nu_lo, nu_hi, n))[::-1]
    s = random_symplectic(n, rng)
    m = (s * np.repeat(nus, 2)) @ s.T
    return 0.5 * (m + m.T), nus


def assert_symplectic(s: np.ndarray, tol=1e-9):
    n = s.shape[0] // 2
    omega = symplectic_form(n)
    assert np.max(np.abs(s @ omega @ s.T - omega)) < tol
