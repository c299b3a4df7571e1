"""Benchmark state families and their closed-form bound expressions.

The closed forms here are written out independently of the matrix-element
machinery in :mod:`kme.bounds` so each can be checked against the other.
"""

from __future__ import annotations

import math

import numpy as np

from .bounds import _checked_sqrt
from .partitions import h_k
from .qnum import InputError


def _sqrt(x) -> float:
    # rounding at the simplex edge can leave 1 - alpha - beta at -1e-17
    return float(_checked_sqrt(x))


def _check_n(n: int, least: int = 2):
    if n < least:
        raise InputError(f"need n >= {least}, got {n}")


def make_ghz(n: int) -> np.ndarray:
    """``(|0...0> + |1...1>)/sqrt(2)`` on ``n`` qubits."""
    _check_n(n)
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = psi[-1] = 1 / math.sqrt(2)
    return psi


def make_w(n: int) -> np.ndarray:
    """Uniform superposition of the ``n`` weight-one basis states."""
    _check_n(n)
    psi = np.zeros(2**n, dtype=complex)
    psi[[1 << l for l in range(n)]] = 1 / math.sqrt(n)
    return psi


def make_anti_w(n: int) -> np.ndarray:
    """Bit-flipped W state (weight ``n-1`` strings)."""
    _check_n(n)
    full = 2**n - 1
    psi = np.zeros(2**n, dtype=complex)
    psi[[full ^ (1 << l) for l in range(n)]] = 1 / math.sqrt(n)
    return psi


def _projector(psi):
    return np.outer(psi, psi.conj())


def make_w_antiw_mix(n: int, a: float, b: float) -> np.ndarray:
    """``(1-a-b)/2^n I + a |W><W| + b |anti-W><anti-W|``.

    Positivity is not enforced; see :func:`min_eigenvalue`.
    """
    _check_n(n, 3)
    D = 2**n
    rho = (1 - a - b) / D * np.eye(D, dtype=complex)
    rho += a * _projector(make_w(n)) + b * _projector(make_anti_w(n))
    return rho


def make_ghz_w_mix(n: int, alpha: float, beta: float) -> np.ndarray:
    """``alpha |GHZ><GHZ| + beta |W><W| + (1-alpha-beta)/2^n I``."""
    _check_n(n, 3)
    D = 2**n
    rho = (1 - alpha - beta) / D * np.eye(D, dtype=complex)
    rho += alpha * _projector(make_ghz(n)) + beta * _projector(make_w(n))
    return rho


def min_eigenvalue(rho) -> float:
    return float(np.linalg.eigvalsh(rho)[0])


def is_psd(rho, tol: float = 1e-10) -> bool:
    """Eigenvalue check used to restrict parameter grids to physical states."""
    return min_eigenvalue(rho) >= -tol


def closed_i_k_w_antiw(n: int, k: int, a: float, b: float, which: str = "phi0") -> float:
    """Closed-form ``I_k`` of the W/anti-W mixture for the all-0 or all-1 probe."""
    _check_n(n, 3)
    if which not in ("phi0", "phi1"):
        raise InputError(f"which must be 'phi0' or 'phi1', got {which!r}")
    lead = (k - 1) * (a if which == "phi0" else b)
    noise = 1 - a - b
    if n > 3:
        return lead - n * (2 * n - k - 1) * noise / 2**n
    inner = (3 - 3 * a + 5 * b) if which == "phi0" else (3 + 5 * a - 3 * b)
    return lead - 0.75 * _checked_sqrt(noise * inner / 3) - 3 * (3 - k) * noise / 8


def closed_bound1_ghz_w(n: int, k: int, alpha: float, beta: float, probe: str = "computational") -> float:
    """Bound 1 for the GHZ/W/noise mixture as printed for two probe choices.

    ``probe="computational"`` is ``|0>^n`` with flips ``|1>``;
    ``probe="hadamard"`` is ``((|0>-|1>)/sqrt2)^n`` with flips
    ``(|0>+|1>)/sqrt2`` and has separate even/odd ``n`` branches.
    """
    _check_n(n, 3)
    H = h_k(n, k)
    D = 2**n
    noise = (1 - alpha - beta) / D
    if probe == "computational":
        return H * (
            (n - 1) * beta
            - n * (n - 1) * _sqrt((alpha / 2 + noise) * noise)
            - n * (n - k) * (beta / n + noise)
        )
    if probe != "hadamard":
        raise InputError(f"unknown probe {probe!r}")
    w = (n - 4) ** 2 * beta / (D * n)
    if n % 2 == 0:
        return H * (
            (n - 1) * (n - 2) ** 2 * beta / D
            - n * (n - 1) * _sqrt(((1 + alpha - beta) / D + w) * (1 + alpha - beta + n * beta) / D)
            - (n - k) * ((n - 2) ** 2 * beta + n * (1 - alpha - beta)) / D
        )
    return H * (
        (n - 1)
        * (
            (2 * n * alpha + (n - 2) ** 2 * beta) / D
            - n * _sqrt(((1 - alpha - beta) / D + w) * (1 - alpha - beta + n * beta) / D)
        )
        - (n - k) * ((n - 2) ** 2 * beta + n * (1 + alpha - beta)) / D
    )


def competitor_prefactor(n: int) -> float:
    """Coefficient of the earlier GME-concurrence bound on the W/anti-W family."""
    _check_n(n, 3)
    return 1 / (2 * math.sqrt(2)) if n == 3 else 1 / (math.sqrt(2) * (n - 1))


def _binomial_tail(n: int) -> float:
    """``C(n,2) + ... + C(n, floor(n/2))`` with the middle term halved for even ``n``."""
    total = 0.0
    for i in range(2, n // 2 + 1):
        c = math.comb(n, i)
        total += c / 2 if (n % 2 == 0 and i == n // 2) else c
    return total


def closed_competitor_bounds(n: int, k: int | None, params, which: str) -> float:
    """Earlier GME-concurrence bounds as quoted for the two example families.

    Parameters
    ----------
    n : int
        Number of qubits.
    k : int or None
        Only used by ``"w-antiw"``, where it selects ``I_k`` (normally 2).
    params : tuple of float
        ``(a, b)`` for ``"w-antiw"``; ``(alpha, beta)`` otherwise.
    which : {"w-antiw", "ghz-w-computational", "ghz-w-hadamard"}
        ``"ghz-w-hadamard"`` is the five-qubit expression with no subtracted
        term; it is never negative and is not a usable detection test.
    """
    p, q = params  # scalars or equal-shape arrays
    if which == "w-antiw":
        kk = 2 if k is None else k
        c = competitor_prefactor(n)
        return np.maximum(c * closed_i_k_w_antiw(n, kk, p, q, "phi0"), c * closed_i_k_w_antiw(n, kk, p, q, "phi1"))
    if which == "ghz-w-computational":
        _check_n(n, 3)
        noise = (1 - p - q) / 2**n
        return 2 * (
            p / 2
            - n * _checked_sqrt(q / n + noise) * _checked_sqrt(noise)
            - _binomial_tail(n) * noise
        )
    if which == "ghz-w-hadamard":
        if n != 5:
            raise InputError("the Hadamard-probe competitor expression exists only for n = 5")
        return 2 * (15 / 32 * (1 - p + 4 * q / 5) ** 0.25 * (1 + p + 4 * q / 5) ** 0.25)
    raise InputError(f"unknown competitor {which!r}")
