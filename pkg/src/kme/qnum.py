"""Dense linear algebra on composite Hilbert spaces.

Parties are labelled ``1..n``. Flat basis indices put party 1 in the most
significant digit: ``s = sum_l i_l * d_{l+1} * ... * d_n``.

States are plain numpy arrays (1-D amplitude vectors, 2-D density
matrices); the local dimensions travel alongside as a ``dims`` sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

STATE_TOL = 1e-9


class InputError(ValueError):
    """Invalid user input (shapes, indices, parameters)."""


class NumericIntegrityError(ArithmeticError):
    """A computation produced values outside its numerical contract."""


class SystemShape:
    """Local dimensions ``(d_1, ..., d_n)`` and flat-index arithmetic."""

    def __init__(self, dims: Sequence[int]):
        dims = tuple(int(d) for d in dims)
        if len(dims) < 1:
            raise InputError("a system needs at least one party")
        if any(d < 2 for d in dims):
            raise InputError(f"every local dimension must be >= 2, got {dims}")
        self.dims = dims
        # weights[l] = d_{l+1} * ... * d_n (0-based l)
        w = [1] * len(dims)
        for l in range(len(dims) - 2, -1, -1):
            w[l] = w[l + 1] * dims[l + 1]
        self.weights = tuple(w)

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def total(self) -> int:
        return math.prod(self.dims)

    def encode(self, digits: Sequence[int]) -> int:
        if len(digits) != self.n:
            raise InputError(f"expected {self.n} digits, got {len(digits)}")
        s = 0
        for i, d, w in zip(digits, self.dims, self.weights):
            if not 0 <= i < d:
                raise InputError(f"digit {i} out of range for local dimension {d}")
            s += i * w
        return s

    def decode(self, s: int) -> tuple[int, ...]:
        if not 0 <= s < self.total:
            raise InputError(f"flat index {s} out of range [0, {self.total})")
        return tuple((s // w) % d for d, w in zip(self.dims, self.weights))

    def check_parties(self, parties) -> tuple[int, ...]:
        """Return ``parties`` as a sorted tuple after range checking."""
        ps = tuple(sorted(set(int(p) for p in parties)))
        if not ps:
            raise InputError("subsystem set must be nonempty")
        if ps[0] < 1 or ps[-1] > self.n:
            raise InputError(f"parties {ps} out of range 1..{self.n}")
        return ps

    def __eq__(self, other):
        return isinstance(other, SystemShape) and self.dims == other.dims

    def __hash__(self):
        return hash(self.dims)

    def __repr__(self):
        return f"SystemShape({self.dims})"


def as_shape(dims) -> SystemShape:
    return dims if isinstance(dims, SystemShape) else SystemShape(dims)


@dataclass(frozen=True)
class ValidationReport:
    """Deviations of an array from being a valid state."""

    kind: str
    hermiticity: float = 0.0
    trace: float = 0.0
    norm: float = 0.0
    tol: float = STATE_TOL

    @property
    def flagged(self) -> list[str]:
        out = []
        if self.hermiticity > self.tol:
            out.append("hermiticity")
        if self.trace > self.tol:
            out.append("trace")
        if self.norm > self.tol:
            out.append("norm")
        return out

    @property
    def ok(self) -> bool:
        return not self.flagged


def validate(state, tol: float = STATE_TOL) -> ValidationReport:
    """Report how far ``state`` is from a normalized vector or unit-trace Hermitian matrix.

    A 1-D array is treated as a state vector, a 2-D array as a density
    matrix. Positivity is not checked.
    """
    a = np.asarray(state)
    if a.ndim == 1:
        return ValidationReport("vector", norm=abs(float(np.vdot(a, a).real) - 1.0), tol=tol)
    if a.ndim == 2 and a.shape[0] == a.shape[1]:
        herm = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
        tr = abs(complex(np.trace(a)) - 1.0)
        return ValidationReport("matrix", hermiticity=herm, trace=tr, tol=tol)
    raise InputError(f"cannot validate array of shape {a.shape}")


def _check_dim(a: np.ndarray, shape: SystemShape):
    if a.shape[0] != shape.total:
        raise InputError(f"array of size {a.shape[0]} does not match dims {shape.dims}")


def check_vector(psi, dims=None, tol: float = STATE_TOL) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise InputError("state vector must be 1-D")
    if dims is not None:
        _check_dim(psi, as_shape(dims))
    rep = validate(psi, tol)
    if not rep.ok:
        raise InputError(f"state vector is not normalized (deviation {rep.norm:.3g})")
    return psi


def check_density(rho, dims=None, tol: float = STATE_TOL) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InputError("density matrix must be square")
    if dims is not None:
        _check_dim(rho, as_shape(dims))
    rep = validate(rho, tol)
    if not rep.ok:
        raise InputError(f"invalid density matrix: {', '.join(rep.flagged)} deviation too large")
    return rho


def outer(psi) -> np.ndarray:
    """``|psi><psi|`` for a normalized vector."""
    psi = check_vector(psi)
    return np.outer(psi, psi.conj())


def partial_trace(rho, dims, keep) -> np.ndarray:
    """Reduced density matrix on the parties in ``keep`` (1-based labels).

    The kept parties stay in their original order.
    """
    shape = as_shape(dims)
    keep = shape.check_parties(keep)
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (shape.total, shape.total):
        raise InputError(f"matrix of shape {rho.shape} does not match dims {shape.dims}")
    n = shape.n
    if len(keep) == n:
        return rho.copy()
    t = rho.reshape(shape.dims + shape.dims)
    kept0 = [p - 1 for p in keep]
    traced = [l for l in range(n) if l not in kept0]
    # row axes 0..n-1, column axes n..2n-1; contract each traced party's pair
    row = list(range(n))
    col = [n + l for l in range(n)]
    for l in traced:
        col[l] = row[l]
    out = [row[l] for l in kept0] + [col[l] for l in kept0]
    d_keep = math.prod(shape.dims[l] for l in kept0)
    return np.einsum(t, row + col, out).reshape(d_keep, d_keep)


def purity(rho) -> float:
    """``Tr(rho^2)`` for Hermitian ``rho``."""
    rho = np.asarray(rho)
    return float(np.sum(np.abs(rho) ** 2))


def marginal_purity(psi, dims, block) -> float:
    """Purity of the reduced state of a pure ``psi`` on ``block``.

    Uses the bipartite reshaping of ``psi`` rather than forming the full
    density matrix.
    """
    shape = as_shape(dims)
    block = shape.check_parties(block)
    a0 = [p - 1 for p in block]
    rest = [l for l in range(shape.n) if l not in a0]
    t = np.asarray(psi).reshape(shape.dims)
    d_a = math.prod(shape.dims[l] for l in a0)
    m = np.transpose(t, a0 + rest).reshape(d_a, -1)
    g = m @ m.conj().T if d_a <= m.shape[1] else m.conj().T @ m
    return float(np.sum(np.abs(g) ** 2))


def kron_all(vectors) -> np.ndarray:
    out = np.ones(1, dtype=complex)
    for v in vectors:
        out = np.kron(out, np.asarray(v, dtype=complex))
    return out


def product_matrix_element(rho, dims, bra_sites, ket_sites) -> complex:
    """``<u|rho|v>`` for product vectors ``u = (x) bra_sites`` and ``v = (x) ket_sites``.

    The contraction runs site by site over the reshaped matrix, so the full
    product vectors are never materialized. For computational-basis sites
    this reduces to a single entry lookup.
    """
    shape = as_shape(dims)
    if len(bra_sites) != shape.n or len(ket_sites) != shape.n:
        raise InputError(f"need one local vector per site ({shape.n})")
    bras, kets = [], []
    for d, u, v in zip(shape.dims, bra_sites, ket_sites):
        u = np.asarray(u, dtype=complex)
        v = np.asarray(v, dtype=complex)
        if u.shape != (d,) or v.shape != (d,):
            raise InputError(f"local vector length does not match dimension {d}")
        bras.append(u)
        kets.append(v)
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (shape.total, shape.total):
        raise InputError(f"matrix of shape {rho.shape} does not match dims {shape.dims}")
    t = rho.reshape(shape.dims + shape.dims)
    # contract the ket (column) axes from the last one backwards, then the bras
    for v in reversed(kets):
        t = t @ v
    for u in reversed(bras):
        t = t @ u.conj()
    return complex(t)


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_unit(d: int, seed=None) -> np.ndarray:
    rng = _rng(seed)
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)


def random_pure(dims, seed) -> np.ndarray:
    """Haar-random pure state (Gaussian vector, normalized)."""
    shape = as_shape(dims)
    return random_unit(shape.total, seed)


def random_product(dims, seed) -> np.ndarray:
    """Tensor product of independent random local unit vectors."""
    rng = _rng(seed)
    shape = as_shape(dims)
    return kron_all(random_unit(d, rng) for d in shape.dims)


def random_unitary(d: int, seed=None) -> np.ndarray:
    """Haar-random ``d x d`` unitary via QR with phase fix."""
    rng = _rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_local_unitaries(dims, seed=None) -> list[np.ndarray]:
    rng = _rng(seed)
    return [random_unitary(d, rng) for d in as_shape(dims).dims]


def random_density(dims, seed, rank: int | None = None) -> np.ndarray:
    """Random full- or fixed-rank density matrix (Ginibre construction)."""
    rng = _rng(seed)
    D = as_shape(dims).total
    r = D if rank is None else rank
    g = rng.standard_normal((D, r)) + 1j * rng.standard_normal((D, r))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return rho / np.trace(rho).real


def local_operator(unitaries) -> np.ndarray:
    """``U_1 (x) ... (x) U_n`` as a dense matrix."""
    out = np.ones((1, 1), dtype=complex)
    for u in unitaries:
        out = np.kron(out, np.asarray(u, dtype=complex))
    return out


def apply_local(state, unitaries) -> np.ndarray:
    """Apply a local unitary to a vector (``U psi``) or a matrix (``U rho U^dag``)."""
    dims = tuple(np.asarray(u).shape[0] for u in unitaries)
    a = np.asarray(state, dtype=complex)
    if a.ndim == 1:
        t = a.reshape(dims)
        for l, u in enumerate(unitaries):
            t = np.moveaxis(np.tensordot(u, t, axes=([1], [l])), 0, l)
        return t.reshape(-1)
    u = local_operator(unitaries)
    return u @ a @ u.conj().T
