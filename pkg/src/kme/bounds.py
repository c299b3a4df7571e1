"""Tomography-free lower bounds on the k-ME concurrence of mixed states.

A probe is a full product state ``phi(x) = x_1 (x) ... (x) x_n`` together with
one orthogonal "flip" vector ``x'_i`` per site. Everything the bounds need is
a handful of matrix elements of ``rho`` between ``phi(x)`` and its single-
and double-flipped variants.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .partitions import h_k, hbar_k
from .qnum import (
    InputError,
    NumericIntegrityError,
    SystemShape,
    as_shape,
    check_density,
    product_matrix_element,
)

PROBE_TOL = 1e-9
DETECTION_TOL = 1e-9
SQRT_CLAMP = 1e-14
SWAP_MAX_DIM = 64


def _local_vectors(sites, shape: SystemShape, what: str) -> tuple[np.ndarray, ...]:
    if len(sites) != shape.n:
        raise InputError(f"{what}: expected {shape.n} local vectors, got {len(sites)}")
    out = []
    for i, (v, d) in enumerate(zip(sites, shape.dims), start=1):
        v = np.array(v, dtype=complex)
        if v.shape != (d,):
            raise InputError(f"{what} site {i}: vector length {v.shape} != dimension {d}")
        if abs(np.linalg.norm(v) - 1.0) > PROBE_TOL:
            raise InputError(f"{what} site {i}: vector is not unit norm")
        v.setflags(write=False)
        out.append(v)
    return tuple(out)


@dataclass(frozen=True, eq=False)
class Probe:
    """Product probe ``phi(x)`` with its per-site flip vectors ``x'_i``."""

    dims: tuple[int, ...]
    x_sites: tuple[np.ndarray, ...]
    xp_sites: tuple[np.ndarray, ...]

    def __post_init__(self):
        shape = as_shape(self.dims)
        object.__setattr__(self, "dims", shape.dims)
        object.__setattr__(self, "x_sites", _local_vectors(self.x_sites, shape, "x"))
        object.__setattr__(self, "xp_sites", _local_vectors(self.xp_sites, shape, "x'"))
        for i, (x, xp) in enumerate(zip(self.x_sites, self.xp_sites), start=1):
            if abs(np.vdot(x, xp)) > PROBE_TOL:
                raise InputError(f"site {i}: flip vector is not orthogonal to the probe vector")

    @property
    def n(self) -> int:
        return len(self.dims)

    @classmethod
    def basis(cls, dims, level: int = 0, flip: int = 1) -> "Probe":
        """Computational probe: every site in ``|level>``, flipped to ``|flip>``."""
        shape = as_shape(dims)
        x = [np.eye(d)[level] for d in shape.dims]
        xp = [np.eye(d)[flip] for d in shape.dims]
        return cls(shape.dims, x, xp)

    @classmethod
    def computational(cls, dims) -> "Probe":
        return cls.basis(dims, 0, 1)

    @classmethod
    def hadamard(cls, n: int) -> "Probe":
        """Qubit probe ``((|0>-|1>)/sqrt2)^n`` with flips ``(|0>+|1>)/sqrt2``."""
        minus = np.array([1.0, -1.0]) / math.sqrt(2)
        plus = np.array([1.0, 1.0]) / math.sqrt(2)
        return cls((2,) * n, [minus] * n, [plus] * n)

    def transformed(self, unitaries) -> "Probe":
        """The probe carried along by a local unitary ``U_1 (x) ... (x) U_n``."""
        x = [u @ v for u, v in zip(unitaries, self.x_sites)]
        xp = [u @ v for u, v in zip(unitaries, self.xp_sites)]
        return Probe(self.dims, x, xp)


@dataclass(frozen=True, eq=False)
class ProbePair:
    """Two site-wise orthogonal product probes with mutually implied flips.

    ``probe_x`` flips each ``x_i`` to ``y_i`` and ``probe_y`` flips each
    ``y_i`` back to ``x_i``.
    """

    probe_x: Probe
    probe_y: Probe

    def __post_init__(self):
        px, py = self.probe_x, self.probe_y
        if px.dims != py.dims:
            raise InputError("probe pair dimensions differ")
        for i in range(px.n):
            if abs(np.vdot(px.x_sites[i], py.x_sites[i])) > PROBE_TOL:
                raise InputError(f"site {i + 1}: probe vectors x and y are not orthogonal")
            if not (
                np.allclose(px.xp_sites[i], py.x_sites[i], atol=PROBE_TOL)
                and np.allclose(py.xp_sites[i], px.x_sites[i], atol=PROBE_TOL)
            ):
                raise InputError(f"site {i + 1}: flips must be x'_i = y_i and y'_i = x_i")

    @classmethod
    def from_sites(cls, dims, x_sites, y_sites) -> "ProbePair":
        return cls(Probe(dims, x_sites, y_sites), Probe(dims, y_sites, x_sites))

    @classmethod
    def computational(cls, dims) -> "ProbePair":
        return cls(Probe.basis(dims, 0, 1), Probe.basis(dims, 1, 0))

    @classmethod
    def hadamard(cls, n: int) -> "ProbePair":
        h = Probe.hadamard(n)
        return cls.from_sites(h.dims, h.x_sites, h.xp_sites)

    @property
    def dims(self):
        return self.probe_x.dims


@dataclass(frozen=True)
class BoundReport:
    order: int
    k: int
    i_k_values: tuple[float, ...]
    prefactor: float
    bound_value: float
    detected: bool
    probe_index: int = 0


def flipped_product(probe: Probe, flips=()) -> list[np.ndarray]:
    """Local vectors of ``phi(x)`` with ``x_i -> x'_i`` at the sites in ``flips`` (1-based)."""
    flips = set(flips)
    if len(flips) > 2:
        raise InputError("at most two sites can be flipped")
    for i in flips:
        if not 1 <= i <= probe.n:
            raise InputError(f"site {i} out of range 1..{probe.n}")
    return [
        probe.xp_sites[l] if (l + 1) in flips else probe.x_sites[l] for l in range(probe.n)
    ]


class ProbeElements(NamedTuple):
    """Matrix elements of ``rho`` used by ``I_k``.

    ``center`` is ``<phi|rho|phi>``; ``single[i, j]`` is ``<phi_i|rho|phi_j>``;
    ``double[i, j]`` is ``<phi_ij|rho|phi_ij>`` (``i != j``). Indices are
    0-based sites.
    """

    center: complex
    single: np.ndarray
    double: np.ndarray


def probe_elements(rho, probe: Probe) -> ProbeElements:
    """Collect the ``O(n^2)`` product matrix elements that ``I_k`` depends on."""
    n = probe.n
    single = np.zeros((n, n), dtype=complex)
    double = np.zeros((n, n), dtype=complex)
    flipped = [flipped_product(probe, {i + 1}) for i in range(n)]
    center = product_matrix_element(rho, probe.dims, probe.x_sites, probe.x_sites)
    for i in range(n):
        for j in range(n):
            single[i, j] = product_matrix_element(rho, probe.dims, flipped[i], flipped[j])
    for i, j in itertools.combinations(range(n), 2):
        v = flipped_product(probe, {i + 1, j + 1})
        double[i, j] = double[j, i] = product_matrix_element(rho, probe.dims, v, v)
    return ProbeElements(center, single, double)


def _checked_sqrt(x):
    x = np.asarray(x, dtype=float)
    if np.any(x < -SQRT_CLAMP):
        raise NumericIntegrityError(
            f"negative product of diagonal expectations ({x.min():.3g}); is rho positive?"
        )
    return np.sqrt(np.maximum(x, 0.0))


def i_k_from_elements(center, single, double, k: int):
    """Combine probe matrix elements into ``I_k``.

    Works elementwise over leading batch axes: ``center`` has shape ``B``,
    ``single`` and ``double`` have shape ``B + (n, n)``.
    """
    single = np.asarray(single)
    double = np.asarray(double)
    n = single.shape[-1]
    off = ~np.eye(n, dtype=bool)
    coherence = np.abs(single[..., off]).sum(axis=-1)
    c = np.real(center)
    geo = _checked_sqrt(np.asarray(c)[..., None] * np.real(double[..., off])).sum(axis=-1)
    pops = np.real(np.diagonal(single, axis1=-2, axis2=-1)).sum(axis=-1)
    return coherence - geo - (n - k) * pops


def _check_k(k: int, n: int):
    if not 2 <= k <= n:
        raise InputError(f"need 2 <= k <= n, got k={k}, n={n}")


def i_k_entries(rho, probe: Probe, k: int) -> float:
    """``I_k(rho, phi(x))`` evaluated from single-copy matrix elements.

    ``sum_{i!=j} |<phi_i|rho|phi_j>| - sum_{i!=j} sqrt(<phi|rho|phi><phi_ij|rho|phi_ij>)
    - (n-k) sum_i <phi_i|rho|phi_i>``. Negative values are returned as is.
    """
    rho = check_density(rho, probe.dims)
    _check_k(k, probe.n)
    e = probe_elements(rho, probe)
    return float(i_k_from_elements(e.center, e.single, e.double, k))


def _swap_permutations(shape: SystemShape):
    """Index maps on ``H (x) H`` for each single-site swap ``P_i``."""
    D = shape.total
    idx = np.arange(D * D)
    a, b = np.divmod(idx, D)
    da = np.array(np.unravel_index(a, shape.dims))
    db = np.array(np.unravel_index(b, shape.dims))
    perms = []
    for l in range(shape.n):
        na, nb = da.copy(), db.copy()
        na[l], nb[l] = db[l], da[l]
        sa = np.ravel_multi_index(tuple(na), shape.dims)
        sb = np.ravel_multi_index(tuple(nb), shape.dims)
        perms.append(sa * D + sb)
    return perms


def _compose(p, q):
    """Index map of the operator product ``P Q`` (apply ``Q`` first)."""
    return q[p]


def i_k_swap(rho, probe: Probe, k: int, max_dim: int = SWAP_MAX_DIM) -> float:
    """``I_k`` evaluated literally on two copies with swap operators.

    Builds ``rho (x) rho`` on ``H (x) H``, the single-site swaps ``P_i`` and
    ``P_tot = P_1 ... P_n``, and takes the three expectation sums over the
    product vectors ``Phi_ij = phi_i (x) phi_j``. Meant as a cross-check of
    :func:`i_k_entries`; the cost grows as ``D^4``.
    """
    shape = as_shape(probe.dims)
    rho = check_density(rho, shape)
    _check_k(k, shape.n)
    D = shape.total
    if D > max_dim:
        raise InputError(
            f"two-copy evaluation limited to D <= {max_dim} (got {D}); use i_k_entries"
        )
    n = shape.n
    perms = _swap_permutations(shape)
    p_tot = perms[0]
    for p in perms[1:]:
        p_tot = _compose(p_tot, p)
    rho_t = rho.T

    def rho2(w):
        # (rho (x) rho) w without forming the D^2 x D^2 matrix
        return (rho @ w.reshape(D, D) @ rho_t).reshape(-1)

    def vec(flips):
        out = np.ones(1, dtype=complex)
        for v in flipped_product(probe, flips):
            out = np.kron(out, v)
        return out

    phis = [vec({i + 1}) for i in range(n)]

    def permute(perm, v):
        # (P v)[s] = v[perm[s]]; every P_i is an involution
        return v[perm]

    first = second = third = 0.0
    for i in range(n):
        for j in range(n):
            big = np.kron(phis[i], phis[j])
            if i != j:
                t1 = np.vdot(big, rho2(permute(p_tot, big)))
                first += math.sqrt(max(t1.real, 0.0))
                pb = permute(perms[i], big)
                t2 = np.vdot(pb, rho2(pb))
                second += float(_checked_sqrt(t2.real))
            else:
                pb = permute(perms[i], big)
                t3 = np.vdot(pb, rho2(pb))
                third += float(_checked_sqrt(t3.real))
    return first - second - (n - k) * third


def bound1(rho, probe: Probe, k: int, tol: float = DETECTION_TOL) -> BoundReport:
    """``H_k * I_k(rho, phi(x))``."""
    i = i_k_entries(rho, probe, k)
    pref = h_k(probe.n, k)
    val = pref * i
    return BoundReport(1, k, (i,), pref, val, bool(val > tol))


def _as_pair(pair) -> ProbePair:
    if isinstance(pair, ProbePair):
        return pair
    if isinstance(pair, (tuple, list)) and len(pair) == 2:
        return ProbePair(*pair)
    raise InputError("bound 2 needs a ProbePair")


def bound2(rho, pair: ProbePair, k: int, tol: float = DETECTION_TOL) -> BoundReport:
    """``Hbar_k * (I_k(rho, phi(x)) + I_k(rho, phi(y)))``."""
    pair = _as_pair(pair)
    ix = i_k_entries(rho, pair.probe_x, k)
    iy = i_k_entries(rho, pair.probe_y, k)
    pref = hbar_k(pair.probe_x.n, k)
    val = pref * (ix + iy)
    return BoundReport(2, k, (ix, iy), pref, val, bool(val > tol))


def best_bound(rho, probes: Sequence, k: int, order: int = 1, tol: float = DETECTION_TOL) -> BoundReport:
    """Largest bound over an explicit list of probes (or probe pairs for ``order=2``).

    Ties go to the lowest index.
    """
    if len(probes) == 0:
        raise InputError("need at least one probe")
    if order == 1:
        fn = bound1
    elif order == 2:
        fn = bound2
    else:
        raise InputError(f"order must be 1 or 2, got {order}")
    best = None
    for idx, p in enumerate(probes):
        rep = fn(rho, p, k, tol)
        if best is None or rep.bound_value > best.bound_value:
            best = BoundReport(rep.order, k, rep.i_k_values, rep.prefactor, rep.bound_value, rep.detected, idx)
    return best


class MeasurementBudget(NamedTuple):
    bound1_measurements: int
    bound2_measurements: int
    bound1_observables: int
    bound2_observables: int


def measurement_budget(n: int) -> MeasurementBudget:
    """Worst-case measurement and local-observable counts for a fixed probe."""
    if n < 2:
        raise InputError("need n >= 2")
    return MeasurementBudget(
        n * n + 1,
        2 * n * n + 2,
        5 * (n * n - n) // 2 + n + 1,
        5 * n * n - 3 * n + 2,
    )
