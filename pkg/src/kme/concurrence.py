"""Exact k-ME concurrence of pure states."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .partitions import MAX_PARTIES, KPartition, enumerate_k_partitions
from .qnum import InputError, as_shape, check_vector, marginal_purity


@dataclass(frozen=True)
class ConcurrenceResult:
    value: float
    argmin_partition: KPartition
    per_partition_values: dict[KPartition, float] | None = field(default=None, repr=False)


class _PurityCache:
    """Marginal purities of one pure state, keyed by block."""

    def __init__(self, psi, shape):
        self.psi = psi
        self.shape = shape
        self._cache: dict[tuple[int, ...], float] = {}

    def __call__(self, block: tuple[int, ...]) -> float:
        p = self._cache.get(block)
        if p is None:
            p = marginal_purity(self.psi, self.shape, block)
            self._cache[block] = p
        return p


# linear entropy below this is rounding noise; the square root would turn
# 1e-15 into 3e-8 and hide exact separability
ENTROPY_FLOOR = 1e-14


def _value(purities, k: int) -> float:
    s = sum(1.0 - p for p in purities)
    if s < ENTROPY_FLOOR:
        return 0.0
    return math.sqrt(2.0 * s / k)


def _check_partition(partition: KPartition, n: int):
    if not partition.covers(n):
        raise InputError(f"partition {partition} does not cover parties 1..{n}")


def kme_fixed_partition(psi, dims, partition: KPartition) -> float:
    """``sqrt((2/k) * sum_t (1 - Tr rho_{A_t}^2))`` for one fixed partition."""
    shape = as_shape(dims)
    psi = check_vector(psi, shape)
    _check_partition(partition, shape.n)
    purities = [marginal_purity(psi, shape, b) for b in partition.blocks]
    return _value(purities, partition.k)


def kme_concurrence_pure(psi, dims, k: int, keep_values: bool = False) -> ConcurrenceResult:
    """Minimize the partition-averaged linear entropy over all k-partitions.

    Parameters
    ----------
    psi : array_like
        Normalized amplitude vector.
    dims : sequence of int
        Local dimensions.
    k : int
        Number of blocks, ``2 <= k <= n``.
    keep_values : bool
        Retain the value for every partition in ``per_partition_values``.

    Returns
    -------
    ConcurrenceResult
        The minimum and the first minimizing partition in canonical order.
    """
    shape = as_shape(dims)
    psi = check_vector(psi, shape)
    n = shape.n
    if not 2 <= k <= n:
        raise InputError(f"k-ME concurrence needs 2 <= k <= n, got k={k}, n={n}")
    if n > MAX_PARTIES:
        raise InputError(
            f"n={n} exceeds the enumeration guard ({MAX_PARTIES}); "
            "use kme_fixed_partition for specific partitions"
        )
    pur = _PurityCache(psi, shape)
    best, arg = math.inf, None
    values = {} if keep_values else None
    for part in enumerate_k_partitions(n, k):
        v = _value([pur(b) for b in part.blocks], k)
        if values is not None:
            values[part] = v
        if v < best:
            best, arg = v, part
    return ConcurrenceResult(best, arg, values)


def is_k_separable_pure(psi, dims, k: int, tol: float = 1e-8) -> bool:
    return kme_concurrence_pure(psi, dims, k).value < tol

