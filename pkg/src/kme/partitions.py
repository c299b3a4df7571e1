"""Set partitions of ``{1..n}`` and the block-size prefactors of the bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .qnum import InputError

MAX_PARTIES = 12


@dataclass(frozen=True)
class KPartition:
    """Blocks ``A_1|...|A_k`` in canonical order (sorted by smallest element)."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        if any(not b for b in blocks):
            raise InputError("partition blocks must be nonempty")
        blocks = tuple(sorted(blocks, key=lambda b: b[0]))
        object.__setattr__(self, "blocks", blocks)
        flat = [p for b in blocks for p in b]
        if len(flat) != len(set(flat)):
            raise InputError(f"partition blocks overlap: {blocks}")

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def covers(self, n: int) -> bool:
        return sorted(p for b in self.blocks for p in b) == list(range(1, n + 1))

    def __str__(self):
        return "|".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)

    @classmethod
    def parse(cls, text: str) -> "KPartition":
        """Inverse of ``str``: ``"{1,3}|{2}"``."""
        blocks = []
        for part in text.split("|"):
            part = part.strip().strip("{}")
            blocks.append(tuple(int(x) for x in part.split(",") if x.strip()))
        return cls(tuple(blocks))


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind by the standard recurrence."""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    row = [1] + [0] * k  # S(0, j)
    for m in range(1, n + 1):
        new = [0] * (k + 1)
        for j in range(1, min(m, k) + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[k]


def enumerate_k_partitions(n: int, k: int) -> Iterator[KPartition]:
    """Yield every partition of ``{1..n}`` into exactly ``k`` blocks.

    Partitions come out in lexicographic order of their restricted growth
    strings, which is deterministic and matches canonical block order.
    """
    if not 1 <= k <= n:
        raise InputError(f"need 1 <= k <= n, got n={n}, k={k}")
    if n > MAX_PARTIES:
        raise InputError(f"n={n} exceeds the enumeration guard ({MAX_PARTIES})")

    labels = [0] * n

    def rec(i: int, used: int) -> Iterator[KPartition]:
        if i == n:
            if used == k:
                blocks = [[] for _ in range(k)]
                for p, b in enumerate(labels):
                    blocks[b].append(p + 1)
                yield KPartition(tuple(tuple(b) for b in blocks))
            return
        # need k - used new blocks from the n - i remaining elements
        if n - i > k - used:
            for b in range(used):
                labels[i] = b
                yield from rec(i + 1, used)
        if used < k:
            labels[i] = used
            yield from rec(i + 1, used + 1)

    labels[0] = 0
    yield from rec(1, 1)


def _check_hk_args(n: int, k: int):
    if k < 2 or k > n:
        raise InputError(f"prefactor needs 2 <= k <= n, got n={n}, k={k}")


def _hk_from_sizes(n: int, k: int, sizes) -> float:
    den = n * n - sum(s * s for s in sizes)
    # 1/sqrt(den/k) reproduces 2/n and 2/sqrt(n^2-1) bit for bit at k=2
    return 1.0 / math.sqrt(den / k)


def h_k(n: int, k: int) -> float:
    """Bound-1 prefactor ``min sqrt(k)/sqrt(n^2 - sum n_t^2)`` over block sizes.

    The balanced split (``r`` blocks of ``q+1``, the rest of ``q`` where
    ``n = qk + r``) minimizes ``sum n_t^2`` and hence the prefactor.
    """
    _check_hk_args(n, k)
    q, r = divmod(n, k)
    return _hk_from_sizes(n, k, [q + 1] * r + [q] * (k - r))


def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def h_k_bruteforce(n: int, k: int) -> float:
    """``h_k`` by explicit minimization over all positive compositions of ``n``."""
    _check_hk_args(n, k)
    if n > 30:
        raise InputError("brute-force prefactor limited to n <= 30")
    return min(_hk_from_sizes(n, k, c) for c in _compositions(n, k))


def hbar_k(n: int, k: int) -> float:
    """Bound-2 prefactor, ``h_k / sqrt(2)``."""
    return h_k(n, k) / math.sqrt(2)
