import math

import numpy as np
import pytest

from kme.concurrence import is_k_separable_pure, kme_concurrence_pure, kme_fixed_partition
from kme.families import make_ghz, make_w
from kme.partitions import KPartition, enumerate_k_partitions
from kme.qnum import (
    InputError,
    apply_local,
    kron_all,
    outer,
    partial_trace,
    purity,
    random_local_unitaries,
    random_product,
    random_pure,
)


def concurrence_dense(psi, dims, k):
    """Reference via explicit reduced density matrices for every partition."""
    rho = outer(psi)
    best = math.inf
    for part in enumerate_k_partitions(len(dims), k):
        s = sum(1 - purity(partial_trace(rho, dims, b)) for b in part.blocks)
        best = min(best, math.sqrt(max(2 * s / k, 0.0)))
    return best


def basis_state(bits):
    return kron_all([np.eye(2)[b] for b in bits])


def test_product_state_is_zero():
    psi = basis_state([0, 1, 0])
    for k in (2, 3):
        r = kme_concurrence_pure(psi, (2, 2, 2), k)
        assert abs(r.value) < 1e-12


def test_bell_pair():
    bell = np.array([1, 0, 0, 1]) / math.sqrt(2)
    r = kme_concurrence_pure(bell, (2, 2), 2)
    assert abs(r.value - 1.0) < 1e-12
    assert str(r.argmin_partition) == "{1}|{2}"


def test_w3_fixed_partition():
    v = kme_fixed_partition(make_w(3), (2, 2, 2), KPartition(((1,), (2, 3))))
    assert abs(v - math.sqrt(8 / 9)) < 1e-12


def test_ghz3_all_partitions_equal():
    r = kme_concurrence_pure(make_ghz(3), (2, 2, 2), 2, keep_values=True)
    assert abs(r.value - 1.0) < 1e-12
    assert len(r.per_partition_values) == 3
    np.testing.assert_allclose(list(r.per_partition_values.values()), 1.0, atol=1e-12)
    # ties resolve to the first partition in canonical order
    assert r.argmin_partition == next(enumerate_k_partitions(3, 2))


@pytest.mark.parametrize("n", range(2, 8))
def test_ghz_k2_is_one(n):
    r = kme_concurrence_pure(make_ghz(n), (2,) * n, 2)
    assert abs(r.value - 1.0) < 1e-12


def test_w4_k2():
    r = kme_concurrence_pure(make_w(4), (2,) * 4, 2)
    assert abs(r.value - math.sqrt(3) / 2) < 1e-12
    assert sorted(r.argmin_partition.sizes) == [1, 3]


def test_fully_separable_state_at_k_equals_n():
    psi = basis_state([0, 1, 0, 1])
    assert abs(kme_concurrence_pure(psi, (2,) * 4, 4).value) < 1e-12
    assert is_k_separable_pure(psi, (2,) * 4, 4)


def test_separability_examples():
    dims = (2,) * 4
    bell = np.array([1, 0, 0, 1]) / math.sqrt(2)
    two_bells = np.kron(bell, bell)
    assert is_k_separable_pure(two_bells, dims, 2)
    assert not is_k_separable_pure(two_bells, dims, 3)
    assert not is_k_separable_pure(make_ghz(4), dims, 2)
    assert is_k_separable_pure(random_product(dims, 3), dims, 4)


@pytest.mark.parametrize("dims,k", [((2, 2, 2), 2), ((2, 3, 2), 2), ((2, 2, 2, 2), 3), ((3, 2, 2), 3)])
def test_matches_dense_reference(dims, k):
    for seed in range(5):
        psi = random_pure(dims, seed)
        got = kme_concurrence_pure(psi, dims, k).value
        assert abs(got - concurrence_dense(psi, dims, k)) < 1e-12


def test_local_unitary_invariance():
    dims = (2, 3, 2, 2)
    for seed in range(5):
        psi = random_pure(dims, seed)
        u = random_local_unitaries(dims, seed + 100)
        for k in (2, 3, 4):
            a = kme_concurrence_pure(psi, dims, k).value
            b = kme_concurrence_pure(apply_local(psi, u), dims, k).value
            assert abs(a - b) < 1e-10


def test_range_bounds():
    for n in (3, 4, 5):
        for seed in range(20):
            psi = random_pure((2,) * n, seed)
            for k in range(2, n + 1):
                v = kme_concurrence_pure(psi, (2,) * n, k).value
                assert 0.0 <= v < math.sqrt(2)


def test_ghz_is_flat_in_k():
    # every proper block of GHZ has purity 1/2
    n = 5
    vals = [kme_concurrence_pure(make_ghz(n), (2,) * n, k).value for k in range(2, n + 1)]
    np.testing.assert_allclose(vals, 1.0, atol=1e-12)


def test_keep_values_contains_minimum():
    dims = (2,) * 5
    psi = random_pure(dims, 7)
    r = kme_concurrence_pure(psi, dims, 3, keep_values=True)
    assert len(r.per_partition_values) == 25
    assert r.value == min(r.per_partition_values.values())
    assert r.per_partition_values[r.argmin_partition] == r.value
    assert kme_concurrence_pure(psi, dims, 3).per_partition_values is None


@pytest.mark.parametrize("k", [1, 4, 0])
def test_k_out_of_range(k):
    with pytest.raises(InputError):
        kme_concurrence_pure(make_ghz(3), (2, 2, 2), k)


def test_too_many_parties_points_to_fixed_partition():
    psi = np.zeros(2**13)
    psi[0] = 1
    with pytest.raises(InputError, match="kme_fixed_partition"):
        kme_concurrence_pure(psi, (2,) * 13, 2)
    part = KPartition((tuple(range(1, 7)), tuple(range(7, 14))))
    assert abs(kme_fixed_partition(psi, (2,) * 13, part)) < 1e-12


def test_rejects_bad_inputs():
    with pytest.raises(InputError):
        kme_concurrence_pure(np.ones(8), (2, 2, 2), 2)
    with pytest.raises(InputError):
        kme_concurrence_pure(make_ghz(3), (2, 2), 2)
    with pytest.raises(InputError):
        kme_fixed_partition(make_ghz(3), (2, 2, 2), KPartition(((1,), (2,))))
