"""k-ME concurrence of a few pure states.

For a pure state the measure is exact: enumerate every split of the parties
into k groups, take the average linear entropy of the groups, and keep the
smallest value. GHZ sits at 1 for every k because each proper group of
parties sees a maximally mixed qubit. W is less entangled across a single
cut, and the best cut always isolates one party.
"""

import math

import numpy as np

from kme import enumerate_k_partitions, kme_concurrence_pure, make_ghz, make_w, random_product

n = 4
dims = (2,) * n

for name, psi in [("GHZ", make_ghz(n)), ("W", make_w(n))]:
    for k in range(2, n + 1):
        res = kme_concurrence_pure(psi, dims, k)
        print(f"{name}_{n}  k={k}  C={res.value:.6f}  best split {res.argmin_partition}")
    print()

# W_4 at k=2 should be sqrt(3)/2: every single qubit of W_4 has purity 5/8.
print("sqrt(3)/2 =", math.sqrt(3) / 2)

# how the minimum is found: the value on each of the 7 bipartitions
res = kme_concurrence_pure(make_w(n), dims, 2, keep_values=True)
for part in enumerate_k_partitions(n, 2):
    print(f"  {str(part):<14} {res.per_partition_values[part]:.6f}")

# two Bell pairs are 2-separable (split between the pairs) but not 3-separable
bell = np.array([1, 0, 0, 1]) / math.sqrt(2)
pairs = np.kron(bell, bell)
for k in (2, 3, 4):
    res = kme_concurrence_pure(pairs, dims, k)
    print(f"Bell x Bell  k={k}  C={res.value:.6f}  {res.argmin_partition}")

# product states score zero for every k, qudits included
psi = random_product((2, 3, 2), seed=1)
print("random product state:", [kme_concurrence_pure(psi, (2, 3, 2), k).value for k in (2, 3)])
