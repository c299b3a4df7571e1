"""k-ME concurrence of multipartite states and its computable lower bounds."""

from .bounds import (
    BoundReport,
    MeasurementBudget,
    Probe,
    ProbePair,
    best_bound,
    bound1,
    bound2,
    flipped_product,
    i_k_entries,
    i_k_swap,
    measurement_budget,
)
from .concurrence import ConcurrenceResult, is_k_separable_pure, kme_concurrence_pure, kme_fixed_partition
from .families import (
    closed_bound1_ghz_w,
    closed_competitor_bounds,
    closed_i_k_w_antiw,
    make_anti_w,
    make_ghz,
    make_ghz_w_mix,
    make_w,
    make_w_antiw_mix,
)
from .partitions import KPartition, enumerate_k_partitions, h_k, h_k_bruteforce, hbar_k, stirling2
from .qnum import (
    InputError,
    NumericIntegrityError,
    SystemShape,
    outer,
    partial_trace,
    product_matrix_element,
    purity,
    random_product,
    random_pure,
    validate,
)

__version__ = "0.1.0"
