"""Parameter sweeps over the two benchmark families, written as CSV."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import families
from .bounds import DETECTION_TOL, ProbePair, i_k_from_elements, probe_elements
from .partitions import h_k, hbar_k
from .qnum import InputError

FAMILIES = ("w-antiw", "ghz-w")
PROBE_SETS = ("canonical", "hadamard", "both")
HEADER = ["p1", "p2", "i_phi0", "i_phi1", "bound1", "bound2", "competitor", "detected"]


@dataclass(frozen=True)
class SweepSpec:
    family: str
    n: int
    k: int
    probes: str = "canonical"
    grid: int = 101
    out: str | None = None
    check_psd: bool = False
    tol: float = DETECTION_TOL

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.probes not in PROBE_SETS:
            raise InputError(f"unknown probe set {self.probes!r}; choose from {PROBE_SETS}")
        if self.grid < 2:
            raise InputError("grid resolution must be >= 2")
        if self.n < 3:
            raise InputError("families need n >= 3")
        if not 2 <= self.k <= self.n:
            raise InputError(f"need 2 <= k <= n, got k={self.k}")


def _components(family: str, n: int):
    D = 2**n
    if family == "w-antiw":
        vecs = [families.make_w(n), families.make_anti_w(n)]
    else:
        vecs = [families.make_ghz(n), families.make_w(n)]
    return [np.eye(D, dtype=complex) / D] + [np.outer(v, v.conj()) for v in vecs]


def _pairs(spec: SweepSpec) -> list[ProbePair]:
    dims = (2,) * spec.n
    out = []
    if spec.probes in ("canonical", "both"):
        out.append(ProbePair.computational(dims))
    if spec.probes in ("hadamard", "both"):
        out.append(ProbePair.hadamard(spec.n))
    return out


def _competitor(spec: SweepSpec, p1, p2):
    """Vectorized earlier-bound column, or ``None`` where no formula applies."""
    if spec.k != 2:
        return None
    if spec.family == "w-antiw":
        which = "w-antiw"
    elif spec.probes in ("canonical", "both"):
        which = "ghz-w-computational"
    elif spec.n == 5:
        which = "ghz-w-hadamard"
    else:
        return None
    return np.broadcast_to(families.closed_competitor_bounds(spec.n, 2, (p1, p2), which), p1.shape)


def _mixture_min_eigenvalue(n: int, p1, p2):
    # components are an identity plus two orthogonal projectors
    return (1 - p1 - p2) / 2**n + np.minimum(0.0, np.minimum(p1, p2))


class _Evaluator:
    """Per-probe matrix elements of the family components, reused across the grid."""

    def __init__(self, spec: SweepSpec):
        self.spec = spec
        comps = _components(spec.family, spec.n)
        self.pairs = _pairs(spec)
        self.tables = []
        for pair in self.pairs:
            per_probe = []
            for probe in (pair.probe_x, pair.probe_y):
                els = [probe_elements(m, probe) for m in comps]
                per_probe.append(
                    (
                        np.array([e.center for e in els]),
                        np.stack([e.single for e in els]),
                        np.stack([e.double for e in els]),
                    )
                )
            self.tables.append(per_probe)
        self.h = h_k(spec.n, spec.k)
        self.hbar = hbar_k(spec.n, spec.k)

    def evaluate(self, p1, p2) -> dict[str, np.ndarray]:
        """All sweep columns at the parameter points ``(p1, p2)`` (1-D arrays)."""
        coeffs = np.stack([1 - p1 - p2, p1, p2], axis=-1)  # (P, 3)
        i_vals = []
        for per_probe in self.tables:
            pair_vals = []
            for center, single, double in per_probe:
                c = coeffs @ center
                s = np.einsum("pm,mij->pij", coeffs, single)
                d = np.einsum("pm,mij->pij", coeffs, double)
                pair_vals.append(i_k_from_elements(c, s, d, self.spec.k))
            i_vals.append(pair_vals)
        b1 = np.max([self.h * v for pv in i_vals for v in pv], axis=0)
        b2 = np.max([self.hbar * (pv[0] + pv[1]) for pv in i_vals], axis=0)
        out = {
            "i_phi0": i_vals[0][0],
            "i_phi1": i_vals[0][1],
            "bound1": b1,
            "bound2": b2,
            "detected": np.maximum(b1, b2) > self.spec.tol,
        }
        comp = _competitor(self.spec, p1, p2)
        if comp is not None:
            out["competitor"] = comp
        if self.spec.check_psd:
            out["psd_ok"] = _mixture_min_eigenvalue(self.spec.n, p1, p2) >= -1e-10
        return out


def grid_axis(g: int) -> np.ndarray:
    return np.linspace(0.0, 1.0, g)


def sweep_rows(spec: SweepSpec):
    """Yield ``(p1, p2, columns)`` row blocks in row-major order.

    Each block covers one value of ``p1``; ``columns`` holds the evaluated
    columns for the points of that row inside the simplex ``p1 + p2 <= 1``
    and ``inside`` marks which grid points those are.
    """
    ev = _Evaluator(spec)
    axis = grid_axis(spec.grid)
    for a in axis:
        inside = a + axis <= 1.0 + 1e-12
        p1 = np.full(int(inside.sum()), a)
        cols = ev.evaluate(p1, axis[inside]) if inside.any() else {}
        yield a, axis, inside, cols


def _f(x) -> str:
    return format(float(x), ".15g")


def run_sweep(spec: SweepSpec, out=None) -> Path:
    """Write the sweep CSV and return its path.

    Every grid point of ``[0,1] x [0,1]`` gets a row; points outside the
    simplex ``p1 + p2 <= 1`` have empty value columns.
    """
    path = Path(out if out is not None else spec.out)
    header = HEADER + (["psd_ok"] if spec.check_psd else [])
    empty_tail = "," * (len(header) - 2)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for a, axis, inside, cols in sweep_rows(spec):
            sa = _f(a)
            m = int(inside.sum())
            fields = [
                [f"{x:.15g}" for x in cols[c].tolist()] if m else []
                for c in ("i_phi0", "i_phi1", "bound1", "bound2")
            ]
            comp = [f"{x:.15g}" for x in cols["competitor"].tolist()] if "competitor" in cols else [""] * m
            flags = ["1" if d else "0" for d in cols["detected"].tolist()] if m else []
            if spec.check_psd:
                flags = [f + (",1" if ok else ",0") for f, ok in zip(flags, cols["psd_ok"].tolist())]
            body = [",".join(r) for r in zip(*fields, comp, flags)]
            lines = [f"{sa},{b:.15g},{r}" for b, r in zip(axis[inside].tolist(), body)]
            lines += [f"{sa},{b:.15g}{empty_tail}" for b in axis[~inside].tolist()]
            fh.write("\n".join(lines) + "\n")
    return path


def detection_boundary_b0(spec: SweepSpec) -> tuple[float, float]:
    """Bracket ``(a_lo, a_hi)`` of the first detected point along ``p2 = 0``."""
    ev = _Evaluator(spec)
    axis = grid_axis(spec.grid)
    det = ev.evaluate(axis, np.zeros_like(axis))["detected"]
    idx = np.flatnonzero(det)
    if idx.size == 0 or idx[0] == 0:
        raise InputError("no detection boundary along p2 = 0 on this grid")
    return float(axis[idx[0] - 1]), float(axis[idx[0]])
