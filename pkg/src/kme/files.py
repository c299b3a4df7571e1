"""Plain-text state and probe files.

State file (``kme-state v1``)::

    kind: matrix
    dims: 2 2
    0 0 0.5 0
    0 3 0.5 0
    3 3 0.5 0

Vector entries are ``<flat-index> <re> <im>``; matrix entries are
``<row> <col> <re> <im>`` with ``row <= col`` (the lower triangle follows by
conjugate symmetry). Omitted entries are zero.

Probe file (``kme-probe v1``)::

    dims: 2 2
    x 1: 1 0 0 0
    xp 1: 0 0 1 0
    ...

Each vector line lists ``re im`` pairs. A probe-pair file has ``y i:`` lines
instead of (or consistent with) ``xp i:``; flips are implied.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .bounds import Probe, ProbePair
from .qnum import InputError, SystemShape

STATE_MAGIC = "# kme-state v1"
PROBE_MAGIC = "# kme-probe v1"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _content_lines(text: str):
    for no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if line and not line.startswith("#"):
            yield no, line


def _parse_dims(value: str) -> SystemShape:
    try:
        return SystemShape([int(t) for t in value.split()])
    except ValueError as exc:
        raise InputError(f"bad dims line: {value!r}") from exc


def dumps_state(state, dims) -> str:
    shape = SystemShape(dims)
    a = np.asarray(state, dtype=complex)
    out = [STATE_MAGIC]
    if a.ndim == 1:
        if a.shape[0] != shape.total:
            raise InputError("vector length does not match dims")
        out += ["kind: vector", "dims: " + " ".join(map(str, shape.dims))]
        for s in np.flatnonzero(a):
            out.append(f"{s} {_fmt(a[s].real)} {_fmt(a[s].imag)}")
    elif a.ndim == 2:
        if a.shape != (shape.total, shape.total):
            raise InputError("matrix shape does not match dims")
        out += ["kind: matrix", "dims: " + " ".join(map(str, shape.dims))]
        rows, cols = np.nonzero(np.triu(a))
        for r, c in zip(rows, cols):
            out.append(f"{r} {c} {_fmt(a[r, c].real)} {_fmt(a[r, c].imag)}")
    else:
        raise InputError("state must be a vector or a matrix")
    return "\n".join(out) + "\n"


def loads_state(text: str) -> tuple[str, tuple[int, ...], np.ndarray]:
    """Parse a state file. Returns ``(kind, dims, array)``."""
    kind = shape = arr = None
    seen = set()
    for no, line in _content_lines(text):
        if ":" in line:
            key, _, value = line.partition(":")
            key = key.strip()
            if key == "kind":
                kind = value.strip()
                if kind not in ("vector", "matrix"):
                    raise InputError(f"line {no}: kind must be vector or matrix")
            elif key == "dims":
                shape = _parse_dims(value)
            else:
                raise InputError(f"line {no}: unknown header {key!r}")
            continue
        if kind is None or shape is None:
            raise InputError(f"line {no}: entries before kind/dims headers")
        if arr is None:
            D = shape.total
            arr = np.zeros(D if kind == "vector" else (D, D), dtype=complex)
        parts = line.split()
        try:
            if kind == "vector":
                if len(parts) != 3:
                    raise ValueError
                idx = (int(parts[0]),)
                val = complex(float(parts[1]), float(parts[2]))
            else:
                if len(parts) != 4:
                    raise ValueError
                idx = (int(parts[0]), int(parts[1]))
                val = complex(float(parts[2]), float(parts[3]))
        except ValueError:
            raise InputError(f"line {no}: malformed entry {line!r}") from None
        if any(not 0 <= i < shape.total for i in idx):
            raise InputError(f"line {no}: index out of range")
        if kind == "matrix" and idx[0] > idx[1]:
            raise InputError(f"line {no}: only row <= col entries are allowed")
        if idx in seen:
            raise InputError(f"line {no}: duplicate entry {idx}")
        seen.add(idx)
        arr[idx] = val
        if kind == "matrix" and idx[0] != idx[1]:
            arr[idx[1], idx[0]] = val.conjugate()
    if kind is None or shape is None:
        raise InputError("missing kind or dims header")
    if arr is None:
        D = shape.total
        arr = np.zeros(D if kind == "vector" else (D, D), dtype=complex)
    return kind, shape.dims, arr


def write_state(path, state, dims):
    Path(path).write_text(dumps_state(state, dims), encoding="utf-8")


def read_state(path):
    return loads_state(Path(path).read_text(encoding="utf-8"))


def _vec_line(tag: str, i: int, v) -> str:
    nums = []
    for z in np.asarray(v, dtype=complex):
        nums += [_fmt(z.real), _fmt(z.imag)]
    return f"{tag} {i}: " + " ".join(nums)


def dumps_probe(probe) -> str:
    """Serialize a :class:`Probe` or a :class:`ProbePair`."""
    out = [PROBE_MAGIC]
    if isinstance(probe, ProbePair):
        px = probe.probe_x
        out.append("dims: " + " ".join(map(str, px.dims)))
        for i in range(px.n):
            out.append(_vec_line("x", i + 1, px.x_sites[i]))
            out.append(_vec_line("y", i + 1, px.xp_sites[i]))
    else:
        out.append("dims: " + " ".join(map(str, probe.dims)))
        for i in range(probe.n):
            out.append(_vec_line("x", i + 1, probe.x_sites[i]))
            out.append(_vec_line("xp", i + 1, probe.xp_sites[i]))
    return "\n".join(out) + "\n"


_VEC_RE = re.compile(r"^(x|xp|y)\s+(\d+)\s*:(.*)$")


def loads_probe(text: str):
    """Parse a probe file; returns a :class:`ProbePair` if ``y`` lines are present."""
    shape = None
    vecs: dict[str, dict[int, np.ndarray]] = {"x": {}, "xp": {}, "y": {}}
    for no, line in _content_lines(text):
        m = _VEC_RE.match(line)
        if m is None:
            key, _, value = line.partition(":")
            if key.strip() == "dims":
                shape = _parse_dims(value)
                continue
            raise InputError(f"line {no}: unrecognized probe line {line!r}")
        if shape is None:
            raise InputError(f"line {no}: vector before dims header")
        tag, site = m.group(1), int(m.group(2))
        if not 1 <= site <= shape.n:
            raise InputError(f"line {no}: site {site} out of range")
        try:
            nums = [float(t) for t in m.group(3).split()]
        except ValueError:
            raise InputError(f"line {no}: malformed numbers") from None
        d = shape.dims[site - 1]
        if len(nums) != 2 * d:
            raise InputError(f"line {no}: expected {2 * d} numbers for dimension {d}")
        if site in vecs[tag]:
            raise InputError(f"line {no}: duplicate {tag} {site}")
        vecs[tag][site] = np.array(nums[0::2]) + 1j * np.array(nums[1::2])
    if shape is None:
        raise InputError("missing dims header")

    def collect(tag):
        missing = [i for i in range(1, shape.n + 1) if i not in vecs[tag]]
        if missing:
            raise InputError(f"missing {tag} lines for sites {missing}")
        return [vecs[tag][i] for i in range(1, shape.n + 1)]

    x = collect("x")
    if vecs["y"]:
        y = collect("y")
        if vecs["xp"]:
            xp = collect("xp")
            if not all(np.allclose(a, b, atol=1e-9) for a, b in zip(xp, y)):
                raise InputError("probe pair: xp lines must equal y lines (flips are implied)")
        return ProbePair.from_sites(shape.dims, x, y)
    return Probe(shape.dims, x, collect("xp"))


def write_probe(path, probe):
    Path(path).write_text(dumps_probe(probe), encoding="utf-8")


def read_probe(path):
    return loads_probe(Path(path).read_text(encoding="utf-8"))
