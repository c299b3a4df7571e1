"""Where does Bound 1 detect the W / anti-W mixture?

rho = a |W><W| + b |anti-W><anti-W| + (1-a-b) I / 2^n.  The script runs the
same grid sweep the ``kme sweep`` command uses, prints a coarse text map of
the detected region, and compares it with the earlier bound whose
coefficient is 1/(sqrt2 (n-1)).  Both are positive multiples of the same
I_2, so they flag the same points; the difference is how large the
certified value is.  Along b = 0 the detection threshold for n = 5 is
a = 35/67.
"""

import csv
import tempfile
from pathlib import Path

from kme.sweep import SweepSpec, detection_boundary_b0, run_sweep

n, g = 5, 21
spec = SweepSpec(family="w-antiw", n=n, k=2, grid=g)

with tempfile.TemporaryDirectory() as tmp:
    path = run_sweep(spec, Path(tmp) / "w_antiw.csv")
    with open(path, newline="") as fh:
        rows = {(float(r["p1"]), float(r["p2"])): r for r in csv.DictReader(fh)}

axis = sorted({a for a, _ in rows})
print("rows: b from 1 down to 0, columns: a from 0 to 1")
print("  # detected   . not detected   (blank: a + b > 1)")
for b in reversed(axis):
    line = ""
    for a in axis:
        r = rows[a, b]
        line += " " if not r["bound1"] else "#" if r["detected"] == "1" else "."
    print(f"{b:4.2f} {line}")

print("\n   a     b    bound1   earlier   ratio")
for a, b in [(0.6, 0.0), (0.8, 0.1), (0.9, 0.05)]:
    r = rows[a, b]
    ours, theirs = float(r["bound1"]), float(r["competitor"])
    print(f"{a:5.2f} {b:5.2f}  {ours:8.5f}  {theirs:8.5f}  {ours / theirs:6.4f}")

for grid in (201, 2001):
    lo, hi = detection_boundary_b0(SweepSpec(family="w-antiw", n=n, k=2, grid=grid))
    print(f"G={grid}: first detection along b=0 in ({lo:.4f}, {hi:.4f}];  35/67 = {35 / 67:.6f}")
