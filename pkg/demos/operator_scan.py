"""Nijenhuis and Rota-Baxter operators on the 2-dimensional algebra x^2 = y.

Scans diagonal operators over a small grid and prints which ones pass.

    python demos/operator_scan.py
"""
from fractions import Fraction

from lscolor.algebra import GradedLinOp
from lscolor.catalog import a_alpha
from lscolor.operators import correspondence_checks, nijenhuis_residual, rota_baxter_residual

A = a_alpha(1)
grid = [Fraction(v) for v in (-2, -1, 0, 1, 2)]

print("Nijenhuis diag(r, w): '#' where the residual vanishes")
print("      " + " ".join(f"{str(w):>3}" for w in grid))
for r in grid:
    row = ["  #" if nijenhuis_residual(GradedLinOp.diagonal(A, [r, w])).is_zero else "  ." for w in grid]
    print(f"r={str(r):>3} " + " ".join(row))

for weight in (0, 1, -1):
    hits = []
    for r in grid:
        # add the predicted w = r^2 / (2r + weight) to the grid
        ws = list(grid)
        if 2 * r + weight:
            ws.append(r * r / (2 * r + weight))
        for w in dict.fromkeys(ws):
            if rota_baxter_residual(GradedLinOp.diagonal(A, [r, w]), weight).is_zero:
                hits.append(f"({r}, {w})")
    print(f"\nRota-Baxter weight {weight}: " + ", ".join(hits))

P = GradedLinOp.diagonal(A, [1, 0])
print("\ncorrespondence for diag(1, 0):")
for c in correspondence_checks(P).checks:
    print(f"  {c.hypothesis}: {c.left}={c.left_holds}  {c.right}={c.right_holds}")
