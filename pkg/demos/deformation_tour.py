"""Cohomology of the 3-dimensional superalgebra and what it says about its deformations.

    python demos/deformation_tour.py
"""
from lscolor import catalog
from lscolor.cochain import coboundary, cohomology
from lscolor.deform import extend_deformation, infinitesimal_equivalence, verify_deformation

A = catalog.example37()
zero = A.group.zero()

print("degree-0 cohomology of example37 with coefficients in itself")
print(f"{'n':>3} {'C':>4} {'Z':>4} {'B':>4} {'H':>4}")
for n in (1, 2, 3):
    d = cohomology(A, None, n, zero).dims
    print(f"{n:>3} {d['C']:>4} {d['Z']:>4} {d['B']:>4} {d['H']:>4}")

# the (r, s, t) family: each member is a cocycle and none is a coboundary
f = catalog.example37_cocycle(A, r=1, s=2, t=-1)
print("\nf(r=1, s=2, t=-1):", f)
print("d2 f == 0:", coboundary(f).is_zero())
print("cohomologous to 0:", infinitesimal_equivalence(f - f, f) is not None)

# H^3_0 = 0, so every infinitesimal deformation extends order by order
D = catalog.load("b_lambda").attachments["deformation"]
for _ in range(2):
    D = extend_deformation(D)
    print(f"\nextended b_lambda to order {D.order}; verifies: {bool(verify_deformation(D))}")
    print(f"f_{D.order} =", D.term(D.order))
