"""Higher derived brackets from truncating a DGLA in degrees -1, 0."""
from linfkit.graded import GradedSpace
from linfkit.linfty import LInftyStructure, check_linfty, getzler_truncate
from linfkit.nr import TableMap

V = GradedSpace([("u", -1), ("v", -1), ("x", 0), ("y", 0)])
d = TableMap(V, V, 1, 1, "skew")
d.set(("u",), V.element({"x": 1}))
d.set(("v",), V.element({"y": 1}))
br = TableMap(V, V, 2, 0, "skew")
br.set(("x", "y"), V.element({"y": 1}))
br.set(("x", "v"), V.element({"v": 1}))
br.set(("y", "u"), V.element({"v": -1}))
L = LInftyStructure(V, {1: d, 2: br})

print("DGLA:", check_linfty(L, 3).passed)
G = getzler_truncate(L, 4)
u, v = G.space.basis_element("u"), G.space.basis_element("v")
print("{u, v} =", G.brackets[2](u, v), " (b_1 = 1/2 times [du, v] - [dv, u] = 2v)")
print("truncation is L-infinity up to arity 4:", check_linfty(G, 4).passed)
