"""Homotopy comoment maps for rotations, their gauge shift, and the pentagon."""
from linfkit.comoment import (
    comoment_from_potential, equivariance_report, euler_potential, gauge_shift_comoment,
    lie_kernel_comoment, pentagon_report, so_n_action, verify_comoment,
)
from linfkit.multisymplectic import MssSpace
from linfkit.polyforms import PolyField, volume_form

for n in (2, 3, 4):
    A = so_n_action(n)
    M = MssSpace(n, n - 1, volume_form(n))
    f = comoment_from_potential(euler_potential(n), A, M)
    B = volume_form(n).iota(PolyField.euler(n))
    ft, Mt = gauge_shift_comoment(f, B, A, M)
    print(f"so({n}): comoment {verify_comoment(f, A, M).passed}, "
          f"equivariant {equivariance_report(f, A).passed}, "
          f"gauge-shifted {verify_comoment(ft, A, Mt).passed}")
    if n == 2:
        print("  f_1(A12) =", f.value(1, {("A12",): 1}))
    pent = pentagon_report(M, B, f, A, min(n, 3))
    print(f"  pentagon up to arity {min(n, 3)}: {pent.passed}")

A = so_n_action(4)
M = MssSpace(4, 3, volume_form(4))
f = comoment_from_potential(euler_potential(4), A, M)
c, act, Mp, _ = lie_kernel_comoment(f, A, M, {("A12",): 1})
print("isotropy of A12:", act.algebra.labels, "induced comoment valid:", verify_comoment(c, act, Mp).passed)
