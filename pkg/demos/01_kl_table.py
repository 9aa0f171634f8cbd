"""Kazhdan-Lusztig and Z-polynomials of Dowling geometries, symbolic in q.

Runs the recursion over Z[q], prints the scaled table P(t/q^2) for small n,
then checks a concrete lattice (the cyclic group of order 2) against the
symbolic answer evaluated at q = 2.
"""
from dowling_kl import dowling_pz, lattice_pz, make_cyclic, scale_t_by_qsquared, tq_eval_at_q
from dowling_kl.cli import latex_factored

print("P(t/q^2) for n = 1..10")
for n in range(1, 11):
    P = scale_t_by_qsquared(dowling_pz(n).P)
    print(f"  n={n:2d}  {latex_factored(P, 'plain')}")

print()
print("Z for n = 4, coefficients of t^0..t^4 as polynomials in q (ascending)")
for i, c in enumerate(dowling_pz(4).Z):
    print(f"  t^{i}: {c.coeffs}")

print()
G = make_cyclic(2)
res = lattice_pz(4, G)
sym = dowling_pz(4)
print(f"explicit lattice over {G.name}: P = {[c.constant() for c in res.P]}, "
      f"symbolic at q=2: {tq_eval_at_q(sym.P, 2)}")
