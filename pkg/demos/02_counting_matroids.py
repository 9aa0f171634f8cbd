"""The coefficients of P and Z count G-labeled quasi series-parallel matroids.

Enumerates the matroids directly, weights each by q^(n - c(M)), and compares
with the coefficients of P (simple matroids) and Z (all matroids).  Then the
same numbers are read off the exponential generating functions at q = 2.
"""
from dowling_kl import dowling_pz, weighted_counts
from dowling_kl.algebra import qpoly_eval
from dowling_kl.genfun import labeled_counts, series_AG, series_SG
from dowling_kl.klengine import leading_simple_count
from dowling_kl.qsp import diamond_matroid, g_labelings
from dowling_kl.group import make_cyclic

n = 5
counts = weighted_counts(n)
res = dowling_pz(n)
print(f"n = {n}")
for i in range(n + 1):
    print(f"  t^{i}: P coeff {res.P[i].coeffs!s:18} simple rank {n - i}: {counts.simple_at(n - i).coeffs!s:18}"
          f" Z coeff {res.Z[i].coeffs!s:18} all rank {n - i}: {counts.all_at(n - i).coeffs}")

print()
q = 2
SG, AG = labeled_counts(series_SG(8, q)), labeled_counts(series_AG(8, q))
print(f"at q = {q}, n! [x^n y^k] of the labeled series against P and Z of Q_n")
for n in range(1, 9):
    res = dowling_pz(n)
    p = [SG.get((n, n - i), 0) for i in range(n + 1)]
    z = [AG.get((n, n - i), 0) for i in range(n + 1)]
    same = p[: res.P.degree + 1] == [qpoly_eval(c, q) for c in res.P] and z == [qpoly_eval(c, q) for c in res.Z]
    print(f"  n={n}  S_G gives {p[: res.P.degree + 1]}  agree={same}")

print()
print("labelings of the diamond graph matroid over the group of order 2:",
      len(g_labelings(diamond_matroid(), make_cyclic(2))))
print("simple connected rank-m counts on 2m-1 elements:", [leading_simple_count(m) for m in range(2, 7)])
