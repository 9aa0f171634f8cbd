"""Real-rootedness and interlacing through Bezout matrices.

B(P_6, P_5) is a 2x2 matrix over Z[q]; its minors, written in u = q - 1,
have positive coefficients, which certifies total positivity for q >= 1.
The Sturm count then confirms real roots for a range of n and q, and the
q = 0 specialization of P_7 shows the hypothesis q >= 1 matters.
"""
from dowling_kl import dowling_pz, scale_t_by_qsquared, tq_eval_at_q
from dowling_kl.algebra import qpoly_shift_to_u
from dowling_kl.rootcheck import all_minors_positive_in_u, bezout_matrix, det, sturm_real_rooted

P6 = list(scale_t_by_qsquared(dowling_pz(6).P))
P5 = list(scale_t_by_qsquared(dowling_pz(5).P))
B = bezout_matrix(P6, P5)
print("B(P6, P5) =")
for row in B.entries:
    print("   ", [str(x) for x in row])
d = det(B.entries)
print("det     =", d)
print("in u    =", str(qpoly_shift_to_u(d)).replace("q", "u"))
print("all minors positive in u:", all_minors_positive_in_u(B).certified)

print()
for name, key in (("P", "P"), ("Z", "Z")):
    ok = all(sturm_real_rooted(tq_eval_at_q(getattr(dowling_pz(n), key), q)).real_rooted
             for n in range(1, 16) for q in range(1, 6))
    print(f"{name}_n real-rooted for n <= 15, q = 1..5: {ok}")

P7_at_0 = [1, 35, 385, 735]
print("q = 0, scaled P_7 =", P7_at_0, "real-rooted:", sturm_real_rooted(P7_at_0).real_rooted)
