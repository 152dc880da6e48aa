"""Stages of the special part of tight closure in F_3[x, y].

For m = (x, y) the stages stay at m^2 = m*m, and x^2*y lies in the special
part of (x^2, y^2) already at stage 0.
"""

from charp import Ideal, parse_ring_file, sp_lemma_audit, sptc_approx_ideal, sptc_member

rf = parse_ring_file("""
ring { char = 3 ; vars = [x, y] ; order = grevlex ; relations = [] }
ideal M = [x, y]
ideal Q2 = [x^2, y^2]
""")
M, Q2 = rf.ideal("M"), rf.ideal("Q2")

A = sptc_approx_ideal(M, e_max=3)
for e, S in A.stages:
    print(f"S_{e}(m) =", [str(g) for g in S.canonical_generators()])
print(A.flag)

print("x^2*y in special part of (x^2, y^2):", sptc_member("x^2*y", Q2).status)
print("audit:", {k: v for k, v in sp_lemma_audit(M, e_max=3, J=Q2).items() if k in "abcd"})
