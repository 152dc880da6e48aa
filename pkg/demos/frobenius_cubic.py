"""Frobenius closure on the hypersurface u x^p + v y^p + w z^p = 0, u a unit.

x is not in (y, z) but x^p is in (y, z)^[p]: the closure chain picks it up at
the first step, for p = 2 and p = 3.
"""

import time

from charp import Ideal, decomposition_check, f_membership, frobenius_closure, parse_ring_file

for p in (2, 3):
    rf = parse_ring_file(f"""
    ring {{ char = {p} ; vars = [u, v, w, x, y, z, t] ; order = grevlex ;
           relations = [u*x^{p} + v*y^{p} + w*z^{p}, u*t - 1] ; local = [x, y, z] }}
    """)
    R = rf.ring
    I = Ideal(R, ["y", "z"])
    t0 = time.perf_counter()
    print(f"p = {p}")
    print("  x in (y, z):", I.contains(R("x")))
    v = f_membership("x", I, e_max=1)
    print("  x^p in (y, z)^[p]:", v.status, "at e =", v.certificate.get("e"))
    chain = frobenius_closure(I, e_max=3)
    for e, F in chain.stages:
        print(f"  F_{e} =", [str(g) for g in F.canonical_generators()])
    print("  chain:", chain.flag)
    d = decomposition_check(I, e_max=3, chain=chain)
    print("  decomposition:", d["status"], "q' =", d.get("q"))
    print(f"  ({time.perf_counter() - t0:.1f} s)")
