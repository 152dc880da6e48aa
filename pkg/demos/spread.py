"""Minimal reductions of (x, y)^2 in F_3[x, y] for the Newton closure.

All 9 minimal reductions are two-generated, so the spread is well defined
and equals 2.  A principal ideal has spread 1.
"""

from charp import Ideal, enumerate_minimal_reductions, get_closure, parse_ring_file, spread_consistency_audit

rf = parse_ring_file("""
ring { char = 3 ; vars = [x, y] ; order = grevlex ; relations = [] }
ideal M2 = [x^2, x*y, y^2]
""")
R = rf.ring
cl = get_closure("newton")

for I in (rf.ideal("M2"), Ideal(R, ["x^2 + x*y"])):
    rep = enumerate_minimal_reductions(I, cl)
    print("I =", [str(g) for g in I.generators])
    print("  dim I/mI:", rep.dim, " mu values:", rep.mu_set, " well defined:", rep.well_defined)
    for row in rep.entries:
        print("   ", row)
    print("  audit:", spread_consistency_audit(I, cl, rep)["status"])
