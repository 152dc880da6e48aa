"""The maximal ideal of the quadric cone xy = zw over F_5.

(x, y, z, w) needs four generators, yet (x + y, z, w) already has the same
integral closure, so the four variables are not strongly independent.
Bounded search finds no variable integral over the other three.
"""

from charp import get_closure, independence, minimize_reduction, parse_ring_file, strong_independence

RING = """
ring { char = 5 ; vars = [x, y, z, w] ; order = grevlex ; relations = [x*y - z*w] }
ideal M = [x, y, z, w]
"""

rf = parse_ring_file(RING)
M = rf.ideal("M")
cl = get_closure("intbounded", n_max=6)

v = strong_independence(M, cl)
print("strongly independent:", v.status)
print("  witness hyperplane:", v.certificate.get("witness"))

rep = independence(["x", "y", "z", "w"], cl, I=M)
print("each variable outside the closure of the other three:", rep["independent"])
for e, verdict in zip(rep["elements"], rep["verdicts"]):
    print(f"  {e}: {verdict['status']}")

# with the radical bound the smaller reduction is certified minimal
red = minimize_reduction(M, M, get_closure("intbounded", n_max=6, radical_bound=True), mode="descent")
print("minimal reduction:", [str(g) for g in red.K.generators], "minimal:", red.minimal)
