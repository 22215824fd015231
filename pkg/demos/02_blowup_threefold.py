"""
Bodies on P^3 blown up at two points
====================================

Basis (phi*H, E1, E2), flag surface E1 with a line inside it.  The first
coordinate of the body runs over the t with D - t*E1 pseudo-effective, and
each slice is a triangle on E1 = P^2.
"""
from okounkov import (
    body_translation_vector, chamber_of, okounkov_body, t_partition, zariski_mds,
)
from okounkov.errors import AdmissibilityError
from okounkov.geometry import fmt_vec
from okounkov.models import blowup_p3_2pts

X = blowup_p3_2pts(d=1)

# phi*H sits on the wall between the first two chambers
print(chamber_of(X, (1, 0, 0)))
print("tetrahedron:", " ".join(f"({fmt_vec(v)})" for v in okounkov_body(X, (1, 0, 0)).vertices))

# phi*H + E2 + E1: the fixed parts translate the body but do not reshape it
D = (1, 1, 1)
P, N, support = zariski_mds(X, D)
print("P =", fmt_vec(P), " N =", fmt_vec(N), " support", support)
print("t-intervals:", [(name, fmt_vec(iv)) for name, iv in t_partition(X, D)])
print("shift:", fmt_vec(body_translation_vector(X, D)))

# 3*phi*H - E1 - E2 is ample, but its path D - t*E1 enters the flipped chamber,
# where the slicing formula is not available for this flag
try:
    okounkov_body(X, (3, -1, -1))
except AdmissibilityError as exc:
    print("refused:", exc)

# the same divisor on the model whose flipped chamber carries its own flag data
Xr = blowup_p3_2pts(d=1, flip="resolved")
body = okounkov_body(Xr, (3, -1, -1))
print(len(body.vertices), "vertices, 3! vol =", 6 * body.volume)
