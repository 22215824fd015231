"""
Okounkov polygons on a blown-up plane
=====================================

Zariski decompositions and the polygons they produce on the blow-up of
P^2 at a point, with basis (H, E).
"""
from fractions import Fraction

from okounkov import okounkov_polygon, zariski_decompose
from okounkov.geometry import fmt, fmt_vec
from okounkov.models import blowup_p2_surface
from okounkov.surface import SurfaceFlag

S = blowup_p2_surface()

# H + 2E is not nef: E.(H + 2E) = -2, so E splits off entirely
Z = zariski_decompose(S, (1, 2))
print("P =", fmt_vec(Z.positive), " N =", {k: fmt(v) for k, v in Z.negative_coeffs})

# flag: a line through the blown-up point (class H - E), general point on it
flag = SurfaceFlag.build((1, -1), 0, {"E": 0})
for D in [(3, -1), (2, 0), (Fraction(5, 2), Fraction(-1, 2))]:
    res = okounkov_polygon(S, flag, D)
    print(fmt_vec(D), "->", " ".join(f"({fmt_vec(v)})" for v in res.polygon.vertices),
          " area", fmt(res.polygon.area))

# the area of the polygon is half the self-intersection of P
D = (3, -1)
P = zariski_decompose(S, D).positive
print("2*area =", 2 * okounkov_polygon(S, flag, D).polygon.area, " P^2 =", S.dot(P, P))
