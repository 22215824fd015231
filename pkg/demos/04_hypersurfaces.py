"""
Hypersurfaces in products of projective spaces
==============================================

Two families with Picard rank two: bidegree (a, b) in P^2 x P^2, and
bidegree (d, e) in P^1 x P^3.
"""
from okounkov.geometry import fmt_vec
from okounkov.threefold import divisor_volume, mu_threefold, okounkov_body, ord_S
from okounkov.models import hypersurface_p1xp3, hypersurface_p2xp2

# every effective class is nef, so the body volume is the top self-intersection
Y = hypersurface_p2xp2(1, 2)
for D in [(1, 1), (2, 1), (1, 3)]:
    body = okounkov_body(Y, D)
    print(D, "3! vol =", 6 * body.volume, " D^3 =", divisor_volume(Y, D))

# d = 1: a blow-up of P^3 along a curve, flag surface the exceptional divisor E
Z = hypersurface_p1xp3(d=1, e=2)
D = (-2, 7)  # 2E + 3H2
print("ord_E =", ord_S(Z, D), " mu =", mu_threefold(Z, D))
print("vertices:", " ".join(f"({fmt_vec(v)})" for v in okounkov_body(Z, D).vertices))

# d = 2: the flipped chamber is usable only when the flag surface avoids
# the indeterminacy locus
W = hypersurface_p1xp3(d=2, e=2, disjoint=1)
print("flip-side body volume:", okounkov_body(W, (-1, 3)).volume)
