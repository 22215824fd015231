"""
Checking bodies against section counts
======================================

On P^3 and its blow-ups at coordinate points all sections are spanned by
monomials, so the valuation vectors can be listed directly.  Their hulls
approach the body from inside.
"""
from fractions import Fraction

from okounkov import okounkov_body
from okounkov.models import blowup_p3_2pts
from okounkov.oracle import OracleModel, enumerate_valuations, oracle_hull, section_count

om = OracleModel("blowup-2pts")
X = blowup_p3_2pts(d=1, flip="resolved")

D = (3, -1, -1)
for m in (1, 2, 4):
    vs = enumerate_valuations(om, D, m)
    print(f"m={m}: h0 = {section_count(om, D, m)}, valuations = {len(vs.vectors)}")

body = okounkov_body(X, D).polytope
inside = all(body.contains(tuple(Fraction(x, 4) for x in v))
             for v in enumerate_valuations(om, D, 4).vectors)
print("level 4 inside the body:", inside)

hull = oracle_hull(om, D, m_max=8)
print("oracle hull == body:", hull.polytope == body)

# H2 = phi*H - E2 is not big: the hull is flat
print("H2 hull: dim", oracle_hull(om, (1, 0, -1), m_max=6).affine_dim)
