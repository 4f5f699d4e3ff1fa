"""Exact arithmetic building blocks: cyclotomic numbers, finitely
generated abelian groups, group algebras and their fractions.

Run:  python3 demos/01_building_blocks.py
"""

from fractions import Fraction

from tsw.abgroup import group_from_relations
from tsw.exactnum import Cyclotomic, cyclotomic_polynomial
from tsw.groupring import GroupAlg, QHFraction, reduced_inverse

print("== cyclotomic numbers ==")
z6 = Cyclotomic.root(6)
print("zeta_6           =", z6)
print("zeta_6^2         =", z6 * z6, " (a primitive cube root)")
print("zeta_6^3         =", z6 ** 3)
print("1+zeta_6+...+zeta_6^5 =", sum((z6 ** i for i in range(1, 6)), z6 ** 0))
print("minimal polynomial of zeta_12:", cyclotomic_polynomial(12))
print("conjugate of zeta_6 =", z6.conjugate(), " (equals zeta_6^-1:",
      z6.conjugate() == z6.inverse(), ")")

print()
print("== abelian groups from integer relation matrices ==")
# columns are relations; this is Z^2 / <(2,0),(0,0)> = Z/2 x Z
H = group_from_relations([(2, 0), (0, 0)], 2)
print("group: free rank", H.free_rank, ", invariant factors",
      list(H.invariant_factors))
t, u = H.generator(0), H.generator(1)
print("generators:", t, u)
print("t has order", H.order(t), ", u has order", H.order(u) or "infinity")
print("t * t =", H.mul(t, t), "(the identity:", H.mul(t, t) == H.identity,
      ")")

print()
print("== the group algebra Q[H] and its fractions ==")
one = GroupAlg.unit(H)
a = GroupAlg.unit(H, t) + GroupAlg.unit(H, u, c=Fraction(3, 2))
print("a        =", a)
print("a * a    =", a * a)
print("bar(a)   =", a.bar(), " (the inversion involution)")
print("aug(a)   =", a.augmentation())

# (t - 1) is a zero divisor since t has order 2; it still has a reduced
# inverse r with zd*r*zd = zd
zd = GroupAlg.unit(H, t) - one
r = reduced_inverse(zd)
print("(t-1) reduced inverse:", r)
print("   (t-1)*r*(t-1) == (t-1):", zd * r * zd == zd)

# fractions with denominators (h - 1) for infinite-order h
x = QHFraction(GroupAlg.unit(H, u, c=-1), (u, u))
print("x        =", x)
print("bar(x)   =", x.bar())
print("x == -u/(u-1)^2 cross-multiplied:",
      x * (GroupAlg.unit(H, u) - one) * (GroupAlg.unit(H, u) - one)
      == QHFraction.from_poly(GroupAlg.unit(H, u, c=-1)))
