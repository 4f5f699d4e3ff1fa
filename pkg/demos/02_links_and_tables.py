"""Link diagrams, braid closures and Conway tables, with the
consistency checks that gate every surgery computation.

Run:  python3 demos/02_links_and_tables.py
"""

from tsw.diagram import (braid_closure_pd, builtin_link, builtin_links,
                         builtin_pd, diagram_table, parse_pd, skein_conway)
from tsw.errors import BadParity
from tsw.linkdata import (ConwayTable, canonical_charge,
                          conway_table_validate, split_coefficients,
                          torres_check, validate_charge)

print("== PD codes and braid closures ==")
pd = builtin_pd("trefoil")
print("trefoil PD:", pd)
d = parse_pd(pd)
print("crossings:", len(d.crossings), " components:", len(d.components()))
print("Conway polynomial by skein resolution:", skein_conway(d))

print()
print("library links and their one-variable Conway polynomials:")
for name in builtin_links():
    print(f"  {name:10s} {skein_conway(parse_pd(builtin_pd(name)))}")

print()
print("== from a diagram to a framed link with a Conway table ==")
# framings go on the diagonal of the linking matrix
L, table = builtin_link("whitehead", (3, -1))
print("linking matrix:", [list(r) for r in L.matrix])
print("table entries (multivariable, symmetrized):")
for s in sorted(table.entries, key=lambda s: (len(s), sorted(s))):
    print("  components", sorted(s), "->", table.entry(s))
rep = conway_table_validate(L, table)
print("validation: ok =", rep.ok,
      " ambiguous signs:", sorted(map(sorted, rep.ambiguous_sign)))

print()
print("== custom braid words ==")
chain = braid_closure_pd((1, 1, 2, 2), 3)
L3, t3 = diagram_table(parse_pd(chain), (0, 0, 0))
print("3-chain linking matrix:", [list(r) for r in L3.matrix])
print("full Conway entry:", t3.entry({0, 1, 2}))

print()
print("== Torres' condition catches corrupted tables ==")
L2, t2 = builtin_link("hopf")
bad_entries = dict(t2.entries)
bad_entries[frozenset({0, 1})] = -t2.entry({0, 1})
bad = ConwayTable(2, bad_entries)
for i in (0, 1):
    r = torres_check(L2, (0, 0), bad, i)
    print(f"drop component {i}: ok={r.ok}" + ("" if r.ok else f"  ({r.detail})"))
print("full validation failures:", list(conway_table_validate(L2, bad).failures))

print()
print("== charges ==")
print("canonical charge of the 3-chain:", canonical_charge(L3))
print("(2, 1, 2) is admissible:", validate_charge(L3, (2, 1, 2)))
try:
    validate_charge(L3, (1, 1, 0))
except BadParity as exc:
    print("(1, 1, 0) is rejected:", exc)

print()
print("== split coefficients ==")
Lb, tb = builtin_link("borromean")
print("borromean split coefficients:", split_coefficients(Lb, tb))
