"""Framed links, charges and Conway tables.

A framed oriented link is presented by its symmetric linking matrix
with framing numbers on the diagonal.  All polynomial data about the
link enters through a ConwayTable: one entry per nonempty subset of
components, holding the symmetrized Conway polynomial of the sublink
(or the normalized Alexander polynomial for single components).  The
table is input data; validators (bar symmetry, knot normalization,
Torres identities) make inconsistent tables detectable.
"""

from __future__ import annotations

from typing import NamedTuple

from .abgroup import FgAbelianGroup, group_from_relations
from .errors import (
    BadParity,
    IncompleteTable,
    NotDivisible,
    NotSplit,
    NotSymmetric,
    ParityMismatch,
)
from .groupring import (
    GroupAlg,
    LaurentPoly,
    QHFraction,
    push_to_group_algebra,
)


class FramedLink:
    """m components; linking matrix with framings on the diagonal."""

    __slots__ = ("m", "matrix", "names")

    def __init__(self, matrix, names=None):
        matrix = tuple(tuple(int(v) for v in row) for row in matrix)
        m = len(matrix)
        if m < 1:
            raise ValueError("a link needs at least one component")
        for row in matrix:
            if len(row) != m:
                raise NotSymmetric("linking matrix is not square")
        for i in range(m):
            for j in range(i):
                if matrix[i][j] != matrix[j][i]:
                    raise NotSymmetric(
                        f"linking matrix asymmetric at ({i}, {j})")
        if names is None:
            names = tuple(f"t{i + 1}" for i in range(m))
        names = tuple(names)
        if len(names) != m or len(set(names)) != m:
            raise ValueError("component names must be distinct, one each")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "names", names)

    def __setattr__(self, *a):
        raise AttributeError("FramedLink is immutable")

    def lk(self, i, j):
        if i == j:
            raise ValueError("lk needs two distinct components")
        return self.matrix[i][j]

    def framing(self, i):
        return self.matrix[i][i]

    def lk_with_complement(self, i, subset):
        """lk(L_i, union of components outside subset)."""
        inside = set(subset)
        return sum(self.matrix[i][j] for j in range(self.m)
                   if j != i and j not in inside)

    def sublink(self, keep) -> "FramedLink":
        keep = sorted(keep)
        if not keep:
            raise ValueError("sublink needs at least one component")
        matrix = [[self.matrix[i][j] for j in keep] for i in keep]
        return FramedLink(matrix, tuple(self.names[i] for i in keep))

    def is_algebraically_split(self):
        return all(self.matrix[i][j] == 0
                   for i in range(self.m) for j in range(i))

    def __repr__(self):
        return f"FramedLink({self.matrix!r})"


# -------------------------------------------------------------------------
# Charges
# -------------------------------------------------------------------------

def validate_charge(L: FramedLink, k) -> tuple:
    k = tuple(int(v) for v in k)
    if len(k) != L.m:
        raise BadParity(f"charge length {len(k)} != {L.m} components")
    for i in range(L.m):
        want = (1 + sum(L.matrix[i][j] for j in range(L.m) if j != i)) % 2
        if k[i] % 2 != want:
            raise BadParity(f"charge parity wrong at component {i}")
    return k


def canonical_charge(L: FramedLink) -> tuple:
    """The charge with every entry in {0, 1}."""
    return tuple(
        (1 + sum(L.matrix[i][j] for j in range(L.m) if j != i)) % 2
        for i in range(L.m))


def restrict_charge(L: FramedLink, k, keep) -> tuple:
    """Induced charge on the sublink of the kept components."""
    keep = sorted(keep)
    inside = set(keep)
    return tuple(
        k[i] - sum(L.matrix[i][j] for j in range(L.m)
                   if j != i and j not in inside)
        for i in keep)


# -------------------------------------------------------------------------
# Conway tables
# -------------------------------------------------------------------------

class ConwayTable:
    """Subset-indexed Conway data for a framed link.

    Keys are frozensets of component positions.  Entries with >= 2
    elements hold the symmetrized Conway polynomial of the sublink over
    the link's variable names; singletons hold the normalized Alexander
    polynomial of the knot.  ``ambiguous_sign`` lists subsets whose
    global sign could not be pinned by Torres descent.
    """

    __slots__ = ("m", "entries", "ambiguous_sign")

    def __init__(self, m, entries, ambiguous_sign=()):
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "entries",
                           {frozenset(s): p for s, p in entries.items()})
        object.__setattr__(self, "ambiguous_sign",
                           frozenset(frozenset(s) for s in ambiguous_sign))

    def __setattr__(self, *a):
        raise AttributeError("ConwayTable is immutable")

    def entry(self, subset) -> LaurentPoly:
        key = frozenset(subset)
        if not key:
            raise ValueError("no entry for the empty sublink")
        try:
            return self.entries[key]
        except KeyError:
            raise IncompleteTable(
                f"missing Conway entry for components {sorted(key)}") from None

    nabla = entry

    def delta(self, i) -> LaurentPoly:
        return self.entry({i})

    def is_complete(self):
        need = 2 ** self.m - 1
        return len([s for s in self.entries if s]) >= need

    def restrict(self, keep) -> "ConwayTable":
        keep = sorted(keep)
        pos = {c: p for p, c in enumerate(keep)}
        entries = {}
        amb = []
        for s, p in self.entries.items():
            if s <= set(keep):
                new_key = frozenset(pos[c] for c in s)
                entries[new_key] = p
                if s in self.ambiguous_sign:
                    amb.append(new_key)
        return ConwayTable(len(keep), entries, amb)


# -------------------------------------------------------------------------
# The normalizations nabla(L, k) and nabla(L, L^I, k)
# -------------------------------------------------------------------------

def nabla_normalized(L: FramedLink, k, table: ConwayTable):
    """-t^(k/2) * nabla_L(t^(1/2)), integral for m >= 2.

    For knots returns the fraction -t^((k+1)/2) Delta(t) / (t - 1) as a
    QHFraction over Z (the knot's meridian generates a free group).
    """
    k = validate_charge(L, k)
    if L.m == 1:
        H = group_from_relations((), 1)
        t = H.generator(0)
        delta = table.delta(0)
        num = push_to_group_algebra(delta, H, {L.names[0]: t})
        num = num.mul_element(H.pow(t, (k[0] + 1) // 2), -1)
        return QHFraction(num, (t,))
    poly = table.entry(range(L.m))
    if tuple(poly.vars) != L.names:
        raise ValueError("table entry variables disagree with the link")
    out = poly.substitute_sqrt().mul_half_monomial(k, -1)
    if not out.is_integral():
        raise ParityMismatch(
            "charge parity does not match the Conway polynomial support")
    return out


def relation_group(L: FramedLink, I) -> FgAbelianGroup:
    """H(L, L^I): meridians of L modulo longitude relations for i in I."""
    cols = []
    for i in sorted(I):
        col = [0] * L.m
        for j in range(L.m):
            if j != i:
                col[j] = L.matrix[i][j]
                col[i] -= L.matrix[i][j]
        cols.append(tuple(col))
    return group_from_relations(tuple(cols), L.m)


class RelativeNabla(NamedTuple):
    group: FgAbelianGroup
    fraction: QHFraction


def nabla_relative(L: FramedLink, I, k, table: ConwayTable) -> RelativeNabla:
    """nabla(L, L^I, k) as a controlled fraction over H(L, L^I).

    The fraction is normalized: for rank >= 2 the denominator clears
    completely (NotDivisible signals a corrupt table), for rank 1 at
    most one symbolic factor survives.
    """
    I = sorted(set(I))
    H = relation_group(L, I)
    gens = [H.generator(i) for i in range(L.m)]
    if L.m == 1:
        k = validate_charge(L, k)
        t = gens[0]
        num = push_to_group_algebra(table.delta(0), H, {L.names[0]: t})
        num = num.mul_element(H.pow(t, (k[0] + 1) // 2), -1)
        return RelativeNabla(H, QHFraction(num, (t,) * (1 + len(I))))
    poly = nabla_normalized(L, k, table)
    num = push_to_group_algebra(
        poly, H, {name: g for name, g in zip(L.names, gens)})
    frac = QHFraction(num, tuple(gens[i] for i in I)).normalize()
    if H.free_rank >= 2 and frac.dens:
        raise NotDivisible(
            "relative Conway fraction kept a denominator at rank >= 2")
    if H.free_rank == 1 and len(frac.dens) > 1:
        raise NotDivisible(
            "relative Conway fraction kept two denominators at rank 1")
    return RelativeNabla(H, frac)


# -------------------------------------------------------------------------
# Linking submatrices
# -------------------------------------------------------------------------

def linking_submatrix(L: FramedLink, I):
    """The matrix ell^I and its determinant; det of the empty matrix is 1."""
    from .abgroup import determinant
    I = sorted(set(I))
    mat = []
    for i in I:
        row = []
        for j in I:
            if i == j:
                row.append(L.framing(i) + L.lk_with_complement(i, I))
            else:
                row.append(L.matrix[i][j])
        mat.append(row)
    return mat, determinant(mat)


# -------------------------------------------------------------------------
# Algebraically split coefficients
# -------------------------------------------------------------------------

def split_coefficients(L: FramedLink, table: ConwayTable) -> dict:
    """The z_l of nabla_L / prod (t_i^2 - 1); keys are integer vectors."""
    if L.m < 2:
        raise NotSplit("split coefficients need at least two components")
    if not L.is_algebraically_split():
        raise NotSplit("link is not algebraically split")
    poly = table.entry(range(L.m))
    for name in L.names:
        poly = poly.div_binomial(name, power=2, const=1)
    out = {}
    for exps, c in poly.integer_pairs():
        if c.denominator != 1:
            raise NotDivisible("split coefficients are not integers")
        out[exps] = int(c)
    return out


# -------------------------------------------------------------------------
# Torres identities and whole-table validation
# -------------------------------------------------------------------------

class TorresReport(NamedTuple):
    ok: bool
    component: int
    detail: str


def torres_check(L: FramedLink, k, table: ConwayTable, i: int) -> TorresReport:
    """Setting t_i = 1 in nabla(L,k) against the sublink without L_i.

    Both sides live over the remaining variables; for two-component
    links the knot side is compared after cross-multiplying by (t - 1).
    """
    if L.m < 2:
        raise ValueError("Torres check needs at least two components")
    k = validate_charge(L, k)
    keep = [j for j in range(L.m) if j != i]
    sub = L.sublink(keep)
    sub_k = restrict_charge(L, k, keep)
    lhs = nabla_normalized(L, k, table).set_var_one(L.names[i])
    factor = LaurentPoly.from_pairs(
        sub.names,
        [(tuple(L.matrix[i][j] for j in keep), 1),
         ((0,) * len(keep), -1)])
    sub_table = table.restrict(keep)
    if L.m == 2:
        j = keep[0]
        kk = sub_k[0]
        delta = sub_table.delta(0)
        rhs_num = delta.mul_half_monomial((2 * ((kk + 1) // 2),), -1)
        den = LaurentPoly.from_pairs(sub.names, [((1,), 1), ((0,), -1)])
        ok = lhs * den == factor * rhs_num
    else:
        rhs = nabla_normalized(sub, sub_k, sub_table)
        ok = lhs == factor * rhs
    return TorresReport(ok, i, "" if ok else
                        f"Torres identity fails at component {i}")


class TableReport(NamedTuple):
    ok: bool
    failures: tuple
    ambiguous_sign: tuple


def conway_table_validate(L: FramedLink, table: ConwayTable) -> TableReport:
    """Completeness, bar symmetry, knot normalization and all Torres checks."""
    failures = []
    subsets = []
    for mask in range(1, 2 ** L.m):
        subsets.append([i for i in range(L.m) if mask >> i & 1])
    for subset in subsets:
        key = frozenset(subset)
        if key not in table.entries:
            failures.append(f"missing entry {sorted(key)}")
            continue
        p = table.entries[key]
        if len(subset) == 1:
            i = subset[0]
            if p.vars != (L.names[i],):
                failures.append(f"knot entry {i}: wrong variable")
                continue
            if not p.is_integral():
                failures.append(f"knot entry {i}: non-integral exponents")
            if sum(p.terms.values(), 0) != 1:
                failures.append(f"knot entry {i}: Delta(1) != 1")
            if p.bar() != p:
                failures.append(f"knot entry {i}: Delta not symmetric")
        else:
            want_vars = tuple(L.names[i] for i in sorted(subset))
            if p.vars != want_vars:
                failures.append(f"entry {sorted(key)}: wrong variables")
                continue
            sign = 1 if len(subset) % 2 == 0 else -1
            if p.bar() != p * sign:
                failures.append(
                    f"entry {sorted(key)}: bar symmetry violated")
    if not failures:
        for subset in subsets:
            if len(subset) < 2:
                continue
            sub = L.sublink(subset)
            sub_table = table.restrict(subset)
            kk = canonical_charge(sub)
            for pos in range(len(subset)):
                rep = torres_check(sub, kk, sub_table, pos)
                if not rep.ok:
                    failures.append(
                        f"Torres fails: sublink {subset}, drop "
                        f"{subset[pos]}")
    return TableReport(not failures, tuple(failures),
                       tuple(sorted(tuple(sorted(s))
                                    for s in table.ambiguous_sign)))
