"""Finitely generated abelian groups via integer Smith normal form.

Everything is exact over Python ints.  A group is presented as
Z^n / (column span of a relation matrix); elements are kept in Smith
coordinates split into a free part and a torsion part, which makes the
normal form canonical and elements hashable dict keys.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, lcm
from typing import NamedTuple

from .errors import InfiniteKernel
from .exactnum import Cyclotomic


# -- small exact matrix helpers -------------------------------------------

def mat_identity(n: int) -> list:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: list, b: list) -> list:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [
        [sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for row in a
    ]


def mat_vec(a: list, v: list) -> list:
    return [sum(row[k] * v[k] for k in range(len(v))) for row in a]


def determinant(a: list) -> int:
    """Bareiss fraction-free determinant; det of the empty matrix is 1."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def mat_inverse_unimodular(a: list) -> list:
    """Inverse of an integer matrix with det +-1 (exact, via Fractions)."""
    n = len(a)
    aug = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n, 2 * n):
            v = aug[i][j]
            if v.denominator != 1:
                raise ValueError("matrix is not unimodular")
            row.append(int(v))
        out.append(row)
    return out


class SmithDecomposition(NamedTuple):
    """U @ A @ V = D with U, V unimodular and D diagonal, d1 | d2 | ..."""

    U: list
    V: list
    D: list

    @property
    def diagonal(self) -> list:
        n = len(self.D)
        k = len(self.D[0]) if n else 0
        return [self.D[i][i] for i in range(min(n, k))]


def smith_normal_form(A: list) -> SmithDecomposition:
    """Smith normal form with a deterministic pivot rule.

    Pivot selection: smallest nonzero |entry|, ties broken row-major.
    Diagonal entries are made nonnegative and the divisibility chain
    d1 | d2 | ... | dr is enforced.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    D = [list(map(int, row)) for row in A]
    U = mat_identity(rows)
    V = mat_identity(cols)

    def row_op(i, j, c):  # row_i += c * row_j
        D[i] = [x + c * y for x, y in zip(D[i], D[j])]
        U[i] = [x + c * y for x, y in zip(U[i], U[j])]

    def col_op(i, j, c):  # col_i += c * col_j
        for r in range(rows):
            D[r][i] += c * D[r][j]
        for r in range(cols):
            V[r][i] += c * V[r][j]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in range(rows):
            D[r][i], D[r][j] = D[r][j], D[r][i]
        for r in range(cols):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    t = 0
    while True:
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = abs(D[i][j])
                if v and (best is None or v < best):
                    best, pivot = v, (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    row_op(i, t, -q)
                    if D[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    col_op(j, t, -q)
                    if D[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        t += 1
        if t >= min(rows, cols):
            break

    # make the diagonal nonnegative
    for i in range(min(rows, cols)):
        if D[i][i] < 0:
            D[i] = [-x for x in D[i]]
            U[i] = [-x for x in U[i]]

    # enforce the divisibility chain
    r = min(rows, cols)
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            a, b = D[i][i], D[i + 1][i + 1]
            if a and b and b % a != 0:
                changed = True
                # fold b into the i-th slot: standard 2x2 gcd step
                row_op(i, i + 1, 1)
                while True:
                    if D[i][i + 1]:
                        q = D[i][i + 1] // D[i][i] if D[i][i] else 0
                        if D[i][i]:
                            col_op(i + 1, i, -q)
                        if D[i][i + 1]:
                            swap_cols(i, i + 1)
                            continue
                    if D[i + 1][i]:
                        q = D[i + 1][i] // D[i][i]
                        row_op(i + 1, i, -q)
                        if D[i + 1][i]:
                            swap_rows(i, i + 1)
                            continue
                    break
                for k in (i, i + 1):
                    if D[k][k] < 0:
                        D[k] = [-x for x in D[k]]
                        U[k] = [-x for x in U[k]]
            elif b and not a:
                swap_rows(i, i + 1)
                swap_cols(i, i + 1)
                changed = True
    return SmithDecomposition(U, V, D)


class GroupElement(NamedTuple):
    """Smith-coordinate normal form: free exponents + torsion residues."""

    free: tuple
    tors: tuple

    def sort_key(self):
        return (self.free, self.tors)


class TorsionCharacter:
    """A character of Tors H valued in the cyclotomic field Q(zeta_N).

    N is the exponent of the torsion subgroup.  ``zeta_exponent(g)``
    returns c with chi(tors part of g) = zeta_N^c; the free part of g is
    ignored by design (characters of the torsion subgroup only).
    """

    __slots__ = ("group", "exponents", "order_n")

    def __init__(self, group, exponents, order_n):
        self.group = group
        self.exponents = tuple(exponents)
        self.order_n = order_n

    def zeta_exponent(self, g: GroupElement) -> int:
        return sum(c * t for c, t in zip(self.exponents, g.tors)) % self.order_n

    def value(self, g: GroupElement) -> Cyclotomic:
        return Cyclotomic.root(self.order_n, self.zeta_exponent(g))

    @property
    def is_trivial(self) -> bool:
        return all(c == 0 for c in self.exponents)

    def __repr__(self):
        return f"TorsionCharacter({self.exponents} / zeta_{self.order_n})"


class FgAbelianGroup:
    """Z^n modulo the column span of an integer relation matrix."""

    def __init__(self, n_generators: int, relation_columns: list):
        self.n = n_generators
        self.relations = [list(map(int, col)) for col in relation_columns]
        for col in self.relations:
            if len(col) != n_generators:
                raise ValueError("relation length mismatch")
        A = [[col[i] for col in self.relations] for i in range(n_generators)]
        if not self.relations:
            A = [[] for _ in range(n_generators)]
        snf = smith_normal_form(A) if self.relations else SmithDecomposition(
            mat_identity(n_generators), [], [[] for _ in range(n_generators)])
        self._snf = snf
        diag = snf.diagonal
        diag = diag + [0] * (n_generators - len(diag))
        self.free_indices = tuple(i for i, d in enumerate(diag) if d == 0)
        self.torsion_indices = tuple(i for i, d in enumerate(diag) if d >= 2)
        self.ones_indices = tuple(i for i, d in enumerate(diag) if d == 1)
        self.invariant_factors = tuple(diag[i] for i in self.torsion_indices)
        self.free_rank = len(self.free_indices)
        self._U = snf.U
        self._Uinv = mat_inverse_unimodular(snf.U)
        self.torsion_order = 1
        for d in self.invariant_factors:
            self.torsion_order *= d
        self.exponent = lcm(*self.invariant_factors) if self.invariant_factors else 1

    # -- construction of elements -----------------------------------------

    def element(self, generator_exponents) -> GroupElement:
        """Class of prod generator_i^(x_i) in Smith normal form."""
        x = list(generator_exponents)
        if len(x) != self.n:
            raise ValueError("expected one exponent per generator")
        y = mat_vec(self._U, x)
        free = tuple(y[i] for i in self.free_indices)
        tors = tuple(y[i] % d for i, d in zip(self.torsion_indices,
                                              self.invariant_factors))
        return GroupElement(free, tors)

    @property
    def identity(self) -> GroupElement:
        return GroupElement((0,) * self.free_rank, (0,) * len(self.torsion_indices))

    def generator(self, i: int) -> GroupElement:
        return self.element([1 if j == i else 0 for j in range(self.n)])

    def generators(self) -> list:
        return [self.generator(i) for i in range(self.n)]

    # -- group operations ---------------------------------------------------

    def mul(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return GroupElement(
            tuple(x + y for x, y in zip(a.free, b.free)),
            tuple((x + y) % d for x, y, d in
                  zip(a.tors, b.tors, self.invariant_factors)),
        )

    def inv(self, a: GroupElement) -> GroupElement:
        return GroupElement(
            tuple(-x for x in a.free),
            tuple((-x) % d for x, d in zip(a.tors, self.invariant_factors)),
        )

    def pow(self, a: GroupElement, e: int) -> GroupElement:
        return GroupElement(
            tuple(x * e for x in a.free),
            tuple((x * e) % d for x, d in zip(a.tors, self.invariant_factors)),
        )

    def order(self, a: GroupElement):
        """Order of the element; None encodes infinity."""
        if any(a.free):
            return None
        n = 1
        for x, d in zip(a.tors, self.invariant_factors):
            if x:
                n = lcm(n, d // gcd(d, x))
        return n

    def is_torsion(self, a: GroupElement) -> bool:
        return not any(a.free)

    def free_part(self, a: GroupElement) -> tuple:
        return a.free

    # -- coordinates ----------------------------------------------------------

    def coordinate_lift(self, a: GroupElement) -> list:
        """An integer vector in Smith coordinates mapping onto a."""
        y = [0] * self.n
        for i, v in zip(self.free_indices, a.free):
            y[i] = v
        for i, v in zip(self.torsion_indices, a.tors):
            y[i] = v
        return y

    def generator_word(self, a: GroupElement) -> list:
        """Some x in Z^n with element(x) == a."""
        return mat_vec(self._Uinv, self.coordinate_lift(a))

    # -- torsion enumeration ---------------------------------------------------

    def torsion_elements(self) -> list:
        """All torsion elements, lexicographic in torsion coordinates."""
        zero_free = (0,) * self.free_rank
        out = []
        for combo in product(*[range(d) for d in self.invariant_factors]):
            out.append(GroupElement(zero_free, combo))
        return out

    def torsion_characters(self) -> list:
        """All characters of Tors H, trivial first, lexicographic."""
        N = self.exponent
        chars = []
        for combo in product(*[range(d) for d in self.invariant_factors]):
            exps = tuple(j * (N // d) for j, d in
                         zip(combo, self.invariant_factors))
            chars.append(TorsionCharacter(self, exps, N))
        return chars

    # -- quotients ---------------------------------------------------------------

    def quotient_by(self, kill: list) -> "Projection":
        """Quotient by the subgroup generated by ``kill``.

        The quotient is presented on this group's Smith coordinates;
        the returned Projection maps elements, solves preimages and
        enumerates the kernel when it is finite.
        """
        cols = []
        for i, d in zip(self.torsion_indices, self.invariant_factors):
            col = [0] * self.n
            col[i] = d
            cols.append(col)
        for i in self.ones_indices:
            col = [0] * self.n
            col[i] = 1
            cols.append(col)
        for g in kill:
            cols.append(self.coordinate_lift(g))
        quotient = FgAbelianGroup(self.n, cols)
        return Projection(self, quotient, list(kill))


class Projection:
    """The canonical map H -> H / <kill>."""

    def __init__(self, source: FgAbelianGroup, quotient: FgAbelianGroup, kill: list):
        self.source = source
        self.quotient = quotient
        self._kill = kill

    def __call__(self, a: GroupElement) -> GroupElement:
        return self.quotient.element(self.source.coordinate_lift(a))

    def preimage(self, y: GroupElement) -> GroupElement:
        """Some a in the source with self(a) == y."""
        x = self.quotient.generator_word(y)
        lifted = GroupElement(
            tuple(x[i] for i in self.source.free_indices),
            tuple(x[i] % d for i, d in zip(self.source.torsion_indices,
                                           self.source.invariant_factors)),
        )
        return lifted

    def kernel_elements(self) -> list:
        """All elements of <kill>; raises InfiniteKernel if unbounded."""
        for g in self._kill:
            if not self.source.is_torsion(g):
                raise InfiniteKernel(
                    "kernel generated by an infinite-order element")
        seen = {self.source.identity}
        frontier = [self.source.identity]
        while frontier:
            cur = frontier.pop()
            for g in self._kill:
                for h in (g, self.source.inv(g)):
                    nxt = self.source.mul(cur, h)
                    if nxt not in seen:
                        seen.add(nxt)
                        frontier.append(nxt)
        return sorted(seen, key=GroupElement.sort_key)


@lru_cache(maxsize=None)
def _cached_group(n: int, cols: tuple) -> FgAbelianGroup:
    return FgAbelianGroup(n, [list(c) for c in cols])


def group_from_relations(relation_columns: list, n_generators: int) -> FgAbelianGroup:
    """Z^n modulo the span of the given relation columns (cached)."""
    cols = tuple(tuple(int(x) for x in col) for col in relation_columns)
    return _cached_group(n_generators, cols)


def free_abelian_group(rank: int) -> FgAbelianGroup:
    return group_from_relations([], rank)
