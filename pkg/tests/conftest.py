import random

import pytest

from tsw.diagram import builtin_link
from tsw.groupring import LaurentPoly
from tsw.linkdata import ConwayTable, FramedLink, canonical_charge

CORPUS = ("unknot", "hopf", "trefoil", "figure8", "whitehead",
          "borromean", "torus24")


def corpus_with_framings(rng, per_link=1):
    """Builtin links with random framings in [-3, 3]."""
    out = []
    for name in CORPUS:
        base, _ = builtin_link(name)
        for _ in range(per_link):
            framings = [rng.randint(-3, 3) for _ in range(base.m)]
            out.append(builtin_link(name, framings))
    return out


def random_charge(L, rng, spread=2):
    base = canonical_charge(L)
    return tuple(b + 2 * rng.randint(-spread, spread) for b in base)


def stabilize(L, table, framing):
    """Append a distant unknot with framing +-1 to link and table."""
    assert framing in (1, -1)
    m = L.m
    matrix = [list(row) + [0] for row in L.matrix]
    matrix.append([0] * m + [framing])
    names = tuple(L.names) + (f"t{m + 1}",)
    L2 = FramedLink(matrix, names)
    entries = dict(table.entries)
    entries[frozenset({m})] = LaurentPoly.constant((names[m],), 1)
    for key in list(table.entries):
        joined = frozenset(key | {m})
        vars2 = tuple(names[i] for i in sorted(joined))
        entries[joined] = LaurentPoly.zero(vars2)
    return L2, ConwayTable(m + 1, entries, table.ambiguous_sign)


@pytest.fixture
def rng():
    return random.Random(20260815)
