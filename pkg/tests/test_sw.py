"""The Seiberg-Witten table, its split fast path and the boundary function."""

from fractions import Fraction

import pytest

from tsw.diagram import builtin_link
from tsw.errors import (DirectionNotPrimitive, NeedsDirection, NotPositiveB1,
                        NotSplit)
from tsw.groupring import LaurentPoly
from tsw.linkdata import ConwayTable, FramedLink
from tsw.surgery import euler_classes
from tsw.sw import (sw_all, sw_split_table, sw_value, torsion_duality_check,
                    torsion_function)

# hand-computed ladders for 0-framed knots in S^3


def test_unknot_zero_framing_ladder():
    L, tab = builtin_link("unknot", [0])
    assert [sw_value(L, (k,), tab) for k in (1, 3, 5, 7, -1, -3)] == \
        [0, -1, -2, -3, 0, 0]
    assert torsion_function(L, (3,), tab) == 0
    assert torsion_function(L, (-1,), tab) == Fraction(-1)
    assert torsion_duality_check(L, (5,), tab).ok


def test_trefoil_zero_framing_ladder():
    L, tab = builtin_link("trefoil", [0])
    assert [sw_value(L, (k,), tab) for k in (1, 3, 5, 7)] == [-1, -1, -2, -3]
    tbl = sw_split_table(L, tab, window=6)
    assert tbl.sign_undetermined and tbl.direction == (1,)
    assert tbl.values[(7,)] == -3 and tbl.values[(-5,)] == 0
    for k in (1, 3, 5, -3):
        assert sw_value(L, (k,), tab) == tbl.values[(k,)]
    assert torsion_duality_check(L, (7,), tab).ok


@pytest.mark.parametrize("f", [0, 1, -1, 2])
def test_borromean_single_basic_class(f):
    L, tab = builtin_link("borromean", [f, 0, 0])
    tbl = sw_split_table(L, tab, window=3)
    nonzero = {k: v for k, v in tbl.values.items() if v}
    assert len(nonzero) == 1
    assert abs(next(iter(nonzero.values()))) == 1
    assert tbl.boundary_zero


def test_sw_all_matches_direct_values():
    L, tab = builtin_link("borromean", [1, 0, 0])
    table_all = sw_all(L, tab, window=2)
    classes = euler_classes(L)
    for rep in classes.enumerate(2):
        assert table_all.values[classes.canonicalize(rep)] == \
            sw_value(L, rep, tab)
    assert torsion_duality_check(L, (1, 1, 1), tab).ok
    assert torsion_duality_check(L, (3, -1, 1), tab).ok


def test_direction_handling():
    L, tab = builtin_link("hopf", [1, 1])
    with pytest.raises(NeedsDirection):
        sw_value(L, (0, 0), tab)  # two non-torsion meridians
    assert sw_value(L, (0, 0), tab, direction=(1, 0)) == 0
    table_all = sw_all(L, tab, window=3, direction=(1, 0))
    classes = euler_classes(L)
    for rep in classes.enumerate(2):
        assert table_all.values[classes.canonicalize(rep)] == \
            sw_value(L, rep, tab, direction=(1, 0))
    with pytest.raises(DirectionNotPrimitive):
        sw_value(L, (0, 0), tab, direction=(2, 0))
    with pytest.raises(NotSplit):
        sw_split_table(L, tab)


def test_rational_sphere_torsion_function():
    L, tab = builtin_link("hopf", [3, -1])
    with pytest.raises(NotPositiveB1):
        sw_value(L, (0, 0), tab)
    assert torsion_function(L, (0, 0), tab) == Fraction(-1, 16)
    assert torsion_duality_check(L, (0, 0), tab).ok
    assert torsion_duality_check(L, (2, 0), tab).ok


def test_mixed_corank_one_default_direction():
    L = FramedLink([[3, 1, 0], [1, -1, 0], [0, 0, 0]])
    tab = ConwayTable(3, {
        frozenset({0}): LaurentPoly.constant(("t1",), 1),
        frozenset({1}): LaurentPoly.constant(("t2",), 1),
        frozenset({2}): LaurentPoly.constant(("t3",), 1),
        frozenset({0, 1}): LaurentPoly.constant(("t1", "t2"), 1),
        frozenset({0, 2}): LaurentPoly.zero(("t1", "t3")),
        frozenset({1, 2}): LaurentPoly.zero(("t2", "t3")),
        frozenset({0, 1, 2}): LaurentPoly.zero(("t1", "t2", "t3")),
    })
    v = sw_value(L, (0, 0, 1), tab)
    assert isinstance(v, int)
    assert torsion_duality_check(L, (0, 0, 1), tab).ok
