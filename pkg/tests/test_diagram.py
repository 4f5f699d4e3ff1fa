"""PD parsing, skein evaluation and the bundled example links."""

import pytest

from tsw.diagram import (braid_closure_pd, builtin_link, builtin_links,
                         delete_components, diagram_table, parse_pd,
                         skein_conway)
from tsw.errors import MalformedPD
from tsw.groupring import LaurentPoly
from tsw.linkdata import conway_table_validate, split_coefficients

P = LaurentPoly.from_pairs


def _closure(word, strands):
    return parse_pd(braid_closure_pd(word, strands))


def test_parse_pd():
    d = _closure((1, 1), 2)
    assert len(d.components()) == 2
    assert d.linking_matrix() == [[0, 1], [1, 0]]
    u = _closure((), 1)
    assert len(u.components()) == 1 and not u.crossings


@pytest.mark.parametrize("text", [
    "X+(1,2,3)",              # arity
    "X+(1,1,2,2) X+(2,2,1,1)",  # label reused as double input
    "X?(1,2,3,4)",            # unknown sign tag
    "X+(1,2,3,4)",            # open arcs
])
def test_parse_pd_rejects(text):
    with pytest.raises(MalformedPD):
        parse_pd(text)


def test_skein_values():
    assert skein_conway(_closure((1, 1, 1), 2)) == \
        P(("z",), [((2,), 1), ((0,), 1)])
    assert skein_conway(_closure((1, 1), 2)) == P(("z",), [((1,), 1)])
    assert skein_conway(_closure((1, -2, 1, -2), 3)) == \
        P(("z",), [((0,), 1), ((2,), -1)])
    assert skein_conway(_closure((1, 1, 1, 1), 2)) == \
        P(("z",), [((3,), 1), ((1,), 2)])
    assert skein_conway(_closure((1, -2, 1, -2, 1), 3)) == \
        P(("z",), [((3,), -1)])
    assert skein_conway(_closure((1, -2, 1, -2, 1, -2), 3)) == \
        P(("z",), [((4,), 1)])


def test_delete_components():
    bor = _closure((1, -2, 1, -2, 1, -2), 3)
    sub = delete_components(bor, [2])
    assert len(sub.components()) == 2
    assert sub.linking_matrix() == [[0, 0], [0, 0]]
    assert skein_conway(sub).is_zero()  # unlink


def test_builtin_tables_validate():
    for name in builtin_links():
        L, table = builtin_link(name)
        rep = conway_table_validate(L, table)
        assert rep.ok, (name, rep.failures)


def test_builtin_entries():
    L2, tb2 = builtin_link("hopf", (3, -1))
    assert L2.matrix == ((3, 1), (1, -1))
    assert tb2.entry({0, 1}) == LaurentPoly.constant(("t1", "t2"), 1)
    assert not tb2.ambiguous_sign

    _, tt = builtin_link("trefoil")
    assert tt.delta(0) == P(("t1",), [((-1,), 1), ((0,), -1), ((1,), 1)])
    _, tf = builtin_link("figure8")
    assert tf.delta(0) == P(("t1",), [((-1,), -1), ((0,), 3), ((1,), -1)])

    _, tw = builtin_link("whitehead")
    assert frozenset({0, 1}) in tw.ambiguous_sign
    Lb, tbb = builtin_link("borromean")
    assert frozenset({0, 1, 2}) in tbb.ambiguous_sign
    assert split_coefficients(Lb, tbb) == {(-1, -1, -1): -1}

    _, tt24 = builtin_link("torus24")
    assert tt24.entry({0, 1}) == \
        P(("t1", "t2"), [((-1, -1), 1), ((1, 1), 1)])
    assert not tt24.ambiguous_sign


def test_chain_closure_table():
    # (1,1,2,2) braid closes to a 3-chain: nondegenerate Torres descent,
    # so every sign is pinned.
    chain = _closure((1, 1, 2, 2), 3)
    assert len(chain.components()) == 3
    L, table = diagram_table(chain, (0, 0, 0))
    assert L.matrix == ((0, 1, 0), (1, 0, 1), (0, 1, 0))
    rep = conway_table_validate(L, table)
    assert rep.ok, rep.failures
    assert not table.ambiguous_sign
    assert table.entry({0, 1, 2}) == \
        P(("t1", "t2", "t3"), [((0, 1, 0), 1), ((0, -1, 0), -1)])
