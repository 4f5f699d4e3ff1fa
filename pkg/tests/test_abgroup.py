import random

import pytest

from tsw.abgroup import (FgAbelianGroup, GroupElement, determinant,
                         free_abelian_group, group_from_relations,
                         smith_normal_form)


def test_smith_normal_form_reconstructs():
    rng = random.Random(3)
    for _ in range(25):
        n = rng.randint(1, 4)
        A = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        dec = smith_normal_form(A)
        # U * A * V = D with unimodular U, V
        from tsw.abgroup import mat_mul
        D = mat_mul(mat_mul(dec.U, A), dec.V)
        assert D == dec.D
        diag = dec.diagonal
        for a, b in zip(diag, diag[1:]):
            if b:
                assert a != 0 and b % a == 0
        assert abs(determinant(dec.U)) == 1
        assert abs(determinant(dec.V)) == 1


def test_presentations():
    Z = group_from_relations([(0,)], 1)
    assert Z.free_rank == 1 and Z.invariant_factors == ()
    Z5 = group_from_relations([(5,)], 1)
    assert Z5.free_rank == 0 and Z5.invariant_factors == (5,)
    # hopf with framings (1,1): Z^2 / [(1,1),(1,1)] = Z
    Hh = group_from_relations([(1, 1), (1, 1)], 2)
    assert Hh.free_rank == 1 and Hh.invariant_factors == ()
    # borromean (2,0,0): Z/2 + Z^2
    Hb = group_from_relations([(2, 0, 0), (0, 0, 0), (0, 0, 0)], 3)
    assert Hb.free_rank == 2 and Hb.invariant_factors == (2,)


def test_element_arithmetic_random():
    rng = random.Random(5)
    H = group_from_relations([(4, 0, 2), (0, 0, 0), (2, 0, 6)], 3)
    for _ in range(40):
        a = H.element([rng.randint(-5, 5) for _ in range(3)])
        b = H.element([rng.randint(-5, 5) for _ in range(3)])
        assert H.mul(a, H.inv(a)) == H.identity
        assert H.mul(a, b) == H.mul(b, a)
        e = rng.randint(-4, 4)
        assert H.pow(a, e) == H.pow(H.inv(a), -e)


def test_generator_word_roundtrip():
    rng = random.Random(11)
    H = group_from_relations([(3, 1, 0), (1, -1, 0), (0, 0, 0)], 3)
    for _ in range(30):
        h = H.element([rng.randint(-6, 6) for _ in range(3)])
        word = H.generator_word(h)
        assert H.element(list(word)) == h


def test_orders_and_torsion():
    H = group_from_relations([(4, 0), (0, 0)], 2)
    s = H.generator(0)
    assert H.is_torsion(s) and H.order(s) == 4
    t = H.generator(1)
    assert not H.is_torsion(t) and H.order(t) is None
    assert H.order(H.identity) == 1
    assert len(H.torsion_elements()) == 4
    lex = [e.tors for e in H.torsion_elements()]
    assert lex == sorted(lex)


def test_torsion_characters():
    H = group_from_relations([(4,)], 1)
    chars = H.torsion_characters()
    assert len(chars) == 4
    assert chars[0].is_trivial
    g = H.generator(0)
    seen = {chi.value(g) for chi in chars}
    assert len(seen) == 4
    for chi in chars:
        assert chi.value(H.identity).is_rational() == 1
        assert (chi.value(g) ** 4).is_rational() == 1


def test_quotient_and_projection():
    H = group_from_relations([(0, 0), (0, 0)], 2)
    proj = H.quotient_by([H.generator(1)])
    q = proj.quotient
    assert q.free_rank == 1
    assert proj(H.generator(1)) == q.identity
    lift = proj.preimage(q.generator(0))
    assert proj(lift) == q.generator(0)
    # kernel of a finite-kernel projection
    H2 = group_from_relations([(2, 0), (0, 0)], 2)
    proj2 = H2.quotient_by([H2.generator(0)])
    assert len(proj2.kernel_elements()) == 2


def test_free_abelian_group():
    G = free_abelian_group(2)
    assert G.free_rank == 2 and not G.invariant_factors
    g = G.element([2, -1])
    assert g.free == (2, -1)


def test_element_validation():
    H = group_from_relations([(4,)], 1)
    with pytest.raises((TypeError, ValueError)):
        H.element([1, 2])


def test_sort_key_total_order():
    H = group_from_relations([(2, 0), (0, 0)], 2)
    els = [H.element([a, b]) for a in range(-2, 3) for b in range(-2, 3)]
    keys = [e.sort_key() for e in els]
    assert len(set(keys)) == len({e for e in els})
