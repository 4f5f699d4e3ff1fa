"""Surgery presentations, Euler structures and the torsion tau/delta."""

from fractions import Fraction

import pytest

from tsw.abgroup import free_abelian_group
from tsw.diagram import builtin_link
from tsw.errors import InfiniteEnumeration, NotPositiveB1, TrivialCharacter
from tsw.exactnum import Cyclotomic
from tsw.groupring import (FieldFraction, GroupAlg, LaurentPoly, QHFraction,
                           map_group_algebra)
from tsw.linkdata import ConwayTable, FramedLink, canonical_charge
from tsw.surgery import (cross_check, delta, det0, duality_check,
                         euler_classes, orientation_sign, surgered_homology,
                         tau, tau_character)

MIX_LINK = FramedLink([[3, 1, 0], [1, -1, 0], [0, 0, 0]])
MIX_TABLE = ConwayTable(3, {
    frozenset({0}): LaurentPoly.constant(("t1",), 1),
    frozenset({1}): LaurentPoly.constant(("t2",), 1),
    frozenset({2}): LaurentPoly.constant(("t3",), 1),
    frozenset({0, 1}): LaurentPoly.constant(("t1", "t2"), 1),
    frozenset({0, 2}): LaurentPoly.zero(("t1", "t3")),
    frozenset({1, 2}): LaurentPoly.zero(("t2", "t3")),
    frozenset({0, 1, 2}): LaurentPoly.zero(("t1", "t2", "t3")),
})


def test_presentations():
    p = surgered_homology(builtin_link("unknot", (0,))[0])
    assert p.b1 == 1 and p.I0 == frozenset() and p.H.torsion_order == 1
    p5 = surgered_homology(builtin_link("unknot", (5,))[0])
    assert p5.b1 == 0 and p5.I0 == {0} and p5.H.invariant_factors == (5,)
    pb = surgered_homology(builtin_link("borromean", (2, 0, 0))[0])
    assert pb.b1 == 2 and pb.I0 == {0} and pb.H.invariant_factors == (2,)
    ph = surgered_homology(builtin_link("hopf", (1, 1))[0])
    assert ph.b1 == 1 and ph.I0 == frozenset() and ph.H.torsion_order == 1
    pm = surgered_homology(MIX_LINK)
    assert pm.b1 == 1 and pm.I0 == {0, 1} and pm.H.torsion_order == 4


def test_euler_classes():
    L3, _ = builtin_link("unknot", (3,))
    ec = euler_classes(L3)
    classes = ec.enumerate()
    assert len(classes) == 3
    assert len({ec.canonicalize(c) for c in classes}) == 3
    assert ec.equal((1,), (7,)) and not ec.equal((1,), (3,))
    for c in classes:
        assert ec.canonicalize(ec.canonicalize(c)) == ec.canonicalize(c)
    assert ec.inverse(ec.inverse((5,))) == (5,)

    L0, _ = builtin_link("unknot", (0,))
    ec0 = euler_classes(L0)
    assert ec0.chern((1,)) == surgered_homology(L0).H.identity
    with pytest.raises(InfiniteEnumeration):
        ec0.enumerate()
    assert len(ec0.enumerate(window=3)) == 7


def test_det0_and_orientation():
    assert det0([[0]]) == 1
    assert det0([[-3]]) == -1
    assert det0([[2]]) == 1
    assert det0([[0, 1], [1, 0]]) == -1
    assert orientation_sign(builtin_link("unknot", (0,))[0]) == -1


def test_tau_unknot_zero_framing():
    L, T = builtin_link("unknot", (0,))
    H = surgered_homology(L).H
    t = H.generator(0)
    for k in (1, 3):
        got = tau(L, (k,), T)
        want = QHFraction(GroupAlg.unit(H, H.pow(t, (k + 1) // 2), -1), (t, t))
        assert got == want
    assert repr(tau(L, (1,), T)) == "(-1*t1^1) / (t1^1 - 1)^2"


def test_tau_trefoil_zero_framing():
    L, T = builtin_link("trefoil", (0,))
    H = surgered_homology(L).H
    t = H.generator(0)
    for k in (1, 3):
        got = tau(L, (k,), T)
        dpoly = GroupAlg(H, {H.pow(t, -1): Fraction(1),
                             H.identity: Fraction(-1),
                             t: Fraction(1)})
        want = QHFraction(dpoly.mul_element(H.pow(t, (k + 1) // 2), -1),
                          (t, t))
        assert got == want
    assert duality_check(L, (1,), T).ok
    assert cross_check(L, (1,), T).ok


def test_tau_three_torus():
    L, T = builtin_link("borromean", (0, 0, 0))
    H = surgered_homology(L).H
    got = tau(L, (1, 1, 1), T)
    assert got in (QHFraction.from_poly(GroupAlg.unit(H)),
                   QHFraction.from_poly(GroupAlg.unit(H, c=-1)))


def test_tau_borromean_torsion():
    L, T = builtin_link("borromean", (2, 0, 0))
    k = canonical_charge(L)
    x = tau(L, k, T)
    assert x.is_polynomial() and x.num.is_integral()
    assert duality_check(L, k, T).ok
    assert cross_check(L, k, T).ok


def test_tau_hopf_plumbing():
    L, T = builtin_link("hopf", (1, 1))
    p = surgered_homology(L)
    got = tau(L, (0, 0), T)
    m1, m2 = p.meridians
    assert got == QHFraction(GroupAlg.unit(p.H, c=-1), (m1, m2))
    assert len(got.dens) == 2
    assert duality_check(L, (0, 0), T).ok
    assert cross_check(L, (0, 0), T).ok


def test_tau_s3_vanishes():
    L, T = builtin_link("hopf", (0, 0))
    got = tau(L, canonical_charge(L), T)
    assert got.num.is_zero() and not got.dens


def test_tau_rational_sphere():
    L, T = builtin_link("hopf", (3, -1))
    k = canonical_charge(L)
    x = tau(L, k, T)
    p = surgered_homology(L)
    assert p.H.invariant_factors == (4,)
    g = p.H.generator(0)
    assert [x.num.coefficient(p.H.pow(g, j)) for j in range(4)] == \
        [Fraction(-1, 16), Fraction(-3, 16), Fraction(-1, 16),
         Fraction(5, 16)]
    assert x.num.coefficients_in_localization(2 * p.H.torsion_order)
    assert duality_check(L, k, T).ok
    assert cross_check(L, k, T).ok


def test_tau_torus24():
    L, T = builtin_link("torus24", (0, 0))
    k = canonical_charge(L)
    assert duality_check(L, k, T).ok
    assert cross_check(L, k, T).ok


def test_tau_mixed_corank_one():
    k = canonical_charge(MIX_LINK)
    x = tau(MIX_LINK, k, MIX_TABLE)
    assert len(x.dens) <= 2 and x.num.is_integral()
    assert repr(x) == ("(1*t1^1 + 1*t1^1*s1^1 + 1*t1^1*s1^2 + 1*t1^1*s1^3)"
                       " / (t1^1 - 1)^2")
    assert duality_check(MIX_LINK, k, MIX_TABLE).ok
    assert cross_check(MIX_LINK, k, MIX_TABLE).ok


def test_tau_split_rational_sphere_routes_agree():
    # b1=0 split links with several components: the folded route must
    # come back with a vanishing trivial-character component
    for name, fr in (("whitehead", (2, 2)), ("whitehead", (3, 2)),
                     ("borromean", (-1, 1, 2)), ("borromean", (2, 2, 2))):
        L, T = builtin_link(name, fr)
        k = canonical_charge(L)
        a = tau(L, k, T, _path="split")
        b = tau(L, k, T, _path="general")
        assert a == b, (name, fr)
        assert a.num.augmentation() == 0
        assert cross_check(L, k, T).ok


def test_lens_character_values():
    for p in range(2, 8):
        L, T = builtin_link("unknot", (p,))
        H = surgered_homology(L).H
        k = 1
        for chi in H.torsion_characters():
            if chi.is_trivial:
                continue
            j = chi.exponents[0]
            got = tau_character(L, (k,), T, chi)
            zeta = Cyclotomic.root(p, j)
            num = LaurentPoly.constant(
                (), Cyclotomic.root(p, j * (k + 1) // 2) * -1)
            den = (LaurentPoly.constant((), zeta)
                   - LaurentPoly.constant((), 1)) ** 2
            assert got == FieldFraction(num, den), (p, j)
        assert cross_check(L, (k,), T).ok
        assert duality_check(L, (k,), T).ok


def test_charge_equivariance(rng):
    cases = [builtin_link("trefoil", (0,)),
             builtin_link("borromean", (2, 0, 0)),
             builtin_link("hopf", (3, -1)),
             (MIX_LINK, MIX_TABLE)]
    for L, T in cases:
        H = surgered_homology(L).H
        k0 = canonical_charge(L)
        base = tau(L, k0, T)
        for _ in range(3):
            v = [rng.randrange(-2, 3) for _ in range(L.m)]
            k2 = tuple(a + 2 * b for a, b in zip(k0, v))
            assert tau(L, k2, T) == base.mul_element(H.element(v))


def _project_to_free(L, T, k):
    pres = surgered_homology(L)
    G = free_abelian_group(pres.b1)
    gimg = [G.element(list(g.free)) for g in pres.meridians]
    x = tau(L, k, T)
    num = map_group_algebra(x.num, G, gimg, check_relations=False)
    return QHFraction(num, tuple(G.element(list(h.free)) for h in x.dens))


def test_delta_is_free_projection():
    cases = [builtin_link("unknot", (0,)),
             builtin_link("trefoil", (0,)),
             builtin_link("borromean", (0, 0, 0)),
             builtin_link("borromean", (2, 0, 0)),
             builtin_link("hopf", (1, 1)),
             (MIX_LINK, MIX_TABLE)]
    for L, T in cases:
        k = canonical_charge(L)
        assert delta(L, k, T) == _project_to_free(L, T, k)


def test_delta_needs_positive_b1():
    L, T = builtin_link("hopf", (3, -1))
    with pytest.raises(NotPositiveB1):
        delta(L, canonical_charge(L), T)


def test_tau_character_rejects_trivial():
    L, T = builtin_link("hopf", (3, -1))
    chi = surgered_homology(L).H.torsion_characters()[0]
    assert chi.is_trivial
    with pytest.raises(TrivialCharacter):
        tau_character(L, canonical_charge(L), T, chi)
