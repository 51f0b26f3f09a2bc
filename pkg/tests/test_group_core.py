import itertools

import numpy as np
import pytest

from pgv.group_core import (
    GroupError,
    GroupTable,
    InconsistentPresentation,
    Subgroup,
    all_subgroups,
    agemo1,
    center,
    centralizer,
    commutator_subgroup,
    conjugation_map,
    cyclic_group,
    direct_product_tables,
    frattini,
    from_pc_presentation,
    GroupMap,
    identity_map,
    is_inner,
    is_isomorphic,
    iset,
    map_order,
    maximal_subgroups,
    maximal_subgroups_bruteforce,
    normal_subgroups,
    omega1,
    opposite,
    quotient,
    set_product,
    subgroup_center,
    subgroup_closure,
    trivial_group,
)
from pgv.presentations import PcPresentation, PresentationError, parse_presentations


def pres_c4():
    return PcPresentation(2, 2, "C4", {1: [2], 2: []}, {})


def pres_d8():
    # g1 reflection, g2 rotation of order 4, g3 = g2^2.
    return PcPresentation(
        2, 3, "D8", {1: [], 2: [3], 3: []}, {(2, 1): [3], (3, 1): [], (3, 2): []}
    )


def pres_q8():
    return PcPresentation(2, 3, "Q8", {1: [3], 2: [3], 3: []}, {(2, 1): [3]})


def pres_d16():
    return PcPresentation(
        2,
        4,
        "D16",
        {1: [], 2: [3], 3: [4], 4: []},
        {(2, 1): [3, 4], (3, 1): [4]},
    )


def pres_heis27():
    return PcPresentation(3, 3, "He27", {1: [], 2: [], 3: []}, {(2, 1): [3]})


def test_cyclic_from_presentation():
    g = from_pc_presentation(pres_c4())
    assert g.order == 4
    assert g.element_order(2) == 4  # g1 has index p^(n-1) = 2
    assert g.is_abelian()


def test_d8_from_presentation():
    g = from_pc_presentation(pres_d8())
    assert g.order == 8
    assert not g.is_abelian()
    assert max(g.element_orders()) == 4
    # Exhaustive associativity oracle over all triples.
    for a, b, c in itertools.product(range(8), repeat=3):
        assert g.mul[g.mul[a, b], c] == g.mul[a, g.mul[b, c]]


def test_bad_word_lower_generator():
    with pytest.raises(PresentationError):
        PcPresentation(2, 2, "bad", {2: [1]}, {})


def test_inconsistent_presentation_rejected():
    # Grammar-valid but contradictory: g2 = g1^2 must commute with g1, yet
    # the presentation declares [g2, g1] = g3.
    bad = PcPresentation(
        2, 3, "bad", {1: [2], 2: [3], 3: []}, {(2, 1): [3]}
    )
    with pytest.raises(InconsistentPresentation):
        from_pc_presentation(bad)


def test_heisenberg27():
    g = from_pc_presentation(pres_heis27())
    assert g.order == 27
    assert not g.is_abelian()
    assert center(g).order == 3
    assert max(g.element_orders()) == 3


def test_center_d8():
    g = from_pc_presentation(pres_d8())
    z = center(g)
    assert z.order == 2
    # Brute scan oracle.
    expected = [x for x in range(8) if all(g.mul[x, y] == g.mul[y, x] for y in range(8))]
    assert list(z.members) == expected


def test_frattini_formula_vs_maximal_intersection():
    for pres in (pres_d8(), pres_q8(), pres_d16(), pres_heis27()):
        g = from_pc_presentation(pres)
        f = frattini(g)
        maxs = maximal_subgroups_bruteforce(g)
        inter = np.ones(g.order, dtype=bool)
        for m in maxs:
            inter &= m.bitmap
        assert np.array_equal(np.nonzero(inter)[0], f.members)


def test_frattini_klein_four_trivial():
    g = direct_product_tables(cyclic_group(2, 2), cyclic_group(2, 2))
    assert frattini(g).order == 1
    g8 = from_pc_presentation(pres_d8())
    assert frattini(g8) == center(g8)


def test_iset_d8_everything():
    g = from_pc_presentation(pres_d8())
    full = Subgroup(g, np.arange(8), check=False)
    s = iset(g, full)
    # Every square in D8 lies in the center.
    assert s.size == 8
    assert s.is_subgroup


def test_omega1_q8():
    g = from_pc_presentation(pres_q8())
    full = Subgroup(g, np.arange(8), check=False)
    w = omega1(g, full)
    assert w.order == 2


def test_subgroup_closure_trivial_and_full():
    g = from_pc_presentation(pres_c4())
    assert subgroup_closure(g, [0]).order == 1
    gen = 2  # index of g1, which has order 4
    assert subgroup_closure(g, [gen]).order == 4


def test_subgroup_closure_minimal_d16():
    g = from_pc_presentation(pres_d16())
    rng = np.random.default_rng(1)
    for _ in range(5):
        seeds = rng.integers(0, 16, size=2)
        h = subgroup_closure(g, seeds)
        mem = set(int(x) for x in h.members)
        # Closure oracle: closed under products and inverses.
        for a in h.members:
            for b in h.members:
                assert int(g.mul[a, b]) in mem
        # Minimality: every subgroup containing the seeds contains h.
        for other in all_subgroups(g):
            if all(other.contains(int(s)) for s in seeds):
                assert other.contains_subgroup(h)


def test_normal_subgroups_klein():
    g = direct_product_tables(cyclic_group(2, 2), cyclic_group(2, 2))
    subs = normal_subgroups(g)
    assert len(subs) == 5


def test_normal_subgroups_d8():
    g = from_pc_presentation(pres_d8())
    subs = normal_subgroups(g)
    # Oracle: exhaustive subgroup enumeration + normality filter.
    expected = []
    for h in all_subgroups(g):
        if all(
            h.contains(int(g.mul[g.mul[g.inv[x], m], x]))
            for x in range(8)
            for m in h.members
        ):
            expected.append(h.key())
    assert sorted(s.key() for s in subs) == sorted(expected)
    assert len(subs) == 6


def test_normal_subgroups_within_trivial():
    g = from_pc_presentation(pres_d8())
    triv = Subgroup(g, [0], check=False)
    subs = normal_subgroups(g, within=triv)
    assert len(subs) == 1 and subs[0].order == 1


def test_quotient_by_whole_and_trivial():
    g = from_pc_presentation(pres_d8())
    full = Subgroup(g, np.arange(8), check=False)
    q, _ = quotient(g, full)
    assert q.order == 1
    triv = Subgroup(g, [0], check=False)
    q2, qm = quotient(g, triv)
    assert q2.order == 8
    assert np.array_equal(q2.mul, g.mul)


def test_quotient_d8_center_is_klein():
    g = from_pc_presentation(pres_d8())
    q, qm = quotient(g, center(g))
    assert q.order == 4
    klein = direct_product_tables(cyclic_group(2, 2), cyclic_group(2, 2))
    assert is_isomorphic(q, klein)
    # section/image consistency
    for c in range(q.order):
        assert qm.image_of[qm.section[c]] == c


def test_quotient_requires_normal():
    g = from_pc_presentation(pres_d8())
    # A non-normal order-2 subgroup: generated by a reflection.
    refl = next(
        x
        for x in range(8)
        if g.element_order(x) == 2
        and not center(g).contains(x)
        and not subgroup_closure(g, [x]).is_normal()
    )
    h = subgroup_closure(g, [refl])
    with pytest.raises(GroupError):
        quotient(g, h)


def test_is_inner_identity_and_conjugation():
    g = from_pc_presentation(pres_d8())
    assert is_inner(g, identity_map(g)) is not None
    for h in range(8):
        f = conjugation_map(g, h)
        w = is_inner(g, f)
        assert w is not None
        # Witness differs from h by a central element.
        diff = g.mul[g.inv[w], h]
        assert center(g).contains(int(diff))


def test_reflection_twist_on_d8_is_conjugation():
    g = from_pc_presentation(pres_d8())
    # Fixing the rotation subgroup pointwise and multiplying each reflection
    # by the central rotation is exactly conjugation by r, hence inner.
    rot = subgroup_closure(g, [np.flatnonzero(g.element_orders() == 4)[0]])
    z = center(g).members[1]
    image = np.arange(8)
    for x in range(8):
        if not rot.contains(x):
            image[x] = g.mul[x, z]
    f = GroupMap(g, g, image)
    assert f.is_automorphism()
    assert is_inner(g, f) is not None


def test_noninner_involution_on_d8_detected():
    g = from_pc_presentation(pres_d8())
    r = int(np.flatnonzero(g.element_orders() == 4)[0])
    rot = subgroup_closure(g, [r])
    s = next(x for x in range(8) if not rot.contains(x))
    # r -> r^-1, s -> s*r generates the outer involution of D8.
    image = -np.ones(8, dtype=np.int64)
    for i in range(4):
        ri = g.power(r, i)
        image[ri] = g.power(g.inv[r], i)
        image[g.mul[s, ri]] = g.mul[g.mul[s, r], g.power(g.inv[r], i)]
    f = GroupMap(g, g, image)
    assert f.is_automorphism()
    assert map_order(f) == 2
    # Oracle: compare against all 8 conjugations.
    for h in range(8):
        assert not np.array_equal(conjugation_map(g, h).image_of, image)
    assert is_inner(g, f) is None


def test_map_order_examples():
    g3 = cyclic_group(3, 3)
    inv_map = GroupMap(g3, g3, g3.inv)
    assert map_order(inv_map) == 2
    assert map_order(identity_map(g3)) == 1


def test_opposite_group_and_set_product():
    g = from_pc_presentation(pres_d8())
    op = opposite(g)
    assert op.order == 8
    z = center(g)
    d = commutator_subgroup(g)
    prod = set_product(g, z, d)
    assert prod.order == 2


def test_subgroup_center_and_centralizer():
    g = from_pc_presentation(pres_d16())
    r2 = subgroup_closure(g, [np.flatnonzero(g.element_orders() == 4)[0]])
    c = centralizer(g, r2)
    zn = subgroup_center(g, r2)
    assert zn.order == r2.order  # cyclic, so self-centralizing inside itself
    assert c.contains_subgroup(r2)


def test_isomorphism_detects_d8_vs_q8():
    d8 = from_pc_presentation(pres_d8())
    q8 = from_pc_presentation(pres_q8())
    assert not is_isomorphic(d8, q8)
    assert is_isomorphic(d8, from_pc_presentation(pres_d8()))


def test_parse_roundtrip():
    text = """
# a comment
group C4
p 2
gens 2
pow 1 : g2
pow 2 : 1
end

group D8
p 2
gens 3
pow 1 : 1
pow 2 : g3
pow 3 : 1
comm 2 1 : g3
end
"""
    groups = parse_presentations(text)
    assert [p.name for p in groups] == ["C4", "D8"]
    g = from_pc_presentation(groups[1])
    assert g.order == 8 and not g.is_abelian()


def test_parse_error_has_location():
    with pytest.raises(PresentationError) as ei:
        parse_presentations("group X\np 2\ngens 2\npow 1 : g1^5\nend")
    assert "line 4" in str(ei.value)


def test_trivial_group_and_cyclic():
    t = trivial_group(2)
    assert t.order == 1
    c9 = cyclic_group(3, 9)
    assert c9.element_order(1) == 9
