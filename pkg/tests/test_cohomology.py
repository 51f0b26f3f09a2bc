import itertools

import numpy as np
import pytest

from pgv.cohomology import (
    CohomologyError,
    Derivation,
    TwoCocycle,
    brute_force_z1,
    coboundary_derivation,
    cohomology,
    conjugation_derivation,
    derivation_span_noninner_probe,
    derivation_to_automorphism,
    h1_dim_of_submodule,
    inflate,
    inflate_module,
    inflated_z1_rows,
    quotient_refinement_map,
    two_coboundary,
    zero_two_cocycle,
)
from pgv.fp_linalg import rank_array
from pgv.group_core import (
    GroupTable,
    Subgroup,
    center,
    conjugation_map,
    cyclic_group,
    direct_product_tables,
    from_pc_presentation,
    is_inner,
    map_order,
    normal_subgroups,
    omega1,
    quotient,
    subgroup_center,
    subgroup_closure,
)
from pgv.gmodule import (
    FreeBimodule,
    free_submodule_closure,
    module_from_conjugation,
    regular_module,
    restrict_action,
    trivial_module,
)
from tests.test_group_core import pres_d8, pres_d16, pres_heis27


def klein():
    return direct_product_tables(cyclic_group(2, 2), cyclic_group(2, 2))


def test_h1_c2_trivial():
    g = cyclic_group(2, 2)
    sp = cohomology(g, trivial_module(g, 1), 1)
    assert (sp.z_dim, sp.b_dim, sp.h_dim) == (1, 0, 1)


def test_h1_c2_regular_vanishes():
    g = cyclic_group(2, 2)
    sp = cohomology(g, regular_module(g), 1)
    assert sp.h_dim == 0


def test_h1_klein_trivial_module():
    g = klein()
    sp = cohomology(g, trivial_module(g, 1), 1)
    assert sp.h_dim == 2


def test_h1_matches_bruteforce_enumeration():
    # All (G, M) pairs small enough for exhaustive function enumeration.
    cases = []
    g1 = cyclic_group(2, 2)
    cases.append((g1, trivial_module(g1, 1)))
    cases.append((g1, regular_module(g1)))
    cases.append((g1, trivial_module(g1, 2)))
    g2 = klein()
    cases.append((g2, trivial_module(g2, 1)))
    g3 = cyclic_group(3, 3)
    cases.append((g3, trivial_module(g3, 1)))
    cases.append((g3, regular_module(g3)))
    for g, m in cases:
        sp = cohomology(g, m, 1)
        tables = brute_force_z1(g, m)
        assert len(tables) == m.p**sp.z_dim
        for tab in tables:
            stacked = np.vstack([sp.z_basis, tab.reshape(1, -1)])
            assert rank_array(stacked, m.p) == sp.z_dim


def test_b1_dimension_formula():
    from pgv.gmodule import fixed_points

    for g, m in [
        (from_pc_presentation(pres_d8()), regular_module(from_pc_presentation(pres_d8()))),
        (klein(), trivial_module(klein(), 2)),
    ]:
        m = regular_module(g) if m.dim == g.order else m
        sp = cohomology(g, m, 1)
        assert sp.b_dim == m.dim - fixed_points(m).dim


def test_h2_c2_trivial_equals_enumeration():
    g = cyclic_group(2, 2)
    m = trivial_module(g, 1)
    sp = cohomology(g, m, 2)
    assert sp.h_dim == 1
    # Oracle: enumerate all 16 functions GxG -> F2, count normalized cocycles
    # and coboundaries directly.
    zs = []
    for flat in itertools.product(range(2), repeat=4):
        tab = np.array(flat, dtype=np.int64).reshape(2, 2, 1)
        c = TwoCocycle(g, m, tab)
        if c.is_normalized() and c.is_cocycle():
            zs.append(tab)
    assert len(zs) == 2**sp.z_dim
    bs = set()
    for s1 in range(2):
        sigma = np.array([[0], [s1]], dtype=np.int64)
        bs.add(two_coboundary(g, m, sigma).table.tobytes())
    assert len(bs) == 2**sp.b_dim


def test_h2_reps_are_cocycles():
    g = cyclic_group(3, 3)
    m = trivial_module(g, 1)
    sp = cohomology(g, m, 2)
    assert sp.h_dim == 1
    for rep in sp.h_reps:
        assert rep.is_cocycle()
        assert not rep.is_zero()


def test_h2_order_cap():
    g = cyclic_group(2, 2)
    with pytest.raises(CohomologyError):
        cohomology(g, trivial_module(g, 1), 2, h2_order_cap=1)


def test_derivation_zero_gives_identity():
    g = from_pc_presentation(pres_d16())
    orders = g.element_orders()
    n = subgroup_closure(g, [int(np.flatnonzero(orders == 8)[0])])
    w = omega1(g, subgroup_center(g, n))
    cm = module_from_conjugation(g, n, w)
    tau = Derivation(cm.module.group, cm.module, np.zeros((2, 1), dtype=np.int64))
    f = derivation_to_automorphism(g, cm, tau)
    assert np.array_equal(f.image_of, np.arange(16))


def test_derivation_automorphism_d16():
    g = from_pc_presentation(pres_d16())
    orders = g.element_orders()
    n = subgroup_closure(g, [int(np.flatnonzero(orders == 8)[0])])
    w = omega1(g, subgroup_center(g, n))
    cm = module_from_conjugation(g, n, w)
    sp = cohomology(cm.module.group, cm.module, 1)
    assert sp.h_dim >= 1
    tau = sp.h_reps[0]
    psi = derivation_to_automorphism(g, cm, tau)
    assert map_order(psi) == 2
    # psi fixes N pointwise and moves some reflection.
    for x in n.members:
        assert psi(int(x)) == int(x)
    assert any(psi(x) != x for x in range(16))


def test_derivation_order_p_heisenberg():
    g = from_pc_presentation(pres_heis27())
    z = center(g)
    cm = module_from_conjugation(g, z, z)
    sp = cohomology(cm.module.group, cm.module, 1)
    for rep in sp.h_reps:
        psi = derivation_to_automorphism(g, cm, rep)
        assert map_order(psi) == 3


def test_additivity_of_induced_maps():
    g = from_pc_presentation(pres_heis27())
    z = center(g)
    cm = module_from_conjugation(g, z, z)
    sp = cohomology(cm.module.group, cm.module, 1)
    reps = sp.h_reps
    if len(reps) >= 2:
        t1, t2 = reps[0], reps[1]
        psi1 = derivation_to_automorphism(g, cm, t1)
        psi2 = derivation_to_automorphism(g, cm, t2)
        both = derivation_to_automorphism(g, cm, t1.add(t2))
        assert np.array_equal(both.image_of, psi1.image_of[psi2.image_of])


def test_conjugation_derivation_central_is_zero():
    g = from_pc_presentation(pres_d8())
    z = center(g)
    full_frattini = z  # Phi(D8) = Z(D8)
    cm = module_from_conjugation(g, full_frattini, omega1(g, z))
    zc = int(z.members[1])
    der = conjugation_derivation(g, cm, 0)
    assert der.is_zero()


def test_conjugation_derivation_matches_conjugation():
    g = from_pc_presentation(pres_d8())
    z = center(g)
    cm = module_from_conjugation(g, z, z)
    for x in range(8):
        try:
            der = conjugation_derivation(g, cm, x)
        except CohomologyError:
            continue
        psi = derivation_to_automorphism(g, cm, der)
        conj = conjugation_map(g, x)
        assert np.array_equal(psi.image_of, conj.image_of)


def test_inflation_injective_and_functorial():
    g = from_pc_presentation(pres_d16())
    # N = <r^2> (order 4), N1 = <r^4> (order 2), both normal.
    orders = g.element_orders()
    r = int(np.flatnonzero(orders == 8)[0])
    r2 = int(g.mul[r, r])
    r4 = int(g.mul[r2, r2])
    n = subgroup_closure(g, [r2])
    n1 = subgroup_closure(g, [r4])
    w = omega1(g, center(g))
    cm_n = module_from_conjugation(g, n, w)
    cm_n1 = module_from_conjugation(g, n1, w)
    pi = quotient_refinement_map(cm_n1.quotient_map, cm_n.quotient_map)
    sp = cohomology(cm_n.module.group, cm_n.module, 1)
    seen = set()
    for row in sp.z_basis:
        tau = Derivation(cm_n.module.group, cm_n.module, row.reshape(-1, cm_n.module.dim))
        infl = inflate(tau, pi, cm_n1.module)
        assert infl.is_cocycle()
        seen.add(infl.table.tobytes())
    assert len(seen) == len(sp.z_basis)  # distinct derivations inflate distinctly
    # inflate(0) = 0
    zero = Derivation(cm_n.module.group, cm_n.module, np.zeros((cm_n.module.group.order, 1)))
    assert inflate(zero, pi, cm_n1.module).is_zero()


def test_probe_zero_h1_absent():
    g = cyclic_group(2, 4)
    z = center(g)
    # abelian: conjugation module trivial, H^1 of C2 with trivial F2 is 1-dim;
    # instead use the regular-like configuration with zero H^1: quotient by G.
    full = Subgroup(g, np.arange(4), check=False)
    cm = module_from_conjugation(g, full, omega1(g, z))
    sp = cohomology(cm.module.group, cm.module, 1)
    res = derivation_span_noninner_probe(g, cm, sp)
    assert not res.found


def test_h1_dim_of_submodule_free_is_zero():
    g = from_pc_presentation(pres_d8())
    fb = FreeBimodule(g, 1)
    full = free_submodule_closure(fb, np.eye(8, dtype=np.int64), "right")
    assert h1_dim_of_submodule(fb, full) == 0
