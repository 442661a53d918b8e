"""Character tables and representation-ring operations against scalar oracles.

The oracles here use only the scalar Cyclotomic class and elementwise sums,
never the batched kernel engine, so the two arithmetic paths check each other.
"""

import numpy as np
import pytest

from conftest import group_with_lambda
from ksphere.characters import (
    CharacterTheoryError,
    VirtualCharacter,
    character_table,
    conjugate_twist,
    g_orbits_on_irr,
    inner_product,
    induce,
    lambda_context,
    restrict,
    tensor_product,
)
from ksphere.cyclotomic import Cyclotomic
from ksphere.groups import GroupSpec, build_group, kernel_embedding


def scalar_values(vc: VirtualCharacter):
    """Per-element values of a virtual character via scalar arithmetic only."""
    table = vc.table
    m = table.modulus
    cls = table.classes
    out = []
    for x in range(table.group.order):
        j = int(cls.class_of[x])
        total = Cyclotomic.integer(m, 0)
        for c, coeff in enumerate(vc.coeffs):
            if coeff:
                total = total + table.irreducibles[c].values[j] * coeff
        out.append(total)
    return out


def scalar_inner_over_elements(table, avals, bvals):
    """Oracle <a, b> = |G|^-1 sum_x a(x) conj(b(x)) with scalar cyclotomics."""
    m = max(v.modulus for v in avals + bvals)
    total = Cyclotomic.integer(m, 0)
    for a, b in zip(avals, bvals):
        total = total + a.embed(m) * b.embed(m).conjugate()
    return total.divide_exact(table.group.order)


def frobenius_induced_values(emb, hvals):
    """Oracle: ind(f)(g) = |H|^-1 sum_{x in G, x^-1 g x in H} f(x^-1 g x)."""
    g = emb.ambient
    m_g = character_table(g).modulus
    pos = {amb: i for i, amb in enumerate(emb.inclusion)}
    out = []
    for gg in range(g.order):
        total = Cyclotomic.integer(m_g, 0)
        for x in range(g.order):
            conj = int(g.product[g.product[g.inverse[x], gg], x])
            if conj in pos:
                total = total + hvals[pos[conj]].embed(m_g)
        out.append(total.divide_exact(emb.subgroup.order))
    return out


# -- tables -------------------------------------------------------------------


def test_cyclic3_table_rows_exactly():
    t = build_group(GroupSpec.cyclic(3))
    tab = character_table(t)
    w = Cyclotomic.zeta(3)
    one = Cyclotomic.integer(3, 1)
    rows = [tuple(cf.values) for cf in tab.irreducibles]
    assert rows[0] == (one, one, one)
    assert rows[1] == (one, w, w * w)
    assert rows[2] == (one, w * w, w)


def test_symmetric3_table():
    t = build_group(GroupSpec.symmetric(3))
    tab = character_table(t)
    assert tab.degrees == (1, 1, 2)
    two_row = [v.as_int() for v in tab.irreducibles[2].values]
    assert two_row == [2, 0, -1]  # classes: identity, transpositions, 3-cycles


def test_quaternion_degrees():
    tab = character_table(build_group(GroupSpec.quaternion(8)))
    assert tab.degrees == (1, 1, 1, 1, 2)
    assert sum(d * d for d in tab.degrees) == 8


def test_tables_are_deterministic():
    a = character_table(build_group(GroupSpec.dihedral(6)))
    b = character_table(build_group(GroupSpec.dihedral(6)))
    assert np.array_equal(a.values, b.values)
    assert a.degrees == b.degrees


@pytest.mark.parametrize("n", range(1, 13))
def test_cyclic_tables_pass_scalar_orthogonality(n):
    tab = character_table(build_group(GroupSpec.cyclic(n)))
    for i in range(tab.count):
        for j in range(tab.count):
            ip = inner_product(tab.irreducibles[i], tab.irreducibles[j])
            assert ip == Cyclotomic.integer(tab.modulus, 1 if i == j else 0)


def test_symmetric4_table_passes_scalar_orthogonality():
    tab = character_table(build_group(GroupSpec.symmetric(4)))
    assert tab.degrees == (1, 1, 2, 3, 3)
    for i in range(tab.count):
        for j in range(i, tab.count):
            ip = inner_product(tab.irreducibles[i], tab.irreducibles[j])
            assert ip.is_rational_integer and ip.as_int() == (1 if i == j else 0)


# -- inner products -----------------------------------------------------------


def test_inner_product_examples():
    t = build_group(GroupSpec.symmetric(3))
    tab = character_table(t)
    trivial = VirtualCharacter.unit(tab, tab.trivial_index)
    regular = VirtualCharacter(tab, tab.degrees)
    ip = inner_product(trivial.as_class_function(), regular.as_class_function())
    assert ip.as_int() == 1
    two = VirtualCharacter.unit(tab, 2)
    vals = scalar_values(two)
    oracle = scalar_inner_over_elements(tab, vals, vals)
    assert oracle.as_int() == 1
    assert inner_product(two.as_class_function(), two.as_class_function()).as_int() == 1


def test_inner_product_rejects_mismatched_groups():
    a = character_table(build_group(GroupSpec.cyclic(3)))
    b = character_table(build_group(GroupSpec.cyclic(4)))
    with pytest.raises(CharacterTheoryError):
        inner_product(a.irreducibles[0], b.irreducibles[0])


# -- restriction --------------------------------------------------------------


def test_restrict_trivial_is_trivial():
    t, lam = group_with_lambda(GroupSpec.symmetric(3), "sign")
    emb = kernel_embedding(t, lam)
    tab_g = character_table(t)
    tab_h = character_table(emb.subgroup)
    res = restrict(VirtualCharacter.unit(tab_g, tab_g.trivial_index), emb)
    assert res == VirtualCharacter.unit(tab_h, tab_h.trivial_index)


def test_restrict_degree2_of_s3_splits_into_both_nontrivial():
    t, lam = group_with_lambda(GroupSpec.symmetric(3), "sign")
    emb = kernel_embedding(t, lam)
    tab_g = character_table(t)
    res = restrict(VirtualCharacter.unit(tab_g, 2), emb)
    assert res.coeffs == (0, 1, 1)


def test_restrict_lambda_character_is_trivial():
    for spec, conv in [
        (GroupSpec.symmetric(3), "sign"),
        (GroupSpec.dihedral(4), "reflection-sign"),
        (GroupSpec.cyclic(6), "onto-pm1"),
    ]:
        t, lam = group_with_lambda(spec, conv)
        ctx = lambda_context(t, lam)
        res = restrict(VirtualCharacter.unit(ctx.table_g, ctx.lambda_index), ctx.emb)
        assert res == VirtualCharacter.unit(ctx.table_h, ctx.table_h.trivial_index)


# -- induction ----------------------------------------------------------------


def test_induce_matches_frobenius_oracle():
    for spec, conv in [
        (GroupSpec.symmetric(3), "sign"),
        (GroupSpec.dihedral(4), "reflection-sign"),
        (GroupSpec.quaternion(8), "onto-pm1"),
    ]:
        t, lam = group_with_lambda(spec, conv)
        emb = kernel_embedding(t, lam)
        tab_h = character_table(emb.subgroup)
        for c in range(tab_h.count):
            chi = VirtualCharacter.unit(tab_h, c)
            ind = induce(chi, emb)
            got = scalar_values(ind)
            hvals = scalar_values(chi)
            expect = frobenius_induced_values(emb, hvals)
            assert got == expect


def test_induce_trivial_is_trivial_plus_lambda():
    t, lam = group_with_lambda(GroupSpec.symmetric(3), "sign")
    ctx = lambda_context(t, lam)
    ind = induce(VirtualCharacter.unit(ctx.table_h, ctx.table_h.trivial_index), ctx.emb)
    expect = [0] * ctx.table_g.count
    expect[ctx.table_g.trivial_index] += 1
    expect[ctx.lambda_index] += 1
    assert list(ind.coeffs) == expect


def test_induce_omega_of_cyclic3_is_degree2():
    t, lam = group_with_lambda(GroupSpec.symmetric(3), "sign")
    ctx = lambda_context(t, lam)
    ind = induce(VirtualCharacter.unit(ctx.table_h, 1), ctx.emb)
    assert ind.coeffs == (0, 0, 1)
    vals = [v.as_int() for v in ind.as_class_function().values]
    assert vals == [2, 0, -1]


def test_induce_regular_is_regular():
    t, lam = group_with_lambda(GroupSpec.dihedral(4), "reflection-sign")
    ctx = lambda_context(t, lam)
    reg_h = VirtualCharacter(ctx.table_h, ctx.table_h.degrees)
    ind = induce(reg_h, ctx.emb)
    assert ind.coeffs == ctx.table_g.degrees


def test_frobenius_reciprocity_property():
    for spec, conv in [
        (GroupSpec.symmetric(3), "sign"),
        (GroupSpec.dihedral(6), "reflection-sign"),
        (GroupSpec.cyclic(2), "onto-pm1"),
        (GroupSpec.quaternion(8), "onto-pm1"),
    ]:
        t, lam = group_with_lambda(spec, conv)
        ctx = lambda_context(t, lam)
        for i in range(ctx.table_h.count):
            ind = induce(VirtualCharacter.unit(ctx.table_h, i), ctx.emb)
            for a in range(ctx.table_g.count):
                res = restrict(VirtualCharacter.unit(ctx.table_g, a), ctx.emb)
                assert ind.coeffs[a] == res.coeffs[i]


# -- twist ----------------------------------------------------------------


def test_twist_by_subgroup_element_fixes_everything():
    t, lam = group_with_lambda(GroupSpec.symmetric(3), "sign")
    ctx = lambda_context(t, lam)
    for h_amb in ctx.emb.inclusion:
        for c in range(ctx.table_h.count):
            chi = VirtualCharacter.unit(ctx.table_h, c)
            assert conjugate_twist(chi, ctx.emb, h_amb) == chi


def test_twist_by_identity_fixes_everything():
    t, lam = group_with_lambda(GroupSpec.dihedral(5), "reflection-sign")
    ctx = lambda_context(t, lam)
    chi = VirtualCharacter(ctx.table_h, tuple(range(ctx.table_h.count)))
    assert conjugate_twist(chi, ctx.emb, 0) == chi


def test_twist_swaps_omega_characters_of_cyclic3():
    t, lam = group_with_lambda(GroupSpec.symmetric(3), "sign")
    ctx = lambda_context(t, lam)
    b = ctx.cosets[0]
    omega = VirtualCharacter.unit(ctx.table_h, 1)
    omega2 = VirtualCharacter.unit(ctx.table_h, 2)
    assert conjugate_twist(omega, ctx.emb, b) == omega2
    assert conjugate_twist(omega2, ctx.emb, b) == omega


def test_twist_is_involution_and_b_independent():
    for spec, conv in [
        (GroupSpec.dihedral(6), "reflection-sign"),
        (GroupSpec.quaternion(8), "onto-pm1"),
        (GroupSpec.symmetric(4), "sign"),
    ]:
        t, lam = group_with_lambda(spec, conv)
        ctx = lambda_context(t, lam)
        sigma = ctx.twist
        assert np.array_equal(sigma[sigma], np.arange(ctx.table_h.count))
        for b in ctx.cosets:
            other = lambda_context(t, lam, b=b)
            assert np.array_equal(other.twist, sigma)


def test_twist_matches_brute_value_permutation():
    t, lam = group_with_lambda(GroupSpec.dihedral(4), "reflection-sign")
    ctx = lambda_context(t, lam)
    b = ctx.b
    binv = int(t.inverse[b])
    pos = {amb: i for i, amb in enumerate(ctx.emb.inclusion)}
    for c in range(ctx.table_h.count):
        chi = ctx.table_h.irreducibles[c]
        twisted_idx = int(ctx.twist[c])
        twisted = ctx.table_h.irreducibles[twisted_idx]
        for i, rep in enumerate(ctx.table_h.classes.representatives):
            amb = ctx.emb.inclusion[rep]
            conj = pos[int(t.product[t.product[binv, amb], b])]
            j = int(ctx.table_h.classes.class_of[conj])
            assert twisted.values[i] == chi.values[j]


# -- orbits ---------------------------------------------------------------


def test_abelian_orbits_all_fixed():
    t, lam = group_with_lambda(GroupSpec.cyclic(8), "onto-pm1")
    data = g_orbits_on_irr(t, lam)
    assert all(iso == "G" for iso in data.isotropy)
    assert all(len(o) == 1 for o in data.orbits)


def test_symmetric3_orbits():
    t, lam = group_with_lambda(GroupSpec.symmetric(3), "sign")
    data = g_orbits_on_irr(t, lam)
    assert data.orbits == ((0,), (1, 2))
    assert data.isotropy == ("G", "H")
    assert data.representatives == (0, 1)


def test_dihedral4_orbits():
    t, lam = group_with_lambda(GroupSpec.dihedral(4), "reflection-sign")
    data = g_orbits_on_irr(t, lam)
    fixed = [o[0] for o, iso in zip(data.orbits, data.isotropy) if iso == "G"]
    swapped = [o for o, iso in zip(data.orbits, data.isotropy) if iso == "H"]
    assert len(fixed) == 2 and len(swapped) == 1
    assert len(swapped[0]) == 2


# -- ring products ---------------------------------------------------------


def test_tensor_product_matches_scalar_values():
    tab = character_table(build_group(GroupSpec.symmetric(4)))
    rng = np.random.default_rng(5)
    for _ in range(20):
        a = VirtualCharacter(tab, tuple(rng.integers(-3, 4, tab.count)))
        b = VirtualCharacter(tab, tuple(rng.integers(-3, 4, tab.count)))
        prod = tensor_product(a, b)
        va, vb, vp = scalar_values(a), scalar_values(b), scalar_values(prod)
        assert all(x * y == z for x, y, z in zip(va, vb, vp))


def test_tensor_product_rejects_cross_table():
    a = character_table(build_group(GroupSpec.cyclic(3)))
    b = character_table(build_group(GroupSpec.cyclic(4)))
    with pytest.raises(CharacterTheoryError):
        tensor_product(VirtualCharacter.unit(a, 0), VirtualCharacter.unit(b, 0))


def test_virtual_character_algebra():
    tab = character_table(build_group(GroupSpec.dihedral(4)))
    a = VirtualCharacter(tab, (1, 0, -2, 0, 1))
    b = VirtualCharacter(tab, (0, 1, 1, 0, 0))
    assert (a + b) - b == a
    assert (-a).coeffs == tuple(-c for c in a.coeffs)
    assert (a * b).degree() == a.degree() * b.degree()
