import math

import pytest

from parahoric.concave import (
    ConcaveFunction,
    generated_function,
    minimal_overgroup,
    pseudo_borel_function,
)
from parahoric.groups.checks import (
    lu_factor,
    verify_exterior_class_absorption,
    verify_product_representatives,
    verify_overgroup_classification,
    verify_parahoric_axioms,
    verify_pseudo_borel_conjugacy,
    verify_rank1_classes,
    verify_reduction_kernel,
)
from parahoric.groups.cosets import (
    FlagSpace,
    brute_force_double_cosets,
    double_coset_count_flags,
    double_cosets,
    double_cosets_flags,
)
from parahoric.groups.group import GroupBuildError, build_group
from parahoric.groups.kernels import BudgetExceeded
from parahoric.groups.subgroups import (
    Subgroup,
    borel,
    mulclose,
    subgroup_from_concave,
    subgroup_gens,
)


def test_build_group_orders(sl2_9, sl2_25):
    assert sl2_9.order() == 648
    assert len(mulclose(sl2_9, sl2_9.gens())) == 648
    assert sl2_25.order() == 120 * 5**3
    g1 = build_group("A1", "sc", 3, 1)
    assert g1.order() == 24
    a2 = build_group("A2", "sc", 5, 2)
    assert a2.order() == 372000 * 5**8


def test_build_group_rejections():
    with pytest.raises(GroupBuildError):
        build_group("A1", "sc", 2, 2)
    with pytest.raises(GroupBuildError):
        build_group("A1", "sc", 9, 2)
    with pytest.raises(GroupBuildError):
        build_group("B2", "sc", 3, 2)
    with pytest.raises(GroupBuildError):
        build_group("C2", "adjoint", 3, 2)
    with pytest.raises(GroupBuildError):
        build_group("A2", "frobenius", 5, 2)
    # p = 3 for A2 is constructible (absorption hypotheses are checked separately)
    build_group("A2", "sc", 3, 2)


def test_valuation(sl2_9):
    alpha = (1,)
    assert sl2_9.valuation(sl2_9.u(alpha, 3), alpha) == 1
    assert sl2_9.valuation(sl2_9.u(alpha, 1), alpha) == 0
    assert sl2_9.valuation(sl2_9.u(alpha, 0), alpha) == math.inf
    with pytest.raises(ValueError):
        sl2_9.valuation(sl2_9.weyl_rep(alpha), alpha)


def test_subgroup_orders(sl2_9):
    fb = pseudo_borel_function(sl2_9.rs, 2)
    b = subgroup_from_concave(sl2_9, fb)
    assert b.order() == 54 == len(b.elements())
    whole = ConcaveFunction.make(sl2_9.rs, 2, {a: 0 for a in sl2_9.rs.roots})
    assert len(subgroup_from_concave(sl2_9, whole).elements()) == 648
    bd = subgroup_from_concave(sl2_9, generated_function(fb, {(-1,)}))
    assert bd.order() == 162


def test_subgroup_order_reverses_pointwise_order(sl2_9):
    fb = pseudo_borel_function(sl2_9.rs, 2)
    fa = minimal_overgroup(fb, (-1,))
    pb = frozenset(subgroup_from_concave(sl2_9, fb).elements())
    pa = frozenset(subgroup_from_concave(sl2_9, fa).elements())
    assert fa.leq(fb) and pa > pb


def test_flag_space_counts(flags_sl2_9, flags_pgl2_9, flags_sp4_9, flags_pgl3_25):
    assert len(flags_sl2_9) == 12
    assert len(flags_pgl2_9) == 12
    assert len(flags_sp4_9) == 12960
    assert len(flags_pgl3_25) == 23250


def test_flag_budget_refusal(sp4_9):
    with pytest.raises(BudgetExceeded):
        FlagSpace(sp4_9, budget=1000)


def test_double_cosets_match_brute_force(sl2_9, flags_sl2_9):
    """The flag route and the element-level partition agree on SL2(Z/9)."""
    g = sl2_9
    elements = mulclose(g, g.gens())
    fb = pseudo_borel_function(g.rs, 2)
    fd = generated_function(fb, {(-1,)})
    b_gens = subgroup_gens(g, fb)
    bd_gens = subgroup_gens(g, fd)
    cases = [(b_gens, fb), (b_gens, fd), (bd_gens, fb), (bd_gens, fd)]
    for left_gens, right_f in cases:
        flag_count = double_coset_count_flags(flags_sl2_9, left_gens, right_f)
        brute = brute_force_double_cosets(
            g, elements, left_gens, subgroup_gens(g, right_f)
        )
        assert flag_count == brute
    assert double_coset_count_flags(flags_sl2_9, b_gens, fb) == 4


def test_double_cosets_swap_symmetry(sl2_9, flags_sl2_9):
    g = sl2_9
    fb = pseudo_borel_function(g.rs, 2)
    fd = generated_function(fb, {(-1,)})
    ab = double_coset_count_flags(flags_sl2_9, subgroup_gens(g, fb), fd)
    ba = double_coset_count_flags(flags_sl2_9, subgroup_gens(g, fd), fb)
    assert ab == ba == 2


def test_double_cosets_trivial_cases(sl2_9, flags_sl2_9):
    g = sl2_9
    whole = ConcaveFunction.make(g.rs, 2, {a: 0 for a in g.rs.roots})
    assert double_coset_count_flags(flags_sl2_9, g.gens(), whole) == 1
    table = double_cosets(
        g,
        subgroup_from_concave(g, whole, name="G"),
        subgroup_from_concave(g, whole, name="G"),
        flags=flags_sl2_9,
    )
    assert table.count == 1 and len(table.representatives) == 1


def test_double_cosets_fallback_route(sl2_9, flags_sl2_9):
    """A right side not containing B takes the element-level route; the
    count must match the flag route with the sides swapped."""
    g = sl2_9
    fb = pseudo_borel_function(g.rs, 2)
    b = subgroup_from_concave(g, fb, name="B")
    u_minus = Subgroup(g, [g.u((-1,), 1)], name="U-")
    via_elements = double_cosets(g, b, u_minus)
    assert via_elements.representatives == []  # element route: count only
    # swap: U- on the left, B on the right goes through the flag space
    swapped = double_coset_count_flags(flags_sl2_9, u_minus.gens, fb)
    assert via_elements.count == swapped


def test_double_cosets_representatives_deterministic(sl2_9, flags_sl2_9):
    g = sl2_9
    fb = pseudo_borel_function(g.rs, 2)
    t1 = double_cosets_flags(flags_sl2_9, subgroup_gens(g, fb), fb)
    t2 = double_cosets_flags(flags_sl2_9, subgroup_gens(g, fb), fb)
    assert t1.representatives == t2.representatives
    assert t1.count == 4


def test_counts_independent_of_generating_description(sl2_9, flags_sl2_9):
    """Double-coset counts agree whether a side is described by its concave
    generators or by its full element list."""
    g = sl2_9
    fb = pseudo_borel_function(g.rs, 2)
    fd = generated_function(fb, {(-1,)})
    bd_elements = sorted(subgroup_from_concave(g, fd).elements())
    lean = double_coset_count_flags(flags_sl2_9, subgroup_gens(g, fd), fb)
    fat = double_coset_count_flags(flags_sl2_9, bd_elements, fb)
    assert lean == fat == 2


def test_inclusion_matches_pointwise_order():
    """f <= f' pointwise iff P_f contains P_f', across whole intervals."""
    from parahoric.concave import enumerate_overgroups

    cases = [build_group("A1", "sc", 3, 3), build_group("A2", "sc", 3, 2)]
    for g in cases:
        fb = pseudo_borel_function(g.rs, g.h)
        fs = enumerate_overgroups(fb)
        if g.rs.rank > 1:
            fs = [f for f in fs if f.is_solvable()]  # keep closures small
        sets = {f.values: frozenset(subgroup_from_concave(g, f).elements())
                for f in fs}
        for f1 in fs:
            for f2 in fs:
                assert f1.leq(f2) == (sets[f1.values] >= sets[f2.values])


def test_lu_factor(sl2_9):
    g = sl2_9
    m = g.mul(g.u((1,), 4), g.mul(g.coroot((1,), 2), g.u((-1,), 6)))
    l, d, u = lu_factor(g, m)
    assert g.mul(g.mul(l, d), u) == m
    with pytest.raises(ValueError):
        lu_factor(g, g.weyl_rep((1,)))


@pytest.mark.parametrize("args", [("A1", "sc", 3, 2), ("A1", "adjoint", 3, 2),
                                  ("A1", "sc", 5, 2), ("A1", "sc", 3, 1)])
def test_parahoric_axioms_small(args):
    report = verify_parahoric_axioms(build_group(*args))
    assert report["pass"], report["failures"][:5]


def test_rank1_classes(sl2_9, pgl2_9):
    assert verify_rank1_classes(sl2_9)["pass"]
    assert verify_rank1_classes(pgl2_9)["pass"]
    with pytest.raises(ValueError):
        verify_rank1_classes(build_group("A2", "sc", 5, 2))


def test_absorption_small(sl2_9, flags_sl2_9):
    report = verify_exterior_class_absorption(sl2_9, flags=flags_sl2_9)
    assert report["pass"]
    assert report["results"]["B"]["exterior_classes"] == 1


def test_absorption_hypothesis_rejection():
    with pytest.raises(ValueError):
        verify_exterior_class_absorption(build_group("A2", "sc", 3, 2))


def test_product_representatives_equal_and_mixed_moduli(sl2_9, sl2_25):
    report = verify_product_representatives([sl2_9, sl2_9], [1, 1])
    assert report["pass"] and report["classes"] == 9
    # one factor trivial (Borel-level) reduces to the rank-1 statement
    report = verify_product_representatives([sl2_9, sl2_9], [2, 1])
    assert report["pass"] and report["classes"] == 3
    # mixed moduli at reduced budget: 1 x 5 factor-wise representatives
    report = verify_product_representatives([sl2_9, sl2_25], [2, 1])
    assert report["pass"] and report["classes"] == 5


def test_overgroup_classification(sl2_9, pgl2_9):
    r = verify_overgroup_classification(sl2_9)
    assert r["matches"] and r["interval_size"] == 3
    assert not r["self_normalizing"]  # N(B) = P_1 in SL2(Z/9); see the ledger
    r = verify_overgroup_classification(pgl2_9)
    assert r["matches"] and r["self_normalizing"] and r["pass"]
    r = verify_overgroup_classification(build_group("A1", "sc", 3, 3))
    assert r["matches"] and r["interval_size"] == 4


def test_pseudo_borel_conjugacy(sl2_9):
    assert verify_pseudo_borel_conjugacy(sl2_9)["pass"]
    assert verify_pseudo_borel_conjugacy(build_group("A2", "sc", 3, 2))["pass"]


def test_reduction_kernel():
    r = verify_reduction_kernel("A1", "sc", 3, 3)
    assert r["pass"] and r["kernel"] == 27
    r = verify_reduction_kernel("A1", "adjoint", 3, 2)
    assert r["pass"] and r["kernel"] == 27


def test_sp4_symplectic_and_weyl(sp4_9):
    g = sp4_9
    J = (0, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0, 0, 0)
    for a in g.rs.roots:
        assert g._is_symplectic(g.u(a, 5))
    for a in g.rs.simple_roots:
        assert g._is_symplectic(g.weyl_rep(a))


def test_root_values(sl2_9, pgl2_9):
    t = sl2_9.coroot((1,), 2)
    assert sl2_9.root_value(t, (1,)) == 4  # alpha(alpha_vee(t)) = t^2
    tg = pgl2_9.torus_gens()[0]
    assert pgl2_9.root_value(tg, (1,)) == pgl2_9.unit_gen
