import pytest

from normint import groups as G
from normint import lattices as L
from normint import subfactor as S
from normint.subfactor import DepthStatus, Verdict


def sn_group(n):
    cycle = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"
    return G.group_from_permutations(["(1 2)", cycle])


def sn_scenario(n):
    g = sn_group(n)
    cycle = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"
    a = G.subgroup_from_words(g, [cycle])
    if n == 2:
        b_words = []
    elif n == 3:
        b_words = ["(1 2)"]
    else:
        b_words = ["(1 2)", "(" + " ".join(str(i) for i in range(1, n)) + ")"]
    b = G.subgroup_from_words(g, b_words) if b_words else G.trivial_subgroup(g)
    return g, S.group_type(a, b, g)


# ---------------------------------------------------------------------------
# catalogs

def test_crossed_product_catalog_s3(s3):
    cat = S.intermediate_catalog(S.crossed_product(s3))
    assert len(cat) == 6
    assert cat[0].name == "N" and cat[-1].name == "M"


def test_intermediate_crossed_catalog(s3):
    a3 = G.subgroup_from_words(s3, ["(1 2 3)"])
    cat = S.intermediate_catalog(S.intermediate_crossed(a3, s3))
    assert [k.name for k in cat] == ["N", "M"]


def test_group_type_catalog_s5(s5):
    sigma = G.subgroup_from_words(s5, ["(1 2 3 4 5)"])
    s4_in = G.subgroup_from_words(s5, ["(1 2)", "(1 2 3 4)"])
    sc = S.group_type(sigma, s4_in, s5)
    cat = S.intermediate_catalog(sc)
    # |{A0 <= C5}| + |{H <= S4}| - 1 = 2 + 30 - 1
    assert len(cat) == 31
    names = [k.name for k in cat]
    assert names.count("N") == 1 and names.count("P") == 1 and names.count("M") == 1


def test_fixed_point_catalog_order_reversed(s3):
    cat = S.intermediate_catalog(S.fixed_point(s3))
    assert cat[0].name == "N" and cat[0].subgroup.size == 6
    assert cat[-1].name == "M" and cat[-1].subgroup.size == 1


def test_group_type_requires_generating_pair(s4):
    a = G.subgroup_from_words(s4, ["(1 2)"])
    b = G.subgroup_from_words(s4, ["(3 4)"])
    with pytest.raises(ValueError, match="<A, B>"):
        S.group_type(a, b, s4)


def test_group_type_requires_trivial_intersection(s4):
    a = G.subgroup_from_words(s4, ["(1 2 3)"])
    with pytest.raises(ValueError, match="A & B"):
        S.group_type(a, a, s4)


# ---------------------------------------------------------------------------
# normality dispatch

def test_crossed_product_normality(s3):
    sc = S.crossed_product(s3)
    by_name = {k.name: k for k in S.intermediate_catalog(sc)}
    a3 = by_name["N x| <(1 2 3)>"]
    assert S.is_normal_intermediate(sc, a3).verdict is Verdict.YES
    t = by_name["N x| <(1 2)>"]
    assert S.is_normal_intermediate(sc, t).verdict is Verdict.NO


def test_sn_crossed_by_alternating(s5):
    _, sc = sn_scenario(5)
    cat = S.intermediate_catalog(sc)
    a4_obj = next(
        k for k in cat if k.family == "crossed_by" and k.subgroup.size == 12
    )
    res = S.is_normal_intermediate(sc, a4_obj)
    assert res.verdict is Verdict.YES


def test_s4_scenario_alternating_not_normal():
    _, sc = sn_scenario(4)
    cat = S.intermediate_catalog(sc)
    a3_obj = next(
        k for k in cat if k.family == "crossed_by" and k.subgroup.size == 3
    )
    res = S.is_normal_intermediate(sc, a3_obj)
    assert res.verdict is Verdict.NO
    assert res.witness is not None  # product-set inequality witness


def test_group_type_fixed_family_not_covered(s5):
    _, sc = sn_scenario(5)
    cat = S.intermediate_catalog(sc)
    n_obj = next(k for k in cat if k.name == "N")
    assert S.is_normal_intermediate(sc, n_obj).verdict is Verdict.YES
    # C5 has no proper nontrivial subgroups, so exercise the not-covered path
    # on an S4-based scenario where A = <(1 2 3 4)> has a proper subgroup
    g4 = sn_group(4)
    c4 = G.subgroup_from_words(g4, ["(1 2 3 4)"])
    s3_in = G.subgroup_from_words(g4, ["(1 2)", "(1 2 3)"])
    sc4 = S.group_type(c4, s3_in, g4)
    cat4 = S.intermediate_catalog(sc4)
    proper_fixed = [
        k for k in cat4 if k.family == "fixed_by" and 1 < k.subgroup.size < c4.size
    ]
    assert proper_fixed
    for k in proper_fixed:
        res = S.is_normal_intermediate(sc4, k)
        assert res.verdict is Verdict.NOT_COVERED
        assert "permutes_with_b" in res.details


def test_mismatched_scenario_rejected(s3, s4):
    sc3 = S.crossed_product(s3)
    sc4 = S.crossed_product(s4)
    k = S.intermediate_catalog(sc4)[0]
    with pytest.raises(ValueError):
        S.is_normal_intermediate(sc3, k)


# ---------------------------------------------------------------------------
# quasi-normality

def test_quasi_normal_basics(s3):
    sc = S.crossed_product(s3)
    cat = S.intermediate_catalog(sc)
    by_name = {k.name: k for k in cat}
    assert S.is_quasi_normal(sc, by_name["N"], cat) is Verdict.YES
    assert S.is_quasi_normal(sc, by_name["M"], cat) is Verdict.YES
    assert S.is_quasi_normal(sc, by_name["N x| <(1 2 3)>"], cat) is Verdict.YES
    assert S.is_quasi_normal(sc, by_name["N x| <(1 2)>"], cat) is Verdict.NO


def test_quasi_normal_unsupported_for_group_type(s5):
    _, sc = sn_scenario(5)
    cat = S.intermediate_catalog(sc)
    assert S.is_quasi_normal(sc, cat[0], cat) is Verdict.UNSUPPORTED


def test_normal_implies_quasi_normal_corpus(s3, s4, d4, q8, a4):
    for grp in (s3, s4, d4, q8, a4):
        for sc in (S.crossed_product(grp), S.fixed_point(grp)):
            cat = S.intermediate_catalog(sc)
            for k in cat:
                if S.is_normal_intermediate(sc, k).verdict is Verdict.YES:
                    assert S.is_quasi_normal(sc, k, cat) is Verdict.YES


def test_normal_implies_quasi_normal_intermediate_kinds(s4):
    for h_words in (["(1 2 3 4)"], ["(1 2)(3 4)", "(1 3)(2 4)"], ["(1 2 3)"]):
        h = G.subgroup_from_words(s4, h_words)
        for sc in (S.intermediate_crossed(h, s4), S.intermediate_fixed(h, s4)):
            cat = S.intermediate_catalog(sc)
            for k in cat:
                if S.is_normal_intermediate(sc, k).verdict is Verdict.YES:
                    assert S.is_quasi_normal(sc, k, cat) is Verdict.YES


# ---------------------------------------------------------------------------
# lattice reports

def test_s4_crossed_report(s4):
    rep = S.normal_sublattice_report(S.crossed_product(s4))
    assert len(rep.catalog) == 30
    normal_sizes = sorted(rep.catalog[i].subgroup.size for i in rep.normal_indices)
    assert normal_sizes == [1, 4, 12, 24]
    assert rep.is_sublattice and rep.modular
    assert rep.chain_lengths == {3: 1}
    assert rep.catalog_complete
    full_modular, witness = L.is_modular(rep.lattice)
    assert not full_modular and witness is not None


def test_sn_reports_lengths():
    expected = {3: {2: 1}, 4: {2: 1}, 5: {3: 1}}
    for n, chains in expected.items():
        _, sc = sn_scenario(n)
        rep = S.normal_sublattice_report(sc)
        assert rep.chain_lengths == chains, f"n={n}"
        assert rep.is_sublattice and rep.modular
        assert not rep.catalog_complete


def test_duality_crossed_vs_fixed(s3, s4, d4, q8, a4):
    for grp in (s3, s4, d4, q8, a4):
        crossed = S.normal_sublattice_report(S.crossed_product(grp))
        fixed = S.normal_sublattice_report(S.fixed_point(grp))
        crossed_normal = {
            crossed.catalog[i].subgroup.members for i in crossed.normal_indices
        }
        fixed_normal = {
            fixed.catalog[i].subgroup.members for i in fixed.normal_indices
        }
        assert crossed_normal == fixed_normal


def test_restriction_property_s4(s4):
    # normality in the widest scenario restricts to every smaller one
    subs = G.enumerate_subgroups(s4)
    for h in subs:
        sc = S.intermediate_crossed(h, s4)
        cat = S.intermediate_catalog(sc)
        for k in cat:
            if S.is_normal_intermediate(sc, k).verdict is not Verdict.YES:
                continue
            for g0 in G.subgroups_between(k.subgroup, s4):
                ok, _ = G.double_coset_condition(k.subgroup, h, s4, within=g0)
                assert ok


def test_group_type_counts_agree_with_product_sets(s3, s4, d4, a4):
    # whenever G = AB exactly, equality of the two intersection counts is the
    # same condition as AH = HA, for every H below B
    from normint.fusion import group_type_counts

    for grp in (s3, s4, d4, a4):
        subs = G.enumerate_subgroups(grp)
        for a in subs:
            for b in subs:
                if not G.exact_factorization_check(grp, a, b):
                    continue
                for h in G.enumerate_subgroups(grp, within=b):
                    counts = group_type_counts(a, b, h, grp)
                    permutes = G.product_set(grp, a, h) == G.product_set(grp, h, a)
                    assert (counts["ah_ba"] == counts["ah_ha"]) == permutes


def test_depth2_status(s3, s5):
    assert S.depth2_status(S.crossed_product(s3)) is DepthStatus.DEPTH2
    assert S.depth2_status(S.fixed_point(s3)) is DepthStatus.DEPTH2
    _, sc5 = sn_scenario(5)
    assert S.depth2_status(sc5) is DepthStatus.DEPTH2
    a3 = G.subgroup_from_words(s3, ["(1 2 3)"])
    assert S.depth2_status(S.intermediate_crossed(a3, s3)) is DepthStatus.UNKNOWN
    t = G.subgroup_from_words(s3, ["(1 2)"])
    assert S.depth2_status(S.intermediate_crossed(t, s3)) is DepthStatus.UNKNOWN


# ---------------------------------------------------------------------------
# crosschecks and tensor scenarios

def test_hopf_crosscheck_s3_fixed(s3):
    rep = S.hopf_crosscheck(S.fixed_point(s3))
    assert rep.all_pass
    normal_orders = sorted(r.subgroup_order for r in rep.rows if r.group_normal)
    assert normal_orders == [1, 3, 6]


def test_hopf_crosscheck_q8_all_normal(q8):
    rep = S.hopf_crosscheck(S.fixed_point(q8))
    assert rep.all_pass
    assert all(r.group_normal for r in rep.rows)


def test_hopf_crosscheck_c2(c2):
    rep = S.hopf_crosscheck(S.crossed_product(c2))
    assert rep.all_pass
    assert all(r.group_normal for r in rep.rows)


def test_hopf_crosscheck_wrong_kind(s5):
    _, sc = sn_scenario(5)
    with pytest.raises(ValueError):
        S.hopf_crosscheck(sc)


def test_tensor_scenario_factors_normal(s3, c2):
    sc = S.tensor_scenario(S.crossed_product(s3), S.crossed_product(c2))
    assert sc.group.order == 12


def test_tensor_scenario_c2_c2_all_normal(c2):
    sc = S.tensor_scenario(S.crossed_product(c2), S.crossed_product(c2))
    rep = S.normal_sublattice_report(sc)
    assert len(rep.catalog) == 5
    assert len(rep.normal_indices) == 5


def test_tensor_scenario_s3_s3_partial(s3):
    sc = S.tensor_scenario(S.crossed_product(s3), S.crossed_product(s3))
    cat = S.intermediate_catalog(sc)
    # <(1 2)> x {e} is not normal in S3 x S3
    left_transposition = next(
        k
        for k in cat
        if k.subgroup.size == 2
        and all(i % s3.order == s3.identity for i in k.subgroup.indices)
    )
    assert S.is_normal_intermediate(sc, left_transposition).verdict is Verdict.NO


def test_tensor_scenario_kind_mismatch(s3):
    with pytest.raises(ValueError):
        S.tensor_scenario(S.crossed_product(s3), S.fixed_point(s3))
