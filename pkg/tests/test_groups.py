import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from normint import groups as G
from normint.permutations import parse_cycles

from .oracles import (
    brute_product_set,
    closure_brute,
    subgroups_by_subsets,
    subgroups_by_triples,
)


# ---------------------------------------------------------------------------
# construction

def test_c2_from_single_transposition(c2):
    assert c2.order == 2
    assert c2.labels == ("e", "(1 2)")


def test_s3_order_forced(s3):
    assert s3.order == 6


def test_s5_closure_terminates_at_120(s5):
    # oracle: independent worklist closure over permutation tuples
    gens = [parse_cycles("(1 2)", 5), parse_cycles("(1 2 3 4 5)", 5)]
    assert len(closure_brute(gens)) == 120
    assert s5.order == 120
    assert set(s5.perms) == closure_brute(gens)


def test_identity_is_element_zero(s4):
    assert s4.identity == 0
    assert s4.labels[0] == "e"


def test_canonical_order_reproducible(s4):
    again = G.group_from_permutations(["(1 2)", "(1 2 3 4)"])
    assert again.labels == s4.labels
    assert np.array_equal(again.table, s4.table)


def test_table_invariants(s4):
    n = s4.order
    assert s4.table.min() >= 0 and s4.table.max() < n
    for i in range(n):
        assert s4.mul(i, s4.identity) == i
        assert s4.mul(s4.identity, i) == i
        assert s4.mul(i, s4.inv(i)) == s4.identity


def test_order_cap():
    with pytest.raises(G.OrderCapExceeded):
        G.group_from_permutations(["(1 2)", "(1 2 3 4 5)"], cap=60)


def test_malformed_generator_rejected():
    with pytest.raises(ValueError):
        G.group_from_permutations(["(1 2"])


# ---------------------------------------------------------------------------
# direct products

def test_direct_product_c2_c2(c2):
    p = G.direct_product(c2, c2)
    assert p.order == 4
    # exponent 2: every element is its own inverse
    assert all(p.inv(i) == i for i in range(4))


def test_direct_product_s3_c2(s3, c2):
    p = G.direct_product(s3, c2)
    assert p.order == 12
    left, right = G.product_embeddings(p, s3, c2)
    assert left.size == 6 and right.size == 2
    assert G.is_normal_subgroup(left, p) and G.is_normal_subgroup(right, p)


def test_direct_product_with_trivial_is_same_table(s3):
    triv = G.group_from_permutations([], degree=1)
    p = G.direct_product(s3, triv)
    assert p.order == s3.order
    assert np.array_equal(p.table, s3.table)


# ---------------------------------------------------------------------------
# subgroup enumeration

def test_s3_subgroups_match_subset_oracle(s3):
    oracle = subgroups_by_subsets([list(r) for r in s3.table], s3.identity)
    got = {s.members for s in G.enumerate_subgroups(s3)}
    assert got == oracle
    assert len(got) == 6


def test_c4_subgroups(c4):
    subs = G.enumerate_subgroups(c4)
    assert [s.size for s in subs] == [1, 2, 4]


def test_a4_subgroups_match_subset_oracle(a4):
    oracle = subgroups_by_subsets([list(r) for r in a4.table], a4.identity)
    got = {s.members for s in G.enumerate_subgroups(a4)}
    assert got == oracle
    assert len(got) == 10


def test_s4_subgroups_match_triple_oracle(s4):
    oracle = subgroups_by_triples([list(r) for r in s4.table], s4.identity)
    got = {s.members for s in G.enumerate_subgroups(s4)}
    assert got == oracle
    assert len(got) == 30


def test_enumeration_is_sorted_and_duplicate_free(s4):
    subs = G.enumerate_subgroups(s4)
    keys = [(s.size, s.indices) for s in subs]
    assert keys == sorted(keys)
    assert len({s.members for s in subs}) == len(subs)


def test_subgroup_lagrange_guard(s3):
    with pytest.raises(ValueError):
        G.Subgroup(s3, frozenset({0, 1, 2}))  # e, (1 2), (1 2 3): not closed


def test_subgroups_between_full_range(s3):
    triv = G.trivial_subgroup(s3)
    between = G.subgroups_between(triv, s3)
    assert len(between) == 6


def test_subgroups_between_h_equals_g(s3):
    full = G.full_subgroup(s3)
    between = G.subgroups_between(full, s3)
    assert len(between) == 1 and between[0].size == 6


def test_overgroups_of_five_cycle(s5):
    sigma = G.subgroup_from_words(s5, ["(1 2 3 4 5)"])
    over = G.subgroups_between(sigma, s5)
    # oracle: filter of the full enumeration
    full = [s for s in G.enumerate_subgroups(s5) if sigma.members <= s.members]
    assert {s.members for s in over} == {s.members for s in full}
    assert sorted(s.size for s in over) == [5, 10, 20, 60, 120]


def test_subgroups_between_rejects_noncontained(s4):
    h = G.subgroup_from_words(s4, ["(1 2 3 4)"])
    within = G.subgroup_from_words(s4, ["(1 2 3)"])
    with pytest.raises(ValueError):
        G.subgroups_between(h, s4, within=within)


# ---------------------------------------------------------------------------
# product sets

def test_product_with_trivial(s3):
    a = G.subgroup_from_words(s3, ["(1 2 3)"])
    assert G.product_set(s3, a, {s3.identity}) == a.members


def test_product_set_size_formula(s3):
    a = G.subgroup_from_words(s3, ["(1 2)"])
    b = G.subgroup_from_words(s3, ["(1 3)"])
    assert len(G.product_set(s3, a, b)) == 4


def test_sigma_times_s4_is_all_of_s5(s5):
    sigma = G.subgroup_from_words(s5, ["(1 2 3 4 5)"])
    s4_in = G.subgroup_from_words(s5, ["(1 2)", "(1 2 3 4)"])
    assert len(G.product_set(s5, sigma, s4_in)) == 120


def test_product_set_matches_brute(s4):
    table = [list(r) for r in s4.table]
    a = G.subgroup_from_words(s4, ["(1 2 3)"])
    b = G.subgroup_from_words(s4, ["(1 2 3 4)"])
    assert G.product_set(s4, a, b) == frozenset(
        brute_product_set(table, set(a.members), set(b.members))
    )


def test_product_set_law_exhaustive_s4(s4):
    subs = G.enumerate_subgroups(s4)
    for a in subs:
        for b in subs:
            ab = G.product_set(s4, a, b)
            assert len(ab) * len(a.members & b.members) == a.size * b.size


# ---------------------------------------------------------------------------
# normality and double cosets

def test_a3_normal_in_s3(s3):
    a3 = G.subgroup_from_words(s3, ["(1 2 3)"])
    assert G.is_normal_subgroup(a3, s3)


def test_transposition_not_normal_in_s3(s3):
    t = G.subgroup_from_words(s3, ["(1 2)"])
    assert not G.is_normal_subgroup(t, s3)


def test_everything_normal_in_abelian(c4, v4):
    for g in (c4, v4):
        for s in G.enumerate_subgroups(g):
            assert G.is_normal_subgroup(s, g)


def test_double_coset_trivial_cases(s3):
    t = G.subgroup_from_words(s3, ["(1 2)"])
    assert G.double_coset_condition(t, t, s3) == (True, None)
    full = G.full_subgroup(s3)
    assert G.double_coset_condition(full, t, s3) == (True, None)


def test_double_coset_s4_dihedral_over_c4(s4):
    # frozen from the brute-force oracle: AgH = HgA holds for all g here
    h = G.subgroup_from_words(s4, ["(1 2 3 4)"])
    a = G.subgroup_from_words(s4, ["(1 2 3 4)", "(1 3)"])
    assert G.double_coset_condition(a, h, s4) == (True, None)


def test_double_coset_failure_has_witness(s4):
    a = G.subgroup_from_words(s4, ["(1 2)"])
    h = G.subgroup_from_words(s4, ["(3 4)"])
    ok, witness = G.double_coset_condition(a, h, s4)
    assert not ok and witness is not None
    # witness really violates AgH = HgA
    agh = {s4.mul(s4.mul(x, witness), y) for x in a.indices for y in h.indices}
    hga = {s4.mul(s4.mul(y, witness), x) for x in a.indices for y in h.indices}
    assert agh != hga


def test_double_coset_swap_invariance(s4, d4, q8, a4):
    for grp in (s4, d4, q8, a4):
        subs = G.enumerate_subgroups(grp)
        for a in subs:
            for h in subs:
                assert (
                    G.double_coset_condition(a, h, grp)[0]
                    == G.double_coset_condition(h, a, grp)[0]
                )


def test_double_coset_restriction_s4(s4):
    # once AgH = HgA holds in G it holds in every subgroup between A and G
    subs = G.enumerate_subgroups(s4)
    for h in subs:
        overs = G.subgroups_between(h, s4)
        for a in overs:
            if not G.double_coset_condition(a, h, s4)[0]:
                continue
            for g0 in G.subgroups_between(a, s4):
                assert G.double_coset_condition(a, h, s4, within=g0)[0]


# ---------------------------------------------------------------------------
# exact factorizations and matched pairs

def test_exact_factorization_s3(s3):
    a = G.subgroup_from_words(s3, ["(1 2 3)"])
    b = G.subgroup_from_words(s3, ["(1 2)"])
    assert G.exact_factorization_check(s3, a, b)


def test_exact_factorization_s5(s5):
    sigma = G.subgroup_from_words(s5, ["(1 2 3 4 5)"])
    s4_in = G.subgroup_from_words(s5, ["(1 2)", "(1 2 3 4)"])
    assert G.exact_factorization_check(s5, sigma, s4_in)


def test_not_exact_factorization(s3):
    b = G.subgroup_from_words(s3, ["(1 2)"])
    assert not G.exact_factorization_check(s3, b, b)


def test_matched_pair_recomposition(s3):
    a = G.subgroup_from_words(s3, ["(1 2 3)"])
    b = G.subgroup_from_words(s3, ["(1 2)"])
    mp = G.matched_pair_from_factorization(s3, a, b)
    for x in a.indices:
        for y in b.indices:
            assert s3.mul(mp.act_alpha(x, y), mp.act_a_part(x, y)) == s3.mul(x, y)
    assert len(mp.alpha) == 6


def test_matched_pair_classical_beta_identity(s5):
    # ab = alpha_a(b) * beta_{b^-1}(a^-1)^-1 under the pinned convention
    a = G.subgroup_from_words(s5, ["(1 2 3 4 5)"])
    b = G.subgroup_from_words(s5, ["(1 2)", "(1 2 3 4)"])
    mp = G.matched_pair_from_factorization(s5, a, b)
    for x in a.indices:
        for y in b.indices:
            beta_val = mp.classical_beta(s5.inv(y), s5.inv(x))
            assert s5.mul(mp.act_alpha(x, y), s5.inv(beta_val)) == s5.mul(x, y)


def test_matched_pair_degenerate_sides(s3):
    triv = G.trivial_subgroup(s3)
    full = G.full_subgroup(s3)
    mp = G.matched_pair_from_factorization(s3, triv, full)
    for y in full.indices:
        assert mp.act_alpha(s3.identity, y) == y
    mp2 = G.matched_pair_from_factorization(s3, full, triv)
    for x in full.indices:
        assert s3.mul(mp2.act_alpha(x, s3.identity), mp2.act_a_part(x, s3.identity)) == x


def test_matched_pair_requires_factorization(s3):
    b = G.subgroup_from_words(s3, ["(1 2)"])
    with pytest.raises(ValueError):
        G.matched_pair_from_factorization(s3, b, b)


# ---------------------------------------------------------------------------
# serialization

def test_group_roundtrip(s4):
    text = G.write_group_text(s4)
    back = G.read_group_text(text)
    assert back.order == s4.order
    assert np.array_equal(back.table, s4.table)
    assert np.array_equal(back.inverse, s4.inverse)
    assert back.labels == s4.labels


def test_group_text_rejects_bad_header():
    with pytest.raises(ValueError):
        G.read_group_text("nonsense v0\norder 1\nrow 0\n")


def test_group_text_rejects_broken_table(s3):
    text = G.write_group_text(s3).replace("row 0 1", "row 0 0", 1)
    with pytest.raises(ValueError):
        G.read_group_text(text)


# ---------------------------------------------------------------------------
# properties

@settings(max_examples=25, deadline=None)
@given(st.data())
def test_product_set_associative(s4, data):
    subs = G.enumerate_subgroups(s4)
    a = data.draw(st.sampled_from(subs))
    b = data.draw(st.sampled_from(subs))
    c = data.draw(st.sampled_from(subs))
    ab_c = G.product_set(s4, G.product_set(s4, a, b), c.members)
    a_bc = G.product_set(s4, a.members, G.product_set(s4, b, c))
    assert ab_c == a_bc


@settings(max_examples=20, deadline=None)
@given(st.lists(st.permutations(list(range(5))), min_size=1, max_size=3))
def test_generated_group_is_closed(gens):
    g = G.group_from_permutations([tuple(p) for p in gens], degree=5, cap=200)
    closure = closure_brute([tuple(p) for p in gens])
    assert g.order == len(closure)
