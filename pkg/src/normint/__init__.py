"""Exact toolkit for normality of intermediate objects in finite inclusion
models: permutation groups, rational Hopf *-algebras, fusion data, finite
lattices, and the scenario layer tying them together."""

from .groups import (
    Group,
    MatchedPair,
    Subgroup,
    direct_product,
    double_coset_condition,
    enumerate_subgroups,
    exact_factorization_check,
    group_from_permutations,
    is_normal_subgroup,
    matched_pair_from_factorization,
    product_set,
    subgroup_from_words,
    subgroup_generated,
    subgroups_between,
)
from .lattices import (
    FiniteLattice,
    is_modular,
    is_sublattice,
    lattice_from_order,
    lattice_from_sets,
    maximal_chain_lengths,
)
from .hopf import (
    DualPairing,
    HopfAlgebra,
    SubspaceBasis,
    adjoint_actions,
    annihilator,
    bicrossed_product,
    bisch_projection_test,
    dual_hopf,
    enumerate_subhopf,
    fourier_transform,
    group_algebra,
    is_central,
    is_normal_subhopf,
    is_subhopf,
    jones_projection_of_subgroup,
    reduced_dual,
    support_projection,
    verify_hopf_axioms,
)
from .fusion import (
    FObject,
    FusionRing,
    PrincipalGraph,
    crossed_product_graph,
    depth_from_star,
    e6_graph,
    group_fusion_ring,
    group_type_counts,
    hom_dim,
    multiplicity_in_power,
    ring_multiply,
    strongly_outer_screen,
)
from .subfactor import (
    DepthStatus,
    InclusionScenario,
    IntermediateObject,
    Verdict,
    crossed_product,
    depth2_status,
    fixed_point,
    group_type,
    hopf_crosscheck,
    intermediate_catalog,
    intermediate_crossed,
    intermediate_fixed,
    is_normal_intermediate,
    is_quasi_normal,
    normal_sublattice_report,
    tensor_scenario,
)

__version__ = "0.1.0"
