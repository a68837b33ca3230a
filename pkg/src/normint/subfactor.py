"""Scenario layer: the five finite inclusion models, their intermediate
catalogs, normality/quasi-normality classification, and the normal
sublattice with its certificates.

Verdicts are three-valued: where no criterion applies, the distinguished
``not_covered`` value is returned rather than a guess.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from . import lattices
from .fusion import group_type_counts
from .groups import (
    Group,
    Subgroup,
    double_coset_condition,
    direct_product,
    enumerate_subgroups,
    exact_factorization_check,
    is_normal_subgroup,
    product_embeddings,
    product_set,
    subgroup_generated,
    subgroups_between,
)
from . import hopf as hopf_mod


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    NOT_COVERED = "not_covered"
    UNSUPPORTED = "unsupported"


class DepthStatus(str, Enum):
    DEPTH2 = "depth2"
    NOT_DEPTH2 = "not_depth2"
    UNKNOWN = "unknown"


KINDS = (
    "crossed_product",
    "fixed_point",
    "intermediate_crossed",
    "intermediate_fixed",
    "group_type",
)


@dataclass(frozen=True, eq=False)
class InclusionScenario:
    kind: str
    group: Group
    h: Subgroup | None = None
    a: Subgroup | None = None
    b: Subgroup | None = None
    exact_factorization: bool = False

    def describe(self) -> str:
        if self.kind == "crossed_product":
            return f"N in N x| G (|G| = {self.group.order})"
        if self.kind == "fixed_point":
            return f"M^G in M (|G| = {self.group.order})"
        if self.kind == "intermediate_crossed":
            return f"P x| H in P x| G (|H| = {self.h.size}, |G| = {self.group.order})"
        if self.kind == "intermediate_fixed":
            return f"P^G in P^H (|H| = {self.h.size}, |G| = {self.group.order})"
        return (
            f"P^A in P x| B (|A| = {self.a.size}, |B| = {self.b.size}, "
            f"exact factorization: {self.exact_factorization})"
        )


@dataclass(frozen=True, eq=False)
class IntermediateObject:
    scenario: InclusionScenario
    family: str  # "crossed_by" | "fixed_by"
    subgroup: Subgroup
    name: str


@dataclass(frozen=True)
class NormalityResult:
    verdict: Verdict
    criterion: str
    witness: str | None = None
    details: dict = field(default_factory=dict)


def crossed_product(g: Group) -> InclusionScenario:
    return InclusionScenario(kind="crossed_product", group=g)


def fixed_point(g: Group) -> InclusionScenario:
    return InclusionScenario(kind="fixed_point", group=g)


def intermediate_crossed(h: Subgroup, g: Group) -> InclusionScenario:
    if h.parent is not g:
        raise ValueError("subgroup belongs to a different group")
    return InclusionScenario(kind="intermediate_crossed", group=g, h=h)


def intermediate_fixed(h: Subgroup, g: Group) -> InclusionScenario:
    if h.parent is not g:
        raise ValueError("subgroup belongs to a different group")
    return InclusionScenario(kind="intermediate_fixed", group=g, h=h)


def group_type(a: Subgroup, b: Subgroup, g: Group) -> InclusionScenario:
    if a.parent is not g or b.parent is not g:
        raise ValueError("subgroups belong to a different group")
    if a.members & b.members != {g.identity}:
        raise ValueError("group-type scenario needs A & B = {e}")
    if subgroup_generated(g, a.members | b.members).size != g.order:
        raise ValueError("group-type scenario needs G = <A, B>")
    return InclusionScenario(
        kind="group_type",
        group=g,
        a=a,
        b=b,
        exact_factorization=exact_factorization_check(g, a, b),
    )


def tensor_scenario(s1: InclusionScenario, s2: InclusionScenario) -> InclusionScenario:
    """Crossed product over the direct product; the two factor intermediates
    are asserted normal."""
    if s1.kind != "crossed_product" or s2.kind != "crossed_product":
        raise ValueError("tensor scenarios need two crossed-product scenarios")
    prod = direct_product(s1.group, s2.group)
    scenario = crossed_product(prod)
    left, right = product_embeddings(prod, s1.group, s2.group)
    for sub in (left, right):
        obj = IntermediateObject(scenario, "crossed_by", sub, name="factor")
        res = is_normal_intermediate(scenario, obj)
        assert res.verdict is Verdict.YES, "factor intermediate must be normal"
    return scenario


# ---------------------------------------------------------------------------
# catalog

def _name_crossed(s: InclusionScenario, sub: Subgroup) -> str:
    if s.kind == "crossed_product":
        if sub.size == 1:
            return "N"
        if sub.size == s.group.order:
            return "M"
        return f"N x| {sub.describe()}"
    if s.kind == "intermediate_crossed":
        if sub.members == s.h.members:
            return "N"
        if sub.size == s.group.order:
            return "M"
        return f"P x| {sub.describe()}"
    # group_type
    if sub.size == 1:
        return "P"
    if sub.members == s.b.members:
        return "M"
    return f"P x| {sub.describe()}"


def _name_fixed(s: InclusionScenario, sub: Subgroup) -> str:
    if s.kind == "fixed_point":
        if sub.size == s.group.order:
            return "N"
        if sub.size == 1:
            return "M"
        return f"M^{sub.describe()}"
    if s.kind == "intermediate_fixed":
        if sub.members == s.h.members:
            return "M"
        if sub.size == s.group.order:
            return "N"
        return f"P^{sub.describe()}"
    # group_type
    if sub.members == s.a.members:
        return "N"
    return f"P^{sub.describe()}"


def intermediate_catalog(s: InclusionScenario) -> list[IntermediateObject]:
    """Complete catalog for the lattice-isomorphic kinds; the declared
    two-family catalog (partial) for group-type scenarios."""
    g = s.group
    out: list[IntermediateObject] = []
    if s.kind == "crossed_product":
        for sub in enumerate_subgroups(g):
            out.append(IntermediateObject(s, "crossed_by", sub, _name_crossed(s, sub)))
    elif s.kind == "fixed_point":
        for sub in sorted(enumerate_subgroups(g), key=lambda x: (-x.size, x.indices)):
            out.append(IntermediateObject(s, "fixed_by", sub, _name_fixed(s, sub)))
    elif s.kind == "intermediate_crossed":
        for sub in subgroups_between(s.h, g):
            out.append(IntermediateObject(s, "crossed_by", sub, _name_crossed(s, sub)))
    elif s.kind == "intermediate_fixed":
        for sub in sorted(subgroups_between(s.h, g), key=lambda x: (-x.size, x.indices)):
            out.append(IntermediateObject(s, "fixed_by", sub, _name_fixed(s, sub)))
    elif s.kind == "group_type":
        fixed_subs = sorted(
            enumerate_subgroups(g, within=s.a), key=lambda x: (-x.size, x.indices)
        )
        for sub in fixed_subs:
            if sub.size == 1:
                continue  # P^{e} = P appears once, as the trivial crossed object
            out.append(IntermediateObject(s, "fixed_by", sub, _name_fixed(s, sub)))
        for sub in enumerate_subgroups(g, within=s.b):
            out.append(IntermediateObject(s, "crossed_by", sub, _name_crossed(s, sub)))
    else:
        raise ValueError(f"unknown scenario kind {s.kind!r}")
    return out


# ---------------------------------------------------------------------------
# classification

def is_normal_intermediate(
    s: InclusionScenario, k: IntermediateObject
) -> NormalityResult:
    if k.scenario is not s:
        raise ValueError("intermediate object belongs to a different scenario")
    g = s.group
    if s.kind in ("crossed_product", "fixed_point"):
        ok = is_normal_subgroup(k.subgroup, g)
        return NormalityResult(
            verdict=Verdict.YES if ok else Verdict.NO,
            criterion="subgroup normality in G",
        )
    if s.kind in ("intermediate_crossed", "intermediate_fixed"):
        ok, witness = double_coset_condition(k.subgroup, s.h, g)
        return NormalityResult(
            verdict=Verdict.YES if ok else Verdict.NO,
            criterion="double cosets AgH = HgA for all g",
            witness=None if ok else g.labels[witness],
        )
    # group_type
    if k.family == "crossed_by":
        hsub = k.subgroup
        normal_in_b = is_normal_subgroup(hsub, g, within=s.b)
        if s.exact_factorization:
            ah = product_set(g, s.a, hsub)
            ha = product_set(g, hsub, s.a)
            permutes = ah == ha
            witness = None
            if not permutes:
                diff = sorted(ah ^ ha)
                witness = g.labels[diff[0]]
            return NormalityResult(
                verdict=Verdict.YES if (normal_in_b and permutes) else Verdict.NO,
                criterion="exact factorization: H normal in B and AH = HA",
                witness=witness,
                details={"normal_in_b": normal_in_b, "ah_eq_ha": permutes},
            )
        counts = group_type_counts(s.a, s.b, hsub, g)
        equal = counts["ah_ba"] == counts["ah_ha"]
        return NormalityResult(
            verdict=Verdict.YES if (normal_in_b and equal) else Verdict.NO,
            criterion="group type: H normal in B and #(AH & BA) = #(AH & HA)",
            details={"normal_in_b": normal_in_b, **counts},
        )
    # fixed_by family of a group-type scenario
    if k.subgroup.members == s.a.members:
        return NormalityResult(verdict=Verdict.YES, criterion="endpoint N")
    permutes = product_set(g, k.subgroup, s.b) == product_set(g, s.b, k.subgroup)
    return NormalityResult(
        verdict=Verdict.NOT_COVERED,
        criterion="no criterion for proper fixed-family objects",
        details={"permutes_with_b": permutes},
    )


def is_quasi_normal(
    s: InclusionScenario,
    k: IntermediateObject,
    catalog: Sequence[IntermediateObject] | None = None,
) -> Verdict:
    """Model-level quasi-normality: the defining subgroup permutes (as product
    sets) with the subgroup of every other catalogued intermediate."""
    if s.kind == "group_type":
        return Verdict.UNSUPPORTED
    if catalog is None:
        catalog = intermediate_catalog(s)
    g = s.group
    for other in catalog:
        if other.subgroup.members == k.subgroup.members:
            continue
        ab = product_set(g, k.subgroup, other.subgroup)
        ba = product_set(g, other.subgroup, k.subgroup)
        if ab != ba:
            return Verdict.NO
    return Verdict.YES


def depth2_status(s: InclusionScenario) -> DepthStatus:
    if s.kind in ("crossed_product", "fixed_point"):
        return DepthStatus.DEPTH2
    if s.kind == "group_type" and s.exact_factorization:
        return DepthStatus.DEPTH2
    return DepthStatus.UNKNOWN


# ---------------------------------------------------------------------------
# lattice of a catalog

def _catalog_leq(s: InclusionScenario, x: IntermediateObject, y: IntermediateObject) -> bool:
    if s.kind in ("crossed_product", "intermediate_crossed"):
        return x.subgroup.members <= y.subgroup.members
    if s.kind in ("fixed_point", "intermediate_fixed"):
        return y.subgroup.members <= x.subgroup.members
    # group_type: fixed objects sit below every crossed object
    if x.family == "fixed_by" and y.family == "fixed_by":
        return y.subgroup.members <= x.subgroup.members
    if x.family == "crossed_by" and y.family == "crossed_by":
        return x.subgroup.members <= y.subgroup.members
    if x.family == "fixed_by" and y.family == "crossed_by":
        return True
    return False


def catalog_lattice(
    s: InclusionScenario, catalog: Sequence[IntermediateObject]
) -> lattices.FiniteLattice:
    names = [k.name for k in catalog]
    leq = [[_catalog_leq(s, x, y) for y in catalog] for x in catalog]
    return lattices.lattice_from_order(names, leq)


@dataclass(frozen=True, eq=False)
class NormalLatticeReport:
    catalog: tuple[IntermediateObject, ...]
    normality: tuple[NormalityResult, ...]
    lattice: lattices.FiniteLattice
    normal_indices: tuple[int, ...]
    is_sublattice: bool
    normal_lattice: lattices.FiniteLattice | None
    modular: bool | None
    modular_witness: tuple[int, int, int] | None
    chain_lengths: dict[int, int]
    catalog_complete: bool


def normal_sublattice_report(s: InclusionScenario) -> NormalLatticeReport:
    """Build the catalog lattice, flag normal nodes, and certify the normal
    part: closure under meet/join, modularity, and maximal chain lengths."""
    catalog = tuple(intermediate_catalog(s))
    normality = tuple(is_normal_intermediate(s, k) for k in catalog)
    lat = catalog_lattice(s, catalog)
    normal_idx = tuple(
        i for i, r in enumerate(normality) if r.verdict is Verdict.YES
    )
    closed = lattices.is_sublattice(normal_idx, lat)
    normal_lat = None
    modular = None
    witness = None
    chain_lengths: dict[int, int] = {}
    if closed and normal_idx:
        normal_lat = lattices.sublattice(lat, normal_idx)
        modular, witness = lattices.is_modular(normal_lat)
        chain_lengths = dict(sorted(lattices.maximal_chain_lengths(normal_lat).items()))
    return NormalLatticeReport(
        catalog=catalog,
        normality=normality,
        lattice=lat,
        normal_indices=normal_idx,
        is_sublattice=closed,
        normal_lattice=normal_lat,
        modular=modular,
        modular_witness=witness,
        chain_lengths=chain_lengths,
        catalog_complete=s.kind != "group_type",
    )


# ---------------------------------------------------------------------------
# Hopf cross-check

@dataclass(frozen=True)
class CrosscheckRow:
    name: str
    subgroup_order: int
    group_normal: bool
    projection_central: bool
    subhopf_ad_invariant: bool
    subhopf_augmentation: bool
    projection_test: bool

    @property
    def consistent(self) -> bool:
        return (
            self.group_normal
            == self.projection_central
            == self.subhopf_ad_invariant
            == self.subhopf_augmentation
        ) and self.projection_test


@dataclass(frozen=True)
class CrosscheckReport:
    rows: tuple[CrosscheckRow, ...]

    @property
    def all_pass(self) -> bool:
        return all(r.consistent for r in self.rows)


def hopf_crosscheck(s: InclusionScenario) -> CrosscheckReport:
    """Four-way equivalence over every intermediate of a depth-2 group model:
    subgroup normality, centrality of the subgroup average, normality of the
    grouplike subHopf algebra, and the intermediate-projection test."""
    if s.kind not in ("crossed_product", "fixed_point"):
        raise ValueError("hopf crosscheck applies to crossed-product and fixed-point kinds")
    g = s.group
    algebra = hopf_mod.group_algebra(g)
    rows = []
    for k in intermediate_catalog(s):
        sub = k.subgroup
        res = is_normal_intermediate(s, k)
        proj = hopf_mod.jones_projection_of_subgroup(sub, g)
        central = hopf_mod.is_central(proj, algebra)
        span = hopf_mod.span_of_subgroup(algebra, sub)
        normality = hopf_mod.is_normal_subhopf(span, algebra)
        bisch = hopf_mod.bisch_projection_test(proj, g)
        rows.append(
            CrosscheckRow(
                name=k.name,
                subgroup_order=sub.size,
                group_normal=res.verdict is Verdict.YES,
                projection_central=central,
                subhopf_ad_invariant=normality.ad_invariant,
                subhopf_augmentation=normality.augmentation_criterion,
                projection_test=bisch,
            )
        )
    return CrosscheckReport(rows=tuple(rows))
