"""Exact finite-group engine on Cayley tables.

Groups are built from permutation generators by breadth-first closure; the
element order is canonical (BFS layers, lexicographic tie-break on
permutation images), so element indices are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .permutations import (
    Perm,
    compose,
    format_cycles,
    identity_perm,
    invert,
    pad,
    parse_cycles,
)

DEFAULT_ORDER_CAP = 10080  # covers S7

GROUP_FORMAT_HEADER = "normint-group v1"


class OrderCapExceeded(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Group:
    """Finite group as a Cayley table over element indices 0..order-1."""

    order: int
    table: np.ndarray
    identity: int
    inverse: np.ndarray
    labels: tuple[str, ...]
    perms: tuple[Perm, ...] | None = None
    generator_indices: tuple[int, ...] = ()

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inv(self, i: int) -> int:
        return int(self.inverse[i])

    def elements(self) -> range:
        return range(self.order)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Group(order={self.order})"

    def element_index(self, word: str) -> int:
        """Resolve a cycle-notation word to an element index."""
        if self.perms is None:
            raise ValueError("group carries no permutation realization")
        p = parse_cycles(word, degree=len(self.perms[self.identity]))
        try:
            return self.perms.index(p)
        except ValueError:
            raise ValueError(f"permutation {word!r} is not an element of this group") from None


@dataclass(frozen=True)
class Subgroup:
    """Membership mask over a parent group; always a verified subgroup."""

    parent: Group
    members: frozenset[int]
    indices: tuple[int, ...] = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(self.members)))
        g = self.parent
        if g.identity not in self.members:
            raise ValueError("subgroup must contain the identity")
        idx = np.fromiter(self.members, dtype=np.int64)
        prods = np.unique(g.table[np.ix_(idx, idx)])
        if not set(int(x) for x in prods) <= self.members:
            raise ValueError("subset is not closed under multiplication")
        if not set(int(g.inverse[i]) for i in self.members) <= self.members:
            raise ValueError("subset is not closed under inversion")
        if g.order % len(self.members) != 0:
            raise ValueError("subgroup size does not divide the group order")

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __repr__(self) -> str:
        return f"Subgroup(size={self.size} of {self.parent.order})"

    def describe(self) -> str:
        """Short human-readable name: a greedy generating set in cycle words."""
        g = self.parent
        if self.size == g.order:
            return "G"
        if self.size == 1:
            return "1"
        gens = generating_set(self)
        return "<" + ", ".join(g.labels[i] for i in gens) + ">"


@dataclass(frozen=True, eq=False)
class MatchedPair:
    """Mutual actions extracted from an exact factorization G = AB.

    Every product a*b decomposes uniquely as b' * a' with b' in B, a' in A.
    ``alpha`` stores the B-part b' and ``a_part`` the A-part a', both keyed by
    global element indices (a, b).  The classical beta action is exposed as
    :meth:`classical_beta`, related to the stored A-part by
    ``beta_b(a) = (A-part of a^-1 * b^-1)^-1``.
    """

    group: Group
    a: Subgroup
    b: Subgroup
    alpha: dict[tuple[int, int], int]
    a_part: dict[tuple[int, int], int]

    def act_alpha(self, a: int, b: int) -> int:
        return self.alpha[(a, b)]

    def act_a_part(self, a: int, b: int) -> int:
        return self.a_part[(a, b)]

    def classical_beta(self, b: int, a: int) -> int:
        g = self.group
        ai, bi = g.inv(a), g.inv(b)
        return g.inv(self.a_part[(ai, bi)])


# ---------------------------------------------------------------------------
# construction

def _closure_perms(gens: Sequence[Perm], cap: int) -> list[Perm]:
    """BFS closure from the identity; each layer sorted lexicographically."""
    degree = len(gens[0])
    ident = identity_perm(degree)
    seen = {ident}
    elements = [ident]
    frontier = [ident]
    while frontier:
        new = set()
        for w in frontier:
            for g in gens:
                p = compose(w, g)
                if p not in seen:
                    new.add(p)
        frontier = sorted(new)
        seen.update(frontier)
        elements.extend(frontier)
        if len(elements) > cap:
            raise OrderCapExceeded(
                f"closure exceeded the order cap {cap}; raise the cap to continue"
            )
    return elements


def _verify_associativity(table: np.ndarray, gens: Sequence[int], seed: int = 0) -> None:
    """Corruption guard: full check up to order 256, sampled above."""
    n = table.shape[0]
    if n <= 256:
        left = table[table, :]
        right = table[:, table]
        if not np.array_equal(left, right):
            raise ValueError("multiplication table is not associative")
        return
    gen_arr = np.fromiter(gens, dtype=np.int64) if gens else np.arange(min(n, 8))
    for a in gen_arr:
        sub = table[table[a], :]
        if not np.array_equal(sub, table[a][table]):
            raise ValueError("multiplication table is not associative")
    rng = np.random.default_rng(seed)
    m = 100_000
    i = rng.integers(0, n, m)
    j = rng.integers(0, n, m)
    k = rng.integers(0, n, m)
    if not np.array_equal(table[table[i, j], k], table[i, table[j, k]]):
        raise ValueError("multiplication table is not associative")


def _finish_group(perms: list[Perm], gen_perms: Sequence[Perm]) -> Group:
    n = len(perms)
    index = {p: i for i, p in enumerate(perms)}
    arr = np.array(perms, dtype=np.int64)
    table = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        composed = arr[i][arr]  # row j: perms[i] after perms[j]
        table[i] = [index[tuple(row)] for row in composed]
    inverse = np.array([index[invert(p)] for p in perms], dtype=np.int64)
    labels = tuple(format_cycles(p) for p in perms)
    gen_idx = tuple(index[g] for g in gen_perms)
    _verify_associativity(table, gen_idx)
    ident = index[identity_perm(len(perms[0]))]
    assert ident == 0
    return Group(
        order=n,
        table=table,
        identity=ident,
        inverse=inverse,
        labels=labels,
        perms=tuple(perms),
        generator_indices=gen_idx,
    )


def group_from_permutations(
    generators: Sequence[str | Perm],
    degree: int | None = None,
    cap: int = DEFAULT_ORDER_CAP,
) -> Group:
    """Group generated by permutations given as cycle words or image tuples."""
    parsed: list[Perm] = []
    for g in generators:
        parsed.append(parse_cycles(g, degree) if isinstance(g, str) else tuple(g))
    if not parsed:
        if degree is None:
            degree = 1
        parsed = [identity_perm(degree)]
    deg = max([len(p) for p in parsed] + ([degree] if degree else []))
    gens = [pad(p, deg) for p in parsed]
    for p in gens:
        if sorted(p) != list(range(deg)):
            raise ValueError(f"{p} is not a permutation of degree {deg}")
    elements = _closure_perms(gens, cap)
    return _finish_group(elements, gens)


def direct_product(g1: Group, g2: Group, cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Componentwise product; element (i1, i2) packs as i1 * |G2| + i2."""
    n1, n2 = g1.order, g2.order
    n = n1 * n2
    if n > cap:
        raise OrderCapExceeded(f"direct product order {n} exceeds cap {cap}")
    t1 = g1.table[:, None, :, None]
    t2 = g2.table[None, :, None, :]
    table = (t1 * n2 + t2).reshape(n, n)
    inverse = (g1.inverse[:, None] * n2 + g2.inverse[None, :]).reshape(n)
    labels = tuple(
        f"({g1.labels[i]}|{g2.labels[j]})" for i in range(n1) for j in range(n2)
    )
    _verify_associativity(table, [])
    return Group(
        order=n,
        table=table,
        identity=g1.identity * n2 + g2.identity,
        inverse=inverse,
        labels=labels,
        perms=None,
    )


def product_embeddings(p: Group, g1: Group, g2: Group) -> tuple[Subgroup, Subgroup]:
    """The factor subgroups G1 x {e} and {e} x G2 inside direct_product(g1, g2)."""
    n2 = g2.order
    left = Subgroup(p, frozenset(i * n2 + g2.identity for i in g1.elements()))
    right = Subgroup(p, frozenset(g1.identity * n2 + j for j in g2.elements()))
    return left, right


# ---------------------------------------------------------------------------
# subgroup machinery

def closure_indices(g: Group, seed: Iterable[int]) -> frozenset[int]:
    """Subgroup generated by the given element indices."""
    cur = np.unique(np.fromiter(set(seed) | {g.identity}, dtype=np.int64))
    while True:
        prods = np.unique(g.table[np.ix_(cur, cur)])
        if prods.shape == cur.shape:
            return frozenset(int(x) for x in cur)
        cur = prods


def subgroup(g: Group, elements: Iterable[int]) -> Subgroup:
    return Subgroup(g, frozenset(int(i) for i in elements))


def subgroup_generated(g: Group, gens: Iterable[int]) -> Subgroup:
    return Subgroup(g, closure_indices(g, gens))


def subgroup_from_words(g: Group, words: Sequence[str]) -> Subgroup:
    return subgroup_generated(g, [g.element_index(w) for w in words])


def trivial_subgroup(g: Group) -> Subgroup:
    return Subgroup(g, frozenset({g.identity}))


def full_subgroup(g: Group) -> Subgroup:
    return Subgroup(g, frozenset(g.elements()))


def generating_set(s: Subgroup) -> tuple[int, ...]:
    """Greedy small generating set in canonical element order."""
    g = s.parent
    gens: list[int] = []
    have = frozenset({g.identity})
    for i in s.indices:
        if i not in have:
            gens.append(i)
            have = closure_indices(g, have | {i})
            if len(have) == s.size:
                break
    return tuple(gens)


def _grow_layered(g: Group, start: list[frozenset[int]], ambient: frozenset[int]) -> list[frozenset[int]]:
    """All subgroups of ``ambient`` reachable by adjoining single elements."""
    known = set(start)
    frontier = list(start)
    while frontier:
        fresh: list[frozenset[int]] = []
        for h in frontier:
            if len(h) == len(ambient):
                continue
            h_arr = np.fromiter(h, dtype=np.int64)
            covered = set(h)
            for x in sorted(ambient):
                if x in covered:
                    continue
                covered.update(int(v) for v in g.table[h_arr, x])
                bigger = closure_indices(g, h | {x})
                if bigger <= ambient and bigger not in known:
                    known.add(bigger)
                    fresh.append(bigger)
        frontier = fresh
    return sorted(known, key=lambda m: (len(m), tuple(sorted(m))))


def enumerate_subgroups(g: Group, within: Subgroup | None = None) -> list[Subgroup]:
    """All subgroups (of ``within`` if given), in canonical order."""
    ambient = within.members if within is not None else frozenset(g.elements())
    cyclics = {closure_indices(g, {x}) for x in sorted(ambient)}
    cyclics.add(frozenset({g.identity}))
    members = _grow_layered(g, sorted(cyclics, key=lambda m: (len(m), tuple(sorted(m)))), ambient)
    return [Subgroup(g, m) for m in members]


def subgroups_between(h: Subgroup, g: Group, within: Subgroup | None = None) -> list[Subgroup]:
    """All subgroups A with h <= A <= (within or G)."""
    ambient = within.members if within is not None else frozenset(g.elements())
    if h.parent is not g:
        raise ValueError("subgroup belongs to a different group")
    if not h.members <= ambient:
        raise ValueError("lower subgroup is not contained in the ambient subgroup")
    members = _grow_layered(g, [h.members], ambient)
    return [Subgroup(g, m) for m in members]


def product_set(
    g: Group,
    a: Subgroup | Iterable[int],
    b: Subgroup | Iterable[int],
) -> frozenset[int]:
    """The set {x*y : x in a, y in b}; checks |AB| |A&B| = |A| |B| for subgroups."""
    a_set = a.members if isinstance(a, Subgroup) else frozenset(a)
    b_set = b.members if isinstance(b, Subgroup) else frozenset(b)
    if not a_set or not b_set:
        return frozenset()
    ai = np.fromiter(a_set, dtype=np.int64)
    bi = np.fromiter(b_set, dtype=np.int64)
    out = frozenset(int(x) for x in np.unique(g.table[np.ix_(ai, bi)]))
    if isinstance(a, Subgroup) and isinstance(b, Subgroup):
        inter = len(a_set & b_set)
        assert len(out) * inter == len(a_set) * len(b_set), "product-set law violated"
    return out


def is_normal_subgroup(h: Subgroup, g: Group, within: Subgroup | None = None) -> bool:
    """True iff x h x^-1 = h for every x of the ambient (sub)group."""
    ambient = within.indices if within is not None else range(g.order)
    h_arr = np.fromiter(h.members, dtype=np.int64)
    for x in ambient:
        conj = g.table[g.table[x, h_arr], g.inverse[x]]
        if set(int(v) for v in conj) != h.members:
            return False
    return True


def double_coset_condition(
    a: Subgroup, h: Subgroup, g: Group, within: Subgroup | None = None
) -> tuple[bool, int | None]:
    """Check AgH = HgA for every ambient g; returns a witness index on failure."""
    ambient = within.indices if within is not None else range(g.order)
    a_arr = np.fromiter(a.members, dtype=np.int64)
    h_arr = np.fromiter(h.members, dtype=np.int64)
    for x in ambient:
        axh = np.unique(g.table[np.ix_(g.table[a_arr, x], h_arr)])
        hxa = np.unique(g.table[np.ix_(g.table[h_arr, x], a_arr)])
        if not np.array_equal(axh, hxa):
            return False, int(x)
    return True, None


def exact_factorization_check(g: Group, a: Subgroup, b: Subgroup) -> bool:
    """True iff G = AB with trivial intersection."""
    if a.size * b.size != g.order:
        return False
    return a.members & b.members == {g.identity}


def matched_pair_from_factorization(g: Group, a: Subgroup, b: Subgroup) -> MatchedPair:
    """Extract the mutual actions by uniquely decomposing each a*b in BA."""
    if not exact_factorization_check(g, a, b):
        raise ValueError("not an exact factorization: need G = AB with A & B = {e}")
    decomp: dict[int, tuple[int, int]] = {}
    for bp in b.indices:
        for ap in a.indices:
            x = g.mul(bp, ap)
            if x in decomp:
                raise ValueError("decomposition in BA is not unique")
            decomp[x] = (bp, ap)
    assert len(decomp) == g.order
    alpha: dict[tuple[int, int], int] = {}
    a_part: dict[tuple[int, int], int] = {}
    for ai in a.indices:
        for bi in b.indices:
            bp, ap = decomp[g.mul(ai, bi)]
            alpha[(ai, bi)] = bp
            a_part[(ai, bi)] = ap
    return MatchedPair(group=g, a=a, b=b, alpha=alpha, a_part=a_part)


# ---------------------------------------------------------------------------
# serialization

def write_group_text(g: Group) -> str:
    lines = [GROUP_FORMAT_HEADER, f"order {g.order}"]
    for i in range(g.order):
        lines.append(f"label {i} {g.labels[i]}")
    for i in range(g.order):
        lines.append("row " + " ".join(str(int(x)) for x in g.table[i]))
    return "\n".join(lines) + "\n"


def read_group_text(text: str) -> Group:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != GROUP_FORMAT_HEADER:
        raise ValueError(f"expected header {GROUP_FORMAT_HEADER!r}")
    if not lines[1].startswith("order "):
        raise ValueError("missing order line")
    n = int(lines[1].split()[1])
    labels = [""] * n
    rows: list[list[int]] = []
    for ln in lines[2:]:
        kind, rest = ln.split(None, 1)
        if kind == "label":
            idx, lab = rest.split(None, 1)
            labels[int(idx)] = lab.strip()
        elif kind == "row":
            rows.append([int(x) for x in rest.split()])
        else:
            raise ValueError(f"unknown line kind {kind!r}")
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError("table shape does not match order")
    table = np.array(rows, dtype=np.int64)
    if table.min() < 0 or table.max() >= n:
        raise ValueError("table entries out of range")
    ident_candidates = [
        i
        for i in range(n)
        if np.array_equal(table[i], np.arange(n)) and np.array_equal(table[:, i], np.arange(n))
    ]
    if len(ident_candidates) != 1:
        raise ValueError("table has no unique identity")
    ident = ident_candidates[0]
    inverse = np.empty(n, dtype=np.int64)
    for i in range(n):
        hits = np.nonzero(table[i] == ident)[0]
        if len(hits) != 1:
            raise ValueError(f"element {i} has no unique inverse")
        inverse[i] = hits[0]
    _verify_associativity(table, [])
    return Group(
        order=n,
        table=table,
        identity=ident,
        inverse=inverse,
        labels=tuple(labels),
        perms=None,
    )
