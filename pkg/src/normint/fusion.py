"""Based rings and pointed principal graphs with exact multiplicity counting.

Multiplicities in powers of the generating bimodule are DEFINED here as path
counts on the graph: the entry of the k-th power of the even-vertex walk
matrix at (star, v).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .groups import Group, Subgroup, product_set

GRAPH_FORMAT_HEADER = "normint-graph v1"


@dataclass(frozen=True, eq=False)
class FusionRing:
    """Based ring: nonnegative integer structure constants, unit, duality."""

    rank: int
    structure: tuple[tuple[dict[int, int], ...], ...]
    unit: int
    dual: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        n = self.rank
        for i in range(n):
            for j in range(n):
                for k, c in self.structure[i][j].items():
                    if c < 0:
                        raise ValueError("structure constants must be nonnegative")
        for i in range(n):
            if self.structure[self.unit][i] != {i: 1} or self.structure[i][self.unit] != {i: 1}:
                raise ValueError("unit laws fail")
        for i in range(n):
            for j in range(n):
                if self.structure[i][j].get(self.unit, 0) != (1 if j == self.dual[i] else 0):
                    raise ValueError("rigidity fails: unit multiplicity must match duality")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    left: dict[int, int] = {}
                    for l, c in self.structure[i][j].items():
                        for t, d in self.structure[l][k].items():
                            left[t] = left.get(t, 0) + c * d
                    right: dict[int, int] = {}
                    for l, c in self.structure[j][k].items():
                        for t, d in self.structure[i][l].items():
                            right[t] = right.get(t, 0) + c * d
                    if {t: v for t, v in left.items() if v} != {t: v for t, v in right.items() if v}:
                        raise ValueError(f"associativity fails at ({i},{j},{k})")

    def __repr__(self) -> str:
        return f"FusionRing(rank={self.rank})"


@dataclass(frozen=True)
class FObject:
    """Formal nonnegative combination of basis labels."""

    ring: FusionRing
    mult: tuple[int, ...]

    def __post_init__(self):
        if len(self.mult) != self.ring.rank:
            raise ValueError("multiplicity vector has wrong length")
        if any(m < 0 for m in self.mult):
            raise ValueError("multiplicities must be nonnegative")

    @classmethod
    def basis(cls, ring: FusionRing, label: int) -> "FObject":
        return cls(ring, tuple(1 if i == label else 0 for i in range(ring.rank)))

    def __add__(self, other: "FObject") -> "FObject":
        if self.ring is not other.ring:
            raise ValueError("objects live in different rings")
        return FObject(self.ring, tuple(a + b for a, b in zip(self.mult, other.mult)))


def ring_multiply(x: FObject, y: FObject) -> FObject:
    if x.ring is not y.ring:
        raise ValueError("objects live in different rings")
    ring = x.ring
    out = [0] * ring.rank
    for i, ci in enumerate(x.mult):
        if not ci:
            continue
        for j, cj in enumerate(y.mult):
            if not cj:
                continue
            for k, n in ring.structure[i][j].items():
                out[k] += ci * cj * n
    return FObject(ring, tuple(out))


def hom_dim(x: FObject, y: FObject) -> int:
    if x.ring is not y.ring:
        raise ValueError("objects live in different rings")
    return sum(a * b for a, b in zip(x.mult, y.mult))


def dual_object(x: FObject) -> FObject:
    out = [0] * x.ring.rank
    for i, c in enumerate(x.mult):
        out[x.ring.dual[i]] += c
    return FObject(x.ring, tuple(out))


def group_fusion_ring(g: Group) -> FusionRing:
    """Pointed ring on the group elements; duality is inversion."""
    n = g.order
    structure = tuple(
        tuple({int(g.table[i, j]): 1} for j in range(n)) for i in range(n)
    )
    return FusionRing(
        rank=n,
        structure=structure,
        unit=g.identity,
        dual=tuple(int(g.inverse[i]) for i in range(n)),
        labels=tuple(f"L2[{lab}]" for lab in g.labels),
    )


# ---------------------------------------------------------------------------
# principal graphs

@dataclass(frozen=True, eq=False)
class PrincipalGraph:
    """Pointed bipartite graph; adjacency[e][o] counts edges between even
    vertex e and odd vertex o."""

    even: tuple[str, ...]
    odd: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]
    star: int

    def __post_init__(self):
        if len(self.adjacency) != len(self.even):
            raise ValueError("adjacency rows must match even vertices")
        for row in self.adjacency:
            if len(row) != len(self.odd):
                raise ValueError("adjacency columns must match odd vertices")
            if any(x < 0 for x in row):
                raise ValueError("edge multiplicities must be nonnegative")
        if not (0 <= self.star < len(self.even)):
            raise ValueError("star must be an even vertex index")
        if not any(self.adjacency[self.star]):
            raise ValueError("star vertex must have at least one edge")

    def even_index(self, name: str) -> int:
        try:
            return self.even.index(name)
        except ValueError:
            raise ValueError(f"unknown even vertex {name!r}") from None

    def __repr__(self) -> str:
        return f"PrincipalGraph(even={len(self.even)}, odd={len(self.odd)})"


def crossed_product_graph(g: Group) -> PrincipalGraph:
    """Depth-2 star graph: one odd vertex joined once to every even vertex."""
    n = g.order
    return PrincipalGraph(
        even=tuple(f"g[{lab}]" for lab in g.labels),
        odd=("rho",),
        adjacency=tuple((1,) for _ in range(n)),
        star=g.identity,
    )


def e6_graph() -> PrincipalGraph:
    """The length-4 path with a pendant at the middle even vertex.

    Even vertices {*, b, theta}, odd {a, c, d}, edges *-a, a-b, b-c, c-theta,
    b-d; theta is the far endpoint.
    """
    return PrincipalGraph(
        even=("*", "b", "theta"),
        odd=("a", "c", "d"),
        adjacency=((1, 0, 0), (1, 1, 1), (0, 1, 0)),
        star=0,
    )


def _walk_matrix(g: PrincipalGraph) -> list[list[int]]:
    ne, no = len(g.even), len(g.odd)
    out = [[0] * ne for _ in range(ne)]
    for a in range(ne):
        for b in range(ne):
            out[a][b] = sum(g.adjacency[a][o] * g.adjacency[b][o] for o in range(no))
    return out


def _mat_mult(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    n = len(a)
    return [
        [sum(a[i][l] * b[l][j] for l in range(n)) for j in range(n)] for i in range(n)
    ]


def multiplicity_in_power(g: PrincipalGraph, v: int | str, k: int) -> int:
    """(star, v) entry of the k-th power of the even walk matrix."""
    if isinstance(v, str):
        v = g.even_index(v)
    if k < 1:
        raise ValueError("power must be positive")
    w = _walk_matrix(g)
    acc = w
    for _ in range(k - 1):
        acc = _mat_mult(acc, w)
    return acc[g.star][v]


def depth_from_star(g: PrincipalGraph) -> int:
    """Eccentricity of the star vertex in the bipartite graph."""
    ne, no = len(g.even), len(g.odd)
    dist = {("e", g.star): 0}
    queue = deque([("e", g.star)])
    while queue:
        side, x = queue.popleft()
        d = dist[(side, x)]
        if side == "e":
            for o in range(no):
                if g.adjacency[x][o] and ("o", o) not in dist:
                    dist[("o", o)] = d + 1
                    queue.append(("o", o))
        else:
            for e in range(ne):
                if g.adjacency[e][x] and ("e", e) not in dist:
                    dist[("e", e)] = d + 1
                    queue.append(("e", e))
    if len(dist) != ne + no:
        raise ValueError("graph is disconnected")
    return max(dist.values())


@dataclass(frozen=True)
class ScreenVerdict:
    """Outcome of the strongly-outer screen; the screen is a sufficient
    condition only: never_appears certifies strong outerness, appears does not
    refute it by itself."""

    appears_at: int | None
    kmax: int

    @property
    def never_appears(self) -> bool:
        return self.appears_at is None

    def __str__(self) -> str:
        if self.appears_at is None:
            return f"never_appears_up_to_k{self.kmax}"
        return f"appears_at_k{self.appears_at}"


def strongly_outer_screen(
    g: PrincipalGraph, v: int | str, kmax: int | None = None
) -> ScreenVerdict:
    """First power k <= kmax whose path count from star to v is positive.

    Reachability through even vertices stabilizes after #even steps, so the
    default kmax = number of even vertices is exhaustive.
    """
    if isinstance(v, str):
        v = g.even_index(v)
    if kmax is None:
        kmax = len(g.even)
    w = _walk_matrix(g)
    acc = [row[:] for row in w]
    for k in range(1, kmax + 1):
        if k > 1:
            acc = _mat_mult(acc, w)
        if acc[g.star][v] > 0:
            return ScreenVerdict(appears_at=k, kmax=kmax)
    return ScreenVerdict(appears_at=None, kmax=kmax)


def group_type_counts(
    a: Subgroup, b: Subgroup, h: Subgroup, g: Group
) -> dict[str, int]:
    """Cardinalities #(AH & BA) and #(AH & HA) for the group-type criterion."""
    if not h.members <= b.members:
        raise ValueError("H must be a subgroup of B")
    if a.members & b.members != {g.identity}:
        raise ValueError("A and B must intersect trivially")
    ah = product_set(g, a, h)
    ba = product_set(g, b, a)
    ha = product_set(g, h, a)
    return {"ah_ba": len(ah & ba), "ah_ha": len(ah & ha)}


# ---------------------------------------------------------------------------
# text formats

def write_graph_text(g: PrincipalGraph) -> str:
    lines = [GRAPH_FORMAT_HEADER]
    lines.append("even " + " ".join(g.even))
    lines.append("odd " + " ".join(g.odd))
    lines.append(f"star {g.even[g.star]}")
    for e in range(len(g.even)):
        for o in range(len(g.odd)):
            for _ in range(g.adjacency[e][o]):
                lines.append(f"edge {g.even[e]} {g.odd[o]}")
    return "\n".join(lines) + "\n"


def read_graph_text(text: str) -> PrincipalGraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != GRAPH_FORMAT_HEADER:
        raise ValueError(f"expected header {GRAPH_FORMAT_HEADER!r}")
    even: list[str] = []
    odd: list[str] = []
    star_name: str | None = None
    edges: list[tuple[str, str]] = []
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "even":
            even = parts[1:]
        elif parts[0] == "odd":
            odd = parts[1:]
        elif parts[0] == "star":
            star_name = parts[1]
        elif parts[0] == "edge":
            edges.append((parts[1], parts[2]))
        else:
            raise ValueError(f"unknown line kind {parts[0]!r}")
    if not even or not odd or star_name is None:
        raise ValueError("graph file needs even, odd and star lines")
    if star_name not in even:
        raise ValueError(f"star {star_name!r} is not an even vertex")
    adjacency = [[0] * len(odd) for _ in even]
    for e_name, o_name in edges:
        if e_name not in even or o_name not in odd:
            raise ValueError(f"edge {e_name!r}-{o_name!r} uses unknown vertices")
        adjacency[even.index(e_name)][odd.index(o_name)] += 1
    return PrincipalGraph(
        even=tuple(even),
        odd=tuple(odd),
        adjacency=tuple(tuple(row) for row in adjacency),
        star=even.index(star_name),
    )


RING_FORMAT_HEADER = "normint-fusion v1"


def write_fusion_ring_text(r: FusionRing) -> str:
    lines = [RING_FORMAT_HEADER, f"rank {r.rank}", f"unit {r.unit}"]
    lines.append("dual " + " ".join(str(d) for d in r.dual))
    for i, lab in enumerate(r.labels):
        lines.append(f"label {i} {lab}")
    for i in range(r.rank):
        for j in range(r.rank):
            for k, c in sorted(r.structure[i][j].items()):
                lines.append(f"N {i} {j} {k} {c}")
    return "\n".join(lines) + "\n"


def read_fusion_ring_text(text: str) -> FusionRing:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != RING_FORMAT_HEADER:
        raise ValueError(f"expected header {RING_FORMAT_HEADER!r}")
    rank = None
    unit = None
    dual: Sequence[int] = ()
    labels: list[str] = []
    entries: list[tuple[int, int, int, int]] = []
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "rank":
            rank = int(parts[1])
            labels = [f"x{i}" for i in range(rank)]
        elif parts[0] == "unit":
            unit = int(parts[1])
        elif parts[0] == "dual":
            dual = [int(x) for x in parts[1:]]
        elif parts[0] == "label":
            labels[int(parts[1])] = " ".join(parts[2:])
        elif parts[0] == "N":
            entries.append((int(parts[1]), int(parts[2]), int(parts[3]), int(parts[4])))
        else:
            raise ValueError(f"unknown line kind {parts[0]!r}")
    if rank is None or unit is None or len(dual) != rank:
        raise ValueError("fusion ring file needs rank, unit and dual lines")
    structure = [[dict() for _ in range(rank)] for _ in range(rank)]
    for i, j, k, c in entries:
        structure[i][j][k] = c
    return FusionRing(
        rank=rank,
        structure=tuple(tuple(d for d in row) for row in structure),
        unit=unit,
        dual=tuple(dual),
        labels=tuple(labels),
    )
