"""Finite lattices: construction from set families or explicit orders,
modularity and chain analysis, DOT export."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Sequence


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    names: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    top: int
    bottom: int
    payloads: tuple[Hashable, ...] | None = None

    @property
    def size(self) -> int:
        return len(self.names)

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def covers(self) -> list[tuple[int, int]]:
        """Pairs (a, b) with b covering a."""
        n = self.size
        out = []
        for a in range(n):
            for b in range(n):
                if a == b or not self.leq[a][b]:
                    continue
                if any(
                    z != a and z != b and self.leq[a][z] and self.leq[z][b]
                    for z in range(n)
                ):
                    continue
                out.append((a, b))
        return out

    def __repr__(self) -> str:
        return f"FiniteLattice(size={self.size})"


class LatticeError(ValueError):
    pass


def _check_partial_order(leq: Sequence[Sequence[bool]]) -> None:
    n = len(leq)
    for a in range(n):
        if not leq[a][a]:
            raise LatticeError(f"order is not reflexive at node {a}")
        for b in range(n):
            if leq[a][b] and leq[b][a] and a != b:
                raise LatticeError(f"order is not antisymmetric on ({a}, {b})")
            if leq[a][b]:
                for c in range(n):
                    if leq[b][c] and not leq[a][c]:
                        raise LatticeError(f"order is not transitive on ({a}, {b}, {c})")


def lattice_from_order(
    names: Sequence[str],
    leq: Sequence[Sequence[bool]],
    payloads: Sequence[Hashable] | None = None,
) -> FiniteLattice:
    """Build a lattice from an explicit partial order; meets/joins must exist."""
    n = len(names)
    _check_partial_order(leq)
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            lower = [z for z in range(n) if leq[z][a] and leq[z][b]]
            greatest = [z for z in lower if all(leq[w][z] for w in lower)]
            if len(greatest) != 1:
                raise LatticeError(f"nodes {names[a]!r} and {names[b]!r} have no meet")
            meet[a][b] = greatest[0]
            upper = [z for z in range(n) if leq[a][z] and leq[b][z]]
            least = [z for z in upper if all(leq[z][w] for w in upper)]
            if len(least) != 1:
                raise LatticeError(f"nodes {names[a]!r} and {names[b]!r} have no join")
            join[a][b] = least[0]
    bottoms = [a for a in range(n) if all(leq[a][b] for b in range(n))]
    tops = [a for a in range(n) if all(leq[b][a] for b in range(n))]
    if len(bottoms) != 1 or len(tops) != 1:
        raise LatticeError("lattice must have a unique bottom and top")
    lat = FiniteLattice(
        names=tuple(names),
        leq=tuple(tuple(bool(x) for x in row) for row in leq),
        meet=tuple(tuple(row) for row in meet),
        join=tuple(tuple(row) for row in join),
        top=tops[0],
        bottom=bottoms[0],
        payloads=tuple(payloads) if payloads is not None else None,
    )
    if n <= 64:
        _spot_check_axioms(lat)
    return lat


def _spot_check_axioms(lat: FiniteLattice) -> None:
    n = lat.size
    for a in range(n):
        if lat.meet[a][a] != a or lat.join[a][a] != a:
            raise LatticeError("idempotency fails")
        for b in range(n):
            if lat.meet[a][b] != lat.meet[b][a] or lat.join[a][b] != lat.join[b][a]:
                raise LatticeError("commutativity fails")
            if lat.join[a][lat.meet[a][b]] != a or lat.meet[a][lat.join[a][b]] != a:
                raise LatticeError("absorption fails")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if lat.meet[lat.meet[a][b]][c] != lat.meet[a][lat.meet[b][c]]:
                    raise LatticeError("meet associativity fails")
                if lat.join[lat.join[a][b]][c] != lat.join[a][lat.join[b][c]]:
                    raise LatticeError("join associativity fails")


def lattice_from_sets(
    family: Sequence[frozenset],
    names: Sequence[str] | None = None,
) -> FiniteLattice:
    """Lattice of a set family ordered by inclusion.

    The family must be closed under pairwise intersection and each pair must
    have a least containing member; offending pairs are named in the error.
    """
    if not family:
        raise LatticeError("empty family")
    sets = [frozenset(s) for s in family]
    if len(set(sets)) != len(sets):
        raise LatticeError("family contains duplicate sets")
    if names is None:
        names = [f"n{i}" for i in range(len(sets))]
    n = len(sets)
    index = {s: i for i, s in enumerate(sets)}
    leq = [[sets[a] <= sets[b] for b in range(n)] for a in range(n)]
    for a in range(n):
        for b in range(n):
            inter = sets[a] & sets[b]
            if inter not in index:
                raise LatticeError(
                    f"family is not meet-closed: {names[a]!r} & {names[b]!r} is missing"
                )
            uppers = [c for c in range(n) if sets[a] <= sets[c] and sets[b] <= sets[c]]
            least = [c for c in uppers if all(sets[c] <= sets[d] for d in uppers)]
            if len(least) != 1:
                raise LatticeError(
                    f"family has no unique join for {names[a]!r} and {names[b]!r}"
                )
    return lattice_from_order(names, leq, payloads=sets)


def is_modular(lat: FiniteLattice) -> tuple[bool, tuple[int, int, int] | None]:
    """Check a <= c implies a v (b ^ c) = (a v b) ^ c; witness on failure."""
    n = lat.size
    for a in range(n):
        for c in range(n):
            if not lat.leq[a][c]:
                continue
            for b in range(n):
                if lat.join[a][lat.meet[b][c]] != lat.meet[lat.join[a][b]][c]:
                    return False, (a, b, c)
    return True, None


def maximal_chain_lengths(lat: FiniteLattice) -> Counter:
    """Multiset of edge-lengths of all maximal chains from bottom to top."""
    upper_covers: dict[int, list[int]] = {a: [] for a in range(lat.size)}
    for a, b in lat.covers():
        upper_covers[a].append(b)
    out: Counter = Counter()

    def walk(node: int, length: int) -> None:
        if node == lat.top:
            out[length] += 1
            return
        for nxt in upper_covers[node]:
            walk(nxt, length + 1)

    walk(lat.bottom, 0)
    return out


def is_sublattice(nodes: Sequence[int], lat: FiniteLattice) -> bool:
    s = set(nodes)
    for a in s:
        for b in s:
            if lat.meet[a][b] not in s or lat.join[a][b] not in s:
                return False
    return True


def sublattice(lat: FiniteLattice, nodes: Sequence[int]) -> FiniteLattice:
    """The lattice induced on a meet/join-closed node subset."""
    if not is_sublattice(nodes, lat):
        raise LatticeError("node subset is not closed under meet and join")
    sel = sorted(set(nodes))
    leq = [[lat.leq[a][b] for b in sel] for a in sel]
    names = [lat.names[a] for a in sel]
    payloads = [lat.payloads[a] for a in sel] if lat.payloads is not None else None
    return lattice_from_order(names, leq, payloads=payloads)


def dual(lat: FiniteLattice) -> FiniteLattice:
    """Order-reversed lattice (meet and join swap)."""
    n = lat.size
    leq = [[lat.leq[b][a] for b in range(n)] for a in range(n)]
    return lattice_from_order(lat.names, leq, payloads=lat.payloads)


def to_dot(
    lat: FiniteLattice,
    highlight: Sequence[int] = (),
    graph_name: str = "lattice",
) -> str:
    """DOT Hasse diagram; highlighted nodes get a distinct style."""
    marked = set(highlight)
    lines = [f"digraph {graph_name} {{", "  rankdir=BT;", '  node [shape=box, fontname="Helvetica"];']
    for i in range(lat.size):
        style = ' style=filled fillcolor="lightblue" peripheries=2' if i in marked else ""
        lines.append(f'  n{i} [label="{lat.names[i]}"{style}];')
    for a, b in sorted(lat.covers()):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
