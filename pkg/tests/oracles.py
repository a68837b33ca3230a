"""Independent oracles: deliberately naive implementations, no shared code
with the paths they check."""

from __future__ import annotations

import itertools

from normint.permutations import Perm, compose, identity_perm


def closure_brute(gens: list[Perm]) -> set[Perm]:
    """Plain worklist closure over permutation tuples."""
    degree = len(gens[0])
    seen = {identity_perm(degree)}
    work = list(seen)
    while work:
        w = work.pop()
        for g in gens:
            p = compose(w, g)
            if p not in seen:
                seen.add(p)
                work.append(p)
    return seen


def is_subgroup_set(table: list[list[int]], identity: int, subset: frozenset[int]) -> bool:
    if identity not in subset:
        return False
    for a in subset:
        for b in subset:
            if table[a][b] not in subset:
                return False
    return True


def subgroups_by_subsets(table: list[list[int]], identity: int) -> set[frozenset[int]]:
    """All subgroups by scanning every subset; only viable for tiny orders."""
    n = len(table)
    found = set()
    elements = list(range(n))
    for mask in range(1 << n):
        subset = frozenset(e for e in elements if mask >> e & 1)
        if subset and is_subgroup_set(table, identity, subset):
            found.add(subset)
    return found


def close_set(table: list[list[int]], seed: set[int], identity: int) -> frozenset[int]:
    cur = set(seed) | {identity}
    while True:
        new = {table[a][b] for a in cur for b in cur} - cur
        if not new:
            return frozenset(cur)
        cur |= new


def subgroups_by_triples(table: list[list[int]], identity: int) -> set[frozenset[int]]:
    """All subgroups generated by at most three elements."""
    n = len(table)
    found = {frozenset({identity})}
    singles = {}
    for a in range(n):
        singles[a] = close_set(table, {a}, identity)
        found.add(singles[a])
    for a in range(n):
        for b in range(a + 1, n):
            found.add(close_set(table, singles[a] | singles[b], identity))
    pairs = {}
    for a in range(n):
        for b in range(a + 1, n):
            pairs[(a, b)] = close_set(table, {a, b}, identity)
    for (a, b), base in pairs.items():
        for c in range(b + 1, n):
            if c in base:
                continue
            found.add(close_set(table, set(base) | {c}, identity))
    return found


def count_walks(adjacency: list[list[int]], star: int, target: int, k: int) -> int:
    """Number of length-2k alternating walks star -> target, by enumeration."""
    ne = len(adjacency)
    no = len(adjacency[0]) if ne else 0

    def step(side: str, v: int, remaining: int) -> int:
        if remaining == 0:
            return 1 if (side == "e" and v == target) else 0
        total = 0
        if side == "e":
            for o in range(no):
                total += adjacency[v][o] * step("o", o, remaining - 1)
        else:
            for e in range(ne):
                total += adjacency[e][v] * step("e", e, remaining - 1)
        return total

    return step("e", star, 2 * k)


def pairwise_meet_join_lattice(
    sets: list[frozenset],
) -> tuple[list[list[int]], list[list[int]]] | None:
    """Meet/join tables by direct search over the family; None if not a lattice."""
    n = len(sets)
    meet = [[-1] * n for _ in range(n)]
    join = [[-1] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            lower = [k for k in range(n) if sets[k] <= sets[i] and sets[k] <= sets[j]]
            best = [k for k in lower if all(sets[l] <= sets[k] for l in lower)]
            if len(best) != 1:
                return None
            meet[i][j] = best[0]
            upper = [k for k in range(n) if sets[i] <= sets[k] and sets[j] <= sets[k]]
            best = [k for k in upper if all(sets[k] <= sets[l] for l in upper)]
            if len(best) != 1:
                return None
            join[i][j] = best[0]
    return meet, join


def brute_product_set(table: list[list[int]], a: set[int], b: set[int]) -> set[int]:
    return {table[x][y] for x in a for y in b}
