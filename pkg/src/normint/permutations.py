"""Permutations on {1..n} with cycle-notation parsing and formatting.

Internally a permutation is a tuple of 0-based images: ``p[i]`` is the image
of point ``i``.  The composition convention is ``(g * h)(x) = g(h(x))``,
i.e. the right factor acts first.
"""

from __future__ import annotations

import re

Perm = tuple[int, ...]

_CYCLE_RE = re.compile(r"\(([^()]*)\)")
_TOKEN_RE = re.compile(r"^[\s\d(),]*$")


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def compose(g: Perm, h: Perm) -> Perm:
    """Composition g after h."""
    return tuple(g[x] for x in h)


def invert(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, x in enumerate(g):
        out[x] = i
    return tuple(out)


def parse_cycles(word: str, degree: int | None = None) -> Perm:
    """Parse cycle notation like ``(1 2)(3 4)`` into a permutation.

    Points are 1-based in the notation.  ``e``, ``()`` and ``id`` denote the
    identity.  When ``degree`` is given the result is padded/validated to it.
    """
    text = word.strip()
    if text in ("e", "id", "()", ""):
        if degree is None:
            raise ValueError(f"identity permutation {word!r} needs an explicit degree")
        return identity_perm(degree)
    if not _TOKEN_RE.match(text):
        raise ValueError(f"malformed permutation word {word!r}")
    cycles: list[list[int]] = []
    for m in _CYCLE_RE.finditer(text):
        body = m.group(1).replace(",", " ").split()
        if not body:
            continue
        pts = [int(tok) for tok in body]
        if any(p < 1 for p in pts):
            raise ValueError(f"points must be >= 1 in {word!r}")
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point inside a cycle of {word!r}")
        cycles.append([p - 1 for p in pts])
    if _CYCLE_RE.sub("", text).strip():
        raise ValueError(f"malformed permutation word {word!r}")
    touched = [p for cyc in cycles for p in cyc]
    if len(set(touched)) != len(touched):
        raise ValueError(f"cycles of {word!r} are not disjoint")
    n = degree if degree is not None else (max(touched) + 1 if touched else 1)
    if touched and max(touched) + 1 > n:
        raise ValueError(
            f"permutation {word!r} uses point {max(touched) + 1} beyond degree {n}"
        )
    images = list(range(n))
    for cyc in cycles:
        for i, p in enumerate(cyc):
            images[p] = cyc[(i + 1) % len(cyc)]
    return tuple(images)


def format_cycles(p: Perm) -> str:
    """Cycle notation with 1-based points; identity prints as ``e``."""
    seen = [False] * len(p)
    parts: list[str] = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = p[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = p[nxt]
        parts.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(parts) if parts else "e"


def pad(p: Perm, degree: int) -> Perm:
    if len(p) > degree:
        raise ValueError(f"cannot pad degree-{len(p)} permutation down to {degree}")
    return p + tuple(range(len(p), degree))


def is_even(p: Perm) -> bool:
    seen = [False] * len(p)
    transpositions = 0
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            length += 1
        transpositions += length - 1
    return transpositions % 2 == 0
