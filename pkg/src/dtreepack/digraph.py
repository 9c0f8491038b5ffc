"""Immutable simple digraphs on vertices 0..n-1 with bitset adjacency rows.

No loops, no parallel arcs; the digon {(u,v),(v,u)} counts as two arcs.
Equality is label-sensitive (adjacency-matrix semantics); isomorphism-
insensitive comparison goes through :func:`canonical_form`.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator, NamedTuple

from .errors import DigraphError, GuardError

CANON_MAX_N = 7


class Digraph:
    """Digraph stored as a tuple of out-neighbour bitmasks (``rows[u]`` bit v set
    iff arc (u,v) present)."""

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, n: int, rows: tuple[int, ...]):
        self.n = n
        self.rows = rows
        self._hash = hash((n, rows))

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_arcs(n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        if n < 1:
            raise DigraphError(f"vertex count must be positive, got {n}")
        rows = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise DigraphError(f"arc ({u},{v}) out of range for n={n}")
            if u == v:
                raise DigraphError(f"loop ({u},{u}) not allowed")
            rows[u] |= 1 << v
        return Digraph(n, tuple(rows))

    # -- basic queries -----------------------------------------------------

    def has_arc(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        """All arcs in ascending (u,v) order."""
        out = []
        for u, row in enumerate(self.rows):
            while row:
                v = (row & -row).bit_length() - 1
                row &= row - 1
                out.append((u, v))
        return tuple(out)

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def out_degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def in_degree(self, v: int) -> int:
        bit = 1 << v
        return sum(1 for row in self.rows if row & bit)

    def min_out_degree(self) -> int:
        return min(self.out_degree(u) for u in range(self.n))

    def min_in_degree(self) -> int:
        cols = [0] * self.n
        for u, row in enumerate(self.rows):
            while row:
                v = (row & -row).bit_length() - 1
                row &= row - 1
                cols[v] += 1
        return min(cols)

    def out_neighbours(self, u: int) -> Iterator[int]:
        row = self.rows[u]
        while row:
            v = (row & -row).bit_length() - 1
            row &= row - 1
            yield v

    def relabel(self, perm: tuple[int, ...]) -> "Digraph":
        """Image under the vertex permutation u -> perm[u]."""
        rows = [0] * self.n
        for u, row in enumerate(self.rows):
            new = 0
            while row:
                v = (row & -row).bit_length() - 1
                row &= row - 1
                new |= 1 << perm[v]
            rows[perm[u]] = new
        return Digraph(self.n, tuple(rows))

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Digraph)
            and self.n == other.n
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={list(self.arcs)})"


def make_digraph(n: int, arcs: Iterable[tuple[int, int]]) -> Digraph:
    """Build a digraph; duplicate pairs collapse, loops and bad endpoints raise."""
    return Digraph.from_arcs(n, arcs)


def complete_digraph(n: int) -> Digraph:
    if n < 1:
        raise DigraphError(f"vertex count must be positive, got {n}")
    full = (1 << n) - 1
    return Digraph(n, tuple(full & ~(1 << u) for u in range(n)))


def reverse(d: Digraph) -> Digraph:
    rows = [0] * d.n
    for u, row in enumerate(d.rows):
        while row:
            v = (row & -row).bit_length() - 1
            row &= row - 1
            rows[v] |= 1 << u
    return Digraph(d.n, tuple(rows))


def is_symmetric(d: Digraph) -> bool:
    return reverse(d).rows == d.rows


def delete_arcs(d: Digraph, arcs: Iterable[tuple[int, int]]) -> Digraph:
    rows = list(d.rows)
    for u, v in arcs:
        if not (0 <= u < d.n and 0 <= v < d.n) or not (rows[u] >> v) & 1:
            raise DigraphError(f"arc ({u},{v}) not present, cannot delete")
        rows[u] &= ~(1 << v)
    return Digraph(d.n, tuple(rows))


def delete_arc(d: Digraph, u: int, v: int) -> Digraph:
    return delete_arcs(d, [(u, v)])


def induced(d: Digraph, vertices: Iterable[int]) -> tuple[Digraph, dict[int, int]]:
    """Induced subdigraph on ``vertices`` plus the old->new index map."""
    xs = sorted(set(vertices))
    if not xs:
        raise DigraphError("induced subdigraph needs a nonempty vertex set")
    if xs[0] < 0 or xs[-1] >= d.n:
        raise DigraphError(f"vertex set {xs} out of range for n={d.n}")
    idx = {v: i for i, v in enumerate(xs)}
    rows = [0] * len(xs)
    for v in xs:
        row = d.rows[v]
        new = 0
        for w in xs:
            if (row >> w) & 1:
                new |= 1 << idx[w]
        rows[idx[v]] = new
    return Digraph(len(xs), tuple(rows)), idx


def _reach_mask(n: int, rows: tuple[int, ...], start: int) -> int:
    reach = 1 << start
    frontier = reach
    while frontier:
        nxt = 0
        f = frontier
        while f:
            u = (f & -f).bit_length() - 1
            f &= f - 1
            nxt |= rows[u]
        nxt &= ~reach
        reach |= nxt
        frontier = nxt
    return reach


def is_strong(d: Digraph) -> bool:
    """True iff the digraph has exactly one strongly connected component."""
    if d.n == 1:
        return True
    full = (1 << d.n) - 1
    if _reach_mask(d.n, d.rows, 0) != full:
        return False
    back = reverse(d)
    return _reach_mask(d.n, back.rows, 0) == full


def is_minimally_strong(d: Digraph) -> bool:
    if not is_strong(d):
        return False
    return all(not is_strong(delete_arc(d, u, v)) for u, v in d.arcs)


# -- canonical forms (n <= 7, permutation orbit minimisation) ---------------


class CanonicalCode(NamedTuple):
    """Total-order key for the isomorphism class of a digraph (n <= 7)."""

    n: int
    code: int


@lru_cache(maxsize=None)
def _pair_index(n: int) -> dict[tuple[int, int], int]:
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    return {p: i for i, p in enumerate(pairs)}


@lru_cache(maxsize=None)
def _pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((u, v) for u in range(n) for v in range(n) if u != v)


def arc_mask(d: Digraph) -> int:
    """Arc set packed into the lexicographic ordered-pair index."""
    idx = _pair_index(d.n)
    mask = 0
    for u, v in d.arcs:
        mask |= 1 << idx[(u, v)]
    return mask


def digraph_from_mask(n: int, mask: int) -> Digraph:
    rows = [0] * n
    for (u, v), i in _pair_index(n).items():
        if (mask >> i) & 1:
            rows[u] |= 1 << v
    return Digraph(n, tuple(rows))


def _degree_constrained_perms(d: Digraph) -> Iterator[tuple[int, ...]]:
    """Permutations sending each vertex to a slot with its (out,in) degree pair,
    where slots follow the sorted degree-pair sequence."""
    n = d.n
    cols = [d.in_degree(v) for v in range(n)]
    dp = [(d.out_degree(u), cols[u]) for u in range(n)]
    order = sorted(range(n), key=lambda u: dp[u])
    target = [dp[u] for u in order]
    # group contiguous equal-degree slots
    groups: list[list[int]] = []
    start = 0
    for i in range(1, n + 1):
        if i == n or target[i] != target[start]:
            groups.append(order[start:i])
            start = i
    slot = 0
    slot_ranges = []
    for g in groups:
        slot_ranges.append(range(slot, slot + len(g)))
        slot += len(g)

    def rec(gi: int, perm: list[int]) -> Iterator[tuple[int, ...]]:
        if gi == len(groups):
            yield tuple(perm)
            return
        verts = groups[gi]
        for assignment in permutations(slot_ranges[gi]):
            for v, s in zip(verts, assignment):
                perm[v] = s
            yield from rec(gi + 1, perm)

    yield from rec(0, [0] * n)


def _permuted_mask(n: int, d: Digraph, perm: tuple[int, ...]) -> int:
    idx = _pair_index(n)
    mask = 0
    for u, v in d.arcs:
        mask |= 1 << idx[(perm[u], perm[v])]
    return mask


def canonical_form(d: Digraph) -> CanonicalCode:
    """Isomorphism-invariant code: minimum packed arc mask over all
    degree-respecting relabelings.  Equal codes iff isomorphic."""
    if d.n > CANON_MAX_N:
        raise GuardError(f"canonical forms supported for n <= {CANON_MAX_N}, got {d.n}")
    from . import backend

    perms = tuple(_degree_constrained_perms(d))
    best = backend.min_arc_mask(d, perms)
    return CanonicalCode(d.n, best)


def digraph_from_code(code: CanonicalCode) -> Digraph:
    return digraph_from_mask(code.n, code.code)
