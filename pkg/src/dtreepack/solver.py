"""Exact search for disjoint (S,r)-tree packings.

The search builds trees one at a time, growing each tree by adding arcs whose
head is outside the tree.  Three rules make every packing set visited exactly
once, which is what makes the first packing found the canonical witness:

* within a tree, choosing an addable arc permanently forbids every smaller
  currently-addable arc for that tree (so each tree is generated only along
  its greedy minimum-arc construction order);
* a tree's first arc always leaves the root, and consecutive trees must use
  strictly increasing first-arc heads;
* arcs are ordered by (tail, head); the arc id is ``tail*n + head``.

Trees are restricted to minimal (S,r)-trees (every leaf a terminal): pruning
a non-terminal leaf of any tree in a packing keeps the packing valid, so the
restriction loses no optimal solutions.

Admissible pruning: the root must keep enough unused out-arcs for the
remaining trees, every terminal enough unused in-arcs, and every terminal
must stay reachable from the root (respectively, from the growing tree) in
the unused arc set.
"""

from __future__ import annotations

from functools import lru_cache

from . import backend
from .digraph import Digraph
from .errors import InputError
from .steiner import ARC, INTERNAL, OutTree, SteinerInstance, TreePacking, verify_packing


@lru_cache(maxsize=None)
def _cols(n: int) -> tuple[int, ...]:
    """cols[v] = arc-id mask of all arcs entering v."""
    out = []
    for v in range(n):
        mask = 0
        for u in range(n):
            if u != v:
                mask |= 1 << (u * n + v)
        out.append(mask)
    return tuple(out)


def _arcmask_from_rows(n: int, rows: tuple[int, ...]) -> int:
    mask = 0
    for u, row in enumerate(rows):
        mask |= row << (u * n)
    return mask


def _reach(n: int, avail: int, start_vmask: int, blocked_vmask: int) -> int:
    nmask = (1 << n) - 1
    reach = start_vmask
    frontier = start_vmask
    while frontier:
        nxt = 0
        f = frontier
        while f:
            u = (f & -f).bit_length() - 1
            f &= f - 1
            nxt |= (avail >> (u * n)) & nmask
        nxt &= ~blocked_vmask & ~reach
        reach |= nxt
        frontier = nxt
    return reach


def search_packing(
    n: int,
    rows: tuple[int, ...],
    s_mask: int,
    root: int,
    internal: bool,
    count: int,
    collect: bool = False,
) -> tuple[bool, list[tuple[int, ...]] | None]:
    """Decide whether ``count`` disjoint (S,r)-trees exist; optionally return
    the first packing found (as tuples of arc ids) in canonical DFS order."""
    if count <= 0:
        return True, [] if collect else None
    nmask = (1 << n) - 1
    cols = _cols(n)
    term_mask = s_mask & ~(1 << root)
    terminals = []
    tm = term_mask
    while tm:
        terminals.append((tm & -tm).bit_length() - 1)
        tm &= tm - 1

    avail0 = _arcmask_from_rows(n, rows)
    trees: list[tuple[int, ...]] = []
    found: list[tuple[int, ...]] | None = None

    def next_tree(remaining: int, last_first_head: int, avail: int, banned: int) -> bool:
        nonlocal found
        if remaining == 0:
            if collect:
                found = list(trees)
            return True
        rrow = (avail >> (root * n)) & nmask
        if internal:
            rrow &= ~banned
        firsts = rrow
        if last_first_head >= 0:
            firsts &= ~((1 << (last_first_head + 1)) - 1)
        if firsts.bit_count() < remaining:
            return False
        for t in terminals:
            if (avail & cols[t]).bit_count() < remaining:
                return False
        if (_reach(n, avail, 1 << root, banned) & s_mask) != s_mask:
            return False
        f = firsts
        while f:
            v = (f & -f).bit_length() - 1
            f &= f - 1
            # forbid every smaller root arc within this tree: enforces that the
            # first arc is the tree's minimum root arc
            forb = (((1 << v) - 1) & nmask) << (root * n)
            e = root * n + v
            trees.append((e,))
            if grow(remaining, avail, banned, (1 << root) | (1 << v), 1 << root, forb, v, 1 << e):
                return True
            trees.pop()
        return False

    def grow(
        remaining: int,
        avail: int,
        banned: int,
        tree_v: int,
        tails: int,
        forb: int,
        first_head: int,
        tree_arcs: int,
    ) -> bool:
        if s_mask & ~tree_v == 0:
            leaves = tree_v & ~tails
            if leaves & ~s_mask:
                return False  # non-terminal leaf: not a minimal tree
            new_banned = banned | (tree_v & ~s_mask) if internal else banned
            return next_tree(remaining - 1, first_head, avail & ~tree_arcs, new_banned)
        usable = avail & ~forb
        if (_reach(n, usable, tree_v, banned) & s_mask) != s_mask:
            return False
        heads_ok = ~tree_v & nmask
        if internal:
            heads_ok &= ~banned
        tv = tree_v
        while tv:
            u = (tv & -tv).bit_length() - 1
            tv &= tv - 1
            row = ((usable >> (u * n)) & nmask) & heads_ok
            seen_here = 0
            while row:
                v = (row & -row).bit_length() - 1
                row &= row - 1
                e = u * n + v
                cur = trees[-1]
                trees[-1] = cur + (e,)
                if grow(
                    remaining,
                    avail,
                    banned,
                    tree_v | (1 << v),
                    tails | (1 << u),
                    forb | seen_here,
                    first_head,
                    tree_arcs | (1 << e),
                ):
                    return True
                trees[-1] = cur
                seen_here |= 1 << e
            # arcs from smaller tails were all tried and forbidden downstream;
            # accumulate them so later branches at this node skip them too
            forb |= seen_here
        return False

    ok = next_tree(count, -1, avail0, 0)
    return ok, found


def packing_cap(d: Digraph, inst: SteinerInstance) -> int:
    """A-priori upper bound min(d+(r), min in-degree over terminals)."""
    cap = d.out_degree(inst.root)
    for t in inst.terminals:
        if t != inst.root:
            cap = min(cap, d.in_degree(t))
    return cap


def packing_feasible(d: Digraph, inst: SteinerInstance, mode: str, count: int) -> bool:
    """Threshold query via the selected backend (compiled kernel or pure)."""
    return backend.feasible(d.n, d.rows, inst.terminal_mask, inst.root, mode == INTERNAL, count)


def packing_value(d: Digraph, inst: SteinerInstance, mode: str) -> int:
    cap = packing_cap(d, inst)
    value = 0
    while value < cap and packing_feasible(d, inst, mode, value + 1):
        value += 1
    return value


def _arc_ids_to_tree(n: int, root: int, ids: tuple[int, ...]) -> OutTree:
    arcs = tuple(sorted((e // n, e % n) for e in ids))
    return OutTree(root, arcs)


def max_packing(d: Digraph, inst: SteinerInstance, mode: str) -> tuple[int, TreePacking]:
    """Exact packing number plus the canonical (first-found) witness."""
    if mode not in (ARC, INTERNAL):
        raise InputError(f"unknown disjointness mode {mode!r}")
    inst.validate(d.n)
    value = packing_value(d, inst, mode)
    if value == 0:
        witness = TreePacking(inst, mode, ())
    else:
        ok, raw = search_packing(
            d.n, d.rows, inst.terminal_mask, inst.root, mode == INTERNAL, value, collect=True
        )
        assert ok and raw is not None
        witness = TreePacking(inst, mode, tuple(_arc_ids_to_tree(d.n, inst.root, ids) for ids in raw))
    verdict = verify_packing(d, witness)
    assert verdict.ok, f"internal error: witness failed verification: {verdict.reason}"
    return value, witness
