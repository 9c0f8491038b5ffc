"""Independent brute-force packing decision, used to cross-check the solver.

Strategy differs from the branch-and-bound route on purpose: enumerate every
minimal (S,r)-tree by choosing a vertex superset of S and a parent function
on it, then backtrack over pairwise-compatible tree sets.
"""

from __future__ import annotations

from itertools import combinations, product

from .digraph import Digraph
from .errors import GuardError, InputError
from .steiner import ARC, INTERNAL, SteinerInstance

ORACLE_MAX_N = 6


def _minimal_trees(d: Digraph, inst: SteinerInstance) -> list[tuple[int, int]]:
    """All minimal (S,r)-trees as (arc id mask, vertex mask) pairs;
    arc id = u*n + v."""
    n = d.n
    root = inst.root
    others = [v for v in range(n) if v not in inst.terminals]
    base = list(inst.terminals)
    found: list[tuple[int, int]] = []
    for extra_size in range(len(others) + 1):
        for extra in combinations(others, extra_size):
            support = sorted(base + list(extra))
            in_support = set(support)
            choices = []
            nonroot = [w for w in support if w != root]
            feasible_support = True
            for w in nonroot:
                parents = [u for u in support if u != w and d.has_arc(u, w)]
                if not parents:
                    feasible_support = False
                    break
                choices.append(parents)
            if not feasible_support:
                continue
            for assignment in product(*choices):
                parent = dict(zip(nonroot, assignment))
                # reachability from root decides treeness (in-degrees are 1 by
                # construction)
                children: dict[int, list[int]] = {w: [] for w in support}
                for w, u in parent.items():
                    children[u].append(w)
                seen = {root}
                stack = [root]
                while stack:
                    u = stack.pop()
                    for w in children[u]:
                        if w not in seen:
                            seen.add(w)
                            stack.append(w)
                if len(seen) != len(support):
                    continue
                # minimality: every leaf is a terminal
                if any(not children[w] and w not in inst.terminals for w in support):
                    continue
                amask = 0
                vmask = 0
                for w, u in parent.items():
                    amask |= 1 << (u * n + w)
                for w in support:
                    vmask |= 1 << w
                found.append((amask, vmask))
    return found


def packing_oracle(d: Digraph, inst: SteinerInstance, mode: str, count: int) -> bool:
    """True iff ``count`` disjoint (S,r)-trees exist (exhaustive check)."""
    if mode not in (ARC, INTERNAL):
        raise InputError(f"unknown disjointness mode {mode!r}")
    if d.n > ORACLE_MAX_N:
        raise GuardError(f"oracle supports n <= {ORACLE_MAX_N}, got {d.n}")
    inst.validate(d.n)
    if count <= 0:
        return True
    trees = _minimal_trees(d, inst)
    if len(trees) < count:
        return False
    s_mask = inst.terminal_mask
    internal = mode == INTERNAL

    def extend(start: int, chosen: list[tuple[int, int]], need: int) -> bool:
        if need == 0:
            return True
        if len(trees) - start < need:
            return False
        for i in range(start, len(trees)):
            am, vm = trees[i]
            ok = True
            for bm, wm in chosen:
                if am & bm:
                    ok = False
                    break
                if internal and (vm & wm) != s_mask:
                    ok = False
                    break
            if ok:
                chosen.append((am, vm))
                if extend(i + 1, chosen, need - 1):
                    return True
                chosen.pop()
        return False

    return extend(0, [], count)
