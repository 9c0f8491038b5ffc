"""Explicit constructions: deletion families of the complete digraph and their
tree packings, Hamiltonian decompositions, layered cycle unions, and the two
join-type extremal digraphs with their packings.

A deletion family member is the complete digraph minus an arc set M inducing
vertex-disjoint cycles; family 1 covers every vertex, family 2 all but one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .digraph import (
    CanonicalCode,
    Digraph,
    canonical_form,
    complete_digraph,
    delete_arcs,
    induced,
    make_digraph,
    reverse,
)
from .errors import ConstructionError, InputError
from .steiner import ARC, INTERNAL, OutTree, SteinerInstance, TreePacking

FAMILY_COVER_ALL = 1
FAMILY_COVER_ALL_BUT_ONE = 2


@dataclass(frozen=True)
class CyclePartition:
    """Vertex-disjoint cycles (each a vertex sequence of length >= 2), plus an
    optional single uncovered vertex; together they cover 0..n-1.  A length-2
    part denotes the digon's two arcs."""

    parts: tuple[tuple[int, ...], ...]
    uncovered: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(tuple(p) for p in self.parts))

    @property
    def family(self) -> int:
        return FAMILY_COVER_ALL if self.uncovered is None else FAMILY_COVER_ALL_BUT_ONE

    def validate(self, n: int) -> None:
        seen: set[int] = set()
        if not self.parts:
            raise InputError("cycle partition needs at least one cycle")
        for part in self.parts:
            if len(part) < 2:
                raise InputError(f"cycle {part} too short, need length >= 2")
            for v in part:
                if not 0 <= v < n:
                    raise InputError(f"vertex {v} out of range for n={n}")
                if v in seen:
                    raise InputError(f"vertex {v} appears in two cycles")
                seen.add(v)
        if self.uncovered is not None:
            if not 0 <= self.uncovered < n:
                raise InputError(f"uncovered vertex {self.uncovered} out of range")
            if self.uncovered in seen:
                raise InputError(f"uncovered vertex {self.uncovered} lies on a cycle")
            seen.add(self.uncovered)
        if seen != set(range(n)):
            missing = sorted(set(range(n)) - seen)
            raise InputError(f"vertices {missing} not covered by the partition")

    def deleted_arcs(self) -> tuple[tuple[int, int], ...]:
        arcs = []
        for part in self.parts:
            for i, u in enumerate(part):
                arcs.append((u, part[(i + 1) % len(part)]))
        return tuple(sorted(arcs))

    def successor(self) -> dict[int, int]:
        succ: dict[int, int] = {}
        for part in self.parts:
            for i, u in enumerate(part):
                succ[u] = part[(i + 1) % len(part)]
        return succ

    def predecessor(self) -> dict[int, int]:
        return {v: u for u, v in self.successor().items()}

    def part_of(self, v: int) -> tuple[int, ...]:
        for part in self.parts:
            if v in part:
                return part
        raise InputError(f"vertex {v} not on any cycle")

    def normalized(self) -> "CyclePartition":
        parts = []
        for part in self.parts:
            i = part.index(min(part))
            parts.append(part[i:] + part[:i])
        return CyclePartition(tuple(sorted(parts)), self.uncovered)


def build_deletion_family(n: int, cp: CyclePartition) -> Digraph:
    """Complete digraph on n vertices minus the partition's cycle arcs."""
    cp.validate(n)
    return delete_arcs(complete_digraph(n), cp.deleted_arcs())


def recognize_deletion_family(d: Digraph) -> tuple[int | None, CyclePartition | None]:
    """Classify a digraph as a family-1 or family-2 deletion of the complete
    digraph; returns (family, partition) or (None, None)."""
    n = d.n
    m_out = [0] * n
    m_in = [0] * n
    succ: dict[int, int] = {}
    for u in range(n):
        missing = ((1 << n) - 1) & ~(1 << u) & ~d.rows[u]
        while missing:
            v = (missing & -missing).bit_length() - 1
            missing &= missing - 1
            m_out[u] += 1
            m_in[v] += 1
            succ[u] = v
    touched = [v for v in range(n) if m_out[v] or m_in[v]]
    if not touched:
        return None, None
    for v in touched:
        if m_out[v] != 1 or m_in[v] != 1:
            return None, None
    uncovered = [v for v in range(n) if not m_out[v]]
    if len(uncovered) > 1:
        return None, None
    parts = []
    visited: set[int] = set()
    for v in sorted(touched):
        if v in visited:
            continue
        cycle = [v]
        visited.add(v)
        w = succ[v]
        while w != v:
            cycle.append(w)
            visited.add(w)
            w = succ[w]
        parts.append(tuple(cycle))
    cp = CyclePartition(tuple(sorted(parts)), uncovered[0] if uncovered else None)
    family = FAMILY_COVER_ALL if not uncovered else FAMILY_COVER_ALL_BUT_ONE
    return family, cp


def enumerate_cycle_partitions(n: int, family: int):
    """All labeled cycle partitions of 0..n-1 for the given family."""

    def rec(vertices: tuple[int, ...]):
        if not vertices:
            yield ()
            return
        head, rest = vertices[0], vertices[1:]
        for size in range(1, len(rest) + 1):
            for chosen in combinations(rest, size):
                remaining = tuple(v for v in rest if v not in chosen)
                for order in permutations(chosen):
                    part = (head,) + order
                    for tail in rec(remaining):
                        yield (part,) + tail

    if family == FAMILY_COVER_ALL:
        for parts in rec(tuple(range(n))):
            yield CyclePartition(parts, None)
    elif family == FAMILY_COVER_ALL_BUT_ONE:
        for w in range(n):
            others = tuple(v for v in range(n) if v != w)
            for parts in rec(others):
                yield CyclePartition(parts, w)
    else:
        raise InputError(f"family must be 1 or 2, got {family}")


def deletion_family_codes(n: int, family: int) -> frozenset[CanonicalCode]:
    """Canonical codes of every family member of order n."""
    return frozenset(
        canonical_form(build_deletion_family(n, cp))
        for cp in enumerate_cycle_partitions(n, family)
    )


def _tree(root: int, arcs) -> OutTree:
    return OutTree(root, tuple(arcs))


def _check_pair(d: Digraph, cp: CyclePartition) -> None:
    cp.validate(d.n)
    if build_deletion_family(d.n, cp) != d:
        raise InputError("digraph does not match the cycle partition")


def family_branchings(d: Digraph, cp: CyclePartition, root: int) -> TreePacking:
    """n-2 pairwise arc-disjoint out-branchings of a deletion family member,
    rooted anywhere.

    Root on a cycle: its cycle-successor b is the relay; each other vertex x
    gets the branching {root->x, x->b, b->succ(x)} plus x to everything else,
    where succ wraps along x's own cycle.  The root's cycle-predecessor (and
    the uncovered vertex, if any) instead get a star from x with the single
    entry arc root->x.  Uncovered root: one branching enters through an
    anchored cycle arc's tail, the rest follow the relay pattern with the
    anchor's head as relay.
    """
    n = d.n
    _check_pair(d, cp)
    if not 0 <= root < n:
        raise InputError(f"root {root} out of range")
    succ = cp.successor()
    every = set(range(n))
    trees: list[OutTree] = []
    if cp.uncovered == root:
        anchor = min(p[0] for p in cp.normalized().parts)
        u1, u2 = anchor, succ[anchor]
        first = [(root, u1), (root, u2)] + [(u1, v) for v in sorted(every - {u1, u2, root})]
        trees.append(_tree(root, first))
        for x in sorted(every - {root, u1, u2}):
            sx = succ[x]
            arcs = [(root, x), (x, u2), (u2, sx)]
            arcs += [(x, v) for v in sorted(every - {u2, x, sx, root})]
            trees.append(_tree(root, arcs))
    else:
        a = root
        b = succ[a]
        cyc = cp.part_of(a)
        pred_a = cp.predecessor()[a] if len(cyc) >= 3 else None
        for x in sorted(every - {a, b}):
            if x == pred_a or x == cp.uncovered:
                arcs = [(a, x)] + [(x, v) for v in sorted(every - {a, x})]
            else:
                sx = succ[x]
                arcs = [(a, x), (x, b), (b, sx)]
                arcs += [(x, v) for v in sorted(every - {a, b, x, sx})]
            trees.append(_tree(a, arcs))
    inst = SteinerInstance(tuple(range(n)), root)
    return TreePacking(inst, ARC, tuple(trees))


def _relabel_packing_trees(packing: TreePacking, back: dict[int, int]) -> list[OutTree]:
    return [
        OutTree(back[t.root], tuple((back[u], back[v]) for u, v in t.arcs))
        for t in packing.trees
    ]


def _restrict_partition(cp: CyclePartition, keep: set[int], idx: dict[int, int],
                        drop_part: tuple[int, ...] | None = None,
                        extra_part: tuple[int, ...] | None = None,
                        uncovered: int | None = None) -> CyclePartition:
    parts = []
    for part in cp.parts:
        if drop_part is not None and part == drop_part:
            continue
        parts.append(tuple(idx[v] for v in part))
    if extra_part is not None:
        parts.append(tuple(idx[v] for v in extra_part))
    return CyclePartition(tuple(parts), idx[uncovered] if uncovered is not None else None)


def family_near_spanning_trees(
    d: Digraph, cp: CyclePartition, terminals, root: int
) -> TreePacking:
    """n-2 internally disjoint (S,r)-trees for |S| = n-1 in a deletion family
    member: n-3 branchings of a reduced family member on S plus one tree that
    picks up the missing vertex through arcs the branchings cannot touch.

    Raises ConstructionError for the one genuinely infeasible configuration
    (family 1, missing vertex on a digon, root = its digon partner), where a
    counting argument shows no n-2 internally disjoint trees exist at all.
    """
    n = d.n
    _check_pair(d, cp)
    s = sorted(set(terminals))
    if len(s) != n - 1 or any(not 0 <= v < n for v in s):
        raise InputError(f"terminal set must have n-1 = {n - 1} distinct vertices in range")
    if root not in s:
        raise InputError(f"root {root} must be a terminal")
    z = next(v for v in range(n) if v not in s)
    every = set(range(n))
    sub, idx = induced(d, s)
    back = {i: v for v, i in idx.items()}

    if z == cp.uncovered:
        cp_sub = _restrict_partition(cp, set(s), idx)
        branch = family_branchings(sub, cp_sub, idx[root])
        trees = _relabel_packing_trees(branch, back)
        z_arcs = [(root, z)] + [(z, v) for v in sorted(every - {root, z})]
        trees.append(_tree(root, z_arcs))
    else:
        cyc = cp.part_of(z)
        p = cp.predecessor()[z]
        q = cp.successor()[z]
        if len(cyc) >= 3:
            # shrink z's cycle: the path q..p inside S closes up with a new
            # deleted arc p->q, so remove that arc from the induced digraph
            i = cyc.index(q)
            shrunk = (cyc[i:] + cyc[:i])[: len(cyc) - 1]
            reduced = delete_arcs(sub, [(idx[p], idx[q])])
            cp_sub = _restrict_partition(cp, set(s), idx, drop_part=cyc,
                                         extra_part=shrunk, uncovered=cp.uncovered)
            branch = family_branchings(reduced, cp_sub, idx[root])
            trees = _relabel_packing_trees(branch, back)
            if root == p:
                z_arcs = [(p, q), (q, z)] + [(z, v) for v in sorted(every - {p, q, z})]
            elif root == q:
                z_arcs = [(q, z)] + [(z, v) for v in sorted(every - {q, z})]
            else:
                z_arcs = [(root, z), (p, q)] + [(z, v) for v in sorted(every - {root, q, z})]
            trees.append(_tree(root, z_arcs))
        elif cp.uncovered is None:
            # z sits on a digon (p,z) and every other vertex is cycle-covered
            if root == p:
                raise ConstructionError(
                    f"no {n - 2} internally disjoint trees exist: missing vertex {z} "
                    f"lies on a deleted digon and the root {root} is its partner "
                    f"(the root's {n - 2} usable out-arcs cannot feed {n - 3} "
                    f"branchings avoiding {z} plus the tree through {z})"
                )
            cp_sub = _restrict_partition(cp, set(s), idx, drop_part=cyc, uncovered=p)
            branch = family_branchings(sub, cp_sub, idx[root])
            trees = _relabel_packing_trees(branch, back)
            used = {(u, v) for t in trees for u, v in t.arcs}
            y = next(
                v for v in sorted(every - {p, z})
                if d.has_arc(v, p) and (v, p) not in used
            )
            z_arcs = [(root, z)] + [(z, v) for v in sorted(every - {root, p, z})] + [(y, p)]
            trees.append(_tree(root, z_arcs))
        else:
            # z on a digon (p,z) with an uncovered vertex w in S: pair p with w
            # as a freshly deleted digon, freeing those two arcs for the z-tree
            w = cp.uncovered
            reduced = delete_arcs(sub, [(idx[p], idx[w]), (idx[w], idx[p])])
            extra = (min(p, w), max(p, w))
            cp_sub = _restrict_partition(cp, set(s), idx, drop_part=cyc, extra_part=extra)
            branch = family_branchings(reduced, cp_sub, idx[root])
            trees = _relabel_packing_trees(branch, back)
            if root == w:
                z_arcs = [(w, p), (w, z)] + [(z, v) for v in sorted(every - {p, z, w})]
            elif root == p:
                z_arcs = [(p, w), (w, z)] + [(z, v) for v in sorted(every - {p, w, z})]
            else:
                z_arcs = [(root, z), (w, p)] + [(z, v) for v in sorted(every - {root, z, p})]
            trees.append(_tree(root, z_arcs))

    inst = SteinerInstance(tuple(s), root)
    return TreePacking(inst, INTERNAL, tuple(trees))


def family_pair_trees(d: Digraph, cp: CyclePartition, terminals, root: int) -> TreePacking:
    """n-2 internally disjoint trees for a terminal pair {r,v} in a deletion
    family member: the direct arc plus two-arc paths through distinct
    intermediaries; when both r's cycle-successor and v's cycle-predecessor
    are distinct spare vertices, they carry the one necessary three-arc path
    r -> pred(v) -> succ(r) -> v."""
    n = d.n
    _check_pair(d, cp)
    s = sorted(set(terminals))
    if len(s) != 2:
        raise InputError(f"terminal set must be a pair, got {s}")
    if root not in s:
        raise InputError(f"root {root} must be a terminal")
    v = s[0] if s[1] == root else s[1]
    succ = cp.successor()
    pred = cp.predecessor()
    spares = [u for u in range(n) if u not in (root, v)]
    trees: list[OutTree] = []
    if not d.has_arc(root, v):
        # root -> v was deleted, so root = pred(v): every spare carries a
        # two-arc path
        for u in spares:
            trees.append(_tree(root, [(root, u), (u, v)]))
    else:
        trees.append(_tree(root, [(root, v)]))
        a = succ.get(root)
        a = a if a in spares else None
        b = pred.get(v)
        b = b if b in spares else None
        direct = [u for u in spares if u != a and u != b]
        for u in direct:
            trees.append(_tree(root, [(root, u), (u, v)]))
        if a is not None and b is not None and a != b:
            trees.append(_tree(root, [(root, b), (b, a), (a, v)]))
    if len(trees) != n - 2:
        raise ConstructionError(f"expected {n - 2} trees, built {len(trees)}")
    inst = SteinerInstance(tuple(s), root)
    return TreePacking(inst, INTERNAL, tuple(trees))


# -- Hamiltonian decompositions ---------------------------------------------

_HAM_CACHE: dict[int, tuple[tuple[int, ...], ...]] = {}


def _walecki_cycles(n: int) -> list[list[int]]:
    """Hamiltonian cycle decomposition of the undirected complete graph K_n,
    n odd: (n-1)/2 cycles through a hub via the classic zig-zag."""
    m = (n - 1) // 2
    offsets = [0]
    for delta in range(1, m):
        offsets += [delta, -delta]
    offsets.append(m)
    cycles = []
    for j in range(m):
        cycles.append([n - 1] + [(j + o) % (n - 1) for o in offsets])
    return cycles


def _ham_decompose_even(n: int) -> list[list[int]] | None:
    """Backtracking search for n-1 arc-disjoint Hamiltonian dicycles
    partitioning the complete digraph; cycles start at 0 with strictly
    increasing second vertex, which visits every decomposition set once."""
    full = (1 << n) - 1
    rows = [full & ~(1 << u) for u in range(n)]
    cycles: list[list[int]] = []

    def strong_left() -> bool:
        reach = 1
        frontier = 1
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
        if reach != full:
            return False
        back = [0] * n
        for u in range(n):
            r = rows[u]
            while r:
                v = (r & -r).bit_length() - 1
                r &= r - 1
                back[v] |= 1 << u
        reach = 1
        frontier = 1
        while frontier:
            nxt = 0
            f = frontier
            while f:
                u = (f & -f).bit_length() - 1
                f &= f - 1
                nxt |= back[u]
            nxt &= ~reach
            reach |= nxt
            frontier = nxt
        return reach == full

    def extend(path: list[int], used: int, min_second: int) -> bool:
        u = path[-1]
        if len(path) == n:
            if not (rows[u] >> 0) & 1:
                return False
            arcs = list(zip(path, path[1:] + [0]))
            for x, y in arcs:
                rows[x] &= ~(1 << y)
            cycles.append(path.copy())
            if len(cycles) == n - 1 or (strong_left() and solve(path[1])):
                return True
            cycles.pop()
            for x, y in arcs:
                rows[x] |= 1 << y
            return False
        row = rows[u] & ~used
        if len(path) == 1:
            row &= ~((1 << (min_second + 1)) - 1)
        while row:
            v = (row & -row).bit_length() - 1
            row &= row - 1
            path.append(v)
            if extend(path, used | (1 << v), min_second):
                return True
            path.pop()
        return False

    def solve(min_second: int) -> bool:
        return extend([0], 1, min_second)

    if solve(-1):
        return cycles
    return None


def tillson_decomposition(n: int) -> tuple[tuple[int, ...], ...]:
    """Partition of the complete digraph's arcs into n-1 Hamiltonian dicycles
    (each returned as a vertex sequence).  Impossible for n in {4, 6}."""
    if n < 2:
        raise InputError(f"need n >= 2, got {n}")
    if n in (4, 6):
        raise ConstructionError(
            f"the complete digraph on {n} vertices admits no Hamiltonian "
            f"decomposition (possible exactly for n not in {{4, 6}})"
        )
    if n > 10:
        raise InputError(f"decomposition search supported for n <= 10, got {n}")
    if n in _HAM_CACHE:
        return _HAM_CACHE[n]
    if n == 2:
        result: list[list[int]] = [[0, 1]]
    elif n % 2 == 1:
        result = []
        for cyc in _walecki_cycles(n):
            result.append(cyc)
            result.append([cyc[0]] + cyc[:0:-1])
    else:
        found = _ham_decompose_even(n)
        if found is None:  # cannot happen for even n >= 8 (decompositions exist)
            raise ConstructionError(f"decomposition search failed for n={n}")
        result = found
    out = tuple(tuple(c) for c in result)
    _HAM_CACHE[n] = out
    return out


_BESPOKE_CYCLES = {
    4: ((0, 1, 2, 3), (0, 3, 2, 1)),
    6: ((0, 1, 2, 3, 4, 5), (0, 5, 4, 3, 2, 1), (0, 2, 4, 1, 5, 3), (0, 3, 5, 1, 4, 2)),
}


def layered_cycle_digraph(n: int, layers: int) -> Digraph:
    """Union of the first ``layers`` Hamiltonian dicycles of a fixed
    decomposition: an arc-minimal digraph with every degree exactly ``layers``.
    For n in {4,6} (where no full decomposition exists) the top layer count
    yields the complete digraph and lower counts use bespoke cycle lists."""
    if not 1 <= layers <= n - 1:
        raise InputError(f"layers must satisfy 1 <= layers <= n-1={n - 1}, got {layers}")
    if n in _BESPOKE_CYCLES:
        if layers == n - 1:
            return complete_digraph(n)
        cycles = _BESPOKE_CYCLES[n][:layers]
    else:
        cycles = tillson_decomposition(n)[:layers]
    arcs = []
    for cyc in cycles:
        arcs.extend(zip(cyc, cyc[1:] + cyc[:1]))
    return make_digraph(n, arcs)


# -- join constructions ------------------------------------------------------


@dataclass(frozen=True)
class JoinSpec:
    """Hub/leaf split: hubs are vertices 0..hubs-1, leaves the rest."""

    n: int
    hubs: int

    def __post_init__(self):
        if not 1 <= self.hubs <= self.n - 1:
            raise InputError(f"hubs must satisfy 1 <= hubs <= n-1, got {self.hubs}")

    @property
    def hub_set(self) -> tuple[int, ...]:
        return tuple(range(self.hubs))

    @property
    def leaf_set(self) -> tuple[int, ...]:
        return tuple(range(self.hubs, self.n))


CLIQUE_JOIN = "clique-join"
BIPARTITE = "bipartite"


def clique_join_digraph(spec: JoinSpec) -> Digraph:
    """Symmetric digraph of the join of a hub clique with independent leaves."""
    arcs = []
    for i in spec.hub_set:
        for j in spec.hub_set:
            if i != j:
                arcs.append((i, j))
        for u in spec.leaf_set:
            arcs.append((i, u))
            arcs.append((u, i))
    return make_digraph(spec.n, arcs)


def bipartite_join_digraph(spec: JoinSpec) -> Digraph:
    """Complete bipartite digraph between hubs and leaves."""
    arcs = []
    for i in spec.hub_set:
        for u in spec.leaf_set:
            arcs.append((i, u))
            arcs.append((u, i))
    return make_digraph(spec.n, arcs)


def _orient_from_root(edges: list[tuple[int, int]], root: int) -> list[tuple[int, int]]:
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    arcs = []
    seen = {root}
    queue = [root]
    while queue:
        u = queue.pop(0)
        for w in sorted(adj.get(u, ())):
            if w not in seen:
                seen.add(w)
                arcs.append((u, w))
                queue.append(w)
    if len(arcs) != len(edges):
        raise ConstructionError("tree edges do not hang together from the root")
    return arcs


def join_steiner_trees(
    d: Digraph, spec: JoinSpec, inst: SteinerInstance, variant: str
) -> TreePacking:
    """The ``hubs`` internally disjoint (S,r)-trees of a join digraph: each
    hub terminal pairs with a fresh leaf relay, each spare hub serves directly
    (clique join) or through its own fresh relay (bipartite)."""
    if variant == CLIQUE_JOIN:
        expected = clique_join_digraph(spec)
        if spec.n < inst.k + spec.hubs:
            raise InputError(
                f"clique join trees need n >= k + hubs, got n={spec.n}, k={inst.k}, hubs={spec.hubs}"
            )
    elif variant == BIPARTITE:
        expected = bipartite_join_digraph(spec)
        if spec.n < inst.k + 2 * spec.hubs:
            raise InputError(
                f"bipartite trees need n >= k + 2*hubs, got n={spec.n}, k={inst.k}, hubs={spec.hubs}"
            )
    else:
        raise InputError(f"unknown join variant {variant!r}")
    if d != expected:
        raise InputError("digraph does not match the join spec")
    inst.validate(spec.n)
    hub_terms = [t for t in inst.terminals if t < spec.hubs]
    leaf_terms = [t for t in inst.terminals if t >= spec.hubs]
    spare_hubs = [h for h in spec.hub_set if h not in hub_terms]
    fresh = [u for u in spec.leaf_set if u not in leaf_terms]
    trees = []
    for i, w in enumerate(hub_terms):
        relay = fresh[i]
        edges = [(w, u) for u in leaf_terms] + [(relay, x) for x in hub_terms]
        trees.append(_tree(inst.root, _orient_from_root(edges, inst.root)))
    for j, w in enumerate(spare_hubs[: spec.hubs - len(hub_terms)]):
        edges = [(w, u) for u in leaf_terms]
        if variant == CLIQUE_JOIN:
            edges += [(w, x) for x in hub_terms]
        else:
            relay = fresh[len(hub_terms) + j]
            edges += [(w, relay)] + [(relay, x) for x in hub_terms]
        trees.append(_tree(inst.root, _orient_from_root(edges, inst.root)))
    return TreePacking(inst, INTERNAL, tuple(trees))
