"""Steiner instances, out-trees, packings, and their verification."""

from __future__ import annotations

from dataclasses import dataclass, field

from .digraph import Digraph
from .errors import InputError

ARC = "arc"
INTERNAL = "internal"
PACKING_MODES = (ARC, INTERNAL)


@dataclass(frozen=True)
class SteinerInstance:
    """A terminal set with a designated root (root in terminals, >= 2 terminals)."""

    terminals: tuple[int, ...]
    root: int

    def __post_init__(self):
        object.__setattr__(self, "terminals", tuple(sorted(set(self.terminals))))
        if len(self.terminals) < 2:
            raise InputError(f"need at least 2 terminals, got {self.terminals}")
        if self.root not in self.terminals:
            raise InputError(f"root {self.root} not among terminals {self.terminals}")

    def validate(self, n: int) -> None:
        if self.terminals[0] < 0 or self.terminals[-1] >= n:
            raise InputError(f"terminals {self.terminals} out of range for n={n}")

    @property
    def k(self) -> int:
        return len(self.terminals)

    @property
    def terminal_mask(self) -> int:
        mask = 0
        for t in self.terminals:
            mask |= 1 << t
        return mask


@dataclass(frozen=True)
class OutTree:
    """Out-tree as (root, sorted arc tuple).  May be the single vertex {root}."""

    root: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs)))

    @property
    def vertices(self) -> frozenset[int]:
        vs = {self.root}
        for u, v in self.arcs:
            vs.add(u)
            vs.add(v)
        return frozenset(vs)

    @property
    def heads(self) -> frozenset[int]:
        return frozenset(v for _, v in self.arcs)


def is_out_tree(d: Digraph, arcs, root: int) -> bool:
    """True iff ``arcs`` (all present in ``d``) form an out-tree rooted at ``root``:
    the root has in-degree 0, every other touched vertex in-degree exactly 1,
    and everything is reachable from the root along the arcs."""
    arcs = list(arcs)
    if not all(0 <= u < d.n and 0 <= v < d.n and d.has_arc(u, v) for u, v in arcs):
        return False
    if len(set(arcs)) != len(arcs):
        return False
    heads: dict[int, int] = {}
    vertices = {root}
    for u, v in arcs:
        heads[v] = heads.get(v, 0) + 1
        vertices.add(u)
        vertices.add(v)
    if heads.get(root, 0) != 0:
        return False
    if any(c != 1 for v, c in heads.items()):
        return False
    if len(arcs) != len(vertices) - 1:
        return False
    # reachability from the root
    children: dict[int, list[int]] = {}
    for u, v in arcs:
        children.setdefault(u, []).append(v)
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for v in children.get(u, ()):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen == vertices


@dataclass(frozen=True)
class PackingVerdict:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class TreePacking:
    """A collection of (S,r)-trees with a disjointness mode."""

    instance: SteinerInstance
    mode: str
    trees: tuple[OutTree, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.mode not in PACKING_MODES:
            raise InputError(f"unknown disjointness mode {self.mode!r}")

    @property
    def size(self) -> int:
        return len(self.trees)


def verify_packing(d: Digraph, packing: TreePacking) -> PackingVerdict:
    """Check every packing invariant against ``d``; the first violation found
    is reported in the verdict instead of raising."""
    inst = packing.instance
    inst.validate(d.n)
    s = set(inst.terminals)
    for i, tree in enumerate(packing.trees):
        if tree.root != inst.root:
            return PackingVerdict(False, f"tree {i}: root {tree.root} != {inst.root}")
        for u, v in tree.arcs:
            if not (0 <= u < d.n and 0 <= v < d.n and d.has_arc(u, v)):
                return PackingVerdict(False, f"tree {i}: arc ({u},{v}) not in digraph")
        if not is_out_tree(d, tree.arcs, tree.root):
            return PackingVerdict(False, f"tree {i}: not an out-tree rooted at {tree.root}")
        if not s <= tree.vertices:
            missing = sorted(s - tree.vertices)
            return PackingVerdict(False, f"tree {i}: terminals {missing} not covered")
    for i in range(len(packing.trees)):
        for j in range(i + 1, len(packing.trees)):
            ti, tj = packing.trees[i], packing.trees[j]
            shared_arcs = set(ti.arcs) & set(tj.arcs)
            if shared_arcs:
                a = min(shared_arcs)
                return PackingVerdict(False, f"trees {i},{j}: shared arc {a}")
            if packing.mode == INTERNAL:
                shared = (ti.vertices & tj.vertices) - s
                if shared:
                    v = min(shared)
                    return PackingVerdict(False, f"trees {i},{j}: shared internal vertex {v}")
    return PackingVerdict(True)
