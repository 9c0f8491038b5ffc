"""Connectivity invariants: minima of packing numbers over all (S,r) choices,
and certificates for minimal generalized connectivity.

Vertex mode minimises the internally disjoint packing number, arc mode the
arc-disjoint one.  Instances are enumerated with S in lexicographic order of
sorted vertex lists and the root ascending within S; the reported argmin is
the first instance attaining the final minimum, i.e. the lexicographically
least one.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from . import backend
from .digraph import Digraph, delete_arc
from .errors import GuardError, InputError
from .solver import max_packing, packing_cap, packing_value
from .steiner import ARC, INTERNAL, SteinerInstance, TreePacking

VERTEX = "vertex"
CONN_MODES = (VERTEX, ARC)
DEFAULT_MAX_N = 8

_PACK_MODE = {VERTEX: INTERNAL, ARC: ARC}


def instances(n: int, k: int):
    for s in combinations(range(n), k):
        for r in s:
            yield SteinerInstance(s, r)


@dataclass(frozen=True)
class ConnectivityReport:
    k: int
    mode: str
    value: int
    argmin_terminals: tuple[int, ...]
    argmin_root: int
    witness: TreePacking


@dataclass(frozen=True)
class MinimalityCertificate:
    k: int
    target: int
    mode: str
    holds: bool
    base_value: int
    per_arc: tuple[tuple[tuple[int, int], int], ...]


def _check_args(d: Digraph, k: int, force: bool) -> None:
    if not 2 <= k <= d.n:
        raise InputError(f"k must satisfy 2 <= k <= n={d.n}, got {k}")
    if d.n > DEFAULT_MAX_N and not force:
        raise GuardError(
            f"n={d.n} beyond the default exact-computation guard {DEFAULT_MAX_N}; pass force=True"
        )


@lru_cache(maxsize=1 << 20)
def _value_cached(rows: tuple[int, ...], k: int, mode: str) -> int:
    """Exact connectivity value, minimum over all instances with early exit."""
    n = len(rows)
    d = Digraph(n, rows)
    internal = mode == VERTEX
    pack_mode = _PACK_MODE[mode]
    best: int | None = None
    for inst in instances(n, k):
        if best == 0:
            break
        if best is not None and backend.feasible(n, rows, inst.terminal_mask, inst.root, internal, best):
            continue  # value >= best, cannot improve the minimum
        cap = packing_cap(d, inst)
        if best is not None:
            cap = min(cap, best - 1)
        v = 0
        while v < cap and backend.feasible(n, rows, inst.terminal_mask, inst.root, internal, v + 1):
            v += 1
        if best is None or v < best:
            best = v
    assert best is not None
    return best


def connectivity_value(d: Digraph, k: int, mode: str, force: bool = False) -> int:
    """Value-only fast path shared by the census code."""
    if mode not in CONN_MODES:
        raise InputError(f"unknown connectivity mode {mode!r}")
    _check_args(d, k, force)
    return _value_cached(d.rows, k, mode)


def _instance_value(args) -> int:
    rows, terminals, root, mode = args
    d = Digraph(len(rows), rows)
    return packing_value(d, SteinerInstance(terminals, root), _PACK_MODE[mode])


def _report(d: Digraph, k: int, mode: str, force: bool, threads: int) -> ConnectivityReport:
    if mode not in CONN_MODES:
        raise InputError(f"unknown connectivity mode {mode!r}")
    _check_args(d, k, force)
    if threads > 1:
        insts = list(instances(d.n, k))
        work = [(d.rows, inst.terminals, inst.root, mode) for inst in insts]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(_instance_value, work, chunksize=8))
        best = min(values)
        arg = insts[values.index(best)]  # first occurrence = lexicographically least
    else:
        best = _value_cached(d.rows, k, mode)
        arg = None
        for inst in instances(d.n, k):
            if packing_value(d, inst, _PACK_MODE[mode]) == best:
                arg = inst
                break
        assert arg is not None
    value, witness = max_packing(d, arg, _PACK_MODE[mode])
    assert value == best
    return ConnectivityReport(k, mode, best, arg.terminals, arg.root, witness)


def kappa_k(d: Digraph, k: int, force: bool = False, threads: int = 1) -> ConnectivityReport:
    """Generalized k-vertex-strong connectivity (internally disjoint packings)."""
    return _report(d, k, VERTEX, force, threads)


def lambda_k(d: Digraph, k: int, force: bool = False, threads: int = 1) -> ConnectivityReport:
    """Generalized k-arc-strong connectivity (arc-disjoint packings)."""
    return _report(d, k, ARC, force, threads)


def is_min_gen(
    d: Digraph, k: int, target: int, mode: str, force: bool = False
) -> MinimalityCertificate:
    """Certificate for minimal generalized (k, target)-connectivity: the base
    value must equal ``target`` and every single-arc deletion must land exactly
    on ``target - 1``."""
    if mode not in CONN_MODES:
        raise InputError(f"unknown connectivity mode {mode!r}")
    _check_args(d, k, force)
    if not 1 <= target <= d.n - 1:
        raise InputError(f"target must satisfy 1 <= target <= n-1={d.n - 1}, got {target}")
    base = _value_cached(d.rows, k, mode)
    per_arc = tuple(
        ((u, v), _value_cached(delete_arc(d, u, v).rows, k, mode)) for u, v in d.arcs
    )
    holds = base == target and all(v == target - 1 for _, v in per_arc)
    return MinimalityCertificate(k, target, mode, holds, base, per_arc)


def is_min_gen_fast(d: Digraph, k: int, target: int, mode: str) -> bool:
    """Decision-only minimality check used by the census: avoids computing the
    exact post-deletion values (an arc passes as soon as one instance refutes
    feasibility at ``target``)."""
    if connectivity_value(d, k, mode) != target:
        return False
    internal = mode == VERTEX
    n = d.n
    for u, v in d.arcs:
        rows = delete_arc(d, u, v).rows
        dropped = False
        for inst in instances(n, k):
            if not backend.feasible(n, rows, inst.terminal_mask, inst.root, internal, target):
                dropped = True
                break
        if not dropped:
            return False
    return True
