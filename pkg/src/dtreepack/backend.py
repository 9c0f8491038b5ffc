"""Selects the packing-search kernel at import time.

The compiled extension covers the hot queries (feasibility thresholds and
canonical-mask minimisation) for n <= 8; the pure-Python twin in
:mod:`dtreepack.solver` handles everything else and serves as the fallback
when the extension is absent or DTREEPACK_PURE is set.
"""

from __future__ import annotations

import os

_impl = None
if not os.environ.get("DTREEPACK_PURE"):
    try:
        from . import _fastcore as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = None

BACKEND_NAME = "compiled" if _impl is not None else "pure"
FAST_MAX_N = 8


def feasible(n: int, rows: tuple[int, ...], s_mask: int, root: int, internal: bool, count: int) -> bool:
    """Do ``count`` disjoint (S,r)-trees exist?"""
    if _impl is not None and n <= FAST_MAX_N:
        return bool(_impl.feasible(n, rows, s_mask, root, internal, count))
    from .solver import search_packing

    ok, _ = search_packing(n, rows, s_mask, root, internal, count, collect=False)
    return ok


def pure_feasible(n: int, rows: tuple[int, ...], s_mask: int, root: int, internal: bool, count: int) -> bool:
    """Pure-Python route, exposed for backend-agreement tests and benchmarks."""
    from .solver import search_packing

    ok, _ = search_packing(n, rows, s_mask, root, internal, count, collect=False)
    return ok


def min_arc_mask(d, perms) -> int:
    """Minimum packed arc mask of ``d`` over the given vertex permutations."""
    if _impl is not None and d.n <= FAST_MAX_N:
        flat = bytes(p for perm in perms for p in perm)
        return _impl.min_arc_mask(d.n, d.rows, flat, len(perms))
    return pure_min_arc_mask(d, perms)


def pure_min_arc_mask(d, perms) -> int:
    from .digraph import _permuted_mask

    return min(_permuted_mask(d.n, d, perm) for perm in perms)
