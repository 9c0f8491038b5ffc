"""Isomorph-free census of small digraphs and the extremal size functions.

For each (n, k, target, mode) cell the census yields the minimally
generalized connected digraphs of order n; the minimum size comes straight
from the strong-digraph census (a digraph of minimum size among strong
digraphs with the given connectivity value is automatically minimal), the
maximum from the per-arc-verified minimal set.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from pathlib import Path

from .connectivity import (
    ARC,
    CONN_MODES,
    VERTEX,
    connectivity_value,
    is_min_gen_fast,
)
from .constructions import deletion_family_codes
from .digraph import (
    CanonicalCode,
    Digraph,
    canonical_form,
    complete_digraph,
    digraph_from_code,
    is_minimally_strong,
    is_strong,
)
from .errors import GuardError, InputError

CENSUS_MAX_N = 5


@dataclass(frozen=True)
class CensusFilter:
    strong: bool = False
    min_out: int = 0
    min_in: int = 0


@lru_cache(maxsize=None)
def _census(n: int, strong: bool, min_out: int, min_in: int) -> tuple[Digraph, ...]:
    if not 1 <= n <= CENSUS_MAX_N:
        raise GuardError(f"census supported for 1 <= n <= {CENSUS_MAX_N}, got {n}")
    patterns = []
    for u in range(n):
        allowed = []
        for mask in range(1 << n):
            if mask & (1 << u):
                continue
            if mask.bit_count() >= min_out:
                allowed.append(mask)
        patterns.append(allowed)
    codes: set[CanonicalCode] = set()
    for rows in product(*patterns):
        if min_in:
            ok = True
            for v in range(n):
                bit = 1 << v
                if sum(1 for row in rows if row & bit) < min_in:
                    ok = False
                    break
            if not ok:
                continue
        d = Digraph(n, rows)
        if strong and not is_strong(d):
            continue
        codes.add(canonical_form(d))
    return tuple(digraph_from_code(c) for c in sorted(codes))


def enumerate_digraphs(n: int, filt: CensusFilter = CensusFilter()) -> tuple[Digraph, ...]:
    """One representative per isomorphism class passing the filter, ordered by
    canonical code."""
    return _census(n, filt.strong, filt.min_out, filt.min_in)


@lru_cache(maxsize=None)
def minimal_generalized_classes(n: int, k: int, target: int, mode: str) -> tuple[Digraph, ...]:
    """All minimally generalized (k, target)-connected digraph classes of
    order n (degree-filtered census plus per-arc verification)."""
    if mode not in CONN_MODES:
        raise InputError(f"unknown connectivity mode {mode!r}")
    candidates = enumerate_digraphs(n, CensusFilter(strong=True, min_out=target, min_in=target))
    return tuple(d for d in candidates if is_min_gen_fast(d, k, target, mode))


@dataclass(frozen=True)
class ExtremalRecord:
    n: int
    k: int
    target: int
    mode: str
    min_size: int | None
    max_size: int | None
    min_witnesses: tuple[CanonicalCode, ...]
    max_witnesses: tuple[CanonicalCode, ...]
    skipped: bool = False


class _Budget:
    def __init__(self, seconds: float | None):
        self.deadline = None if seconds is None else time.monotonic() + seconds

    def exceeded(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline


def extremal_values(
    n: int, k: int, target: int, mode: str, time_budget: float | None = None
) -> ExtremalRecord:
    """Exact minimum/maximum sizes with complete witness catalogs; cells whose
    computation exceeds ``time_budget`` seconds come back flagged as skipped."""
    if mode not in CONN_MODES:
        raise InputError(f"unknown connectivity mode {mode!r}")
    if not 2 <= k <= n:
        raise InputError(f"k must satisfy 2 <= k <= n={n}, got {k}")
    if not 1 <= target <= n - 1:
        raise InputError(f"target must satisfy 1 <= target <= n-1={n - 1}, got {target}")
    budget = _Budget(time_budget)
    candidates = enumerate_digraphs(n, CensusFilter(strong=True, min_out=target, min_in=target))
    skipped = ExtremalRecord(n, k, target, mode, None, None, (), (), skipped=True)

    by_size: dict[int, list[Digraph]] = {}
    for d in candidates:
        if budget.exceeded():
            return skipped
        if connectivity_value(d, k, mode) == target:
            by_size.setdefault(d.m, []).append(d)
    if not by_size:
        return ExtremalRecord(n, k, target, mode, None, None, (), ())

    # minimum: a smallest strong digraph with this value is necessarily
    # minimal (deleting an arc of a minimal-size member cannot keep the value)
    min_size = min(by_size)
    min_wits = []
    for d in by_size[min_size]:
        assert is_min_gen_fast(d, k, target, mode), "minimum-size member not minimal"
        min_wits.append(canonical_form(d))

    max_size = None
    max_wits: list[CanonicalCode] = []
    for size in sorted(by_size, reverse=True):
        if budget.exceeded():
            return skipped
        wits = [canonical_form(d) for d in by_size[size] if is_min_gen_fast(d, k, target, mode)]
        if wits:
            max_size = size
            max_wits = wits
            break
    assert max_size is not None
    return ExtremalRecord(
        n, k, target, mode, min_size, max_size, tuple(sorted(min_wits)), tuple(sorted(max_wits))
    )


# -- characterization checks --------------------------------------------------

CASE_MINIMALLY_STRONG = "minimally-strong"
CASE_COMPLETE = "complete"
CASE_ARC_FAMILIES = "arc-families"
CASE_VERTEX_FAMILIES = "vertex-families"
CHARACTERIZATION_CASES = (
    CASE_MINIMALLY_STRONG,
    CASE_COMPLETE,
    CASE_ARC_FAMILIES,
    CASE_VERTEX_FAMILIES,
)


@dataclass(frozen=True)
class SetCheck:
    mode: str
    target: int
    passed: bool
    missing: tuple[CanonicalCode, ...]
    unexpected: tuple[CanonicalCode, ...]
    min_witnesses_ok: bool | None = None
    max_witnesses_ok: bool | None = None


@dataclass(frozen=True)
class CharacterizationReport:
    n: int
    k: int
    case: str
    checks: tuple[SetCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _observed_codes(n: int, k: int, target: int, mode: str) -> frozenset[CanonicalCode]:
    return frozenset(canonical_form(d) for d in minimal_generalized_classes(n, k, target, mode))


def _set_check(
    mode: str, target: int, expected: frozenset[CanonicalCode], observed: frozenset[CanonicalCode]
) -> SetCheck:
    missing = tuple(sorted(expected - observed))
    unexpected = tuple(sorted(observed - expected))
    return SetCheck(mode, target, not missing and not unexpected, missing, unexpected)


def verify_characterization(n: int, k: int, case: str) -> CharacterizationReport:
    """Compare the census against the predicted family for one characterized
    (k, target) regime; family cases additionally check which members carry
    the extreme sizes."""
    if case not in CHARACTERIZATION_CASES:
        raise InputError(f"unknown case {case!r}, expected one of {CHARACTERIZATION_CASES}")
    if not 2 <= k <= n:
        raise InputError(f"k must satisfy 2 <= k <= n={n}, got {k}")
    checks: list[SetCheck] = []
    if case == CASE_MINIMALLY_STRONG:
        expected = frozenset(
            canonical_form(d)
            for d in enumerate_digraphs(n, CensusFilter(strong=True))
            if is_minimally_strong(d)
        )
        for mode in (VERTEX, ARC):
            checks.append(_set_check(mode, 1, expected, _observed_codes(n, k, 1, mode)))
    elif case == CASE_COMPLETE:
        expected = frozenset({canonical_form(complete_digraph(n))})
        for mode in (VERTEX, ARC):
            checks.append(_set_check(mode, n - 1, expected, _observed_codes(n, k, n - 1, mode)))
    else:
        mode = ARC if case == CASE_ARC_FAMILIES else VERTEX
        target = n - 2
        if target < 1:
            raise InputError(f"family cases need n >= 3, got n={n}")
        fam1 = deletion_family_codes(n, 1)
        fam2 = deletion_family_codes(n, 2)
        expected = frozenset(fam1 | fam2)
        observed = _observed_codes(n, k, target, mode)
        base = _set_check(mode, target, expected, observed)
        record = extremal_values(n, k, target, mode)
        checks.append(
            SetCheck(
                mode,
                target,
                base.passed
                and frozenset(record.min_witnesses) == fam1
                and frozenset(record.max_witnesses) == fam2,
                base.missing,
                base.unexpected,
                frozenset(record.min_witnesses) == fam1,
                frozenset(record.max_witnesses) == fam2,
            )
        )
    return CharacterizationReport(n, k, case, tuple(checks))


# -- degree profiles -----------------------------------------------------------


@dataclass(frozen=True)
class DegreeProfile:
    """Counts of vertices whose out-/in-degree equals the connectivity target."""

    out_at_target: int
    in_at_target: int


def degree_profile_scan(
    n: int, k: int, target: int, mode: str
) -> tuple[tuple[CanonicalCode, DegreeProfile], ...]:
    """Degree profile of every minimally generalized (k, target)-connected
    class; reporting only, interpretation is left to the caller."""
    out = []
    for d in minimal_generalized_classes(n, k, target, mode):
        prof = DegreeProfile(
            sum(1 for u in range(n) if d.out_degree(u) == target),
            sum(1 for v in range(n) if d.in_degree(v) == target),
        )
        out.append((canonical_form(d), prof))
    return tuple(out)


# -- persistence ---------------------------------------------------------------


def record_summary_line(rec: ExtremalRecord) -> str:
    if rec.skipped:
        raise InputError("cannot persist a skipped record")
    return (
        f"{rec.mode} {rec.n} {rec.k} {rec.target} {rec.min_size} {rec.max_size} "
        f"{len(rec.min_witnesses)} {len(rec.max_witnesses)}"
    )


def write_extremal_record(rec: ExtremalRecord, root: Path) -> Path:
    """Persist one cell: a summary line plus witness digraph files."""
    from .textfmt import serialize_digraph

    cell = Path(root) / f"{rec.mode}_n{rec.n}_k{rec.k}_l{rec.target}"
    cell.mkdir(parents=True, exist_ok=True)
    (cell / "record.txt").write_text(record_summary_line(rec) + "\n", encoding="utf-8")
    for prefix, codes in (("min", rec.min_witnesses), ("max", rec.max_witnesses)):
        for i, code in enumerate(codes):
            path = cell / f"{prefix}_{i:03d}.dg"
            path.write_text(serialize_digraph(digraph_from_code(code)), encoding="utf-8")
    return cell
