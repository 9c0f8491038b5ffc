"""Line-oriented digraph text format.

Line 1: ``n m``; then m lines ``u v`` (0-based).  ``#`` starts a comment line.
Serialisation emits arcs in ascending (u,v) order, so parse-then-serialise is
a pure canonical reordering and serialise-then-parse is the identity.
"""

from __future__ import annotations

from .digraph import Digraph, make_digraph
from .errors import ParseError


def parse_digraph(text: str) -> Digraph:
    header: tuple[int, int] | None = None
    arcs: list[tuple[int, int]] = []
    n_expected = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"expected two integers, got {line!r}", lineno) from None
        if header is None:
            if a < 1:
                raise ParseError(f"vertex count must be positive, got {a}", lineno)
            if b < 0:
                raise ParseError(f"arc count must be nonnegative, got {b}", lineno)
            header = (a, b)
            continue
        n_expected = header[0]
        if not (0 <= a < n_expected and 0 <= b < n_expected):
            raise ParseError(f"endpoint out of range in arc ({a},{b})", lineno)
        if a == b:
            raise ParseError(f"loop ({a},{a}) not allowed", lineno)
        arcs.append((a, b))
    if header is None:
        raise ParseError("empty input, expected 'n m' header")
    n, m = header
    if len(arcs) != m:
        raise ParseError(f"header declares {m} arcs, found {len(arcs)}")
    return make_digraph(n, arcs)


def serialize_digraph(d: Digraph) -> str:
    lines = [f"{d.n} {d.m}"]
    lines.extend(f"{u} {v}" for u, v in d.arcs)
    return "\n".join(lines) + "\n"
