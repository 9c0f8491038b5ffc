"""Exact directed Steiner tree packing and directed tree connectivity."""

from .backend import BACKEND_NAME
from .digraph import (
    CanonicalCode,
    Digraph,
    canonical_form,
    complete_digraph,
    delete_arc,
    delete_arcs,
    digraph_from_code,
    induced,
    is_minimally_strong,
    is_strong,
    is_symmetric,
    make_digraph,
    reverse,
)
from .errors import (
    ConstructionError,
    DigraphError,
    GuardError,
    InputError,
    ParseError,
    ToolkitError,
)
from .steiner import (
    ARC,
    INTERNAL,
    OutTree,
    PackingVerdict,
    SteinerInstance,
    TreePacking,
    is_out_tree,
    verify_packing,
)
from .textfmt import parse_digraph, serialize_digraph

__all__ = [name for name in dir() if not name.startswith("_")]
