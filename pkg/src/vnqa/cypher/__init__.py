from .ast import (
    And,
    Comparison,
    Hop,
    Or,
    PathPattern,
    PropertyAccess,
    QueryAst,
    ReturnItem,
    SortSpec,
    StartBinding,
)
from .parser import parse
from .render import render

__all__ = [
    "And",
    "Comparison",
    "Hop",
    "Or",
    "PathPattern",
    "PropertyAccess",
    "QueryAst",
    "ReturnItem",
    "SortSpec",
    "StartBinding",
    "parse",
    "render",
]
