"""Syntax tree for the read-only Cypher subset.

Dataclass equality doubles as the structural equality used by the
round-trip tests; every node type is a frozen value object.
"""

from __future__ import annotations

from dataclasses import dataclass, field

Literal = str | int | float | bool


@dataclass(frozen=True)
class StartBinding:
    variable: str
    index: str
    key_field: str
    key_value: str


@dataclass(frozen=True)
class Hop:
    label: str
    variable: str
    # "out": previous -[:label]-> variable, "in": previous <-[:label]- variable
    direction: str


@dataclass(frozen=True)
class PathPattern:
    head: str
    hops: tuple[Hop, ...] = ()

    def variables(self) -> list[str]:
        return [self.head] + [hop.variable for hop in self.hops]


@dataclass(frozen=True)
class PropertyAccess:
    variable: str
    name: str


@dataclass(frozen=True)
class Comparison:
    left: "PropertyAccess | Literal"
    op: str  # one of = <> < > <= >=
    right: "PropertyAccess | Literal"


@dataclass(frozen=True)
class And:
    parts: tuple["BooleanExpr", ...]


@dataclass(frozen=True)
class Or:
    parts: tuple["BooleanExpr", ...]


BooleanExpr = Comparison | And | Or


@dataclass(frozen=True)
class ReturnItem:
    variable: str
    # None means the whole node is returned
    property: str | None = None


@dataclass(frozen=True)
class SortSpec:
    property: str
    ascending: bool = True


@dataclass(frozen=True)
class QueryAst:
    start: tuple[StartBinding, ...] = ()
    match: tuple[PathPattern, ...] = ()
    where: BooleanExpr | None = None
    returns: tuple[ReturnItem, ...] = ()
    distinct: bool = False
    sort: SortSpec | None = None
    limit: int | None = None

    def bound_variables(self) -> list[str]:
        """Variables in binding order: START bindings, then pattern positions."""
        seen: dict[str, None] = {}
        for binding in self.start:
            seen.setdefault(binding.variable)
        for pattern in self.match:
            for var in pattern.variables():
                seen.setdefault(var)
        return list(seen)
