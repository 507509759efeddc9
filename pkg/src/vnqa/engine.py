"""Evaluate a QueryAst against a PropertyGraph.

Backtracking subgraph matching seeded from START index lookups, then
WHERE filtering, projection, DISTINCT, SORT and LIMIT. The graph is
treated as immutable for the duration of a call, so concurrent
executions are safe.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cypher.ast import And, Comparison, Or, PropertyAccess, QueryAst
from .errors import EvalError
from .graph import PropertyGraph


@dataclass
class ResultTable:
    columns: list[str]
    rows: list[list]

    def to_dict(self) -> dict:
        return {"columns": self.columns, "rows": self.rows}


@dataclass
class ExecuteAllResult:
    table: ResultTable
    winner: int  # index of the first candidate with rows, -1 if none
    errors: list[tuple[int, str]] = field(default_factory=list)


def _property_value(graph: PropertyGraph, node_id: int, name: str):
    """Property lookup used by WHERE and RETURN; ``key`` is a reserved
    pseudo-property resolving to the node key."""
    node = graph.nodes[node_id]
    if name == "key":
        return node.key
    return node.properties.get(name)


def _compare(op: str, left, right, expr_text: str):
    if left is None or right is None:
        return False
    if op in ("=", "<>"):
        if isinstance(left, bool) != isinstance(right, bool):
            equal = False
        elif isinstance(left, (int, float)) and isinstance(right, (int, float)):
            equal = left == right
        else:
            equal = type(left) is type(right) and left == right
        return equal if op == "=" else not equal
    # ordering operators need two numbers or two strings
    numeric = lambda v: isinstance(v, (int, float)) and not isinstance(v, bool)
    if numeric(left) and numeric(right):
        pass
    elif isinstance(left, str) and isinstance(right, str):
        pass
    else:
        raise EvalError(f"type mismatch in comparison: {expr_text}")
    if op == "<":
        return left < right
    if op == ">":
        return left > right
    if op == "<=":
        return left <= right
    return left >= right


def _comparison_text(cmp: Comparison) -> str:
    def side(s):
        return f"{s.variable}.{s.name}" if isinstance(s, PropertyAccess) else repr(s)

    return f"{side(cmp.left)} {cmp.op} {side(cmp.right)}"


def _eval_where(expr, graph: PropertyGraph, binding: dict[str, int]) -> bool:
    if isinstance(expr, Comparison):
        def value(side):
            if isinstance(side, PropertyAccess):
                # scalar comparison against a multi-valued property matches
                # if any element matches
                return _property_value(graph, binding[side.variable], side.name)
            return side

        left, right = value(expr.left), value(expr.right)
        text = _comparison_text(expr)
        if isinstance(left, list):
            return any(_compare(expr.op, item, right, text) for item in left)
        if isinstance(right, list):
            return any(_compare(expr.op, left, item, text) for item in right)
        return _compare(expr.op, left, right, text)
    if isinstance(expr, And):
        return all(_eval_where(p, graph, binding) for p in expr.parts)
    if isinstance(expr, Or):
        return any(_eval_where(p, graph, binding) for p in expr.parts)
    raise EvalError(f"unknown boolean expression: {expr!r}")


def _match_bindings(ast: QueryAst, graph: PropertyGraph) -> list[dict[str, int]]:
    """All variable-to-node bindings satisfying START seeds and MATCH hops."""
    seeds: dict[str, set[int]] = {}
    for binding in ast.start:
        # the field name inside node:index(field="…") is decorative; every
        # index has exactly one key field
        ids = graph.index_lookup(binding.index, binding.key_value)
        prev = seeds.get(binding.variable)
        seeds[binding.variable] = ids if prev is None else prev & ids

    all_nodes = range(len(graph.nodes))
    variables = ast.bound_variables()
    # flatten patterns into sequential hop constraints
    steps: list[tuple[str, str | None, str, str]] = []  # (var, label, prev, direction)
    for pattern in ast.match:
        steps.append((pattern.head, None, "", ""))
        prev = pattern.head
        for hop in pattern.hops:
            steps.append((hop.variable, hop.label, prev, hop.direction))
            prev = hop.variable

    results: list[dict[str, int]] = []
    seen: set[tuple[int, ...]] = set()

    def candidates(var: str, bound: dict[str, int]):
        if var in bound:
            return (bound[var],)
        return seeds.get(var, all_nodes)

    def emit(bound: dict[str, int]) -> None:
        # START-only variables not mentioned in any pattern
        free = [v for v in variables if v not in bound]

        def expand(idx: int, current: dict[str, int]) -> None:
            if idx == len(free):
                key = tuple(current[v] for v in variables)
                if key not in seen:
                    seen.add(key)
                    results.append(dict(current))
                return
            for node in candidates(free[idx], current):
                current[free[idx]] = node
                expand(idx + 1, current)
                del current[free[idx]]

        expand(0, dict(bound))

    def walk(step_idx: int, bound: dict[str, int]) -> None:
        if step_idx == len(steps):
            emit(bound)
            return
        var, label, prev, direction = steps[step_idx]
        if label is None:
            for node in candidates(var, bound):
                bound2 = dict(bound)
                bound2[var] = node
                walk(step_idx + 1, bound2)
            return
        prev_node = bound[prev]
        allowed = seeds.get(var)
        matched: set[int] = set()
        for _, other in graph.neighbors(prev_node, label, direction):
            if var in bound and other != bound[var]:
                continue
            if allowed is not None and var not in bound and other not in allowed:
                continue
            if other in matched:
                continue
            matched.add(other)
            bound2 = dict(bound)
            bound2[var] = other
            walk(step_idx + 1, bound2)

    walk(0, {})
    results.sort(key=lambda b: tuple(b[v] for v in variables))
    return results


def execute(ast: QueryAst, graph: PropertyGraph) -> ResultTable:
    bindings = _match_bindings(ast, graph)
    if ast.where is not None:
        bindings = [b for b in bindings if _eval_where(ast.where, graph, b)]

    columns = [
        item.variable if item.property is None else f"{item.variable}.{item.property}"
        for item in ast.returns
    ]

    rows: list[list] = []
    origins: list[dict[str, int]] = []
    for binding in bindings:
        cells = []
        for item in ast.returns:
            if item.property is None:
                cells.append(graph.nodes[binding[item.variable]].key)
            else:
                cells.append(_property_value(graph, binding[item.variable], item.property))
        # list-valued cells fan out into one row per element (cross product
        # when several cells are lists)
        fanned = [[]]
        for cell in cells:
            values = cell if isinstance(cell, list) else [cell]
            fanned = [row + [v] for row in fanned for v in values]
        for row in fanned:
            # a row with no values at all carries nothing; dropping it lets
            # later candidates probe the other storage shape
            if all(cell is None for cell in row):
                continue
            rows.append(row)
            origins.append(binding)

    if ast.distinct:
        unique_rows, unique_origins, seen = [], [], set()
        for row, origin in zip(rows, origins):
            key = tuple(repr(c) for c in row)
            if key not in seen:
                seen.add(key)
                unique_rows.append(row)
                unique_origins.append(origin)
        rows, origins = unique_rows, unique_origins

    if ast.sort is not None:
        prop = ast.sort.property
        sort_var = ast.returns[0].variable
        prop_column = next(
            (i for i, item in enumerate(ast.returns) if item.property == prop), None
        )

        def sort_key(pair):
            row, origin = pair
            value = row[prop_column] if prop_column is not None else _property_value(
                graph, origin[sort_var], prop
            )
            if isinstance(value, list):
                value = value[0]
            if value is None:
                return (1, 0, "")
            if isinstance(value, bool):
                return (0, 0, float(value))
            if isinstance(value, (int, float)):
                return (0, 0, float(value))
            return (0, 1, str(value))

        paired = sorted(zip(rows, origins), key=sort_key, reverse=not ast.sort.ascending)
        if not ast.sort.ascending:
            # nulls stay last regardless of direction
            paired = [p for p in paired if sort_key(p)[0] == 0] + [
                p for p in paired if sort_key(p)[0] == 1
            ]
        rows = [row for row, _ in paired]

    if ast.limit is not None:
        rows = rows[: ast.limit]
    return ResultTable(columns, rows)


def execute_all(candidates, graph: PropertyGraph) -> ExecuteAllResult:
    """Run candidate asts in order, returning the first non-empty result.

    Erroring candidates are skipped and recorded; if every candidate
    errors the failures are aggregated into one EvalError.
    """
    if not candidates:
        raise ValueError("execute_all needs at least one candidate")
    errors: list[tuple[int, str]] = []
    empty: ResultTable | None = None
    for i, ast in enumerate(candidates):
        try:
            table = execute(ast, graph)
        except EvalError as exc:
            errors.append((i, str(exc)))
            continue
        if table.rows:
            return ExecuteAllResult(table, i, errors)
        if empty is None:
            empty = table
    if empty is None:
        raise EvalError(
            "all candidates failed: " + "; ".join(f"[{i}] {msg}" for i, msg in errors)
        )
    return ExecuteAllResult(empty, -1, errors)
