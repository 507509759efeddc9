"""Render a QueryAst back to canonical text.

Canonical form: uppercase keywords, single spaces, clause order
START MATCH WHERE RETURN SORT LIMIT, ascending sorts unmarked.
``parse(render(ast))`` is structurally equal to ``ast``.
"""

from __future__ import annotations

from .ast import And, Comparison, Or, PropertyAccess, QueryAst


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _literal(value) -> str:
    if isinstance(value, bool):
        return "TRUE" if value else "FALSE"
    if isinstance(value, str):
        return f'"{_escape(value)}"'
    return repr(value)


def _operand(side) -> str:
    if isinstance(side, PropertyAccess):
        return f"{side.variable}.{side.name}"
    return _literal(side)


def _expr(expr, parent: str | None = None) -> str:
    if isinstance(expr, Comparison):
        return f"{_operand(expr.left)} {expr.op} {_operand(expr.right)}"
    if isinstance(expr, And):
        text = " AND ".join(_expr(p, "AND") for p in expr.parts)
        return f"({text})" if parent == "AND" else text
    if isinstance(expr, Or):
        text = " OR ".join(_expr(p, "OR") for p in expr.parts)
        return f"({text})" if parent is not None else text
    raise TypeError(f"not a boolean expression: {expr!r}")


def render(ast: QueryAst) -> str:
    clauses: list[str] = []
    if ast.start:
        bindings = ", ".join(
            f'{b.variable} = node:{b.index}({b.key_field}="{_escape(b.key_value)}")'
            for b in ast.start
        )
        clauses.append(f"START {bindings}")
    if ast.match:
        patterns = []
        for pattern in ast.match:
            text = f"({pattern.head})"
            for hop in pattern.hops:
                if hop.direction == "out":
                    text += f"-[:{hop.label}]->({hop.variable})"
                else:
                    text += f"<-[:{hop.label}]-({hop.variable})"
            patterns.append(text)
        clauses.append("MATCH " + ", ".join(patterns))
    if ast.where is not None:
        clauses.append("WHERE " + _expr(ast.where))
    items = ", ".join(
        item.variable if item.property is None else f"{item.variable}.{item.property}"
        for item in ast.returns
    )
    clauses.append(("RETURN DISTINCT " if ast.distinct else "RETURN ") + items)
    if ast.sort is not None:
        clauses.append(f"SORT {ast.sort.property}" + ("" if ast.sort.ascending else " DESC"))
    if ast.limit is not None:
        clauses.append(f"LIMIT {ast.limit}")
    return " ".join(clauses)
