"""Recursive-descent parser producing a QueryAst.

Grammar (keywords case-insensitive, SORT and ORDER BY are synonyms):

    query    := start? match? where? return sort? limit?
    start    := START binding ("," binding)*
    binding  := ident "=" node ":" ident "(" ident "=" string ")"
    match    := MATCH pattern ("," pattern)*
    pattern  := "(" ident ")" hop*
    hop      := "-[:" ident "]->" "(" ident ")" | "<-[:" ident "]-" "(" ident ")"
    where    := WHERE or_expr
    or_expr  := and_expr (OR and_expr)*
    and_expr := primary (AND primary)*
    primary  := "(" or_expr ")" | operand op operand
    operand  := ident "." ident | literal
    return   := RETURN DISTINCT? item ("," item)*
    item     := ident ("." ident)?
    sort     := (SORT | ORDER BY) ident (ASC | DESC)?
    limit    := LIMIT int
"""

from __future__ import annotations

from ..errors import CypherSyntaxError, UnboundVariableError
from ..graph import INDEX_ALIASES
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
from .lexer import Token, tokenize

_CMP_OPS = {"=", "<>", "<", ">", "<=", ">="}


class _Parser:
    def __init__(self, tokens: list[Token], index_aliases: dict[str, str]):
        self.tokens = tokens
        self.pos = 0
        self.aliases = index_aliases

    # -- token plumbing -------------------------------------------------

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _fail(self, expected: set[str]):
        tok = self.current
        shown = tok.value if tok.kind != "EOF" else "end of input"
        raise CypherSyntaxError(
            f"unexpected {shown!r}", tok.line, tok.column, expected
        )

    def accept(self, kind: str, value=None) -> Token | None:
        tok = self.current
        if tok.kind != kind:
            return None
        if value is not None and tok.value != value:
            return None
        self.pos += 1
        return tok

    def expect(self, kind: str, value=None) -> Token:
        tok = self.accept(kind, value)
        if tok is None:
            self._fail({value if value is not None else kind})
        return tok

    def at_keyword(self, word: str) -> bool:
        tok = self.current
        return tok.kind == "KEYWORD" and tok.value == word

    # -- clauses ----------------------------------------------------------

    def parse_query(self) -> QueryAst:
        start = self.parse_start() if self.at_keyword("START") else ()
        match = self.parse_match() if self.at_keyword("MATCH") else ()
        where = self.parse_where() if self.at_keyword("WHERE") else None
        if not self.at_keyword("RETURN"):
            self._fail({"RETURN"})
        distinct, returns = self.parse_return()
        sort = None
        if self.at_keyword("SORT") or self.at_keyword("ORDER"):
            sort = self.parse_sort()
        limit = self.parse_limit() if self.at_keyword("LIMIT") else None
        if self.current.kind != "EOF":
            self._fail({"end of input"})
        ast = QueryAst(
            start=start,
            match=match,
            where=where,
            returns=returns,
            distinct=distinct,
            sort=sort,
            limit=limit,
        )
        self._validate(ast)
        return ast

    def parse_start(self) -> tuple[StartBinding, ...]:
        self.expect("KEYWORD", "START")
        bindings = [self.parse_binding()]
        while self.accept(","):
            bindings.append(self.parse_binding())
        return tuple(bindings)

    def parse_binding(self) -> StartBinding:
        variable = self.expect("IDENT").value
        self.expect("=")
        node_tok = self.expect("IDENT")
        if node_tok.value.lower() != "node":
            raise CypherSyntaxError(
                f"unexpected {node_tok.value!r}", node_tok.line, node_tok.column, {"node"}
            )
        self.expect(":")
        index = self.expect("IDENT").value
        self.expect("(")
        key_field = self.expect("IDENT").value
        self.expect("=")
        key_value = self.expect("STRING").value
        self.expect(")")
        index = self.aliases.get(index, index)
        return StartBinding(variable, index, key_field, key_value)

    def parse_match(self) -> tuple[PathPattern, ...]:
        self.expect("KEYWORD", "MATCH")
        patterns = [self.parse_pattern()]
        while self.accept(","):
            patterns.append(self.parse_pattern())
        return tuple(patterns)

    def parse_pattern(self) -> PathPattern:
        self.expect("(")
        head = self.expect("IDENT").value
        self.expect(")")
        hops: list[Hop] = []
        while self.current.kind in ("-", "<-"):
            if self.accept("-"):
                direction = "out"
                self.expect("[")
                self.expect(":")
                label = self.expect("IDENT").value
                self.expect("]")
                self.expect("->")
            else:
                self.expect("<-")
                direction = "in"
                self.expect("[")
                self.expect(":")
                label = self.expect("IDENT").value
                self.expect("]")
                self.expect("-")
            self.expect("(")
            variable = self.expect("IDENT").value
            self.expect(")")
            hops.append(Hop(label=label, variable=variable, direction=direction))
        return PathPattern(head=head, hops=tuple(hops))

    def parse_where(self):
        self.expect("KEYWORD", "WHERE")
        return self.parse_or()

    def parse_or(self):
        parts = [self.parse_and()]
        while self.accept("KEYWORD", "OR"):
            parts.append(self.parse_and())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def parse_and(self):
        parts = [self.parse_primary()]
        while self.accept("KEYWORD", "AND"):
            parts.append(self.parse_primary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def parse_primary(self):
        if self.accept("("):
            inner = self.parse_or()
            self.expect(")")
            return inner
        left = self.parse_operand()
        op_tok = self.current
        if op_tok.kind not in _CMP_OPS:
            self._fail(_CMP_OPS)
        self.pos += 1
        right = self.parse_operand()
        return Comparison(left, op_tok.kind, right)

    def parse_operand(self):
        tok = self.current
        if tok.kind == "IDENT":
            self.pos += 1
            self.expect(".")
            name = self.expect("IDENT").value
            return PropertyAccess(tok.value, name)
        if tok.kind == "STRING" or tok.kind == "INT" or tok.kind == "FLOAT":
            self.pos += 1
            return tok.value
        if tok.kind == "KEYWORD" and tok.value in ("TRUE", "FALSE"):
            self.pos += 1
            return tok.value == "TRUE"
        if self.accept("-"):
            num = self.current
            if num.kind not in ("INT", "FLOAT"):
                self._fail({"number"})
            self.pos += 1
            return -num.value
        self._fail({"property access", "literal"})

    def parse_return(self) -> tuple[bool, tuple[ReturnItem, ...]]:
        self.expect("KEYWORD", "RETURN")
        distinct = self.accept("KEYWORD", "DISTINCT") is not None
        items = [self.parse_return_item()]
        while self.accept(","):
            items.append(self.parse_return_item())
        return distinct, tuple(items)

    def parse_return_item(self) -> ReturnItem:
        variable = self.expect("IDENT").value
        if self.accept("."):
            return ReturnItem(variable, self.expect("IDENT").value)
        return ReturnItem(variable, None)

    def parse_sort(self) -> SortSpec:
        if self.accept("KEYWORD", "ORDER"):
            self.expect("KEYWORD", "BY")
        else:
            self.expect("KEYWORD", "SORT")
        prop = self.expect("IDENT").value
        ascending = True
        if self.accept("KEYWORD", "DESC"):
            ascending = False
        else:
            self.accept("KEYWORD", "ASC")
        return SortSpec(prop, ascending)

    def parse_limit(self) -> int:
        self.expect("KEYWORD", "LIMIT")
        tok = self.expect("INT")
        if tok.value < 1:
            raise CypherSyntaxError("LIMIT must be >= 1", tok.line, tok.column)
        return tok.value

    # -- semantic checks --------------------------------------------------

    def _validate(self, ast: QueryAst) -> None:
        bound = set()
        for binding in ast.start:
            if binding.variable in bound:
                raise CypherSyntaxError(f"duplicate START variable: {binding.variable}")
            bound.add(binding.variable)
        for pattern in ast.match:
            bound.update(pattern.variables())

        def check(variable: str) -> None:
            if variable not in bound:
                raise UnboundVariableError(f"unbound variable: {variable}")

        for item in ast.returns:
            check(item.variable)
        if ast.where is not None:
            for access in _walk_accesses(ast.where):
                check(access.variable)
        if ast.sort is not None:
            return_vars = {item.variable for item in ast.returns}
            if len(return_vars) != 1:
                raise CypherSyntaxError(
                    "SORT requires exactly one returned variable to scope the property"
                )


def _walk_accesses(expr):
    if isinstance(expr, Comparison):
        for side in (expr.left, expr.right):
            if isinstance(side, PropertyAccess):
                yield side
    else:
        for part in expr.parts:
            yield from _walk_accesses(part)


def parse(text: str, index_aliases: dict[str, str] | None = None) -> QueryAst:
    """Parse query text; index alias spellings are canonicalized in the ast."""
    aliases = INDEX_ALIASES if index_aliases is None else index_aliases
    return _Parser(tokenize(text), aliases).parse_query()
