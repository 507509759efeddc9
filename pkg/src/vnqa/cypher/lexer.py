"""Tokenizer for the Cypher subset: unicode identifiers, quoted strings,
numbers, and the handful of punctuation tokens the grammar needs."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass

from ..errors import CypherSyntaxError

KEYWORDS = {
    "START", "MATCH", "WHERE", "RETURN", "DISTINCT",
    "SORT", "ORDER", "BY", "LIMIT", "AND", "OR", "ASC", "DESC",
    "TRUE", "FALSE",
}

# longest first so <-, <=, <> win over bare <
_SYMBOLS = ["->", "<-", "<=", ">=", "<>", "=", "<", ">", "(", ")", "[", "]", ":", ",", ".", "-"]


@dataclass(frozen=True)
class Token:
    kind: str  # KEYWORD, IDENT, STRING, INT, FLOAT, symbol text, or EOF
    value: str | int | float
    line: int
    column: int


def _is_ident_start(ch: str) -> bool:
    return ch == "_" or ch.isalpha()


def _is_ident_part(ch: str) -> bool:
    return ch == "_" or ch.isalnum()


def tokenize(text: str) -> list[Token]:
    """Lex NFC-normalized query text into a token list ending with EOF."""
    text = unicodedata.normalize("NFC", text)
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col = line + 1, 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == '"':
            start_line, start_col = line, col
            i += 1
            col += 1
            parts: list[str] = []
            while i < n and text[i] != '"':
                if text[i] == "\\":
                    if i + 1 >= n or text[i + 1] not in ('"', "\\"):
                        raise CypherSyntaxError(
                            "bad escape in string literal", line, col, {'\\"', "\\\\"}
                        )
                    parts.append(text[i + 1])
                    i += 2
                    col += 2
                elif text[i] == "\n":
                    raise CypherSyntaxError("unterminated string literal", start_line, start_col)
                else:
                    parts.append(text[i])
                    i += 1
                    col += 1
            if i >= n:
                raise CypherSyntaxError("unterminated string literal", start_line, start_col)
            i += 1
            col += 1
            tokens.append(Token("STRING", "".join(parts), start_line, start_col))
            continue
        if ch.isdigit():
            start_col = col
            j = i
            while j < n and text[j].isdigit():
                j += 1
            is_float = False
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                is_float = True
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            raw = text[i:j]
            if j < n and _is_ident_start(text[j]):
                raise CypherSyntaxError(f"malformed number: {raw + text[j]!r}", line, start_col)
            if is_float:
                tokens.append(Token("FLOAT", float(raw), line, start_col))
            else:
                tokens.append(Token("INT", int(raw), line, start_col))
            col += j - i
            i = j
            continue
        if _is_ident_start(ch):
            start_col = col
            j = i
            while j < n and _is_ident_part(text[j]):
                j += 1
            word = text[i:j]
            upper = word.upper()
            if upper in KEYWORDS:
                tokens.append(Token("KEYWORD", upper, line, start_col))
            else:
                tokens.append(Token("IDENT", word, line, start_col))
            col += j - i
            i = j
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token(sym, sym, line, col))
                i += len(sym)
                col += len(sym)
                break
        else:
            raise CypherSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens
