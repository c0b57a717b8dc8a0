"""Text grammar for partial words.

::

    n=3 cyclic=0
    *{1,3} 2 4 3 2 4 1

Tokens are whitespace separated: a positive integer is a concrete letter,
``*`` a diamond and ``*{a,b,...}`` a restricted diamond.
"""
from __future__ import annotations

import re

from .pword import DIAMOND, Diamond, PWord

_HEADER = re.compile(r"^n=(\d+)\s+cyclic=([01])$")
_RESTRICTED = re.compile(r"^\*\{(\d+(?:,\d+)*)\}$")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def format_pword(u: PWord) -> str:
    return f"n={u.n} cyclic={int(u.cyclic)}\n{u}\n"


def parse_token(token: str, line: int = 1, column: int = 1):
    if token == "*":
        return DIAMOND
    if token.isdigit():
        value = int(token)
        if value < 1 or token != str(value):
            raise ParseError(f"letters must be positive integers without leading zeros: {token!r}", line, column)
        return value
    m = _RESTRICTED.match(token)
    if m:
        ranks = [int(r) for r in m.group(1).split(",")]
        if min(ranks) < 1:
            raise ParseError(f"restricted ranks must be >= 1: {token!r}", line, column)
        return Diamond(frozenset(ranks))
    raise ParseError(f"unrecognised token {token!r}", line, column)


def parse_pword(text: str, n: int | None = None, cyclic: bool | None = None) -> PWord:
    """Parse the text form. ``n``/``cyclic`` stand in for a missing header."""
    lines = text.splitlines()
    body_start = 0
    for idx, raw in enumerate(lines):
        if raw.strip():
            m = _HEADER.match(raw.strip())
            if m:
                n, cyclic = int(m.group(1)), m.group(2) == "1"
                body_start = idx + 1
            elif raw.strip().startswith("n="):
                raise ParseError("malformed header, expected 'n=<int> cyclic=<0|1>'", idx + 1, 1)
            break
    if n is None:
        raise ParseError("missing header 'n=<int> cyclic=<0|1>'", 1, 1)
    symbols = []
    for idx in range(body_start, len(lines)):
        for m in re.finditer(r"\S+", lines[idx]):
            symbols.append(parse_token(m.group(0), idx + 1, m.start() + 1))
    try:
        return PWord(tuple(symbols), n, bool(cyclic))
    except ValueError as exc:
        raise ParseError(str(exc), len(lines) or 1, 1) from exc
