"""Small tokenizer shared by the line syntaxes."""

from __future__ import annotations

import re
from dataclasses import dataclass


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass
class Token:
    text: str
    line: int
    column: int


_TOKEN = re.compile(r"->|[:|;]|[^\s:|;]+")


def tokenize(text: str, line: int = 1) -> list[Token]:
    out = []
    for lineno, row in enumerate(text.split("\n"), line):
        for m in _TOKEN.finditer(row):
            out.append(Token(m.group(), lineno, m.start() + 1))
    return out


class Cursor:
    def __init__(self, text: str, line: int = 1):
        self.tokens = tokenize(text, line)
        self.pos = 0
        rows = text.split("\n")
        self.end = (line + len(rows) - 1, len(rows[-1]) + 1)

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        if tok is None:
            raise ParseError(message + " (at end of input)", *self.end)
        raise ParseError(message, tok.line, tok.column)

    def next(self, what: str = "token") -> Token:
        tok = self.peek()
        if tok is None:
            self.fail(f"expected {what}")
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok is None or tok.text != text:
            self.fail(f"expected '{text}'")
        self.pos += 1
        return tok

    def natural(self, what: str = "natural number") -> int:
        tok = self.next(what)
        if not tok.text.isdigit():
            self.fail(f"expected {what}, got '{tok.text}'", tok)
        return int(tok.text)

    def until(self, stops: set[str]) -> list[Token]:
        out = []
        while self.peek() is not None and self.peek().text not in stops:
            out.append(self.next())
        return out

    def done(self) -> None:
        if self.peek() is not None:
            self.fail(f"unexpected '{self.peek().text}'")
