"""Lexer for the supported C subset.

Tokenizing happens in two passes: a scrubbing pass replaces comments,
preprocessor lines, and non-ASCII bytes with spaces (preserving every
line break and column, so token positions always point into the
original source), then a master-regex pass cuts the scrubbed text into
position-tagged tokens.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

KEYWORDS = frozenset(
    """
    auto break case char const continue default do double else enum extern
    float for goto if int long register return short signed sizeof static
    struct switch typedef union unsigned void volatile while
    """.split()
)

TYPE_KEYWORDS = frozenset(
    "char const double enum float int long short signed static struct "
    "union unsigned void volatile".split()
)

# Token kinds (spec'd vocabulary).
KEYWORD = "keyword"
IDENTIFIER = "identifier"
CONSTANT = "constant"
STRING = "string-literal"
OPERATOR = "operator"
PUNCTUATOR = "punctuator"

# Roles attached during parsing; "plain" identifiers are variable mentions.
ROLE_PLAIN = "plain"
ROLE_DECLARED = "declared"
ROLE_CALLEE = "callee"
ROLE_TYPE = "type"
ROLE_FIELD = "field"
ROLE_FUNCTION = "function-name"

_PUNCT_TEXTS = frozenset("( ) [ ] { } ; ,".split())


@dataclass
class Token:
    """One lexeme with its 1-based source position.

    ``role`` starts as "plain" and is refined by the parser (declared
    name, callee, type word, struct field, function name); the lexer
    itself never assigns roles.
    """

    kind: str
    text: str
    line: int
    column: int
    role: str = ROLE_PLAIN

    def __repr__(self) -> str:  # compact for test failure output
        return f"Token({self.kind}:{self.text!r}@{self.line}:{self.column})"


class LexError(Exception):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def scrub(text: str) -> str:
    """Blank out comments, preprocessor lines, and non-ASCII bytes.

    The result has exactly the same length and line structure as the
    input: every removed character becomes a space, newlines survive.
    Raises LexError on an unterminated string, character, or block
    comment.
    """
    chars = list(text)
    n = len(chars)
    i = 0
    line = 1
    at_line_start = True  # only whitespace seen on the current line
    while i < n:
        c = chars[i]
        if c == "\n":
            line += 1
            at_line_start = True
            i += 1
            continue
        if ord(c) > 126 or (ord(c) < 32 and c not in "\t\r"):
            chars[i] = " "
            i += 1
            continue
        if c in " \t\r":
            i += 1
            continue
        if c == "#" and at_line_start:
            # Preprocessor line, skipped verbatim; honor \-continuations.
            last_solid = ""
            while i < n:
                if chars[i] == "\n":
                    continued = last_solid == "\\"
                    last_solid = ""
                    line += 1
                    i += 1
                    if not continued:
                        break
                else:
                    if chars[i] not in " \t\r":
                        last_solid = chars[i]
                    chars[i] = " "
                    i += 1
            at_line_start = True
            continue
        at_line_start = False
        if c == "/" and i + 1 < n and chars[i + 1] == "/":
            while i < n and chars[i] != "\n":
                chars[i] = " "
                i += 1
            continue
        if c == "/" and i + 1 < n and chars[i + 1] == "*":
            start_line = line
            chars[i] = " "
            chars[i + 1] = " "
            i += 2
            closed = False
            while i < n:
                if chars[i] == "*" and i + 1 < n and chars[i + 1] == "/":
                    chars[i] = " "
                    chars[i + 1] = " "
                    i += 2
                    closed = True
                    break
                if chars[i] == "\n":
                    line += 1
                else:
                    chars[i] = " "
                i += 1
            if not closed:
                raise LexError("unterminated block comment", start_line)
            continue
        if c in "\"'":
            quote = c
            start_line = line
            i += 1
            closed = False
            while i < n:
                if chars[i] == "\\" and i + 1 < n and chars[i + 1] != "\n":
                    i += 2
                    continue
                if chars[i] == quote:
                    i += 1
                    closed = True
                    break
                if chars[i] == "\n":
                    break
                if ord(chars[i]) > 126:
                    chars[i] = " "
                i += 1
            if not closed:
                kind = "string" if quote == '"' else "character"
                raise LexError(f"unterminated {kind} literal", start_line)
            continue
        i += 1
    return "".join(chars)


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<char>'(?:[^'\\\n]|\\.)+')
  | (?P<number>
        0[xX][0-9a-fA-F]+[uUlL]*
      | \d+\.\d*(?:[eE][+-]?\d+)?[fFlL]?
      | \.\d+(?:[eE][+-]?\d+)?[fFlL]?
      | \d+(?:[eE][+-]?\d+)[fFlL]?
      | \d+[uUlL]*
    )
  | (?P<ident>[A-Za-z_]\w*)
  | (?P<op>
        <<=|>>=|\.\.\.
      | ->|\+\+|--|<<|>>|<=|>=|==|!=|&&|\|\|
      | \+=|-=|\*=|/=|%=|&=|\|=|\^=
      | [-+*/%=<>!~&|^?:.]
    )
  | (?P<punct>[()\[\]{};,])
    """,
    re.VERBOSE,
)


def tokenize(source: str) -> list[Token]:
    """Lex a source buffer into tokens.

    Comments and preprocessor lines are removed, non-ASCII bytes are
    dropped, and each token carries the (line, column) where its text
    starts in the original buffer.
    """
    text = scrub(source)
    line_starts = [0]
    for m in re.finditer("\n", text):
        line_starts.append(m.end())

    def position(offset: int) -> tuple[int, int]:
        lo, hi = 0, len(line_starts) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if line_starts[mid] <= offset:
                lo = mid
            else:
                hi = mid - 1
        return lo + 1, offset - line_starts[lo] + 1

    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            ln, col = position(pos)
            raise LexError(f"unexpected character {text[pos]!r}", ln)
        pos = m.end()
        group = m.lastgroup
        if group == "ws":
            continue
        lexeme = m.group(0)
        ln, col = position(m.start())
        if group == "ident":
            kind = KEYWORD if lexeme in KEYWORDS else IDENTIFIER
        elif group == "string":
            kind = STRING
        elif group in ("char", "number"):
            kind = CONSTANT
        elif group == "punct":
            kind = PUNCTUATOR
        else:
            kind = PUNCTUATOR if lexeme in _PUNCT_TEXTS else OPERATOR
        tokens.append(Token(kind, lexeme, ln, col))
    return tokens
