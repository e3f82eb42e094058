"""C-subset frontend: lexer, parser, statement/AST model."""

from .lexer import (
    CONSTANT,
    IDENTIFIER,
    KEYWORD,
    OPERATOR,
    PUNCTUATOR,
    ROLE_CALLEE,
    ROLE_DECLARED,
    ROLE_FIELD,
    ROLE_FUNCTION,
    ROLE_PLAIN,
    ROLE_TYPE,
    STRING,
    KEYWORDS,
    TYPE_KEYWORDS,
    LexError,
    Token,
    scrub,
    tokenize,
)
from .parser import (
    ST_CALL,
    ST_DECLARATION,
    ST_EXPRESSION,
    ST_OTHER,
    ST_PREDICATE,
    ST_RETURN,
    AstNode,
    Diagnostic,
    FunctionDecl,
    ParseError,
    ProgramModel,
    Statement,
    dump_ast,
    load_program,
    parse,
    parse_source,
)

__all__ = [
    "CONSTANT",
    "IDENTIFIER",
    "KEYWORD",
    "OPERATOR",
    "PUNCTUATOR",
    "STRING",
    "KEYWORDS",
    "TYPE_KEYWORDS",
    "ROLE_CALLEE",
    "ROLE_DECLARED",
    "ROLE_FIELD",
    "ROLE_FUNCTION",
    "ROLE_PLAIN",
    "ROLE_TYPE",
    "LexError",
    "Token",
    "scrub",
    "tokenize",
    "ST_CALL",
    "ST_DECLARATION",
    "ST_EXPRESSION",
    "ST_OTHER",
    "ST_PREDICATE",
    "ST_RETURN",
    "AstNode",
    "Diagnostic",
    "FunctionDecl",
    "ParseError",
    "ProgramModel",
    "Statement",
    "dump_ast",
    "load_program",
    "parse",
    "parse_source",
]
