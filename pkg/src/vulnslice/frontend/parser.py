"""Recursive-descent parser for the supported C subset.

The subset covers function definitions, parameter lists, local
declarations (pointer and array declarators, initializers), expression
statements, if/else, while, for, return, break/continue, calls, and
unary/binary/member expressions. Templates, classes, argument-taking
macros, and goto are out; preprocessor lines were already blanked by
the lexer.

A function parses into three aligned views:

* a flat, source-ordered list of ``Statement`` records (one per
  ``;``-terminated item or control predicate),
* an abstract syntax tree whose leaves cover the function's tokens
  exactly once (so concatenating leaf texts reproduces the token
  stream), and
* the raw token list.

The function signature gets its own Statement (kind "other") so that
dependence graphs have a node where parameters are defined.

Anything outside the subset raises a parse error naming the line;
top-level recovery skips to the next function boundary and records a
diagnostic instead of failing the whole file.
"""

from __future__ import annotations

from dataclasses import dataclass, field

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
    ROLE_TYPE,
    STRING,
    TYPE_KEYWORDS,
    Token,
    tokenize,
)

# Statement kinds.
ST_DECLARATION = "declaration"
ST_EXPRESSION = "expression"
ST_PREDICATE = "control-predicate"
ST_RETURN = "return"
ST_CALL = "call"
ST_OTHER = "other"

# AST node kinds. Beyond the core vocabulary (FunctionDef,
# IdentifierDeclStatement, ExpressionStatement, CallExpression, Callee,
# Identifier, Condition) we document: ParamList/Param for signatures,
# Declarator for each declared name, Block for braces, control-flow
# wrappers (IfStatement, WhileStatement, ForStatement, ReturnStatement,
# BreakStatement, ContinueStatement, EmptyStatement), expression nodes
# (AssignExpr, CondExpr, BinaryExpr, UnaryExpr, IndexExpr, MemberExpr,
# ParenExpr, InitList), and terminal kinds (Keyword, Constant,
# StringLit, Operator, Punct).

ASSIGN_OPS = frozenset("= += -= *= /= %= &= |= ^= <<= >>=".split())

_BINARY_LEVELS = [
    frozenset({"||"}),
    frozenset({"&&"}),
    frozenset({"|"}),
    frozenset({"^"}),
    frozenset({"&"}),
    frozenset({"==", "!="}),
    frozenset({"<", "<=", ">", ">="}),
    frozenset({"<<", ">>"}),
    frozenset({"+", "-"}),
    frozenset({"*", "/", "%"}),
]

_UNARY_OPS = frozenset({"!", "~", "+", "-", "*", "&", "++", "--"})


class ParseError(Exception):
    def __init__(self, message: str, file: str, line: int):
        super().__init__(f"{file}:{line}: {message}")
        self.file = file
        self.line = line


@dataclass
class Diagnostic:
    file: str
    line: int
    message: str


@dataclass
class Statement:
    """One source statement or control predicate."""

    id: int
    function_index: int
    kind: str
    line_first: int
    line_last: int
    tokens: list[Token]

    @property
    def line(self) -> int:
        return self.line_first

    def text(self) -> str:
        return " ".join(t.text for t in self.tokens)


@dataclass
class AstNode:
    """AST node over a contiguous token span of its function.

    Leaves span exactly one token; an internal node's span is the union
    of its children's spans. ``statement_id`` is set for nodes owned by
    a single statement and absent for FunctionDef and other
    multi-statement structural nodes (blocks, if/for wrappers and their
    glue tokens).
    """

    id: int
    kind: str
    span: tuple[int, int]
    children: list["AstNode"] = field(default_factory=list)
    statement_id: int | None = None
    parent_id: int | None = None

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass
class FunctionDecl:
    """A parsed function: name, parameters, flat statement list, AST."""

    index: int
    name: str
    file_path: str
    parameters: list[str]
    tokens: list[Token]
    signature: Statement
    body: list[Statement]
    ast: AstNode
    line: int

    def all_statements(self) -> list[Statement]:
        return [self.signature] + self.body

    def leaf_tokens(self) -> list[Token]:
        """Function tokens as covered by AST leaves, in span order."""
        leaves = sorted(
            (n for n in self.ast.walk() if n.is_leaf), key=lambda n: n.span[0]
        )
        return [self.tokens[n.span[0]] for n in leaves]


@dataclass
class ProgramModel:
    """All functions parsed from one program's source files."""

    functions: list[FunctionDecl] = field(default_factory=list)
    files: list[str] = field(default_factory=list)
    diagnostics: list[Diagnostic] = field(default_factory=list)
    name: str = ""

    def statement_index(self) -> dict[int, Statement]:
        index: dict[int, Statement] = {}
        for fn in self.functions:
            for st in fn.all_statements():
                index[st.id] = st
        return index

    def function_of(self, statement_id: int) -> FunctionDecl:
        for fn in self.functions:
            for st in fn.all_statements():
                if st.id == statement_id:
                    return fn
        raise KeyError(statement_id)

    def function_by_name(self, name: str) -> FunctionDecl | None:
        for fn in self.functions:
            if fn.name == name:
                return fn
        return None

    def user_function_names(self) -> frozenset[str]:
        return frozenset(fn.name for fn in self.functions)


class _FileParser:
    def __init__(
        self,
        tokens: list[Token],
        file_path: str,
        first_statement_id: int,
        first_function_index: int,
    ):
        self.toks = tokens
        self.file = file_path
        self.pos = 0
        self.stmt_id = first_statement_id
        self.fn_index = first_function_index
        self.node_id = 0
        self.diagnostics: list[Diagnostic] = []
        self.functions: list[FunctionDecl] = []
        # per-function state
        self._fn_start = 0
        self._statements: list[Statement] = []
        # live brace depth, so error recovery knows how many blocks to close
        self.block_depth = 0

    # --- token helpers -------------------------------------------------

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.toks[i] if i < len(self.toks) else None

    def at(self, text: str, offset: int = 0) -> bool:
        t = self.peek(offset)
        return t is not None and t.text == text

    def error(self, message: str) -> ParseError:
        t = self.peek()
        line = t.line if t else (self.toks[-1].line if self.toks else 1)
        return ParseError(message, self.file, line)

    def advance(self) -> int:
        """Consume the current token, returning its index."""
        if self.pos >= len(self.toks):
            raise self.error("unexpected end of file")
        i = self.pos
        self.pos += 1
        return i

    def expect(self, text: str) -> int:
        t = self.peek()
        if t is None or t.text != text:
            found = t.text if t else "end of file"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def expect_identifier(self) -> int:
        t = self.peek()
        if t is None or t.kind != IDENTIFIER:
            found = t.text if t else "end of file"
            raise self.error(f"expected identifier, found {found!r}")
        return self.advance()

    # --- node helpers ---------------------------------------------------

    def leaf(self, index: int) -> AstNode:
        tok = self.toks[index]
        kind = {
            KEYWORD: "Keyword",
            IDENTIFIER: "Identifier",
            CONSTANT: "Constant",
            STRING: "StringLit",
            OPERATOR: "Operator",
            PUNCTUATOR: "Punct",
        }[tok.kind]
        node = AstNode(self.node_id, kind, (index, index + 1))
        self.node_id += 1
        return node

    def node(self, kind: str, children: list[AstNode]) -> AstNode:
        assert children, f"internal node {kind} needs children"
        lo = children[0].span[0]
        hi = children[0].span[1]
        for child in children[1:]:
            assert child.span[0] == hi, (
                f"non-contiguous children for {kind}: gap at token {hi}"
            )
            hi = child.span[1]
        node = AstNode(self.node_id, kind, (lo, hi), list(children))
        self.node_id += 1
        return node

    def stamp(self, node: AstNode, statement_id: int) -> None:
        for n in node.walk():
            n.statement_id = statement_id

    def make_statement(self, kind: str, lo: int, hi: int) -> Statement:
        toks = self.toks[lo:hi]
        st = Statement(
            id=self.stmt_id,
            function_index=self.fn_index,
            kind=kind,
            line_first=toks[0].line,
            line_last=toks[-1].line,
            tokens=toks,
        )
        self.stmt_id += 1
        self._statements.append(st)
        return st

    # --- top level -------------------------------------------------------

    def parse_translation_unit(self) -> None:
        while self.peek() is not None:
            if self.at(";"):
                self.advance()
                continue
            start = self.pos
            try:
                self.parse_function_def()
            except ParseError as exc:
                self.diagnostics.append(
                    Diagnostic(self.file, exc.line, f"{exc} (function skipped)")
                )
                self.recover(start)

    def recover(self, start: int) -> None:
        """Skip to the next function boundary after a parse failure.

        ``block_depth`` still holds the depth at the failure point, so
        closing that many braces lands right after the broken function.
        """
        self.pos = max(self.pos, start + 1)
        depth = self.block_depth
        self.block_depth = 0
        seen_brace = depth > 0
        while self.pos < len(self.toks):
            text = self.toks[self.pos].text
            self.pos += 1
            if text == "{":
                depth += 1
                seen_brace = True
            elif text == "}":
                depth -= 1
                if seen_brace and depth <= 0:
                    return
            elif text == ";" and not seen_brace and depth == 0:
                return

    def looks_like_type_start(self) -> bool:
        t = self.peek()
        if t is None:
            return False
        if t.kind == KEYWORD and t.text in TYPE_KEYWORDS:
            return True
        # typedef'd type heuristic: ident (ident | '*'+ ident)
        if t.kind == IDENTIFIER:
            j = 1
            while self.at("*", j):
                j += 1
            nxt = self.peek(j)
            return j > 1 and nxt is not None and nxt.kind == IDENTIFIER or (
                j == 1 and nxt is not None and nxt.kind == IDENTIFIER
            )
        return False

    def parse_decl_specifiers(self) -> list[AstNode]:
        """Type keywords/qualifiers plus at most one typedef-ish name."""
        nodes: list[AstNode] = []
        saw_named_type = False
        while True:
            t = self.peek()
            if t is None:
                break
            if t.kind == KEYWORD and t.text in TYPE_KEYWORDS:
                i = self.advance()
                nodes.append(self.leaf(i))
                if t.text in ("struct", "union", "enum"):
                    tag = self.peek()
                    if tag is not None and tag.kind == IDENTIFIER:
                        j = self.advance()
                        self.toks[j].role = ROLE_TYPE
                        nodes.append(self.leaf(j))
                        saw_named_type = True
                continue
            if t.kind == IDENTIFIER and not saw_named_type:
                # A lone identifier can be a typedef name when a
                # declarator follows ("size_t len", "FILE *fp").
                j = 1
                while self.at("*", j):
                    j += 1
                nxt = self.peek(j)
                if nxt is not None and nxt.kind == IDENTIFIER:
                    i = self.advance()
                    self.toks[i].role = ROLE_TYPE
                    nodes.append(self.leaf(i))
                    saw_named_type = True
                    continue
            break
        if not nodes:
            raise self.error("expected type specifier")
        return nodes

    def parse_function_def(self) -> None:
        self._fn_start = self.pos
        self._statements = []
        spec_nodes = self.parse_decl_specifiers()
        stars: list[AstNode] = []
        while self.at("*"):
            stars.append(self.leaf(self.advance()))
        name_idx = self.expect_identifier()
        self.toks[name_idx].role = ROLE_FUNCTION
        name_node = self.leaf(name_idx)
        if not self.at("("):
            raise self.error("expected '(' to start a parameter list")
        params, param_list_node = self.parse_param_list()
        sig_lo = spec_nodes[0].span[0]
        sig_hi = param_list_node.span[1]
        signature = self.make_statement(ST_OTHER, sig_lo, sig_hi)
        if not self.at("{"):
            raise self.error("expected '{' (function body)")
        block = self.parse_block()
        fn_node = self.node(
            "FunctionDef",
            spec_nodes + stars + [name_node, param_list_node, block],
        )
        # Stamp signature tokens with the signature statement id.
        for child in spec_nodes + stars + [name_node, param_list_node]:
            for n in child.walk():
                if n.statement_id is None:
                    n.statement_id = signature.id
        fn_node.statement_id = None

        name = self.toks[name_idx].text
        lo, hi = fn_node.span
        fn_tokens = self.toks[lo:hi]
        self._rebase(fn_node, lo)
        self._assign_parents(fn_node)
        fn = FunctionDecl(
            index=self.fn_index,
            name=name,
            file_path=self.file,
            parameters=params,
            tokens=fn_tokens,
            signature=signature,
            body=[s for s in self._statements if s.id != signature.id],
            ast=fn_node,
            line=self.toks[name_idx].line,
        )
        self.functions.append(fn)
        self.fn_index += 1
        self.node_id = 0

    def _rebase(self, root: AstNode, offset: int) -> None:
        for n in root.walk():
            n.span = (n.span[0] - offset, n.span[1] - offset)

    def _assign_parents(self, root: AstNode) -> None:
        for n in root.walk():
            for child in n.children:
                child.parent_id = n.id

    def parse_param_list(self) -> tuple[list[str], AstNode]:
        children = [self.leaf(self.expect("("))]
        params: list[str] = []
        if not self.at(")"):
            while True:
                if self.at("..."):
                    children.append(self.leaf(self.advance()))
                else:
                    children.append(self.parse_param(params))
                if self.at(","):
                    children.append(self.leaf(self.advance()))
                    continue
                break
        children.append(self.leaf(self.expect(")")))
        return params, self.node("ParamList", children)

    def parse_param(self, params: list[str]) -> AstNode:
        children = self.parse_decl_specifiers()
        while self.at("*"):
            children.append(self.leaf(self.advance()))
        t = self.peek()
        if t is not None and t.kind == IDENTIFIER:
            i = self.advance()
            self.toks[i].role = ROLE_DECLARED
            params.append(self.toks[i].text)
            children.append(self.leaf(i))
            while self.at("["):
                children.append(self.leaf(self.advance()))
                if not self.at("]"):
                    children.append(self.parse_expression())
                children.append(self.leaf(self.expect("]")))
        return self.node("Param", children)

    # --- statements -------------------------------------------------------

    def parse_block(self) -> AstNode:
        children = [self.leaf(self.expect("{"))]
        self.block_depth += 1
        while not self.at("}"):
            if self.peek() is None:
                raise self.error("unexpected end of file inside a block")
            children.append(self.parse_statement())
        children.append(self.leaf(self.expect("}")))
        self.block_depth -= 1
        return self.node("Block", children)

    def parse_statement(self) -> AstNode:
        t = self.peek()
        assert t is not None
        if t.text == "{":
            return self.parse_block()
        if t.text == ";":
            node = self.node("EmptyStatement", [self.leaf(self.advance())])
            return node
        if t.text == "if":
            return self.parse_if()
        if t.text == "while":
            return self.parse_while()
        if t.text == "for":
            return self.parse_for()
        if t.text == "return":
            return self.parse_return()
        if t.text in ("break", "continue"):
            kind = "BreakStatement" if t.text == "break" else "ContinueStatement"
            lo = self.advance()
            children = [self.leaf(lo), self.leaf(self.expect(";"))]
            node = self.node(kind, children)
            st = self.make_statement(ST_OTHER, lo, node.span[1] + self._offset())
            self.stamp(node, st.id)
            return node
        if t.text in ("do", "switch", "goto", "typedef", "case", "default"):
            raise self.error(f"{t.text!r} statements are outside the subset")
        if self.looks_like_declaration():
            return self.parse_declaration()
        return self.parse_expression_statement()

    def _offset(self) -> int:
        # Spans are absolute until the function is rebased, so span
        # indices and token indices agree during parsing.
        return 0

    def looks_like_declaration(self) -> bool:
        t = self.peek()
        if t is None:
            return False
        if t.kind == KEYWORD and t.text in TYPE_KEYWORDS:
            return True
        if t.kind != IDENTIFIER:
            return False
        j = 1
        while self.at("*", j):
            j += 1
        nxt = self.peek(j)
        if nxt is None or nxt.kind != IDENTIFIER:
            return False
        after = self.peek(j + 1)
        return after is not None and after.text in (";", "=", ",", "[")

    def parse_declaration(self, consume_semicolon: bool = True) -> AstNode:
        lo = self.pos
        children = self.parse_decl_specifiers()
        while True:
            children.append(self.parse_declarator())
            if self.at(","):
                children.append(self.leaf(self.advance()))
                continue
            break
        if consume_semicolon:
            children.append(self.leaf(self.expect(";")))
        node = self.node("IdentifierDeclStatement", children)
        st = self.make_statement(ST_DECLARATION, lo, node.span[1])
        self.stamp(node, st.id)
        return node

    def parse_declarator(self) -> AstNode:
        children: list[AstNode] = []
        while self.at("*"):
            children.append(self.leaf(self.advance()))
        name_idx = self.expect_identifier()
        self.toks[name_idx].role = ROLE_DECLARED
        children.append(self.leaf(name_idx))
        while self.at("["):
            children.append(self.leaf(self.advance()))
            if not self.at("]"):
                children.append(self.parse_expression())
            children.append(self.leaf(self.expect("]")))
        if self.at("="):
            children.append(self.leaf(self.advance()))
            children.append(self.parse_initializer())
        return self.node("Declarator", children)

    def parse_initializer(self) -> AstNode:
        if self.at("{"):
            children = [self.leaf(self.advance())]
            while not self.at("}"):
                children.append(self.parse_initializer())
                if self.at(","):
                    children.append(self.leaf(self.advance()))
            children.append(self.leaf(self.expect("}")))
            return self.node("InitList", children)
        return self.parse_assignment_expr()

    def parse_if(self) -> AstNode:
        kw = self.leaf(self.expect("if"))
        open_paren = self.leaf(self.expect("("))
        cond_expr = self.parse_expression()
        close_paren = self.leaf(self.expect(")"))
        cond = self.node("Condition", [kw, open_paren, cond_expr, close_paren])
        st = self.make_statement(ST_PREDICATE, cond.span[0], cond.span[1])
        self.stamp(cond, st.id)
        children = [cond, self.parse_statement()]
        if self.at("else"):
            children.append(self.leaf(self.advance()))
            children.append(self.parse_statement())
        return self.node("IfStatement", children)

    def parse_while(self) -> AstNode:
        kw = self.leaf(self.expect("while"))
        open_paren = self.leaf(self.expect("("))
        cond_expr = self.parse_expression()
        close_paren = self.leaf(self.expect(")"))
        cond = self.node("Condition", [kw, open_paren, cond_expr, close_paren])
        st = self.make_statement(ST_PREDICATE, cond.span[0], cond.span[1])
        self.stamp(cond, st.id)
        return self.node("WhileStatement", [cond, self.parse_statement()])

    def parse_for(self) -> AstNode:
        children = [self.leaf(self.expect("for")), self.leaf(self.expect("("))]
        # init
        if self.at(";"):
            children.append(self.leaf(self.advance()))
        elif self.looks_like_declaration():
            children.append(self.parse_declaration())
        else:
            lo = self.pos
            expr = self.parse_expression()
            st = self.make_statement(ST_EXPRESSION, lo, expr.span[1])
            self.stamp(expr, st.id)
            children.append(expr)
            children.append(self.leaf(self.expect(";")))
        # condition: its own control-predicate statement (bare expression)
        if not self.at(";"):
            lo = self.pos
            cond_expr = self.parse_expression()
            cond = self.node("Condition", [cond_expr])
            st = self.make_statement(ST_PREDICATE, lo, cond.span[1])
            self.stamp(cond, st.id)
            children.append(cond)
        children.append(self.leaf(self.expect(";")))
        # step
        if not self.at(")"):
            lo = self.pos
            step = self.parse_expression()
            st = self.make_statement(ST_EXPRESSION, lo, step.span[1])
            self.stamp(step, st.id)
            children.append(step)
        children.append(self.leaf(self.expect(")")))
        children.append(self.parse_statement())
        return self.node("ForStatement", children)

    def parse_return(self) -> AstNode:
        lo = self.pos
        children = [self.leaf(self.expect("return"))]
        if not self.at(";"):
            children.append(self.parse_expression())
        children.append(self.leaf(self.expect(";")))
        node = self.node("ReturnStatement", children)
        st = self.make_statement(ST_RETURN, lo, node.span[1])
        self.stamp(node, st.id)
        return node

    def parse_expression_statement(self) -> AstNode:
        lo = self.pos
        expr = self.parse_expression()
        semi = self.leaf(self.expect(";"))
        node = self.node("ExpressionStatement", [expr, semi])
        kind = ST_CALL if expr.kind == "CallExpression" else ST_EXPRESSION
        st = self.make_statement(kind, lo, node.span[1])
        self.stamp(node, st.id)
        return node

    # --- expressions --------------------------------------------------

    def parse_expression(self) -> AstNode:
        node = self.parse_assignment_expr()
        while self.at(","):
            comma = self.leaf(self.advance())
            rhs = self.parse_assignment_expr()
            node = self.node("BinaryExpr", [node, comma, rhs])
        return node

    def parse_assignment_expr(self) -> AstNode:
        lhs = self.parse_conditional()
        t = self.peek()
        if t is not None and t.text in ASSIGN_OPS:
            op = self.leaf(self.advance())
            rhs = self.parse_assignment_expr()
            return self.node("AssignExpr", [lhs, op, rhs])
        return lhs

    def parse_conditional(self) -> AstNode:
        cond = self.parse_binary(0)
        if self.at("?"):
            q = self.leaf(self.advance())
            then = self.parse_expression()
            colon = self.leaf(self.expect(":"))
            other = self.parse_assignment_expr()
            return self.node("CondExpr", [cond, q, then, colon, other])
        return cond

    def parse_binary(self, level: int) -> AstNode:
        if level >= len(_BINARY_LEVELS):
            return self.parse_unary()
        node = self.parse_binary(level + 1)
        while True:
            t = self.peek()
            if t is None or t.text not in _BINARY_LEVELS[level]:
                return node
            op = self.leaf(self.advance())
            rhs = self.parse_binary(level + 1)
            node = self.node("BinaryExpr", [node, op, rhs])

    def parse_unary(self) -> AstNode:
        t = self.peek()
        if t is None:
            raise self.error("expected expression")
        if t.text in _UNARY_OPS and t.kind == OPERATOR:
            op = self.leaf(self.advance())
            operand = self.parse_unary()
            return self.node("UnaryExpr", [op, operand])
        if t.text == "sizeof":
            kw = self.leaf(self.advance())
            if self.at("("):
                open_paren = self.leaf(self.advance())
                inner = self.parse_sizeof_operand()
                close_paren = self.leaf(self.expect(")"))
                paren = self.node("ParenExpr", [open_paren, inner, close_paren])
                return self.node("UnaryExpr", [kw, paren])
            return self.node("UnaryExpr", [kw, self.parse_unary()])
        if t.text == "(" and self.is_cast_ahead():
            open_paren = self.leaf(self.advance())
            type_nodes = self.parse_decl_specifiers()
            while self.at("*"):
                type_nodes.append(self.leaf(self.advance()))
            close_paren = self.leaf(self.expect(")"))
            operand = self.parse_unary()
            return self.node(
                "CastExpr", [open_paren] + type_nodes + [close_paren, operand]
            )
        return self.parse_postfix()

    def parse_sizeof_operand(self) -> AstNode:
        t = self.peek()
        if t is not None and t.kind == KEYWORD and t.text in TYPE_KEYWORDS:
            nodes = self.parse_decl_specifiers()
            while self.at("*"):
                nodes.append(self.leaf(self.advance()))
            return nodes[0] if len(nodes) == 1 else self.node("TypeName", nodes)
        return self.parse_expression()

    def is_cast_ahead(self) -> bool:
        # "(" type-keyword ... ")" followed by something castable.
        t = self.peek(1)
        if t is None or t.kind != KEYWORD or t.text not in TYPE_KEYWORDS:
            return False
        j = 2
        while True:
            t = self.peek(j)
            if t is None:
                return False
            if t.text == ")":
                after = self.peek(j + 1)
                return after is not None and (
                    after.kind in (IDENTIFIER, CONSTANT, STRING)
                    or after.text in ("(", "*", "&", "-", "+", "!", "~")
                )
            if t.kind == KEYWORD and t.text in TYPE_KEYWORDS or t.text == "*":
                j += 1
                continue
            if t.kind == IDENTIFIER:
                j += 1
                continue
            return False

    def parse_postfix(self) -> AstNode:
        node = self.parse_primary()
        while True:
            t = self.peek()
            if t is None:
                return node
            if t.text == "(":
                if node.kind == "Identifier":
                    self.toks[node.span[0]].role = ROLE_CALLEE
                callee = self.node("Callee", [node])
                children = [callee, self.leaf(self.advance())]
                if not self.at(")"):
                    while True:
                        children.append(self.parse_assignment_expr())
                        if self.at(","):
                            children.append(self.leaf(self.advance()))
                            continue
                        break
                children.append(self.leaf(self.expect(")")))
                node = self.node("CallExpression", children)
            elif t.text == "[":
                children = [node, self.leaf(self.advance()), self.parse_expression()]
                children.append(self.leaf(self.expect("]")))
                node = self.node("IndexExpr", children)
            elif t.text in (".", "->"):
                op = self.leaf(self.advance())
                fld = self.expect_identifier()
                self.toks[fld].role = ROLE_FIELD
                node = self.node("MemberExpr", [node, op, self.leaf(fld)])
            elif t.text in ("++", "--"):
                node = self.node("UnaryExpr", [node, self.leaf(self.advance())])
            else:
                return node

    def parse_primary(self) -> AstNode:
        t = self.peek()
        if t is None:
            raise self.error("expected expression")
        if t.text == "(":
            open_paren = self.leaf(self.advance())
            inner = self.parse_expression()
            close_paren = self.leaf(self.expect(")"))
            return self.node("ParenExpr", [open_paren, inner, close_paren])
        if t.kind in (IDENTIFIER, CONSTANT, STRING):
            return self.leaf(self.advance())
        if t.kind == KEYWORD and t.text == "sizeof":
            return self.parse_unary()
        raise self.error(f"unexpected token {t.text!r} in expression")


def parse(
    tokens: list[Token],
    file_path: str,
    first_statement_id: int = 0,
    first_function_index: int = 0,
) -> ProgramModel:
    """Parse one file's tokens into a ProgramModel."""
    parser = _FileParser(tokens, file_path, first_statement_id, first_function_index)
    parser.parse_translation_unit()
    return ProgramModel(
        functions=parser.functions,
        files=[file_path],
        diagnostics=parser.diagnostics,
        name=file_path,
    )


def parse_source(source: str, file_path: str = "<memory>") -> ProgramModel:
    return parse(tokenize(source), file_path)


def load_program(paths: list[str], name: str = "") -> ProgramModel:
    """Parse several source files into one merged ProgramModel.

    Statement ids and function indices stay unique across files.
    """
    model = ProgramModel(name=name or (paths[0] if paths else ""))
    next_stmt = 0
    next_fn = 0
    for path in paths:
        with open(path, "r", encoding="utf-8", errors="replace") as handle:
            text = handle.read()
        part = parse(tokenize(text), path, next_stmt, next_fn)
        model.functions.extend(part.functions)
        model.files.append(path)
        model.diagnostics.extend(part.diagnostics)
        for fn in part.functions:
            for st in fn.all_statements():
                next_stmt = max(next_stmt, st.id + 1)
            next_fn = max(next_fn, fn.index + 1)
    return model


def dump_ast(model: ProgramModel) -> list[dict]:
    """AST dump records: one node per line (id, kind, span, parent-id)."""
    records = []
    for fn in model.functions:
        for node in fn.ast.walk():
            records.append(
                {
                    "file": fn.file_path,
                    "function": fn.name,
                    "id": node.id,
                    "kind": node.kind,
                    "span": [node.span[0], node.span[1]],
                    "parent_id": node.parent_id,
                    "statement_id": node.statement_id,
                }
            )
    return records
