"""Per-function control-flow and dependence graphs, plus the call graph.

CFG nodes are statement ids (the function signature acts as the entry
node, where parameters are defined) plus one synthetic exit. Data
dependence edges come from classic reaching definitions over token-level
def/use facts; control dependence edges come from the post-dominator
tree (Ferrante-style). The PDG is their union over the CFG node set.

Def/use extraction is token-based, no alias analysis:

- strong definitions (generate and kill): declarator names, parameter
  names, bare-identifier assignment targets, ``++``/``--`` targets;
- weak definitions (generate only): writes through ``*p``, ``p[i]``,
  ``p.f``/``p->f`` (the base identifier), and ``&v`` call arguments;
- uses: every other variable mention, including the base of a weak
  write and the old value of compound assignments.

Uninitialized declarators count as definitions so declaration-anchored
slices connect to later uses of the variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .frontend import (
    IDENTIFIER,
    ROLE_DECLARED,
    ROLE_PLAIN,
    AstNode,
    FunctionDecl,
    ProgramModel,
    ST_PREDICATE,
    ST_RETURN,
)

EXIT = -1  # synthetic exit node id, local to each function's graphs


class GraphError(Exception):
    pass


@dataclass(frozen=True)
class DependenceEdge:
    src: int
    dst: int
    kind: str  # "data" | "control"
    variable: str | None = None


@dataclass
class Cfg:
    """Control flow graph of one function.

    ``enclosing_predicate`` maps statements to their innermost
    syntactic predicate; it backs the fallback attachment rule for
    nodes that cannot reach the exit.
    """

    function_index: int
    nodes: list[int]
    edges: list[tuple[int, int]]
    entry: int
    exit: int = EXIT
    enclosing_predicate: dict[int, int] = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)

    def successors(self) -> dict[int, list[int]]:
        succ: dict[int, list[int]] = {n: [] for n in self.nodes}
        for a, b in self.edges:
            succ[a].append(b)
        return succ

    def predecessors(self) -> dict[int, list[int]]:
        pred: dict[int, list[int]] = {n: [] for n in self.nodes}
        for a, b in self.edges:
            pred[b].append(a)
        return pred


@dataclass
class Pdg:
    """Program dependence graph: CFG nodes + data/control edges."""

    function_index: int
    nodes: list[int]
    edges: list[DependenceEdge]
    entry: int
    exit: int = EXIT
    lines: dict[int, int] = field(default_factory=dict)

    def data_successors(self) -> dict[int, list[int]]:
        succ: dict[int, list[int]] = {n: [] for n in self.nodes}
        for e in self.edges:
            if e.kind == "data":
                succ[e.src].append(e.dst)
        return succ

    def all_predecessors(self) -> dict[int, list[int]]:
        pred: dict[int, list[int]] = {n: [] for n in self.nodes}
        for e in self.edges:
            pred[e.dst].append(e.src)
        return pred


@dataclass(frozen=True)
class CallSite:
    caller_index: int
    callee_name: str
    statement_id: int
    arg_identifiers: tuple[tuple[str, ...], ...]
    value_consumed: bool
    callee_index: int | None


@dataclass
class CallGraph:
    edges: list[CallSite] = field(default_factory=list)
    unresolved: list[CallSite] = field(default_factory=list)

    def calls_from(self, function_index: int) -> list[CallSite]:
        return [e for e in self.edges if e.caller_index == function_index]

    def calls_to(self, function_index: int) -> list[CallSite]:
        return [e for e in self.edges if e.callee_index == function_index]


# --------------------------------------------------------------------------
# CFG construction
# --------------------------------------------------------------------------


class _CfgBuilder:
    def __init__(self, fn: FunctionDecl):
        self.fn = fn
        self.edges: list[tuple[int, int]] = []
        self.enclosing: dict[int, int] = {}
        self.predicate_stack: list[int] = []
        self.stmt_of_node: dict[int, int] = {}

    def edge(self, a: int, b: int) -> None:
        if (a, b) not in set(self.edges):
            self.edges.append((a, b))

    def build(self) -> Cfg:
        fn = self.fn
        entry = fn.signature.id
        # loop context: (continue_target, break_collector)
        exits, _ = self.wire_block(fn.ast, [entry], [])
        for e in exits:
            self.edge(e, EXIT)
        nodes = [entry] + [s.id for s in fn.body] + [EXIT]
        cfg = Cfg(
            function_index=fn.index,
            nodes=nodes,
            edges=self.edges,
            entry=entry,
            enclosing_predicate=self.enclosing,
        )
        _prune_unreachable(cfg)
        return cfg

    def wire_block(
        self, block: AstNode, dangling: list[int], loops: list[tuple[int, list[int]]]
    ) -> tuple[list[int], bool]:
        """Wire a Block/FunctionDef's statements; return open exits."""
        for child in block.children:
            dangling, terminated = self.wire_item(child, dangling, loops)
            if terminated and not dangling:
                break
        return dangling, False

    def connect(self, dangling: list[int], target: int) -> None:
        for d in dangling:
            self.edge(d, target)

    def note_nesting(self, sid: int) -> None:
        if self.predicate_stack:
            self.enclosing[sid] = self.predicate_stack[-1]

    def wire_item(
        self,
        node: AstNode,
        dangling: list[int],
        loops: list[tuple[int, list[int]]],
    ) -> tuple[list[int], bool]:
        """Wire one AST item. Returns (new dangling exits, terminated)."""
        kind = node.kind
        if kind in ("Block", "FunctionDef"):
            out, _ = self.wire_block(node, dangling, loops)
            return out, False
        if kind in (
            "IdentifierDeclStatement",
            "ExpressionStatement",
        ):
            sid = node.statement_id
            assert sid is not None
            self.connect(dangling, sid)
            self.note_nesting(sid)
            return [sid], False
        if kind == "ReturnStatement":
            sid = node.statement_id
            assert sid is not None
            self.connect(dangling, sid)
            self.note_nesting(sid)
            self.edge(sid, EXIT)
            return [], True
        if kind == "BreakStatement":
            sid = node.statement_id
            assert sid is not None
            self.connect(dangling, sid)
            self.note_nesting(sid)
            if not loops:
                raise GraphError(
                    f"'break' outside a loop at statement {sid} "
                    f"({self.fn.file_path}:{self.fn.name})"
                )
            loops[-1][1].append(sid)
            return [], True
        if kind == "ContinueStatement":
            sid = node.statement_id
            assert sid is not None
            self.connect(dangling, sid)
            self.note_nesting(sid)
            if not loops:
                raise GraphError(
                    f"'continue' outside a loop at statement {sid} "
                    f"({self.fn.file_path}:{self.fn.name})"
                )
            self.edge(sid, loops[-1][0])
            return [], True
        if kind == "IfStatement":
            return self.wire_if(node, dangling, loops), False
        if kind == "WhileStatement":
            return self.wire_while(node, dangling, loops), False
        if kind == "ForStatement":
            return self.wire_for(node, dangling, loops), False
        # EmptyStatement, stray leaves (braces): pass through
        return dangling, False

    def wire_if(self, node, dangling, loops) -> list[int]:
        children = [c for c in node.children]
        cond = children[0]
        pred = cond.statement_id
        assert pred is not None
        self.connect(dangling, pred)
        self.note_nesting(pred)
        self.predicate_stack.append(pred)
        then_exits, _ = self.wire_item(children[1], [pred], loops)
        else_exits: list[int] = []
        has_else = len(children) >= 4
        if has_else:
            else_exits, _ = self.wire_item(children[3], [pred], loops)
            out = then_exits + else_exits
        else:
            out = then_exits + [pred]
        self.predicate_stack.pop()
        return out

    def wire_while(self, node, dangling, loops) -> list[int]:
        cond, body = node.children[0], node.children[1]
        pred = cond.statement_id
        assert pred is not None
        self.connect(dangling, pred)
        self.note_nesting(pred)
        breaks: list[int] = []
        self.predicate_stack.append(pred)
        body_exits, _ = self.wire_item(body, [pred], [*loops, (pred, breaks)])
        self.connect(body_exits, pred)
        self.predicate_stack.pop()
        return [pred] + breaks

    def wire_for(self, node, dangling, loops) -> list[int]:
        """for(init; cond; step) desugars to init; while(cond){body; step}."""
        body = node.children[-1]
        cond = next((c for c in node.children if c.kind == "Condition"), None)
        if cond is None:
            raise GraphError(
                f"'for' without a condition is outside the subset "
                f"({self.fn.file_path}:{self.fn.name})"
            )
        clause_stmts = [
            c
            for c in node.children[:-1]
            if c.statement_id is not None and c is not cond
        ]
        init = next(
            (c for c in clause_stmts if c.span[0] < cond.span[0]), None
        )
        step = next(
            (c for c in clause_stmts if c.span[0] > cond.span[1]), None
        )
        if init is not None:
            sid = init.statement_id
            assert sid is not None
            self.connect(dangling, sid)
            self.note_nesting(sid)
            dangling = [sid]
        pred = cond.statement_id
        assert pred is not None
        step_id = step.statement_id if step is not None else None
        breaks: list[int] = []
        self.connect(dangling, pred)
        self.note_nesting(pred)
        self.predicate_stack.append(pred)
        continue_target = step_id if step_id is not None else pred
        body_exits, _ = self.wire_item(
            body, [pred], [*loops, (continue_target, breaks)]
        )
        if step_id is not None:
            self.connect(body_exits, step_id)
            self.note_nesting(step_id)
            self.edge(step_id, pred)
        else:
            self.connect(body_exits, pred)
        self.predicate_stack.pop()
        return [pred] + breaks


def _prune_unreachable(cfg: Cfg) -> None:
    """Drop nodes with no path from entry (e.g. code after return)."""
    succ = cfg.successors()
    seen = {cfg.entry}
    stack = [cfg.entry]
    while stack:
        for nxt in succ[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    seen.add(cfg.exit)
    dropped = [n for n in cfg.nodes if n not in seen]
    if dropped:
        cfg.diagnostics.append(
            f"unreachable statements pruned from CFG: {sorted(dropped)}"
        )
        cfg.nodes = [n for n in cfg.nodes if n in seen]
        cfg.edges = [(a, b) for a, b in cfg.edges if a in seen and b in seen]


def build_cfg(fn: FunctionDecl) -> Cfg:
    return _CfgBuilder(fn).build()


# --------------------------------------------------------------------------
# def/use facts
# --------------------------------------------------------------------------


@dataclass
class StatementFacts:
    strong_defs: set[str] = field(default_factory=set)
    weak_defs: set[str] = field(default_factory=set)
    uses: set[str] = field(default_factory=set)

    @property
    def defs(self) -> set[str]:
        return self.strong_defs | self.weak_defs


def _base_identifier(node: AstNode, fn: FunctionDecl) -> str | None:
    """Leftmost variable identifier of an lvalue expression."""
    current = node
    while True:
        if current.kind == "Identifier":
            tok = fn.tokens[current.span[0]]
            if tok.role in (ROLE_PLAIN, ROLE_DECLARED):
                return tok.text
            return None
        if current.kind in ("IndexExpr", "MemberExpr"):
            current = current.children[0]
            continue
        if current.kind == "ParenExpr":
            current = current.children[1]
            continue
        if current.kind == "UnaryExpr":
            # *p or (*p) style: descend past the operator
            inner = [c for c in current.children if c.kind not in ("Operator",)]
            if not inner:
                return None
            current = inner[0]
            continue
        if current.kind == "CastExpr":
            current = current.children[-1]
            continue
        return None


def _is_bare_identifier(node: AstNode, fn: FunctionDecl) -> bool:
    if node.kind == "ParenExpr":
        return _is_bare_identifier(node.children[1], fn)
    if node.kind != "Identifier":
        return False
    return fn.tokens[node.span[0]].role in (ROLE_PLAIN, ROLE_DECLARED)


def _collect(node: AstNode, fn: FunctionDecl, facts: StatementFacts) -> None:
    kind = node.kind
    if kind == "AssignExpr":
        lhs, op = node.children[0], node.children[1]
        rhs = node.children[2]
        op_text = fn.tokens[op.span[0]].text
        if _is_bare_identifier(lhs, fn):
            name = _base_identifier(lhs, fn)
            assert name is not None
            facts.strong_defs.add(name)
            if op_text != "=":
                facts.uses.add(name)
        else:
            base = _base_identifier(lhs, fn)
            if base is not None:
                facts.weak_defs.add(base)
            _collect(lhs, fn, facts)
        _collect(rhs, fn, facts)
        return
    if kind == "UnaryExpr":
        op_texts = [
            fn.tokens[c.span[0]].text for c in node.children if c.kind == "Operator"
        ]
        operand = next(
            (c for c in node.children if c.kind != "Operator"), None
        )
        if operand is not None and any(t in ("++", "--") for t in op_texts):
            if _is_bare_identifier(operand, fn):
                name = _base_identifier(operand, fn)
                assert name is not None
                facts.strong_defs.add(name)
                facts.uses.add(name)
                return
            base = _base_identifier(operand, fn)
            if base is not None:
                facts.weak_defs.add(base)
            _collect(operand, fn, facts)
            return
        for child in node.children:
            _collect(child, fn, facts)
        return
    if kind == "CallExpression":
        for child in node.children:
            if child.kind == "Callee":
                continue  # callee names are not variable uses
            if _is_address_of_identifier(child, fn):
                name = _base_identifier(child.children[1], fn)
                if name is not None:
                    facts.weak_defs.add(name)
                    facts.uses.add(name)
                continue
            _collect(child, fn, facts)
        return
    if kind == "Identifier":
        tok = fn.tokens[node.span[0]]
        if tok.role == ROLE_PLAIN:
            facts.uses.add(tok.text)
        elif tok.role == ROLE_DECLARED:
            facts.strong_defs.add(tok.text)
        return
    for child in node.children:
        _collect(child, fn, facts)


def _is_address_of_identifier(node: AstNode, fn: FunctionDecl) -> bool:
    if node.kind != "UnaryExpr" or len(node.children) != 2:
        return False
    op, operand = node.children
    if op.kind != "Operator" or fn.tokens[op.span[0]].text != "&":
        return False
    return _base_identifier(operand, fn) is not None


def extract_def_use(fn: FunctionDecl) -> dict[int, StatementFacts]:
    """Token-level def/use facts for every statement, signature included."""
    facts: dict[int, StatementFacts] = {
        st.id: StatementFacts() for st in fn.all_statements()
    }
    index = {n.id: n for n in fn.ast.walk()}
    # A statement can have several top-level nodes (signature pieces);
    # collect over each of them.
    tops: dict[int, list[AstNode]] = {}
    for node in fn.ast.walk():
        sid = node.statement_id
        if sid is None:
            continue
        parent = index.get(node.parent_id) if node.parent_id is not None else None
        if parent is None or parent.statement_id != sid:
            tops.setdefault(sid, []).append(node)
    for sid, nodes in tops.items():
        for node in nodes:
            _collect(node, fn, facts[sid])
    return facts


# --------------------------------------------------------------------------
# data dependences: reaching definitions
# --------------------------------------------------------------------------


def compute_data_deps(
    cfg: Cfg, facts: dict[int, StatementFacts]
) -> list[DependenceEdge]:
    """Edges (def site -> use site, variable) from reaching definitions.

    Strong defs kill earlier defs of the same variable; weak defs only
    generate. A use at the defining node reads the incoming state, so
    self-loops only arise through actual cycles.
    """
    nodes = list(cfg.nodes)
    gen: dict[int, frozenset[tuple[int, str]]] = {}
    kill_vars: dict[int, set[str]] = {}
    for n in nodes:
        f = facts.get(n)
        if f is None:
            gen[n] = frozenset()
            kill_vars[n] = set()
        else:
            gen[n] = frozenset((n, v) for v in f.defs)
            kill_vars[n] = set(f.strong_defs)
    preds = cfg.predecessors()
    in_sets: dict[int, frozenset[tuple[int, str]]] = {n: frozenset() for n in nodes}
    out_sets: dict[int, frozenset[tuple[int, str]]] = {n: frozenset() for n in nodes}
    changed = True
    while changed:
        changed = False
        for n in nodes:
            incoming: set[tuple[int, str]] = set()
            for p in preds[n]:
                incoming |= out_sets[p]
            new_in = frozenset(incoming)
            survivors = {(m, v) for (m, v) in new_in if v not in kill_vars[n]}
            new_out = frozenset(survivors | set(gen[n]))
            if new_in != in_sets[n] or new_out != out_sets[n]:
                in_sets[n] = new_in
                out_sets[n] = new_out
                changed = True
    edges: list[DependenceEdge] = []
    for n in nodes:
        f = facts.get(n)
        if f is None or not f.uses:
            continue
        for (m, v) in in_sets[n]:
            if v in f.uses:
                edges.append(DependenceEdge(m, n, "data", v))
    edges.sort(key=lambda e: (e.src, e.dst, e.variable or ""))
    return edges


# --------------------------------------------------------------------------
# control dependences: post-dominator tree
# --------------------------------------------------------------------------


def post_dominators(cfg: Cfg) -> dict[int, set[int]]:
    """Iterative post-dominance: pdom(n) = {n} U intersection over succs."""
    succ = cfg.successors()
    all_nodes = set(cfg.nodes)
    pdom: dict[int, set[int]] = {n: set(all_nodes) for n in cfg.nodes}
    pdom[cfg.exit] = {cfg.exit}
    changed = True
    while changed:
        changed = False
        for n in cfg.nodes:
            if n == cfg.exit:
                continue
            succs = succ[n]
            if not succs:
                continue
            merged: set[int] | None = None
            for s in succs:
                merged = set(pdom[s]) if merged is None else merged & pdom[s]
            assert merged is not None
            merged.add(n)
            if merged != pdom[n]:
                pdom[n] = merged
                changed = True
    return pdom


def _exit_reachable(cfg: Cfg) -> set[int]:
    pred_of = cfg.predecessors()
    seen = {cfg.exit}
    stack = [cfg.exit]
    while stack:
        for p in pred_of[stack.pop()]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def immediate_post_dominators(
    cfg: Cfg, pdom: dict[int, set[int]] | None = None
) -> dict[int, int]:
    """ipdom(n): the closest strict post-dominator of n."""
    pdom = pdom if pdom is not None else post_dominators(cfg)
    reach = _exit_reachable(cfg)
    ipdom: dict[int, int] = {}
    for n in cfg.nodes:
        if n == cfg.exit or n not in reach:
            continue
        candidates = [c for c in pdom[n] if c != n]
        # Candidates form a chain; the immediate one has the most
        # post-dominators of its own (it sits closest to n).
        best = max(candidates, key=lambda c: (len(pdom[c]), c))
        ipdom[n] = best
    return ipdom


def compute_control_deps(cfg: Cfg) -> list[DependenceEdge]:
    """Edges (predicate -> dependent node) per the post-dominance rule.

    A node with no path to the exit cannot be placed by post-dominance;
    it is attached to its innermost enclosing predicate as a fallback
    and a diagnostic is recorded on the CFG.
    """
    pdom = post_dominators(cfg)
    reach = _exit_reachable(cfg)
    ipdom = immediate_post_dominators(cfg, pdom)
    stranded = [n for n in cfg.nodes if n not in reach and n != cfg.exit]
    edges: set[tuple[int, int]] = set()
    for n in stranded:
        cfg.diagnostics.append(
            f"node {n} has no path to exit; attached to enclosing predicate"
        )
        parent = cfg.enclosing_predicate.get(n)
        if parent is not None and parent != n:
            edges.add((parent, n))
    for (a, b) in cfg.edges:
        if a not in reach or b not in reach:
            continue
        if b in pdom[a]:
            continue  # b post-dominates a: this edge induces nothing
        # Walk b up the post-dominator tree. The least common ancestor
        # of a and b is either ipdom(a) or a itself (loop case); every
        # node strictly below it is control-dependent on a.
        stop = ipdom[a]
        x = b
        while x != stop and x != a:
            edges.add((a, x))
            if x not in ipdom:
                raise GraphError(f"post-dominator walk escaped for edge {(a, b)}")
            x = ipdom[x]
    out = [DependenceEdge(a, b, "control") for (a, b) in edges]
    out.sort(key=lambda e: (e.src, e.dst))
    return out


# --------------------------------------------------------------------------
# PDG and call graph
# --------------------------------------------------------------------------


def build_pdg(fn: FunctionDecl, cfg: Cfg | None = None) -> Pdg:
    cfg = cfg if cfg is not None else build_cfg(fn)
    facts = extract_def_use(fn)
    edges = compute_data_deps(cfg, facts) + compute_control_deps(cfg)
    lines = {
        st.id: st.line_first for st in fn.all_statements() if st.id in set(cfg.nodes)
    }
    return Pdg(
        function_index=fn.index,
        nodes=list(cfg.nodes),
        edges=edges,
        entry=cfg.entry,
        lines=lines,
    )


def build_pdgs(program: ProgramModel) -> dict[int, Pdg]:
    return {fn.index: build_pdg(fn) for fn in program.functions}


def build_call_graph(program: ProgramModel) -> CallGraph:
    """One edge per resolved call site; unresolved names kept separately."""
    by_name: dict[str, int] = {}
    for fn in program.functions:
        by_name.setdefault(fn.name, fn.index)
    graph = CallGraph()
    for fn in program.functions:
        index = {n.id: n for n in fn.ast.walk()}
        for node in fn.ast.walk():
            if node.kind != "CallExpression":
                continue
            callee = node.children[0]
            inner = callee.children[0]
            if inner.kind != "Identifier":
                continue  # member/function-pointer calls are out of scope
            name = fn.tokens[inner.span[0]].text
            args = [
                c
                for c in node.children[1:]
                if c.kind not in ("Punct",)
            ]
            arg_ids = tuple(_argument_identifiers(a, fn) for a in args)
            sid = node.statement_id
            assert sid is not None
            consumed = _call_value_consumed(node, index)
            site = CallSite(
                caller_index=fn.index,
                callee_name=name,
                statement_id=sid,
                arg_identifiers=arg_ids,
                value_consumed=consumed,
                callee_index=by_name.get(name),
            )
            if site.callee_index is None:
                graph.unresolved.append(site)
            else:
                graph.edges.append(site)
    graph.edges.sort(key=lambda s: (s.caller_index, s.statement_id))
    graph.unresolved.sort(key=lambda s: (s.caller_index, s.statement_id))
    return graph


def _argument_identifiers(node: AstNode, fn: FunctionDecl) -> tuple[str, ...]:
    names: list[str] = []
    for n in node.walk():
        if n.kind == "Identifier":
            tok = fn.tokens[n.span[0]]
            if tok.role in (ROLE_PLAIN, ROLE_DECLARED) and tok.text not in names:
                names.append(tok.text)
    return tuple(names)


def _call_value_consumed(node: AstNode, index: dict[int, AstNode]) -> bool:
    """False only for a bare call statement (result discarded)."""
    parent = index.get(node.parent_id) if node.parent_id is not None else None
    return not (parent is not None and parent.kind == "ExpressionStatement")


def export_pdg_dot(pdg: Pdg, name: str = "pdg") -> str:
    """PDG in DOT: one node per line, one edge per line with its kind."""
    def node_name(n: int) -> str:
        return '"exit"' if n == pdg.exit else f'"n{n}"'

    lines = [f"digraph {name} {{"]
    for n in pdg.nodes:
        label = "exit" if n == pdg.exit else str(n)
        lines.append(f'  {node_name(n)} [label="{label}"];')
    for e in pdg.edges:
        style = "solid" if e.kind == "data" else "dashed"
        var = f" ({e.variable})" if e.variable else ""
        lines.append(
            f"  {node_name(e.src)} -> {node_name(e.dst)} "
            f'[style={style}, label="{e.kind}{var}"];'
        )
    lines.append("}")
    return "\n".join(lines)
