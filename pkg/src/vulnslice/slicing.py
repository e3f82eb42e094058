"""Program slicing: SyVC -> interprocedural slice -> SeVC.

Forward slices follow data edges only; backward slices follow data and
control edges in reverse. Interprocedural slices stitch per-function
slices together:

- forward: at each call site already in the slice, enter the callee at
  the parameters bound to arguments that mention at least one variable,
  and keep following data edges (the callee's signature joins the
  slice);
- backward, callee side: at each call site in the slice whose return
  value is consumed, pull the callee's backward slice from its return
  statements;
- backward, caller side: when the sliced function's own parameters end
  up in the slice, pull each caller's backward slice from the call
  site. Only the caller chain recurses upward; a return-entered callee
  already has its arguments covered at the call site.

Call-graph cycles are cut with visited-function sets.

The assembled SeVC lists statements in source order within a function
and orders functions caller-before-callee, depth-first along call
sites, mirroring the order in which the program would reach them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .frontend import ProgramModel, ST_RETURN
from .graphs import CallGraph, CallSite, Pdg, build_call_graph
from .candidates import SyVC

REGION_BACKWARD = "backward"
REGION_ANCHOR = "anchor"
REGION_FORWARD = "forward"


class SliceConsistencyError(Exception):
    pass


@dataclass
class ProgramSlice:
    """Interprocedural forward/backward node sets for one SyVC."""

    syvc_id: int
    anchor_statement: int
    forward_nodes: list[int]
    backward_nodes: list[int]
    diagnostics: list[str] = field(default_factory=list)


@dataclass
class SevcStatement:
    file: str
    function: str
    statement_id: int
    line: int
    text: str
    region: str
    tokens: list = field(default_factory=list)


@dataclass
class SeVC:
    """Ordered statements semantically tied to one SyVC."""

    syvc_id: int
    kind: str
    anchor_statement: int
    statements: list[SevcStatement]
    user_functions: frozenset[str] = frozenset()
    label: int | None = None
    needs_review: bool = False
    program: str = ""

    def lines_by_file(self) -> set[tuple[str, int]]:
        return {(s.file, s.line) for s in self.statements}


def _ordered(pdg: Pdg, nodes: set[int]) -> list[int]:
    return sorted(nodes, key=lambda n: (pdg.lines.get(n, 0), n))


def forward_slice(pdg: Pdg, anchor_statement: int) -> list[int]:
    """Nodes reachable from the anchor via data edges, anchor included."""
    if anchor_statement not in set(pdg.nodes):
        raise SliceConsistencyError(
            f"anchor statement {anchor_statement} not in PDG of function "
            f"{pdg.function_index}"
        )
    succ = pdg.data_successors()
    seen = {anchor_statement}
    stack = [anchor_statement]
    while stack:
        for nxt in succ[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return _ordered(pdg, seen)


def backward_slice(pdg: Pdg, anchor_statement: int) -> list[int]:
    """Nodes that reach the anchor via data or control edges."""
    if anchor_statement not in set(pdg.nodes):
        raise SliceConsistencyError(
            f"anchor statement {anchor_statement} not in PDG of function "
            f"{pdg.function_index}"
        )
    pred = pdg.all_predecessors()
    seen = {anchor_statement}
    stack = [anchor_statement]
    while stack:
        for nxt in pred[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return _ordered(pdg, seen)


def _forward_from(pdg: Pdg, starts: set[int]) -> set[int]:
    succ = pdg.data_successors()
    seen = set(starts)
    stack = list(starts)
    while stack:
        for nxt in succ[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def _backward_from(pdg: Pdg, starts: set[int]) -> set[int]:
    pred = pdg.all_predecessors()
    seen = set(starts)
    stack = list(starts)
    while stack:
        for nxt in pred[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def _bound_parameters(site: CallSite, program: ProgramModel) -> list[str]:
    """Callee parameters bound to arguments that mention a variable."""
    assert site.callee_index is not None
    callee = program.functions[site.callee_index]
    bound = []
    for position, param in enumerate(callee.parameters):
        if position < len(site.arg_identifiers) and site.arg_identifiers[position]:
            bound.append(param)
    return bound


def interprocedural_slices(
    program: ProgramModel,
    call_graph: CallGraph,
    pdgs: dict[int, Pdg],
    syvc: SyVC,
) -> ProgramSlice:
    """Build the merged interprocedural slice for one SyVC."""
    home = syvc.function_index
    pdg = pdgs[home]
    diagnostics: list[str] = []

    sites_by_function: dict[int, list[CallSite]] = {}
    for site in call_graph.edges:
        sites_by_function.setdefault(site.caller_index, []).append(site)
    unresolved_by_stmt: dict[int, list[CallSite]] = {}
    for site in call_graph.unresolved:
        unresolved_by_stmt.setdefault(site.statement_id, []).append(site)

    fs_nodes = forward_slice(pdg, syvc.statement_id)
    bs_nodes = backward_slice(pdg, syvc.statement_id)
    forward: list[int] = list(fs_nodes)
    backward: list[int] = list(bs_nodes)
    forward_set = set(forward)
    backward_set = set(backward)

    def note_unresolved(stmts: set[int]) -> None:
        for sid in sorted(stmts):
            for site in unresolved_by_stmt.get(sid, []):
                diagnostics.append(
                    f"call to unresolved function {site.callee_name!r} at "
                    f"statement {sid} skipped"
                )

    # --- forward: descend into callees via bound parameters ------------
    visited_fwd = {home}
    queue: list[tuple[int, set[int]]] = [(home, set(fs_nodes))]
    while queue:
        func, added = queue.pop(0)
        note_unresolved(added)
        for site in sites_by_function.get(func, []):
            if site.statement_id not in added:
                continue
            callee_idx = site.callee_index
            assert callee_idx is not None
            if callee_idx in visited_fwd:
                continue
            params = _bound_parameters(site, program)
            if not params:
                continue
            callee_pdg = pdgs[callee_idx]
            starts = {
                e.dst
                for e in callee_pdg.edges
                if e.kind == "data"
                and e.src == callee_pdg.entry
                and e.variable in params
            }
            if not starts:
                continue
            visited_fwd.add(callee_idx)
            sub = _forward_from(callee_pdg, starts)
            sub.add(callee_pdg.entry)  # the callee signature joins the slice
            fresh = sub - forward_set
            for n in sorted(fresh, key=lambda x: (callee_pdg.lines.get(x, 0), x)):
                forward.append(n)
            forward_set |= fresh
            queue.append((callee_idx, sub))

    # --- backward: callee returns and caller chains ---------------------
    return_stmts: dict[int, list[int]] = {}
    for fn in program.functions:
        return_stmts[fn.index] = [
            st.id for st in fn.body if st.kind == ST_RETURN
        ]

    visited_ret: set[int] = set()
    visited_up = {home}
    bqueue: list[tuple[int, set[int], bool]] = [(home, set(bs_nodes), True)]
    while bqueue:
        func, added, allow_up = bqueue.pop(0)
        note_unresolved(added)
        # (a) descend into callees whose return value feeds the slice
        for site in sites_by_function.get(func, []):
            if site.statement_id not in added or not site.value_consumed:
                continue
            callee_idx = site.callee_index
            assert callee_idx is not None
            if callee_idx in visited_ret or callee_idx == home:
                continue
            rets = return_stmts.get(callee_idx, [])
            callee_pdg = pdgs[callee_idx]
            starts = {r for r in rets if r in set(callee_pdg.nodes)}
            if not starts:
                continue
            visited_ret.add(callee_idx)
            sub = _backward_from(callee_pdg, starts)
            fresh = sub - backward_set
            for n in sorted(fresh, key=lambda x: (callee_pdg.lines.get(x, 0), x)):
                backward.append(n)
            backward_set |= fresh
            bqueue.append((callee_idx, sub, False))
        # (b) ascend to callers when this function's parameters matter
        entry = pdgs[func].entry
        if allow_up and entry in added | backward_set:
            for site in call_graph.calls_to(func):
                caller = site.caller_index
                if caller in visited_up:
                    continue
                visited_up.add(caller)
                caller_pdg = pdgs[caller]
                if site.statement_id not in set(caller_pdg.nodes):
                    continue
                sub = set(backward_slice(caller_pdg, site.statement_id))
                fresh = sub - backward_set
                for n in sorted(
                    fresh, key=lambda x: (caller_pdg.lines.get(x, 0), x)
                ):
                    backward.append(n)
                backward_set |= fresh
                bqueue.append((caller, sub, True))

    return ProgramSlice(
        syvc_id=syvc.id,
        anchor_statement=syvc.statement_id,
        forward_nodes=forward,
        backward_nodes=backward,
        diagnostics=diagnostics,
    )


def assemble_sevc(
    program: ProgramModel,
    slice_: ProgramSlice,
    syvc: SyVC,
    call_graph: CallGraph | None = None,
) -> SeVC:
    """Order the slice into a SeVC and tag statement regions.

    Statements keep their source order inside each function; functions
    are ordered caller-before-callee, depth-first along call sites. A
    non-anchor statement present on both sides is tagged backward.
    """
    stmt_index = program.statement_index()
    member_ids = set(slice_.backward_nodes) | set(slice_.forward_nodes)
    member_ids.discard(-1)

    functions_of: dict[int, list[int]] = {}
    for sid in member_ids:
        st = stmt_index.get(sid)
        if st is None:
            raise SliceConsistencyError(f"slice statement {sid} has no source")
        functions_of.setdefault(st.function_index, []).append(sid)
    for sids in functions_of.values():
        sids.sort(key=lambda s: (stmt_index[s].line_first, s))

    # caller -> callee relation restricted to sliced call sites
    if call_graph is None:
        call_graph = build_call_graph(program)
    callees: dict[int, list[tuple[int, int]]] = {}
    incoming: dict[int, int] = {f: 0 for f in functions_of}
    for site in call_graph.edges:
        if (
            site.statement_id in member_ids
            and site.caller_index in functions_of
            and site.callee_index in functions_of
            and site.callee_index != site.caller_index
        ):
            callees.setdefault(site.caller_index, []).append(
                (site.statement_id, site.callee_index)
            )
    for caller, pairs in callees.items():
        pairs.sort()
        for _, callee in pairs:
            if callee in incoming:
                incoming[callee] += 1

    order: list[int] = []
    emitted: set[int] = set()

    def visit(func: int) -> None:
        if func in emitted:
            return
        emitted.add(func)
        order.append(func)
        for _, callee in callees.get(func, []):
            visit(callee)

    roots = sorted(f for f, count in incoming.items() if count == 0)
    anchor_func = stmt_index[slice_.anchor_statement].function_index
    if anchor_func in incoming and incoming[anchor_func] == 0:
        # make the anchor's own chain lead when several roots exist
        roots = [anchor_func] + [f for f in roots if f != anchor_func]
    for f in roots:
        visit(f)
    for f in sorted(functions_of):
        visit(f)

    backward_set = set(slice_.backward_nodes)
    statements: list[SevcStatement] = []
    for func in order:
        fn = program.functions[func]
        for sid in functions_of[func]:
            st = stmt_index[sid]
            if sid == slice_.anchor_statement:
                region = REGION_ANCHOR
            elif sid in backward_set:
                region = REGION_BACKWARD
            else:
                region = REGION_FORWARD
            statements.append(
                SevcStatement(
                    file=fn.file_path,
                    function=fn.name,
                    statement_id=sid,
                    line=st.line_first,
                    text=st.text(),
                    region=region,
                    tokens=list(st.tokens),
                )
            )
    return SeVC(
        syvc_id=slice_.syvc_id,
        kind=syvc.kind,
        anchor_statement=slice_.anchor_statement,
        statements=statements,
        user_functions=program.user_function_names(),
        program=program.name,
    )


def sevc_record(sevc: SeVC) -> dict:
    """The sevc.jsonl record for one SeVC."""
    return {
        "syvc_id": sevc.syvc_id,
        "kind": sevc.kind,
        "anchor_statement": sevc.anchor_statement,
        "program": sevc.program,
        "label": sevc.label,
        "needs_review": sevc.needs_review,
        "statements": [
            {
                "file": s.file,
                "function": s.function,
                "statement_id": s.statement_id,
                "line": s.line,
                "text": s.text,
                "region": s.region,
            }
            for s in sevc.statements
        ],
    }
