"""CFG shapes, def/use facts, dependence edges, and the path oracles."""

import numpy as np
import pytest

from vulnslice.frontend import parse_source
from vulnslice.graphs import (
    EXIT,
    build_call_graph,
    build_cfg,
    build_pdg,
    compute_control_deps,
    compute_data_deps,
    export_pdg_dot,
    extract_def_use,
    post_dominators,
)

from oracles import (
    oracle_control_deps,
    oracle_data_deps,
    random_structured_source,
)


def cfg_of(source):
    model = parse_source(source)
    fn = model.functions[0]
    return fn, build_cfg(fn)


def stmt_ids_by_line(fn):
    return {st.line_first: st.id for st in fn.all_statements()}


def test_linear_chain():
    fn, cfg = cfg_of("void f(){int a; a = 1;}")
    sig, s1, s2 = (st.id for st in fn.all_statements())
    assert set(cfg.edges) == {(sig, s1), (s1, s2), (s2, EXIT)}


def test_if_diamond():
    fn, cfg = cfg_of(
        "void f(int p){if (p) { one(); } else { two(); } after();}"
    )
    sig, pred, s1, s2, s3 = (st.id for st in fn.all_statements())
    assert set(cfg.edges) == {
        (sig, pred),
        (pred, s1),
        (pred, s2),
        (s1, s3),
        (s2, s3),
        (s3, EXIT),
    }


def test_if_without_else_joins():
    fn, cfg = cfg_of("void f(int p){if (p) { one(); } after();}")
    sig, pred, s1, s2 = (st.id for st in fn.all_statements())
    assert set(cfg.edges) == {
        (sig, pred),
        (pred, s1),
        (pred, s2),
        (s1, s2),
        (s2, EXIT),
    }


def test_while_loop_shape():
    fn, cfg = cfg_of("void f(int p){while (p) { body(); } after();}")
    sig, pred, s1, s2 = (st.id for st in fn.all_statements())
    assert set(cfg.edges) == {
        (sig, pred),
        (pred, s1),
        (s1, pred),
        (pred, s2),
        (s2, EXIT),
    }


def test_for_desugars_to_while():
    fn, cfg = cfg_of("void f(int n){for (i = 0; i < n; i++) { body(); } after();}")
    sig, init, pred, step, body, after = (st.id for st in fn.all_statements())
    assert set(cfg.edges) == {
        (sig, init),
        (init, pred),
        (pred, body),
        (body, step),
        (step, pred),
        (pred, after),
        (after, EXIT),
    }


def test_return_edges_to_exit_and_prunes_dead_code():
    fn, cfg = cfg_of("void f(int p){return; after();}")
    sig, ret, after = (st.id for st in fn.all_statements())
    assert (ret, EXIT) in cfg.edges
    assert after not in cfg.nodes
    assert any("unreachable" in d for d in cfg.diagnostics)


def test_break_exits_loop():
    fn, cfg = cfg_of(
        "void f(int p){while (p) { if (p) { break; } body(); } after();}"
    )
    by_line = {st.line_first: st.id for st in fn.all_statements()}
    ids = [st.id for st in fn.all_statements()]
    sig, wpred, ipred, brk, body, after = ids
    assert (brk, after) in cfg.edges
    assert (brk, wpred) not in cfg.edges


def test_post_dominators_rooted_at_exit():
    fn, cfg = cfg_of("void f(int p){if (p) { one(); } two();}")
    pdom = post_dominators(cfg)
    for node in cfg.nodes:
        assert EXIT in pdom[node]
    assert pdom[EXIT] == {EXIT}


def test_control_dep_canonical_if():
    fn, cfg = cfg_of("void f(int p){if (p) { one(); }}")
    sig, pred, s1 = (st.id for st in fn.all_statements())
    edges = {(e.src, e.dst) for e in compute_control_deps(cfg)}
    assert edges == {(pred, s1)}


def test_control_dep_linear_chain_empty():
    fn, cfg = cfg_of("void f(){one(); two(); three();}")
    assert compute_control_deps(cfg) == []


def test_control_dep_loop_body_on_predicate():
    fn, cfg = cfg_of("void f(int p){while (p) { body(); } after();}")
    sig, pred, body, after = (st.id for st in fn.all_statements())
    edges = {(e.src, e.dst) for e in compute_control_deps(cfg)}
    assert (pred, body) in edges
    assert (pred, after) not in edges  # after runs regardless


def test_def_use_facts():
    model = parse_source(
        """
        void f(int n)
        {
            int a = n;
            a = a + 1;
            buf[a] = n;
            g(&a, n);
            a += n;
        }
        """
    )
    fn = model.functions[0]
    facts = extract_def_use(fn)
    sig, decl, plain, weak, addr, compound = (st.id for st in fn.all_statements())
    assert facts[sig].strong_defs == {"n"}
    assert facts[decl].strong_defs == {"a"} and facts[decl].uses == {"n"}
    assert facts[plain].strong_defs == {"a"} and facts[plain].uses == {"a"}
    assert facts[weak].weak_defs == {"buf"}
    assert facts[weak].uses == {"buf", "a", "n"}
    assert facts[addr].weak_defs == {"a"} and facts[addr].uses == {"a", "n"}
    assert facts[compound].strong_defs == {"a"}
    assert facts[compound].uses == {"a", "n"}


def test_data_dep_single_def_use():
    fn, cfg = cfg_of("void f(){a = 1; b = a;}")
    facts = extract_def_use(fn)
    sig, s1, s2 = (st.id for st in fn.all_statements())
    edges = {(e.src, e.dst, e.variable) for e in compute_data_deps(cfg, facts)}
    assert edges == {(s1, s2, "a")}


def test_data_dep_kill():
    fn, cfg = cfg_of("void f(){a = 1; a = 2; b = a;}")
    facts = extract_def_use(fn)
    sig, s1, s2, s3 = (st.id for st in fn.all_statements())
    edges = {(e.src, e.dst, e.variable) for e in compute_data_deps(cfg, facts)}
    assert edges == {(s2, s3, "a")}


def test_data_dep_both_branches_reach_join():
    fn, cfg = cfg_of(
        "void f(int p){if (p) { v = 1; } else { v = 2; } use(v);}"
    )
    facts = extract_def_use(fn)
    sig, pred, s1, s2, s3 = (st.id for st in fn.all_statements())
    edges = {(e.src, e.dst, e.variable) for e in compute_data_deps(cfg, facts)}
    assert (s1, s3, "v") in edges and (s2, s3, "v") in edges


def test_weak_write_does_not_kill():
    fn, cfg = cfg_of("void f(char *p){p = q; p[0] = 'x'; use(p);}")
    facts = extract_def_use(fn)
    sig, s1, s2, s3 = (st.id for st in fn.all_statements())
    edges = {(e.src, e.dst, e.variable) for e in compute_data_deps(cfg, facts)}
    assert (s1, s3, "p") in edges  # survives the element write
    assert (s2, s3, "p") in edges  # which also generates


def test_pdg_nodes_equal_cfg_nodes():
    model = parse_source("void f(int p){if (p) { a = p; } b = a;}")
    fn = model.functions[0]
    cfg = build_cfg(fn)
    pdg = build_pdg(fn, cfg)
    assert set(pdg.nodes) == set(cfg.nodes)


def test_call_graph_resolution_and_sites():
    model = parse_source(
        """
        void callee(int x) { use(x); }
        void caller(int v) { callee(v); callee(v + 1); missing(v); }
        """
    )
    graph = build_call_graph(model)
    resolved = [(s.callee_name, s.statement_id) for s in graph.edges]
    assert len(resolved) == 2 and {name for name, _ in resolved} == {"callee"}
    assert len({sid for _, sid in resolved}) == 2  # distinct call sites
    assert [s.callee_name for s in graph.unresolved] == ["use", "missing"]


def test_call_graph_value_consumed():
    model = parse_source(
        """
        int get(void) { return 4; }
        void a(void) { get(); }
        void b(void) { int v = get(); }
        void c(void) { if (get() > 1) { x = 1; } }
        """
    )
    graph = build_call_graph(model)
    consumed = {
        (s.caller_index, s.value_consumed) for s in graph.edges
    }
    assert (1, False) in consumed
    assert (2, True) in consumed
    assert (3, True) in consumed


def test_function_with_no_calls_has_no_edges():
    model = parse_source("void f(int v){v = v + 1;}")
    graph = build_call_graph(model)
    assert graph.edges == [] and graph.unresolved == []


def test_export_pdg_dot_lines():
    model = parse_source("void f(int p){if (p) { a = p; }}")
    fn = model.functions[0]
    pdg = build_pdg(fn)
    dot = export_pdg_dot(pdg)
    assert dot.startswith("digraph") and dot.endswith("}")
    assert "style=dashed" in dot  # control edge present
    assert "style=solid" in dot  # data edge present


# --------------------------------------------------------------------------
# randomized oracle comparisons (small scale; the acceptance suite scales up)
# --------------------------------------------------------------------------


def test_dependences_match_path_oracles_sampled():
    rng = np.random.default_rng(2024)
    for _ in range(40):
        source = random_structured_source(rng, max_nodes=6)
        model = parse_source(source)
        fn = model.functions[0]
        cfg = build_cfg(fn)
        facts = extract_def_use(fn)
        got_control = {(e.src, e.dst) for e in compute_control_deps(cfg)}
        want_control = oracle_control_deps(cfg)
        assert got_control == want_control, source
        got_data = {
            (e.src, e.dst, e.variable) for e in compute_data_deps(cfg, facts)
        }
        want_data = oracle_data_deps(cfg, facts)
        assert got_data == want_data, source
