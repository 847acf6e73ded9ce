//! Graphviz renderings. Output is byte-deterministic.

use std::fmt::Write;

use crate::consistency::actual_precedence;
use crate::extensive::{ExtensiveFormGame, NodeRef};
use crate::game::SpacetimeGame;
use crate::precedence::PrecedenceRelation;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn dag(g: &SpacetimeGame, name: &str, rel: &PrecedenceRelation) -> String {
    let reduced = rel.transitive_reduction().expect("precedence is acyclic");
    let mut out = format!("digraph {name} {{\n  rankdir=BT;\n");
    for id in g.canonical_order() {
        let p = g.point(&id).expect("canonical order lists points");
        let actions: Vec<&str> = p.actions.iter().map(|a| a.as_str()).collect();
        let label = format!("{id}\\n{{{}}}", actions.join(","));
        writeln!(out, "  {} [label=\"{label}\"];", quote(&id.to_string())).unwrap();
    }
    for (a, b) in reduced.pairs() {
        writeln!(out, "  {} -> {};", quote(&a.to_string()), quote(&b.to_string())).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Transitive reduction of timelike precedence.
pub fn precedence_dot(g: &SpacetimeGame) -> String {
    dag(g, "precedence", g.precedence())
}

/// Transitive reduction of actual precedence.
pub fn actual_precedence_dot(g: &SpacetimeGame) -> String {
    dag(g, "actual_precedence", &actual_precedence(g))
}

fn values(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// The game tree. Edges carry actions, leaves carry payoff vectors, and
/// information sets are dashed clusters.
pub fn tree_dot(e: &ExtensiveFormGame) -> String {
    let id = |r: NodeRef| match r {
        NodeRef::Choice(i) => format!("n{i}"),
        NodeRef::Outcome(i) => format!("z{i}"),
    };
    let mut out = String::from("digraph tree {\n  node [shape=circle];\n");
    for (k, s) in e.info_sets.iter().enumerate() {
        writeln!(out, "  subgraph cluster_{k} {{").unwrap();
        writeln!(out, "    label={};\n    style=dashed;\n    rank=same;", quote(&s.label)).unwrap();
        for &n in &s.nodes {
            writeln!(out, "    n{n} [label={}];", quote(e.nodes[n].player.as_str())).unwrap();
        }
        out.push_str("  }\n");
    }
    for (i, o) in e.outcomes.iter().enumerate() {
        writeln!(out, "  z{i} [shape=box, label={}];", quote(&values(&o.payoffs))).unwrap();
    }
    for (i, n) in e.nodes.iter().enumerate() {
        for (a, t) in &n.successors {
            writeln!(out, "  n{i} -> {} [label={}];", id(*t), quote(a.as_str())).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
