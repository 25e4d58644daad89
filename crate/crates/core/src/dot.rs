//! Graphviz rendering of configurations and runs.

use std::fmt::Write;

use crate::automaton::Automaton;
use crate::config::{Configuration, Label};
use crate::search::RunStep;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Already escaped for a quoted DOT label.
fn node_label(aut: &Automaton, label: &Label, memory: &[u32]) -> String {
    let states = escape(&match label {
        Label::Bag(b) => aut.bag_text(b),
        Label::State(s) => aut.states[*s].name.clone(),
    });
    if memory.is_empty() {
        states
    } else {
        let cells: Vec<String> = memory.iter().map(u32::to_string).collect();
        format!("{states}\\n[{}]", cells.join(","))
    }
}

/// Emits the nodes and edges of `c`, prefixing node ids with `prefix`.
fn body(out: &mut String, aut: &Automaton, c: &Configuration, prefix: &str, indent: &str) {
    if c.nodes.is_empty() {
        let mark = if c.seen.is_empty() { "initial" } else { "empty" };
        let _ = writeln!(out, "{indent}{prefix}none [shape=plaintext, label=\"{mark}\"];");
        return;
    }
    for n in c.nodes.values() {
        let shape = if n.value.level % 2 == 0 { "box" } else { "ellipse" };
        let label = node_label(aut, &n.label, &n.memory);
        let _ = writeln!(
            out,
            "{indent}{prefix}d{} [shape={shape}, label=\"d{}: {label}\"];",
            n.value.id, n.value.id
        );
    }
    for n in c.nodes.values() {
        if let Some(p) = n.value.parent {
            let _ = writeln!(out, "{indent}{prefix}d{p} -> {prefix}d{};", n.value.id);
        }
    }
}

/// One configuration as a standalone digraph.
pub fn config_to_dot(aut: &Automaton, c: &Configuration) -> String {
    let mut out = String::from("digraph configuration {\n");
    body(&mut out, aut, c, "", "  ");
    out.push_str("}\n");
    out
}

/// A run as one digraph with a cluster per step, captioned by the transition taken.
pub fn run_to_dot(aut: &Automaton, steps: &[RunStep]) -> String {
    let mut out = String::from("digraph run {\n  rankdir=TB;\n");
    for (i, step) in steps.iter().enumerate() {
        let caption = match &step.instance {
            None => "start".to_string(),
            Some(inst) => format!("{} @ d{}", aut.rule_text(inst.rule), inst.datum.id),
        };
        let _ = writeln!(out, "  subgraph cluster_{i} {{");
        let _ = writeln!(out, "    label=\"{i}: {}\";", escape(&caption));
        body(&mut out, aut, &step.config, &format!("s{i}_"), "    ");
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::handbuilt::race_automaton;
    use crate::search::witness_run;

    #[test]
    fn empty_configuration_renders_a_placeholder() {
        let a = race_automaton(1);
        let d = config_to_dot(&a, &Configuration::empty());
        assert!(d.starts_with("digraph configuration {"));
        assert!(d.contains("label=\"initial\""));
    }

    #[test]
    fn run_has_one_cluster_per_step_and_shows_memory() {
        let a = race_automaton(1);
        let w = "(q,0) (run^{f},1<0) (run^{f.1},2<1) (done^{f.1},2) (run^{c},4<0) (done^{c},4) (done^{f},1) (1,0)";
        let steps = witness_run(&a, &w.parse().unwrap()).unwrap();
        let d = run_to_dot(&a, &steps);
        assert_eq!(d.matches("subgraph cluster_").count(), steps.len());
        assert!(d.contains("[1]"));
        assert!(d.contains("s0_none"));
        assert!(d.contains(&format!("s{}_none", steps.len() - 1)));
        assert!(d.contains("s1_d0 [shape=box, label=\"d0: {l1, r1}\\n[0]\"]"));
    }
}
