//! Graphviz output for Hasse diagrams.

use std::fmt::Write;

use crate::heyting::FinitePoset;

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT digraph of the cover relation, drawn bottom-up. Nodes are emitted in
/// index order and edges in lexicographic `(lower, upper)` order, so the
/// output depends only on the poset.
pub fn emit_dot(poset: &FinitePoset, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for (i, label) in poset.labels().iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{}\"];", escape(label)).unwrap();
    }
    for (a, b) in poset.hasse_edges() {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heyting::HeytingAlgebra;

    #[test]
    fn chain_three() {
        let h = HeytingAlgebra::chain(3).unwrap();
        let dot = emit_dot(h.poset(), "chain3");
        assert_eq!(
            dot,
            "digraph \"chain3\" {\n  rankdir=BT;\n  n0 [label=\"0\"];\n  n1 [label=\"1/2\"];\n  \
             n2 [label=\"1\"];\n  n0 -> n1;\n  n1 -> n2;\n}\n"
        );
    }

    #[test]
    fn diamond_has_four_edges() {
        let d = HeytingAlgebra::downset_algebra(&FinitePoset::antichain(2)).unwrap();
        let dot = emit_dot(d.poset(), "diamond");
        assert_eq!(dot.matches("->").count(), 4);
        assert_eq!(dot, emit_dot(d.poset(), "diamond"));
    }
}
