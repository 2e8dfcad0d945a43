//! Tree rendering for the `tree` command: plain indented text or DOT.
//! Classes closed under leftmost-entry deletion get the straight
//! restricted tree; the pair {010, 102} gets its modified tree, where
//! edges may descend two levels at once and nodes containing the value 1
//! are annotated.

use std::collections::BTreeMap;

use clap::ValueEnum;

use invseq::enumerate::enumerate_avoiders;
use invseq::tree::{children, closure_predicted, modified_parent_010_102};
use invseq::{InversionSequence, Pattern};

use crate::CliError;

/// Rendering materializes every node; levels beyond this are refused.
pub const RENDER_N_MAX: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TreeFormat {
    Text,
    Dot,
}

/// child entries -> (child, edge jump), keyed under the parent's entries.
type EdgeMap = BTreeMap<Vec<usize>, Vec<(Vec<usize>, usize)>>;

fn literal(entries: &[usize]) -> String {
    if entries.is_empty() {
        "ε".to_owned()
    } else {
        entries
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("")
    }
}

fn standard_edges(patterns: &[Pattern], n_max: usize) -> EdgeMap {
    let mut edges = EdgeMap::new();
    let mut frontier = vec![InversionSequence::empty()];
    while let Some(sigma) = frontier.pop() {
        if sigma.len() == n_max {
            continue;
        }
        let kids = children(&sigma, patterns);
        let bucket = edges.entry(sigma.entries().to_vec()).or_default();
        for tau in kids {
            bucket.push((tau.entries().to_vec(), 1));
            frontier.push(tau);
        }
        bucket.sort();
    }
    edges
}

fn modified_edges(n_max: usize) -> Result<EdgeMap, CliError> {
    let class: Vec<Pattern> = ["010", "102"]
        .iter()
        .map(|w| w.parse().expect("valid pattern literal"))
        .collect();
    let mut edges = EdgeMap::new();
    for m in 1..=n_max {
        for tau in enumerate_avoiders(m, &class) {
            let (parent, jump) =
                modified_parent_010_102(&tau).map_err(|e| CliError::Failed(e.to_string()))?;
            edges
                .entry(parent.entries().to_vec())
                .or_default()
                .push((tau.entries().to_vec(), jump));
        }
    }
    for bucket in edges.values_mut() {
        bucket.sort();
    }
    Ok(edges)
}

fn render_text(edges: &EdgeMap, marked: bool) -> String {
    let mut out = String::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(entries) = stack.pop() {
        let mark = marked && entries.contains(&1);
        out.push_str(&"  ".repeat(entries.len()));
        out.push_str(&literal(&entries));
        if mark {
            out.push_str(" *");
        }
        out.push('\n');
        if let Some(bucket) = edges.get(&entries) {
            // Reverse so the stack pops children in sorted order.
            for (child, _) in bucket.iter().rev() {
                stack.push(child.clone());
            }
        }
    }
    if marked {
        out.push_str("\n(* = contains the value 1)\n");
    }
    out
}

fn render_dot(edges: &EdgeMap, marked: bool) -> String {
    let mut nodes: Vec<String> = Vec::new();
    let mut arrows: Vec<String> = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(entries) = stack.pop() {
        let name = literal(&entries);
        if marked && entries.contains(&1) {
            nodes.push(format!("  \"{name}\" [style=filled, fillcolor=lightgray];"));
        } else {
            nodes.push(format!("  \"{name}\";"));
        }
        if let Some(bucket) = edges.get(&entries) {
            for (child, jump) in bucket.iter().rev() {
                let child_name = literal(child);
                if *jump == 1 {
                    arrows.push(format!("  \"{name}\" -> \"{child_name}\";"));
                } else {
                    arrows.push(format!(
                        "  \"{name}\" -> \"{child_name}\" [label=\"{jump}\"];"
                    ));
                }
                stack.push(child.clone());
            }
        }
    }
    let mut out = String::from("digraph tree {\n  rankdir=TB;\n");
    for line in nodes.into_iter().chain(arrows) {
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

/// Renders the generating tree of the class through level `n_max`.
pub fn render_tree(
    patterns: &[Pattern],
    n_max: usize,
    format: TreeFormat,
) -> Result<String, CliError> {
    if n_max > RENDER_N_MAX {
        return Err(CliError::Usage(format!(
            "tree rendering materializes every node; --n is capped at {RENDER_N_MAX} (got {n_max})"
        )));
    }
    let mut sorted = patterns.to_vec();
    sorted.sort();
    let modified = sorted
        == vec![
            "010".parse::<Pattern>().expect("valid pattern literal"),
            "102".parse::<Pattern>().expect("valid pattern literal"),
        ];
    let edges = if modified {
        modified_edges(n_max)?
    } else if sorted.iter().all(closure_predicted) {
        standard_edges(&sorted, n_max)
    } else {
        return Err(CliError::Usage(
            "this class is not closed under leftmost-entry deletion, so it has no \
             restricted tree; the only jumping tree wired up is for 010,102"
                .into(),
        ));
    };
    Ok(match format {
        TreeFormat::Text => render_text(&edges, modified),
        TreeFormat::Dot => render_dot(&edges, modified),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unrestricted_text_tree_has_the_expected_third_level() {
        let text = render_tree(&[], 3, TreeFormat::Text).expect("renders");
        let nodes: Vec<&str> = text.lines().map(str::trim).collect();
        for expected in [
            "ε", "0", "00", "01", "000", "010", "001", "011", "002", "012",
        ] {
            assert!(nodes.contains(&expected), "missing {expected} in {nodes:?}");
        }
        assert_eq!(nodes.len(), 10, "exactly 1 + 1 + 2 + 6 nodes");
    }

    #[test]
    fn modified_tree_nodes_are_the_class_members() {
        let text = render_tree(
            &["010".parse().unwrap(), "102".parse().unwrap()],
            4,
            TreeFormat::Text,
        )
        .expect("renders");
        let mut rendered: Vec<String> = text
            .lines()
            .map(|l| l.trim().trim_end_matches(" *").to_owned())
            .filter(|l| !l.is_empty() && !l.starts_with('('))
            .collect();
        rendered.sort();
        let mut expected = vec!["ε".to_owned()];
        let class: Vec<Pattern> = vec!["010".parse().unwrap(), "102".parse().unwrap()];
        for m in 1..=4 {
            for sigma in enumerate_avoiders(m, &class) {
                expected.push(literal(sigma.entries()));
            }
        }
        expected.sort();
        assert_eq!(rendered, expected);
    }

    #[test]
    fn dot_output_is_syntactically_plausible() {
        let dot = render_tree(&[], 3, TreeFormat::Dot).expect("renders");
        assert!(dot.starts_with("digraph tree {"));
        assert!(dot.trim_end().ends_with('}'));
        assert_eq!(dot.matches('{').count(), 1);
        assert_eq!(dot.matches('}').count(), 1);
        assert_eq!(dot.matches(" -> ").count(), 9, "1 + 2 + 6 edges");
    }

    #[test]
    fn non_closed_classes_and_deep_trees_are_refused() {
        let open: Vec<Pattern> = vec!["000".parse().unwrap()];
        assert!(matches!(
            render_tree(&open, 3, TreeFormat::Text),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            render_tree(&[], 9, TreeFormat::Text),
            Err(CliError::Usage(_))
        ));
    }
}
