//! Enumeration of finite crystals, operator balls, and graph export.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::crystal::{apply_e, apply_f, CrystalElement, LevelSpec};
use crate::lattice::Node;

/// All elements of the level-`l` crystal, in canonical order.
///
/// Two independent routes are run and compared: row-by-row backtracking
/// over the constraint system, and breadth-first closure under the
/// classical operators from the diagonal highest-weight element. A
/// disagreement panics; it would mean a broken operator table or
/// constraint set.
pub fn enumerate_level(l: i64) -> Vec<CrystalElement> {
    assert!(l >= 0);
    let by_constraints = enumerate_by_backtracking(l);
    let by_closure = enumerate_by_closure(l);
    assert_eq!(
        by_constraints, by_closure,
        "constraint enumeration and operator closure disagree at level {l}"
    );
    by_constraints
}

/// Compositions of `l` into six nonnegative parts.
fn row_choices(l: i64) -> Vec<[i64; 6]> {
    let mut out = Vec::new();
    let mut row = [0i64; 6];
    fn rec(l: i64, pos: usize, row: &mut [i64; 6], out: &mut Vec<[i64; 6]>) {
        if pos == 5 {
            row[5] = l;
            out.push(*row);
            return;
        }
        for v in 0..=l {
            row[pos] = v;
            rec(l - v, pos + 1, row, out);
        }
    }
    rec(l, 0, &mut row, &mut out);
    out
}

/// Checks all constraints that mention only rows `1..=filled`.
fn rows_consistent(b: &CrystalElement, filled: usize) -> bool {
    for i in 1..filled {
        let t = filled - i;
        if b.span(i, i, 6 - t) != b.span(filled, filled, 5 + t) {
            return false;
        }
    }
    if filled >= 2 {
        let i = filled - 1;
        for t in i..=5 {
            if b.span(i, i, t) < b.span(i + 1, i + 1, t + 1) {
                return false;
            }
        }
    }
    true
}

pub(crate) fn enumerate_by_backtracking(l: i64) -> Vec<CrystalElement> {
    let choices = row_choices(l);
    let mut out = Vec::new();
    let mut b = CrystalElement::ZERO;
    fn rec(
        b: &mut CrystalElement,
        row: usize,
        choices: &[[i64; 6]],
        out: &mut Vec<CrystalElement>,
    ) {
        if row > 6 {
            out.push(*b);
            return;
        }
        for choice in choices {
            for (offset, v) in choice.iter().enumerate() {
                b.set(row, row + offset, *v);
            }
            if rows_consistent(b, row) {
                rec(b, row + 1, choices, out);
            }
        }
        for offset in 0..6 {
            b.set(row, row + offset, 0);
        }
    }
    rec(&mut b, 1, &choices, &mut out);
    out.sort();
    out
}

pub(crate) fn enumerate_by_closure(l: i64) -> Vec<CrystalElement> {
    let spec = LevelSpec::Finite(l);
    let seed = CrystalElement::diagonal(l);
    debug_assert!(seed.is_valid(spec));
    // Classical nodes suffice for connectivity; node 0 maps the crystal
    // into itself, so including it could only mask a bug, and any gap it
    // left would surface as a route disagreement.
    let classical: Vec<Node> = (1..=6).map(|k| Node::try_from(k).unwrap()).collect();
    let mut seen = BTreeSet::from([seed]);
    let mut queue = VecDeque::from([seed]);
    while let Some(b) = queue.pop_front() {
        for &k in &classical {
            for next in [apply_e(&b, spec, k), apply_f(&b, spec, k)].into_iter().flatten() {
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Closure of `start` under at most `radius` operator applications over
/// all seven nodes, both directions, dropping killed results.
pub fn ball(start: &CrystalElement, spec: LevelSpec, radius: usize) -> Vec<CrystalElement> {
    assert!(start.is_valid(spec), "ball seed fails validation");
    let mut seen = BTreeSet::from([*start]);
    let mut frontier = vec![*start];
    for _ in 0..radius {
        let mut next = Vec::new();
        for b in &frontier {
            for k in Node::ALL {
                for img in [apply_e(b, spec, k), apply_f(b, spec, k)].into_iter().flatten() {
                    if seen.insert(img) {
                        next.push(img);
                    }
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

/// A lowering-edge graph over a fixed vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalGraph {
    /// Vertices in canonical order.
    pub vertices: Vec<CrystalElement>,
    /// Edges `(source index, node, target index)`: the lowering operator
    /// at `node` sends the source to the target.
    pub edges: Vec<(usize, u8, usize)>,
}

impl CrystalGraph {
    /// Builds the graph induced on `vertices` by the lowering operators at
    /// all seven nodes.
    pub fn build(vertices: &[CrystalElement], spec: LevelSpec) -> CrystalGraph {
        let mut sorted: Vec<CrystalElement> = vertices.to_vec();
        sorted.sort();
        sorted.dedup();
        let index_of = |b: &CrystalElement| sorted.binary_search(b).ok();
        let mut edges = Vec::new();
        for (s, b) in sorted.iter().enumerate() {
            for k in Node::ALL {
                if let Some(img) = apply_f(b, spec, k) {
                    if let Some(t) = index_of(&img) {
                        edges.push((s, k.index() as u8, t));
                    }
                }
            }
        }
        edges.sort();
        CrystalGraph { vertices: sorted, edges }
    }
}

/// Edge colors per node, in node order.
const EDGE_COLORS: [&str; 7] = [
    "black", "red", "blue", "green3", "orange", "purple", "brown",
];

/// Renders the graph as a DOT digraph. Output is deterministic: vertices
/// and edges appear in canonical order, labels are the canonical JSON of
/// the element rows.
pub fn export_dot(g: &CrystalGraph) -> String {
    if g.vertices.is_empty() {
        return "digraph crystal { }".to_owned();
    }
    let mut out = String::from("digraph crystal {\n");
    for (idx, v) in g.vertices.iter().enumerate() {
        let label = v.to_string().replace('"', "\\\"");
        writeln!(out, "  n{idx} [label=\"{label}\"];").unwrap();
    }
    for (s, k, t) in &g.edges {
        writeln!(
            out,
            "  n{s} -> n{t} [label=\"{k}\", color=\"{}\"];",
            EDGE_COLORS[*k as usize]
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_zero_is_a_point() {
        assert_eq!(enumerate_level(0), vec![CrystalElement::ZERO]);
    }

    #[test]
    fn level_one_has_thirty_two_elements() {
        let all = enumerate_level(1);
        assert_eq!(all.len(), 32);
        let spec = LevelSpec::Finite(1);
        assert!(all.iter().all(|b| b.is_valid(spec)));
        // The diagonal is the unique classical highest-weight element.
        let highest: Vec<&CrystalElement> = all
            .iter()
            .filter(|b| {
                (1..=6).all(|k| {
                    crate::crystal::epsilon(b, spec, Node::try_from(k).unwrap()) == 0
                })
            })
            .collect();
        assert_eq!(highest, vec![&CrystalElement::diagonal(1)]);
    }

    #[test]
    fn balls_grow_monotonically() {
        let spec = LevelSpec::Infinity;
        assert_eq!(ball(&CrystalElement::ZERO, spec, 0), vec![CrystalElement::ZERO]);
        let b1 = ball(&CrystalElement::ZERO, spec, 1);
        // All fourteen operators act and produce distinct elements here.
        assert_eq!(b1.len(), 15);
        let b2 = ball(&CrystalElement::ZERO, spec, 2);
        assert!(b1.iter().all(|b| b2.binary_search(b).is_ok()));
        assert!(b2.iter().all(|b| b.is_valid(spec)));
    }

    #[test]
    fn dot_output_shapes() {
        let empty = CrystalGraph { vertices: vec![], edges: vec![] };
        assert_eq!(export_dot(&empty), "digraph crystal { }");

        let single = CrystalGraph::build(&[CrystalElement::ZERO], LevelSpec::Finite(0));
        let dot = export_dot(&single);
        assert!(dot.starts_with("digraph crystal {\n"));
        assert!(dot.contains("n0 [label="));

        let level1 = enumerate_level(1);
        let g = CrystalGraph::build(&level1, LevelSpec::Finite(1));
        assert_eq!(g.vertices.len(), 32);
        // Deterministic output, byte for byte.
        assert_eq!(export_dot(&g), export_dot(&g));
    }

    #[test]
    fn graph_edges_are_lowering_images() {
        let level1 = enumerate_level(1);
        let spec = LevelSpec::Finite(1);
        let g = CrystalGraph::build(&level1, spec);
        for &(s, k, t) in &g.edges {
            let img = apply_f(&g.vertices[s], spec, Node::try_from(k as usize).unwrap());
            assert_eq!(img, Some(g.vertices[t]));
        }
    }
}
