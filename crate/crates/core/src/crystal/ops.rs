//! Raising and lowering operators on crystal elements.
//!
//! Each operator moves a unit between a fixed pattern of entries; the
//! pattern for nodes 1..6 is picked by a short chain of partial-sum
//! comparisons, and the pattern for node 0 by the fourteen-way condition
//! split. Lowering uses the same tables with every delta negated and every
//! comparison's strictness swapped.

use super::conditions::{select_condition, ConditionFamily};
use super::{CrystalElement, LevelSpec};
use crate::lattice::Node;

/// A single raising or lowering step, for word application.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordOp {
    /// The raising operator (kills highest-weight-direction strings).
    Raise,
    /// The lowering operator.
    Lower,
}

type Delta = (usize, usize, i64);

// Node-0 raising updates, one row per holding block. Lowering negates.
// Every row keeps all row sums and cross-row equalities invariant (the
// two sides of each equality change together); rows 1, 7 and 14 as
// commonly reproduced fail that test and are normalized here to the
// unique constraint-preserving entries, which also restores the
// epsilon-step axiom and the window-sum isomorphism.
const AFFINE_DELTAS: [&[Delta]; 14] = [
    &[
        (1, 1, -1), (1, 6, 1), (2, 2, -1), (2, 7, 1), (3, 6, -1), (3, 8, 1),
        (4, 7, -1), (4, 9, 1), (5, 8, -1), (5, 10, 1), (6, 9, -1), (6, 11, 1),
    ],
    &[
        (1, 1, -1), (1, 5, 1), (2, 2, -1), (2, 6, 1), (3, 5, -1), (3, 8, 1),
        (4, 6, -1), (4, 9, 1), (5, 8, -1), (5, 10, 1), (6, 9, -1), (6, 11, 1),
    ],
    &[
        (1, 1, -1), (1, 5, 1), (2, 2, -1), (2, 4, 1), (2, 5, -1), (2, 6, 1),
        (3, 4, -1), (3, 8, 1), (4, 6, -1), (4, 7, 1), (4, 8, -1), (4, 9, 1),
        (5, 7, -1), (5, 10, 1), (6, 9, -1), (6, 11, 1),
    ],
    &[
        (1, 1, -1), (1, 4, 1), (2, 2, -1), (2, 6, 1), (3, 4, -1), (3, 7, 1),
        (4, 6, -1), (4, 9, 1), (5, 7, -1), (5, 10, 1), (6, 9, -1), (6, 11, 1),
    ],
    &[
        (1, 1, -1), (1, 5, 1), (2, 2, -1), (2, 3, 1), (2, 5, -1), (2, 6, 1),
        (3, 3, -1), (3, 8, 1), (4, 6, -1), (4, 7, 1), (4, 8, -1), (4, 9, 1),
        (5, 7, -1), (5, 8, 1), (5, 9, -1), (5, 10, 1), (6, 8, -1), (6, 11, 1),
    ],
    &[
        (1, 1, -1), (1, 4, 1), (2, 2, -1), (2, 5, 1), (3, 4, -1), (3, 6, 1),
        (4, 5, -1), (4, 9, 1), (5, 6, -1), (5, 10, 1), (6, 9, -1), (6, 11, 1),
    ],
    &[
        (1, 1, -1), (1, 4, 1), (2, 2, -1), (2, 3, 1), (2, 4, -1), (2, 6, 1),
        (3, 3, -1), (3, 7, 1), (4, 6, -1), (4, 9, 1), (5, 7, -1), (5, 8, 1),
        (5, 9, -1), (5, 10, 1), (6, 8, -1), (6, 11, 1),
    ],
    &[
        (1, 1, -1), (1, 3, 1), (2, 2, -1), (2, 6, 1), (3, 3, -1), (3, 7, 1),
        (4, 6, -1), (4, 8, 1), (5, 7, -1), (5, 10, 1), (6, 8, -1), (6, 11, 1),
    ],
    &[
        (1, 1, -1), (1, 4, 1), (2, 2, -1), (2, 3, 1), (2, 4, -1), (2, 5, 1),
        (3, 3, -1), (3, 6, 1), (4, 5, -1), (4, 9, 1), (5, 6, -1), (5, 8, 1),
        (5, 9, -1), (5, 10, 1), (6, 8, -1), (6, 11, 1),
    ],
    &[
        (1, 1, -1), (1, 4, 1), (2, 2, -1), (2, 3, 1), (2, 4, -1), (2, 5, 1),
        (3, 3, -1), (3, 4, 1), (3, 5, -1), (3, 6, 1), (4, 4, -1), (4, 9, 1),
        (5, 6, -1), (5, 7, 1), (5, 9, -1), (5, 10, 1), (6, 7, -1), (6, 11, 1),
    ],
    &[
        (1, 1, -1), (1, 3, 1), (2, 2, -1), (2, 5, 1), (3, 3, -1), (3, 6, 1),
        (4, 5, -1), (4, 8, 1), (5, 6, -1), (5, 10, 1), (6, 8, -1), (6, 11, 1),
    ],
    &[
        (1, 1, -1), (1, 3, 1), (2, 2, -1), (2, 5, 1), (3, 3, -1), (3, 4, 1),
        (3, 5, -1), (3, 6, 1), (4, 4, -1), (4, 8, 1), (5, 6, -1), (5, 7, 1),
        (5, 8, -1), (5, 10, 1), (6, 7, -1), (6, 11, 1),
    ],
    &[
        (1, 1, -1), (1, 3, 1), (2, 2, -1), (2, 4, 1), (3, 3, -1), (3, 6, 1),
        (4, 4, -1), (4, 7, 1), (5, 6, -1), (5, 10, 1), (6, 7, -1), (6, 11, 1),
    ],
    &[
        (1, 1, -1), (1, 3, 1), (2, 2, -1), (2, 4, 1), (3, 3, -1), (3, 5, 1),
        (4, 4, -1), (4, 6, 1), (5, 5, -1), (5, 10, 1), (6, 6, -1), (6, 11, 1),
    ],
];

// Per-case raising updates for nodes 1..6.
const NODE1_DELTAS: [&[Delta]; 1] = [&[(1, 1, 1), (1, 2, -1), (6, 10, 1), (6, 11, -1)]];
const NODE2_DELTAS: [&[Delta]; 2] = [
    &[(1, 2, 1), (1, 3, -1), (5, 9, 1), (5, 10, -1)],
    &[(2, 2, 1), (2, 3, -1), (6, 9, 1), (6, 10, -1)],
];
const NODE3_DELTAS: [&[Delta]; 3] = [
    &[(1, 3, 1), (1, 4, -1), (4, 8, 1), (4, 9, -1)],
    &[(2, 3, 1), (2, 4, -1), (5, 8, 1), (5, 9, -1)],
    &[(3, 3, 1), (3, 4, -1), (6, 8, 1), (6, 9, -1)],
];
const NODE4_DELTAS: [&[Delta]; 4] = [
    &[(1, 4, 1), (1, 5, -1), (3, 7, 1), (3, 8, -1)],
    &[(2, 4, 1), (2, 5, -1), (4, 7, 1), (4, 8, -1)],
    &[(3, 4, 1), (3, 5, -1), (5, 7, 1), (5, 8, -1)],
    &[(4, 4, 1), (4, 5, -1), (6, 7, 1), (6, 8, -1)],
];
const NODE5_DELTAS: [&[Delta]; 2] = [
    &[(2, 5, 1), (2, 6, -1), (3, 6, 1), (3, 7, -1)],
    &[(4, 5, 1), (4, 6, -1), (5, 6, 1), (5, 7, -1)],
];
const NODE6_DELTAS: [&[Delta]; 3] = [
    &[(1, 5, 1), (1, 6, -1), (2, 6, 1), (2, 7, -1)],
    &[(3, 5, 1), (3, 6, -1), (4, 6, 1), (4, 7, -1)],
    &[(5, 5, 1), (5, 6, -1), (6, 6, 1), (6, 7, -1)],
];

/// Picks the case slice for node `k` in `1..=6`. Raising compares as
/// written; lowering swaps every comparison's strictness. The guards are
/// mutually exclusive and exhaustive; all of them are evaluated so a
/// transcription slip panics instead of applying a wrong row.
fn classical_case(b: &CrystalElement, k: usize, lowering: bool) -> &'static [Delta] {
    let g = |i, j| b.get(i, j);
    // "geq" and "less" as printed in the raising table; the lowering table
    // swaps weak and strict throughout.
    let geq = |a: i64, c: i64| if lowering { a > c } else { a >= c };
    let less = |a: i64, c: i64| if lowering { a <= c } else { a < c };
    let (table, cases): (&[&[Delta]], Vec<bool>) = match k {
        1 => (&NODE1_DELTAS, vec![true]),
        2 => (
            &NODE2_DELTAS,
            vec![geq(g(1, 2), g(2, 3)), less(g(1, 2), g(2, 3))],
        ),
        3 => (
            &NODE3_DELTAS,
            vec![
                geq(g(1, 3), g(2, 4)) && geq(g(1, 3) + g(2, 3), g(2, 4) + g(3, 4)),
                less(g(1, 3), g(2, 4)) && geq(g(2, 3), g(3, 4)),
                less(g(1, 3) + g(2, 3), g(2, 4) + g(3, 4)) && less(g(2, 3), g(3, 4)),
            ],
        ),
        4 => (
            &NODE4_DELTAS,
            vec![
                geq(g(1, 4), g(2, 5))
                    && geq(g(1, 4) + g(2, 4), g(2, 5) + g(3, 5))
                    && geq(g(1, 4) + g(2, 4) + g(3, 4), g(2, 5) + g(3, 5) + g(4, 5)),
                less(g(1, 4), g(2, 5))
                    && geq(g(2, 4), g(3, 5))
                    && geq(g(2, 4) + g(3, 4), g(3, 5) + g(4, 5)),
                less(g(1, 4) + g(2, 4), g(2, 5) + g(3, 5))
                    && less(g(2, 4), g(3, 5))
                    && geq(g(3, 4), g(4, 5)),
                less(g(1, 4) + g(2, 4) + g(3, 4), g(2, 5) + g(3, 5) + g(4, 5))
                    && less(g(2, 4) + g(3, 4), g(3, 5) + g(4, 5))
                    && less(g(3, 4), g(4, 5)),
            ],
        ),
        5 => (
            &NODE5_DELTAS,
            vec![
                geq(g(2, 5) + g(4, 4) + g(4, 5), g(3, 3) + g(3, 4)),
                less(g(2, 5) + g(4, 4) + g(4, 5), g(3, 3) + g(3, 4)),
            ],
        ),
        6 => (
            &NODE6_DELTAS,
            vec![
                geq(g(1, 5) + g(3, 3) + g(3, 4) + g(3, 5), g(2, 2) + g(2, 3) + g(2, 4))
                    && geq(
                        g(1, 5) + g(3, 3) + g(3, 4) + 2 * g(3, 5) + g(5, 5),
                        g(2, 2) + g(2, 3) + g(2, 4) + g(4, 4),
                    ),
                less(g(1, 5) + g(3, 3) + g(3, 4) + g(3, 5), g(2, 2) + g(2, 3) + g(2, 4))
                    && geq(g(3, 5) + g(5, 5), g(4, 4)),
                less(
                    g(1, 5) + g(3, 3) + g(3, 4) + 2 * g(3, 5) + g(5, 5),
                    g(2, 2) + g(2, 3) + g(2, 4) + g(4, 4),
                ) && less(g(3, 5) + g(5, 5), g(4, 4)),
            ],
        ),
        _ => unreachable!("node out of range"),
    };
    let hits: Vec<usize> = cases
        .iter()
        .enumerate()
        .filter_map(|(c, &ok)| ok.then_some(c))
        .collect();
    assert_eq!(hits.len(), 1, "node {k} case guards selected {hits:?}");
    table[hits[0]]
}

fn apply_deltas(b: &CrystalElement, deltas: &[Delta], sign: i64) -> CrystalElement {
    let mut out = *b;
    for &(i, j, d) in deltas {
        out.add_at(i, j, sign * d);
    }
    out
}

fn apply_signed(
    b: &CrystalElement,
    spec: LevelSpec,
    k: Node,
    lowering: bool,
) -> Option<CrystalElement> {
    let deltas = if k.index() == 0 {
        let family = if lowering { ConditionFamily::F } else { ConditionFamily::E };
        let j = select_condition(b, family)
            .unwrap_or_else(|fault| panic!("node 0 operator on {b}: {fault}"));
        AFFINE_DELTAS[j - 1]
    } else {
        classical_case(b, k.index(), lowering)
    };
    let sign = if lowering { -1 } else { 1 };
    let out = apply_deltas(b, deltas, sign);
    match spec {
        LevelSpec::Finite(_) => out.is_valid(spec).then_some(out),
        LevelSpec::Infinity => {
            debug_assert!(out.is_valid(spec), "limit crystal not closed at node {k}");
            Some(out)
        }
    }
}

/// The raising operator at node `k`; `None` encodes the killed element at
/// finite level. Total on the limit crystal.
///
/// Panics with a condition fault if the node-0 case split does not select
/// a unique block (a data-integrity signal, not an expected outcome).
pub fn apply_e(b: &CrystalElement, spec: LevelSpec, k: Node) -> Option<CrystalElement> {
    apply_signed(b, spec, k, false)
}

/// The lowering operator at node `k`; see [`apply_e`].
pub fn apply_f(b: &CrystalElement, spec: LevelSpec, k: Node) -> Option<CrystalElement> {
    apply_signed(b, spec, k, true)
}

/// Applies a word of operators left to right, stopping at the first kill.
pub fn apply_word(
    b: &CrystalElement,
    spec: LevelSpec,
    word: &[(WordOp, Node)],
) -> Option<CrystalElement> {
    let mut cur = *b;
    for &(op, k) in word {
        cur = cur.apply(spec, op, k)?;
    }
    Some(cur)
}
