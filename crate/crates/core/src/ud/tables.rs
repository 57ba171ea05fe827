//! Branch-table forms of the lowering operators, kept as cross-check
//! oracles for the generic one-parameter action at `c = -1`.

use crate::crystal::{holds_weak_strict, ConditionFault};

use super::{
    UdPoint, X1_1, X2_1, X2_2, X3_1, X3_2, X3_3, X4_1, X4_2, X4_3, X4_4, X5_1, X5_2, X6_1,
    X6_2, X6_3,
};

/// The fourteen base linear forms; term `i` is the max-plus image of the
/// i-th base monomial and the i-th max term of the node-0 string
/// statistic. Under the window-sum map each term equals the matching max
/// term of the element-side statistic; that correspondence fixes the
/// first component of term 5 to `x3_1` (the variant with `x3_3` breaks
/// it).
pub(crate) fn t_values(p: &UdPoint) -> [i64; 14] {
    let x = &p.x;
    [
        x[X6_1],
        x[X2_2] + x[X2_1] - x[X3_3] - x[X3_2] + x[X5_1],
        x[X2_2] - x[X3_3] + x[X3_1] - x[X4_2] + x[X5_1],
        x[X2_2] - x[X3_3] + x[X4_1],
        x[X3_2] + x[X3_1] - x[X4_3] - x[X4_2] + x[X5_1],
        x[X3_2] - x[X4_3] + x[X4_1],
        x[X4_2] + x[X4_1] - x[X6_2],
        x[X2_2] + x[X2_1] - x[X6_3],
        x[X2_2] + x[X2_1] + x[X6_2] - x[X4_4] - x[X4_3],
        x[X2_2] + x[X2_1] - x[X3_2] - x[X4_4] + x[X4_2],
        x[X2_2] + x[X2_1] - x[X3_3] - x[X3_2] + x[X4_3] + x[X4_2] - x[X5_2],
        x[X2_2] + x[X3_1] - x[X4_4],
        x[X2_2] - x[X3_3] + x[X3_1] + x[X4_3] - x[X5_2],
        x[X3_2] + x[X3_1] - x[X5_2],
    ]
}

/// Block `j` of the node-0 lowering split compares this base form (0-based
/// index into `t_values`) against the others.
const BLOCK_HEADS: [usize; 14] = [7, 8, 9, 10, 11, 1, 12, 13, 2, 3, 4, 5, 6, 0];

/// Evaluates the fourteen node-0 lowering blocks on a point and returns
/// the unique holding block (1-based). Shares the weak/strict comparison
/// matrix with the element-side lowering family; under the isomorphism
/// the heads correspond block by block.
pub fn select_f0_condition(p: &UdPoint) -> Result<usize, ConditionFault> {
    let t = t_values(p);
    let heads: [i64; 14] = std::array::from_fn(|j| t[BLOCK_HEADS[j]]);
    let holding: Vec<usize> = (0..14)
        .filter(|&j0| holds_weak_strict(&heads, j0, true))
        .map(|j0| j0 + 1)
        .collect();
    match holding.as_slice() {
        [j] => Ok(*j),
        _ => Err(ConditionFault { context: "node-0 lowering select on lattice points", holding }),
    }
}

/// Coordinates incremented by each node-0 lowering block.
const F0_INCREMENTS: [[usize; 9]; 14] = [
    [X6_3, X4_4, X3_3, X2_2, X5_2, X4_3, X3_2, X1_1, X2_1],
    [X4_4, X3_3, X2_2, X5_2, X4_3, X3_2, X6_2, X1_1, X2_1],
    [X4_4, X3_3, X2_2, X5_2, X3_2, X6_2, X4_2, X1_1, X2_1],
    [X3_3, X2_2, X5_2, X4_3, X3_2, X6_2, X4_2, X1_1, X2_1],
    [X4_4, X3_3, X2_2, X5_2, X6_2, X4_2, X1_1, X2_1, X3_1],
    [X3_3, X2_2, X4_3, X3_2, X6_2, X4_2, X5_1, X1_1, X2_1],
    [X3_3, X2_2, X5_2, X4_3, X6_2, X4_2, X1_1, X2_1, X3_1],
    [X2_2, X5_2, X4_3, X3_2, X6_2, X4_2, X1_1, X2_1, X3_1],
    [X3_3, X2_2, X4_3, X6_2, X4_2, X5_1, X1_1, X2_1, X3_1],
    [X3_3, X2_2, X4_3, X6_2, X5_1, X1_1, X2_1, X3_1, X4_1],
    [X2_2, X4_3, X3_2, X6_2, X4_2, X5_1, X1_1, X2_1, X3_1],
    [X2_2, X4_3, X3_2, X6_2, X5_1, X1_1, X2_1, X3_1, X4_1],
    [X2_2, X3_2, X6_2, X4_2, X5_1, X1_1, X2_1, X3_1, X4_1],
    [X2_2, X3_2, X4_2, X5_1, X1_1, X2_1, X3_1, X4_1, X6_1],
];

/// Node-0 lowering via the case table: selects the holding block and
/// applies its nine unit increments. Equal to the generic action at
/// `c = -1` pointwise.
pub fn f0_table(p: &UdPoint) -> Result<UdPoint, ConditionFault> {
    let j = select_f0_condition(p)?;
    let mut out = *p;
    for &slot in &F0_INCREMENTS[j - 1] {
        out.x[slot] += 1;
    }
    Ok(out)
}

/// Branch-table lowering at nodes 1..6, decrementing one coordinate per
/// case. The guards are evaluated exhaustively; exactly one must hold.
pub fn f_table(p: &UdPoint, k: crate::lattice::Node) -> UdPoint {
    let x = &p.x;
    let cases: Vec<(bool, usize)> = match k.index() {
        1 => vec![(true, X1_1)],
        2 => vec![
            (x[X2_2] + x[X2_1] > x[X1_1] + x[X3_2], X2_2),
            (x[X2_2] + x[X2_1] <= x[X1_1] + x[X3_2], X2_1),
        ],
        3 => vec![
            (
                x[X3_3] + x[X3_2] > x[X2_2] + x[X4_3]
                    && x[X3_3] + 2 * x[X3_2] + x[X3_1] > x[X2_2] + x[X2_1] + x[X4_3] + x[X4_2],
                X3_3,
            ),
            (
                x[X3_3] + x[X3_2] <= x[X2_2] + x[X4_3]
                    && x[X3_2] + x[X3_1] > x[X2_1] + x[X4_2],
                X3_2,
            ),
            (
                x[X3_2] + x[X3_1] <= x[X2_1] + x[X4_2]
                    && x[X3_3] + 2 * x[X3_2] + x[X3_1] <= x[X2_2] + x[X2_1] + x[X4_3] + x[X4_2],
                X3_1,
            ),
        ],
        4 => vec![
            (
                x[X4_4] + x[X4_3] > x[X3_3] + x[X5_2]
                    && x[X4_4] + 2 * x[X4_3] + x[X4_2] > x[X3_3] + x[X3_2] + x[X5_2] + x[X6_2]
                    && x[X4_4] + 2 * x[X4_3] + 2 * x[X4_2] + x[X4_1]
                        > x[X3_3] + x[X3_2] + x[X3_1] + x[X5_2] + x[X5_1] + x[X6_2],
                X4_4,
            ),
            (
                x[X4_4] + x[X4_3] <= x[X3_3] + x[X5_2]
                    && x[X4_3] + x[X4_2] > x[X3_2] + x[X6_2]
                    && x[X4_3] + 2 * x[X4_2] + x[X4_1]
                        > x[X3_2] + x[X3_1] + x[X5_1] + x[X6_2],
                X4_3,
            ),
            (
                x[X4_4] + 2 * x[X4_3] + x[X4_2] <= x[X3_3] + x[X3_2] + x[X5_2] + x[X6_2]
                    && x[X4_3] + x[X4_2] <= x[X3_2] + x[X6_2]
                    && x[X4_2] + x[X4_1] > x[X3_1] + x[X5_1],
                X4_2,
            ),
            (
                x[X4_2] + x[X4_1] <= x[X3_1] + x[X5_1]
                    && x[X4_3] + 2 * x[X4_2] + x[X4_1]
                        <= x[X3_2] + x[X3_1] + x[X5_1] + x[X6_2]
                    && x[X4_4] + 2 * x[X4_3] + 2 * x[X4_2] + x[X4_1]
                        <= x[X3_3] + x[X3_2] + x[X3_1] + x[X5_2] + x[X5_1] + x[X6_2],
                X4_1,
            ),
        ],
        5 => vec![
            (x[X5_2] + x[X5_1] > x[X4_3] + x[X4_2], X5_2),
            (x[X5_2] + x[X5_1] <= x[X4_3] + x[X4_2], X5_1),
        ],
        6 => vec![
            (
                x[X6_3] + x[X6_2] > x[X4_4] + x[X4_3]
                    && x[X6_3] + 2 * x[X6_2] + x[X6_1]
                        > x[X4_4] + x[X4_3] + x[X4_2] + x[X4_1],
                X6_3,
            ),
            (
                x[X6_3] + x[X6_2] <= x[X4_4] + x[X4_3]
                    && x[X6_2] + x[X6_1] > x[X4_2] + x[X4_1],
                X6_2,
            ),
            (
                x[X6_2] + x[X6_1] <= x[X4_2] + x[X4_1]
                    && x[X6_3] + 2 * x[X6_2] + x[X6_1]
                        <= x[X4_4] + x[X4_3] + x[X4_2] + x[X4_1],
                X6_1,
            ),
        ],
        other => panic!("branch-table lowering is defined for nodes 1..=6, got {other}"),
    };
    let hits: Vec<usize> = cases
        .iter()
        .filter_map(|&(ok, slot)| ok.then_some(slot))
        .collect();
    assert_eq!(hits.len(), 1, "node {k} lowering guards selected {hits:?}");
    let mut out = *p;
    out.x[hits[0]] -= 1;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Node;
    use crate::ud::{apply_ec, ud_apply_f};
    use proptest::prelude::*;

    fn n(k: usize) -> Node {
        Node::try_from(k).unwrap()
    }

    #[test]
    fn zero_point_selects_the_first_block() {
        assert_eq!(select_f0_condition(&UdPoint::ZERO), Ok(1));
        let got = f0_table(&UdPoint::ZERO).unwrap();
        let mut want = UdPoint::ZERO;
        for slot in [X6_3, X4_4, X3_3, X2_2, X5_2, X4_3, X3_2, X1_1, X2_1] {
            want.x[slot] = 1;
        }
        assert_eq!(got, want);
    }

    #[test]
    fn branch_tables_match_the_action_at_zero() {
        for k in 1..=6 {
            assert_eq!(f_table(&UdPoint::ZERO, n(k)), ud_apply_f(&UdPoint::ZERO, n(k)));
        }
        assert_eq!(f0_table(&UdPoint::ZERO).unwrap(), ud_apply_f(&UdPoint::ZERO, n(0)));
    }

    proptest! {
        /// Every branch table agrees with the generic action at c = -1.
        #[test]
        fn branch_tables_match_the_action(x in proptest::array::uniform15(-15i64..=15),
                                          k in 1usize..7) {
            let p = UdPoint::new(x);
            prop_assert_eq!(f_table(&p, n(k)), apply_ec(&p, n(k), -1));
        }

        #[test]
        fn f0_table_matches_the_action(x in proptest::array::uniform15(-15i64..=15)) {
            let p = UdPoint::new(x);
            prop_assert_eq!(f0_table(&p).unwrap(), apply_ec(&p, n(0), -1));
        }
    }
}
