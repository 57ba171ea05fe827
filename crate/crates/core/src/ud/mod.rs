//! The ultra-discretized geometric crystal on the integer lattice of rank
//! 15, and its isomorphism with the limit crystal.
//!
//! Points carry fifteen coordinates in a frozen order. The
//! one-parameter actions at each node are piecewise-linear in the point
//! and the parameter `c`; they are encoded as max-plus expression trees
//! built from subtraction-free rational text, compiled once at startup.
//! A hand-inlined arithmetic route exists alongside and is held equal to
//! the trees by sampling. Specializing the parameter to +1 and -1 gives
//! the raising and lowering operators, which are total here.

mod exprs;
mod inline;
mod tables;

pub use exprs::update_rational_text;
pub use inline::apply_ec_inlined;
pub use tables::{f0_table, f_table, select_f0_condition};
pub(crate) use tables::t_values;

use std::fmt;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::crystal::CrystalElement;
use crate::lattice::Node;

/// Coordinate names in the frozen order.
pub const VAR_NAMES: [&str; 15] = [
    "x6_3", "x4_4", "x3_3", "x2_2", "x5_2", "x4_3", "x3_2", "x6_2", "x4_2", "x5_1", "x1_1",
    "x2_1", "x3_1", "x4_1", "x6_1",
];

// Slot indices into the frozen coordinate order.
pub const X6_3: usize = 0;
pub const X4_4: usize = 1;
pub const X3_3: usize = 2;
pub const X2_2: usize = 3;
pub const X5_2: usize = 4;
pub const X4_3: usize = 5;
pub const X3_2: usize = 6;
pub const X6_2: usize = 7;
pub const X4_2: usize = 8;
pub const X5_1: usize = 9;
pub const X1_1: usize = 10;
pub const X2_1: usize = 11;
pub const X3_1: usize = 12;
pub const X4_1: usize = 13;
pub const X6_1: usize = 14;

/// A point of the rank-15 lattice crystal.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct UdPoint {
    pub x: [i64; 15],
}

impl UdPoint {
    pub const ZERO: UdPoint = UdPoint { x: [0; 15] };

    pub fn new(x: [i64; 15]) -> UdPoint {
        UdPoint { x }
    }
}

impl fmt::Display for UdPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            serde_json::to_string(&self.x).expect("array serialization cannot fail")
        )
    }
}

/// The coefficient of Λ_k in the weight of `x`.
pub fn ud_weight(p: &UdPoint, k: Node) -> i64 {
    let x = &p.x;
    let row3 = x[X3_3] + x[X3_2] + x[X3_1];
    let row4 = x[X4_4] + x[X4_3] + x[X4_2] + x[X4_1];
    match k.index() {
        0 => -x[X2_2] - x[X2_1],
        1 => 2 * x[X1_1] - x[X2_2] - x[X2_1],
        2 => -x[X1_1] + 2 * (x[X2_2] + x[X2_1]) - row3,
        3 => -x[X2_2] - x[X2_1] + 2 * row3 - row4,
        4 => {
            -row3 + 2 * row4 - x[X5_2] - x[X5_1] - x[X6_3] - x[X6_2] - x[X6_1]
        }
        5 => -row4 + 2 * (x[X5_2] + x[X5_1]),
        6 => -row4 + 2 * (x[X6_3] + x[X6_2] + x[X6_1]),
        _ => unreachable!(),
    }
}

/// The string statistic `epsilon_k(x)`.
pub fn ud_epsilon(p: &UdPoint, k: Node) -> i64 {
    let x = &p.x;
    let max = |terms: &[i64]| terms.iter().copied().max().unwrap();
    match k.index() {
        0 => t_values(p).into_iter().max().unwrap(),
        1 => -x[X1_1] + x[X2_2],
        2 => max(&[
            -x[X2_2] + x[X3_3],
            x[X1_1] - 2 * x[X2_2] - x[X2_1] + x[X3_3] + x[X3_2],
        ]),
        3 => max(&[
            -x[X3_3] + x[X4_4],
            x[X2_2] - 2 * x[X3_3] - x[X3_2] + x[X4_4] + x[X4_3],
            x[X2_2] + x[X2_1] - 2 * x[X3_3] - 2 * x[X3_2] - x[X3_1]
                + x[X4_4]
                + x[X4_3]
                + x[X4_2],
        ]),
        4 => max(&[
            -x[X4_4] + x[X6_3],
            x[X3_3] - 2 * x[X4_4] - x[X4_3] + x[X5_2] + x[X6_3],
            x[X3_3] + x[X3_2] - 2 * x[X4_4] - 2 * x[X4_3] - x[X4_2]
                + x[X5_2]
                + x[X6_3]
                + x[X6_2],
            x[X3_3] + x[X3_2] + x[X3_1] - 2 * x[X4_4] - 2 * x[X4_3] - 2 * x[X4_2] - x[X4_1]
                + x[X5_2]
                + x[X5_1]
                + x[X6_3]
                + x[X6_2],
        ]),
        5 => max(&[
            x[X4_4] - x[X5_2],
            x[X4_4] + x[X4_3] + x[X4_2] - 2 * x[X5_2] - x[X5_1],
        ]),
        6 => max(&[
            -x[X6_3],
            x[X4_4] + x[X4_3] - 2 * x[X6_3] - x[X6_2],
            x[X4_4] + x[X4_3] + x[X4_2] + x[X4_1] - 2 * x[X6_3] - 2 * x[X6_2] - x[X6_1],
        ]),
        _ => unreachable!(),
    }
}

/// `phi_k = wt_k + epsilon_k`; no independent closed form exists here.
pub fn ud_phi(p: &UdPoint, k: Node) -> i64 {
    ud_weight(p, k) + ud_epsilon(p, k)
}

static TABLES: LazyLock<exprs::UpdateTables> = LazyLock::new(exprs::UpdateTables::build);

/// The one-parameter action at node `k` with parameter `c`, total on
/// points and integer parameters. `c = 0` is the identity and parameters
/// compose additively along the same node.
pub fn apply_ec(p: &UdPoint, k: Node, c: i64) -> UdPoint {
    let mut slots = [0i64; 16];
    slots[..15].copy_from_slice(&p.x);
    slots[15] = c;
    let mut out = *p;
    for (slot, expr) in &TABLES.updates[k.index()] {
        out.x[*slot] = expr.eval_slots(&slots);
    }
    out
}

/// The raising operator: the action at `c = 1`.
pub fn ud_apply_e(p: &UdPoint, k: Node) -> UdPoint {
    apply_ec(p, k, 1)
}

/// The lowering operator: the action at `c = -1`.
pub fn ud_apply_f(p: &UdPoint, k: Node) -> UdPoint {
    apply_ec(p, k, -1)
}

/// The isomorphism from the limit crystal: fifteen window sums of rows.
///
/// Panics if `b` is not a valid limit element.
pub fn omega(b: &CrystalElement) -> UdPoint {
    assert!(
        b.is_valid(crate::crystal::LevelSpec::Infinity),
        "omega needs a valid limit element, got {b}"
    );
    let g = |i, j| b.get(i, j);
    let mut x = [0i64; 15];
    x[X1_1] = g(1, 1);
    x[X2_1] = g(2, 2);
    x[X2_2] = g(1, 1) + g(1, 2);
    x[X3_1] = g(3, 3);
    x[X3_2] = g(2, 2) + g(2, 3);
    x[X3_3] = g(1, 1) + g(1, 2) + g(1, 3);
    x[X4_1] = g(4, 4);
    x[X4_2] = g(3, 3) + g(3, 4);
    x[X4_3] = g(2, 2) + g(2, 3) + g(2, 4);
    x[X4_4] = g(1, 1) + g(1, 2) + g(1, 3) + g(1, 4);
    x[X5_1] = g(4, 4) + g(4, 5);
    x[X5_2] = g(2, 2) + g(2, 3) + g(2, 4) + g(2, 5);
    x[X6_1] = g(5, 5);
    x[X6_2] = g(3, 3) + g(3, 4) + g(3, 5);
    x[X6_3] = g(1, 1) + g(1, 2) + g(1, 3) + g(1, 4) + g(1, 5);
    UdPoint { x }
}

/// The inverse isomorphism: consecutive window differences. Total, and
/// always lands in the limit crystal.
pub fn omega_inv(p: &UdPoint) -> CrystalElement {
    let x = &p.x;
    let b = CrystalElement::from_entries(&[
        (1, 1, x[X1_1]),
        (1, 2, x[X2_2] - x[X1_1]),
        (1, 3, x[X3_3] - x[X2_2]),
        (1, 4, x[X4_4] - x[X3_3]),
        (1, 5, x[X6_3] - x[X4_4]),
        (1, 6, -x[X6_3]),
        (2, 2, x[X2_1]),
        (2, 3, x[X3_2] - x[X2_1]),
        (2, 4, x[X4_3] - x[X3_2]),
        (2, 5, x[X5_2] - x[X4_3]),
        (2, 6, x[X6_3] - x[X5_2]),
        (2, 7, -x[X6_3]),
        (3, 3, x[X3_1]),
        (3, 4, x[X4_2] - x[X3_1]),
        (3, 5, x[X6_2] - x[X4_2]),
        (3, 6, x[X5_2] - x[X6_2]),
        (3, 7, x[X4_4] - x[X5_2]),
        (3, 8, -x[X4_4]),
        (4, 4, x[X4_1]),
        (4, 5, x[X5_1] - x[X4_1]),
        (4, 6, x[X6_2] - x[X5_1]),
        (4, 7, x[X4_3] - x[X6_2]),
        (4, 8, x[X3_3] - x[X4_3]),
        (4, 9, -x[X3_3]),
        (5, 5, x[X6_1]),
        (5, 6, x[X5_1] - x[X6_1]),
        (5, 7, x[X4_2] - x[X5_1]),
        (5, 8, x[X3_2] - x[X4_2]),
        (5, 9, x[X2_2] - x[X3_2]),
        (5, 10, -x[X2_2]),
        (6, 6, x[X6_1]),
        (6, 7, x[X4_1] - x[X6_1]),
        (6, 8, x[X3_1] - x[X4_1]),
        (6, 9, x[X2_1] - x[X3_1]),
        (6, 10, x[X1_1] - x[X2_1]),
        (6, 11, -x[X1_1]),
    ]);
    debug_assert!(b.is_valid(crate::crystal::LevelSpec::Infinity));
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::{apply_f, CrystalElement, LevelSpec};
    use proptest::prelude::*;

    fn n(k: usize) -> Node {
        Node::try_from(k).unwrap()
    }

    fn point_with(slot: usize, v: i64) -> UdPoint {
        let mut p = UdPoint::ZERO;
        p.x[slot] = v;
        p
    }

    #[test]
    fn weights_and_epsilons_at_simple_points() {
        for k in Node::ALL {
            assert_eq!(ud_weight(&UdPoint::ZERO, k), 0);
            assert_eq!(ud_epsilon(&UdPoint::ZERO, k), 0);
        }
        let p = point_with(X1_1, -1);
        assert_eq!(ud_weight(&p, n(1)), -2);
        assert_eq!(ud_weight(&p, n(0)), 0);
        let q = point_with(X6_3, 2);
        assert_eq!(ud_epsilon(&q, n(6)), -2);
    }

    #[test]
    fn action_at_simple_nodes() {
        let p = apply_ec(&UdPoint::ZERO, n(1), 3);
        assert_eq!(p, point_with(X1_1, 3));

        let p = apply_ec(&UdPoint::ZERO, n(2), 1);
        let mut want = UdPoint::ZERO;
        want.x[X2_2] = 1;
        assert_eq!(p, want);
    }

    #[test]
    fn lowering_at_zero_takes_the_expected_branches() {
        let f2 = ud_apply_f(&UdPoint::ZERO, n(2));
        assert_eq!(f2, point_with(X2_1, -1));
        let f5 = ud_apply_f(&UdPoint::ZERO, n(5));
        assert_eq!(f5, point_with(X5_1, -1));
        let e1f1 = ud_apply_f(&ud_apply_e(&UdPoint::ZERO, n(1)), n(1));
        assert_eq!(e1f1, UdPoint::ZERO);
    }

    #[test]
    fn zero_parameter_is_identity_everywhere_near_zero() {
        for k in Node::ALL {
            assert_eq!(apply_ec(&UdPoint::ZERO, k, 0), UdPoint::ZERO);
            let p = ud_apply_f(&UdPoint::ZERO, k);
            assert_eq!(apply_ec(&p, k, 0), p);
        }
    }

    #[test]
    fn omega_on_single_lowering_steps() {
        assert_eq!(omega(&CrystalElement::ZERO), UdPoint::ZERO);
        let b = apply_f(&CrystalElement::ZERO, LevelSpec::Infinity, n(1)).unwrap();
        assert_eq!(omega(&b), point_with(X1_1, -1));

        let b0 = apply_f(&CrystalElement::ZERO, LevelSpec::Infinity, n(0)).unwrap();
        let mut want = UdPoint::ZERO;
        for slot in [X6_3, X4_4, X3_3, X2_2, X5_2, X4_3, X3_2, X1_1, X2_1] {
            want.x[slot] = 1;
        }
        assert_eq!(omega(&b0), want);
    }

    #[test]
    fn omega_inverse_on_single_steps() {
        let b = apply_f(&CrystalElement::ZERO, LevelSpec::Infinity, n(1)).unwrap();
        assert_eq!(omega_inv(&point_with(X1_1, -1)), b);
        assert_eq!(omega_inv(&UdPoint::ZERO), CrystalElement::ZERO);
    }

    proptest! {
        /// omega_inv always lands in the limit crystal and round-trips.
        #[test]
        fn omega_round_trips(x in proptest::array::uniform15(-10i64..=10)) {
            let p = UdPoint::new(x);
            let b = omega_inv(&p);
            prop_assert!(b.is_valid(LevelSpec::Infinity));
            prop_assert_eq!(omega(&b), p);
        }

        /// Parameters compose additively at every node.
        #[test]
        fn one_parameter_composition(x in proptest::array::uniform15(-20i64..=20),
                                     k in 0usize..7, c1 in -6i64..=6, c2 in -6i64..=6) {
            let p = UdPoint::new(x);
            let k = n(k);
            let two = apply_ec(&apply_ec(&p, k, c2), k, c1);
            prop_assert_eq!(two, apply_ec(&p, k, c1 + c2));
        }
    }
}
