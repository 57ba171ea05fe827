//! Straight-line integer arithmetic for the one-parameter actions.
//!
//! This is the fast alternative to the compiled expression trees; the two
//! routes are held equal by the sampling suite, see the acceptance tests.

use super::exprs::masks;
use super::tables::t_values;
use super::{
    UdPoint, X1_1, X2_1, X2_2, X3_1, X3_2, X3_3, X4_1, X4_2, X4_3, X4_4, X5_1, X5_2, X6_1,
    X6_2, X6_3,
};

/// `max_i (t_i + c*[i in s])`.
fn shifted_max(t: &[i64; 14], s: u16, c: i64) -> i64 {
    (0..14)
        .map(|i| t[i] + if s & (1 << i) != 0 { c } else { 0 })
        .max()
        .unwrap()
}

/// The two-level max shared by the node-0 updates of `x4_2` and `x4_3`.
fn two_level_max(t: &[i64; 14], c: i64) -> i64 {
    let k = shifted_max(t, masks::EMPTY, c);
    (1..=14usize)
        .map(|j| {
            let inner = match j {
                1 | 7 => shifted_max(t, masks::INNER_WIDE, c),
                6 => shifted_max(t, masks::single(10), c),
                8 => shifted_max(t, masks::INNER_SEVEN, c),
                9 => shifted_max(t, masks::single(1), c),
                _ => k,
            };
            let shift = if j == 8 || j == 9 { 0 } else { c };
            shift + t[j - 1] + inner
        })
        .max()
        .unwrap()
}

/// Hand-inlined equivalent of [`super::apply_ec`].
pub fn apply_ec_inlined(p: &UdPoint, k: crate::lattice::Node, c: i64) -> UdPoint {
    let x = &p.x;
    let mut out = *p;
    match k.index() {
        0 => {
            let t = t_values(p);
            let big_k = shifted_max(&t, masks::EMPTY, c);
            let n = two_level_max(&t, c);
            let m3a = shifted_max(&t, masks::S3_FIRST, c);
            let m3b = shifted_max(&t, masks::S3_SECOND, c);
            let m4a = shifted_max(&t, masks::S4_FIRST, c);
            let m4top = shifted_max(&t, masks::S4_TOP, c);
            let m5 = shifted_max(&t, masks::S5_FIRST, c);
            let m6a = shifted_max(&t, masks::S6_FIRST, c);
            let m6b = shifted_max(&t, masks::S6_SECOND, c);
            out.x[X2_2] = x[X2_2] - c;
            out.x[X1_1] = x[X1_1] - c;
            out.x[X2_1] = x[X2_1] - c;
            out.x[X3_1] = x[X3_1] + big_k - m3a;
            out.x[X3_2] = -c + x[X3_2] + m3a - m3b;
            out.x[X3_3] = -c + x[X3_3] + m3b - big_k;
            out.x[X4_1] = x[X4_1] + big_k - m4a;
            out.x[X4_2] = x[X4_2] + big_k + m4a - n;
            out.x[X4_3] = -c + x[X4_3] + n - big_k - m4top;
            out.x[X4_4] = -c + x[X4_4] + m4top - big_k;
            out.x[X5_1] = x[X5_1] + big_k - m5;
            out.x[X5_2] = -c + x[X5_2] + m5 - big_k;
            out.x[X6_1] = x[X6_1] + big_k - m6a;
            out.x[X6_2] = x[X6_2] + m6a - m6b;
            out.x[X6_3] = -c + x[X6_3] + m6b - big_k;
        }
        1 => out.x[X1_1] = x[X1_1] + c,
        2 => {
            let p0 = x[X2_2] + x[X2_1];
            let q0 = x[X3_2] + x[X1_1];
            let step = (c + p0).max(q0) - p0.max(q0);
            out.x[X2_2] = x[X2_2] + step;
            out.x[X2_1] = x[X2_1] + c - step;
        }
        3 => {
            let p0 = x[X3_3] + 2 * x[X3_2] + x[X3_1];
            let q0 = x[X2_2] + x[X3_2] + x[X3_1] + x[X4_3];
            let r0 = x[X2_2] + x[X2_1] + x[X4_3] + x[X4_2];
            let first = (c + p0).max(q0).max(r0) - p0.max(q0).max(r0);
            let second = (c + p0).max(c + q0).max(r0) - (c + p0).max(q0).max(r0);
            out.x[X3_3] = x[X3_3] + first;
            out.x[X3_2] = x[X3_2] + second;
            out.x[X3_1] = x[X3_1] + c - first - second;
        }
        4 => {
            let p0 = x[X4_4] + 2 * x[X4_3] + 2 * x[X4_2] + x[X4_1];
            let q0 = x[X3_3] + x[X4_3] + 2 * x[X4_2] + x[X4_1] + x[X5_2];
            let r0 = x[X3_3] + x[X3_2] + x[X4_2] + x[X4_1] + x[X5_2] + x[X6_2];
            let s0 = x[X3_3] + x[X3_2] + x[X3_1] + x[X5_2] + x[X5_1] + x[X6_2];
            let first = (c + p0).max(q0).max(r0).max(s0) - p0.max(q0).max(r0).max(s0);
            let second =
                (c + p0).max(c + q0).max(r0).max(s0) - (c + p0).max(q0).max(r0).max(s0);
            let third = (c + p0).max(c + q0).max(c + r0).max(s0)
                - (c + p0).max(c + q0).max(r0).max(s0);
            out.x[X4_4] = x[X4_4] + first;
            out.x[X4_3] = x[X4_3] + second;
            out.x[X4_2] = x[X4_2] + third;
            out.x[X4_1] = x[X4_1] + c - first - second - third;
        }
        5 => {
            let p0 = x[X5_2] + x[X5_1];
            let q0 = x[X4_3] + x[X4_2];
            let step = (c + p0).max(q0) - p0.max(q0);
            out.x[X5_2] = x[X5_2] + step;
            out.x[X5_1] = x[X5_1] + c - step;
        }
        6 => {
            let p0 = x[X6_3] + 2 * x[X6_2] + x[X6_1];
            let q0 = x[X4_4] + x[X4_3] + x[X6_2] + x[X6_1];
            let r0 = x[X4_4] + x[X4_3] + x[X4_2] + x[X4_1];
            let first = (c + p0).max(q0).max(r0) - p0.max(q0).max(r0);
            let second = (c + p0).max(c + q0).max(r0) - (c + p0).max(q0).max(r0);
            out.x[X6_3] = x[X6_3] + first;
            out.x[X6_2] = x[X6_2] + second;
            out.x[X6_1] = x[X6_1] + c - first - second;
        }
        _ => unreachable!(),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Node;
    use crate::ud::apply_ec;
    use proptest::prelude::*;

    proptest! {
        /// Inlined arithmetic agrees with the compiled trees.
        #[test]
        fn inlined_matches_trees(x in proptest::array::uniform15(-25i64..=25),
                                 k in 0usize..7, c in -5i64..=5) {
            let p = UdPoint::new(x);
            let k = Node::try_from(k).unwrap();
            prop_assert_eq!(apply_ec_inlined(&p, k, c), apply_ec(&p, k, c));
        }
    }
}
