//! The one-parameter node actions as subtraction-free rational text,
//! tropicalized and compiled at startup.
//!
//! Everything is assembled from fourteen base monomials: the max-plus
//! images of the monomials are exactly the fourteen max terms of the
//! node-0 string statistic. A "shifted sum" `m(S)` multiplies the
//! monomials indexed by `S` by the parameter `c` and adds; tropically this
//! is the max of the base terms with `+c` on the selected ones. The node-0
//! update of each coordinate is a ratio of such sums (with one extra
//! two-level sum `n()` shared by two coordinates), and the updates at
//! nodes 1..6 are ratios of parameter-shifted sums of three to four
//! monomials.

use crate::trop::{parse_rational, tropicalize, BoundExpr};

use super::VAR_NAMES;

/// Base monomials; the i-th tropicalizes to the i-th max term of the
/// node-0 string statistic.
const T_MONOMIALS: [&str; 14] = [
    "x6_1",
    "x2_2*x2_1*x5_1/(x3_3*x3_2)",
    "x2_2*x3_1*x5_1/(x3_3*x4_2)",
    "x2_2*x4_1/x3_3",
    "x3_2*x3_1*x5_1/(x4_3*x4_2)",
    "x3_2*x4_1/x4_3",
    "x4_2*x4_1/x6_2",
    "x2_2*x2_1/x6_3",
    "x2_2*x2_1*x6_2/(x4_4*x4_3)",
    "x2_2*x2_1*x4_2/(x3_2*x4_4)",
    "x2_2*x2_1*x4_3*x4_2/(x3_3*x3_2*x5_2)",
    "x2_2*x3_1/x4_4",
    "x2_2*x3_1*x4_3/(x3_3*x5_2)",
    "x3_2*x3_1/x5_2",
];

const fn mask(ts: &[usize]) -> u16 {
    let mut m = 0u16;
    let mut i = 0;
    while i < ts.len() {
        m |= 1 << (ts[i] - 1);
        i += 1;
    }
    m
}

pub(crate) const EMPTY: u16 = mask(&[]);
// Which monomials gain a factor `c` in each coordinate's denominator or
// numerator sum at node 0. The second x3-family set shifts none of the
// terms that contain `x2_1`; shifting them breaks the one-parameter
// composition law and the correspondence with the element-side operator.
pub(crate) const S3_FIRST: u16 = mask(&[1, 3, 4, 5, 6, 7, 12, 13, 14]);
pub(crate) const S3_SECOND: u16 = mask(&[1, 5, 6, 7, 14]);
pub(crate) const S4_FIRST: u16 = mask(&[1, 4, 6, 7]);
pub(crate) const S4_TOP: u16 = mask(&[1, 2, 3, 4, 5, 6, 7, 11, 13, 14]);
pub(crate) const S5_FIRST: u16 = mask(&[1, 2, 3, 4, 5, 6, 7]);
pub(crate) const S6_FIRST: u16 = mask(&[1]);
pub(crate) const S6_SECOND: u16 = mask(&[1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 12, 13, 14]);
// Inner shift set appearing twice in the two-level sum.
pub(crate) const INNER_WIDE: u16 = mask(&[1, 2, 3, 4, 5, 6, 7, 10, 11, 12, 13, 14]);

/// `sum_i c^[i in S] * t_i` as rational text.
fn shifted_sum(s: u16) -> String {
    let terms: Vec<String> = (0..14)
        .map(|i| {
            if s & (1 << i) != 0 {
                format!("c*{}", T_MONOMIALS[i])
            } else {
                T_MONOMIALS[i].to_owned()
            }
        })
        .collect();
    terms.join(" + ")
}

/// The two-level sum shared by the two middle node-0 coordinates of the
/// fourth family: entry `j` is `c^w_j * t_j * (inner_j)` where the inner
/// factor is a plain or shifted sum.
fn two_level_sum() -> String {
    let inner = |j: usize| -> String {
        match j {
            1 | 7 => shifted_sum(INNER_WIDE),
            6 => shifted_sum(mask(&[10])),
            8 => shifted_sum(mask(&[1, 7])),
            9 => shifted_sum(mask(&[1])),
            _ => shifted_sum(EMPTY),
        }
    };
    let entries: Vec<String> = (1..=14)
        .map(|j| {
            let c = if j == 8 || j == 9 { "" } else { "c*" };
            format!("{c}{}*({})", T_MONOMIALS[j - 1], inner(j))
        })
        .collect();
    entries.join(" + ")
}

/// The new value of coordinate `slot` under the node-`k` action, as
/// rational text in the fifteen coordinates and `c`. Panics if the node
/// does not move that coordinate.
pub fn update_rational_text(k: usize, slot: usize) -> String {
    update_texts(k)
        .into_iter()
        .find(|(s, _)| *s == slot)
        .map(|(_, text)| text)
        .unwrap_or_else(|| panic!("node {k} does not move slot {slot}"))
}

fn update_texts(k: usize) -> Vec<(usize, String)> {
    use super::{
        X1_1, X2_1, X2_2, X3_1, X3_2, X3_3, X4_1, X4_2, X4_3, X4_4, X5_1, X5_2, X6_1, X6_2,
        X6_3,
    };
    match k {
        0 => {
            let base = shifted_sum(EMPTY);
            let n = two_level_sum();
            let m3a = shifted_sum(S3_FIRST);
            let m3b = shifted_sum(S3_SECOND);
            let m4a = shifted_sum(S4_FIRST);
            let m4top = shifted_sum(S4_TOP);
            let m5 = shifted_sum(S5_FIRST);
            let m6a = shifted_sum(S6_FIRST);
            let m6b = shifted_sum(S6_SECOND);
            vec![
                (X2_2, "x2_2/c".to_owned()),
                (X1_1, "x1_1/c".to_owned()),
                (X2_1, "x2_1/c".to_owned()),
                (X3_1, format!("x3_1*({base})/({m3a})")),
                (X3_2, format!("x3_2*({m3a})/(c*({m3b}))")),
                (X3_3, format!("x3_3*({m3b})/(c*({base}))")),
                (X4_1, format!("x4_1*({base})/({m4a})")),
                (X4_2, format!("x4_2*({base})*({m4a})/({n})")),
                (X4_3, format!("x4_3*({n})/(c*({base})*({m4top}))")),
                (X4_4, format!("x4_4*({m4top})/(c*({base}))")),
                (X5_1, format!("x5_1*({base})/({m5})")),
                (X5_2, format!("x5_2*({m5})/(c*({base}))")),
                (X6_1, format!("x6_1*({base})/({m6a})")),
                (X6_2, format!("x6_2*({m6a})/({m6b})")),
                (X6_3, format!("x6_3*({m6b})/(c*({base}))")),
            ]
        }
        1 => vec![(X1_1, "x1_1*c".to_owned())],
        2 => {
            let p = "x2_2*x2_1";
            let q = "x3_2*x1_1";
            vec![
                (X2_2, format!("x2_2*(c*{p} + {q})/({p} + {q})")),
                (X2_1, format!("x2_1*c*({p} + {q})/(c*{p} + {q})")),
            ]
        }
        3 => {
            let p = "x3_3*x3_2*x3_2*x3_1";
            let q = "x2_2*x3_2*x3_1*x4_3";
            let r = "x2_2*x2_1*x4_3*x4_2";
            vec![
                (X3_3, format!("x3_3*(c*{p} + {q} + {r})/({p} + {q} + {r})")),
                (X3_2, format!("x3_2*(c*{p} + c*{q} + {r})/(c*{p} + {q} + {r})")),
                (X3_1, format!("x3_1*c*({p} + {q} + {r})/(c*{p} + c*{q} + {r})")),
            ]
        }
        4 => {
            let p = "x4_4*x4_3*x4_3*x4_2*x4_2*x4_1";
            let q = "x3_3*x4_3*x4_2*x4_2*x4_1*x5_2";
            let r = "x3_3*x3_2*x4_2*x4_1*x5_2*x6_2";
            let s = "x3_3*x3_2*x3_1*x5_2*x5_1*x6_2";
            vec![
                (
                    X4_4,
                    format!("x4_4*(c*{p} + {q} + {r} + {s})/({p} + {q} + {r} + {s})"),
                ),
                (
                    X4_3,
                    format!("x4_3*(c*{p} + c*{q} + {r} + {s})/(c*{p} + {q} + {r} + {s})"),
                ),
                (
                    X4_2,
                    format!("x4_2*(c*{p} + c*{q} + c*{r} + {s})/(c*{p} + c*{q} + {r} + {s})"),
                ),
                (
                    X4_1,
                    format!("x4_1*c*({p} + {q} + {r} + {s})/(c*{p} + c*{q} + c*{r} + {s})"),
                ),
            ]
        }
        5 => {
            let p = "x5_2*x5_1";
            let q = "x4_3*x4_2";
            vec![
                (X5_2, format!("x5_2*(c*{p} + {q})/({p} + {q})")),
                (X5_1, format!("x5_1*c*({p} + {q})/(c*{p} + {q})")),
            ]
        }
        6 => {
            let p = "x6_3*x6_2*x6_2*x6_1";
            let q = "x4_4*x4_3*x6_2*x6_1";
            let r = "x4_4*x4_3*x4_2*x4_1";
            vec![
                (X6_3, format!("x6_3*(c*{p} + {q} + {r})/({p} + {q} + {r})")),
                (X6_2, format!("x6_2*(c*{p} + c*{q} + {r})/(c*{p} + {q} + {r})")),
                (X6_1, format!("x6_1*c*({p} + {q} + {r})/(c*{p} + c*{q} + {r})")),
            ]
        }
        _ => panic!("node {k} out of range"),
    }
}

/// Compiled update expressions per node, against the slot order
/// `VAR_NAMES` then `c`.
pub(super) struct UpdateTables {
    pub updates: [Vec<(usize, BoundExpr)>; 7],
}

impl UpdateTables {
    pub fn build() -> UpdateTables {
        let mut order: Vec<&str> = VAR_NAMES.to_vec();
        order.push("c");
        let compile = |k: usize| -> Vec<(usize, BoundExpr)> {
            update_texts(k)
                .into_iter()
                .map(|(slot, text)| {
                    let rat = parse_rational(&text)
                        .unwrap_or_else(|e| panic!("node {k} slot {slot}: {e}"));
                    let bound = tropicalize(&rat)
                        .bind(&order)
                        .expect("update formulas use only known variables");
                    (slot, bound)
                })
                .collect()
        };
        UpdateTables {
            updates: std::array::from_fn(compile),
        }
    }
}

/// The shift masks, for the inlined arithmetic route.
pub(super) mod masks {
    pub(crate) use super::{
        EMPTY, INNER_WIDE, S3_FIRST, S3_SECOND, S4_FIRST, S4_TOP, S5_FIRST, S6_FIRST, S6_SECOND,
    };
    pub(crate) const fn single(t: usize) -> u16 {
        1 << (t - 1)
    }
    pub(crate) const INNER_SEVEN: u16 = super::mask(&[1, 7]);
}
