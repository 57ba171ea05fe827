//! The coordinatized spin-node crystals: elements are arrays `(b_ij)` with
//! `1 <= i <= 6`, `i <= j <= i+5`, subject to row-sum, cross-row equality
//! and (at finite level) nonnegativity and dominance constraints.
//!
//! Finite level `l` gives the 32-element crystal at `l = 1` and its higher
//! analogues; the "infinity" variant relaxes row sums to zero and drops the
//! sign constraints, giving the limit crystal that contains the all-zero
//! element.

mod conditions;
mod ops;
mod stats;

pub use conditions::{select_condition, ConditionFamily, ConditionFault};
pub(crate) use conditions::holds_weak_strict;
pub use ops::{apply_e, apply_f, apply_word, WordOp};
pub use stats::{epsilon, epsilon_vector, phi, phi_vector, weight_component, weight_vector};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lattice::Node;

/// Selects between the finite-level crystal and its limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LevelSpec {
    Finite(i64),
    Infinity,
}

impl LevelSpec {
    pub fn finite(l: i64) -> Option<LevelSpec> {
        (l >= 0).then_some(LevelSpec::Finite(l))
    }

    /// The required row sum: `l` at finite level, 0 in the limit.
    pub fn row_sum(self) -> i64 {
        match self {
            LevelSpec::Finite(l) => l,
            LevelSpec::Infinity => 0,
        }
    }
}

impl fmt::Display for LevelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelSpec::Finite(l) => write!(f, "{l}"),
            LevelSpec::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for LevelSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            LevelSpec::Finite(l) => s.serialize_i64(*l),
            LevelSpec::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for LevelSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<LevelSpec, D::Error> {
        use serde::de::Error;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(l) => {
                LevelSpec::finite(l).ok_or_else(|| D::Error::custom("negative level"))
            }
            Raw::Str(s) if s == "inf" => Ok(LevelSpec::Infinity),
            Raw::Str(s) => Err(D::Error::custom(format!("bad level {s:?}"))),
        }
    }
}

/// A coordinatized crystal element.
///
/// Entry `(i, j)` lives at `rows[i-1][j-i]`; row `i` covers columns
/// `i..=i+5`. The derived ordering (row-major lexicographic) is the
/// canonical order used for sets and serialized output.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct CrystalElement {
    rows: [[i64; 6]; 6],
}

impl CrystalElement {
    /// The all-zero element (the distinguished vector of the limit crystal).
    pub const ZERO: CrystalElement = CrystalElement { rows: [[0; 6]; 6] };

    /// Builds from a list of `(i, j, value)` entries, zero elsewhere.
    pub fn from_entries(entries: &[(usize, usize, i64)]) -> CrystalElement {
        let mut b = CrystalElement::ZERO;
        for &(i, j, v) in entries {
            b.set(i, j, v);
        }
        b
    }

    pub fn from_rows(rows: [[i64; 6]; 6]) -> CrystalElement {
        CrystalElement { rows }
    }

    pub fn rows(&self) -> &[[i64; 6]; 6] {
        &self.rows
    }

    /// The element with `b_ii = l` on the main diagonal, zero elsewhere;
    /// the classical highest-weight element at level `l`.
    pub fn diagonal(l: i64) -> CrystalElement {
        let mut b = CrystalElement::ZERO;
        for i in 1..=6 {
            b.set(i, i, l);
        }
        b
    }

    /// Entry `b_ij`. Panics unless `1 <= i <= 6` and `i <= j <= i+5`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        assert!((1..=6).contains(&i) && (i..=i + 5).contains(&j), "bad entry ({i},{j})");
        self.rows[i - 1][j - i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        assert!((1..=6).contains(&i) && (i..=i + 5).contains(&j), "bad entry ({i},{j})");
        self.rows[i - 1][j - i] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, d: i64) {
        let v = self.get(i, j);
        self.set(i, j, v + d);
    }

    /// Entrywise sum.
    pub fn plus(&self, other: &CrystalElement) -> CrystalElement {
        let mut out = *self;
        for i in 0..6 {
            for j in 0..6 {
                out.rows[i][j] += other.rows[i][j];
            }
        }
        out
    }

    /// Entrywise difference.
    pub fn minus(&self, other: &CrystalElement) -> CrystalElement {
        let mut out = *self;
        for i in 0..6 {
            for j in 0..6 {
                out.rows[i][j] -= other.rows[i][j];
            }
        }
        out
    }

    pub fn scaled(&self, c: i64) -> CrystalElement {
        let mut out = *self;
        for i in 0..6 {
            for j in 0..6 {
                out.rows[i][j] *= c;
            }
        }
        out
    }

    fn row_sum(&self, i: usize) -> i64 {
        self.rows[i - 1].iter().sum()
    }

    /// Partial row sum over columns `lo..=hi` of row `i`; empty ranges are 0.
    pub(crate) fn span(&self, i: usize, lo: usize, hi: usize) -> i64 {
        if lo > hi {
            return 0;
        }
        (lo..=hi).map(|j| self.get(i, j)).sum()
    }

    /// Checks every defining constraint for the given level, returning one
    /// entry per violated constraint (empty means the element belongs).
    pub fn validate(&self, spec: LevelSpec) -> Vec<Violation> {
        let mut out = Vec::new();
        let want = spec.row_sum();
        for i in 1..=6 {
            let s = self.row_sum(i);
            if s != want {
                out.push(Violation::RowSum { i, sum: s, expected: want });
            }
        }
        if let LevelSpec::Finite(_) = spec {
            for i in 1..=6 {
                for j in i..=i + 5 {
                    if self.get(i, j) < 0 {
                        out.push(Violation::Negative { i, j, value: self.get(i, j) });
                    }
                }
            }
        }
        // Cross-row equalities tie row i to row i+t; rows past 6 do not
        // exist, so only i + t <= 6 is instantiated.
        for i in 1..=5 {
            for t in 1..=5 {
                if i + t > 6 {
                    continue;
                }
                let left = self.span(i, i, 6 - t);
                let right = self.span(i + t, i + t, 5 + t);
                if left != right {
                    out.push(Violation::CrossEquality { i, t, left, right });
                }
            }
        }
        if let LevelSpec::Finite(_) = spec {
            for i in 1..=5 {
                for t in i..=5 {
                    let upper = self.span(i, i, t);
                    let lower = self.span(i + 1, i + 1, t + 1);
                    if upper < lower {
                        out.push(Violation::RowInequality { i, t, upper, lower });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self, spec: LevelSpec) -> bool {
        self.validate(spec).is_empty()
    }

    /// Applies the named operator to node `k`.
    pub fn apply(&self, spec: LevelSpec, op: WordOp, k: Node) -> Option<CrystalElement> {
        match op {
            WordOp::Raise => apply_e(self, spec, k),
            WordOp::Lower => apply_f(self, spec, k),
        }
    }
}

impl fmt::Display for CrystalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            serde_json::to_string(&self.rows).expect("array serialization cannot fail")
        )
    }
}

/// A single violated membership constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    RowSum { i: usize, sum: i64, expected: i64 },
    Negative { i: usize, j: usize, value: i64 },
    CrossEquality { i: usize, t: usize, left: i64, right: i64 },
    RowInequality { i: usize, t: usize, upper: i64, lower: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RowSum { i, sum, expected } => {
                write!(f, "row-sum({i}): got {sum}, expected {expected}")
            }
            Violation::Negative { i, j, value } => {
                write!(f, "nonnegativity({i},{j}): entry is {value}")
            }
            Violation::CrossEquality { i, t, left, right } => {
                write!(f, "equality({i},{t}): {left} != {right}")
            }
            Violation::RowInequality { i, t, upper, lower } => {
                write!(f, "inequality({i},{t}): {upper} < {lower}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_in_the_limit_crystal() {
        assert!(CrystalElement::ZERO.is_valid(LevelSpec::Infinity));
        assert!(!CrystalElement::ZERO.is_valid(LevelSpec::Finite(1)));
    }

    #[test]
    fn far_diagonal_generator_is_level_one() {
        let b = CrystalElement::from_entries(&[
            (1, 6, 1),
            (2, 7, 1),
            (3, 8, 1),
            (4, 9, 1),
            (5, 10, 1),
            (6, 11, 1),
        ]);
        assert_eq!(b.validate(LevelSpec::Finite(1)), vec![]);
    }

    #[test]
    fn negative_entry_reports_both_constraints() {
        let b = CrystalElement::from_entries(&[(1, 1, -1)]);
        let violations = b.validate(LevelSpec::Finite(1));
        assert!(violations.contains(&Violation::Negative { i: 1, j: 1, value: -1 }));
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::RowSum { i: 1, .. })));
    }

    #[test]
    fn diagonal_elements_are_valid() {
        for l in 0..=3 {
            assert!(CrystalElement::diagonal(l).is_valid(LevelSpec::Finite(l)));
        }
    }

    #[test]
    fn cross_row_equality_detected() {
        // Entry (1,1) alone breaks b_11 + .. + b_15 = b_22 + .. + b_26.
        let mut b = CrystalElement::ZERO;
        b.set(1, 1, 1);
        b.set(1, 6, -1);
        let violations = b.validate(LevelSpec::Infinity);
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::CrossEquality { i: 1, t: 1, .. })));
    }

    #[test]
    fn level_spec_serde_forms() {
        assert_eq!(serde_json::to_string(&LevelSpec::Finite(2)).unwrap(), "2");
        assert_eq!(serde_json::to_string(&LevelSpec::Infinity).unwrap(), "\"inf\"");
        let inf: LevelSpec = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(inf, LevelSpec::Infinity);
        assert!(serde_json::from_str::<LevelSpec>("-1").is_err());
    }

    #[test]
    fn element_json_is_six_rows() {
        let b = CrystalElement::diagonal(1);
        let json = serde_json::to_string(&b).unwrap();
        assert_eq!(
            json,
            "[[1,0,0,0,0,0],[1,0,0,0,0,0],[1,0,0,0,0,0],[1,0,0,0,0,0],[1,0,0,0,0,0],[1,0,0,0,0,0]]"
        );
        let back: CrystalElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, b);
    }
}
