//! Positive rational expressions, their max-plus counterparts, and
//! sampling-based equivalence checking.
//!
//! Subtraction-free rational expressions over named variables are parsed
//! from text and rewritten structurally: products become sums, quotients
//! become differences, sums become maxima, and positive integer constants
//! drop to the additive unit 0. Equivalence of the resulting
//! piecewise-linear expressions is decided by sampling integer boxes, not
//! by exact region decomposition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A subtraction-free rational expression; literals are positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RatExpr {
    Var(String),
    Lit(u64),
    Prod(Box<RatExpr>, Box<RatExpr>),
    Quot(Box<RatExpr>, Box<RatExpr>),
    Sum(Box<RatExpr>, Box<RatExpr>),
}

/// A max-plus expression over named integer variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TropExpr {
    Var(String),
    Lit(i64),
    Plus(Box<TropExpr>, Box<TropExpr>),
    Minus(Box<TropExpr>, Box<TropExpr>),
    Neg(Box<TropExpr>),
    Max(Box<TropExpr>, Box<TropExpr>),
}

/// A total map from variable names to integers.
pub type Assignment = BTreeMap<String, i64>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("unbound variable {0:?}")]
    UnboundVariable(String),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl TropExpr {
    pub fn var(name: &str) -> TropExpr {
        TropExpr::Var(name.to_owned())
    }

    pub fn plus(self, rhs: TropExpr) -> TropExpr {
        TropExpr::Plus(Box::new(self), Box::new(rhs))
    }

    pub fn minus(self, rhs: TropExpr) -> TropExpr {
        TropExpr::Minus(Box::new(self), Box::new(rhs))
    }

    pub fn max(self, rhs: TropExpr) -> TropExpr {
        TropExpr::Max(Box::new(self), Box::new(rhs))
    }

    /// Structural evaluation; every free variable must be assigned.
    pub fn eval(&self, a: &Assignment) -> Result<i64, EvalError> {
        match self {
            TropExpr::Var(v) => a
                .get(v)
                .copied()
                .ok_or_else(|| EvalError::UnboundVariable(v.clone())),
            TropExpr::Lit(c) => Ok(*c),
            TropExpr::Plus(l, r) => Ok(l.eval(a)? + r.eval(a)?),
            TropExpr::Minus(l, r) => Ok(l.eval(a)? - r.eval(a)?),
            TropExpr::Neg(e) => Ok(-e.eval(a)?),
            TropExpr::Max(l, r) => Ok(l.eval(a)?.max(r.eval(a)?)),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            TropExpr::Var(v) => {
                out.insert(v.clone());
            }
            TropExpr::Lit(_) => {}
            TropExpr::Plus(l, r) | TropExpr::Minus(l, r) | TropExpr::Max(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            TropExpr::Neg(e) => e.collect_vars(out),
        }
    }

    /// Resolves variable names against `order` once, for repeated
    /// evaluation against slot arrays.
    pub fn bind(&self, order: &[&str]) -> Result<BoundExpr, EvalError> {
        let node = self.bind_node(order)?;
        Ok(BoundExpr(node))
    }

    fn bind_node(&self, order: &[&str]) -> Result<BoundNode, EvalError> {
        Ok(match self {
            TropExpr::Var(v) => BoundNode::Var(
                order
                    .iter()
                    .position(|name| name == v)
                    .ok_or_else(|| EvalError::UnboundVariable(v.clone()))?,
            ),
            TropExpr::Lit(c) => BoundNode::Lit(*c),
            TropExpr::Plus(l, r) => {
                BoundNode::Plus(Box::new(l.bind_node(order)?), Box::new(r.bind_node(order)?))
            }
            TropExpr::Minus(l, r) => {
                BoundNode::Minus(Box::new(l.bind_node(order)?), Box::new(r.bind_node(order)?))
            }
            TropExpr::Neg(e) => BoundNode::Neg(Box::new(e.bind_node(order)?)),
            TropExpr::Max(l, r) => {
                BoundNode::Max(Box::new(l.bind_node(order)?), Box::new(r.bind_node(order)?))
            }
        })
    }
}

#[derive(Clone, Debug)]
enum BoundNode {
    Var(usize),
    Lit(i64),
    Plus(Box<BoundNode>, Box<BoundNode>),
    Minus(Box<BoundNode>, Box<BoundNode>),
    Neg(Box<BoundNode>),
    Max(Box<BoundNode>, Box<BoundNode>),
}

/// A max-plus expression with variables resolved to slot indices.
#[derive(Clone, Debug)]
pub struct BoundExpr(BoundNode);

impl BoundExpr {
    pub fn eval_slots(&self, slots: &[i64]) -> i64 {
        fn go(n: &BoundNode, slots: &[i64]) -> i64 {
            match n {
                BoundNode::Var(s) => slots[*s],
                BoundNode::Lit(c) => *c,
                BoundNode::Plus(l, r) => go(l, slots) + go(r, slots),
                BoundNode::Minus(l, r) => go(l, slots) - go(r, slots),
                BoundNode::Neg(e) => -go(e, slots),
                BoundNode::Max(l, r) => go(l, slots).max(go(r, slots)),
            }
        }
        go(&self.0, slots)
    }
}

impl fmt::Display for TropExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropExpr::Var(v) => write!(f, "{v}"),
            TropExpr::Lit(c) => write!(f, "{c}"),
            TropExpr::Plus(l, r) => write!(f, "({l} + {r})"),
            TropExpr::Minus(l, r) => write!(f, "({l} - {r})"),
            TropExpr::Neg(e) => write!(f, "(-{e})"),
            TropExpr::Max(l, r) => write!(f, "max({l}, {r})"),
        }
    }
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatExpr::Var(v) => write!(f, "{v}"),
            RatExpr::Lit(c) => write!(f, "{c}"),
            RatExpr::Prod(l, r) => write!(f, "({l} * {r})"),
            RatExpr::Quot(l, r) => write!(f, "({l} / {r})"),
            RatExpr::Sum(l, r) => write!(f, "({l} + {r})"),
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatExpr, ParseError> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let rhs = self.term()?;
            acc = RatExpr::Sum(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatExpr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = RatExpr::Prod(Box::new(acc), Box::new(rhs));
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = RatExpr::Quot(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatExpr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.error("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                let value: u64 = match text.parse() {
                    Ok(v) => v,
                    Err(_) => return self.error("integer literal out of range"),
                };
                if value == 0 {
                    self.pos = start;
                    return self.error("literals must be positive");
                }
                Ok(RatExpr::Lit(value))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                Ok(RatExpr::Var(name.to_owned()))
            }
            Some(b'-') => self.error("subtraction is not part of positive expressions"),
            Some(c) => self.error(format!("unexpected character {:?}", c as char)),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses the grammar `expr := term ('+' term)*`,
/// `term := factor (('*'|'/') factor)*`,
/// `factor := var | posint | '(' expr ')'` with the usual precedence and
/// left associativity.
pub fn parse_rational(text: &str) -> Result<RatExpr, ParseError> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.error("trailing input");
    }
    Ok(e)
}

/// The structural rewrite: product to sum, quotient to difference, sum to
/// max. Positive constants carry no max-plus degree and drop to 0.
pub fn tropicalize(e: &RatExpr) -> TropExpr {
    match e {
        RatExpr::Var(v) => TropExpr::Var(v.clone()),
        RatExpr::Lit(_) => TropExpr::Lit(0),
        RatExpr::Prod(l, r) => tropicalize(l).plus(tropicalize(r)),
        RatExpr::Quot(l, r) => tropicalize(l).minus(tropicalize(r)),
        RatExpr::Sum(l, r) => tropicalize(l).max(tropicalize(r)),
    }
}

/// Evaluates a rational expression directly in the max-plus semiring,
/// rewriting during the recursion. Independent of [`tropicalize`]; the two
/// agree on every assignment.
pub fn trop_fold(e: &RatExpr, a: &Assignment) -> Result<i64, EvalError> {
    match e {
        RatExpr::Var(v) => a
            .get(v)
            .copied()
            .ok_or_else(|| EvalError::UnboundVariable(v.clone())),
        RatExpr::Lit(_) => Ok(0),
        RatExpr::Prod(l, r) => Ok(trop_fold(l, a)? + trop_fold(r, a)?),
        RatExpr::Quot(l, r) => Ok(trop_fold(l, a)? - trop_fold(r, a)?),
        RatExpr::Sum(l, r) => Ok(trop_fold(l, a)?.max(trop_fold(r, a)?)),
    }
}

/// Outcome of a sampling equivalence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivResult {
    Equal,
    Counterexample(Assignment),
}

/// Compares two expressions on the union of their variables: the all-zero
/// and the two all-corner assignments first, then `trials` uniform samples
/// from `[-box_radius, box_radius]`. Returns the first differing
/// assignment.
pub fn check_equiv(
    e1: &TropExpr,
    e2: &TropExpr,
    box_radius: i64,
    trials: u64,
    seed: u64,
) -> EquivResult {
    let vars: Vec<String> = e1.free_vars().union(&e2.free_vars()).cloned().collect();
    let differs = |a: &Assignment| e1.eval(a).unwrap() != e2.eval(a).unwrap();
    for corner in [0, box_radius, -box_radius] {
        let a: Assignment = vars.iter().map(|v| (v.clone(), corner)).collect();
        if differs(&a) {
            return EquivResult::Counterexample(a);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let a: Assignment = vars
            .iter()
            .map(|v| (v.clone(), rng.gen_range(-box_radius..=box_radius)))
            .collect();
        if differs(&a) {
            return EquivResult::Counterexample(a);
        }
    }
    EquivResult::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn assign(pairs: &[(&str, i64)]) -> Assignment {
        pairs.iter().map(|(v, x)| (v.to_string(), *x)).collect()
    }

    #[test]
    fn grammar_shapes() {
        let e = parse_rational("x*y/z + w").unwrap();
        assert_eq!(e.to_string(), "(((x * y) / z) + w)");
        let e = parse_rational("(x+y)/x").unwrap();
        assert_eq!(e.to_string(), "((x + y) / x)");
    }

    #[test]
    fn subtraction_is_rejected() {
        let err = parse_rational("x - y").unwrap_err();
        assert_eq!(err.pos, 2);
        assert!(parse_rational("x + (y").is_err());
        assert!(parse_rational("x y").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn zero_literal_is_rejected() {
        let err = parse_rational("0 + x").unwrap_err();
        assert_eq!(err.pos, 0);
        assert!(parse_rational("2*x").is_ok());
    }

    #[test]
    fn tropicalization_of_the_three_rules() {
        let e = tropicalize(&parse_rational("x*y/z + w").unwrap());
        assert_eq!(e.to_string(), "max(((x + y) - z), w)");
        assert_eq!(e.eval(&assign(&[("x", 1), ("y", 2), ("z", 0), ("w", 5)])), Ok(5));

        let x = tropicalize(&parse_rational("x").unwrap());
        assert_eq!(x, TropExpr::var("x"));

        // Constants drop to the additive unit.
        let two_x = tropicalize(&parse_rational("2*x + y").unwrap());
        assert_eq!(two_x.to_string(), "max((0 + x), y)");
        assert_eq!(two_x.eval(&assign(&[("x", 3), ("y", 1)])), Ok(3));
    }

    #[test]
    fn eval_basics() {
        let e = TropExpr::var("x").minus(TropExpr::var("y"));
        assert_eq!(e.eval(&assign(&[("x", 3), ("y", 7)])), Ok(-4));
        let m = TropExpr::var("x").max(TropExpr::var("y"));
        assert_eq!(m.eval(&assign(&[("x", 0), ("y", 0)])), Ok(0));
        assert_eq!(
            m.eval(&assign(&[("x", 0)])),
            Err(EvalError::UnboundVariable("y".into()))
        );
    }

    #[test]
    fn check_equiv_finds_shifts() {
        let x = TropExpr::var("x");
        let m1 = TropExpr::var("x").max(TropExpr::var("y"));
        let m2 = TropExpr::var("y").max(TropExpr::var("x"));
        assert_eq!(check_equiv(&m1, &m2, 50, 100, 0), EquivResult::Equal);
        let shifted = x.clone().plus(TropExpr::Lit(1));
        match check_equiv(&x, &shifted, 50, 100, 0) {
            EquivResult::Counterexample(a) => {
                // The deterministic zero assignment already separates them.
                assert_eq!(a.values().copied().collect::<Vec<_>>(), vec![0]);
            }
            EquivResult::Equal => panic!("x and x+1 compared equal"),
        }
    }

    #[test]
    fn bound_evaluation_matches_named() {
        let e = tropicalize(&parse_rational("c*x + y/x").unwrap());
        let bound = e.bind(&["x", "y", "c"]).unwrap();
        let a = assign(&[("x", 4), ("y", -2), ("c", 10)]);
        assert_eq!(bound.eval_slots(&[4, -2, 10]), e.eval(&a).unwrap());
        assert!(e.bind(&["x"]).is_err());
    }

    fn arb_rat(depth: u32) -> impl Strategy<Value = RatExpr> {
        let leaf = prop_oneof![
            prop_oneof![Just("x"), Just("y"), Just("z"), Just("w")]
                .prop_map(|v| RatExpr::Var(v.to_string())),
            (1u64..9).prop_map(RatExpr::Lit),
        ];
        leaf.prop_recursive(depth, 64, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(l, r)| RatExpr::Prod(Box::new(l), Box::new(r))),
                (inner.clone(), inner.clone())
                    .prop_map(|(l, r)| RatExpr::Quot(Box::new(l), Box::new(r))),
                (inner.clone(), inner)
                    .prop_map(|(l, r)| RatExpr::Sum(Box::new(l), Box::new(r))),
            ]
        })
    }

    proptest! {
        /// Tropicalize-then-eval equals rewrite-during-eval.
        #[test]
        fn tropical_homomorphism(e in arb_rat(6),
                                 x in -50i64..50, y in -50i64..50,
                                 z in -50i64..50, w in -50i64..50) {
            let a = assign(&[("x", x), ("y", y), ("z", z), ("w", w)]);
            prop_assert_eq!(tropicalize(&e).eval(&a).unwrap(), trop_fold(&e, &a).unwrap());
        }

        /// Idempotence of max and commutativity/associativity of plus
        /// under evaluation, on random subtrees.
        #[test]
        fn max_plus_laws(e in arb_rat(3), f in arb_rat(3), g in arb_rat(3),
                         x in -100i64..100, y in -100i64..100,
                         z in -100i64..100, w in -100i64..100) {
            let a = assign(&[("x", x), ("y", y), ("z", z), ("w", w)]);
            let (te, tf, tg) = (tropicalize(&e), tropicalize(&f), tropicalize(&g));
            prop_assert_eq!(
                te.clone().max(te.clone()).eval(&a).unwrap(),
                te.eval(&a).unwrap()
            );
            prop_assert_eq!(
                te.clone().plus(tf.clone()).eval(&a).unwrap(),
                tf.clone().plus(te.clone()).eval(&a).unwrap()
            );
            prop_assert_eq!(
                te.clone().plus(tf.clone()).plus(tg.clone()).eval(&a).unwrap(),
                te.plus(tf.plus(tg)).eval(&a).unwrap()
            );
        }

        /// Round-trip: parsing the displayed form reproduces the tree.
        #[test]
        fn display_parses_back(e in arb_rat(4)) {
            let text = e.to_string();
            prop_assert_eq!(parse_rational(&text).unwrap(), e);
        }

        /// A counterexample reported by check_equiv really separates the
        /// expressions.
        #[test]
        fn check_equiv_is_sound(e in arb_rat(3), f in arb_rat(3), seed in 0u64..32) {
            let (te, tf) = (tropicalize(&e), tropicalize(&f));
            if let EquivResult::Counterexample(a) = check_equiv(&te, &tf, 20, 64, seed) {
                prop_assert_ne!(te.eval(&a).unwrap(), tf.eval(&a).unwrap());
            }
        }
    }
}
