//! Minimal elements, shifted crystals, and the embedding of each finite
//! crystal into the limit crystal together with its inverse decomposition.
//!
//! A minimal element is determined by seven nonnegative coefficients
//! `a_0..a_6` with `a_0 + a_1 + 2a_2 + 2a_3 + 2a_4 + a_5 + a_6 = l`; its
//! entries are fixed linear forms in the coefficients. Subtracting a
//! minimal element embeds the level-`l` crystal into the limit; the
//! decomposition recovers coefficients from a nonzero limit element by
//! evaluating seven max-formulas in dependency order.

use serde::{Deserialize, Serialize};

use crate::crystal::{epsilon_vector, weight_component, CrystalElement, LevelSpec};
use crate::lattice::{level_of, Node, WeightVector};

/// Coefficients `a_0..a_6` of a minimal element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MinimalCoeffs(pub [i64; 7]);

impl MinimalCoeffs {
    /// The level `a_0 + a_1 + 2a_2 + 2a_3 + 2a_4 + a_5 + a_6`.
    pub fn level(&self) -> i64 {
        let a = self.0;
        a[0] + a[1] + 2 * (a[2] + a[3] + a[4]) + a[5] + a[6]
    }

    pub fn is_valid(&self) -> bool {
        self.0.iter().all(|&ak| ak >= 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CoherentError {
    #[error("element is not valid at level {spec}: {first_violation}")]
    InvalidElement { spec: LevelSpec, first_violation: String },
    #[error("element is not minimal at level {level}")]
    NotMinimal { level: i64 },
    #[error("negative minimal coefficients")]
    NegativeCoeffs,
    #[error("the zero element does not decompose; it is the image of every minimal element")]
    ZeroPoint,
}

fn check_valid(b: &CrystalElement, spec: LevelSpec) -> Result<(), CoherentError> {
    match b.validate(spec).first() {
        None => Ok(()),
        Some(v) => Err(CoherentError::InvalidElement { spec, first_violation: v.to_string() }),
    }
}

/// The minimal element with the given coefficients, written entrywise.
pub fn minimal_from_coeffs(coeffs: &MinimalCoeffs) -> Result<CrystalElement, CoherentError> {
    if !coeffs.is_valid() {
        return Err(CoherentError::NegativeCoeffs);
    }
    let [a0, a1, a2, a3, a4, a5, a6] = coeffs.0;
    let b = CrystalElement::from_entries(&[
        (1, 1, a1 + a2 + a3 + a4 + a6),
        (1, 2, a5),
        (1, 3, a4),
        (1, 4, a3),
        (1, 5, a2),
        (1, 6, a0),
        (2, 2, a2 + a3 + a4 + a6),
        (2, 3, a5),
        (2, 4, a4),
        (2, 5, a3),
        (2, 6, a1 + a2),
        (2, 7, a0),
        (3, 3, a3 + a4 + a6),
        (3, 4, a5),
        (3, 5, a4),
        (3, 6, a2 + a3),
        (3, 7, a1),
        (3, 8, a0 + a2),
        (4, 4, a4 + a6),
        (4, 5, a5),
        (4, 6, a3 + a4),
        (4, 7, a2),
        (4, 8, a1),
        (4, 9, a0 + a2 + a3),
        (5, 5, a6),
        (5, 6, a4 + a5),
        (5, 7, a3),
        (5, 8, a2),
        (5, 9, a1),
        (5, 10, a0 + a2 + a3 + a4),
        (6, 6, a6),
        (6, 7, a4),
        (6, 8, a3),
        (6, 9, a2),
        (6, 10, a1),
        (6, 11, a0 + a2 + a3 + a4 + a5),
    ]);
    debug_assert!(b.is_valid(LevelSpec::Finite(coeffs.level())));
    Ok(b)
}

/// All coefficient solutions at level `l`, in lexicographic order.
pub fn minimal_coeff_set(l: i64) -> Vec<MinimalCoeffs> {
    let mut out = Vec::new();
    for a0 in 0..=l {
        for a1 in 0..=l - a0 {
            for a2 in 0..=(l - a0 - a1) / 2 {
                for a3 in 0..=(l - a0 - a1 - 2 * a2) / 2 {
                    for a4 in 0..=(l - a0 - a1 - 2 * a2 - 2 * a3) / 2 {
                        let rest = l - a0 - a1 - 2 * (a2 + a3 + a4);
                        for a5 in 0..=rest {
                            let a6 = rest - a5;
                            out.push(MinimalCoeffs([a0, a1, a2, a3, a4, a5, a6]));
                        }
                    }
                }
            }
        }
    }
    out
}

/// All minimal elements of the level-`l` crystal, deduplicated and in
/// canonical element order.
pub fn minimal_set(l: i64) -> Vec<CrystalElement> {
    assert!(l >= 1, "minimal elements need level >= 1");
    let mut out: Vec<CrystalElement> = minimal_coeff_set(l)
        .iter()
        .map(|a| minimal_from_coeffs(a).expect("coefficients are nonnegative"))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Whether the level pairing of `epsilon(b)` equals `l`, the defining
/// property of minimal elements.
pub fn is_minimal(b: &CrystalElement, l: i64) -> bool {
    level_of(&epsilon_vector(b, LevelSpec::Finite(l))) == l
}

/// A finite-level element between two weight shifts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftedElement {
    pub lambda: WeightVector,
    pub b: CrystalElement,
    pub mu: WeightVector,
    pub level: i64,
}

/// Statistics of a shifted element at one node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftStats {
    pub epsilon: i64,
    pub phi: i64,
    pub weight: i64,
}

/// Statistics of `t_lambda (x) b (x) t_mu`: the left shift lowers
/// `epsilon_k` by the coroot pairing with lambda, the right shift raises
/// `phi_k` by the pairing with mu, and the weight gains both.
pub fn shift_stats(s: &ShiftedElement, k: Node) -> ShiftStats {
    let spec = LevelSpec::Finite(s.level);
    ShiftStats {
        epsilon: crate::crystal::epsilon(&s.b, spec, k) - s.lambda.coroot_pairing(k),
        phi: crate::crystal::phi(&s.b, spec, k) + s.mu.coroot_pairing(k),
        weight: weight_component(&s.b, k) + s.lambda.component(k) + s.mu.component(k),
    }
}

/// Embeds `b` of the level-`l` crystal into the limit by subtracting the
/// minimal element `b0` entrywise.
pub fn embed(
    l: i64,
    b0: &CrystalElement,
    b: &CrystalElement,
) -> Result<CrystalElement, CoherentError> {
    let spec = LevelSpec::Finite(l);
    check_valid(b0, spec)?;
    if !is_minimal(b0, l) {
        return Err(CoherentError::NotMinimal { level: l });
    }
    check_valid(b, spec)?;
    let out = b.minus(b0);
    debug_assert!(out.is_valid(LevelSpec::Infinity));
    Ok(out)
}

/// The result of decomposing a nonzero limit element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub level: i64,
    pub coeffs: MinimalCoeffs,
    pub minimal: CrystalElement,
    pub element: CrystalElement,
}

/// Recovers `(l, b0, b)` with `b - b0 = bp` from a nonzero limit element.
///
/// The coefficient formulas are evaluated in the order
/// `a_1, a_2, a_3, a_4, a_5, a_6, a_0` because later ones consume earlier
/// values; no algebraic simplification is applied.
pub fn decompose(bp: &CrystalElement) -> Result<Decomposition, CoherentError> {
    check_valid(bp, LevelSpec::Infinity)?;
    if *bp == CrystalElement::ZERO {
        return Err(CoherentError::ZeroPoint);
    }
    let g = |i, j| bp.get(i, j);
    let max = |terms: &[i64]| terms.iter().copied().max().unwrap();

    let a1 = max(&[
        -g(1, 1) + g(2, 2),
        -g(1, 1) - g(1, 2) + g(2, 2) + g(2, 3),
        -g(1, 1) - g(1, 2) - g(1, 3) + g(2, 2) + g(2, 3) + g(2, 4),
        -g(1, 1) - g(1, 2) - g(1, 3) - g(1, 4) + g(2, 2) + g(2, 3) + g(2, 4) + g(2, 5),
        0,
    ]);
    let a2 = max(&[
        -g(2, 2) + g(3, 3),
        -g(2, 2) - g(2, 3) + g(3, 3) + g(3, 4),
        -g(2, 2) - g(2, 3) - g(2, 4) + g(3, 3) + g(3, 4) + g(3, 5),
        -g(1, 5),
        -g(2, 6) - a1,
        0,
    ]);
    let a3 = max(&[
        -g(3, 3) + g(4, 4),
        -g(3, 3) - g(3, 4) + g(4, 4) + g(4, 5),
        -g(1, 4),
        -g(2, 5),
        -g(3, 6) - a2,
        0,
    ]);
    let a4 = max(&[
        -g(4, 4) + g(5, 5),
        -g(1, 3),
        -g(2, 4),
        -g(3, 5),
        -g(4, 6) - a3,
        0,
    ]);
    let a5 = max(&[
        -g(1, 2),
        -g(2, 3),
        -g(3, 4),
        -g(4, 5),
        -g(5, 6) - a4,
        0,
    ]);
    let a6 = max(&[
        -g(1, 1) - a1 - a2 - a3 - a4,
        -g(2, 2) - a2 - a3 - a4,
        -g(3, 3) - a3 - a4,
        -g(4, 4) - a4,
        -g(5, 5),
        0,
    ]);
    let a0 = max(&[
        g(1, 1) - a2 - a3 - a4 - a5,
        g(1, 1) + g(1, 2) - a2 - a3 - a4,
        g(1, 1) + g(1, 2) + g(1, 3) - a2 - a3,
        g(1, 1) + g(1, 2) + g(1, 3) + g(1, 4) - a2,
        g(1, 1) + g(1, 2) + g(1, 3) + g(1, 4) + g(1, 5),
        0,
    ]);

    let coeffs = MinimalCoeffs([a0, a1, a2, a3, a4, a5, a6]);
    let level = coeffs.level();
    let minimal = minimal_from_coeffs(&coeffs).expect("maxima with 0 are nonnegative");
    let element = bp.plus(&minimal);
    assert!(
        element.is_valid(LevelSpec::Finite(level)),
        "decomposition left the level-{level} crystal on {bp}"
    );
    Ok(Decomposition { level, coeffs, minimal, element })
}

/// Serialized form of a decomposition.
#[derive(Serialize, Deserialize)]
pub struct DecompositionJson {
    pub l: i64,
    pub a: MinimalCoeffs,
    pub b0: CrystalElement,
    pub b: CrystalElement,
}

impl From<Decomposition> for DecompositionJson {
    fn from(d: Decomposition) -> DecompositionJson {
        DecompositionJson { l: d.level, a: d.coeffs, b0: d.minimal, b: d.element }
    }
}

/// The epsilon vector of a minimal element is the coefficient vector read
/// backwards; phi reads it forwards.
pub fn minimal_epsilon(coeffs: &MinimalCoeffs) -> WeightVector {
    WeightVector(std::array::from_fn(|k| coeffs.0[6 - k]))
}

pub fn minimal_phi(coeffs: &MinimalCoeffs) -> WeightVector {
    WeightVector(coeffs.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::{apply_f, epsilon, phi, phi_vector};

    fn n(k: usize) -> Node {
        Node::try_from(k).unwrap()
    }

    fn unit(k: usize) -> MinimalCoeffs {
        let mut a = [0i64; 7];
        a[k] = 1;
        MinimalCoeffs(a)
    }

    #[test]
    fn generators_from_unit_coefficients() {
        let diag = minimal_from_coeffs(&unit(6)).unwrap();
        assert_eq!(diag, CrystalElement::diagonal(1));

        let far = minimal_from_coeffs(&unit(0)).unwrap();
        let want = CrystalElement::from_entries(&[
            (1, 6, 1), (2, 7, 1), (3, 8, 1), (4, 9, 1), (5, 10, 1), (6, 11, 1),
        ]);
        assert_eq!(far, want);

        let twelve = minimal_from_coeffs(&unit(2)).unwrap();
        let want = CrystalElement::from_entries(&[
            (1, 1, 1), (1, 5, 1), (2, 2, 1), (2, 6, 1), (3, 6, 1), (3, 8, 1),
            (4, 7, 1), (4, 9, 1), (5, 8, 1), (5, 10, 1), (6, 9, 1), (6, 11, 1),
        ]);
        assert_eq!(twelve, want);
    }

    #[test]
    fn minimal_set_sizes() {
        assert_eq!(minimal_set(1).len(), 4);
        assert_eq!(minimal_set(2).len(), 13);
    }

    #[test]
    fn level_one_minimal_epsilons_are_the_level_one_fundamentals() {
        let mut eps: Vec<[i64; 7]> = minimal_set(1)
            .iter()
            .map(|b| epsilon_vector(b, LevelSpec::Finite(1)).0)
            .collect();
        eps.sort();
        let mut want = vec![
            WeightVector::fundamental(n(0)).0,
            WeightVector::fundamental(n(1)).0,
            WeightVector::fundamental(n(5)).0,
            WeightVector::fundamental(n(6)).0,
        ];
        want.sort();
        assert_eq!(eps, want);
    }

    #[test]
    fn minimality_recognition() {
        assert!(is_minimal(&CrystalElement::diagonal(1), 1));
        for b in minimal_set(2) {
            assert!(is_minimal(&b, 2));
        }
        // One lowering step away from a minimal element is not minimal.
        let b1 = minimal_from_coeffs(&unit(1)).unwrap();
        let lowered = apply_f(&b1, LevelSpec::Finite(1), n(1)).unwrap();
        let want = CrystalElement::from_entries(&[
            (1, 2, 1), (2, 6, 1), (3, 7, 1), (4, 8, 1), (5, 9, 1), (6, 11, 1),
        ]);
        assert_eq!(lowered, want);
        assert!(!is_minimal(&lowered, 1));
    }

    #[test]
    fn shift_by_minimal_statistics_cancels() {
        for coeffs in minimal_coeff_set(2) {
            let b0 = minimal_from_coeffs(&coeffs).unwrap();
            let s = ShiftedElement {
                lambda: epsilon_vector(&b0, LevelSpec::Finite(2)),
                b: b0,
                mu: -phi_vector(&b0, LevelSpec::Finite(2)),
                level: 2,
            };
            for k in Node::ALL {
                let st = shift_stats(&s, k);
                assert_eq!((st.epsilon, st.phi), (0, 0));
            }
            // The closed-form epsilon/phi of minimal elements agree with
            // the statistics formulas.
            assert_eq!(epsilon_vector(&b0, LevelSpec::Finite(2)), minimal_epsilon(&coeffs));
            assert_eq!(phi_vector(&b0, LevelSpec::Finite(2)), minimal_phi(&coeffs));
        }
    }

    #[test]
    fn zero_shift_is_identity_on_statistics() {
        let b = CrystalElement::diagonal(1);
        let s = ShiftedElement {
            lambda: WeightVector::ZERO,
            b,
            mu: WeightVector::ZERO,
            level: 1,
        };
        let spec = LevelSpec::Finite(1);
        for k in Node::ALL {
            let st = shift_stats(&s, k);
            assert_eq!(st.epsilon, epsilon(&b, spec, k));
            assert_eq!(st.phi, phi(&b, spec, k));
            assert_eq!(st.weight, weight_component(&b, k));
        }
    }

    /// A left shift by one fundamental weight lowers exactly the matching
    /// epsilon component (the coroot pairing is a Kronecker delta).
    #[test]
    fn fundamental_shift_drops_one_epsilon() {
        let b = CrystalElement::diagonal(1);
        let s = ShiftedElement {
            lambda: WeightVector::fundamental(n(1)),
            b,
            mu: WeightVector::ZERO,
            level: 1,
        };
        let spec = LevelSpec::Finite(1);
        for k in Node::ALL {
            let expected = epsilon(&b, spec, k) - i64::from(k == n(1));
            assert_eq!(shift_stats(&s, k).epsilon, expected);
            assert_eq!(shift_stats(&s, k).phi, phi(&b, spec, k));
        }
    }

    #[test]
    fn embed_sends_minimal_to_zero() {
        let diag = CrystalElement::diagonal(1);
        assert_eq!(embed(1, &diag, &diag), Ok(CrystalElement::ZERO));
    }

    #[test]
    fn embed_matches_lowering() {
        let b1 = minimal_from_coeffs(&unit(1)).unwrap();
        let spec = LevelSpec::Finite(1);
        let lowered = apply_f(&b1, spec, n(1)).unwrap();
        let image = embed(1, &b1, &lowered).unwrap();
        let want = apply_f(&CrystalElement::ZERO, LevelSpec::Infinity, n(1)).unwrap();
        assert_eq!(image, want);
    }

    #[test]
    fn embed_rejects_non_minimal_base() {
        let b1 = minimal_from_coeffs(&unit(1)).unwrap();
        let lowered = apply_f(&b1, LevelSpec::Finite(1), n(1)).unwrap();
        assert_eq!(
            embed(1, &lowered, &b1),
            Err(CoherentError::NotMinimal { level: 1 })
        );
    }

    #[test]
    fn decompose_one_lowering_step() {
        let bp = apply_f(&CrystalElement::ZERO, LevelSpec::Infinity, n(1)).unwrap();
        let d = decompose(&bp).unwrap();
        assert_eq!(d.coeffs, MinimalCoeffs([0, 1, 0, 0, 0, 0, 0]));
        assert_eq!(d.level, 1);
        assert_eq!(d.minimal, minimal_from_coeffs(&unit(1)).unwrap());
        assert_eq!(embed(d.level, &d.minimal, &d.element), Ok(bp));
    }

    #[test]
    fn decompose_affine_lowering_step() {
        let bp = apply_f(&CrystalElement::ZERO, LevelSpec::Infinity, n(0)).unwrap();
        let d = decompose(&bp).unwrap();
        assert_eq!(embed(d.level, &d.minimal, &d.element), Ok(bp));
    }

    #[test]
    fn decompose_rejects_zero() {
        assert_eq!(decompose(&CrystalElement::ZERO), Err(CoherentError::ZeroPoint));
    }
}
