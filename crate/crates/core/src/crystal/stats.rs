//! Closed-form string statistics and weights of crystal elements.
//!
//! Every statistic is a maximum of linear forms in the entries. The two
//! affine-flavoured statistics (nodes 0 and 6) carry an extra `+l` at
//! finite level and none in the limit crystal. Throughout, the identity
//! `phi_k = epsilon_k + wt_k` holds term by term: adding `wt_k` to the
//! i-th max term of `epsilon_k` gives a max term of `phi_k`. [`phi`]
//! asserts the identity on every call.

use super::{CrystalElement, LevelSpec};
use crate::lattice::{Node, WeightVector};

fn max_of(terms: &[i64]) -> i64 {
    terms.iter().copied().max().expect("nonempty term list")
}

/// The coefficient of Λ_k in the weight of `b`.
pub fn weight_component(b: &CrystalElement, k: Node) -> i64 {
    let g = |i, j| b.get(i, j);
    match k.index() {
        0 => -g(1, 1) - g(1, 2) + g(2, 3) + g(2, 4) + g(2, 5) + g(2, 6) + g(2, 7),
        1 => g(1, 1) - g(1, 2) - g(2, 2),
        2 => g(1, 2) - g(1, 3) + g(2, 2) - g(2, 3) - g(3, 3),
        3 => g(1, 3) - g(1, 4) + g(2, 3) - g(2, 4) + g(3, 3) - g(3, 4) - g(4, 4),
        4 => {
            g(1, 4) - g(1, 5) + g(2, 4) - g(2, 5) + g(3, 4) - g(3, 5) + g(4, 4)
                - g(4, 5)
                - g(5, 5)
        }
        5 => {
            -g(1, 1) - g(1, 2) - g(1, 3) - g(1, 4)
                + g(2, 2)
                + g(2, 3)
                + g(2, 4)
                + 2 * g(2, 5)
                - g(3, 3)
                - g(3, 4)
                + g(4, 4)
                + 2 * g(4, 5)
        }
        6 => {
            g(1, 1) + g(1, 2) + g(1, 3) + g(1, 4) + 2 * g(1, 5)
                - g(2, 2)
                - g(2, 3)
                - g(2, 4)
                + g(3, 3)
                + g(3, 4)
                + 2 * g(3, 5)
                - g(4, 4)
                + g(5, 5)
                - g(5, 6)
                - g(5, 7)
                - g(5, 8)
                - g(5, 9)
                - g(5, 10)
        }
        _ => unreachable!(),
    }
}

/// The weight as a vector in the Λ-basis.
pub fn weight_vector(b: &CrystalElement) -> WeightVector {
    let mut w = [0i64; 7];
    for k in Node::ALL {
        w[k.index()] = weight_component(b, k);
    }
    WeightVector(w)
}

fn node0_eps_core(b: &CrystalElement) -> i64 {
    let g = |i, j| b.get(i, j);
    let tail4 = g(4, 6) + g(4, 7) + g(4, 8) + g(4, 9);
    let tail3 = g(3, 6) + g(3, 7) + g(3, 8);
    max_of(&[
        -g(5, 6) - g(5, 7) - g(5, 8) - g(5, 9) - g(5, 10),
        -g(1, 3) - g(2, 3) - tail4,
        -g(1, 3) - g(3, 4) - tail4,
        -g(1, 3) - g(4, 5) - tail4,
        -g(2, 4) - g(3, 4) - tail4,
        -g(2, 4) - g(4, 5) - tail4,
        -g(3, 5) - g(4, 5) - tail4,
        -g(1, 3) - g(1, 4) - g(1, 5) - g(2, 3) - g(2, 4) - g(2, 5) - g(2, 6) - g(2, 7),
        -g(1, 3) - g(1, 4) - g(2, 3) - g(2, 4) - tail3,
        -g(1, 3) - g(1, 4) - g(2, 3) - g(3, 5) - tail3,
        -g(1, 3) - g(2, 3) - g(2, 5) - g(3, 5) - tail3,
        -g(1, 3) - g(1, 4) - g(3, 4) - g(3, 5) - tail3,
        -g(1, 3) - g(2, 5) - g(3, 4) - g(3, 5) - tail3,
        -g(2, 4) - g(2, 5) - g(3, 4) - g(3, 5) - tail3,
    ])
}

fn node6_eps_core(b: &CrystalElement) -> i64 {
    let g = |i, j| b.get(i, j);
    let head = -g(1, 1) - g(1, 2) - g(1, 3) - g(1, 4);
    max_of(&[
        head - g(1, 5),
        head - 2 * g(1, 5) + g(2, 2) + g(2, 3) + g(2, 4) - g(3, 3) - g(3, 4) - g(3, 5),
        head - 2 * g(1, 5) + g(2, 2) + g(2, 3) + g(2, 4) - g(3, 3) - g(3, 4) - 2 * g(3, 5)
            + g(4, 4)
            - g(5, 5),
    ])
}

// Each term below is the matching term of `node0_eps_core` plus wt_0.
fn node0_phi_core(b: &CrystalElement) -> i64 {
    let g = |i, j| b.get(i, j);
    let head = -g(1, 1) - g(1, 2);
    let row2 = g(2, 3) + g(2, 4) + g(2, 5) + g(2, 6) + g(2, 7);
    let tail4 = g(4, 6) + g(4, 7) + g(4, 8) + g(4, 9);
    let tail3 = g(3, 6) + g(3, 7) + g(3, 8);
    max_of(&[
        head + row2 - g(5, 6) - g(5, 7) - g(5, 8) - g(5, 9) - g(5, 10),
        head - g(1, 3) + g(2, 4) + g(2, 5) + g(2, 6) + g(2, 7) - tail4,
        head - g(1, 3) + row2 - g(3, 4) - tail4,
        head - g(1, 3) + row2 - g(4, 5) - tail4,
        head + g(2, 3) + g(2, 5) + g(2, 6) + g(2, 7) - g(3, 4) - tail4,
        head + g(2, 3) + g(2, 5) + g(2, 6) + g(2, 7) - g(4, 5) - tail4,
        head + row2 - g(3, 5) - g(4, 5) - tail4,
        head - g(1, 3) - g(1, 4) - g(1, 5),
        head - g(1, 3) - g(1, 4) + g(2, 5) + g(2, 6) + g(2, 7) - tail3,
        head - g(1, 3) - g(1, 4) + g(2, 4) + g(2, 5) + g(2, 6) + g(2, 7) - g(3, 5) - tail3,
        head - g(1, 3) + g(2, 4) + g(2, 6) + g(2, 7) - g(3, 5) - tail3,
        head - g(1, 3) - g(1, 4) + row2 - g(3, 4) - g(3, 5) - tail3,
        head - g(1, 3) + g(2, 3) + g(2, 4) + g(2, 6) + g(2, 7) - g(3, 4) - g(3, 5) - tail3,
        head + g(2, 3) + g(2, 6) + g(2, 7) - g(3, 4) - g(3, 5) - tail3,
    ])
}

fn node6_phi_core(b: &CrystalElement) -> i64 {
    let g = |i, j| b.get(i, j);
    let tail5 = g(5, 6) + g(5, 7) + g(5, 8) + g(5, 9) + g(5, 10);
    max_of(&[
        -tail5,
        g(3, 5) - g(4, 4) + g(5, 5) - tail5,
        g(1, 5) - g(2, 2) - g(2, 3) - g(2, 4) + g(3, 3) + g(3, 4) + 2 * g(3, 5) - g(4, 4)
            + g(5, 5)
            - tail5,
    ])
}

fn level_offset(spec: LevelSpec) -> i64 {
    match spec {
        LevelSpec::Finite(l) => l,
        LevelSpec::Infinity => 0,
    }
}

/// The string statistic `epsilon_k(b)`: at finite level, the number of
/// times the raising operator applies before killing `b`.
pub fn epsilon(b: &CrystalElement, spec: LevelSpec, k: Node) -> i64 {
    let g = |i, j| b.get(i, j);
    match k.index() {
        0 => level_offset(spec) + node0_eps_core(b),
        1 => g(1, 2),
        2 => max_of(&[g(1, 3), -g(1, 2) + g(1, 3) + g(2, 3)]),
        3 => max_of(&[
            g(1, 4),
            -g(1, 3) + g(1, 4) + g(2, 4),
            -g(1, 3) + g(1, 4) - g(2, 3) + g(2, 4) + g(3, 4),
        ]),
        4 => max_of(&[
            g(1, 5),
            -g(1, 4) + g(1, 5) + g(2, 5),
            -g(1, 4) + g(1, 5) - g(2, 4) + g(2, 5) + g(3, 5),
            -g(1, 4) + g(1, 5) - g(2, 4) + g(2, 5) - g(3, 4) + g(3, 5) + g(4, 5),
        ]),
        5 => {
            let head = g(1, 1) + g(1, 2) + g(1, 3) + g(1, 4) - g(2, 2) - g(2, 3) - g(2, 4);
            max_of(&[
                head - g(2, 5),
                head - 2 * g(2, 5) + g(3, 3) + g(3, 4) - g(4, 4) - g(4, 5),
            ])
        }
        6 => level_offset(spec) + node6_eps_core(b),
        _ => unreachable!(),
    }
}

/// The string statistic `phi_k(b)`; asserts `phi_k = epsilon_k + wt_k`.
pub fn phi(b: &CrystalElement, spec: LevelSpec, k: Node) -> i64 {
    let g = |i, j| b.get(i, j);
    let value = match k.index() {
        0 => level_offset(spec) + node0_phi_core(b),
        1 => g(1, 1) - g(2, 2),
        2 => max_of(&[g(2, 2) - g(3, 3), g(1, 2) + g(2, 2) - g(2, 3) - g(3, 3)]),
        3 => max_of(&[
            g(3, 3) - g(4, 4),
            g(2, 3) + g(3, 3) - g(3, 4) - g(4, 4),
            g(1, 3) + g(2, 3) - g(2, 4) + g(3, 3) - g(3, 4) - g(4, 4),
        ]),
        4 => max_of(&[
            g(4, 4) - g(5, 5),
            g(3, 4) + g(4, 4) - g(4, 5) - g(5, 5),
            g(2, 4) + g(3, 4) - g(3, 5) + g(4, 4) - g(4, 5) - g(5, 5),
            g(1, 4) + g(2, 4) - g(2, 5) + g(3, 4) - g(3, 5) + g(4, 4) - g(4, 5) - g(5, 5),
        ]),
        5 => max_of(&[
            g(4, 5),
            g(2, 5) - g(3, 3) - g(3, 4) + g(4, 4) + 2 * g(4, 5),
        ]),
        6 => level_offset(spec) + node6_phi_core(b),
        _ => unreachable!(),
    };
    let check = epsilon(b, spec, k) + weight_component(b, k);
    assert_eq!(
        value, check,
        "phi/epsilon/weight consistency broken at node {k} on {b}"
    );
    value
}

/// All seven `epsilon_k` as a Λ-basis vector.
pub fn epsilon_vector(b: &CrystalElement, spec: LevelSpec) -> WeightVector {
    let mut w = [0i64; 7];
    for k in Node::ALL {
        w[k.index()] = epsilon(b, spec, k);
    }
    WeightVector(w)
}

/// All seven `phi_k` as a Λ-basis vector.
pub fn phi_vector(b: &CrystalElement, spec: LevelSpec) -> WeightVector {
    let mut w = [0i64; 7];
    for k in Node::ALL {
        w[k.index()] = phi(b, spec, k);
    }
    WeightVector(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::{apply_f, LevelSpec};

    const INF: LevelSpec = LevelSpec::Infinity;

    fn n(k: usize) -> Node {
        Node::try_from(k).unwrap()
    }

    #[test]
    fn zero_element_statistics_vanish() {
        for k in Node::ALL {
            assert_eq!(weight_component(&CrystalElement::ZERO, k), 0);
            assert_eq!(epsilon(&CrystalElement::ZERO, INF, k), 0);
            assert_eq!(phi(&CrystalElement::ZERO, INF, k), 0);
        }
    }

    #[test]
    fn weight_after_one_lowering_step() {
        let b = apply_f(&CrystalElement::ZERO, INF, n(1)).unwrap();
        assert_eq!(weight_component(&b, n(1)), -2);
        assert_eq!(weight_component(&b, n(2)), 1);
        assert_eq!(phi(&b, INF, n(1)), -1);
    }

    #[test]
    fn diagonal_epsilon_vanishes_classically() {
        for l in 1..=2 {
            let b = CrystalElement::diagonal(l);
            let spec = LevelSpec::Finite(l);
            for k in 1..=6 {
                assert_eq!(epsilon(&b, spec, n(k)), 0, "node {k} level {l}");
            }
            assert_eq!(epsilon(&b, spec, n(0)), l);
        }
    }

    #[test]
    fn twelve_entry_generator_statistics() {
        // The minimal element with ones at (1,1),(1,5),(2,2),(2,6),(3,6),
        // (3,8),(4,7),(4,9),(5,8),(5,10),(6,9),(6,11); every row sums to
        // 2, so it lives at level 2.
        let b = CrystalElement::from_entries(&[
            (1, 1, 1), (1, 5, 1), (2, 2, 1), (2, 6, 1), (3, 6, 1), (3, 8, 1),
            (4, 7, 1), (4, 9, 1), (5, 8, 1), (5, 10, 1), (6, 9, 1), (6, 11, 1),
        ]);
        let spec = LevelSpec::Finite(2);
        assert!(b.is_valid(spec));
        assert_eq!(epsilon(&b, spec, n(4)), 1);
        assert_eq!(phi(&b, spec, n(2)), 1);
        // Its epsilon and phi vectors are the matching fundamental weights.
        assert_eq!(epsilon_vector(&b, spec).0, [0, 0, 0, 0, 1, 0, 0]);
        assert_eq!(phi_vector(&b, spec).0, [0, 0, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn statistics_internal_consistency_on_a_small_orbit() {
        let mut frontier = vec![CrystalElement::ZERO];
        for _ in 0..3 {
            let mut next = Vec::new();
            for b in &frontier {
                for k in Node::ALL {
                    next.push(apply_f(b, INF, k).unwrap());
                }
            }
            for b in &next {
                for k in Node::ALL {
                    // phi() panics if the three statistics disagree.
                    let _ = phi(b, INF, k);
                }
            }
            frontier = next;
            frontier.dedup();
        }
    }
}
