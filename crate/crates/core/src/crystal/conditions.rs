//! The fourteen-way case split that drives the affine-node operators.
//!
//! Fourteen linear head quantities are compared pairwise; block `j` holds
//! when head `j` beats every other head, where "beats"
//! is a strict or weak inequality depending on the pair. The raising
//! family uses the pattern as given; the lowering family swaps strict and
//! weak. Exactly one block is expected to hold on any crystal element;
//! anything else is reported as a fault rather than silently resolved.

use std::fmt;

use super::CrystalElement;

/// Which comparison family to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionFamily {
    /// Raising-direction blocks: weak targets compare with `>=`, the rest
    /// with `>`.
    E,
    /// Lowering-direction blocks: strictness swapped relative to `E`.
    F,
}

/// Zero or several blocks held where exactly one was required.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ConditionFault {
    pub context: &'static str,
    /// 1-based indices of all blocks that held.
    pub holding: Vec<usize>,
}

impl fmt::Display for ConditionFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: expected exactly one holding block, found {:?}",
            self.context, self.holding
        )
    }
}

const fn mask(targets: &[usize]) -> u16 {
    let mut m = 0u16;
    let mut idx = 0;
    while idx < targets.len() {
        m |= 1 << (targets[idx] - 1);
        idx += 1;
    }
    m
}

/// For block `j` (1-based), the set of other blocks compared weakly in the
/// raising family. Note the deviations from a plain total order (block 5
/// is strict against 4, 6 against 5, and so on); linear relations among the
/// heads make the overall split exhaustive anyway.
pub(crate) const WEAK_TARGETS: [u16; 14] = [
    mask(&[]),
    mask(&[1]),
    mask(&[1, 2]),
    mask(&[1, 2, 3]),
    mask(&[1, 2, 3]),
    mask(&[1, 2, 3, 4]),
    mask(&[1, 2, 3, 4, 5]),
    mask(&[1, 2, 3, 4, 5, 7]),
    mask(&[1, 2, 3, 4, 5, 6, 7]),
    mask(&[1, 2, 3, 4, 5, 6, 7, 9]),
    mask(&[1, 2, 3, 4, 5, 6, 7, 8, 9]),
    mask(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]),
    mask(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]),
    mask(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13]),
];

/// Whether block `j0` (0-based) holds for the given head values.
/// `swap` selects the lowering family (weak targets become strict).
pub(crate) fn holds_weak_strict(heads: &[i64; 14], j0: usize, swap: bool) -> bool {
    let weak = WEAK_TARGETS[j0];
    for i0 in 0..14 {
        if i0 == j0 {
            continue;
        }
        let weak_target = weak & (1 << i0) != 0;
        let ok = if weak_target != swap {
            heads[j0] >= heads[i0]
        } else {
            heads[j0] > heads[i0]
        };
        if !ok {
            return false;
        }
    }
    true
}

/// The fourteen head quantities, in block order.
pub(crate) fn condition_heads(b: &CrystalElement) -> [i64; 14] {
    let g = |i, j| b.get(i, j);
    [
        -g(1, 3) - g(1, 4) - g(1, 5) + g(2, 2),
        -g(1, 3) - g(1, 4) - g(2, 3) - g(2, 4) + g(3, 3) + g(3, 4) + g(3, 5),
        -g(1, 3) - g(1, 4) - g(2, 3) + g(3, 3) + g(3, 4),
        -g(1, 3) - g(2, 3) - g(2, 5) + g(3, 3) + g(3, 4),
        -g(1, 3) - g(1, 4) + g(3, 3),
        -g(1, 3) - g(2, 3) + g(4, 4) + g(4, 5),
        -g(1, 3) - g(2, 5) + g(3, 3),
        -g(2, 4) - g(2, 5) + g(3, 3),
        -g(1, 3) - g(3, 4) + g(4, 4) + g(4, 5),
        -g(1, 3) + g(4, 4),
        -g(2, 4) - g(3, 4) + g(4, 4) + g(4, 5),
        -g(2, 4) + g(4, 4),
        -g(3, 5) + g(4, 4),
        g(5, 5),
    ]
}

/// Evaluates all fourteen blocks of the requested family on `b` and
/// returns the unique holding block (1-based). All blocks are checked so
/// that a transcription slip or an element outside the intended domain
/// surfaces as a [`ConditionFault`] instead of a wrong branch.
pub fn select_condition(
    b: &CrystalElement,
    family: ConditionFamily,
) -> Result<usize, ConditionFault> {
    let heads = condition_heads(b);
    let swap = matches!(family, ConditionFamily::F);
    let holding: Vec<usize> = (0..14)
        .filter(|&j0| holds_weak_strict(&heads, j0, swap))
        .map(|j0| j0 + 1)
        .collect();
    match holding.as_slice() {
        [j] => Ok(*j),
        _ => Err(ConditionFault {
            context: match family {
                ConditionFamily::E => "raising-condition select",
                ConditionFamily::F => "lowering-condition select",
            },
            holding,
        }),
    }
}
