//! Fixed Cartan data for affine D6 and arithmetic on the classical weight
//! lattice spanned by the fundamental weights Λ_0..Λ_6.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A Dynkin node index in `0..=6`.
///
/// Node 2 is the branch node adjacent to 0 and 1; node 4 is adjacent to 5
/// and 6 (the spin node).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node(u8);

impl Node {
    /// All seven nodes in index order.
    pub const ALL: [Node; 7] = [
        Node(0),
        Node(1),
        Node(2),
        Node(3),
        Node(4),
        Node(5),
        Node(6),
    ];

    pub fn new(k: u8) -> Option<Node> {
        (k <= 6).then_some(Node(k))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<usize> for Node {
    type Error = BadNode;

    fn try_from(k: usize) -> Result<Node, BadNode> {
        u8::try_from(k).ok().and_then(Node::new).ok_or(BadNode(k))
    }
}

/// Node index outside `0..=6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("node index {0} out of range 0..=6")]
pub struct BadNode(pub usize);

/// Coefficients of the canonical central element on the simple coroots.
pub const CENTRAL: [i64; 7] = [1, 1, 2, 2, 2, 1, 1];

/// Coefficients of the null root on the simple roots (equal to `CENTRAL`
/// here since the algebra is self-dual).
pub const NULL_ROOT: [i64; 7] = [1, 1, 2, 2, 2, 1, 1];

/// The symmetric Cartan matrix: 2 on the diagonal, -1 on the edges
/// 1-2-3-4, 0-2 and 4-5, 4-6, zero elsewhere.
pub const CARTAN: [[i64; 7]; 7] = [
    [2, 0, -1, 0, 0, 0, 0],
    [0, 2, -1, 0, 0, 0, 0],
    [-1, -1, 2, -1, 0, 0, 0],
    [0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, -1, 2, -1, -1],
    [0, 0, 0, 0, -1, 2, 0],
    [0, 0, 0, 0, -1, 0, 2],
];

/// The full Cartan datum as one value, for callers that want to pass it
/// around rather than use the free functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub a: [[i64; 7]; 7],
    pub cvee: [i64; 7],
    pub dcoef: [i64; 7],
}

impl CartanData {
    pub const fn d6_affine() -> CartanData {
        CartanData {
            a: CARTAN,
            cvee: CENTRAL,
            dcoef: NULL_ROOT,
        }
    }
}

/// Entry `a_{jk}` of the fixed Cartan matrix.
pub fn cartan_entry(j: Node, k: Node) -> i64 {
    CARTAN[j.index()][k.index()]
}

/// An element of the classical weight lattice, stored as coefficients of
/// Λ_0..Λ_6. The null-root component is never tracked.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub [i64; 7]);

impl WeightVector {
    pub const ZERO: WeightVector = WeightVector([0; 7]);

    /// The fundamental weight Λ_k.
    pub fn fundamental(k: Node) -> WeightVector {
        let mut lam = [0; 7];
        lam[k.index()] = 1;
        WeightVector(lam)
    }

    pub fn component(&self, k: Node) -> i64 {
        self.0[k.index()]
    }

    /// Pairing with the simple coroot of `k`, a Kronecker delta on the
    /// fundamental weights.
    pub fn coroot_pairing(&self, k: Node) -> i64 {
        self.0[k.index()]
    }
}

impl Add for WeightVector {
    type Output = WeightVector;

    fn add(self, rhs: WeightVector) -> WeightVector {
        WeightVector(std::array::from_fn(|k| self.0[k] + rhs.0[k]))
    }
}

impl Sub for WeightVector {
    type Output = WeightVector;

    fn sub(self, rhs: WeightVector) -> WeightVector {
        WeightVector(std::array::from_fn(|k| self.0[k] - rhs.0[k]))
    }
}

impl Neg for WeightVector {
    type Output = WeightVector;

    fn neg(self) -> WeightVector {
        WeightVector(std::array::from_fn(|k| -self.0[k]))
    }
}

/// The level of a weight: its pairing with the canonical central element.
pub fn level_of(w: &WeightVector) -> i64 {
    (0..7).map(|k| CENTRAL[k] * w.0[k]).sum()
}
