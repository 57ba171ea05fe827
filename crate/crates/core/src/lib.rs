//! Exact-arithmetic models of the spin-node perfect crystals for affine
//! D6, the limit of their coherent family, and the ultra-discretized
//! geometric crystal on the rank-15 integer lattice, together with the
//! isomorphism between the two and machine verification of the claims at
//! desk scale.

pub mod coherent;
pub mod crystal;
pub mod explore;
pub mod lattice;
pub mod trop;
pub mod ud;
pub mod verify;
