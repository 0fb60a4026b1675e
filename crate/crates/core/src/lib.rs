//! Exact decision procedures for equivariant forms of spherical homogeneous
//! spaces and spherical embeddings over the reals, p-adic fields and number
//! fields.
//!
//! The layers build on each other bottom-up:
//!
//! * [`lattice`]: Hermite/Smith normal forms, lattices, finitely generated
//!   abelian groups with endomorphisms.
//! * [`rootdata`]: Cartan matrices, `P`, `Q`, diagram automorphisms.
//! * [`galois`]: finite Galois actions, Tate cohomology of cyclic groups,
//!   Brauer characters.
//! * [`spherical`], [`horospherical`], [`embeddings`]: the combinatorial
//!   invariants and their Galois stability.
//! * [`decision`]: verdicts, plus a catalog of real and p-adic forms.
//! * [`cli`]: problem files and reports.

pub mod cli;
pub mod decision;
pub mod embeddings;
pub mod error;
pub mod galois;
pub mod horospherical;
pub mod lattice;
pub mod matrix;
pub mod polyhedral;
pub mod rootdata;
pub mod scalar;
pub mod spherical;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use error::{Error, Result};
pub use matrix::Matrix;

/// Arbitrary-precision integer used by every exact layer.
pub type Int = BigInt;
/// Arbitrary-precision rational.
pub type Rat = BigRational;
pub type IntMatrix = Matrix<Int>;
pub type RatMatrix = Matrix<Rat>;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn ivec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn imat(cols: usize, rows: &[&[i64]]) -> IntMatrix {
    let rows: Vec<Vec<Int>> = rows.iter().map(|r| ivec(r)).collect();
    Matrix::from_rows(cols, &rows).expect("ragged literal matrix")
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_of(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}
