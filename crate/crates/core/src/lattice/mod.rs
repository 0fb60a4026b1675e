//! Exact integer linear algebra: lattices in `ℤ^n`, finitely generated
//! abelian groups and homomorphisms between them.
//!
//! Vectors are rows and matrices act on the right: `x ↦ x·A`.

mod group;
mod normal_form;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{Int, IntMatrix, Matrix};

pub use group::{FgAbelianGroup, GroupHom, LatticeQuotient};
pub use normal_form::{determinant, hnf, left_kernel, snf, Hermite, Smith};

/// A sublattice of `ℤ^n`, stored by its row-style Hermite basis.
///
/// Two lattices are equal iff their bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn from_matrix(m: &IntMatrix) -> Self {
        let h = hnf(m);
        let keep: Vec<usize> = (0..h.rank).collect();
        Lattice {
            ambient: m.cols(),
            basis: h.h.select_rows(&keep),
            pivots: h.pivots,
        }
    }

    pub fn from_generators(ambient: usize, gens: &[Vec<Int>]) -> Result<Self> {
        Ok(Self::from_matrix(&Matrix::from_rows(ambient, gens)?))
    }

    pub fn full(n: usize) -> Self {
        Self::from_matrix(&Matrix::identity(n))
    }

    pub fn zero(n: usize) -> Self {
        Self::from_matrix(&Matrix::zeros(0, n))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vecs(&self) -> Vec<Vec<Int>> {
        self.basis.row_vecs()
    }

    fn check_dim(&self, v: &[Int]) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Coefficients of `v` in the stored basis, or `None` if `v ∉ L`.
    pub fn coordinates(&self, v: &[Int]) -> Result<Option<Vec<Int>>> {
        self.check_dim(v)?;
        let mut r = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        for (k, &p) in self.pivots.iter().enumerate() {
            let pivot = &self.basis[(k, p)];
            let (c, rem) = r[p].div_rem(pivot);
            if !rem.is_zero() {
                return Ok(None);
            }
            if !c.is_zero() {
                for (j, x) in r.iter_mut().enumerate() {
                    *x -= &c * &self.basis[(k, j)];
                }
            }
            coeffs.push(c);
        }
        if r.iter().all(|x| x.is_zero()) {
            Ok(Some(coeffs))
        } else {
            Ok(None)
        }
    }

    pub fn contains(&self, v: &[Int]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// `Σ cᵢ bᵢ` for coefficients in the stored basis.
    pub fn combine(&self, coeffs: &[Int]) -> Result<Vec<Int>> {
        self.basis.left_apply(coeffs)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> Result<bool> {
        for row in self.basis.row_vecs() {
            if !other.contains(&row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        Ok(Self::from_matrix(&self.basis.vstack(&other.basis)?))
    }

    pub fn scaled(&self, k: &Int) -> Lattice {
        Self::from_matrix(&self.basis.map(|x| x * k))
    }

    pub fn intersection(&self, other: &Lattice) -> Result<Lattice> {
        let neg = other.basis.map(|x| -x);
        let ker = left_kernel(&self.basis.vstack(&neg)?);
        let coeffs = ker.select_cols(&(0..self.rank()).collect::<Vec<_>>());
        Ok(Self::from_matrix(&coeffs.mul(&self.basis)?))
    }

    /// The lattice `{x·A : x ∈ L}`.
    pub fn image(&self, a: &IntMatrix) -> Result<Lattice> {
        if a.rows() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: a.rows(),
            });
        }
        Ok(Self::from_matrix(&self.basis.mul(a)?))
    }

    pub fn is_stable(&self, a: &IntMatrix) -> Result<bool> {
        Ok(&self.image(a)? == self)
    }

    /// Saturation `(L ⊗ ℚ) ∩ ℤ^n`.
    pub fn saturation(&self) -> Lattice {
        // vectors orthogonal to everything orthogonal to L
        let kernel_cols = left_kernel(&self.basis.transpose());
        let sat = left_kernel(&kernel_cols.transpose());
        Self::from_matrix(&sat)
    }

    pub fn is_saturated(&self) -> bool {
        &self.saturation() == self
    }
}

/// Membership of `v` in `l`.
pub fn lattice_membership(v: &[Int], l: &Lattice) -> Result<bool> {
    l.contains(v)
}

/// `{x ∈ L : x·g = x for every generator g}`.
pub fn fixed_sublattice(l: &Lattice, action: &[IntMatrix]) -> Result<Lattice> {
    let n = l.ambient_rank();
    let id = IntMatrix::identity(n);
    let mut stacked: Option<IntMatrix> = None;
    for (i, g) in action.iter().enumerate() {
        if g.rows() != n || g.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.rows(),
            });
        }
        if !l.is_stable(g)? {
            return Err(Error::NotStable(format!("generator {i} moves the lattice")));
        }
        let block = l.basis().mul(&g.sub(&id)?)?;
        stacked = Some(match stacked {
            None => block,
            Some(s) => s.hstack(&block)?,
        });
    }
    let Some(stacked) = stacked else {
        return Ok(l.clone());
    };
    let ker = left_kernel(&stacked);
    Ok(Lattice::from_matrix(&ker.mul(l.basis())?))
}

/// `x·g` for a row vector.
pub fn act(x: &[Int], g: &IntMatrix) -> Result<Vec<Int>> {
    g.left_apply(x)
}

/// `Σ_{i<n} g^i`.
pub fn norm_matrix(g: &IntMatrix, n: usize) -> Result<IntMatrix> {
    let mut acc = IntMatrix::zeros(g.rows(), g.cols());
    let mut power = IntMatrix::identity(g.rows());
    for _ in 0..n {
        acc = add(&acc, &power)?;
        power = power.mul(g)?;
    }
    Ok(acc)
}

pub fn add(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    let neg = b.map(|x| -x);
    a.sub(&neg)
}

/// `g^k`.
pub fn power(g: &IntMatrix, k: usize) -> Result<IntMatrix> {
    let mut out = IntMatrix::identity(g.rows());
    for _ in 0..k {
        out = out.mul(g)?;
    }
    Ok(out)
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let h = hnf(m);
    if !h.h.is_identity() {
        return Err(Error::Internal("matrix is not unimodular".into()));
    }
    Ok(h.u)
}

pub fn gcd_all(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

pub fn is_primitive(v: &[Int]) -> bool {
    gcd_all(v).is_one()
}
