//! Exact polyhedral computations: a Phase-I simplex for feasibility of
//! `A·x = b, x ≥ 0`, and cone operations built on it.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::FieldScalar;
use crate::{Int, Rat};

/// Largest ambient dimension accepted by the cone operations.
pub const MAX_DIM: usize = 8;

/// A point of `{x ≥ 0 : A·x = b}`, or `None` if the set is empty.
/// Bland's rule guarantees termination.
pub fn feasible_point<T: FieldScalar>(a: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    let m = a.rows();
    let n = a.cols();
    assert_eq!(b.len(), m, "right-hand side length");
    let width = n + m + 1;
    let last = width - 1;
    let mut t = Matrix::<T>::zeros(m + 1, width);
    for i in 0..m {
        let flip = b[i].is_negative();
        for j in 0..n {
            t[(i, j)] = if flip { -a[(i, j)].clone() } else { a[(i, j)].clone() };
        }
        t[(i, n + i)] = T::one();
        t[(i, last)] = if flip { -b[i].clone() } else { b[i].clone() };
    }
    for j in 0..n {
        let mut s = T::zero();
        for i in 0..m {
            s = s - t[(i, j)].clone();
        }
        t[(m, j)] = s;
    }
    let mut s = T::zero();
    for i in 0..m {
        s = s - t[(i, last)].clone();
    }
    t[(m, last)] = s;
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..last).find(|&j| t[(m, j)].is_negative()) {
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !t[(i, enter)].is_positive() {
                continue;
            }
            let ratio = t[(i, last)].clone() / t[(i, enter)].clone();
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let best = t[(l, last)].clone() / t[(l, enter)].clone();
                    if ratio < best || (ratio == best && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        // the Phase-I objective is bounded below by 0
        let r = leave.expect("phase-one objective is bounded");
        let p = t[(r, enter)].clone();
        for j in 0..width {
            let v = t[(r, j)].clone() / p.clone();
            t[(r, j)] = v;
        }
        for i in 0..=m {
            if i == r || t[(i, enter)].is_zero() {
                continue;
            }
            let k = -t[(i, enter)].clone();
            t.add_row_multiple(i, r, &k);
        }
        basis[r] = enter;
    }
    if !t[(m, last)].is_zero() {
        return None;
    }
    let mut x = vec![T::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[(i, last)].clone();
        }
    }
    Some(x)
}

fn check_dims(gens: &[Vec<Rat>], dim: usize) -> Result<()> {
    if dim > MAX_DIM {
        return Err(Error::DimensionCap(dim));
    }
    for g in gens {
        if g.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.len(),
            });
        }
    }
    Ok(())
}

fn columns(gens: &[Vec<Rat>], dim: usize) -> Matrix<Rat> {
    let mut a = Matrix::zeros(dim, gens.len());
    for (j, g) in gens.iter().enumerate() {
        for i in 0..dim {
            a[(i, j)] = g[i].clone();
        }
    }
    a
}

/// Whether `v ∈ cone(gens)`.
pub fn cone_contains(gens: &[Vec<Rat>], v: &[Rat]) -> Result<bool> {
    let dim = v.len();
    check_dims(gens, dim)?;
    Ok(feasible_point(&columns(gens, dim), v).is_some())
}

/// `cone(gens) ∩ −cone(gens) = {0}`. Zero generators are ignored.
pub fn is_strictly_convex(gens: &[Vec<Rat>], dim: usize) -> Result<bool> {
    check_dims(gens, dim)?;
    let nonzero: Vec<Vec<Rat>> = gens
        .iter()
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    if nonzero.is_empty() {
        return Ok(true);
    }
    // Σλ g = 0 with Σλ = 1 has a solution iff the cone contains a line
    let mut a = columns(&nonzero, dim);
    a = a.vstack(&Matrix::from_rows(nonzero.len(), &[vec![Rat::one(); nonzero.len()]])?)?;
    let mut b = vec![Rat::zero(); dim];
    b.push(Rat::one());
    Ok(feasible_point(&a, &b).is_none())
}

/// Scale a rational vector to the primitive integer vector on its ray.
pub fn primitive_integer(v: &[Rat]) -> Vec<Int> {
    let den = v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Int> = v
        .iter()
        .map(|x| (x * Rat::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn to_rat(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Extreme rays of a strictly convex cone as primitive integer vectors,
/// sorted lexicographically.
pub fn extreme_rays(gens: &[Vec<Rat>], dim: usize) -> Result<Vec<Vec<Int>>> {
    if !is_strictly_convex(gens, dim)? {
        return Err(Error::NotStrictlyConvex);
    }
    let mut rays: Vec<Vec<Int>> = gens
        .iter()
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .map(|g| primitive_integer(g))
        .collect();
    rays.sort();
    rays.dedup();
    let mut keep = Vec::new();
    for (i, r) in rays.iter().enumerate() {
        let others: Vec<Vec<Rat>> = rays
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, o)| to_rat(o))
            .collect();
        if !cone_contains(&others, &to_rat(r))? {
            keep.push(r.clone());
        }
    }
    Ok(keep)
}

/// Whether some `Σ λᵢ gᵢ` with every `λᵢ > 0` satisfies `⟨·, h⟩ ≤ 0` for
/// every `h` in `halfspaces`.
pub fn relative_interior_meets(gens: &[Vec<Rat>], halfspaces: &[Vec<Rat>], dim: usize) -> Result<bool> {
    check_dims(gens, dim)?;
    check_dims(halfspaces, dim)?;
    if halfspaces.is_empty() {
        return Ok(true);
    }
    // λᵢ = 1 + μᵢ, μ ≥ 0, slack s ≥ 0:  Σ μᵢ ⟨gᵢ,h⟩ + s_h = −Σ ⟨gᵢ,h⟩
    let k = gens.len();
    let m = halfspaces.len();
    let mut a = Matrix::<Rat>::zeros(m, k + m);
    let mut b = vec![Rat::zero(); m];
    for (r, h) in halfspaces.iter().enumerate() {
        for (i, g) in gens.iter().enumerate() {
            let p: Rat = g.iter().zip(h).map(|(x, y)| x * y).sum();
            b[r] -= &p;
            a[(r, i)] = p;
        }
        a[(r, k + r)] = Rat::one();
    }
    Ok(feasible_point(&a, &b).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ivec, rat};
    use num_rational::Rational64;

    fn rv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn simplex_generic_over_small_rationals() {
        let a: Matrix<Rational64> = Matrix::from_rows(
            2,
            &[
                vec![Rational64::from(1), Rational64::from(1)],
                vec![Rational64::from(1), Rational64::from(-1)],
            ],
        )
        .unwrap();
        let x = feasible_point(&a, &[Rational64::from(4), Rational64::from(2)]).unwrap();
        assert_eq!(x, vec![Rational64::from(3), Rational64::from(1)]);
        assert!(feasible_point(&a, &[Rational64::from(-1), Rational64::from(0)]).is_none());
    }

    #[test]
    fn canonical_rays() {
        assert_eq!(
            extreme_rays(&[rv(&[1, 0]), rv(&[2, 0])], 2).unwrap(),
            vec![ivec(&[1, 0])]
        );
        assert_eq!(
            extreme_rays(&[rv(&[1, 0]), rv(&[0, 1]), rv(&[1, 1])], 2).unwrap(),
            vec![ivec(&[0, 1]), ivec(&[1, 0])]
        );
        let sl6 = [rv(&[-1, 1, -1]), rv(&[1, 0, 0]), rv(&[0, 0, 1])];
        assert_eq!(extreme_rays(&sl6, 3).unwrap().len(), 3);
        assert!(matches!(
            extreme_rays(&[rv(&[1, 0]), rv(&[-1, 0])], 2),
            Err(Error::NotStrictlyConvex)
        ));
        assert_eq!(
            primitive_integer(&[rat(1, 2), rat(-3, 4)]),
            ivec(&[2, -3])
        );
    }

    #[test]
    fn containment_and_interior() {
        let g = [rv(&[1, 0]), rv(&[0, 1])];
        assert!(cone_contains(&g, &rv(&[2, 3])).unwrap());
        assert!(!cone_contains(&g, &rv(&[-1, 3])).unwrap());
        assert!(cone_contains(&[], &rv(&[0, 0])).unwrap());
        // valuation cone {v : v₁ ≤ 0}
        assert!(relative_interior_meets(&[rv(&[-1, 0]), rv(&[1, 1])], &[rv(&[1, 0])], 2).unwrap());
        assert!(!relative_interior_meets(&[rv(&[1, 0]), rv(&[0, 1])], &[rv(&[1, 0])], 2).unwrap());
        assert!(matches!(
            cone_contains(&[vec![Rat::zero(); 9]], &vec![Rat::zero(); 9]),
            Err(Error::DimensionCap(9))
        ));
    }

    proptest::proptest! {
        #[test]
        fn canonical_form_is_idempotent_and_order_free(
            raw in proptest::collection::vec(proptest::collection::vec(0i64..=4, 3), 1..5),
            scale in 1i64..4,
        ) {
            let gens: Vec<Vec<Rat>> = raw.iter().map(|v| rv(v)).collect();
            let rays = extreme_rays(&gens, 3).unwrap();
            let again: Vec<Vec<Rat>> = rays.iter().map(|r| to_rat(r)).collect();
            proptest::prop_assert_eq!(&extreme_rays(&again, 3).unwrap(), &rays);
            let mut shuffled: Vec<Vec<Rat>> = gens.iter().rev()
                .map(|g| g.iter().map(|x| x * rat(scale, 1)).collect())
                .collect();
            shuffled.rotate_left(1);
            proptest::prop_assert_eq!(extreme_rays(&shuffled, 3).unwrap(), rays);
        }
    }
}
