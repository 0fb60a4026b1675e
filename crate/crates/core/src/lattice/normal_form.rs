//! Row-style Hermite normal form and Smith normal form over a Euclidean ring.

use crate::matrix::Matrix;
use crate::scalar::IntScalar;

/// Result of [`hnf`]: `u · m = h` with `u` unimodular.
#[derive(Clone, Debug)]
pub struct Hermite<T> {
    pub h: Matrix<T>,
    pub u: Matrix<T>,
    /// Number of nonzero rows of `h`.
    pub rank: usize,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
}

/// Result of [`snf`]: `p · m · q = d` with `p`, `q` unimodular and
/// `d₁ | d₂ | …` along the diagonal.
#[derive(Clone, Debug)]
pub struct Smith<T> {
    pub d: Matrix<T>,
    pub p: Matrix<T>,
    pub q: Matrix<T>,
    pub rank: usize,
}

impl<T: IntScalar> Smith<T> {
    /// Diagonal entries `d_i` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

/// Row-style Hermite normal form: pivots strictly increase left to right,
/// pivots are positive, entries above a pivot lie in `[0, pivot)`, and zero
/// rows are at the bottom.
pub fn hnf<T: IntScalar>(m: &Matrix<T>) -> Hermite<T> {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = Matrix::<T>::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()));
            let Some(best) = best else { break };
            h.swap_rows(r, best);
            u.swap_rows(r, best);
            let mut clean = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let k = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &k);
                u.add_row_multiple(i, r, &k);
                if !h[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let k = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &k);
            u.add_row_multiple(i, r, &k);
        }
        pivots.push(c);
        r += 1;
    }
    Hermite {
        h,
        u,
        rank: r,
        pivots,
    }
}

/// Rows spanning the integral left kernel `{y : y · m = 0}` (a saturated
/// sublattice of `ℤ^rows`).
pub fn left_kernel<T: IntScalar>(m: &Matrix<T>) -> Matrix<T> {
    let herm = hnf(m);
    let keep: Vec<usize> = (herm.rank..m.rows()).collect();
    herm.u.select_rows(&keep)
}

/// Smith normal form by elimination with minimal-absolute-value pivoting.
pub fn snf<T: IntScalar>(m: &Matrix<T>) -> Smith<T> {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut p = Matrix::<T>::identity(rows);
    let mut q = Matrix::<T>::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let mut found_any = false;
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => d[(i, j)].abs() < d[(bi, bj)].abs(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            found_any = true;
            d.swap_rows(t, bi);
            p.swap_rows(t, bi);
            d.swap_cols(t, bj);
            q.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let k = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &k);
                p.add_row_multiple(i, t, &k);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let k = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &k);
                q.add_col_multiple(j, t, &k);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row and retry
            let offending = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)]))
            });
            match offending {
                Some(i) => {
                    let one = T::one();
                    d.add_row_multiple(t, i, &one);
                    p.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if !found_any {
            break;
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            p.negate_row(t);
        }
        t += 1;
    }
    Smith { d, p, q, rank: t }
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant<T: IntScalar>(m: &Matrix<T>) -> T {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return T::zero();
            };
            a.swap_rows(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a[(i, j)].clone() * a[(k, k)].clone()
                    - a[(i, k)].clone() * a[(k, j)].clone())
                    / prev.clone();
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    if n == 0 {
        return T::one();
    }
    sign * a[(n - 1, n - 1)].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[&[i64]]) -> Matrix<i64> {
        Matrix::from_rows(cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn hnf_identity_and_diagonal() {
        let id = Matrix::<i64>::identity(3);
        let h = hnf(&id);
        assert_eq!(h.h, id);
        assert_eq!(h.u, id);
        let d = m(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(hnf(&d).h, d);
    }

    #[test]
    fn hnf_single_row_takes_gcd_pivot() {
        // a single row has no row operations beyond sign, so [[4,6]] stays put;
        // adding a second generator exposes the gcd
        let h = hnf(&m(2, &[&[4, 6]]));
        assert_eq!(h.h.row(0), &[4, 6]);
        let h = hnf(&m(1, &[&[4], &[6]]));
        assert_eq!(h.h.row_vecs(), vec![vec![2], vec![0]]);
        assert_eq!(h.u.mul(&m(1, &[&[4], &[6]])).unwrap(), h.h);
    }

    #[test]
    fn snf_cartan_a2_and_zero() {
        let c = m(2, &[&[2, -1], &[-1, 2]]);
        let s = snf(&c);
        assert_eq!(s.diagonal(), vec![1, 3]);
        assert_eq!(s.p.mul(&c).unwrap().mul(&s.q).unwrap(), s.d);
        let z = Matrix::<i64>::zeros(2, 2);
        assert_eq!(snf(&z).diagonal(), vec![0, 0]);
    }

    #[test]
    fn left_kernel_is_saturated() {
        let a = m(1, &[&[2], &[4], &[6]]);
        let k = left_kernel(&a);
        assert_eq!(k.rows(), 2);
        for r in k.row_vecs() {
            assert_eq!(a.left_apply(&r).unwrap(), vec![0]);
        }
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&m(2, &[&[2, -1], &[-1, 2]])), 3);
        assert_eq!(determinant(&m(3, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])), -1);
        assert_eq!(determinant(&m(2, &[&[1, 2], &[2, 4]])), 0);
    }

    // Oracle: the k-th determinantal divisor is the gcd of all k×k minors and
    // the invariant factors are the successive quotients.
    fn minors_gcd(m: &Matrix<i64>, k: usize) -> i64 {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for last in (k - 1)..n {
                for mut s in subsets(last, k - 1) {
                    s.push(last);
                    out.push(s);
                }
            }
            out
        }
        let mut g = 0i64;
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let minor = determinant(&m.select_rows(&rs).select_cols(&cs));
                g = num_integer::gcd(g, minor);
            }
        }
        g
    }

    fn naive_invariant_factors(m: &Matrix<i64>) -> Vec<i64> {
        let mut out = Vec::new();
        let mut prev = 1i64;
        for k in 1..=m.rows().min(m.cols()) {
            let dk = minors_gcd(m, k);
            if dk == 0 {
                out.push(0);
                prev = 0;
                continue;
            }
            out.push(dk / prev);
            prev = dk;
        }
        out
    }

    fn small() -> impl proptest::strategy::Strategy<Value = Matrix<i64>> {
        use proptest::prelude::*;
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-5i64..=5, r * c)
                .prop_map(move |data| Matrix::new(r, c, data).unwrap())
        })
    }

    proptest::proptest! {
        #[test]
        fn snf_matches_determinantal_divisors(a in small()) {
            let s = snf(&a);
            proptest::prop_assert_eq!(s.p.mul(&a).unwrap().mul(&s.q).unwrap(), s.d.clone());
            proptest::prop_assert_eq!(determinant(&s.p).abs(), 1);
            proptest::prop_assert_eq!(determinant(&s.q).abs(), 1);
            for i in 0..s.d.rows() {
                for j in 0..s.d.cols() {
                    if i != j {
                        proptest::prop_assert_eq!(s.d[(i, j)], 0);
                    }
                }
            }
            let diag = s.diagonal();
            for w in diag.windows(2) {
                if w[0] != 0 {
                    proptest::prop_assert_eq!(w[1] % w[0], 0);
                } else {
                    proptest::prop_assert_eq!(w[1], 0);
                }
            }
            proptest::prop_assert_eq!(diag, naive_invariant_factors(&a));
        }
    }
}
