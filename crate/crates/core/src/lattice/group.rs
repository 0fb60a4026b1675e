use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::{left_kernel, snf, unimodular_inverse, Lattice};
use crate::error::{Error, Result};
use crate::{Int, IntMatrix};

/// `ℤ^n / rowspace(R)`, presented through its Smith form.
///
/// Elements are vectors in Smith coordinates: one entry per non-unit
/// invariant factor, reduced modulo that factor (factor 0 means `ℤ`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FgAbelianGroup {
    ngens: usize,
    relations: IntMatrix,
    q: IntMatrix,
    q_inv: IntMatrix,
    factors: Vec<Int>,
    kept: Vec<usize>,
}

impl FgAbelianGroup {
    pub fn new(ngens: usize, relations: IntMatrix) -> Result<Self> {
        if relations.cols() != ngens {
            return Err(Error::DimensionMismatch {
                expected: ngens,
                found: relations.cols(),
            });
        }
        let s = snf(&relations);
        let mut kept = Vec::new();
        let mut factors = Vec::new();
        for j in 0..ngens {
            let d = if j < s.rank {
                s.d[(j, j)].clone()
            } else {
                Int::zero()
            };
            if !d.is_one() {
                kept.push(j);
                factors.push(d);
            }
        }
        let q_inv = unimodular_inverse(&s.q)?;
        Ok(FgAbelianGroup {
            ngens,
            relations,
            q: s.q,
            q_inv,
            factors,
            kept,
        })
    }

    /// `⊕ ℤ/dᵢ` directly.
    pub fn cyclic_sum(factors: &[Int]) -> Result<Self> {
        let rel = IntMatrix::diagonal(factors);
        Self::new(factors.len(), rel)
    }

    pub fn presentation(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn presentation_rank(&self) -> usize {
        self.ngens
    }

    /// Invariant factors of the non-trivial cyclic summands, `0` encoding `ℤ`.
    pub fn invariant_factors(&self) -> &[Int] {
        &self.factors
    }

    pub fn ngens(&self) -> usize {
        self.factors.len()
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> Option<Int> {
        if !self.is_finite() {
            return None;
        }
        Some(self.factors.iter().fold(Int::one(), |acc, d| acc * d))
    }

    pub fn zero(&self) -> Vec<Int> {
        vec![Int::zero(); self.ngens()]
    }

    pub fn generator(&self, k: usize) -> Vec<Int> {
        let mut e = self.zero();
        e[k] = Int::one();
        self.reduce(&e)
    }

    pub fn reduce(&self, e: &[Int]) -> Vec<Int> {
        e.iter()
            .zip(&self.factors)
            .map(|(x, d)| if d.is_zero() { x.clone() } else { x.mod_floor(d) })
            .collect()
    }

    pub fn is_zero(&self, e: &[Int]) -> bool {
        self.reduce(e).iter().all(|x| x.is_zero())
    }

    pub fn add(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        let s: Vec<Int> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, a: &[Int]) -> Vec<Int> {
        let s: Vec<Int> = a.iter().map(|x| -x).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, a: &[Int], k: &Int) -> Vec<Int> {
        let s: Vec<Int> = a.iter().map(|x| x * k).collect();
        self.reduce(&s)
    }

    /// Order of an element, `None` for infinite order.
    pub fn element_order(&self, e: &[Int]) -> Option<Int> {
        let e = self.reduce(e);
        let mut order = Int::one();
        for (x, d) in e.iter().zip(&self.factors) {
            if x.is_zero() {
                continue;
            }
            if d.is_zero() {
                return None;
            }
            order = order.lcm(&(d / d.gcd(x)));
        }
        Some(order)
    }

    /// Class of a vector of the presentation's `ℤ^n`.
    pub fn element_of(&self, x: &[Int]) -> Result<Vec<Int>> {
        let y = self.q.left_apply(x)?;
        Ok(self.reduce(&self.kept.iter().map(|&j| y[j].clone()).collect::<Vec<_>>()))
    }

    /// A representative in the presentation's `ℤ^n`.
    pub fn lift(&self, e: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); self.ngens];
        for (k, &j) in self.kept.iter().enumerate() {
            if e[k].is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                *o += &e[k] * &self.q_inv[(j, i)];
            }
        }
        out
    }

    /// All elements of a finite group in lexicographic order.
    pub fn elements(&self) -> Result<Vec<Vec<Int>>> {
        if !self.is_finite() {
            return Err(Error::Precondition("cannot enumerate an infinite group".into()));
        }
        let mut out = vec![Vec::new()];
        for d in &self.factors {
            let mut next = Vec::new();
            for prefix in &out {
                let mut x = Int::zero();
                while &x < d {
                    let mut e = prefix.clone();
                    e.push(x.clone());
                    next.push(e);
                    x += 1;
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Matrix (on Smith coordinates) of the endomorphism induced by `x ↦ x·e`
    /// on the presentation space. Fails if the relations are not preserved.
    pub fn induced_endomorphism(&self, e: &IntMatrix) -> Result<IntMatrix> {
        if e.rows() != self.ngens || e.cols() != self.ngens {
            return Err(Error::DimensionMismatch {
                expected: self.ngens,
                found: e.rows(),
            });
        }
        for (i, r) in self.relations.row_vecs().iter().enumerate() {
            if !self.is_zero(&self.element_of(&e.left_apply(r)?)?) {
                return Err(Error::IllDefinedAction(format!(
                    "relation {i} is not mapped to a relation"
                )));
            }
        }
        let rows: Vec<Vec<Int>> = (0..self.ngens())
            .map(|k| self.element_of(&e.left_apply(&self.lift(&self.generator(k)))?))
            .collect::<Result<_>>()?;
        IntMatrix::from_rows(self.ngens(), &rows)
    }

    /// Apply a Smith-coordinate endomorphism matrix.
    pub fn apply_endomorphism(&self, m: &IntMatrix, e: &[Int]) -> Result<Vec<Int>> {
        Ok(self.reduce(&m.left_apply(e)?))
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|d| {
                if d.is_zero() {
                    "ℤ".to_string()
                } else {
                    format!("ℤ/{d}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// `L / S` for lattices `S ⊆ L` in a common `ℤ^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeQuotient {
    outer: Lattice,
    inner: Lattice,
    group: FgAbelianGroup,
}

impl LatticeQuotient {
    pub fn new(outer: Lattice, inner: Lattice) -> Result<Self> {
        if outer.ambient_rank() != inner.ambient_rank() {
            return Err(Error::DimensionMismatch {
                expected: outer.ambient_rank(),
                found: inner.ambient_rank(),
            });
        }
        let mut rows = Vec::with_capacity(inner.rank());
        for b in inner.basis_vecs() {
            match outer.coordinates(&b)? {
                Some(c) => rows.push(c),
                None => {
                    return Err(Error::NotSubset(format!("{b:?} is not in the outer lattice")))
                }
            }
        }
        let relations = IntMatrix::from_rows(outer.rank(), &rows)?;
        let group = FgAbelianGroup::new(outer.rank(), relations)?;
        Ok(LatticeQuotient {
            outer,
            inner,
            group,
        })
    }

    pub fn outer(&self) -> &Lattice {
        &self.outer
    }

    pub fn inner(&self) -> &Lattice {
        &self.inner
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn ambient_rank(&self) -> usize {
        self.outer.ambient_rank()
    }

    /// Class of an ambient vector of the outer lattice.
    pub fn class_of(&self, v: &[Int]) -> Result<Vec<Int>> {
        match self.outer.coordinates(v)? {
            Some(c) => self.group.element_of(&c),
            None => Err(Error::NotSubset(format!("{v:?} is not in the outer lattice"))),
        }
    }

    /// Ambient representative of a class.
    pub fn lift(&self, e: &[Int]) -> Result<Vec<Int>> {
        self.outer.combine(&self.group.lift(e))
    }

    /// Ambient representatives of the Smith generators.
    pub fn generator_lifts(&self) -> Result<Vec<Vec<Int>>> {
        (0..self.group.ngens())
            .map(|k| self.lift(&self.group.generator(k)))
            .collect()
    }

    fn check_action(&self, g: &IntMatrix) -> Result<()> {
        if !self.outer.image(g)?.is_sublattice_of(&self.outer)? {
            return Err(Error::NotStable("outer lattice is moved".into()));
        }
        if !self.inner.image(g)?.is_sublattice_of(&self.inner)? {
            return Err(Error::IllDefinedAction("inner lattice is moved".into()));
        }
        Ok(())
    }

    /// Matrix on Smith coordinates induced by an ambient action `x ↦ x·g`.
    pub fn induced(&self, g: &IntMatrix) -> Result<IntMatrix> {
        self.check_action(g)?;
        let rows: Vec<Vec<Int>> = self
            .generator_lifts()?
            .iter()
            .map(|v| self.class_of(&g.left_apply(v)?))
            .collect::<Result<_>>()?;
        IntMatrix::from_rows(self.group.ngens(), &rows)
    }

    /// `{x ∈ L : x·g − x ∈ S for every g}`, the lattice whose image is the
    /// subgroup of invariants.
    pub fn invariant_lattice(&self, actions: &[IntMatrix]) -> Result<Lattice> {
        let n = self.ambient_rank();
        let r = self.outer.rank();
        let s = self.inner.rank();
        if actions.is_empty() {
            return Ok(self.outer.clone());
        }
        let id = IntMatrix::identity(n);
        let k = actions.len();
        // unknowns (y, z_1..z_k): y·B(g_i − 1) − z_i·S = 0
        let mut top: Option<IntMatrix> = None;
        for g in actions {
            self.check_action(g)?;
            let block = self.outer.basis().mul(&g.sub(&id)?)?;
            top = Some(match top {
                None => block,
                Some(t) => t.hstack(&block)?,
            });
        }
        let mut m = top.expect("nonempty");
        let neg_inner = self.inner.basis().map(|x| -x);
        for i in 0..k {
            let mut row_block = IntMatrix::zeros(s, n * k);
            for a in 0..s {
                for b in 0..n {
                    row_block[(a, i * n + b)] = neg_inner[(a, b)].clone();
                }
            }
            m = m.vstack(&row_block)?;
        }
        let ker = left_kernel(&m);
        let y = ker.select_cols(&(0..r).collect::<Vec<_>>());
        let fixed = Lattice::from_matrix(&y.mul(self.outer.basis())?);
        fixed.sum(&self.inner)
    }

    /// The subgroup of invariants, as a quotient of the same inner lattice.
    pub fn invariants(&self, actions: &[IntMatrix]) -> Result<LatticeQuotient> {
        LatticeQuotient::new(self.invariant_lattice(actions)?, self.inner.clone())
    }

    /// `(image of L under x ↦ x·n) + S`.
    pub fn image_lattice(&self, n: &IntMatrix) -> Result<Lattice> {
        self.outer.image(n)?.sum(&self.inner)
    }

    /// Subgroup generated by the classes of the given outer-lattice vectors.
    pub fn subgroup(&self, gens: &[Vec<Int>]) -> Result<LatticeQuotient> {
        for g in gens {
            if !self.outer.contains(g)? {
                return Err(Error::NotSubset(format!("{g:?} is not in the outer lattice")));
            }
        }
        let l = Lattice::from_generators(self.ambient_rank(), gens)?.sum(&self.inner)?;
        LatticeQuotient::new(l, self.inner.clone())
    }

    /// Inclusion of a sub-quotient `F/S ↪ L/S` (same inner lattice).
    pub fn inclusion_from(&self, sub: &LatticeQuotient) -> Result<GroupHom> {
        GroupHom::new(
            sub.clone(),
            self.clone(),
            IntMatrix::identity(self.ambient_rank()),
        )
    }
}

impl fmt::Display for LatticeQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.group)
    }
}

/// A homomorphism `L/S → L'/S'` induced by an ambient linear map `x ↦ x·F`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupHom {
    source: LatticeQuotient,
    target: LatticeQuotient,
    ambient: IntMatrix,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Checks `L·F ⊆ L'` and `S·F ⊆ S'` before building the matrix on Smith
    /// generators.
    pub fn new(source: LatticeQuotient, target: LatticeQuotient, ambient: IntMatrix) -> Result<Self> {
        if ambient.rows() != source.ambient_rank() || ambient.cols() != target.ambient_rank() {
            return Err(Error::DimensionMismatch {
                expected: source.ambient_rank(),
                found: ambient.rows(),
            });
        }
        for b in source.outer().basis_vecs() {
            let img = ambient.left_apply(&b)?;
            if !target.outer().contains(&img)? {
                return Err(Error::IllDefinedHom(format!(
                    "{b:?} maps outside the target lattice"
                )));
            }
        }
        for b in source.inner().basis_vecs() {
            let img = ambient.left_apply(&b)?;
            if !target.inner().contains(&img)? {
                return Err(Error::IllDefinedHom(format!(
                    "relation {b:?} does not map to a relation"
                )));
            }
        }
        let rows: Vec<Vec<Int>> = source
            .generator_lifts()?
            .iter()
            .map(|v| target.class_of(&ambient.left_apply(v)?))
            .collect::<Result<_>>()?;
        let matrix = IntMatrix::from_rows(target.group().ngens(), &rows)?;
        Ok(GroupHom {
            source,
            target,
            ambient,
            matrix,
        })
    }

    pub fn source(&self) -> &LatticeQuotient {
        &self.source
    }

    pub fn target(&self) -> &LatticeQuotient {
        &self.target
    }

    pub fn ambient(&self) -> &IntMatrix {
        &self.ambient
    }

    /// Rows are the images of the source's Smith generators.
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, e: &[Int]) -> Result<Vec<Int>> {
        Ok(self.target.group().reduce(&self.matrix.left_apply(e)?))
    }

    /// Images of the source generators, in target Smith coordinates.
    pub fn generator_images(&self) -> Vec<Vec<Int>> {
        self.matrix.row_vecs()
    }

    /// The image subgroup, as a quotient of the target's inner lattice.
    pub fn image(&self) -> Result<LatticeQuotient> {
        let l = self.source.outer().image(&self.ambient)?.sum(self.target.inner())?;
        LatticeQuotient::new(l, self.target.inner().clone())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix
            .row_vecs()
            .iter()
            .all(|r| self.target.group().is_zero(r))
    }

    pub fn compose(&self, next: &GroupHom) -> Result<GroupHom> {
        GroupHom::new(
            self.source.clone(),
            next.target.clone(),
            self.ambient.mul(&next.ambient)?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{imat, int, ivec};

    fn cartan_a(n: usize) -> IntMatrix {
        let mut c = IntMatrix::zeros(n, n);
        for i in 0..n {
            c[(i, i)] = int(2);
            if i + 1 < n {
                c[(i, i + 1)] = int(-1);
                c[(i + 1, i)] = int(-1);
            }
        }
        c
    }

    fn flip(n: usize) -> IntMatrix {
        let mut g = IntMatrix::zeros(n, n);
        for i in 0..n {
            g[(i, n - 1 - i)] = int(1);
        }
        g
    }

    #[test]
    fn p_mod_q_of_a5_is_cyclic_of_order_6() {
        let pq = LatticeQuotient::new(Lattice::full(5), Lattice::from_matrix(&cartan_a(5))).unwrap();
        assert_eq!(pq.group().invariant_factors(), &[int(6)]);
        assert_eq!(pq.to_string(), "ℤ/6");
        let w1 = pq.class_of(&ivec(&[1, 0, 0, 0, 0])).unwrap();
        assert_eq!(pq.group().element_order(&w1), Some(int(6)));
    }

    #[test]
    fn flip_invariants_of_a5_center() {
        let pq = LatticeQuotient::new(Lattice::full(5), Lattice::from_matrix(&cartan_a(5))).unwrap();
        let g = flip(5);
        let m = pq.induced(&g).unwrap();
        let w1 = pq.class_of(&ivec(&[1, 0, 0, 0, 0])).unwrap();
        let img = pq.group().apply_endomorphism(&m, &w1).unwrap();
        assert_eq!(img, pq.group().neg(&w1));
        let inv = pq.invariants(&[g]).unwrap();
        assert_eq!(inv.group().order(), Some(int(2)));
        let w3 = ivec(&[0, 0, 1, 0, 0]);
        assert!(inv.outer().contains(&w3).unwrap());
        let incl = pq.inclusion_from(&inv).unwrap();
        let image = incl.apply(&inv.group().generator(0)).unwrap();
        assert_eq!(pq.group().element_order(&image), Some(int(2)));
    }

    #[test]
    fn sl3_sl2_quotient_is_free_and_flip_invariants_vanish() {
        let x = Lattice::full(2);
        let s = Lattice::from_generators(2, &[ivec(&[1, 1])]).unwrap();
        let quo = LatticeQuotient::new(x, s).unwrap();
        assert_eq!(quo.group().invariant_factors(), &[int(0)]);
        let inv = quo.invariants(&[imat(2, &[&[0, 1], &[1, 0]])]).unwrap();
        assert!(inv.group().is_trivial());
    }

    #[test]
    fn trivial_quotient_and_subset_check() {
        let l = Lattice::full(3);
        assert!(LatticeQuotient::new(l.clone(), l.clone()).unwrap().group().is_trivial());
        let small = Lattice::from_generators(3, &[ivec(&[2, 0, 0])]).unwrap();
        assert!(LatticeQuotient::new(small, l).is_err());
    }

    #[test]
    fn ill_defined_action_is_rejected() {
        let g = FgAbelianGroup::cyclic_sum(&[int(2), int(3)]).unwrap();
        let swap = imat(2, &[&[0, 1], &[1, 0]]);
        assert!(g.induced_endomorphism(&swap).is_err());
        let neg = imat(2, &[&[-1, 0], &[0, -1]]);
        assert!(g.induced_endomorphism(&neg).is_ok());
    }

    #[test]
    fn hom_rejects_relations_outside_target() {
        // Z/4 -> Z/2 by identity is fine, Z/2 -> Z/4 by identity is not
        let z4 = LatticeQuotient::new(Lattice::full(1), Lattice::from_generators(1, &[ivec(&[4])]).unwrap()).unwrap();
        let z2 = LatticeQuotient::new(Lattice::full(1), Lattice::from_generators(1, &[ivec(&[2])]).unwrap()).unwrap();
        assert!(GroupHom::new(z4.clone(), z2.clone(), imat(1, &[&[1]])).is_ok());
        assert!(GroupHom::new(z2.clone(), z4.clone(), imat(1, &[&[1]])).is_err());
        let doubling = GroupHom::new(z2, z4, imat(1, &[&[2]])).unwrap();
        assert_eq!(doubling.apply(&ivec(&[1])).unwrap(), ivec(&[2]));
    }
}
