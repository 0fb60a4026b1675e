//! Horospherical data `(I, M)`: validation, Galois stability and the passage
//! to spherical invariants.

use crate::error::{Error, Result};
use crate::galois::GaloisAction;
use crate::lattice::Lattice;
use crate::rootdata::BasedRootDatum;
use crate::spherical::{Color, SphericalDatum};
use crate::{rat_of, Int};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HorosphericalDatum {
    rd: BasedRootDatum,
    i: Vec<usize>,
    m: Lattice,
}

impl HorosphericalDatum {
    /// `i` holds 0-based node indices. `M` is kept as given, not saturated.
    /// Use [`Self::validate`] for the pairing condition.
    pub fn new(rd: BasedRootDatum, i: Vec<usize>, m: Lattice) -> Result<Self> {
        let n = rd.rank();
        if m.ambient_rank() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.ambient_rank(),
            });
        }
        let mut i = i;
        i.sort_unstable();
        i.dedup();
        if let Some(&bad) = i.iter().find(|&&a| a >= n) {
            return Err(Error::InvalidHorospherical(format!("node {} out of range", bad + 1)));
        }
        Ok(HorosphericalDatum { rd, i, m })
    }

    pub fn from_rows(rd: BasedRootDatum, i: Vec<usize>, rows: &[Vec<Int>]) -> Result<Self> {
        let m = Lattice::from_generators(rd.rank(), rows)?;
        Self::new(rd, i, m)
    }

    pub fn root_datum(&self) -> &BasedRootDatum {
        &self.rd
    }

    pub fn i(&self) -> &[usize] {
        &self.i
    }

    pub fn m(&self) -> &Lattice {
        &self.m
    }

    /// Simple roots outside `I`.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.rd.rank()).filter(|a| !self.i.contains(a)).collect()
    }

    /// Every pair (basis vector of `M`, `α ∈ I`) with nonzero pairing.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for b in self.m.basis_vecs() {
            for &a in &self.i {
                let p = self.rd.coroot_pairing(&b, a);
                if p != Int::from(0) {
                    out.push(format!("<{b:?}, alpha{}^v> = {p}, expected 0", a + 1));
                }
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidHorospherical(v.join("; ")))
        }
    }

    /// Index of the first generator moving `I` or `M`.
    pub fn stability_witness(&self, g: &GaloisAction) -> Result<Option<(usize, String)>> {
        if g.dim() != self.rd.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rd.rank(),
                found: g.dim(),
            });
        }
        for (k, m) in g.generators().iter().enumerate() {
            let perm = SphericalDatum::node_permutation(m)?;
            let mut img: Vec<usize> = self.i.iter().map(|&a| perm[a]).collect();
            img.sort_unstable();
            if img != self.i {
                return Ok(Some((k, "I is moved".into())));
            }
            if !self.m.is_stable(m)? {
                return Ok(Some((k, "M is moved".into())));
            }
        }
        Ok(None)
    }

    pub fn stable(&self, g: &GaloisAction) -> Result<bool> {
        Ok(self.stability_witness(g)?.is_none())
    }

    /// `𝒳 = M`, `Σ = ∅`, one color `D_α` per `α ∉ I` with `ρ = α^∨|_M`.
    pub fn to_spherical(&self) -> Result<SphericalDatum> {
        self.ensure_valid()?;
        let basis = self.m.basis_vecs();
        let colors = self
            .complement()
            .into_iter()
            .map(|a| {
                let rho = basis.iter().map(|b| rat_of(&b[a])).collect();
                Color::new(format!("D{}", a + 1), rho, vec![a])
            })
            .collect();
        SphericalDatum::new(self.rd.clone(), basis, vec![], colors, vec![])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::GroupKind;
    use crate::spherical::fixtures::{flip, rd};
    use crate::{int, ivec};

    fn two_p_plus_q(rd: &BasedRootDatum) -> Lattice {
        rd.weight_lattice().scaled(&int(2)).sum(rd.root_lattice()).unwrap()
    }

    #[test]
    fn pairing_condition() {
        let a2 = rd("A2");
        let gu = HorosphericalDatum::new(a2.clone(), vec![], a2.weight_lattice()).unwrap();
        assert!(gu.validate().is_empty());
        let point = HorosphericalDatum::new(a2.clone(), vec![0, 1], Lattice::zero(2)).unwrap();
        assert!(point.validate().is_empty());
        let bad = HorosphericalDatum::from_rows(a2, vec![0], &[ivec(&[1, 0])]).unwrap();
        assert_eq!(bad.validate().len(), 1);
        assert!(bad.to_spherical().is_err());
    }

    #[test]
    fn stability() {
        let a5 = rd("A5");
        let h = HorosphericalDatum::new(a5.clone(), vec![], two_p_plus_q(&a5)).unwrap();
        assert!(h.stable(&flip(&a5)).unwrap());
        let a2 = rd("A2");
        let h = HorosphericalDatum::from_rows(a2.clone(), vec![0], &[ivec(&[0, 1])]).unwrap();
        assert!(!h.stable(&flip(&a2)).unwrap());
        assert!(h.stable(&GaloisAction::trivial(2)).unwrap());
        let moved = HorosphericalDatum::from_rows(a2.clone(), vec![], &[ivec(&[1, 0])]).unwrap();
        assert_eq!(moved.stability_witness(&flip(&a2)).unwrap().unwrap().1, "M is moved");
    }

    #[test]
    fn spherical_form() {
        let a2 = rd("A2");
        let point = HorosphericalDatum::new(a2.clone(), vec![0, 1], Lattice::zero(2)).unwrap();
        assert!(point.to_spherical().unwrap().colors().is_empty());

        let gu = HorosphericalDatum::new(a2.clone(), vec![], a2.weight_lattice()).unwrap();
        let d = gu.to_spherical().unwrap();
        assert_eq!(d.colors().len(), 2);
        let (o1, o2) = d.omega_sets().unwrap();
        assert_eq!(o1.len(), 2);
        assert!(o2.is_empty());
        // ρ(D_α) pairs with λ ∈ M as ⟨λ, α^∨⟩
        for c in d.colors() {
            let a = c.sigma_set[0];
            let lam = ivec(&[3, -2]);
            assert_eq!(d.pair(&c.rho, &lam).unwrap(), rat_of(&lam[a]));
        }

        let a5 = rd("A5");
        let h = HorosphericalDatum::new(a5.clone(), vec![], two_p_plus_q(&a5)).unwrap();
        let d = h.to_spherical().unwrap();
        assert_eq!(d.colors().len(), 5);
        let (xa, _, _) = d.aut_character_lattices().unwrap();
        assert_eq!(xa.group().free_rank(), 5);
        assert!(xa.group().invariant_factors().iter().all(|f| *f == int(0)));
    }

    // Stability of (I, M) agrees with stability of the spherical invariants.
    #[test]
    fn stability_matches_spherical_form() {
        let a3 = rd("A3");
        let g = flip(&a3);
        let cases: Vec<(Vec<usize>, Vec<Vec<Int>>)> = vec![
            (vec![], vec![ivec(&[1, 0, 1]), ivec(&[0, 2, 0])]),
            (vec![], vec![ivec(&[1, 0, 0])]),
            (vec![1], vec![ivec(&[1, 0, 1])]),
            (vec![0], vec![ivec(&[0, 1, 0]), ivec(&[0, 0, 1])]),
            (vec![0, 2], vec![ivec(&[0, 3, 0])]),
        ];
        for (i, rows) in cases {
            let h = HorosphericalDatum::from_rows(a3.clone(), i, &rows).unwrap();
            let d = h.to_spherical().unwrap();
            assert_eq!(h.stable(&g).unwrap(), d.invariants_stable(&g).unwrap(), "{rows:?}");
        }
        let triv = GaloisAction::new(GroupKind::Cyclic(2), 3, vec![crate::IntMatrix::identity(3)]).unwrap();
        let h = HorosphericalDatum::from_rows(a3, vec![], &[ivec(&[1, 0, 0])]).unwrap();
        assert!(h.stable(&triv).unwrap());
    }
}
