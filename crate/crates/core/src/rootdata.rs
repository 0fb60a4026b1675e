//! Based root data of simple types in Bourbaki numbering.
//!
//! Everything lives in fundamental-weight coordinates: `P = ℤ^n`, the pairing
//! `⟨χ, αᵢ^∨⟩` is the `i`-th coordinate of `χ`, and the simple root `αᵢ` is row
//! `i` of the Cartan matrix `C_{ij} = ⟨αᵢ, αⱼ^∨⟩`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{FgAbelianGroup, Lattice, LatticeQuotient};
use crate::{int, rat, rat_of, Int, IntMatrix, Rat, RatMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    /// Validates the rank. `C₂` is normalized to `B₂`.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidRank {
                family: family.letter(),
                rank,
            });
        }
        if family == Family::C && rank == 2 {
            return Ok(SimpleType {
                family: Family::B,
                rank: 2,
            });
        }
        Ok(SimpleType { family, rank })
    }

    /// All admissible types with `rank ≤ max_rank`.
    pub fn all_up_to(max_rank: usize) -> Vec<SimpleType> {
        let mut out = Vec::new();
        for fam in [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ] {
            for r in 1..=max_rank {
                if let Ok(t) = SimpleType::new(fam, r) {
                    if t.family == fam {
                        out.push(t);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::UnknownType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownType(s.to_string()))?;
        SimpleType::new(family, rank)
    }
}

impl Serialize for SimpleType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SimpleType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Bourbaki-numbered Cartan matrix, `C_{ij} = ⟨αᵢ, αⱼ^∨⟩`.
pub fn cartan_matrix(t: SimpleType) -> Result<IntMatrix> {
    let t = SimpleType::new(t.family, t.rank)?;
    let n = t.rank;
    let mut c = IntMatrix::zeros(n, n);
    for i in 0..n {
        c[(i, i)] = int(2);
    }
    let link = |c: &mut IntMatrix, i: usize, j: usize| {
        c[(i, j)] = int(-1);
        c[(j, i)] = int(-1);
    };
    match t.family {
        Family::A => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
        }
        Family::B => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
            c[(n - 2, n - 1)] = int(-2);
        }
        Family::C => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
            c[(n - 1, n - 2)] = int(-2);
        }
        Family::D => {
            for i in 0..n - 2 {
                link(&mut c, i, i + 1);
            }
            link(&mut c, n - 3, n - 1);
        }
        Family::E => {
            let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
            for (i, j) in edges {
                if i < n && j < n {
                    link(&mut c, i, j);
                }
            }
        }
        Family::F => {
            link(&mut c, 0, 1);
            link(&mut c, 1, 2);
            link(&mut c, 2, 3);
            c[(1, 2)] = int(-2);
        }
        Family::G => {
            link(&mut c, 0, 1);
            c[(1, 0)] = int(-3);
        }
    }
    Ok(c)
}

/// Permutation of the simple-root indices preserving the Cartan matrix.
/// Stored 0-based; printed in 1-based one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramAutomorphism {
    perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn identity(n: usize) -> Self {
        DiagramAutomorphism {
            perm: (0..n).collect(),
        }
    }

    /// From 0-based images. Only checks that this is a permutation.
    pub fn from_images(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidAutomorphism(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(DiagramAutomorphism { perm })
    }

    /// From 1-based one-line notation, e.g. `[5, 4, 3, 2, 1]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidAutomorphism("node indices start at 1".into()));
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.perm.iter().map(|&i| i + 1).collect()
    }

    pub fn images(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        DiagramAutomorphism {
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        DiagramAutomorphism { perm: inv }
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut p = self.clone();
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    pub fn preserves(&self, cartan: &IntMatrix) -> bool {
        let n = self.perm.len();
        n == cartan.rows()
            && (0..n).all(|i| (0..n).all(|j| cartan[(self.perm[i], self.perm[j])] == cartan[(i, j)]))
    }

    /// Image of a set of node indices.
    pub fn apply_set(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&i| self.perm[i]).collect();
        out.sort_unstable();
        out
    }
}

/// All Cartan-preserving permutations, sorted, identity first.
pub fn diagram_automorphism_group(t: SimpleType) -> Result<Vec<DiagramAutomorphism>> {
    let c = cartan_matrix(t)?;
    let n = t.rank;
    let mut out = Vec::new();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn search(
        c: &IntMatrix,
        perm: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<DiagramAutomorphism>,
    ) {
        let n = c.rows();
        let i = perm.len();
        if i == n {
            out.push(DiagramAutomorphism { perm: perm.clone() });
            return;
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            let consistent = c[(cand, cand)] == c[(i, i)]
                && (0..i).all(|j| {
                    c[(cand, perm[j])] == c[(i, j)] && c[(perm[j], cand)] == c[(j, i)]
                });
            if !consistent {
                continue;
            }
            used[cand] = true;
            perm.push(cand);
            search(c, perm, used, out);
            perm.pop();
            used[cand] = false;
        }
    }
    search(&c, &mut perm, &mut used, &mut out);
    out.sort();
    Ok(out)
}

/// Automorphisms by name: `identity`, `flip` (the order-two symmetry of
/// `A_n`, `D_n`, `E₆`; on `A₁` it is the identity) and `rotation` (`D₄`,
/// nodes `1 → 3 → 4 → 1`).
pub fn named_automorphism(t: SimpleType, name: &str) -> Result<DiagramAutomorphism> {
    let n = t.rank;
    let swap = |a: usize, b: usize| {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(a, b);
        p
    };
    let perm = match (name, t.family) {
        ("identity", _) => (0..n).collect(),
        ("flip", Family::A) => (0..n).rev().collect(),
        ("flip", Family::D) => swap(n - 2, n - 1),
        ("flip", Family::E) if n == 6 => {
            let mut p = swap(0, 5);
            p.swap(2, 4);
            p
        }
        ("rotation", Family::D) if n == 4 => vec![2, 1, 3, 0],
        _ => {
            return Err(Error::InvalidAutomorphism(format!(
                "no automorphism named {name:?} for {t}"
            )))
        }
    };
    DiagramAutomorphism::from_images(perm)
}

/// The based root datum of the simply connected group of a simple type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedRootDatum {
    ty: SimpleType,
    cartan: IntMatrix,
    q: Lattice,
}

impl BasedRootDatum {
    pub fn new(ty: SimpleType) -> Result<Self> {
        let cartan = cartan_matrix(ty)?;
        let q = Lattice::from_matrix(&cartan);
        Ok(BasedRootDatum {
            ty: SimpleType::new(ty.family, ty.rank)?,
            cartan,
            q,
        })
    }

    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    /// `αᵢ` in ω-coordinates (0-based `i`).
    pub fn simple_root(&self, i: usize) -> Vec<Int> {
        self.cartan.row(i).to_vec()
    }

    pub fn fundamental_weight(&self, i: usize) -> Vec<Int> {
        let mut v = vec![Int::zero(); self.rank()];
        v[i] = int(1);
        v
    }

    pub fn weight_lattice(&self) -> Lattice {
        Lattice::full(self.rank())
    }

    pub fn root_lattice(&self) -> &Lattice {
        &self.q
    }

    /// `⟨χ, αᵢ^∨⟩`.
    pub fn coroot_pairing(&self, chi: &[Int], i: usize) -> Int {
        chi[i].clone()
    }

    /// `P/Q` as a lattice quotient.
    pub fn center_characters(&self) -> LatticeQuotient {
        LatticeQuotient::new(self.weight_lattice(), self.q.clone())
            .expect("Q is a sublattice of P")
    }

    pub fn automorphisms(&self) -> Vec<DiagramAutomorphism> {
        diagram_automorphism_group(self.ty).expect("type validated")
    }

    pub fn is_automorphism(&self, a: &DiagramAutomorphism) -> bool {
        a.preserves(&self.cartan)
    }
}

/// `P/Q` via the Smith form of the Cartan matrix.
pub fn center_character_group(t: SimpleType) -> Result<FgAbelianGroup> {
    let c = cartan_matrix(t)?;
    FgAbelianGroup::new(t.rank, c)
}

/// Matrix of the `*`-action on ω-coordinates (row convention, `x ↦ x·S`):
/// `ωᵢ ↦ ω_{π(i)}`.
pub fn star_action_matrix(rd: &BasedRootDatum, a: &DiagramAutomorphism) -> Result<IntMatrix> {
    if a.len() != rd.rank() || !rd.is_automorphism(a) {
        return Err(Error::InvalidAutomorphism(format!(
            "{:?} is not a diagram automorphism of {}",
            a.one_line(),
            rd.simple_type()
        )));
    }
    let n = rd.rank();
    let mut s = IntMatrix::zeros(n, n);
    for i in 0..n {
        s[(i, a.apply(i))] = int(1);
    }
    if !rd.root_lattice().is_stable(&s)? {
        return Err(Error::Internal("star action does not preserve Q".into()));
    }
    Ok(s)
}

/// Rows are the fundamental weights in the ε-basis of the classical plates.
pub fn epsilon_basis(t: SimpleType) -> Result<RatMatrix> {
    let n = t.rank;
    let mut m = RatMatrix::zeros(n, n);
    let fill = |m: &mut RatMatrix, i: usize, upto: usize, val: Rat| {
        for j in 0..upto {
            m[(i, j)] = val.clone();
        }
    };
    match t.family {
        Family::B => {
            for i in 0..n - 1 {
                fill(&mut m, i, i + 1, rat(1, 1));
            }
            fill(&mut m, n - 1, n, rat(1, 2));
        }
        Family::C => {
            for i in 0..n {
                fill(&mut m, i, i + 1, rat(1, 1));
            }
        }
        Family::D => {
            for i in 0..n - 2 {
                fill(&mut m, i, i + 1, rat(1, 1));
            }
            fill(&mut m, n - 2, n, rat(1, 2));
            m[(n - 2, n - 1)] = rat(-1, 2);
            fill(&mut m, n - 1, n, rat(1, 2));
        }
        _ => {
            return Err(Error::UnsupportedType(
                t.to_string(),
                "ε-coordinates exist for types B, C, D only",
            ))
        }
    }
    Ok(m)
}

/// ω-coordinates → ε-coordinates.
pub fn epsilon_coordinates(t: SimpleType, v: &[Int]) -> Result<Vec<Rat>> {
    let m = epsilon_basis(t)?;
    let v: Vec<Rat> = v.iter().map(rat_of).collect();
    m.left_apply(&v)
}

/// ε-coordinates → ω-coordinates.
pub fn from_epsilon(t: SimpleType, e: &[Rat]) -> Result<Vec<Rat>> {
    let m = epsilon_basis(t)?;
    let inv = m
        .inverse()
        .ok_or_else(|| Error::Internal("ε-basis is singular".into()))?;
    inv.left_apply(e)
}

/// Whether an ω-vector lies in `⊕ ℤεᵢ`.
pub fn in_epsilon_lattice(t: SimpleType, v: &[Int]) -> Result<bool> {
    Ok(epsilon_coordinates(t, v)?.iter().all(|x| x.is_integer()))
}

/// The lattice `⊕ ℤεᵢ`, in ω-coordinates.
pub fn epsilon_lattice(t: SimpleType) -> Result<Lattice> {
    let n = t.rank;
    let mut gens = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[i] = rat(1, 1);
        let w = from_epsilon(t, &e)?;
        if w.iter().any(|x| !x.is_integer()) {
            return Err(Error::Internal("εᵢ is not integral in ω-coordinates".into()));
        }
        gens.push(w.iter().map(|x| x.to_integer()).collect());
    }
    Lattice::from_generators(n, &gens)
}

/// `2ω1 - ω3`, or `0`.
pub fn format_weight(v: &[Int]) -> String {
    format_combo(&v.iter().map(rat_of).collect::<Vec<_>>(), "ω")
}

fn format_combo(v: &[Rat], sym: &str) -> String {
    let one = Rat::from_integer(Int::from(1));
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if *c == Rat::from_integer(Int::from(0)) {
            continue;
        }
        let neg = *c < Rat::from_integer(Int::from(0));
        let a = if neg { -c.clone() } else { c.clone() };
        let coef = if a == one { String::new() } else { format_rat(&a) };
        let term = format!("{coef}{sym}{}", i + 1);
        if out.is_empty() {
            out = if neg { format!("-{term}") } else { term };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

/// In simple roots when the weight lies in `ℚQ`, which is always.
pub fn format_root(rd: &BasedRootDatum, v: &[Int]) -> String {
    let c = rd.cartan().map(rat_of);
    let inv = c.inverse().expect("Cartan matrices are invertible");
    let coeffs = inv.left_apply(&v.iter().map(rat_of).collect::<Vec<_>>()).expect("dimensions agree");
    format_combo(&coeffs, "α")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::determinant;
    use crate::{imat, ivec};
    use num_traits::Signed;
    use proptest::prelude::*;

    fn ty(s: &str) -> SimpleType {
        s.parse().unwrap()
    }

    #[test]
    fn cartan_tables() {
        assert_eq!(cartan_matrix(ty("A2")).unwrap(), imat(2, &[&[2, -1], &[-1, 2]]));
        assert_eq!(cartan_matrix(ty("G2")).unwrap(), imat(2, &[&[2, -1], &[-3, 2]]));
        let d5 = cartan_matrix(ty("D5")).unwrap();
        assert_eq!(d5[(2, 3)], int(-1));
        assert_eq!(d5[(2, 4)], int(-1));
        assert_eq!(d5[(3, 4)], int(0));
        assert!(matches!(
            SimpleType::new(Family::E, 5),
            Err(Error::InvalidRank { .. })
        ));
        assert_eq!(ty("C2"), ty("B2"));
        assert!("X3".parse::<SimpleType>().is_err());
    }

    #[test]
    fn centers() {
        let a5 = center_character_group(ty("A5")).unwrap();
        assert_eq!(a5.invariant_factors(), &[int(6)]);
        assert_eq!(center_character_group(ty("E7")).unwrap().invariant_factors(), &[int(2)]);
        assert_eq!(
            center_character_group(ty("D4")).unwrap().invariant_factors(),
            &[int(2), int(2)]
        );
        for t in SimpleType::all_up_to(8) {
            let det = determinant(&cartan_matrix(t).unwrap());
            let order = center_character_group(t).unwrap().order().unwrap();
            assert_eq!(det.abs(), order, "{t}");
        }
    }

    #[test]
    fn automorphism_groups() {
        assert_eq!(diagram_automorphism_group(ty("A5")).unwrap().len(), 2);
        let d4 = diagram_automorphism_group(ty("D4")).unwrap();
        assert_eq!(d4.len(), 6);
        assert!(d4.iter().all(|a| a.apply(1) == 1));
        assert_eq!(diagram_automorphism_group(ty("B3")).unwrap().len(), 1);
        assert_eq!(diagram_automorphism_group(ty("E6")).unwrap().len(), 2);
        for (t, name, order) in [("A5", "flip", 2), ("A1", "flip", 1), ("D4", "rotation", 3), ("E6", "flip", 2), ("D5", "flip", 2)] {
            let a = named_automorphism(ty(t), name).unwrap();
            assert!(a.preserves(&cartan_matrix(ty(t)).unwrap()), "{t} {name}");
            assert_eq!(a.order(), order);
        }
        assert!(named_automorphism(ty("B3"), "flip").is_err());
    }

    #[test]
    fn star_actions() {
        let rd = BasedRootDatum::new(ty("A5")).unwrap();
        let id = DiagramAutomorphism::identity(5);
        assert!(star_action_matrix(&rd, &id).unwrap().is_identity());
        let flip = DiagramAutomorphism::from_one_line(&[5, 4, 3, 2, 1]).unwrap();
        let s = star_action_matrix(&rd, &flip).unwrap();
        assert_eq!(s.left_apply(&ivec(&[0, 0, 1, 0, 0])).unwrap(), ivec(&[0, 0, 1, 0, 0]));
        assert_eq!(s.left_apply(&ivec(&[1, 0, 0, 0, 0])).unwrap(), ivec(&[0, 0, 0, 0, 1]));

        let d5 = BasedRootDatum::new(ty("D5")).unwrap();
        let swap = DiagramAutomorphism::from_one_line(&[1, 2, 3, 5, 4]).unwrap();
        let s = star_action_matrix(&d5, &swap).unwrap();
        assert_eq!(s.left_apply(&ivec(&[1, 0, 0, 0, 0])).unwrap(), ivec(&[1, 0, 0, 0, 0]));
        let bad = DiagramAutomorphism::from_one_line(&[2, 1, 3, 4, 5]).unwrap();
        assert!(star_action_matrix(&d5, &bad).is_err());
    }

    #[test]
    fn epsilon_plates() {
        let d5 = BasedRootDatum::new(ty("D5")).unwrap();
        let a1 = epsilon_coordinates(ty("D5"), &d5.simple_root(0)).unwrap();
        assert_eq!(a1, vec![rat(1, 1), rat(-1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        let w5 = epsilon_coordinates(ty("D5"), &ivec(&[0, 0, 0, 0, 1])).unwrap();
        assert!(w5.iter().all(|x| *x == rat(1, 2)));
        let b2 = BasedRootDatum::new(ty("B2")).unwrap();
        assert_eq!(
            epsilon_coordinates(ty("B2"), &b2.simple_root(1)).unwrap(),
            vec![rat(0, 1), rat(1, 1)]
        );
        assert!(epsilon_coordinates(ty("A3"), &ivec(&[1, 0, 0])).is_err());
        // Q ⊆ ⊕ℤεᵢ with index 2 in type D
        let eps = epsilon_lattice(ty("D4")).unwrap();
        assert!(d5.root_lattice().rank() == 5);
        let d4 = BasedRootDatum::new(ty("D4")).unwrap();
        assert!(d4.root_lattice().is_sublattice_of(&eps).unwrap());
        assert!(in_epsilon_lattice(ty("D4"), &ivec(&[1, 0, 0, 0])).unwrap());
        assert!(!in_epsilon_lattice(ty("D4"), &ivec(&[0, 0, 1, 0])).unwrap());
    }

    proptest! {
        #[test]
        fn star_action_commutes_with_pairing(chi in proptest::collection::vec(-9i64..=9, 4)) {
            let rd = BasedRootDatum::new(ty("D4")).unwrap();
            let chi = ivec(&chi);
            for a in rd.automorphisms() {
                let s = star_action_matrix(&rd, &a).unwrap();
                let moved = s.left_apply(&chi).unwrap();
                for i in 0..4 {
                    prop_assert_eq!(
                        rd.coroot_pairing(&moved, a.apply(i)),
                        rd.coroot_pairing(&chi, i)
                    );
                }
            }
        }

        #[test]
        fn epsilon_round_trip(v in proptest::collection::vec(-9i64..=9, 5), fam in 0usize..3) {
            let t = [ty("B5"), ty("C5"), ty("D5")][fam];
            let e = epsilon_coordinates(t, &ivec(&v)).unwrap();
            let back = from_epsilon(t, &e).unwrap();
            prop_assert_eq!(back, ivec(&v).iter().map(rat_of).collect::<Vec<_>>());
        }
    }
}
