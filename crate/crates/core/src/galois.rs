//! Finite Galois actions on lattices and their quotients, Tate cohomology of
//! cyclic groups, and Brauer characters.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{norm_matrix, power, GroupHom, Lattice, LatticeQuotient};
use crate::rootdata::{star_action_matrix, BasedRootDatum, DiagramAutomorphism};
use crate::{Int, IntMatrix, Rat};

/// The abstract finite group acting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Trivial,
    /// `ℤ/n` on one generator; only `n ∈ {2, 3}` is supported.
    Cyclic(usize),
    /// Generators `s` (order 2) and `r` (order 3) with `srs = r⁻¹`.
    S3,
}

impl GroupKind {
    pub fn order(self) -> usize {
        match self {
            GroupKind::Trivial => 1,
            GroupKind::Cyclic(n) => n,
            GroupKind::S3 => 6,
        }
    }

    pub fn ngens(self) -> usize {
        match self {
            GroupKind::Trivial => 0,
            GroupKind::Cyclic(_) => 1,
            GroupKind::S3 => 2,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Trivial => write!(f, "1"),
            GroupKind::Cyclic(n) => write!(f, "Z/{n}"),
            GroupKind::S3 => write!(f, "S3"),
        }
    }
}

/// A finite group acting on `ℤ^n` through matrices (`x ↦ x·g`), possibly
/// non-faithfully. When built from a root datum it also remembers the node
/// permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisAction {
    kind: GroupKind,
    dim: usize,
    gens: Vec<IntMatrix>,
    perms: Option<Vec<DiagramAutomorphism>>,
}

fn check_relations(kind: GroupKind, gens: &[IntMatrix], module: &LatticeQuotient) -> Result<()> {
    let n = module.ambient_rank();
    let acts_trivially = |m: &IntMatrix| -> Result<bool> {
        let d = m.sub(&IntMatrix::identity(n))?;
        for b in module.outer().basis_vecs() {
            if !module.inner().contains(&d.left_apply(&b)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let fail = |what: &str| Err(Error::BadGroupAction(format!("{kind}: {what}")));
    match kind {
        GroupKind::Trivial => {}
        GroupKind::Cyclic(k) => {
            if !(2..=3).contains(&k) {
                return fail("only cyclic groups of order 2 or 3 are supported");
            }
            if !acts_trivially(&power(&gens[0], k)?)? {
                return fail("generator order does not divide the group order");
            }
        }
        GroupKind::S3 => {
            let (s, r) = (&gens[0], &gens[1]);
            if !acts_trivially(&power(s, 2)?)? {
                return fail("s² ≠ 1");
            }
            if !acts_trivially(&power(r, 3)?)? {
                return fail("r³ ≠ 1");
            }
            if !acts_trivially(&power(&s.mul(r)?, 2)?)? {
                return fail("(sr)² ≠ 1");
            }
        }
    }
    for (i, g) in gens.iter().enumerate() {
        if !module.outer().image(g)?.is_sublattice_of(module.outer())?
            || !module.inner().image(g)?.is_sublattice_of(module.inner())?
        {
            return fail(&format!("generator {i} does not preserve the module"));
        }
    }
    Ok(())
}

impl GaloisAction {
    /// Checks the group relations exactly on `ℤ^n`.
    pub fn new(kind: GroupKind, dim: usize, gens: Vec<IntMatrix>) -> Result<Self> {
        let full = LatticeQuotient::new(Lattice::full(dim), Lattice::zero(dim))?;
        Self::on_module(kind, gens, &full)
    }

    /// Checks the group relations modulo the inner lattice of `module` only,
    /// so that e.g. `x ↦ 5x` is an involution of `ℤ/6`.
    pub fn on_module(kind: GroupKind, gens: Vec<IntMatrix>, module: &LatticeQuotient) -> Result<Self> {
        let dim = module.ambient_rank();
        if gens.len() != kind.ngens() {
            return Err(Error::BadGroupAction(format!(
                "{kind} needs {} generators, got {}",
                kind.ngens(),
                gens.len()
            )));
        }
        for g in &gens {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.rows(),
                });
            }
        }
        check_relations(kind, &gens, module)?;
        Ok(GaloisAction {
            kind,
            dim,
            gens,
            perms: None,
        })
    }

    pub fn trivial(dim: usize) -> Self {
        GaloisAction {
            kind: GroupKind::Trivial,
            dim,
            gens: Vec::new(),
            perms: None,
        }
    }

    /// The `*`-action given by diagram automorphisms, one per generator.
    pub fn from_automorphisms(
        rd: &BasedRootDatum,
        kind: GroupKind,
        autos: Vec<DiagramAutomorphism>,
    ) -> Result<Self> {
        let gens = autos
            .iter()
            .map(|a| star_action_matrix(rd, a))
            .collect::<Result<Vec<_>>>()?;
        let mut g = Self::new(kind, rd.rank(), gens)?;
        g.perms = Some(autos);
        Ok(g)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.gens
    }

    pub fn node_permutations(&self) -> Option<&[DiagramAutomorphism]> {
        self.perms.as_deref()
    }

    /// Whether every generator acts as the identity matrix.
    pub fn acts_trivially(&self) -> bool {
        self.gens.iter().all(|g| g.is_identity())
    }

    /// Every group element as a matrix, identity first (with repetitions when
    /// the action is not faithful).
    pub fn elements(&self) -> Result<Vec<IntMatrix>> {
        let id = IntMatrix::identity(self.dim);
        Ok(match self.kind {
            GroupKind::Trivial => vec![id],
            GroupKind::Cyclic(n) => (0..n).map(|k| power(&self.gens[0], k)).collect::<Result<_>>()?,
            GroupKind::S3 => {
                let mut out = Vec::with_capacity(6);
                for j in 0..2 {
                    for i in 0..3 {
                        out.push(power(&self.gens[1], i)?.mul(&power(&self.gens[0], j)?)?);
                    }
                }
                out
            }
        })
    }

    /// Whether every generator of `sub` is (as a matrix) an element of `self`.
    pub fn contains_action(&self, sub: &GaloisAction) -> Result<bool> {
        if sub.dim != self.dim {
            return Ok(false);
        }
        let els = self.elements()?;
        Ok(sub.gens.iter().all(|g| els.contains(g)))
    }

    /// Same group, restricted to a different module representation.
    pub fn with_generators(&self, gens: Vec<IntMatrix>, module: &LatticeQuotient) -> Result<Self> {
        Self::on_module(self.kind, gens, module)
    }
}

/// Image of the norm map `Σ γ^i` on `L/S`, as a sublattice of `L` containing `S`.
pub fn norm_lattice(module: &LatticeQuotient, g: &GaloisAction) -> Result<Lattice> {
    match g.kind() {
        GroupKind::Trivial => Ok(module.outer().clone()),
        GroupKind::Cyclic(n) => module.image_lattice(&norm_matrix(&g.generators()[0], n)?),
        GroupKind::S3 => Err(Error::NonCyclic("norm subgroup requested for S3".into())),
    }
}

/// The norm subgroup `N(A) ⊆ A` with its inclusion into `A`.
pub fn norm_subgroup(module: &LatticeQuotient, g: &GaloisAction) -> Result<(LatticeQuotient, GroupHom)> {
    let sub = LatticeQuotient::new(norm_lattice(module, g)?, module.inner().clone())?;
    let inc = module.inclusion_from(&sub)?;
    Ok((sub, inc))
}

/// `Ĥ⁰(Γ, A) = A^Γ / N(A)` for cyclic `Γ`, isomorphic to `H²(Γ, A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateH0 {
    pub invariants: LatticeQuotient,
    pub norms: Lattice,
    pub group: LatticeQuotient,
}

impl TateH0 {
    /// Class of an invariant ambient vector.
    pub fn class_of(&self, v: &[Int]) -> Result<Vec<Int>> {
        self.group.class_of(v)
    }
}

/// Degree-two cohomology of a cyclic group, computed as `Ĥ⁰`. The trivial
/// group has no higher cohomology by convention.
pub fn h2_cyclic(module: &LatticeQuotient, g: &GaloisAction) -> Result<TateH0> {
    if g.kind() == GroupKind::S3 {
        return Err(Error::NonCyclic(
            "H² of S3 is only consulted through Brauer characters".into(),
        ));
    }
    let invariants = module.invariants(g.generators())?;
    let norms = norm_lattice(module, g)?;
    let group = LatticeQuotient::new(invariants.outer().clone(), norms.clone())?;
    Ok(TateH0 {
        invariants,
        norms,
        group,
    })
}

/// Reduce into `[0, 1)`.
pub fn qz(r: &Rat) -> Rat {
    r - r.floor()
}

pub fn format_qz(r: &Rat) -> String {
    let r = qz(r);
    if r.is_zero() {
        "0".into()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"` or an integer into `ℚ/ℤ`.
pub fn parse_qz(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::InvalidCharacter(format!("cannot parse {s:?} as p/q"));
    let r = match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().map_err(|_| bad())?;
            let q: Int = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Rat::new(p, q)
        }
        None => Rat::from_integer(s.parse().map_err(|_| bad())?),
    };
    Ok(qz(&r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldMode {
    Real,
    Padic,
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMode::Real => write!(f, "real"),
            FieldMode::Padic => write!(f, "padic"),
        }
    }
}

/// A homomorphism from a finite quotient `L/S` to `ℚ/ℤ`, given by its values
/// on the Smith generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrCharacter {
    source: LatticeQuotient,
    values: Vec<Rat>,
    mode: FieldMode,
}

impl BrCharacter {
    /// Checks only that the number of values matches.
    pub fn new(source: LatticeQuotient, values: Vec<Rat>, mode: FieldMode) -> Result<Self> {
        if values.len() != source.group().ngens() {
            return Err(Error::InvalidCharacter(format!(
                "{} values for a group with {} generators",
                values.len(),
                source.group().ngens()
            )));
        }
        let values = values.iter().map(qz).collect();
        Ok(BrCharacter {
            source,
            values,
            mode,
        })
    }

    pub fn zero(source: LatticeQuotient, mode: FieldMode) -> Self {
        let values = vec![Rat::zero(); source.group().ngens()];
        BrCharacter {
            source,
            values,
            mode,
        }
    }

    /// The unique character taking the given values on the given ambient
    /// vectors, found by enumerating all characters of the source.
    pub fn from_weight_values(
        source: LatticeQuotient,
        pairs: &[(Vec<Int>, Rat)],
        mode: FieldMode,
    ) -> Result<Self> {
        let classes = pairs
            .iter()
            .map(|(w, _)| source.class_of(w))
            .collect::<Result<Vec<_>>>()?;
        let mut found: Vec<BrCharacter> = Vec::new();
        for chi in all_characters(&source, mode)? {
            if classes
                .iter()
                .zip(pairs)
                .all(|(c, (_, v))| chi.eval(c) == qz(v))
            {
                found.push(chi);
            }
        }
        match found.len() {
            1 => Ok(found.pop().expect("one")),
            0 => Err(Error::InvalidCharacter(
                "no character of the source takes these values".into(),
            )),
            k => Err(Error::InvalidCharacter(format!(
                "values on the given weights leave {k} characters possible"
            ))),
        }
    }

    pub fn source(&self) -> &LatticeQuotient {
        &self.source
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    pub fn with_mode(&self, mode: FieldMode) -> Self {
        BrCharacter {
            mode,
            ..self.clone()
        }
    }

    /// Value on an element in Smith coordinates.
    pub fn eval(&self, e: &[Int]) -> Rat {
        let mut acc = Rat::zero();
        for (x, v) in e.iter().zip(&self.values) {
            acc += Rat::from_integer(x.clone()) * v;
        }
        qz(&acc)
    }

    /// Value on an ambient vector of the source's outer lattice.
    pub fn eval_vector(&self, v: &[Int]) -> Result<Rat> {
        Ok(self.eval(&self.source.class_of(v)?))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// `ker t⁰` as a sublattice of the source's outer lattice (containing
    /// the inner lattice).
    pub fn kernel_lattice(&self) -> Result<Lattice> {
        let mut gens = self.source.inner().basis_vecs();
        let g = self.source.group();
        // kernel in Smith coordinates: solve Σ eₖ vₖ ∈ ℤ; the common
        // denominator turns this into an integer congruence
        let den = self
            .values
            .iter()
            .fold(Int::one(), |acc, v| acc.lcm(v.denom()));
        let coeffs: Vec<Int> = self
            .values
            .iter()
            .map(|v| (v * Rat::from_integer(den.clone())).to_integer())
            .collect();
        // lattice of integer e with Σ eₖ cₖ ≡ 0 (mod den), plus relations
        let k = g.ngens();
        let mut m = IntMatrix::zeros(k + 1, 1);
        for (i, c) in coeffs.iter().enumerate() {
            m[(i, 0)] = c.clone();
        }
        m[(k, 0)] = den;
        let ker = crate::lattice::left_kernel(&m);
        for row in ker.row_vecs() {
            let e: Vec<Int> = row[..k].to_vec();
            gens.push(self.source.lift(&e)?);
        }
        for i in 0..k {
            let d = &g.invariant_factors()[i];
            if !d.is_zero() {
                let mut e = vec![Int::zero(); k];
                e[i] = d.clone();
                gens.push(self.source.lift(&e)?);
            }
        }
        Lattice::from_generators(self.source.ambient_rank(), &gens)
    }

    /// Values as `"p/q"` strings.
    pub fn value_strings(&self) -> Vec<String> {
        self.values.iter().map(format_qz).collect()
    }
}

impl fmt::Display for BrCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] ({})", self.value_strings().join(", "), self.mode)
    }
}

/// Every character of a finite source (real mode: only `½ℤ/ℤ`-valued ones).
pub fn all_characters(source: &LatticeQuotient, mode: FieldMode) -> Result<Vec<BrCharacter>> {
    let g = source.group();
    if !g.is_finite() {
        return Err(Error::InvalidCharacter(
            "characters are only enumerated on finite groups".into(),
        ));
    }
    let mut out: Vec<Vec<Rat>> = vec![Vec::new()];
    for d in g.invariant_factors() {
        let mut next = Vec::new();
        for prefix in &out {
            let mut k = Int::zero();
            while &k < d {
                let v = Rat::new(k.clone(), d.clone());
                if mode == FieldMode::Padic || (v.clone() * Rat::from_integer(Int::from(2))).is_integer() {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
                k += 1;
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|vals| BrCharacter::new(source.clone(), vals, mode))
        .collect()
}

/// Problems with a character, empty when it is valid. `module` is the full
/// module `A` with its action; the character must live on `A^Γ`.
pub fn validate_br_character(
    t0: &BrCharacter,
    module: &LatticeQuotient,
    g: &GaloisAction,
) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let inv = module.invariants(g.generators())?;
    if inv.outer() != t0.source().outer() || inv.inner() != t0.source().inner() {
        return Err(Error::ModuleMismatch(
            "the character is not defined on the invariants of this module".into(),
        ));
    }
    let grp = t0.source().group();
    for (k, (v, d)) in t0.values().iter().zip(grp.invariant_factors()).enumerate() {
        if !d.is_zero() && !(v * Rat::from_integer(d.clone())).is_integer() {
            out.push(format!(
                "value {} on generator {k} is not killed by its order {d}",
                format_qz(v)
            ));
        }
    }
    if t0.mode() == FieldMode::Real {
        for (k, v) in t0.values().iter().enumerate() {
            if !(v * Rat::from_integer(Int::from(2))).is_integer() {
                out.push(format!("value {} on generator {k} is not in ½ℤ/ℤ", format_qz(v)));
            }
        }
        if g.kind() == GroupKind::Cyclic(2) {
            for b in norm_lattice(module, g)?.basis_vecs() {
                let val = t0.eval_vector(&b)?;
                if !val.is_zero() {
                    out.push(format!(
                        "value {} on the norm {b:?} is nonzero",
                        format_qz(&val)
                    ));
                }
            }
        } else {
            out.push(format!("real mode needs a group of order 2, got {}", g.kind()));
        }
    }
    Ok(out)
}

/// First source generator `k` with `t⁰(φ(k)) ≠ 0`, with that value.
pub fn br_vanishing_witness(t0: &BrCharacter, phi: &GroupHom) -> Result<Option<(usize, Rat)>> {
    if phi.target().outer() != t0.source().outer() || phi.target().inner() != t0.source().inner() {
        return Err(Error::ModuleMismatch(
            "the homomorphism does not land in the character's source".into(),
        ));
    }
    for (k, img) in phi.generator_images().iter().enumerate() {
        let v = t0.eval(img);
        if !v.is_zero() {
            return Ok(Some((k, v)));
        }
    }
    Ok(None)
}

/// Whether `t⁰ ∘ φ = 0`.
pub fn br_vanishing_test(t0: &BrCharacter, phi: &GroupHom) -> Result<bool> {
    Ok(br_vanishing_witness(t0, phi)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{named_automorphism, SimpleType};
    use crate::{imat, int, ivec, rat};
    use proptest::prelude::*;

    fn cyclic_module(d: i64) -> LatticeQuotient {
        LatticeQuotient::new(Lattice::full(1), Lattice::from_matrix(&imat(1, &[&[d]]))).unwrap()
    }

    fn a5() -> (BasedRootDatum, LatticeQuotient) {
        let rd = BasedRootDatum::new("A5".parse::<SimpleType>().unwrap()).unwrap();
        let pq = rd.center_characters();
        (rd, pq)
    }

    #[test]
    fn norms_of_small_modules() {
        let m6 = cyclic_module(6);
        let triv = GaloisAction::trivial(1);
        let (sub, _) = norm_subgroup(&m6, &triv).unwrap();
        assert_eq!(sub.group().order().unwrap(), int(6));

        let z = LatticeQuotient::new(Lattice::full(1), Lattice::zero(1)).unwrap();
        let neg = GaloisAction::new(GroupKind::Cyclic(2), 1, vec![imat(1, &[&[-1]])]).unwrap();
        let (sub, _) = norm_subgroup(&z, &neg).unwrap();
        assert!(sub.group().is_trivial());

        let id2 = GaloisAction::new(GroupKind::Cyclic(2), 1, vec![imat(1, &[&[1]])]).unwrap();
        let (sub, _) = norm_subgroup(&m6, &id2).unwrap();
        assert_eq!(sub.group().order().unwrap(), int(3));
        let h = h2_cyclic(&m6, &id2).unwrap();
        assert_eq!(h.group.group().invariant_factors(), &[int(2)]);
    }

    #[test]
    fn h2_examples() {
        let m2 = cyclic_module(2);
        assert!(h2_cyclic(&m2, &GaloisAction::trivial(1)).unwrap().group.group().is_trivial());
        let id2 = GaloisAction::new(GroupKind::Cyclic(2), 1, vec![imat(1, &[&[1]])]).unwrap();
        assert_eq!(h2_cyclic(&m2, &id2).unwrap().group.group().order().unwrap(), int(2));
        let z = LatticeQuotient::new(Lattice::full(1), Lattice::zero(1)).unwrap();
        let neg = GaloisAction::new(GroupKind::Cyclic(2), 1, vec![imat(1, &[&[-1]])]).unwrap();
        assert!(h2_cyclic(&z, &neg).unwrap().group.group().is_trivial());
    }

    #[test]
    fn relations_are_checked_on_the_module() {
        let m6 = cyclic_module(6);
        let five = vec![imat(1, &[&[5]])];
        assert!(GaloisAction::new(GroupKind::Cyclic(2), 1, five.clone()).is_err());
        assert!(GaloisAction::on_module(GroupKind::Cyclic(2), five, &m6).is_ok());
        assert!(GaloisAction::new(GroupKind::Cyclic(4), 1, vec![imat(1, &[&[1]])]).is_err());
    }

    #[test]
    fn s3_on_d4() {
        let rd = BasedRootDatum::new("D4".parse().unwrap()).unwrap();
        let t = rd.simple_type();
        let g = GaloisAction::from_automorphisms(
            &rd,
            GroupKind::S3,
            vec![named_automorphism(t, "flip").unwrap(), named_automorphism(t, "rotation").unwrap()],
        )
        .unwrap();
        assert_eq!(g.elements().unwrap().len(), 6);
        let inv = rd.center_characters().invariants(g.generators()).unwrap();
        assert!(inv.group().is_trivial());
        assert!(matches!(
            h2_cyclic(&rd.center_characters(), &g),
            Err(Error::NonCyclic(_))
        ));
    }

    #[test]
    fn character_validation() {
        let m2 = cyclic_module(2);
        let id2 = GaloisAction::new(GroupKind::Cyclic(2), 1, vec![imat(1, &[&[1]])]).unwrap();
        let inv2 = m2.invariants(id2.generators()).unwrap();
        let half = BrCharacter::new(inv2, vec![rat(1, 2)], FieldMode::Real).unwrap();
        assert!(validate_br_character(&half, &m2, &id2).unwrap().is_empty());

        let m6 = cyclic_module(6);
        let inv6 = m6.invariants(id2.generators()).unwrap();
        let third = BrCharacter::new(inv6.clone(), vec![rat(1, 3)], FieldMode::Real).unwrap();
        let v = validate_br_character(&third, &m6, &id2).unwrap();
        assert!(v.iter().any(|s| s.contains("½ℤ/ℤ")), "{v:?}");

        let sixth = BrCharacter::new(inv6, vec![rat(1, 6)], FieldMode::Padic).unwrap();
        assert!(validate_br_character(&sixth, &m6, &GaloisAction::trivial(1))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn vanishing_tests() {
        let (rd, pq) = a5();
        let t0 = BrCharacter::new(pq.clone(), vec![rat(1, 6)], FieldMode::Padic).unwrap();
        let full = LatticeQuotient::new(Lattice::full(5), rd.root_lattice().clone()).unwrap();
        let id = GroupHom::new(full.clone(), pq.clone(), IntMatrix::identity(5)).unwrap();
        assert!(!br_vanishing_test(&t0, &id).unwrap());
        assert!(br_vanishing_test(&BrCharacter::zero(pq.clone(), FieldMode::Padic), &id).unwrap());

        // M = 2P + Q under the flip: its invariants land in Q
        let flip = GaloisAction::from_automorphisms(
            &rd,
            GroupKind::Cyclic(2),
            vec![named_automorphism(rd.simple_type(), "flip").unwrap()],
        )
        .unwrap();
        let inv = pq.invariants(flip.generators()).unwrap();
        assert_eq!(inv.group().order().unwrap(), int(2));
        assert!(inv.outer().contains(&ivec(&[0, 0, 1, 0, 0])).unwrap());
        let m = Lattice::full(5).scaled(&int(2)).sum(rd.root_lattice()).unwrap();
        let m_fixed = crate::lattice::fixed_sublattice(&m, flip.generators()).unwrap();
        let q_fixed = crate::lattice::fixed_sublattice(rd.root_lattice(), flip.generators()).unwrap();
        assert_eq!(m_fixed, q_fixed);
        let src = LatticeQuotient::new(m_fixed.sum(rd.root_lattice()).unwrap(), rd.root_lattice().clone()).unwrap();
        let phi = GroupHom::new(src, inv.clone(), IntMatrix::identity(5)).unwrap();
        let t = BrCharacter::new(inv, vec![rat(1, 2)], FieldMode::Real).unwrap();
        assert!(br_vanishing_test(&t, &phi).unwrap());
    }

    #[test]
    fn weight_values_and_kernels() {
        let (_, pq) = a5();
        let t = BrCharacter::from_weight_values(
            pq.clone(),
            &[(ivec(&[1, 0, 0, 0, 0]), rat(1, 2))],
            FieldMode::Padic,
        )
        .unwrap();
        assert_eq!(t.eval_vector(&ivec(&[0, 0, 1, 0, 0])).unwrap(), rat(1, 2));
        let ker = t.kernel_lattice().unwrap();
        // ker is 2P + Q
        let expected = Lattice::full(5)
            .scaled(&int(2))
            .sum(pq.inner())
            .unwrap();
        assert_eq!(ker, expected);
        assert!(BrCharacter::from_weight_values(pq, &[], FieldMode::Padic).is_err());
        assert_eq!(parse_qz("7/6").unwrap(), rat(1, 6));
        assert_eq!(format_qz(&rat(-1, 2)), "1/2");
        assert!(parse_qz("1/0").is_err());
    }

    proptest! {
        // A valid real character is constant on norm cosets of the invariants.
        #[test]
        fn real_characters_respect_norm_cosets(a in 0i64..6, b in 0i64..6, pick in 0usize..4) {
            let m = LatticeQuotient::new(
                Lattice::full(2),
                Lattice::from_matrix(&imat(2, &[&[2, 0], &[0, 6]])),
            ).unwrap();
            let g = GaloisAction::on_module(GroupKind::Cyclic(2), vec![imat(2, &[&[1, 0], &[0, 5]])], &m).unwrap();
            let inv = m.invariants(g.generators()).unwrap();
            let chars: Vec<_> = all_characters(&inv, FieldMode::Real).unwrap()
                .into_iter()
                .filter(|c| validate_br_character(c, &m, &g).unwrap().is_empty())
                .collect();
            prop_assume!(!chars.is_empty());
            let chi = &chars[pick % chars.len()];
            let x = inv.lift(&inv.group().reduce(&ivec(&[a, b])[..inv.group().ngens()])).unwrap();
            let norms = norm_lattice(&m, &g).unwrap();
            for n in norms.basis_vecs() {
                let y: Vec<Int> = x.iter().zip(&n).map(|(p, q)| p + q).collect();
                prop_assert_eq!(chi.eval_vector(&x).unwrap(), chi.eval_vector(&y).unwrap());
            }
        }
    }
}
