//! Combinatorial invariants `(𝒳, Σ, 𝒟, ρ, ς)` of spherical homogeneous
//! spaces, their derived objects, Galois stability, lifts of the Galois
//! action to colors and the quasi-affine cover.
//!
//! Conventions: `𝒳 ⊆ P` is given by a user basis `b₁..b_r` (rows, in
//! ω-coordinates). A functional on `𝒳` (an element of `V`) is the vector of its
//! values on that basis. If a Galois element acts on `𝒳` by `B·g = G_X·B`, it
//! acts on `V` by `ρ ↦ G_X⁻¹·ρ` so that pairings are preserved.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::galois::{GaloisAction, GroupKind};
use crate::lattice::{hnf, is_primitive, unimodular_inverse, GroupHom, Lattice, LatticeQuotient};
use crate::polyhedral;
use crate::rootdata::BasedRootDatum;
use crate::{rat_of, Int, IntMatrix, Rat, RatMatrix};

/// Largest number of colors accepted by lift enumeration.
pub const MAX_LIFT_COLORS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Color {
    pub id: String,
    /// Values of `ρ(D)` on the 𝒳-basis.
    pub rho: Vec<Rat>,
    /// `ς(D)` as sorted 0-based node indices.
    pub sigma_set: Vec<usize>,
}

impl Color {
    pub fn new(id: impl Into<String>, rho: Vec<Rat>, sigma_set: Vec<usize>) -> Self {
        let mut sigma_set = sigma_set;
        sigma_set.sort_unstable();
        sigma_set.dedup();
        Color {
            id: id.into(),
            rho,
            sigma_set,
        }
    }
}

/// A point of `Ω = image(ρ × ς)` with the colors above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaElement {
    pub rho: Vec<Rat>,
    pub sigma_set: Vec<usize>,
    /// Indices into the datum's colors.
    pub colors: Vec<usize>,
}

impl OmegaElement {
    pub fn multiplicity(&self) -> usize {
        self.colors.len()
    }
}

/// For each Galois generator, the image of every color index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorLift {
    pub perms: Vec<Vec<usize>>,
}

impl ColorLift {
    /// `id ↦ id` pairs that move, per generator, e.g. `D1+↔D5-`.
    pub fn describe(&self, colors: &[Color]) -> Vec<String> {
        self.perms
            .iter()
            .map(|p| {
                let mut parts = Vec::new();
                for (i, &j) in p.iter().enumerate() {
                    if i < j && p[j] == i {
                        parts.push(format!("{}<->{}", colors[i].id, colors[j].id));
                    } else if i != j && p[j] != i {
                        parts.push(format!("{}->{}", colors[i].id, colors[j].id));
                    }
                }
                if parts.is_empty() {
                    "identity".into()
                } else {
                    parts.join(", ")
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalDatum {
    rd: BasedRootDatum,
    x_basis: IntMatrix,
    x: Lattice,
    // Hermite coordinates → user-basis coordinates
    to_user: IntMatrix,
    sigma: Vec<Vec<Int>>,
    colors: Vec<Color>,
    sigma234: Vec<usize>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidDatum(msg.into())
}

impl SphericalDatum {
    /// `x_basis` and `sigma` are rows in ω-coordinates; `sigma234` indexes
    /// into `sigma`.
    pub fn new(
        rd: BasedRootDatum,
        x_basis: Vec<Vec<Int>>,
        sigma: Vec<Vec<Int>>,
        colors: Vec<Color>,
        sigma234: Vec<usize>,
    ) -> Result<Self> {
        let n = rd.rank();
        let b = IntMatrix::from_rows(n, &x_basis)?;
        let h = hnf(&b);
        if h.rank != b.rows() {
            return Err(invalid("the 𝒳-basis rows are linearly dependent"));
        }
        let x = Lattice::from_matrix(&b);
        let r = b.rows();

        for (k, s) in sigma.iter().enumerate() {
            if s.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.len(),
                });
            }
            if !x.contains(s)? {
                return Err(invalid(format!("spherical root {k} is not in 𝒳")));
            }
            if !rd.root_lattice().contains(s)? {
                return Err(invalid(format!("spherical root {k} is not in the root lattice")));
            }
        }
        if !sigma.is_empty() {
            let s = IntMatrix::from_rows(n, &sigma)?;
            if hnf(&s).rank != sigma.len() {
                return Err(invalid("the spherical roots are linearly dependent"));
            }
        }

        let mut ids = BTreeSet::new();
        for c in &colors {
            if !ids.insert(c.id.clone()) {
                return Err(invalid(format!("duplicate color id {:?}", c.id)));
            }
            if c.rho.len() != r {
                return Err(invalid(format!(
                    "color {:?}: ρ has {} entries, 𝒳 has rank {r}",
                    c.id,
                    c.rho.len()
                )));
            }
            if c.sigma_set.is_empty() {
                return Err(invalid(format!("color {:?} is moved by no simple root", c.id)));
            }
            if let Some(&bad) = c.sigma_set.iter().find(|&&i| i >= n) {
                return Err(invalid(format!("color {:?}: node {} out of range", c.id, bad + 1)));
            }
        }
        let mut flags = sigma234.clone();
        flags.sort_unstable();
        flags.dedup();
        if let Some(&bad) = flags.iter().find(|&&k| k >= sigma.len()) {
            return Err(invalid(format!("Σ₂₃₄ flag {} does not index a spherical root", bad + 1)));
        }

        let d = SphericalDatum {
            rd,
            x_basis: b,
            x,
            to_user: h.u,
            sigma,
            colors,
            sigma234: flags,
        };
        for a in 0..n {
            let k = d.moving_colors(a).len();
            if k > 2 {
                return Err(invalid(format!("simple root {} moves {k} colors", a + 1)));
            }
            if k == 2 && !d.simple_root_in_sigma(a) {
                return Err(invalid(format!(
                    "simple root {} moves two colors but is not a spherical root",
                    a + 1
                )));
            }
        }
        d.omega_sets()?;
        Ok(d)
    }

    pub fn root_datum(&self) -> &BasedRootDatum {
        &self.rd
    }

    pub fn x_basis(&self) -> &IntMatrix {
        &self.x_basis
    }

    pub fn x_lattice(&self) -> &Lattice {
        &self.x
    }

    pub fn x_rank(&self) -> usize {
        self.x_basis.rows()
    }

    pub fn sigma(&self) -> &[Vec<Int>] {
        &self.sigma
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn sigma234(&self) -> &[usize] {
        &self.sigma234
    }

    pub fn color_index(&self, id: &str) -> Option<usize> {
        self.colors.iter().position(|c| c.id == id)
    }

    /// Non-fatal remarks, e.g. spherical roots that are not primitive in 𝒳.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (k, s) in self.sigma.iter().enumerate() {
            if let Ok(c) = self.x_coords(s) {
                if !is_primitive(&c) {
                    out.push(format!("spherical root {} is not primitive in 𝒳", k + 1));
                }
            }
        }
        out
    }

    /// Coordinates of `v ∈ 𝒳` in the user basis.
    pub fn x_coords(&self, v: &[Int]) -> Result<Vec<Int>> {
        match self.x.coordinates(v)? {
            Some(c) => self.to_user.left_apply(&c),
            None => Err(Error::NotSubset(format!("{v:?} is not in 𝒳"))),
        }
    }

    /// `⟨ρ, v⟩` for a functional in 𝒳-dual coordinates and `v ∈ 𝒳`.
    pub fn pair(&self, rho: &[Rat], v: &[Int]) -> Result<Rat> {
        let c = self.x_coords(v)?;
        Ok(c.iter().zip(rho).map(|(a, b)| rat_of(a) * b).sum())
    }

    /// `α_i^∨|𝒳` in 𝒳-dual coordinates.
    pub fn coroot_restriction(&self, i: usize) -> Vec<Rat> {
        self.x_basis.column(i).iter().map(rat_of).collect()
    }

    /// Colors `D` with `αᵢ ∈ ς(D)`.
    pub fn moving_colors(&self, i: usize) -> Vec<usize> {
        (0..self.colors.len())
            .filter(|&k| self.colors[k].sigma_set.contains(&i))
            .collect()
    }

    fn simple_root_in_sigma(&self, i: usize) -> bool {
        let a = self.rd.simple_root(i);
        self.sigma.contains(&a)
    }

    fn doubled_simple_root_in_sigma(&self, i: usize) -> bool {
        let a: Vec<Int> = self.rd.simple_root(i).iter().map(|x| x * 2).collect();
        self.sigma.contains(&a)
    }

    /// `Ω` with multiplicities, in order of first appearance.
    pub fn omega(&self) -> Result<Vec<OmegaElement>> {
        let mut out: Vec<OmegaElement> = Vec::new();
        for (k, c) in self.colors.iter().enumerate() {
            match out
                .iter_mut()
                .find(|o| o.rho == c.rho && o.sigma_set == c.sigma_set)
            {
                Some(o) => o.colors.push(k),
                None => out.push(OmegaElement {
                    rho: c.rho.clone(),
                    sigma_set: c.sigma_set.clone(),
                    colors: vec![k],
                }),
            }
        }
        if let Some(o) = out.iter().find(|o| o.colors.len() > 2) {
            return Err(invalid(format!(
                "{} colors share the same (ρ, ς)",
                o.colors.len()
            )));
        }
        Ok(out)
    }

    /// `(Ω⁽¹⁾, Ω⁽²⁾)`.
    pub fn omega_sets(&self) -> Result<(Vec<OmegaElement>, Vec<OmegaElement>)> {
        let all = self.omega()?;
        Ok(all.into_iter().partition(|o| o.multiplicity() == 1))
    }

    /// `Σ⁽²⁾` as indices into Σ: simple spherical roots whose two colors
    /// share `ρ`.
    pub fn sigma2(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (k, s) in self.sigma.iter().enumerate() {
            let Some(i) = (0..self.rd.rank()).find(|&i| self.rd.simple_root(i) == *s) else {
                continue;
            };
            let moving = self.moving_colors(i);
            if moving.len() != 2 {
                return Err(invalid(format!(
                    "simple spherical root α{} moves {} colors instead of 2",
                    i + 1,
                    moving.len()
                )));
            }
            if self.colors[moving[0]].rho == self.colors[moving[1]].rho {
                out.push(k);
            }
        }
        Ok(out)
    }

    /// `(Σ^sc, Σ^N)`: double the `Σ₂₃₄` flags, resp. the flags and `Σ⁽²⁾`.
    pub fn sigma_variants(&self) -> Result<(Vec<Vec<Int>>, Vec<Vec<Int>>)> {
        let s2 = self.sigma2()?;
        if let Some(k) = self.sigma234.iter().find(|k| s2.contains(k)) {
            return Err(invalid(format!(
                "spherical root {} is flagged in Σ₂₃₄ but lies in Σ⁽²⁾",
                k + 1
            )));
        }
        let double = |v: &Vec<Int>| v.iter().map(|x| x * 2).collect::<Vec<Int>>();
        let mut sc = Vec::new();
        let mut nn = Vec::new();
        for (k, s) in self.sigma.iter().enumerate() {
            let flagged = self.sigma234.contains(&k);
            sc.push(if flagged { double(s) } else { s.clone() });
            nn.push(if flagged || s2.contains(&k) {
                double(s)
            } else {
                s.clone()
            });
        }
        Ok((sc, nn))
    }

    /// `(𝒳/⟨Σ^N⟩, 𝒳/⟨Σ^sc⟩, projection)`, the character groups of `A` and
    /// `A^ker`.
    pub fn aut_character_lattices(&self) -> Result<(LatticeQuotient, LatticeQuotient, GroupHom)> {
        let (sc, nn) = self.sigma_variants()?;
        let n = self.rd.rank();
        let xa = LatticeQuotient::new(self.x.clone(), Lattice::from_generators(n, &nn)?)?;
        let xaker = LatticeQuotient::new(self.x.clone(), Lattice::from_generators(n, &sc)?)?;
        let proj = GroupHom::new(xa.clone(), xaker.clone(), IntMatrix::identity(n))?;
        Ok((xa, xaker, proj))
    }

    /// Matrix `G_X` with `B·g = G_X·B`; fails unless `𝒳·g = 𝒳`.
    pub fn x_action(&self, g: &IntMatrix) -> Result<IntMatrix> {
        if !self.x.is_stable(g)? {
            return Err(Error::NotStable("𝒳 is moved".into()));
        }
        let rows = self
            .x_basis
            .row_vecs()
            .iter()
            .map(|b| self.x_coords(&g.left_apply(b)?))
            .collect::<Result<Vec<_>>>()?;
        IntMatrix::from_rows(self.x_rank(), &rows)
    }

    /// Contragredient action on `V`: `ρ ↦ G_X⁻¹·ρ`.
    pub fn v_action(&self, g: &IntMatrix) -> Result<RatMatrix> {
        let inv = unimodular_inverse(&self.x_action(g)?)?;
        Ok(inv.map(rat_of))
    }

    /// Node permutation of a `*`-action matrix (`ωᵢ ↦ ω_{π(i)}`).
    pub fn node_permutation(g: &IntMatrix) -> Result<Vec<usize>> {
        let n = g.rows();
        let mut perm = Vec::with_capacity(n);
        for i in 0..n {
            let ones: Vec<usize> = (0..n).filter(|&j| g[(i, j)].is_one()).collect();
            let zeros = (0..n).filter(|&j| g[(i, j)].is_zero()).count();
            if ones.len() != 1 || zeros != n - 1 {
                return Err(Error::InvalidAutomorphism(
                    "action matrix is not a node permutation".into(),
                ));
            }
            perm.push(ones[0]);
        }
        Ok(perm)
    }

    fn act_on_omega(&self, v: &RatMatrix, perm: &[usize], o: &OmegaElement) -> Result<(Vec<Rat>, Vec<usize>)> {
        let rho = v.apply(&o.rho)?;
        let mut s: Vec<usize> = o.sigma_set.iter().map(|&i| perm[i]).collect();
        s.sort_unstable();
        Ok((rho, s))
    }

    /// For one generator, the permutation it induces on `Ω` (indices into
    /// [`Self::omega`]), or a description of what breaks stability.
    fn omega_permutation(&self, g: &IntMatrix) -> Result<std::result::Result<Vec<usize>, String>> {
        if !self.x.is_stable(g)? {
            return Ok(Err("𝒳 is not preserved".into()));
        }
        for (k, s) in self.sigma.iter().enumerate() {
            let img = g.left_apply(s)?;
            if !self.sigma.contains(&img) {
                return Ok(Err(format!("spherical root {} is mapped outside Σ", k + 1)));
            }
        }
        let perm = Self::node_permutation(g)?;
        let v = self.v_action(g)?;
        let omega = self.omega()?;
        let mut out = Vec::with_capacity(omega.len());
        for (k, o) in omega.iter().enumerate() {
            let (rho, s) = self.act_on_omega(&v, &perm, o)?;
            match omega.iter().position(|t| t.rho == rho && t.sigma_set == s) {
                Some(j) if omega[j].multiplicity() == o.multiplicity() => out.push(j),
                Some(_) => {
                    return Ok(Err(format!(
                        "Ω element {} changes multiplicity",
                        k + 1
                    )))
                }
                None => return Ok(Err(format!("Ω element {} is mapped outside Ω", k + 1))),
            }
        }
        Ok(Ok(out))
    }

    /// First generator (with a reason) that fails to preserve the invariants.
    pub fn stability_witness(&self, g: &GaloisAction) -> Result<Option<(usize, String)>> {
        if g.dim() != self.rd.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rd.rank(),
                found: g.dim(),
            });
        }
        for (i, m) in g.generators().iter().enumerate() {
            if let Err(why) = self.omega_permutation(m)? {
                return Ok(Some((i, why)));
            }
        }
        Ok(None)
    }

    /// Whether every generator preserves `𝒳`, `Σ`, `Ω⁽¹⁾` and `Ω⁽²⁾`.
    pub fn invariants_stable(&self, g: &GaloisAction) -> Result<bool> {
        Ok(self.stability_witness(g)?.is_none())
    }

    /// All systems of fiberwise bijections over the `Ω`-action, one
    /// permutation of the colors per generator, before imposing the group
    /// law. Deterministic order, identity choices first.
    pub fn lift_candidates(&self, g: &GaloisAction) -> Result<Vec<ColorLift>> {
        if self.colors.len() > MAX_LIFT_COLORS {
            return Err(Error::TooManyColors(self.colors.len()));
        }
        if let Some((i, why)) = self.stability_witness(g)? {
            return Err(Error::Precondition(format!(
                "generator {} does not preserve the invariants: {why}",
                i + 1
            )));
        }
        let omega = self.omega()?;
        let m = self.colors.len();
        // per generator: all color permutations compatible with its Ω-map
        let mut per_gen: Vec<Vec<Vec<usize>>> = Vec::new();
        for gm in g.generators() {
            let pi = self.omega_permutation(gm)?.map_err(Error::Precondition)?;
            let mut partial: Vec<Vec<usize>> = vec![vec![usize::MAX; m]];
            for (k, o) in omega.iter().enumerate() {
                let target = &omega[pi[k]].colors;
                let choices = permutations(target);
                let mut next = Vec::with_capacity(partial.len() * choices.len());
                for p in &partial {
                    for ch in &choices {
                        let mut q = p.clone();
                        for (src, dst) in o.colors.iter().zip(ch) {
                            q[*src] = *dst;
                        }
                        next.push(q);
                    }
                }
                partial = next;
            }
            per_gen.push(partial);
        }
        let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        for options in per_gen {
            let mut next = Vec::new();
            for prefix in &out {
                for p in &options {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    next.push(v);
                }
            }
            out = next;
        }
        Ok(out.into_iter().map(|perms| ColorLift { perms }).collect())
    }

    /// The candidates that define an action of the abstract group.
    pub fn enumerate_lifts(&self, g: &GaloisAction) -> Result<Vec<ColorLift>> {
        let m = self.colors.len();
        Ok(self
            .lift_candidates(g)?
            .into_iter()
            .filter(|l| satisfies_group_law(g.kind(), &l.perms, m))
            .collect())
    }

    /// No color has `ρ = 0` and the `ρ(D)` span a strictly convex cone.
    pub fn quasiaffine_test(&self) -> Result<bool> {
        let rhos: Vec<Vec<Rat>> = self.colors.iter().map(|c| c.rho.clone()).collect();
        quasiaffine_test_rhos(&rhos, self.x_rank())
    }

    /// The cover `G × C` construction with the integer `q`.
    pub fn quasiaffine_cover(&self, q: &Int) -> Result<QuasiAffineCover> {
        if q <= &Int::zero() {
            return Err(Error::Precondition("q must be positive".into()));
        }
        let n = self.rd.rank();
        let m = self.colors.len();
        let r = self.x_rank();
        let dim = n + m;
        let mut rows: Vec<Vec<Int>> = Vec::with_capacity(r + m);
        for b in self.x_basis.row_vecs() {
            let mut v = b.clone();
            v.resize(dim, Int::zero());
            rows.push(v);
        }
        let mut rs = Vec::with_capacity(m);
        for (k, c) in self.colors.iter().enumerate() {
            let half = c.sigma_set.iter().all(|&i| self.doubled_simple_root_in_sigma(i));
            let rd_k = if half { Int::from(2) } else { Int::one() };
            let mut v = vec![Int::zero(); dim];
            for &i in &c.sigma_set {
                v[i] = q * &rd_k;
            }
            v[n + k] = Int::one();
            rows.push(v);
            rs.push(rd_k);
        }
        let x_basis = IntMatrix::from_rows(dim, &rows)?;
        let rho: Vec<Vec<Rat>> = self
            .colors
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let mut v = c.rho.clone();
                for j in 0..m {
                    v.push(if j == k { rat_of(q) } else { Rat::zero() });
                }
                v
            })
            .collect();
        let cover = QuasiAffineCover {
            q: q.clone(),
            ambient: dim,
            x_basis,
            rho: rho.clone(),
            r: rs,
            inequalities: rho,
        };
        self.check_cover(&cover)?;
        if !quasiaffine_test_rhos(&cover.rho, r + m)? {
            return Err(Error::Internal("cover is not quasi-affine".into()));
        }
        Ok(cover)
    }

    fn check_cover(&self, cover: &QuasiAffineCover) -> Result<()> {
        let coroot = |i: usize| -> Vec<Rat> { cover.x_basis.column(i).iter().map(rat_of).collect() };
        let half = Rat::new(Int::one(), Int::from(2));
        for i in 0..self.rd.rank() {
            let moving = self.moving_colors(i);
            let a = coroot(i);
            let fail = |case: u8, detail: String| Error::CoverCondition {
                case,
                root: i + 1,
                detail,
            };
            match moving.len() {
                2 => {
                    let sum: Vec<Rat> = cover.rho[moving[0]]
                        .iter()
                        .zip(&cover.rho[moving[1]])
                        .map(|(x, y)| x + y)
                        .collect();
                    if sum != a {
                        return Err(fail(1, "ρ′(D⁺) + ρ′(D⁻) differs from the coroot".into()));
                    }
                }
                1 => {
                    let rho = &cover.rho[moving[0]];
                    if self.doubled_simple_root_in_sigma(i) {
                        let want: Vec<Rat> = a.iter().map(|x| x * &half).collect();
                        if *rho != want {
                            return Err(fail(2, "ρ′(D) differs from half the coroot".into()));
                        }
                    } else if *rho != a {
                        return Err(fail(3, "ρ′(D) differs from the coroot".into()));
                    }
                }
                _ => {
                    if a.iter().any(|x| !x.is_zero()) {
                        return Err(fail(4, "no color is moved but the coroot is nonzero on 𝒳′".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Output of [`SphericalDatum::quasiaffine_cover`]. The ambient lattice is
/// `P ⊕ ℤ^𝒟`; the basis of `𝒳′` is the 𝒳-basis followed by the `λ_D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiAffineCover {
    pub q: Int,
    pub ambient: usize,
    pub x_basis: IntMatrix,
    /// `ρ′(D)` on the basis of `𝒳′`.
    pub rho: Vec<Vec<Rat>>,
    /// `r_D ∈ {1, 2}`.
    pub r: Vec<Int>,
    /// Inner normals of the weight monoid: `⟨ρ′(D), λ⟩ ≥ 0`.
    pub inequalities: Vec<Vec<Rat>>,
}

pub fn quasiaffine_test_rhos(rhos: &[Vec<Rat>], dim: usize) -> Result<bool> {
    if rhos.iter().any(|v| v.iter().all(|x| x.is_zero())) {
        return Ok(false);
    }
    if rhos.is_empty() {
        return Ok(true);
    }
    // independent vectors always span a strictly convex cone; this also
    // keeps large covers away from the LP dimension cap
    let m = RatMatrix::from_rows(dim, rhos)?;
    if rational_rank(&m) == rhos.len() {
        return Ok(true);
    }
    polyhedral::is_strictly_convex(rhos, dim)
}

fn rational_rank(m: &RatMatrix) -> usize {
    let mut a = m.clone();
    let mut rank = 0;
    for c in 0..a.cols() {
        let Some(p) = (rank..a.rows()).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(rank, p);
        for i in 0..a.rows() {
            if i != rank && !a[(i, c)].is_zero() {
                let k = -(a[(i, c)].clone() / a[(rank, c)].clone());
                a.add_row_multiple(i, rank, &k);
            }
        }
        rank += 1;
    }
    rank
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    // apply p, then q
    p.iter().map(|&i| q[i]).collect()
}

fn power(p: &[usize], k: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (0..p.len()).collect();
    for _ in 0..k {
        out = compose(&out, p);
    }
    out
}

fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &j)| i == j)
}

fn satisfies_group_law(kind: GroupKind, perms: &[Vec<usize>], m: usize) -> bool {
    let _ = m;
    match kind {
        GroupKind::Trivial => true,
        GroupKind::Cyclic(n) => is_identity(&power(&perms[0], n)),
        GroupKind::S3 => {
            let (s, r) = (&perms[0], &perms[1]);
            is_identity(&power(s, 2))
                && is_identity(&power(r, 3))
                && is_identity(&power(&compose(s, r), 2))
        }
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::rootdata::{named_automorphism, SimpleType};
    use crate::{ivec, rat};

    pub fn rd(label: &str) -> BasedRootDatum {
        BasedRootDatum::new(label.parse::<SimpleType>().unwrap()).unwrap()
    }

    pub fn flip(rd: &BasedRootDatum) -> GaloisAction {
        let a = named_automorphism(rd.simple_type(), "flip").unwrap();
        GaloisAction::from_automorphisms(rd, GroupKind::Cyclic(2), vec![a]).unwrap()
    }

    pub fn rv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    pub fn sl6() -> SphericalDatum {
        let rd = rd("A5");
        let a1 = ivec(&[2, -1, 0, 0, 0]);
        let a5 = ivec(&[0, 0, 0, -1, 2]);
        let colors = vec![
            Color::new("D1+", rv(&[1, 0, 0]), vec![0]),
            Color::new("D1-", rv(&[1, 0, 0]), vec![0]),
            Color::new("D5+", rv(&[0, 0, 1]), vec![4]),
            Color::new("D5-", rv(&[0, 0, 1]), vec![4]),
            Color::new("D2", rv(&[-1, 0, 0]), vec![1]),
            Color::new("D4", rv(&[0, 0, -1]), vec![3]),
        ];
        SphericalDatum::new(
            rd,
            vec![a1.clone(), ivec(&[0, 0, 1, 0, 0]), a5.clone()],
            vec![a1, a5],
            colors,
            vec![],
        )
        .unwrap()
    }

    pub fn so10() -> SphericalDatum {
        SphericalDatum::new(
            rd("D5"),
            vec![ivec(&[1, 0, 0, 0, 0])],
            vec![ivec(&[2, 0, 0, 0, 0])],
            vec![Color::new("D1", rv(&[1]), vec![0])],
            vec![],
        )
        .unwrap()
    }

    pub fn sl3() -> SphericalDatum {
        SphericalDatum::new(
            rd("A2"),
            vec![ivec(&[1, 0]), ivec(&[0, 1])],
            vec![ivec(&[1, 1])],
            vec![
                Color::new("D1", rv(&[1, 0]), vec![0]),
                Color::new("D2", rv(&[0, 1]), vec![1]),
            ],
            vec![],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::{int, ivec};

    #[test]
    fn omega_partitions() {
        let (o1, o2) = so10().omega_sets().unwrap();
        assert_eq!(o1.len(), 1);
        assert_eq!(o1[0].rho, rv(&[1]));
        assert_eq!(o1[0].sigma_set, vec![0]);
        assert!(o2.is_empty());

        let (o1, o2) = sl6().omega_sets().unwrap();
        assert_eq!((o1.len(), o2.len()), (2, 2));

        let bare = SphericalDatum::new(rd("A2"), vec![ivec(&[1, 0]), ivec(&[0, 1])], vec![], vec![], vec![]).unwrap();
        let (o1, o2) = bare.omega_sets().unwrap();
        assert!(o1.is_empty() && o2.is_empty());
    }

    #[test]
    fn malformed_data_rejected() {
        let three = (0..3)
            .map(|k| Color::new(format!("D{k}"), rv(&[1, 0, 0]), vec![0]))
            .collect();
        let r = SphericalDatum::new(
            rd("A5"),
            vec![ivec(&[2, -1, 0, 0, 0]), ivec(&[0, 0, 1, 0, 0]), ivec(&[0, 0, 0, -1, 2])],
            vec![ivec(&[2, -1, 0, 0, 0])],
            three,
            vec![],
        );
        assert!(matches!(r, Err(Error::InvalidDatum(_))));
        // ω₁ is not in the root lattice
        let r = SphericalDatum::new(rd("A2"), vec![ivec(&[1, 0]), ivec(&[0, 1])], vec![ivec(&[1, 0])], vec![], vec![]);
        assert!(r.is_err());
    }

    #[test]
    fn sigma_two_and_doublings() {
        let d = sl6();
        assert_eq!(d.sigma2().unwrap(), vec![0, 1]);
        let (sc, nn) = d.sigma_variants().unwrap();
        assert_eq!(sc, vec![ivec(&[2, -1, 0, 0, 0]), ivec(&[0, 0, 0, -1, 2])]);
        assert_eq!(nn, vec![ivec(&[4, -2, 0, 0, 0]), ivec(&[0, 0, 0, -2, 4])]);

        assert!(so10().sigma2().unwrap().is_empty());
        let (sc, nn) = sl3().sigma_variants().unwrap();
        assert_eq!(sc, vec![ivec(&[1, 1])]);
        assert_eq!(sc, nn);

        let mut flagged = sl6();
        flagged.sigma234 = vec![0];
        assert!(flagged.sigma_variants().is_err());
    }

    #[test]
    fn automorphism_characters() {
        let (xa, xaker, proj) = sl6().aut_character_lattices().unwrap();
        let f: Vec<Int> = xa.group().invariant_factors().to_vec();
        assert_eq!(f, vec![int(2), int(2), int(0)]);
        assert_eq!(xaker.group().invariant_factors(), &[int(0)]);
        // ω₃ generates 𝒳/⟨Σ⟩
        let c = xaker.class_of(&ivec(&[0, 0, 1, 0, 0])).unwrap();
        assert!(c == vec![int(1)] || c == vec![int(-1)]);
        // ⟨Σ^sc⟩/⟨Σ^N⟩ is elementary abelian of order 2^|Σ⁽²⁾|
        let k = LatticeQuotient::new(xaker.inner().clone(), xa.inner().clone()).unwrap();
        assert_eq!(k.group().invariant_factors(), &[int(2), int(2)]);
        assert!(!proj.is_zero());

        let (xa, _, _) = sl3().aut_character_lattices().unwrap();
        assert_eq!(xa.group().invariant_factors(), &[int(0)]);
    }

    #[test]
    fn galois_stability() {
        let d = sl6();
        let g = flip(d.root_datum());
        assert!(d.invariants_stable(&g).unwrap());
        let d3 = sl3();
        assert!(d3.invariants_stable(&flip(d3.root_datum())).unwrap());

        let moved = SphericalDatum::new(rd("A2"), vec![ivec(&[1, 0])], vec![], vec![], vec![]).unwrap();
        assert!(!moved.invariants_stable(&flip(moved.root_datum())).unwrap());
        let w = moved.stability_witness(&flip(moved.root_datum())).unwrap().unwrap();
        assert_eq!(w.0, 0);
    }

    #[test]
    fn contragredient_swaps_v1_v5() {
        let d = sl6();
        let g = flip(d.root_datum());
        let v = d.v_action(&g.generators()[0]).unwrap();
        assert_eq!(v.apply(&rv(&[1, 0, 0])).unwrap(), rv(&[0, 0, 1]));
        assert_eq!(v.apply(&rv(&[0, 1, 0])).unwrap(), rv(&[0, 1, 0]));
        // pairings are preserved: ⟨γρ, γλ⟩ = ⟨ρ, λ⟩
        let lam = ivec(&[2, -1, 1, 0, 0]);
        let rho = rv(&[3, -2, 5]);
        let glam = g.generators()[0].left_apply(&lam).unwrap();
        assert_eq!(
            d.pair(&v.apply(&rho).unwrap(), &glam).unwrap(),
            d.pair(&rho, &lam).unwrap()
        );
    }

    #[test]
    fn lifts_of_the_sl6_flip() {
        let d = sl6();
        let g = flip(d.root_datum());
        let cands = d.lift_candidates(&g).unwrap();
        assert_eq!(cands.len(), 4);
        let lifts = d.enumerate_lifts(&g).unwrap();
        assert_eq!(lifts.len(), 2);
        let desc: Vec<String> = lifts.iter().map(|l| l.describe(d.colors())[0].clone()).collect();
        assert!(desc.iter().any(|s| s.contains("D1+<->D5-") && s.contains("D1-<->D5+")));
        assert!(desc.iter().any(|s| s.contains("D1+<->D5+") && s.contains("D1-<->D5-")));

        // a trivially acting involution: id or swap on each two-element fiber
        let triv = GaloisAction::new(GroupKind::Cyclic(2), 5, vec![IntMatrix::identity(5)]).unwrap();
        assert_eq!(d.enumerate_lifts(&triv).unwrap().len(), 4);
        assert_eq!(d.enumerate_lifts(&GaloisAction::trivial(5)).unwrap().len(), 1);

        let d3 = sl3();
        assert_eq!(d3.enumerate_lifts(&flip(d3.root_datum())).unwrap().len(), 1);
    }

    // Oracle: brute force over all permutations of the colors.
    #[test]
    fn lift_count_matches_brute_force() {
        let d = sl6();
        let g = flip(d.root_datum());
        let v = d.v_action(&g.generators()[0]).unwrap();
        let perm = SphericalDatum::node_permutation(&g.generators()[0]).unwrap();
        let colors = d.colors();
        let mut count = 0;
        for p in permutations(&(0..colors.len()).collect::<Vec<_>>()) {
            let equivariant = (0..colors.len()).all(|i| {
                let img = &colors[p[i]];
                let mut s: Vec<usize> = colors[i].sigma_set.iter().map(|&k| perm[k]).collect();
                s.sort_unstable();
                v.apply(&colors[i].rho).unwrap() == img.rho && s == img.sigma_set
            });
            if equivariant && is_identity(&power(&p, 2)) {
                count += 1;
            }
        }
        assert_eq!(count, d.enumerate_lifts(&g).unwrap().len());
    }

    #[test]
    fn quasi_affine() {
        assert!(sl3().quasiaffine_test().unwrap());
        // ρ = v and ρ = −v
        let line = SphericalDatum::new(
            rd("A2"),
            vec![ivec(&[1, 0]), ivec(&[0, 1])],
            vec![],
            vec![Color::new("a", rv(&[1, 0]), vec![0]), Color::new("b", rv(&[-1, 0]), vec![1])],
            vec![],
        )
        .unwrap();
        assert!(!line.quasiaffine_test().unwrap());
        let zero = SphericalDatum::new(rd("A2"), vec![ivec(&[1, 0])], vec![], vec![Color::new("z", rv(&[0]), vec![0])], vec![]).unwrap();
        assert!(!zero.quasiaffine_test().unwrap());
    }

    #[test]
    fn cover_of_sl3_mod_sl2() {
        let cover = sl3().quasiaffine_cover(&int(1)).unwrap();
        assert_eq!(cover.x_basis.rows(), 4);
        assert_eq!(cover.inequalities.len(), 2);
        assert!(quasiaffine_test_rhos(&cover.rho, 4).unwrap());
        assert_eq!(cover.rho[0], rv(&[1, 0, 1, 0]));

        let so = so10().quasiaffine_cover(&int(2)).unwrap();
        assert_eq!(so.x_basis.row(1)[0], int(2));

        let bare = SphericalDatum::new(rd("A2"), vec![], vec![], vec![], vec![]).unwrap();
        let c = bare.quasiaffine_cover(&int(1)).unwrap();
        assert!(c.inequalities.is_empty());
        assert_eq!(c.x_basis.rows(), 0);
    }
}
