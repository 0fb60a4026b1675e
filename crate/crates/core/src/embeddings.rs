//! Colored cones and fans in `V = Hom(𝒳, ℚ)` and their Galois stability.
//!
//! Only the data needed for stability is validated: strict convexity,
//! `0 ∉ ρ(ℱ)`, distinct maximal cones and (optionally) that each relative
//! interior meets the valuation cone. The face and support axioms are not
//! checked.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::galois::GaloisAction;
use crate::polyhedral::{extreme_rays, relative_interior_meets, to_rat};
use crate::spherical::{ColorLift, SphericalDatum};
use crate::{rat_of, Int, Rat, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredCone {
    /// Vectors of `V` in coordinates dual to the 𝒳-basis.
    pub generators: Vec<Vec<Rat>>,
    /// Color ids.
    pub colors: Vec<String>,
}

/// Canonical form: primitive extreme rays of `cone(generators ∪ ρ(ℱ))`,
/// sorted, plus sorted color indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCone {
    pub rays: Vec<Vec<Int>>,
    pub colors: Vec<usize>,
}

impl CanonicalCone {
    pub fn to_colored(&self, d: &SphericalDatum) -> ColoredCone {
        ColoredCone {
            generators: self.rays.iter().map(|r| to_rat(r)).collect(),
            colors: self.colors.iter().map(|&k| d.colors()[k].id.clone()).collect(),
        }
    }
}

fn resolve_colors(ids: &[String], d: &SphericalDatum) -> Result<Vec<usize>> {
    ids.iter()
        .map(|id| {
            d.color_index(id)
                .ok_or_else(|| Error::InvalidFan(format!("unknown color {id:?}")))
        })
        .collect()
}

/// Canonical form of `cone(gens ∪ ρ(colors))` with the given color indices.
pub fn canonical_from_parts(gens: &[Vec<Rat>], colors: &[usize], d: &SphericalDatum) -> Result<CanonicalCone> {
    let r = d.x_rank();
    let mut all = Vec::with_capacity(gens.len() + colors.len());
    for g in gens {
        if g.len() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: g.len(),
            });
        }
        all.push(g.clone());
    }
    for &k in colors {
        let c = &d.colors()[k];
        if c.rho.iter().all(|x| x.is_zero()) {
            return Err(Error::InvalidFan(format!("color {:?} has ρ = 0", c.id)));
        }
        all.push(c.rho.clone());
    }
    let rays = extreme_rays(&all, r)?;
    let mut colors = colors.to_vec();
    colors.sort_unstable();
    colors.dedup();
    Ok(CanonicalCone { rays, colors })
}

pub fn cone_canonicalize(c: &ColoredCone, d: &SphericalDatum) -> Result<CanonicalCone> {
    let colors = resolve_colors(&c.colors, d)?;
    canonical_from_parts(&c.generators, &colors, d)
}

/// A fan given by its maximal colored cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredFan {
    pub cones: Vec<ColoredCone>,
}

impl ColoredFan {
    pub fn new(cones: Vec<ColoredCone>) -> Self {
        ColoredFan { cones }
    }

    /// Canonical cones after validation; `check_valuation_cone` toggles the
    /// relative-interior test against `𝒱 = {v : ⟨v, σ⟩ ≤ 0, σ ∈ Σ}`.
    pub fn canonical(&self, d: &SphericalDatum, check_valuation_cone: bool) -> Result<Vec<CanonicalCone>> {
        let halfspaces = valuation_halfspaces(d)?;
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(self.cones.len());
        for (k, c) in self.cones.iter().enumerate() {
            let cc = cone_canonicalize(c, d).map_err(|e| match e {
                Error::NotStrictlyConvex => Error::InvalidFan(format!("cone {} is not strictly convex", k + 1)),
                other => other,
            })?;
            if !seen.insert(cc.clone()) {
                return Err(Error::InvalidFan(format!("cone {} repeats an earlier cone", k + 1)));
            }
            if check_valuation_cone {
                let rays: Vec<Vec<Rat>> = cc.rays.iter().map(|r| to_rat(r)).collect();
                if !rays.is_empty() && !relative_interior_meets(&rays, &halfspaces, d.x_rank())? {
                    return Err(Error::InvalidFan(format!(
                        "the relative interior of cone {} misses the valuation cone",
                        k + 1
                    )));
                }
            }
            out.push(cc);
        }
        Ok(out)
    }
}

/// Spherical roots in 𝒳-coordinates; `𝒱` is where they are all `≤ 0`.
pub fn valuation_halfspaces(d: &SphericalDatum) -> Result<Vec<Vec<Rat>>> {
    d.sigma()
        .iter()
        .map(|s| Ok(d.x_coords(s)?.iter().map(rat_of).collect()))
        .collect()
}

/// Galois action on `V` together with a lift to the colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanGaloisData {
    pub galois: GaloisAction,
    pub v_action: Vec<RatMatrix>,
    pub lift: ColorLift,
}

impl FanGaloisData {
    pub fn new(d: &SphericalDatum, galois: GaloisAction, lift: ColorLift) -> Result<Self> {
        let v_action = galois
            .generators()
            .iter()
            .map(|g| d.v_action(g))
            .collect::<Result<Vec<_>>>()?;
        if lift.perms.len() != v_action.len() {
            return Err(Error::Precondition("lift has the wrong number of generators".into()));
        }
        Ok(FanGaloisData {
            galois,
            v_action,
            lift,
        })
    }

    fn check_lift(&self, d: &SphericalDatum) -> Result<()> {
        for (k, (p, g)) in self.lift.perms.iter().zip(self.galois.generators()).enumerate() {
            let perm = SphericalDatum::node_permutation(g)?;
            if p.len() != d.colors().len() {
                return Err(Error::Precondition(format!("lift for generator {} has the wrong length", k + 1)));
            }
            for (i, &j) in p.iter().enumerate() {
                let (ci, cj) = (&d.colors()[i], &d.colors()[j]);
                let mut s: Vec<usize> = ci.sigma_set.iter().map(|&a| perm[a]).collect();
                s.sort_unstable();
                if self.v_action[k].apply(&ci.rho)? != cj.rho || s != cj.sigma_set {
                    return Err(Error::Precondition(format!(
                        "lift sends {} to {}, which lies over a different point of Ω",
                        ci.id, cj.id
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Whether every generator maps each colored cone of `f` to a colored cone of `f`.
pub fn fan_stable(f: &ColoredFan, d: &SphericalDatum, gd: &FanGaloisData) -> Result<bool> {
    Ok(fan_stability_witness(f, d, gd)?.is_none())
}

/// First `(generator, cone)` pair whose image is not in the fan.
pub fn fan_stability_witness(f: &ColoredFan, d: &SphericalDatum, gd: &FanGaloisData) -> Result<Option<(usize, usize)>> {
    gd.check_lift(d)?;
    let cones = f.canonical(d, false)?;
    let set: BTreeSet<&CanonicalCone> = cones.iter().collect();
    for (k, (v, p)) in gd.v_action.iter().zip(&gd.lift.perms).enumerate() {
        for (ci, c) in cones.iter().enumerate() {
            let gens = c
                .rays
                .iter()
                .map(|r| v.apply(&to_rat(r)))
                .collect::<Result<Vec<_>>>()?;
            let colors: Vec<usize> = c.colors.iter().map(|&j| p[j]).collect();
            let img = canonical_from_parts(&gens, &colors, d)?;
            if !set.contains(&img) {
                return Ok(Some((k, ci)));
            }
        }
    }
    Ok(None)
}

/// Outcome of the search over lifts of the `Ω`-action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftSearch {
    /// First stabilizing lift in enumeration order.
    pub lift: Option<ColorLift>,
    pub candidates: usize,
    /// Candidates satisfying the group law.
    pub valid: usize,
    pub stabilizing: usize,
}

/// First lift, in enumeration order, under which the fan is stable.
pub fn exists_stabilizing_lift(f: &ColoredFan, d: &SphericalDatum, g: &GaloisAction) -> Result<Option<ColorLift>> {
    Ok(search_lifts(f, d, g)?.lift)
}

pub fn search_lifts(f: &ColoredFan, d: &SphericalDatum, g: &GaloisAction) -> Result<LiftSearch> {
    let candidates = d.lift_candidates(g)?.len();
    let lifts = d.enumerate_lifts(g)?;
    let valid = lifts.len();
    let mut first = None;
    let mut stabilizing = 0;
    for l in lifts {
        let gd = FanGaloisData::new(d, g.clone(), l.clone())?;
        if fan_stable(f, d, &gd)? {
            stabilizing += 1;
            first.get_or_insert(l);
        }
    }
    Ok(LiftSearch {
        lift: first,
        candidates,
        valid,
        stabilizing,
    })
}
