//! Existence criteria assembled into verdicts.
//!
//! Every procedure checks Galois stability first and stops there when it
//! fails. The cohomological half is always evaluated through the Brauer
//! character `t⁰` of the Tits class on `(P/Q)^Γ`.

pub mod catalog;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::embeddings::{search_lifts, ColoredFan};
use crate::error::{Error, Result};
use crate::galois::{br_vanishing_witness, format_qz, validate_br_character, BrCharacter, FieldMode, GaloisAction, GroupKind};
use crate::horospherical::HorosphericalDatum;
use crate::lattice::{fixed_sublattice, GroupHom, Lattice, LatticeQuotient};
use crate::rootdata::{epsilon_lattice, format_weight, named_automorphism, BasedRootDatum, DiagramAutomorphism, Family};
use crate::spherical::SphericalDatum;
use crate::{Int, IntMatrix};

pub use catalog::{catalog_list, catalog_lookup, BaseField, CatalogEntry};

pub const CITE_STABILITY: &str = "a model exists only if the Galois action preserves the combinatorial invariants";
pub const CITE_TITS: &str =
    "a model exists iff the image of the Tits class in H^2 of the automorphism group vanishes; over local fields this is t0 composed with the character map being zero";
pub const CITE_HORO: &str = "horospherical spaces over local fields: M^Γ must lie in the preimage of ker t0";
pub const CITE_LOCAL_GLOBAL: &str = "over a number field the image of the Tits class vanishes iff it vanishes at every place";
pub const CITE_GU: &str = "G/U has a model iff the Tits class is trivial";
pub const CITE_DIAGONAL: &str = "(H x ... x H)/diag has a model iff every factor is a pure inner form of the first";
pub const CITE_EMBEDDING: &str =
    "a quasi-projective embedding has a model iff some lift of the action to the colors stabilizes the colored fan and the Tits class condition holds";

/// Labels of the horospherical conditions.
pub const LABEL_GENERIC: &str = "generic-Θ";
pub const LABEL_TRIVIAL: &str = "trivial-t0";

/// One machine-readable fact behind a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reason {
    Stability {
        holds: bool,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        witness: Option<String>,
    },
    Cohomology {
        label: String,
        holds: bool,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        witness: Option<String>,
    },
    Site {
        label: String,
        holds: bool,
        detail: String,
    },
    Lift {
        found: bool,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        lift: Option<Vec<String>>,
        candidates: usize,
        valid: usize,
    },
    Delta {
        index: usize,
        trivial: bool,
        detail: String,
    },
    Assumption {
        text: String,
    },
    CrossCheck {
        name: String,
        agrees: bool,
    },
}

impl Reason {
    /// Contribution to the verdict; `None` for notes.
    pub fn holds(&self) -> Option<bool> {
        match self {
            Reason::Stability { holds, .. } | Reason::Cohomology { holds, .. } | Reason::Site { holds, .. } => {
                Some(*holds)
            }
            Reason::Lift { found, .. } => Some(*found),
            Reason::Delta { trivial, .. } => Some(*trivial),
            Reason::Assumption { .. } | Reason::CrossCheck { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub exists: bool,
    pub reasons: Vec<Reason>,
    pub citations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub uniqueness_note: Option<String>,
}

impl Verdict {
    fn from_reasons(reasons: Vec<Reason>, citations: &[&str]) -> Self {
        let mut v = Verdict {
            exists: false,
            reasons,
            citations: citations.iter().map(|s| s.to_string()).collect(),
            uniqueness_note: None,
        };
        v.exists = v.replay();
        v
    }

    /// Recompute the verdict from the recorded facts alone.
    pub fn replay(&self) -> bool {
        self.reasons.iter().filter_map(Reason::holds).all(|h| h)
    }
}

/// A generator of the `*`-action: a named automorphism or a one-line
/// permutation with 1-based images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Name(String),
    Perm(Vec<usize>),
}

pub fn parse_group(s: &str) -> Result<GroupKind> {
    match s.trim().replace(' ', "").as_str() {
        "1" | "trivial" => Ok(GroupKind::Trivial),
        "Z/2" => Ok(GroupKind::Cyclic(2)),
        "Z/3" => Ok(GroupKind::Cyclic(3)),
        "S3" => Ok(GroupKind::S3),
        other => Err(Error::BadGroupAction(format!("unknown group {other:?}"))),
    }
}

/// `Z/2 → flip`, `Z/3 → rotation`, `S3 → (flip, rotation)` when no
/// generators are given.
pub fn build_galois(rd: &BasedRootDatum, group: &str, gens: &[GeneratorSpec]) -> Result<GaloisAction> {
    let kind = parse_group(group)?;
    let t = rd.simple_type();
    let defaults: Vec<GeneratorSpec> = match kind {
        GroupKind::Trivial => vec![],
        GroupKind::Cyclic(2) => vec![GeneratorSpec::Name("flip".into())],
        GroupKind::Cyclic(_) => vec![GeneratorSpec::Name("rotation".into())],
        GroupKind::S3 => vec![
            GeneratorSpec::Name("flip".into()),
            GeneratorSpec::Name("rotation".into()),
        ],
    };
    let gens = if gens.is_empty() { &defaults[..] } else { gens };
    if kind == GroupKind::Trivial {
        if !gens.is_empty() {
            return Err(Error::BadGroupAction("the trivial group takes no generators".into()));
        }
        return Ok(GaloisAction::trivial(rd.rank()));
    }
    let autos = gens
        .iter()
        .map(|s| match s {
            GeneratorSpec::Name(n) => named_automorphism(t, n),
            GeneratorSpec::Perm(p) => DiagramAutomorphism::from_one_line(p),
        })
        .collect::<Result<Vec<_>>>()?;
    GaloisAction::from_automorphisms(rd, kind, autos)
}

/// Parse `omega3`, `omega3+omega4`, `2*omega1`, `-omega2` into ω-coordinates.
pub fn parse_weight(s: &str, rank: usize) -> Result<Vec<Int>> {
    let mut out = vec![Int::zero(); rank];
    for (coef, root, idx) in parse_terms(s, rank)? {
        if root {
            return Err(Error::Precondition(format!("{s:?}: roots need a root datum")));
        }
        out[idx] += Int::from(coef);
    }
    Ok(out)
}

/// Like [`parse_weight`], also accepting simple roots `alphaK`.
pub fn parse_weight_in(rd: &BasedRootDatum, s: &str) -> Result<Vec<Int>> {
    let mut out = vec![Int::zero(); rd.rank()];
    for (coef, root, idx) in parse_terms(s, rd.rank())? {
        let c = Int::from(coef);
        if root {
            for (o, a) in out.iter_mut().zip(rd.simple_root(idx)) {
                *o += &c * a;
            }
        } else {
            out[idx] += c;
        }
    }
    Ok(out)
}

// (coefficient, is a root, 0-based index)
fn parse_terms(s: &str, rank: usize) -> Result<Vec<(i64, bool, usize)>> {
    let bad = || Error::Precondition(format!("cannot parse weight {s:?}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    terms
        .into_iter()
        .map(|term| {
            let (sign, body) = match term.strip_prefix('-') {
                Some(b) => (-1i64, b),
                None => (1, term.strip_prefix('+').unwrap_or(&term)),
            };
            let (coef, name) = match body.split_once('*') {
                Some((c, n)) => (c.parse::<i64>().map_err(|_| bad())?, n),
                None => (1, body),
            };
            let (root, digits) = if let Some(d) = name.strip_prefix("omega").or_else(|| name.strip_prefix('ω')) {
                (false, d)
            } else if let Some(d) = name.strip_prefix("alpha").or_else(|| name.strip_prefix('α')) {
                (true, d)
            } else {
                return Err(bad());
            };
            let idx: usize = digits.parse().map_err(|_| bad())?;
            if idx == 0 || idx > rank {
                return Err(bad());
            }
            Ok((sign * coef, root, idx - 1))
        })
        .collect()
}

/// `(P/Q)^Γ`.
pub fn center_invariants(rd: &BasedRootDatum, g: &GaloisAction) -> Result<LatticeQuotient> {
    rd.center_characters().invariants(g.generators())
}

/// Fails unless `t⁰` lives on `(P/Q)^Γ` and satisfies the constraints of its
/// field mode.
pub fn check_character(rd: &BasedRootDatum, g: &GaloisAction, t0: &BrCharacter) -> Result<()> {
    let problems = validate_br_character(t0, &rd.center_characters(), g)?;
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidCharacter(problems.join("; ")))
    }
}

fn character_order(t0: &BrCharacter) -> Int {
    t0.values().iter().fold(Int::one(), |acc, v| acc.lcm(v.denom()))
}

/// `(Θ, Θ_P)`: the kernel of `t⁰` in `(P/Q)^Γ` and its preimage in `P^Γ`.
pub fn theta_lattice(rd: &BasedRootDatum, g: &GaloisAction, t0: &BrCharacter) -> Result<(LatticeQuotient, Lattice)> {
    let inv = center_invariants(rd, g)?;
    if t0.source().outer() != inv.outer() || t0.source().inner() != inv.inner() {
        return Err(Error::ModuleMismatch("t0 is not defined on (P/Q)^Γ".into()));
    }
    let ker = t0.kernel_lattice()?;
    if !t0.is_zero() && ker == *inv.outer() {
        return Err(Error::Internal("a nonzero t0 has full kernel".into()));
    }
    let theta = LatticeQuotient::new(ker.clone(), inv.inner().clone())?;
    let p_fixed = fixed_sublattice(&rd.weight_lattice(), g.generators())?;
    Ok((theta, p_fixed.intersection(&ker)?))
}

/// A type-specific form of the horospherical condition: `M ⊆ L`, or
/// `M^Γ ⊆ L` when `on_fixed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FastPath {
    pub label: &'static str,
    pub lattice: Lattice,
    pub on_fixed: bool,
}

/// The applicable fast path, if any. Only defined for `t⁰ ≠ 0`.
pub fn fast_path(rd: &BasedRootDatum, g: &GaloisAction, t0: &BrCharacter) -> Result<Option<FastPath>> {
    if t0.is_zero() {
        return Ok(None);
    }
    let t = rd.simple_type();
    let n = t.rank;
    let p = rd.weight_lattice();
    let q = rd.root_lattice().clone();
    let trivial = g.acts_trivially();
    let order_two = !trivial && matches!(g.kind(), GroupKind::Cyclic(2));
    let fp = |label, lattice, on_fixed| Ok(Some(FastPath { label, lattice, on_fixed }));
    match t.family {
        Family::A if n == 1 => fp("*1", q, false),
        Family::B | Family::C => fp("*1", q, false),
        Family::E if n == 7 => fp("*1", q, false),
        Family::A if order_two && n % 2 == 1 => fp("*2", fixed_sublattice(&q, g.generators())?, true),
        Family::D if order_two && n >= 4 => fp("*2", fixed_sublattice(&q, g.generators())?, true),
        Family::A if trivial => {
            let l = character_order(t0);
            fp("*3", p.scaled(&l).sum(&q)?, false)
        }
        Family::D if trivial && !n.is_multiple_of(2) && n >= 5 => {
            let l = character_order(t0);
            fp("*3", p.scaled(&l).sum(&q)?, false)
        }
        Family::D if trivial && n.is_multiple_of(2) => {
            let a = t0.eval_vector(&rd.fundamental_weight(n - 2))?;
            let b = t0.eval_vector(&rd.fundamental_weight(n - 1))?;
            let half = crate::rat(1, 2);
            if a == half && b == half {
                fp("*4", epsilon_lattice(t)?, false)
            } else if a.is_zero() && b == half {
                let w = Lattice::from_generators(n, &[rd.fundamental_weight(n - 2)])?;
                fp("*5", w.sum(&q)?, false)
            } else if a == half && b.is_zero() {
                let w = Lattice::from_generators(n, &[rd.fundamental_weight(n - 1)])?;
                fp("*5", w.sum(&q)?, false)
            } else {
                Ok(None)
            }
        }
        _ => Ok(None),
    }
}

/// `(label, holds)` of the fast path for `(I, M)`, if one applies.
pub fn fast_path_condition(
    h: &HorosphericalDatum,
    g: &GaloisAction,
    t0: &BrCharacter,
) -> Result<Option<(&'static str, bool)>> {
    let Some(fp) = fast_path(h.root_datum(), g, t0)? else {
        return Ok(None);
    };
    let m = if fp.on_fixed {
        fixed_sublattice(h.m(), g.generators())?
    } else {
        h.m().clone()
    };
    Ok(Some((fp.label, m.is_sublattice_of(&fp.lattice)?)))
}

/// `M^Γ ⊆ Θ_P`.
pub fn generic_theta_condition(h: &HorosphericalDatum, g: &GaloisAction, t0: &BrCharacter) -> Result<bool> {
    Ok(theta_witness(h, g, t0)?.is_none())
}

fn theta_witness(h: &HorosphericalDatum, g: &GaloisAction, t0: &BrCharacter) -> Result<Option<String>> {
    let (_, theta_p) = theta_lattice(h.root_datum(), g, t0)?;
    let mg = fixed_sublattice(h.m(), g.generators())?;
    for b in mg.basis_vecs() {
        if !theta_p.contains(&b)? {
            let v = t0.eval_vector(&b)?;
            return Ok(Some(format!("{} in M^Γ has t0 = {}", format_weight(&b), format_qz(&v))));
        }
    }
    Ok(None)
}

fn in_case_one(rd: &BasedRootDatum) -> bool {
    let t = rd.simple_type();
    matches!(
        (t.family, t.rank),
        (Family::A, 1) | (Family::B, _) | (Family::C, _) | (Family::E, 7)
    )
}

/// The cohomological half for `(I, M)`: `(label, holds, witness)`.
fn horospherical_cohomology(
    h: &HorosphericalDatum,
    g: &GaloisAction,
    t0: &BrCharacter,
) -> Result<(String, bool, Option<String>)> {
    if t0.is_zero() {
        return Ok((LABEL_TRIVIAL.into(), true, None));
    }
    let witness = theta_witness(h, g, t0)?;
    let generic = witness.is_none();
    let label = match fast_path_condition(h, g, t0)? {
        Some((label, holds)) => {
            if holds != generic {
                return Err(Error::Internal(format!(
                    "fast path {label} disagrees with the generic Θ test"
                )));
            }
            label
        }
        None => LABEL_GENERIC,
    };
    Ok((label.into(), generic, witness))
}

fn stability_reason(w: Option<(usize, String)>) -> Reason {
    Reason::Stability {
        holds: w.is_none(),
        witness: w.map(|(k, why)| format!("generator {}: {why}", k + 1)),
    }
}

pub fn decide_horospherical(h: &HorosphericalDatum, g: &GaloisAction, t0: &BrCharacter) -> Result<Verdict> {
    h.ensure_valid()?;
    let rd = h.root_datum();
    check_character(rd, g, t0)?;
    let stab = h.stability_witness(g)?;
    let stable = stab.is_none();
    let mut reasons = vec![stability_reason(stab)];
    if !stable {
        return Ok(Verdict::from_reasons(reasons, &[CITE_STABILITY]));
    }
    let (label, holds, witness) = horospherical_cohomology(h, g, t0)?;
    reasons.push(Reason::Cohomology { label, holds, witness });
    let mut v = Verdict::from_reasons(reasons, &[CITE_STABILITY, CITE_HORO]);
    if v.exists && !t0.is_zero() && g.acts_trivially() && in_case_one(rd) {
        v.uniqueness_note = Some("the model is unique: A_q is a split torus, so H^1(k0, A_q) = 1".into());
    }
    Ok(v)
}

/// Outcome of `t⁰ ∘ κ* = 0` for a spherical datum, with the `A^ker`
/// variant alongside.
struct KappaOutcome {
    holds: bool,
    witness: Option<String>,
    ker_holds: bool,
}

fn kappa_test(d: &SphericalDatum, g: &GaloisAction, t0: &BrCharacter) -> Result<KappaOutcome> {
    let n = d.root_datum().rank();
    let target = t0.source().clone();
    let (xa, xaker, _) = d.aut_character_lattices()?;
    let run = |module: &LatticeQuotient| -> Result<(Option<(usize, crate::Rat)>, GroupHom)> {
        let inv = module.invariants(g.generators())?;
        let phi = GroupHom::new(inv, target.clone(), IntMatrix::identity(n))?;
        Ok((br_vanishing_witness(t0, &phi)?, phi))
    };
    let (w, phi) = run(&xa)?;
    let (wk, _) = run(&xaker)?;
    let witness = match &w {
        Some((k, v)) => {
            let lift = phi.source().generator_lifts()?[*k].clone();
            Some(format!(
                "generator {} of (X/<Σ^N>)^Γ has t0 = {}",
                format_weight(&lift),
                format_qz(v)
            ))
        }
        None => None,
    };
    Ok(KappaOutcome {
        holds: w.is_none(),
        witness,
        ker_holds: wk.is_none(),
    })
}

fn spherical_cohomology_reasons(d: &SphericalDatum, g: &GaloisAction, t0: &BrCharacter) -> Result<Vec<Reason>> {
    let k = kappa_test(d, g, t0)?;
    if k.holds != k.ker_holds {
        return Err(Error::Internal(
            "the A and A^ker forms of the cohomological condition disagree".into(),
        ));
    }
    let label = if t0.is_zero() { LABEL_TRIVIAL } else { LABEL_GENERIC };
    Ok(vec![
        Reason::Cohomology {
            label: label.into(),
            holds: k.holds,
            witness: k.witness,
        },
        Reason::CrossCheck {
            name: "A^ker form".into(),
            agrees: true,
        },
    ])
}

pub fn decide_local_general(d: &SphericalDatum, g: &GaloisAction, t0: &BrCharacter) -> Result<Verdict> {
    let rd = d.root_datum();
    check_character(rd, g, t0)?;
    let stab = d.stability_witness(g)?;
    let stable = stab.is_none();
    let mut reasons = vec![
        Reason::Assumption {
            text: "the invariants are assumed to come from a spherical subgroup".into(),
        },
        stability_reason(stab),
    ];
    if !stable {
        return Ok(Verdict::from_reasons(reasons, &[CITE_STABILITY]));
    }
    reasons.extend(spherical_cohomology_reasons(d, g, t0)?);
    Ok(Verdict::from_reasons(reasons, &[CITE_STABILITY, CITE_TITS]))
}

/// Options for [`decide_embedding`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmbeddingOptions {
    pub quasi_projective: bool,
    pub check_valuation_cone: bool,
}

impl Default for EmbeddingOptions {
    fn default() -> Self {
        EmbeddingOptions {
            quasi_projective: true,
            check_valuation_cone: true,
        }
    }
}

pub fn decide_embedding(
    f: &ColoredFan,
    d: &SphericalDatum,
    g: &GaloisAction,
    t0: &BrCharacter,
    opts: EmbeddingOptions,
) -> Result<Verdict> {
    if !opts.quasi_projective {
        return Err(Error::Precondition(
            "the embedding must be asserted quasi-projective".into(),
        ));
    }
    let rd = d.root_datum();
    check_character(rd, g, t0)?;
    f.canonical(d, opts.check_valuation_cone)?;
    let stab = d.stability_witness(g)?;
    let stable = stab.is_none();
    let mut reasons = vec![
        Reason::Assumption {
            text: "the embedding is quasi-projective (asserted by the caller)".into(),
        },
        Reason::Assumption {
            text: "fan axioms assumed; only convexity, distinctness and the valuation cone are checked".into(),
        },
        stability_reason(stab),
    ];
    if !stable {
        return Ok(Verdict::from_reasons(reasons, &[CITE_STABILITY]));
    }
    let search = search_lifts(f, d, g)?;
    reasons.push(Reason::Lift {
        found: search.lift.is_some(),
        lift: search.lift.as_ref().map(|l| l.describe(d.colors())),
        candidates: search.candidates,
        valid: search.valid,
    });
    reasons.extend(spherical_cohomology_reasons(d, g, t0)?);
    Ok(Verdict::from_reasons(reasons, &[CITE_STABILITY, CITE_EMBEDDING, CITE_TITS]))
}

/// A place of a number field: its decomposition group's action and the
/// local Tits character (`None` when the local class is trivial).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSite {
    pub label: String,
    pub mode: FieldMode,
    pub galois: GaloisAction,
    pub t0: Option<BrCharacter>,
}

/// What a number-field problem asks about.
#[derive(Clone, Copy, Debug)]
pub enum GlobalTarget<'a> {
    Horospherical(&'a HorosphericalDatum),
    Spherical(&'a SphericalDatum),
}

pub fn decide_number_field(target: GlobalTarget<'_>, global: &GaloisAction, sites: &[LocalSite]) -> Result<Verdict> {
    let rd = match target {
        GlobalTarget::Horospherical(h) => {
            h.ensure_valid()?;
            h.root_datum()
        }
        GlobalTarget::Spherical(d) => d.root_datum(),
    };
    for s in sites {
        if !global.contains_action(&s.galois)? {
            return Err(Error::SiteNotRestriction(s.label.clone()));
        }
        if let Some(t) = &s.t0 {
            if t.mode() != s.mode {
                return Err(Error::InvalidCharacter(format!("site {}: mode mismatch", s.label)));
            }
            check_character(rd, &s.galois, t)?;
        }
    }
    let stab = match target {
        GlobalTarget::Horospherical(h) => h.stability_witness(global)?,
        GlobalTarget::Spherical(d) => d.stability_witness(global)?,
    };
    let stable = stab.is_none();
    let mut reasons = vec![stability_reason(stab)];
    if let GlobalTarget::Spherical(_) = target {
        reasons.insert(
            0,
            Reason::Assumption {
                text: "the invariants are assumed to come from a spherical subgroup".into(),
            },
        );
    }
    if !stable {
        return Ok(Verdict::from_reasons(reasons, &[CITE_STABILITY]));
    }
    for s in sites {
        let reason = match &s.t0 {
            None => Reason::Site {
                label: s.label.clone(),
                holds: true,
                detail: "local Tits class is trivial; no condition".into(),
            },
            Some(t) => {
                let (holds, detail) = match target {
                    GlobalTarget::Horospherical(h) => {
                        let (label, holds, w) = horospherical_cohomology(h, &s.galois, t)?;
                        (holds, format!("{} ({label}){}", s.mode, w.map(|w| format!(": {w}")).unwrap_or_default()))
                    }
                    GlobalTarget::Spherical(d) => {
                        let k = kappa_test(d, &s.galois, t)?;
                        if k.holds != k.ker_holds {
                            return Err(Error::Internal(format!(
                                "site {}: the A and A^ker forms disagree",
                                s.label
                            )));
                        }
                        (k.holds, format!("{}{}", s.mode, k.witness.map(|w| format!(": {w}")).unwrap_or_default()))
                    }
                };
                Reason::Site {
                    label: s.label.clone(),
                    holds,
                    detail,
                }
            }
        };
        reasons.push(reason);
    }
    Ok(Verdict::from_reasons(reasons, &[CITE_STABILITY, CITE_LOCAL_GLOBAL, CITE_HORO]))
}

pub fn decide_gu(rd: &BasedRootDatum, g: &GaloisAction, t0: &BrCharacter) -> Result<Verdict> {
    check_character(rd, g, t0)?;
    let zero = t0.is_zero();
    let mut reasons = vec![Reason::Cohomology {
        label: "t-trivial".into(),
        holds: zero,
        witness: (!zero).then(|| format!("t0 = {t0}")),
    }];
    // the shortcut is exact when P^Γ → (P/Q)^Γ is onto
    let inv = center_invariants(rd, g)?;
    let p_fixed = fixed_sublattice(&rd.weight_lattice(), g.generators())?;
    if inv.outer().is_sublattice_of(&p_fixed.sum(rd.root_lattice())?)? {
        let h = HorosphericalDatum::new(rd.clone(), vec![], rd.weight_lattice())?;
        let hv = decide_horospherical(&h, g, t0)?;
        if hv.exists != zero {
            return Err(Error::Internal("G/U shortcut disagrees with the (∅, P) test".into()));
        }
        reasons.push(Reason::CrossCheck {
            name: "horospherical (∅, P)".into(),
            agrees: true,
        });
    }
    Ok(Verdict::from_reasons(reasons, &[CITE_GU]))
}

/// `δ[cᵢ]` for one factor after the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMarker {
    pub trivial: bool,
    pub detail: String,
}

pub fn decide_diagonal(deltas: &[DeltaMarker]) -> Result<Verdict> {
    if deltas.is_empty() {
        return Err(Error::Precondition("at least two factors are needed".into()));
    }
    let reasons = deltas
        .iter()
        .enumerate()
        .map(|(i, d)| Reason::Delta {
            index: i + 2,
            trivial: d.trivial,
            detail: d.detail.clone(),
        })
        .collect();
    Ok(Verdict::from_reasons(reasons, &[CITE_DIAGONAL]))
}

/// Deltas for catalog factors: factor `i` is a pure inner form of factor 1
/// iff both carry the same pure-inner class.
pub fn diagonal_deltas(factors: &[CatalogEntry]) -> Result<Vec<DeltaMarker>> {
    let Some(first) = factors.first() else {
        return Err(Error::Precondition("no factors".into()));
    };
    let class = |e: &CatalogEntry| {
        e.pure_inner_class
            .clone()
            .ok_or_else(|| Error::Precondition(format!("{} has no pure inner form data", e.name)))
    };
    let c1 = class(first)?;
    factors[1..]
        .iter()
        .map(|e| {
            if e.simple_type != first.simple_type {
                return Err(Error::Precondition(format!(
                    "{} is of type {}, the first factor of type {}",
                    e.name, e.simple_type, first.simple_type
                )));
            }
            let trivial = class(e)? == c1;
            Ok(DeltaMarker {
                trivial,
                detail: if trivial {
                    format!("{} is a pure inner form of {}", e.name, first.name)
                } else {
                    format!("{} is not a pure inner form of {}", e.name, first.name)
                },
            })
        })
        .collect()
}
