//! Problem files, dispatch and reports.
//!
//! A problem file is TOML. Every number is an integer or a `"p/q"` string.
//! Node indices (`i`, `sigma_set`, `sigma234`, permutations) are 1-based.
//! Weight rows are ω-coordinate arrays or expressions such as
//! `"omega3"`, `"2*alpha1"`, `"Q"` (all simple roots), `"P"` or `"2P"`
//! (multiples of all fundamental weights).

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::decision::catalog::character_from_values;
use crate::decision::{
    build_galois, catalog_list, catalog_lookup, center_invariants, check_character, decide_diagonal,
    decide_embedding, decide_gu, decide_horospherical, decide_local_general, decide_number_field,
    diagonal_deltas, parse_weight_in, theta_lattice, CatalogEntry, DeltaMarker, EmbeddingOptions, GeneratorSpec,
    GlobalTarget, LocalSite, Reason, Verdict,
};
use crate::embeddings::{search_lifts, ColoredCone, ColoredFan};
use crate::error::Error;
use crate::galois::{format_qz, BrCharacter, FieldMode, GaloisAction};
use crate::horospherical::HorosphericalDatum;
use crate::lattice::{fixed_sublattice, Lattice, LatticeQuotient};
use crate::rootdata::{format_root, format_weight, BasedRootDatum, SimpleType};
use crate::spherical::{Color, SphericalDatum};
use crate::{Int, Rat};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Horospherical,
    Spherical,
    Embedding,
    Gu,
    Diagonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Real,
    Padic,
    Number,
    General,
}

/// An integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumLit {
    Int(i64),
    Str(String),
}

impl NumLit {
    pub fn to_rat(&self) -> Result<Rat, String> {
        match self {
            NumLit::Int(v) => Ok(Rat::from_integer(Int::from(*v))),
            NumLit::Str(s) => parse_rational(s),
        }
    }
}

impl fmt::Display for NumLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumLit::Int(v) => write!(f, "{v}"),
            NumLit::Str(s) => write!(f, "{s}"),
        }
    }
}

fn parse_rational(s: &str) -> Result<Rat, String> {
    let bad = || format!("{s:?} is not an integer or p/q");
    let t = s.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().map_err(|_| bad())?;
            let q: Int = q.trim().parse().map_err(|_| bad())?;
            if q == Int::from(0) {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// A weight in ω-coordinates or an expression.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Row {
    Coords(Vec<i64>),
    Expr(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaloisSpec {
    pub group: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<GeneratorSpec>,
}

/// Exactly one of the three fields.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TitsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<BTreeMap<String, NumLit>>,
}

/// `"trivial"` or a character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SiteTits {
    Marker(String),
    Spec(TitsSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiteSpec {
    pub label: String,
    pub mode: FieldMode,
    /// Decomposition group image; defaults to the global action.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub galois: Option<GaloisSpec>,
    pub tits: SiteTits,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub mode: FieldKind,
    #[serde(default, rename = "site", skip_serializing_if = "Vec::is_empty")]
    pub sites: Vec<SiteSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HoroSpec {
    #[serde(default)]
    pub i: Vec<usize>,
    pub m: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColorSpec {
    pub id: String,
    pub rho: Vec<NumLit>,
    pub sigma_set: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphericalSpec {
    pub x_basis: Vec<Row>,
    #[serde(default)]
    pub sigma: Vec<Row>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sigma234: Vec<usize>,
    #[serde(default, rename = "color")]
    pub colors: Vec<ColorSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeSpec {
    pub generators: Vec<Vec<NumLit>>,
    #[serde(default)]
    pub colors: Vec<String>,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingSpec {
    pub quasi_projective: bool,
    #[serde(default = "yes")]
    pub check_valuation_cone: bool,
    #[serde(default, rename = "cone")]
    pub cones: Vec<ConeSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaSpec {
    pub trivial: bool,
    #[serde(default)]
    pub detail: String,
}

/// Either catalog names of all factors, or explicit deltas for factors
/// 2..n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagonalSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<String>,
    #[serde(default, rename = "delta", skip_serializing_if = "Vec::is_empty")]
    pub deltas: Vec<DeltaSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Problem {
    pub version: u32,
    pub kind: ProblemKind,
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub simple_type: Option<SimpleType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub galois: Option<GaloisSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tits: Option<TitsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horospherical: Option<HoroSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spherical: Option<SphericalSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<EmbeddingSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagonal: Option<DiagonalSpec>,
}

/// A failure tied to a place in the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub location: String,
    pub message: String,
}

impl InputError {
    pub fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        InputError {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for InputError {}

pub type CliResult<T> = std::result::Result<T, InputError>;

trait At<T> {
    fn at(self, loc: &str) -> CliResult<T>;
}

impl<T> At<T> for crate::Result<T> {
    fn at(self, loc: &str) -> CliResult<T> {
        self.map_err(|e| {
            let loc = if matches!(e, Error::Internal(_)) { "engine" } else { loc };
            InputError::new(loc, e.to_string())
        })
    }
}

impl<T> At<T> for std::result::Result<T, String> {
    fn at(self, loc: &str) -> CliResult<T> {
        self.map_err(|m| InputError::new(loc, m))
    }
}

impl Problem {
    pub fn parse(text: &str) -> CliResult<Problem> {
        toml::from_str(text).map_err(|e| {
            let loc = match e.span() {
                Some(span) => {
                    let line = text[..span.start.min(text.len())].matches('\n').count() + 1;
                    format!("line {line}")
                }
                None => "file".into(),
            };
            InputError::new(loc, e.message().trim().to_string())
        })
    }

    pub fn load(path: &Path) -> CliResult<Problem> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| InputError::new(path.display().to_string(), e.to_string()))?;
        Problem::parse(&text).map_err(|e| InputError::new(format!("{}: {}", path.display(), e.location), e.message))
    }

    /// Canonical TOML.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("problem serializes")
    }
}

fn one_based(v: &[usize], n: usize, loc: &str) -> CliResult<Vec<usize>> {
    v.iter()
        .map(|&k| {
            if k == 0 || k > n {
                Err(InputError::new(loc, format!("index {k} outside 1..={n}")))
            } else {
                Ok(k - 1)
            }
        })
        .collect()
}

/// Expand rows into ω-coordinate vectors.
pub fn expand_rows(rd: &BasedRootDatum, rows: &[Row], loc: &str) -> CliResult<Vec<Vec<Int>>> {
    let n = rd.rank();
    let mut out = Vec::new();
    for r in rows {
        match r {
            Row::Coords(v) => {
                if v.len() != n {
                    return Err(InputError::new(loc, format!("row {v:?} has length {}, expected {n}", v.len())));
                }
                out.push(v.iter().map(|&x| Int::from(x)).collect());
            }
            Row::Expr(s) => {
                let t = s.trim();
                if t == "Q" {
                    out.extend((0..n).map(|i| rd.simple_root(i)));
                } else if let Some(k) = t.strip_suffix('P') {
                    let k: i64 = if k.is_empty() {
                        1
                    } else {
                        k.trim_end_matches('*')
                            .parse()
                            .map_err(|_| InputError::new(loc, format!("cannot parse {s:?}")))?
                    };
                    out.extend((0..n).map(|i| {
                        let mut w = rd.fundamental_weight(i);
                        w.iter_mut().for_each(|x| *x *= k);
                        w
                    }));
                } else {
                    out.push(parse_weight_in(rd, t).at(loc)?);
                }
            }
        }
    }
    Ok(out)
}

fn rats(v: &[NumLit], loc: &str) -> CliResult<Vec<Rat>> {
    v.iter().map(|x| x.to_rat().at(loc)).collect()
}

/// A Tits character together with where it came from.
#[derive(Clone, Debug)]
pub struct LocalTits {
    pub mode: FieldMode,
    pub t0: BrCharacter,
}

/// A problem after every reference has been resolved.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub rd: Option<BasedRootDatum>,
    pub galois: Option<GaloisAction>,
    pub local: Option<LocalTits>,
    pub sites: Vec<LocalSite>,
    pub number_field: bool,
}

fn same_action(a: &GaloisAction, b: &GaloisAction) -> bool {
    a.kind() == b.kind() && a.generators() == b.generators()
}

fn lookup(name: &str, loc: &str) -> CliResult<CatalogEntry> {
    catalog_lookup(name).at(loc)
}

fn resolve_tits(
    rd: &BasedRootDatum,
    g: &GaloisAction,
    mode: FieldMode,
    spec: &TitsSpec,
    loc: &str,
) -> CliResult<BrCharacter> {
    let given = [spec.catalog.is_some(), spec.zero.is_some(), spec.values.is_some()]
        .iter()
        .filter(|b| **b)
        .count();
    if given != 1 {
        return Err(InputError::new(loc, "give exactly one of catalog, zero, values"));
    }
    let t0 = if let Some(name) = &spec.catalog {
        let e = lookup(name, loc)?;
        if e.simple_type != rd.simple_type() {
            return Err(InputError::new(
                loc,
                format!("{name} has type {}, the problem has type {}", e.simple_type, rd.simple_type()),
            ));
        }
        let eg = e.galois(rd).at(loc)?;
        if !same_action(&eg, g) {
            return Err(InputError::new(loc, format!("the action of {name} differs from the problem's")));
        }
        let em = e.mode.local_mode().at(loc)?;
        if em != mode {
            return Err(InputError::new(loc, format!("{name} is a {em} form, the field is {mode}")));
        }
        e.character(rd, g).at(loc)?
    } else if let Some(z) = spec.zero {
        if !z {
            return Err(InputError::new(loc, "zero = false; give values instead"));
        }
        BrCharacter::zero(center_invariants(rd, g).at(loc)?, mode)
    } else {
        let values = spec.values.as_ref().expect("counted above");
        let strs = values.iter().map(|(k, v)| (k.clone(), v.to_string())).collect();
        character_from_values(rd, g, mode, &strs).at(loc)?
    };
    check_character(rd, g, &t0).at(loc)?;
    Ok(t0)
}

/// Resolve type, action, field and Tits data.
pub fn resolve(p: &Problem) -> CliResult<Resolved> {
    if p.version != SCHEMA_VERSION {
        return Err(InputError::new("version", format!("unsupported version {}, expected {SCHEMA_VERSION}", p.version)));
    }
    let entry = match p.tits.as_ref().and_then(|t| t.catalog.as_ref()) {
        Some(name) => Some(lookup(name, "[tits]")?),
        None => None,
    };
    if p.kind == ProblemKind::Diagonal {
        return Ok(Resolved {
            rd: p.simple_type.map(BasedRootDatum::new).transpose().at("type")?,
            galois: None,
            local: None,
            sites: vec![],
            number_field: false,
        });
    }
    let ty = match (p.simple_type, &entry) {
        (Some(t), _) => t,
        (None, Some(e)) => e.simple_type,
        (None, None) => return Err(InputError::new("type", "missing root datum label")),
    };
    let rd = BasedRootDatum::new(ty).at("type")?;
    let galois = match (&p.galois, &entry) {
        (Some(gs), _) => build_galois(&rd, &gs.group, &gs.generators).at("[galois]")?,
        (None, Some(e)) => e.galois(&rd).at("[tits]")?,
        (None, None) => GaloisAction::trivial(rd.rank()),
    };
    let field = match (&p.field, &entry) {
        (Some(f), _) => f.mode,
        (None, Some(e)) => match e.mode {
            crate::decision::BaseField::Real => FieldKind::Real,
            crate::decision::BaseField::Padic => FieldKind::Padic,
            crate::decision::BaseField::General => FieldKind::General,
        },
        (None, None) => return Err(InputError::new("[field]", "missing field descriptor")),
    };
    let mode = match field {
        FieldKind::General => {
            return Err(InputError::new(
                "[field]",
                Error::UnsupportedBaseField("only real, p-adic and number fields are supported".into()).to_string(),
            ))
        }
        FieldKind::Real => FieldMode::Real,
        FieldKind::Padic => FieldMode::Padic,
        FieldKind::Number => {
            if p.tits.is_some() {
                return Err(InputError::new("[tits]", "number-field problems give Tits data per site"));
            }
            let specs = &p.field.as_ref().expect("number needs [field]").sites;
            let mut sites = Vec::new();
            for (k, s) in specs.iter().enumerate() {
                let loc = format!("[[field.site]] #{} ({})", k + 1, s.label);
                let g = match &s.galois {
                    Some(gs) => build_galois(&rd, &gs.group, &gs.generators).at(&loc)?,
                    None => galois.clone(),
                };
                let t0 = match &s.tits {
                    SiteTits::Marker(m) if m == "trivial" => None,
                    SiteTits::Marker(m) => {
                        return Err(InputError::new(&loc, format!("unknown marker {m:?}, expected \"trivial\"")))
                    }
                    SiteTits::Spec(ts) => Some(resolve_tits(&rd, &g, s.mode, ts, &loc)?),
                };
                sites.push(LocalSite {
                    label: s.label.clone(),
                    mode: s.mode,
                    galois: g,
                    t0,
                });
            }
            return Ok(Resolved {
                rd: Some(rd),
                galois: Some(galois),
                local: None,
                sites,
                number_field: true,
            });
        }
    };
    if p.field.as_ref().is_some_and(|f| !f.sites.is_empty()) {
        return Err(InputError::new("[field]", "sites are only allowed for number fields"));
    }
    let spec = p
        .tits
        .as_ref()
        .ok_or_else(|| InputError::new("[tits]", "missing Tits class data"))?;
    let t0 = resolve_tits(&rd, &galois, mode, spec, "[tits]")?;
    Ok(Resolved {
        rd: Some(rd),
        galois: Some(galois),
        local: Some(LocalTits { mode, t0 }),
        sites: vec![],
        number_field: false,
    })
}

fn section<'a, T>(s: &'a Option<T>, name: &str) -> CliResult<&'a T> {
    s.as_ref().ok_or_else(|| InputError::new(format!("[{name}]"), "missing section"))
}

pub fn build_horospherical(rd: &BasedRootDatum, h: &HoroSpec) -> CliResult<HorosphericalDatum> {
    let loc = "[horospherical]";
    let i = one_based(&h.i, rd.rank(), loc)?;
    let rows = expand_rows(rd, &h.m, loc)?;
    let m = Lattice::from_generators(rd.rank(), &rows).at(loc)?;
    let d = HorosphericalDatum::new(rd.clone(), i, m).at(loc)?;
    d.ensure_valid().at(loc)?;
    Ok(d)
}

pub fn build_spherical(rd: &BasedRootDatum, s: &SphericalSpec) -> CliResult<SphericalDatum> {
    let loc = "[spherical]";
    let x = expand_rows(rd, &s.x_basis, loc)?;
    let sigma = expand_rows(rd, &s.sigma, loc)?;
    let flags = one_based(&s.sigma234, sigma.len().max(1), loc)?;
    let colors = s
        .colors
        .iter()
        .map(|c| {
            let cloc = format!("[[spherical.color]] {}", c.id);
            Ok(Color::new(
                c.id.clone(),
                rats(&c.rho, &cloc)?,
                one_based(&c.sigma_set, rd.rank(), &cloc)?,
            ))
        })
        .collect::<CliResult<Vec<_>>>()?;
    SphericalDatum::new(rd.clone(), x, sigma, colors, flags).at(loc)
}

pub fn build_fan(e: &EmbeddingSpec) -> CliResult<ColoredFan> {
    let cones = e
        .cones
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let loc = format!("[[embedding.cone]] #{}", k + 1);
            Ok(ColoredCone {
                generators: c.generators.iter().map(|g| rats(g, &loc)).collect::<CliResult<_>>()?,
                colors: c.colors.clone(),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(ColoredFan::new(cones))
}

fn local_only<'a>(r: &'a Resolved, kind: &str) -> CliResult<&'a LocalTits> {
    r.local
        .as_ref()
        .ok_or_else(|| InputError::new("[field]", format!("{kind} problems need a real or p-adic field")))
}

/// Run the decision procedure for a problem.
pub fn decide(p: &Problem) -> CliResult<Verdict> {
    let r = resolve(p)?;
    if p.kind == ProblemKind::Diagonal {
        let loc = "[diagonal]";
        let d = section(&p.diagonal, "diagonal")?;
        let deltas = match (d.factors.is_empty(), d.deltas.is_empty()) {
            (false, true) => {
                let entries = d.factors.iter().map(|n| lookup(n, loc)).collect::<CliResult<Vec<_>>>()?;
                if let Some(rd) = &r.rd {
                    if entries.iter().any(|e| e.simple_type != rd.simple_type()) {
                        return Err(InputError::new(loc, "factor types differ from the problem type"));
                    }
                }
                diagonal_deltas(&entries).at(loc)?
            }
            (true, false) => d
                .deltas
                .iter()
                .map(|x| DeltaMarker {
                    trivial: x.trivial,
                    detail: x.detail.clone(),
                })
                .collect(),
            _ => return Err(InputError::new(loc, "give exactly one of factors, delta")),
        };
        return decide_diagonal(&deltas).at(loc);
    }
    let rd = r.rd.as_ref().expect("resolved");
    let g = r.galois.as_ref().expect("resolved");
    match p.kind {
        ProblemKind::Horospherical => {
            let h = build_horospherical(rd, section(&p.horospherical, "horospherical")?)?;
            if r.number_field {
                decide_number_field(GlobalTarget::Horospherical(&h), g, &r.sites).at("[field]")
            } else {
                decide_horospherical(&h, g, &local_only(&r, "horospherical")?.t0).at("[horospherical]")
            }
        }
        ProblemKind::Spherical => {
            let d = build_spherical(rd, section(&p.spherical, "spherical")?)?;
            if r.number_field {
                decide_number_field(GlobalTarget::Spherical(&d), g, &r.sites).at("[field]")
            } else {
                decide_local_general(&d, g, &local_only(&r, "spherical")?.t0).at("[spherical]")
            }
        }
        ProblemKind::Embedding => {
            let d = build_spherical(rd, section(&p.spherical, "spherical")?)?;
            let e = section(&p.embedding, "embedding")?;
            let f = build_fan(e)?;
            let t = local_only(&r, "embedding")?;
            let opts = EmbeddingOptions {
                quasi_projective: e.quasi_projective,
                check_valuation_cone: e.check_valuation_cone,
            };
            decide_embedding(&f, &d, g, &t.t0, opts).at("[embedding]")
        }
        ProblemKind::Gu => decide_gu(rd, g, &local_only(&r, "gu")?.t0).at("[tits]"),
        ProblemKind::Diagonal => unreachable!(),
    }
}

pub fn exit_code(v: &Verdict) -> i32 {
    if v.exists {
        0
    } else {
        1
    }
}

fn describe_reason(r: &Reason) -> (String, String) {
    let mark = |b: bool| if b { "holds" } else { "fails" }.to_string();
    let with = |base: String, w: &Option<String>| match w {
        Some(w) => format!("{base}; witness: {w}"),
        None => base,
    };
    match r {
        Reason::Stability { holds, witness } => (
            mark(*holds),
            with("Galois stability of the invariants".into(), witness),
        ),
        Reason::Cohomology { label, holds, witness } => {
            (mark(*holds), with(format!("Tits class condition [{label}]"), witness))
        }
        Reason::Site { label, holds, detail } => (mark(*holds), format!("place {label}: {detail}")),
        Reason::Lift {
            found,
            lift,
            candidates,
            valid,
        } => {
            let base = format!("stabilizing lift to the colors ({valid} valid of {candidates} candidates)");
            let base = match lift {
                Some(l) => format!("{base}; lift: {}", l.join(", ")),
                None => base,
            };
            (mark(*found), base)
        }
        Reason::Delta { index, trivial, detail } => (
            if *trivial { "trivial" } else { "nontrivial" }.into(),
            format!("delta of factor {index}: {detail}"),
        ),
        Reason::Assumption { text } => ("assumed".into(), text.clone()),
        Reason::CrossCheck { name, agrees } => (
            if *agrees { "agrees" } else { "DISAGREES" }.into(),
            format!("cross-check: {name}"),
        ),
    }
}

/// Human-readable verdict. `explain` lists every condition and citation.
pub fn render_verdict(v: &Verdict, explain: bool) -> String {
    let mut out = format!("verdict: {}\n", if v.exists { "exists" } else { "not exists" });
    if explain {
        out.push_str("conditions:\n");
        for r in &v.reasons {
            let (m, text) = describe_reason(r);
            out.push_str(&format!("  [{m}] {text}\n"));
        }
        if let Some(u) = &v.uniqueness_note {
            out.push_str(&format!("uniqueness: {u}\n"));
        }
        out.push_str("citations:\n");
        for c in &v.citations {
            out.push_str(&format!("  - {c}\n"));
        }
    } else if let Some(r) = v.reasons.iter().find(|r| r.holds() == Some(false)) {
        out.push_str(&format!("failed: {}\n", describe_reason(r).1));
    }
    out
}

pub fn render_json(v: &Verdict) -> String {
    serde_json::to_string_pretty(v).expect("verdict serializes")
}

fn set_of(items: impl IntoIterator<Item = String>) -> String {
    let v: Vec<String> = items.into_iter().collect();
    format!("{{{}}}", v.join(", "))
}

fn quotient_line(q: &LatticeQuotient) -> CliResult<String> {
    let lifts = q.generator_lifts().at("engine")?;
    if lifts.is_empty() {
        return Ok("0".into());
    }
    Ok(format!("{q}, generated by {}", set_of(lifts.iter().map(|l| format_weight(l)))))
}

fn lattice_line(l: &Lattice) -> String {
    set_of(l.basis_vecs().iter().map(|b| format_weight(b)))
}

fn galois_line(g: &GaloisAction) -> String {
    match g.node_permutations() {
        Some(ps) if !ps.is_empty() => format!(
            "{} with node permutations {}",
            g.kind(),
            ps.iter()
                .map(|p| format!("{:?}", p.one_line()))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        _ => {
            if g.acts_trivially() {
                format!("{} acting trivially", g.kind())
            } else {
                format!("{}", g.kind())
            }
        }
    }
}

fn character_block(out: &mut String, prefix: &str, rd: &BasedRootDatum, g: &GaloisAction, t0: &BrCharacter) -> CliResult<()> {
    let inv = center_invariants(rd, g).at("engine")?;
    out.push_str(&format!("{prefix}(P/Q)^Γ: {}\n", quotient_line(&inv)?));
    out.push_str(&format!("{prefix}t0: {t0}\n"));
    let (_, theta_p) = theta_lattice(rd, g, t0).at("engine")?;
    out.push_str(&format!("{prefix}Θ_P: {}\n", lattice_line(&theta_p)));
    Ok(())
}

fn spherical_block(out: &mut String, d: &SphericalDatum) -> CliResult<()> {
    let rd = d.root_datum();
    let loc = "[spherical]";
    out.push_str(&format!(
        "X: rank {}, basis {}\n",
        d.x_rank(),
        set_of(d.x_basis().row_vecs().iter().map(|b| format_weight(b)))
    ));
    out.push_str(&format!("Σ: {}\n", set_of(d.sigma().iter().map(|s| format_root(rd, s)))));
    let s2 = d.sigma2().at(loc)?;
    out.push_str(&format!(
        "Σ^(2): {}\n",
        set_of(s2.iter().map(|&k| format_root(rd, &d.sigma()[k])))
    ));
    let (sc, nn) = d.sigma_variants().at(loc)?;
    out.push_str(&format!("Σ^N: {}\n", set_of(nn.iter().map(|s| format_root(rd, s)))));
    out.push_str(&format!("Σ^sc: {}\n", set_of(sc.iter().map(|s| format_root(rd, s)))));
    let (o1, o2) = d.omega_sets().at(loc)?;
    let names = |o: &crate::spherical::OmegaElement| {
        o.colors.iter().map(|&k| d.colors()[k].id.clone()).collect::<Vec<_>>().join(" ")
    };
    out.push_str(&format!("Ω^(1): {}\n", set_of(o1.iter().map(names))));
    out.push_str(&format!("Ω^(2): {}\n", set_of(o2.iter().map(|o| format!("({})", names(o))))));
    let (xa, xaker, _) = d.aut_character_lattices().at(loc)?;
    out.push_str(&format!("X*(A): {}\n", quotient_line(&xa)?));
    out.push_str(&format!("X*(A^ker): {}\n", quotient_line(&xaker)?));
    Ok(())
}

/// Derived data for a problem, deterministic and canonical.
pub fn invariants_report(p: &Problem) -> CliResult<String> {
    let r = resolve(p)?;
    let mut out = String::new();
    if p.kind == ProblemKind::Diagonal {
        let d = section(&p.diagonal, "diagonal")?;
        for (k, n) in d.factors.iter().enumerate() {
            let e = lookup(n, "[diagonal]")?;
            out.push_str(&format!(
                "factor {}: {} (type {}, pure inner class {})\n",
                k + 1,
                e.name,
                e.simple_type,
                e.pure_inner_class.as_deref().unwrap_or("unknown")
            ));
        }
        for (k, x) in d.deltas.iter().enumerate() {
            out.push_str(&format!("delta {}: {}\n", k + 2, if x.trivial { "trivial" } else { "nontrivial" }));
        }
        return Ok(out);
    }
    let rd = r.rd.as_ref().expect("resolved");
    let g = r.galois.as_ref().expect("resolved");
    out.push_str(&format!("type: {}\n", rd.simple_type()));
    out.push_str(&format!("P/Q: {}\n", rd.center_characters()));
    out.push_str(&format!("galois: {}\n", galois_line(g)));
    match &r.local {
        Some(t) => {
            out.push_str(&format!("field: {}\n", t.mode));
            character_block(&mut out, "", rd, g, &t.t0)?;
        }
        None => {
            out.push_str("field: number\n");
            for s in &r.sites {
                out.push_str(&format!("place {} ({}): galois {}\n", s.label, s.mode, galois_line(&s.galois)));
                match &s.t0 {
                    Some(t) => character_block(&mut out, "  ", rd, &s.galois, t)?,
                    None => out.push_str("  t0: trivial\n"),
                }
            }
        }
    }
    match p.kind {
        ProblemKind::Horospherical => {
            let h = build_horospherical(rd, section(&p.horospherical, "horospherical")?)?;
            out.push_str(&format!("I: {}\n", set_of(h.i().iter().map(|a| format!("α{}", a + 1)))));
            out.push_str(&format!("M: {}\n", lattice_line(h.m())));
            let mg = fixed_sublattice(h.m(), g.generators()).at("[horospherical]")?;
            out.push_str(&format!("M^Γ: {}\n", lattice_line(&mg)));
            spherical_block(&mut out, &h.to_spherical().at("[horospherical]")?)?;
        }
        ProblemKind::Spherical => {
            spherical_block(&mut out, &build_spherical(rd, section(&p.spherical, "spherical")?)?)?;
        }
        ProblemKind::Embedding => {
            let d = build_spherical(rd, section(&p.spherical, "spherical")?)?;
            spherical_block(&mut out, &d)?;
            let e = section(&p.embedding, "embedding")?;
            let f = build_fan(e)?;
            for (k, c) in f.canonical(&d, e.check_valuation_cone).at("[embedding]")?.iter().enumerate() {
                let rays: Vec<String> = c
                    .rays
                    .iter()
                    .map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
                    .collect();
                let cols = c.colors.iter().map(|&i| d.colors()[i].id.clone());
                out.push_str(&format!("cone {}: rays {}, colors {}\n", k + 1, set_of(rays), set_of(cols)));
            }
            if d.invariants_stable(g).at("[spherical]")? {
                let s = search_lifts(&f, &d, g).at("[embedding]")?;
                out.push_str(&format!(
                    "lifts: {} candidates, {} satisfy the group law, {} stabilizing\n",
                    s.candidates, s.valid, s.stabilizing
                ));
            }
        }
        ProblemKind::Gu | ProblemKind::Diagonal => {}
    }
    Ok(out)
}

pub fn catalog_list_report() -> CliResult<String> {
    let mut out = String::new();
    for (name, cite) in catalog_list().at("catalog")? {
        out.push_str(&format!("{name}\t{cite}\n"));
    }
    Ok(out)
}

pub fn catalog_show_report(name: &str) -> CliResult<String> {
    let e = lookup(name, "catalog")?;
    let mut out = format!("name: {}\ntype: {}\n", e.name, e.simple_type);
    let gens: Vec<String> = e
        .generators
        .iter()
        .map(|g| match g {
            GeneratorSpec::Name(n) => n.clone(),
            GeneratorSpec::Perm(p) => format!("{p:?}"),
        })
        .collect();
    out.push_str(&format!("group: {}", e.group));
    if !gens.is_empty() {
        out.push_str(&format!(" ({})", gens.join(", ")));
    }
    out.push_str(&format!("\nfield: {}\n", e.mode));
    let values: Vec<String> = e.values.iter().map(|(w, v)| format!("{w} = {v}")).collect();
    out.push_str(&format!(
        "t0 values: {}\n",
        if values.is_empty() { "none (zero character)".into() } else { values.join(", ") }
    ));
    let rd = e.root_datum().at("catalog")?;
    let g = e.galois(&rd).at("catalog")?;
    match e.character(&rd, &g) {
        Ok(t) => {
            out.push_str(&format!("(P/Q)^Γ: {}\n", center_invariants(&rd, &g).at("catalog")?));
            out.push_str(&format!("t0: {t}\n"));
            out.push_str(if t.is_zero() {
                "t = +1 (quasi-split inner class)\n"
            } else {
                "t != 1\n"
            });
        }
        Err(err) => out.push_str(&format!("t0: not computed ({err})\n")),
    }
    if let Some(c) = &e.pure_inner_class {
        out.push_str(&format!("pure inner class: {c}\n"));
    }
    out.push_str(&format!("citation: {}\n", e.citation));
    Ok(out)
}

/// Values of `t⁰` on the generators, for golden files.
pub fn character_values(t: &BrCharacter) -> Vec<String> {
    t.values().iter().map(format_qz).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SO10: &str = r#"
version = 1
kind = "spherical"
type = "D5"

[field]
mode = "padic"

[tits]
zero = true

[spherical]
x_basis = ["omega1"]
sigma = ["2*omega1"]

[[spherical.color]]
id = "D1"
rho = [1]
sigma_set = [1]
"#;

    #[test]
    fn parse_and_decide() {
        let p = Problem::parse(SO10).unwrap();
        assert!(decide(&p).unwrap().exists);
        let back = Problem::parse(&p.to_toml()).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.to_toml(), p.to_toml());
    }

    #[test]
    fn errors_are_located() {
        let e = Problem::parse("version = 1\nkind = \"nope\"\n").unwrap_err();
        assert_eq!(e.location, "line 2");
        let e = Problem::parse(&SO10.replace("[tits]\nzero = true", "[tits]\nzero = true\nvalues = {}")).unwrap();
        assert_eq!(decide(&e).unwrap_err().location, "[tits]");
        let bad = SO10.replace("mode = \"padic\"", "mode = \"general\"");
        let err = decide(&Problem::parse(&bad).unwrap()).unwrap_err();
        assert!(err.message.contains("unsupported base field"), "{err}");
    }

    #[test]
    fn rows_expand() {
        let a2 = BasedRootDatum::new("A2".parse().unwrap()).unwrap();
        let rows = vec![Row::Expr("2P".into()), Row::Expr("Q".into()), Row::Coords(vec![1, 1])];
        let v = expand_rows(&a2, &rows, "x").unwrap();
        assert_eq!(v.len(), 5);
        assert_eq!(v[0], crate::ivec(&[2, 0]));
        assert_eq!(v[2], crate::ivec(&[2, -1]));
        assert!(expand_rows(&a2, &[Row::Coords(vec![1])], "x").is_err());
    }

    #[test]
    fn formatting() {
        assert_eq!(format_weight(&crate::ivec(&[2, 0, -1])), "2ω1 - ω3");
        assert_eq!(format_weight(&crate::ivec(&[0, 0])), "0");
        let a5 = BasedRootDatum::new("A5".parse().unwrap()).unwrap();
        assert_eq!(format_root(&a5, &crate::ivec(&[4, -2, 0, 0, 0])), "2α1");
        assert_eq!(parse_rational(" -3/6").unwrap(), crate::rat(-1, 2));
        assert!(parse_rational("0.5").is_err());
    }
}
