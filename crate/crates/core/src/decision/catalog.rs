//! Named real and p-adic forms with their Galois action and the Brauer
//! character of their Tits class.
//!
//! Built-in entries are either fixed names or parametric families
//! (`SU(p,q)`, `SL(n,R)`, `SL(n,H)`, `Sp(2n,R)`, `Sp(p,q)`). Extra entries are
//! read from the TOML files listed (`:`-separated) in
//! `SPHERICAL_FORMS_CATALOG`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{build_galois, center_invariants, parse_weight, GeneratorSpec};
use crate::error::{Error, Result};
use crate::galois::{parse_qz, BrCharacter, FieldMode, GaloisAction};
use crate::rootdata::{BasedRootDatum, Family, SimpleType};
use num_traits::Zero;

pub const CATALOG_ENV: &str = "SPHERICAL_FORMS_CATALOG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseField {
    Real,
    Padic,
    /// Neither local nor global; nothing can be decided.
    General,
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Real => write!(f, "real"),
            BaseField::Padic => write!(f, "padic"),
            BaseField::General => write!(f, "general"),
        }
    }
}

impl BaseField {
    pub fn local_mode(self) -> Result<FieldMode> {
        match self {
            BaseField::Real => Ok(FieldMode::Real),
            BaseField::Padic => Ok(FieldMode::Padic),
            BaseField::General => Err(Error::UnsupportedBaseField(
                "only real, p-adic and number fields are supported".into(),
            )),
        }
    }
}

/// A form: the `*`-action, the base field and `t⁰` by its values on
/// weights (empty means the zero character).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    #[serde(rename = "type")]
    pub simple_type: SimpleType,
    pub group: String,
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
    pub mode: BaseField,
    #[serde(default)]
    pub values: BTreeMap<String, String>,
    pub citation: String,
    /// Entries with equal classes are pure inner forms of each other.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pure_inner_class: Option<String>,
}

impl CatalogEntry {
    pub fn root_datum(&self) -> Result<BasedRootDatum> {
        BasedRootDatum::new(self.simple_type)
    }

    pub fn galois(&self, rd: &BasedRootDatum) -> Result<GaloisAction> {
        build_galois(rd, &self.group, &self.generators)
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| parse_qz(v).map(|r| r.is_zero()).unwrap_or(false))
    }

    /// `t⁰` on `(P/Q)^Γ` for the entry's own action.
    pub fn character(&self, rd: &BasedRootDatum, g: &GaloisAction) -> Result<BrCharacter> {
        let mode = self.mode.local_mode()?;
        character_from_values(rd, g, mode, &self.values)
    }
}

/// `t⁰` on `(P/Q)^Γ` from values on weight expressions.
pub fn character_from_values(
    rd: &BasedRootDatum,
    g: &GaloisAction,
    mode: FieldMode,
    values: &BTreeMap<String, String>,
) -> Result<BrCharacter> {
    let source = center_invariants(rd, g)?;
    if values.is_empty() {
        return Ok(BrCharacter::zero(source, mode));
    }
    let pairs = values
        .iter()
        .map(|(w, v)| Ok((parse_weight(w, rd.rank())?, parse_qz(v)?)))
        .collect::<Result<Vec<_>>>()?;
    BrCharacter::from_weight_values(source, &pairs, mode)
}

fn entry(
    name: &str,
    ty: &str,
    group: &str,
    gens: &[&str],
    mode: BaseField,
    values: &[(&str, &str)],
    citation: &str,
    class: Option<String>,
) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        simple_type: ty.parse().expect("built-in type"),
        group: group.into(),
        generators: gens.iter().map(|s| GeneratorSpec::Name((*s).into())).collect(),
        mode,
        values: values.iter().map(|(k, v)| ((*k).into(), (*v).into())).collect(),
        citation: citation.into(),
        pure_inner_class: class,
    }
}

fn fixed_entries() -> Vec<CatalogEntry> {
    use BaseField::*;
    vec![
        entry(
            "SO(10,Q)",
            "D5",
            "1",
            &[],
            Padic,
            &[],
            "SO of a 10-dimensional quadratic form of trivial discriminant; its Tits class maps to 0 in Br_2",
            None,
        ),
        entry(
            "SO(10,Q)-disc",
            "D5",
            "Z/2",
            &["flip"],
            Real,
            &[],
            "SO of a 10-dimensional quadratic form of nontrivial discriminant; Tits class maps to 0 in Br_2",
            None,
        ),
        entry(
            "SU(D^5,H)",
            "D5",
            "1",
            &[],
            Padic,
            &[("omega5", "1/4")],
            "SU of an anti-hermitian form over a quaternion division algebra D, trivial discriminant; Tits class maps to [D] in Br_2",
            None,
        ),
        entry(
            "SU(D^5,H)-disc",
            "D5",
            "Z/2",
            &["flip"],
            Real,
            &[("omega1", "1/2")],
            "SU of an anti-hermitian form over a quaternion division algebra D, nontrivial discriminant; Tits class maps to [D] in Br_2",
            None,
        ),
        entry("SL(3)", "A2", "1", &[], Padic, &[], "split SL_3; trivial Tits class", None),
        entry(
            "SU(l^3,H)",
            "A2",
            "Z/2",
            &["flip"],
            Real,
            &[],
            "SU of a hermitian form in 3 variables over a quadratic extension; quasi-split outer form",
            None,
        ),
        entry(
            "SL(1,D3)",
            "A2",
            "1",
            &[],
            Padic,
            &[("omega1", "1/3")],
            "SL_1 of a central division algebra D of degree 3; Tits class [D] of order 3",
            None,
        ),
        entry(
            "SU(1,D,sigma)",
            "A2",
            "Z/2",
            &["flip"],
            General,
            &[],
            "SU_1 of a degree-3 division algebra with an involution of the second kind",
            None,
        ),
    ]
}

const FAMILIES: &[(&str, &str)] = &[
    ("SU(p,q)", "special unitary group of signature (p,q); for p+q = 2m the Tits class is (-1)^(m-p)"),
    ("SL(n,R)", "split SL_n over the reals; trivial Tits class"),
    ("SL(n,H)", "SL_n over Hamilton's quaternions (type A_{2n-1}); Tits class of order 2"),
    ("Sp(2n,R)", "split symplectic group; trivial Tits class"),
    ("Sp(p,q)", "quaternionic unitary group of signature (p,q) (type C_{p+q}); nontrivial Tits class"),
];

fn parse_pair(s: &str, prefix: &str, suffix: &str) -> Option<(String, String)> {
    let inner = s.strip_prefix(prefix)?.strip_suffix(suffix)?;
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().to_string(), b.trim().to_string()))
}

fn nat(s: &str) -> Option<usize> {
    s.parse().ok()
}

fn a_type(n: usize) -> String {
    format!("A{}", n - 1)
}

/// Weight generating `P/Q` for a type with center of order 2 and trivial
/// action, accounting for `C₂ = B₂`.
fn c_generator(t: SimpleType) -> &'static str {
    match (t.family, t.rank) {
        (Family::A, 1) => "omega1",
        (Family::B, 2) => "omega2",
        _ => "omega1",
    }
}

fn c_type(n: usize) -> String {
    if n == 1 {
        "A1".into()
    } else {
        format!("C{n}")
    }
}

fn family_entry(name: &str) -> Option<CatalogEntry> {
    use BaseField::Real;
    let compact = name.replace(' ', "");
    if let Some((p, q)) = parse_pair(&compact, "SU(", ")") {
        let (p, q) = (nat(&p)?, nat(&q)?);
        let n = p + q;
        if n < 2 {
            return None;
        }
        // SU(p,q) ≅ SU(q,p); for odd n that swap changes the parity of q
        let class = Some(match n {
            2 => a1_class(p * q == 0),
            _ if n % 2 == 1 => format!("SU:{n}"),
            _ => format!("SU:{n}:{}", q % 2),
        });
        let citation = format!("SU({p},{q}): Tits class (-1)^(m-p) when p+q = 2m, trivial when p+q is odd");
        if n == 2 {
            let m = 1;
            let vals: &[(&str, &str)] = if (m + p) % 2 == 1 { &[("omega1", "1/2")] } else { &[] };
            return Some(entry(name, "A1", "Z/2", &["identity"], Real, vals, &citation, class));
        }
        if n % 2 == 1 {
            return Some(entry(name, &a_type(n), "Z/2", &["flip"], Real, &[], &citation, class));
        }
        let m = n / 2;
        let key = format!("omega{m}");
        let nontrivial = (m + p) % 2 == 1;
        let vals: Vec<(&str, &str)> = if nontrivial { vec![(key.as_str(), "1/2")] } else { vec![] };
        return Some(entry(name, &a_type(n), "Z/2", &["flip"], Real, &vals, &citation, class));
    }
    if let Some((n, f)) = parse_pair(&compact, "SL(", ")") {
        let n = nat(&n)?;
        return match f.as_str() {
            "R" if n >= 2 => Some(entry(
                name,
                &a_type(n),
                "Z/2",
                &["identity"],
                Real,
                &[],
                "split SL_n over the reals; trivial Tits class",
                Some(if n == 2 { a1_class(false) } else { format!("SL(n,R):{n}") }),
            )),
            "H" if n >= 1 => Some(entry(
                name,
                &a_type(2 * n),
                "Z/2",
                &["identity"],
                Real,
                &[("omega1", "1/2")],
                "SL_n over the quaternions; Tits class is the class of H, of order 2",
                Some(if n == 1 { a1_class(true) } else { format!("SL(n,H):{n}") }),
            )),
            _ => None,
        };
    }
    if let Some((a, b)) = parse_pair(&compact, "Sp(", ")") {
        if b == "R" {
            let two_n = nat(&a)?;
            if two_n < 2 || two_n % 2 == 1 {
                return None;
            }
            let n = two_n / 2;
            return Some(entry(
                name,
                &c_type(n),
                "Z/2",
                &["identity"],
                Real,
                &[],
                "split symplectic group; trivial Tits class and trivial H^1",
                Some(if n == 1 { a1_class(false) } else { format!("Sp(2n,R):{n}") }),
            ));
        }
        let (p, q) = (nat(&a)?, nat(&b)?);
        let n = p + q;
        if n < 1 {
            return None;
        }
        let t: SimpleType = c_type(n).parse().ok()?;
        return Some(entry(
            name,
            &c_type(n),
            "Z/2",
            &["identity"],
            Real,
            &[(c_generator(t), "1/2")],
            "Sp(p,q): quaternionic unitary group; nontrivial Tits class",
            Some(if n == 1 { a1_class(true) } else { format!("Sp-quaternionic:{n}") }),
        ));
    }
    None
}

// Real forms of SL_2 are SL(2,R) ≅ SU(1,1) ≅ Sp(2,R) and SU(2) ≅ SL(1,H) ≅ Sp(1).
fn a1_class(compact: bool) -> String {
    if compact { "A1:compact" } else { "A1:split" }.into()
}

fn read_extension_files() -> Result<Vec<CatalogEntry>> {
    #[derive(Deserialize)]
    struct File {
        #[serde(default)]
        entry: Vec<CatalogEntry>,
    }
    let Ok(paths) = std::env::var(CATALOG_ENV) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for p in paths.split(':').filter(|p| !p.is_empty()) {
        let text = std::fs::read_to_string(p)
            .map_err(|e| Error::Precondition(format!("catalog file {p}: {e}")))?;
        let f: File = toml::from_str(&text)
            .map_err(|e| Error::Precondition(format!("catalog file {p}: {e}")))?;
        out.extend(f.entry);
    }
    Ok(out)
}

/// Extension entries shadow built-in ones of the same name.
pub fn catalog_lookup(name: &str) -> Result<CatalogEntry> {
    let name = name.trim();
    if let Some(e) = read_extension_files()?.into_iter().find(|e| e.name == name) {
        return Ok(e);
    }
    if let Some(e) = fixed_entries().into_iter().find(|e| e.name == name) {
        return Ok(e);
    }
    family_entry(name).ok_or_else(|| Error::UnknownCatalogEntry(name.into()))
}

/// One line per entry: fixed names, families, then extension entries.
pub fn catalog_list() -> Result<Vec<(String, String)>> {
    let mut out: Vec<(String, String)> = fixed_entries()
        .into_iter()
        .map(|e| (e.name, e.citation))
        .collect();
    out.extend(FAMILIES.iter().map(|(n, c)| ((*n).to_string(), (*c).to_string())));
    out.extend(read_extension_files()?.into_iter().map(|e| (e.name, e.citation)));
    Ok(out)
}
