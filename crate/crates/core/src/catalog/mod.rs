//! The classification tables as data, and the pipelines that re-derive them.
//!
//! The tables ship as `data/catalog.json` exactly as printed. Rows whose
//! printed data contradicts a direct computation carry a correction with a
//! note; [`Variant`] selects which of the two is used.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::exactalg::{Field, Poly};
use crate::localfibers::{format_multiset, parse_label_list, AffineLabel};
use crate::weierstrass::WeierstrassModel;
use crate::{Error, Result};

pub mod enriques;
pub use enriques::{enriques_subdiagram_scan, AffineSubdiagram, EnriquesConfig, EnriquesScan, FibrationCandidate};
mod expr;
mod extremal;
pub use extremal::{enumerate_extremal, is_large, ExtremalConfig, ExtremalEnumeration, FibrationKind};
pub mod groups;
mod nonjacobian;
pub use nonjacobian::{verify_nonjacobian, verify_nonjacobian_row, NonJacobianVerdict, SAMPLE_CHARACTERISTICS};
mod verify;


pub use expr::{Expr, MPoly};

pub use groups::GroupDesc;

pub use verify::{
    check_substitution, overall, verify_all, verify_case, Check, CheckStatus, SubstitutionOutcome, Verdict,
    VerifyOptions,
};

const DATA: &str = include_str!("../../data/catalog.json");

/// Printed table entries or their corrected versions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Printed,
    #[default]
    Corrected,
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "printed" => Ok(Variant::Printed),
            "corrected" => Ok(Variant::Corrected),
            _ => Err(Error::Input(format!("unknown table variant '{}'", s))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == Variant::Printed { "printed" } else { "corrected" })
    }
}

/// The characteristic column: `any`, `3`, `2,3`, `!=2,3`, `!=0,2,3,5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharConstraint {
    Any,
    Only(Vec<u64>),
    Not(Vec<u64>),
}

impl CharConstraint {
    pub fn allows(&self, p: u64) -> bool {
        match self {
            CharConstraint::Any => true,
            CharConstraint::Only(v) => v.contains(&p),
            CharConstraint::Not(v) => !v.contains(&p),
        }
    }

    /// Admissible characteristics among `0` and the primes up to `bound`.
    pub fn sample(&self, bound: u64) -> Vec<u64> {
        std::iter::once(0)
            .chain((2..=bound).filter(|&n| crate::exactalg::is_prime(n)))
            .filter(|&p| self.allows(p))
            .collect()
    }
}

impl FromStr for CharConstraint {
    type Err = Error;
    fn from_str(s: &str) -> Result<CharConstraint> {
        let s = s.trim();
        let list = |body: &str| -> Result<Vec<u64>> {
            body.split(',')
                .map(|x| x.trim().parse().map_err(|_| Error::Input(format!("bad characteristic list '{}'", s))))
                .collect()
        };
        if s == "any" {
            Ok(CharConstraint::Any)
        } else if let Some(rest) = s.strip_prefix("!=") {
            Ok(CharConstraint::Not(list(rest)?))
        } else {
            Ok(CharConstraint::Only(list(s)?))
        }
    }
}

impl fmt::Display for CharConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            CharConstraint::Any => write!(f, "any"),
            CharConstraint::Only(v) => write!(f, "{}", join(v)),
            CharConstraint::Not(v) => write!(f, "!={}", join(v)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "e")]
    Elliptic,
    #[serde(rename = "qe")]
    QuasiElliptic,
    #[serde(rename = "e/qe")]
    Either,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Elliptic => "e",
            Kind::QuasiElliptic => "qe",
            Kind::Either => "e/qe",
        };
        write!(f, "{}", s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamSpec {
    pub name: String,
    /// Values the parameter may not take, read in the base field.
    pub excluded: Vec<i64>,
}

/// Parameter bindings, keyed by name (`l` stands for λ).
pub type Params = BTreeMap<String, BigRational>;

pub fn format_params(params: &Params) -> String {
    params.iter().map(|(k, v)| format!("{}={}", display_param(k), v)).collect::<Vec<_>>().join(",")
}

fn display_param(name: &str) -> &str {
    if name == "l" {
        "λ"
    } else {
        name
    }
}

/// Reads `l=3`, `λ=3` or `lambda=-1/2`.
pub fn parse_param(s: &str) -> Result<(String, BigRational)> {
    let (k, v) = s.split_once('=').ok_or_else(|| Error::Input(format!("expected name=value, got '{}'", s)))?;
    let name = match k.trim() {
        "λ" | "lambda" | "l" => "l".to_string(),
        other => other.to_string(),
    };
    Ok((name, parse_rational(v.trim())?))
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Input(format!("'{}' is not an integer or fraction", s));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// One row of the table of jacobian surfaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogCase {
    pub id: u32,
    pub fibers: Vec<AffineLabel>,
    pub kind: Kind,
    /// Characteristics in which an `e/qe` row is quasi-elliptic.
    pub qe_characteristics: Vec<u64>,
    pub equation: String,
    /// Templates for `a1, a2, a3, a4, a6`.
    pub a: [Expr; 5],
    pub params: Vec<ParamSpec>,
    pub aut_dagger: GroupDesc,
    pub aut: GroupDesc,
    pub moduli: u32,
    pub p: CharConstraint,
    /// Set when the row differs from the printed one.
    pub correction: Option<String>,
}

impl CatalogCase {
    pub fn fibers_text(&self) -> String {
        format_multiset(&self.fibers)
    }

    pub fn rank_sum(&self) -> u32 {
        self.fibers.iter().map(|l| l.rank()).sum()
    }

    pub fn is_extremal(&self) -> bool {
        self.rank_sum() == 8
    }

    /// Whether the row is quasi-elliptic in characteristic `p`.
    pub fn quasi_elliptic_in(&self, p: u64) -> bool {
        match self.kind {
            Kind::Elliptic => false,
            Kind::QuasiElliptic => true,
            Kind::Either => self.qe_characteristics.contains(&p),
        }
    }

    /// Every admissible binding of the parameters over `F_p`; for `Q` a
    /// few small integers.
    pub fn admissible_params(&self, p: u64) -> Vec<Params> {
        let mut out = vec![Params::new()];
        for spec in &self.params {
            let values: Vec<i64> = if p == 0 {
                [3, 5, 7, -3].into_iter().filter(|v| !spec.excluded.contains(v)).take(3).collect()
            } else {
                (0..p as i64).filter(|v| !spec.excluded.iter().any(|e| (e - v).rem_euclid(p as i64) == 0)).collect()
            };
            out = out
                .into_iter()
                .flat_map(|b| {
                    values.iter().map(move |v| {
                        let mut b = b.clone();
                        b.insert(spec.name.clone(), BigRational::from_integer((*v).into()));
                        b
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    Fixed(u64),
    /// `m = p`.
    Characteristic,
    /// Any `m` prime to `p`.
    Coprime,
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Fixed(m) => write!(f, "{}", m),
            Multiplicity::Characteristic => write!(f, "p"),
            Multiplicity::Coprime => write!(f, "m"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipleFiber {
    pub multiplicity: Multiplicity,
    pub label: AffineLabel,
}

impl FromStr for MultipleFiber {
    type Err = Error;
    fn from_str(s: &str) -> Result<MultipleFiber> {
        let s = s.trim();
        let (multiplicity, rest) = if let Some(r) = s.strip_prefix('p') {
            (Multiplicity::Characteristic, r)
        } else if let Some(r) = s.strip_prefix('m') {
            (Multiplicity::Coprime, r)
        } else {
            let digits: String = s.chars().take_while(|c| c.is_ascii_digit()).collect();
            let m: u64 = digits.parse().map_err(|_| Error::Input(format!("bad multiple fibre '{}'", s)))?;
            (Multiplicity::Fixed(m), &s[digits.len()..])
        };
        Ok(MultipleFiber { multiplicity, label: rest.parse()? })
    }
}

impl fmt::Display for MultipleFiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.multiplicity, self.label)
    }
}

/// One row of the table of non-jacobian surfaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonJacobianCase {
    pub id: String,
    pub fibers: Vec<AffineLabel>,
    pub multiple: MultipleFiber,
    pub kind: Kind,
    pub aut_dagger: GroupDesc,
    pub aut: GroupDesc,
    pub moduli: u32,
    pub p: CharConstraint,
    /// `Aut_ct ∩ MW` is nontrivial.
    pub ct_meets_mw: bool,
    pub correction: Option<String>,
}

impl NonJacobianCase {
    /// Number of the jacobian row the case refers to.
    pub fn parent_id(&self) -> Option<u32> {
        self.id.trim_end_matches(['\'', '′', '″', '‴']).parse().ok()
    }
}

/// Explicit automorphisms outside `Aut_ct(J)^†`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutSpec {
    pub rows: Vec<u32>,
    /// Per-row value of the exponent `i`.
    pub row_exponents: BTreeMap<u32, u32>,
    pub t: Expr,
    pub x: Expr,
    pub y: Expr,
    pub fiber_action: String,
}

/// Companion lists of a large fibre in one characteristic column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Column {
    pub p: CharConstraint,
    pub companions: Vec<Vec<AffineLabel>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Row {
    pub fiber: AffineLabel,
    pub columns: Vec<Table1Column>,
}

impl Table1Row {
    pub fn column_for(&self, p: u64) -> Option<&Table1Column> {
        self.columns.iter().find(|c| c.p.allows(p))
    }

    /// Full fibre lists (large fibre plus companions) in characteristic p.
    pub fn configurations(&self, p: u64) -> Vec<Vec<AffineLabel>> {
        self.column_for(p)
            .map(|c| {
                c.companions
                    .iter()
                    .map(|comp| {
                        let mut v = vec![self.fiber];
                        v.extend(comp.iter().copied());
                        crate::localfibers::canonical_multiset(&v)
                    })
                    .collect()
            })
            .unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionPairs {
    pub group: GroupDesc,
    pub kind: Kind,
    pub fibers: Vec<Vec<AffineLabel>>,
}

pub struct Catalog {
    pub table1: Vec<Table1Row>,
    printed2: Vec<CatalogCase>,
    corrected2: Vec<CatalogCase>,
    pub table3: Vec<AutSpec>,
    printed4: Vec<NonJacobianCase>,
    corrected4: Vec<NonJacobianCase>,
    /// Fibres of a rational surface met by a torsion section, with its order.
    pub torsion_single: Vec<(AffineLabel, u32)>,
    pub torsion_pairs: Vec<TorsionPairs>,
    pub enriques: Vec<EnriquesConfig>,
}

impl Catalog {
    pub fn table2(&self, v: Variant) -> &[CatalogCase] {
        match v {
            Variant::Printed => &self.printed2,
            Variant::Corrected => &self.corrected2,
        }
    }

    pub fn table4(&self, v: Variant) -> &[NonJacobianCase] {
        match v {
            Variant::Printed => &self.printed4,
            Variant::Corrected => &self.corrected4,
        }
    }

    pub fn case(&self, id: u32, v: Variant) -> Result<&CatalogCase> {
        self.table2(v)
            .iter()
            .find(|c| c.id == id)
            .ok_or_else(|| Error::Input(format!("no jacobian case {}", id)))
    }

    pub fn nonjacobian(&self, id: &str, v: Variant) -> Result<&NonJacobianCase> {
        let want = normalize_prime_id(id);
        self.table4(v)
            .iter()
            .find(|c| c.id == want)
            .ok_or_else(|| Error::Input(format!("no non-jacobian case {}", id)))
    }

    /// The automorphisms listed for a row.
    pub fn automorphisms(&self, id: u32) -> Vec<&AutSpec> {
        self.table3.iter().filter(|a| a.rows.contains(&id)).collect()
    }


    pub fn enriques_config(&self, label: &str) -> Result<&EnriquesConfig> {
        self.enriques
            .iter()
            .find(|c| c.label.eq_ignore_ascii_case(label))
            .ok_or_else(|| Error::Input(format!("no Enriques configuration '{}'", label)))
    }

    /// Table 1 row of a large fibre.
    pub fn table1_row(&self, fiber: AffineLabel) -> Option<&Table1Row> {
        self.table1.iter().find(|r| r.fiber == fiber)
    }
}

/// `12''` and `12″` name the same row.
pub fn normalize_prime_id(id: &str) -> String {
    id.trim().replace('‴', "'''").replace('″', "''").replace('′', "'")
}

// ---- raw JSON shapes ----

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawData {
    #[allow(dead_code)]
    version: u32,
    table1: Vec<RawTable1>,
    table2: Vec<RawCase>,
    table2_corrections: Vec<RawCorrection>,
    table3: Vec<RawAut>,
    table4: Vec<RawNonJacobian>,
    table4_corrections: Vec<RawRename>,
    torsion_pairs: RawTorsion,
    enriques: Vec<enriques::RawConfig>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable1 {
    fiber: String,
    columns: Vec<RawColumn>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawColumn {
    p: String,
    companions: Vec<String>,
}

#[derive(Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct RawCase {
    id: u32,
    fibers: String,
    kind: Kind,
    #[serde(default)]
    qe_characteristics: Vec<u64>,
    equation: String,
    a: BTreeMap<String, String>,
    #[serde(default)]
    params: Vec<ParamSpec>,
    aut_dagger: String,
    aut: String,
    moduli: u32,
    p: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCorrection {
    id: u32,
    equation: Option<String>,
    a: Option<BTreeMap<String, String>>,
    params: Option<Vec<ParamSpec>>,
    note: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAut {
    rows: Vec<u32>,
    #[serde(default)]
    row_exponents: BTreeMap<String, u32>,
    t: String,
    x: String,
    y: String,
    fiber_action: String,
}

#[derive(Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct RawNonJacobian {
    id: String,
    fibers: String,
    multiple: String,
    kind: Kind,
    aut_dagger: String,
    aut: String,
    moduli: u32,
    p: String,
    #[serde(default)]
    ct_meets_mw: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRename {
    id: String,
    new_id: String,
    note: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTorsion {
    #[allow(dead_code)]
    note: String,
    single: Vec<RawSingleTorsion>,
    two_torsion: Vec<RawTorsionEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSingleTorsion {
    fiber: String,
    order: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTorsionEntry {
    group: String,
    kind: Kind,
    fibers: Vec<String>,
}

fn companions(s: &str) -> Result<Vec<AffineLabel>> {
    if s.trim() == "none" {
        Ok(Vec::new())
    } else {
        parse_label_list(s)
    }
}

fn templates(a: &BTreeMap<String, String>) -> Result<[Expr; 5]> {
    for k in a.keys() {
        if !["a1", "a2", "a3", "a4", "a6"].contains(&k.as_str()) {
            return Err(Error::Input(format!("unknown coefficient {}", k)));
        }
    }
    let get = |k: &str| Expr::parse(a.get(k).map(String::as_str).unwrap_or("0"));
    Ok([get("a1")?, get("a2")?, get("a3")?, get("a4")?, get("a6")?])
}

fn build_case(r: &RawCase, correction: Option<String>) -> Result<CatalogCase> {
    Ok(CatalogCase {
        id: r.id,
        fibers: parse_label_list(&r.fibers)?,
        kind: r.kind,
        qe_characteristics: r.qe_characteristics.clone(),
        equation: r.equation.clone(),
        a: templates(&r.a)?,
        params: r.params.clone(),
        aut_dagger: r.aut_dagger.parse()?,
        aut: r.aut.parse()?,
        moduli: r.moduli,
        p: r.p.parse()?,
        correction,
    })
}

fn build_nonjacobian(r: &RawNonJacobian, correction: Option<String>) -> Result<NonJacobianCase> {
    Ok(NonJacobianCase {
        id: normalize_prime_id(&r.id),
        fibers: parse_label_list(&r.fibers)?,
        multiple: r.multiple.parse()?,
        kind: r.kind,
        aut_dagger: r.aut_dagger.parse()?,
        aut: r.aut.parse()?,
        moduli: r.moduli,
        p: r.p.parse()?,
        ct_meets_mw: r.ct_meets_mw,
        correction,
    })
}

fn load(text: &str) -> Result<Catalog> {
    let raw: RawData = serde_json::from_str(text).map_err(|e| Error::Input(format!("catalog data: {}", e)))?;

    let table1 = raw
        .table1
        .iter()
        .map(|r| {
            Ok(Table1Row {
                fiber: r.fiber.parse()?,
                columns: r
                    .columns
                    .iter()
                    .map(|c| {
                        Ok(Table1Column {
                            p: c.p.parse()?,
                            companions: c.companions.iter().map(|s| companions(s)).collect::<Result<_>>()?,
                        })
                    })
                    .collect::<Result<_>>()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let printed2 = raw.table2.iter().map(|r| build_case(r, None)).collect::<Result<Vec<_>>>()?;
    let mut corrected2 = Vec::new();
    for r in &raw.table2 {
        let mut r = r.clone();
        let mut note = None;
        for c in raw.table2_corrections.iter().filter(|c| c.id == r.id) {
            if let Some(e) = &c.equation {
                r.equation = e.clone();
            }
            if let Some(a) = &c.a {
                r.a = a.clone();
            }
            if let Some(p) = &c.params {
                r.params = p.clone();
            }
            note = Some(c.note.clone());
        }
        corrected2.push(build_case(&r, note)?);
    }
    for c in &raw.table2_corrections {
        if !raw.table2.iter().any(|r| r.id == c.id) {
            return Err(Error::Input(format!("correction for unknown row {}", c.id)));
        }
    }

    let table3 = raw
        .table3
        .iter()
        .map(|a| {
            let row_exponents = a
                .row_exponents
                .iter()
                .map(|(k, v)| Ok((k.parse().map_err(|_| Error::Input(format!("bad row id {}", k)))?, *v)))
                .collect::<Result<_>>()?;
            Ok(AutSpec {
                rows: a.rows.clone(),
                row_exponents,
                t: Expr::parse(&a.t)?,
                x: Expr::parse(&a.x)?,
                y: Expr::parse(&a.y)?,
                fiber_action: a.fiber_action.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let printed4 = raw.table4.iter().map(|r| build_nonjacobian(r, None)).collect::<Result<Vec<_>>>()?;
    let mut corrected4 = Vec::new();
    for r in &raw.table4 {
        let mut r = r.clone();
        let mut note = None;
        if let Some(c) = raw.table4_corrections.iter().find(|c| c.id == r.id) {
            r.id = c.new_id.clone();
            note = Some(c.note.clone());
        }
        corrected4.push(build_nonjacobian(&r, note)?);
    }

    let torsion_pairs = raw
        .torsion_pairs
        .two_torsion
        .iter()
        .map(|e| {
            Ok(TorsionPairs {
                group: e.group.parse()?,
                kind: e.kind,
                fibers: e.fibers.iter().map(|s| parse_label_list(s)).collect::<Result<_>>()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let torsion_single = raw
        .torsion_pairs
        .single
        .iter()
        .map(|s| Ok((s.fiber.parse()?, s.order)))
        .collect::<Result<Vec<_>>>()?;
    let enriques = raw.enriques.iter().map(EnriquesConfig::from_raw).collect::<Result<Vec<_>>>()?;

    Ok(Catalog {
        table1,
        printed2,
        corrected2,
        table3,
        printed4,
        corrected4,
        torsion_single,
        torsion_pairs,
        enriques,
    })
}

/// The shipped catalog. The data is part of the crate, so a parse failure is
/// a bug and panics.
pub fn catalog() -> &'static Catalog {
    static C: OnceLock<Catalog> = OnceLock::new();
    C.get_or_init(|| load(DATA).expect("shipped catalog data parses"))
}

/// The model of a jacobian row over `F_p` (or `Q` for `p = 0`).
pub fn instantiate_case(id: u32, p: u64, params: &Params, variant: Variant) -> Result<WeierstrassModel> {
    let case = catalog().case(id, variant)?;
    instantiate(case, p, params)
}

pub fn instantiate(case: &CatalogCase, p: u64, params: &Params) -> Result<WeierstrassModel> {
    let field = Field::from_characteristic(p).map_err(|_| Error::Input(format!("{} is neither 0 nor a prime", p)))?;
    if !case.p.allows(p) {
        return Err(Error::Constraint(format!(
            "row {} requires p {} (characteristic column), got p = {}",
            case.id,
            match &case.p {
                CharConstraint::Only(_) => format!("= {}", case.p),
                c => c.to_string().replace("!=", "≠ "),
            },
            p
        )));
    }
    let consts = bind_params(case, &field, params)?;
    let mut a = Vec::with_capacity(5);
    for (k, e) in case.a.iter().enumerate() {
        let poly = e.eval(&field, &consts, &HashMap::new())?;
        a.push(poly.to_t_poly().ok_or_else(|| {
            Error::Input(format!("coefficient a{} of row {} involves x or y", [1, 2, 3, 4, 6][k], case.id))
        })?);
    }
    let a: [Poly; 5] = a.try_into().expect("five coefficients");
    WeierstrassModel::new(&field, a)
}

/// Field values of the parameters, after checking the row's exclusions.
fn bind_params(case: &CatalogCase, field: &Field, params: &Params) -> Result<HashMap<char, crate::exactalg::Elem>> {
    for k in params.keys() {
        if !case.params.iter().any(|s| &s.name == k) {
            return Err(Error::Input(format!("row {} has no parameter {}", case.id, display_param(k))));
        }
    }
    let mut consts = HashMap::new();
    for spec in &case.params {
        let name = display_param(&spec.name);
        let value = params
            .get(&spec.name)
            .ok_or_else(|| Error::Input(format!("row {} needs a value for {}", case.id, name)))?;
        let v = field
            .from_rational(value)
            .map_err(|_| Error::Input(format!("{} = {} has no value in {}", name, value, field)))?;
        for e in &spec.excluded {
            if field.from_i64(*e) == v {
                let list = spec.excluded.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
                return Err(Error::Constraint(format!(
                    "row {} requires {} ≠ {}, got {} = {}",
                    case.id, name, list, name, value
                )));
            }
        }
        let c = spec.name.chars().next().ok_or_else(|| Error::Input("empty parameter name".into()))?;
        consts.insert(c, v);
    }
    Ok(consts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(v: i64) -> Params {
        Params::from([("l".to_string(), BigRational::from_integer(v.into()))])
    }

    #[test]
    fn data_loads_with_expected_sizes() {
        let c = catalog();
        assert_eq!(c.table2(Variant::Printed).len(), 31);
        assert_eq!(c.table2(Variant::Corrected).len(), 31);
        assert_eq!(c.table4(Variant::Printed).len(), 43);
        assert_eq!(c.table1.len(), 8);
        assert_eq!(c.table3.len(), 10);
        assert_eq!(c.enriques.len(), 4);
    }

    #[test]
    fn quasi_elliptic_rows_live_in_characteristic_two_or_three() {
        for case in catalog().table2(Variant::Printed) {
            if case.kind == Kind::QuasiElliptic {
                assert!(case.p.sample(13).iter().all(|p| *p == 2 || *p == 3), "row {}", case.id);
            }
            for p in &case.qe_characteristics {
                assert!(*p == 2 || *p == 3);
            }
        }
    }

    #[test]
    fn every_nonjacobian_row_names_a_parent_number() {
        for case in catalog().table4(Variant::Printed) {
            assert!(case.parent_id().is_some(), "{}", case.id);
        }
    }

    #[test]
    fn instantiate_row_one() {
        let m = instantiate_case(1, 7, &Params::new(), Variant::Printed).unwrap();
        assert_eq!(m.to_string(), "y^2 = x^3 + t over F_7");
    }

    #[test]
    fn instantiate_row_22_with_a_parameter() {
        let m = instantiate_case(22, 5, &lam(3), Variant::Printed).unwrap();
        let f = Field::prime(5).unwrap();
        assert_eq!(m.a2(), &Poly::from_i64(&f, &[-2, 0, 2]));
        assert_eq!(m.a4(), &Poly::from_i64(&f, &[-3]));
    }

    #[test]
    fn constraint_errors_name_the_clause() {
        let e = instantiate_case(1, 2, &Params::new(), Variant::Printed).unwrap_err();
        assert!(matches!(&e, Error::Constraint(s) if s.contains("≠ 2,3")), "{}", e);
        let e = instantiate_case(22, 5, &lam(1), Variant::Printed).unwrap_err();
        assert!(matches!(&e, Error::Constraint(s) if s.contains("λ ≠ 0, 1")), "{}", e);
        // corrected row 22 excludes -1 = 4 in F_5 instead
        assert!(instantiate_case(22, 5, &lam(1), Variant::Corrected).is_ok());
        assert!(instantiate_case(22, 5, &lam(4), Variant::Corrected).is_err());
        assert!(matches!(instantiate_case(22, 5, &Params::new(), Variant::Printed), Err(Error::Input(_))));
        assert!(matches!(instantiate_case(40, 5, &Params::new(), Variant::Printed), Err(Error::Input(_))));
        assert!(matches!(instantiate_case(1, 9, &Params::new(), Variant::Printed), Err(Error::Input(_))));
    }

    #[test]
    fn admissible_parameters_skip_exclusions() {
        let c = catalog().case(22, Variant::Printed).unwrap();
        let vals: Vec<String> = c.admissible_params(5).iter().map(format_params).collect();
        assert_eq!(vals, vec!["λ=2", "λ=3", "λ=4"]);
        let c = catalog().case(1, Variant::Printed).unwrap();
        assert_eq!(c.admissible_params(5), vec![Params::new()]);
    }

    #[test]
    fn param_parsing() {
        assert_eq!(parse_param("λ=3").unwrap(), ("l".to_string(), BigRational::from_integer(3.into())));
        assert_eq!(parse_param("lambda=-1/2").unwrap().1, BigRational::new((-1).into(), 2.into()));
        assert!(parse_param("l3").is_err());
        assert!(parse_param("l=1/0").is_err());
    }

    #[test]
    fn prime_ids_normalise() {
        assert_eq!(normalize_prime_id("12′"), "12'");
        assert_eq!(normalize_prime_id("4″"), "4''");
        let c = catalog().nonjacobian("1‴", Variant::Printed).unwrap();
        assert_eq!(c.parent_id(), Some(1));
        assert!(catalog().nonjacobian("31'", Variant::Printed).is_err());
        assert!(catalog().nonjacobian("31'", Variant::Corrected).is_ok());
    }
}
