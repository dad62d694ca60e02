//! Re-deriving a jacobian row: fibres, Euler bookkeeping, Mordell-Weil data
//! and the explicit automorphisms.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::expr::MPoly;
use super::groups::{quotient_order, GroupDesc};
use super::{catalog, format_params, instantiate, AutSpec, CatalogCase, Params, Variant};
use crate::exactalg::{Elem, Field, Poly};
use crate::lattice::{find_subsystem, mw_from_config, RootConfiguration};
use crate::localfibers::{canonical_multiset, classify_all, format_multiset, AffineLabel};
use crate::weierstrass::{generic_fiber_kind, GenericFiberKind, WeierstrassModel};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Skipped,
    Inconclusive,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    /// Non-required checks are reported but do not affect the verdict.
    pub required: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, status: CheckStatus, detail: impl Into<String>) -> Check {
        Check { name: name.to_string(), status, required: true, detail: detail.into() }
    }

    fn from_bool(name: &str, ok: bool, detail: impl Into<String>) -> Check {
        Check::new(name, if ok { CheckStatus::Pass } else { CheckStatus::Fail }, detail)
    }

    fn optional(mut self) -> Check {
        self.required = false;
        self
    }
}

/// Worst status among the required checks; skipped checks count as passes.
pub fn overall(checks: &[Check]) -> CheckStatus {
    checks
        .iter()
        .filter(|c| c.required)
        .map(|c| if c.status == CheckStatus::Skipped { CheckStatus::Pass } else { c.status })
        .max()
        .unwrap_or(CheckStatus::Pass)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub id: u32,
    pub p: u64,
    pub params: String,
    pub variant: Variant,
    pub model: String,
    pub expected_fibers: String,
    pub computed_fibers: Option<String>,
    pub mordell_weil: Option<String>,
    pub checks: Vec<Check>,
    pub status: CheckStatus,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Embedding budget handed to [`mw_from_config`].
    pub mw_budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions { seed: 0, mw_budget: 100_000 }
    }
}

pub fn verify_case(id: u32, p: u64, params: &Params, variant: Variant, opts: &VerifyOptions) -> Result<Verdict> {
    let case = catalog().case(id, variant)?;
    let model = instantiate(case, p, params)?;
    let mut checks = Vec::new();
    let mut computed_fibers = None;
    let mut mordell_weil = None;

    let qe = case.quasi_elliptic_in(p);
    let kind = generic_fiber_kind(&model);
    let want = if qe { GenericFiberKind::QuasiElliptic } else { GenericFiberKind::Elliptic };
    checks.push(Check::from_bool("generic fibre", kind == want, format!("{:?}, expected {:?}", kind, want)));

    if qe {
        // constraint-only mode: quasi-elliptic surfaces have no discriminant
        let rank = case.rank_sum();
        checks.push(Check::from_bool("rank sum", rank == 8, format!("Σ(b-1) = {} for the claimed fibres", rank)));
        let cfg = RootConfiguration::from_labels(&case.fibers);
        checks.push(Check::from_bool(
            "embeds in E8",
            find_subsystem(&cfg).is_some(),
            format!("root lattice {}", cfg),
        ));
    } else if kind == GenericFiberKind::Elliptic {
        match classify_all(&model, opts.seed) {
            Err(Error::NotRationalElliptic { sum }) => {
                checks.push(Check::new("fibres", CheckStatus::Fail, "not a rational elliptic surface"));
                checks.push(Check::new("euler sum", CheckStatus::Fail, format!("Σ(e+δ)deg = {}", sum)));
            }
            Err(Error::Unsupported(s)) => checks.push(Check::new("fibres", CheckStatus::Inconclusive, s)),
            Err(e) => return Err(e),
            Ok(report) if !report.is_conclusive() => {
                let places: Vec<String> = report.unclassified.iter().map(|u| u.place.to_string()).collect();
                checks.push(Check::new(
                    "fibres",
                    CheckStatus::Inconclusive,
                    format!("inconclusive at place {}", places.join(", ")),
                ));
            }
            Ok(report) => {
                let got = canonical_multiset(&report.labels());
                let expected = canonical_multiset(&case.fibers);
                computed_fibers = Some(format_multiset(&got));
                checks.push(Check::from_bool(
                    "fibres",
                    got == expected,
                    format!("{} (expected {})", format_multiset(&got), format_multiset(&expected)),
                ));
                let wild = report.max_wild();
                let euler_ok = report.euler_sum == 12 && (p == 2 || p == 3 || wild == 0);
                checks.push(Check::from_bool(
                    "euler sum",
                    euler_ok,
                    format!("Σ(e+δ)deg = {}, max δ = {}", report.euler_sum, wild),
                ));
                checks.push(Check::from_bool(
                    "extremal",
                    report.extremal == Some(case.is_extremal()),
                    format!("Σ(b-1)deg = {}", report.rank_sum),
                ));
            }
        }
        if case.is_extremal() {
            let (mw_checks, mw) = mordell_weil_checks(&case.fibers, opts.mw_budget);
            checks.extend(mw_checks);
            mordell_weil = mw;
        }
    }

    for spec in catalog().automorphisms(case.id) {
        checks.push(substitution_check(case, spec, &model, params));
    }

    let ok = case.aut.contains(&case.aut_dagger, p);
    checks.push(Check::from_bool("Aut† ⊆ Aut", ok, format!("{} ⊆ {}", case.aut_dagger, case.aut)));

    let status = overall(&checks);
    Ok(Verdict {
        id: case.id,
        p,
        params: format_params(params),
        variant,
        model: model.to_string(),
        expected_fibers: case.fibers_text(),
        computed_fibers,
        mordell_weil,
        checks,
        status,
    })
}

/// Every row, every admissible prime up to `max_p` and every admissible
/// parameter value, ordered by (id, p, parameters).
pub fn verify_all(variant: Variant, max_p: u64, opts: &VerifyOptions) -> Vec<Verdict> {
    let jobs: Vec<(u32, u64, Params)> = catalog()
        .table2(variant)
        .iter()
        .flat_map(|case| {
            case.p
                .sample(max_p)
                .into_iter()
                .filter(|&p| p > 0)
                .flat_map(move |p| case.admissible_params(p).into_iter().map(move |b| (case.id, p, b)))
        })
        .collect();
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(8);
    let mut out: Vec<(usize, Verdict)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let jobs = &jobs;
                s.spawn(move || {
                    jobs.iter()
                        .enumerate()
                        .skip(w)
                        .step_by(workers)
                        .map(|(k, (id, p, b))| {
                            let v = verify_case(*id, *p, b, variant, opts).expect("admissible by construction");
                            (k, v)
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("verification worker")).collect()
    });
    out.sort_by_key(|(k, _)| *k);
    out.into_iter().map(|(_, v)| v).collect()
}

fn mordell_weil_checks(fibers: &[AffineLabel], budget: u64) -> (Vec<Check>, Option<String>) {
    let r = match mw_from_config(&RootConfiguration::from_labels(fibers), budget) {
        Ok(r) => r,
        Err(e) => return (vec![Check::new("mordell-weil", CheckStatus::Fail, e.to_string())], None),
    };
    let groups: Vec<String> = r.quotients.iter().map(|q| q.to_string()).collect();
    let disc = if r.disc.is_empty() {
        "0".to_string()
    } else {
        r.disc.iter().map(|d| format!("Z/{}", d)).collect::<Vec<_>>().join(" + ")
    };
    let status = |b: Option<bool>| match b {
        Some(true) => CheckStatus::Pass,
        Some(false) => CheckStatus::Fail,
        None => CheckStatus::Inconclusive,
    };
    let detail = format!("MW = {}, Disc = {}", groups.join(" | "), disc);
    let checks = vec![
        Check::new("|MW|^2 = |Disc|", status(r.order_identity), detail.clone()),
        Check::new("MW ⊆ Disc", status(r.mw_in_disc), detail.clone()),
        // the direct-sum reading does not hold for cyclic discriminant groups
        // such as Z/9 of A8; reported only
        Check::new("MW + MW ⊆ Disc", status(r.mw_squared_in_disc), detail).optional(),
    ];
    (checks, Some(groups.join(" | ")))
}

/// Result of substituting one explicit automorphism into a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionOutcome {
    pub field: String,
    pub bindings: String,
    pub preserved: bool,
    /// `F(T, X, Y) = c F(t, x, y)`.
    pub unit: Option<String>,
    /// Order of `t ↦ T(t)`; `None` when infinite.
    pub base_order: Option<u64>,
    pub is_translation: bool,
}

fn equation(m: &WeierstrassModel) -> MPoly {
    let f = m.field();
    let t = |p: &Poly| MPoly::from_t_poly(p);
    let (x, y) = (MPoly::var(f, 1), MPoly::var(f, 2));
    let xy = x.mul(&y);
    let lhs = y.pow(2).add(&t(m.a1()).mul(&xy)).add(&t(m.a3()).mul(&y));
    let rhs = x.pow(3).add(&t(m.a2()).mul(&x.pow(2))).add(&t(m.a4()).mul(&x)).add(&t(m.a6()));
    lhs.sub(&rhs)
}

fn mult_order(f: &Field, a: &Elem) -> Option<u64> {
    let limit = f.cardinality().unwrap_or(7);
    let mut x = a.clone();
    for k in 1..=limit {
        if f.is_one(&x) {
            return Some(k);
        }
        x = f.mul(&x, a);
    }
    None
}

/// Substitutes `(T, X, Y)` into the model's equation over `field`, with the
/// given constant bindings.
pub fn check_substitution(
    model: &WeierstrassModel,
    spec: &AutSpec,
    field: &Field,
    consts: &HashMap<char, Elem>,
    exps: &HashMap<char, u32>,
) -> Result<SubstitutionOutcome> {
    let model = model.change_field(field)?;
    let eq = equation(&model);
    let images = [spec.t.eval(field, consts, exps)?, spec.x.eval(field, consts, exps)?, spec.y.eval(field, consts, exps)?];
    let base = images[0]
        .to_t_poly()
        .filter(|p| p.degree() == Some(1))
        .ok_or_else(|| Error::Input(format!("base map {} is not affine in t", spec.t.source)))?;
    let (beta, alpha) = (base.coeff(0), base.coeff(1));
    let image = eq.substitute(&images);
    let c = image.coeff([0, 0, 2]);
    let preserved = !field.is_zero(&c) && image.sub(&eq.scale(&c)).is_zero();
    let is_translation = field.is_one(&alpha);
    let base_order = if is_translation {
        if field.is_zero(&beta) {
            Some(1)
        } else if field.characteristic() > 0 {
            Some(field.characteristic())
        } else {
            None
        }
    } else {
        mult_order(field, &alpha)
    };
    let mut names: Vec<_> = consts.iter().collect();
    names.sort_by_key(|(k, _)| **k);
    let bindings = names.iter().map(|(k, v)| format!("{}={}", k, field.format_elem(v))).collect::<Vec<_>>().join(",");
    Ok(SubstitutionOutcome {
        field: field.to_string(),
        bindings,
        preserved,
        unit: preserved.then(|| field.format_elem(&c)),
        base_order,
        is_translation,
    })
}

fn field_of_degree(p: u64, d: usize) -> Result<Field> {
    if d == 1 {
        Field::prime(p)
    } else {
        Field::gf(p, d)
    }
}

/// Constants for one instance of a substitution: `z` a primitive cube root of
/// unity, `i` a square root of -1, `a` of maximal order, `b` the first
/// element giving a nontrivial translation. `None` when the field lacks one.
fn choose_constants(field: &Field, needed: &[char], scaling: bool, translating: bool) -> Result<Option<HashMap<char, Elem>>> {
    let elems = field.elements()?;
    let mut c = HashMap::new();
    for &s in needed {
        let v = match s {
            'z' => elems.iter().find(|e| !field.is_one(e) && field.is_one(&field.pow(e, 3))).cloned(),
            'i' => elems.iter().find(|e| field.is_one(&field.neg(&field.mul(e, e)))).cloned(),
            'a' if scaling => elems
                .iter()
                .filter(|e| !field.is_zero(e))
                .max_by_key(|e| mult_order(field, e).unwrap_or(0))
                .cloned(),
            'a' => Some(field.one()),
            'b' if translating => None, // filled in below
            'b' => Some(field.zero()),
            _ => continue,
        };
        match v {
            Some(v) => {
                c.insert(s, v);
            }
            None if s == 'b' => {}
            None => return Ok(None),
        }
    }
    Ok(Some(c))
}

fn substitution_check(case: &CatalogCase, spec: &AutSpec, model: &WeierstrassModel, params: &Params) -> Check {
    let name = format!("automorphism ({}, {}, {})", spec.t.source, spec.x.source, spec.y.source);
    match run_substitution(case, spec, model, params) {
        Ok(check) => Check { name, ..check },
        Err(e) => Check::new(&name, CheckStatus::Fail, e.to_string()),
    }
}

fn run_substitution(case: &CatalogCase, spec: &AutSpec, model: &WeierstrassModel, params: &Params) -> Result<Check> {
    let p = model.characteristic();
    let mut needed: Vec<char> = [&spec.t, &spec.x, &spec.y].iter().flat_map(|e| e.constants()).collect();
    needed.sort();
    needed.dedup();
    let mut exps = HashMap::from([('p', p as u32)]);
    if let Some(i) = spec.row_exponents.get(&case.id) {
        exps.insert('i', *i);
    }
    let row_consts: HashMap<char, Elem> = params
        .iter()
        .filter_map(|(k, v)| Some((k.chars().next()?, model.field().from_rational(v).ok()?)))
        .collect();

    // one instance per one-parameter subgroup named in the substitution
    let mut instances = Vec::new();
    let (has_a, has_b) = (needed.contains(&'a'), needed.contains(&'b'));
    if has_a {
        instances.push((true, false));
    }
    if has_b {
        instances.push((false, true));
    }
    if instances.is_empty() {
        instances.push((false, false));
    }
    let extra: Vec<char> = needed.iter().copied().filter(|c| !row_consts.contains_key(c)).collect();

    let mut details = Vec::new();
    let mut all_ok = true;
    for (scaling, translating) in instances {
        let outcome = if p == 0 {
            if extra.iter().any(|c| *c != 'a') {
                return Ok(Check::new("", CheckStatus::Skipped, "constants not available over Q"));
            }
            let f = model.field().clone();
            let mut consts = row_consts.clone();
            if has_a {
                consts.insert('a', f.from_i64(2));
            }
            check_substitution(model, spec, &f, &consts, &exps)?
        } else {
            let mut found = None;
            for d in 1..=3 {
                let f = field_of_degree(p, d)?;
                let Some(mut consts) = choose_constants(&f, &extra, scaling, translating)? else { continue };
                for (k, v) in &row_consts {
                    consts.insert(*k, f.embed(v)?);
                }
                if translating {
                    // first b giving a nontrivial base translation
                    let mut chosen = None;
                    for b in f.elements()? {
                        consts.insert('b', b.clone());
                        let o = check_substitution(model, spec, &f, &consts, &exps)?;
                        if o.base_order != Some(1) {
                            chosen = Some(o);
                            break;
                        }
                    }
                    if let Some(o) = chosen {
                        found = Some(o);
                        break;
                    }
                    continue;
                }
                let o = check_substitution(model, spec, &f, &consts, &exps)?;
                if o.base_order != Some(1) || !scaling {
                    found = Some(o);
                    break;
                }
            }
            match found {
                Some(o) => o,
                None => return Ok(Check::new("", CheckStatus::Skipped, "no small field gives a nontrivial instance")),
            }
        };
        let (order_ok, why) = expected_order(case, &outcome, spec, p);
        all_ok &= outcome.preserved && order_ok;
        details.push(format!(
            "over {} with {}: {}, unit {}, base order {}, {}",
            outcome.field,
            if outcome.bindings.is_empty() { "no constants" } else { &outcome.bindings },
            if outcome.preserved { "equation preserved" } else { "equation NOT preserved" },
            outcome.unit.as_deref().unwrap_or("-"),
            outcome.base_order.map(|o| o.to_string()).unwrap_or_else(|| "infinite".into()),
            why
        ));
    }
    Ok(Check::from_bool("", all_ok, details.join("; ")))
}

/// Compares the induced base order with the row's groups.
fn expected_order(case: &CatalogCase, o: &SubstitutionOutcome, spec: &AutSpec, p: u64) -> (bool, String) {
    let (aut, dagger) = (&case.aut, &case.aut_dagger);
    if let Some(q) = quotient_order(aut, dagger) {
        return (o.base_order == Some(q), format!("expected |Aut/Aut†| = {}", q));
    }
    if o.is_translation {
        let ok = aut.has_factor(&GroupDesc::Additive) && o.base_order == Some(p) && p > 0;
        return (ok, format!("expected a G_a translation of order {}", p));
    }
    if !aut.has_factor(&GroupDesc::Multiplicative) {
        return (false, format!("{} has no G_m factor", aut));
    }
    // t ↦ a^n t: the kernel on the base is μ_n, which should be Aut†
    let n = spec.row_exponents.get(&case.id).copied().map(u64::from).or_else(|| {
        spec.t.terms.first()?.factors.iter().find(|f| f.0 == 'a').and_then(|f| match f.1 {
            super::expr::Exponent::Int(k) => Some(k as u64),
            _ => None,
        })
    });
    match (n, dagger.order(), o.base_order) {
        (Some(n), Some(k), base) => {
            // only the étale parts are visible on points
            let etale = |mut m: u64| {
                while p > 1 && m % p == 0 {
                    m /= p;
                }
                m
            };
            let ok = etale(n) == etale(k) && base.is_some() == (p > 0);
            (ok, format!("expected kernel μ_{} to match Aut† of order {}", n, k))
        }
        _ => (false, "cannot read the scaling exponent".into()),
    }
}
