//! Command-line front end: argument parsing, the model and report formats,
//! and text rendering.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use genusone::catalog::{
    catalog, enriques_subdiagram_scan, enumerate_extremal, parse_param, verify_all, verify_case,
    verify_nonjacobian, verify_nonjacobian_row, CheckStatus, Params, Variant, VerifyOptions,
};
use genusone::lattice::{mw_from_config, torsion_fiber_scan, RootConfiguration};
use genusone::localfibers::{canonical_multiset, classify_all, format_multiset, parse_label_list, AffineLabel};
use genusone::picaction::{tau, DivisorClass};
use genusone::weierstrass::{compute_invariants, generic_fiber_kind, WeierstrassModel};
use genusone::{Error, Result};

pub mod model_file;
pub mod report;

use model_file::ModelFile;
use report::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableVariant {
    Printed,
    Corrected,
}

impl From<TableVariant> for Variant {
    fn from(v: TableVariant) -> Variant {
        match v {
            TableVariant::Printed => Variant::Printed,
            TableVariant::Corrected => Variant::Corrected,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "genusone", version, about = "Exact invariants of rational genus-one fibrations")]
pub struct Cli {
    /// Seed for the factorisation PRNG.
    #[arg(long, env = "GENUSONE_SEED", default_value_t = 0, global = true)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Use the tables as printed or with corrections applied.
    #[arg(long, value_enum, default_value_t = TableVariant::Corrected, global = true)]
    pub variant: TableVariant,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// b- and c-invariants, discriminant and j of a model.
    Invariants { model: PathBuf },
    /// Singular fibres of a model by Tate's algorithm.
    Classify { model: PathBuf },
    /// Mordell-Weil groups from a fibre list or from a model's fibres.
    Mw {
        model: Option<PathBuf>,
        /// Fibre list such as "A8, A0*, A0*, A0*" or "D4+D4".
        #[arg(long, conflicts_with = "model")]
        fibers: Option<String>,
        /// Maximum number of embeddings enumerated.
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
    /// Re-derive a row of the jacobian table.
    VerifyCase {
        #[arg(long, required_unless_present = "all")]
        id: Option<u32>,
        #[arg(long, required_unless_present = "all")]
        p: Option<u64>,
        /// Parameter binding such as λ=3 or l=3; repeatable.
        #[arg(long = "param")]
        params: Vec<String>,
        /// Every row, admissible prime and parameter value.
        #[arg(long, conflicts_with_all = ["id", "p", "params"])]
        all: bool,
        /// Largest prime in the sweep.
        #[arg(long, default_value_t = 13)]
        max_p: u64,
    },
    /// Consistency checks for a row of the non-jacobian table.
    VerifyNonjacobian {
        #[arg(long, required_unless_present = "all")]
        id: Option<String>,
        #[arg(long, conflicts_with = "id")]
        all: bool,
    },
    /// Extremal configurations in a characteristic.
    EnumerateExtremal {
        #[arg(long, default_value_t = 0)]
        p: u64,
    },
    /// Image of a class under the translation by a section.
    Act {
        #[arg(long)]
        m: i64,
        /// Section class, 10 integers.
        #[arg(long = "A", value_delimiter = ',', allow_negative_numbers = true, num_args = 1..)]
        a: Vec<i64>,
        /// Class to move, 10 integers.
        #[arg(long = "D", value_delimiter = ',', allow_negative_numbers = true, num_args = 1..)]
        d: Vec<i64>,
    },
    /// Fibre types met by a torsion section disjoint from the zero section.
    TorsionScan {
        #[arg(long)]
        fibers: u32,
    },
    /// Affine Dynkin subdiagrams of an Enriques configuration.
    Enriques {
        #[arg(long)]
        config: String,
    },
}

/// Exit code for a library error: 1 for a non-rational model, 2 when the
/// computation is out of reach, 3 for bad input.
pub fn error_exit_code(e: &Error) -> u8 {
    match e {
        Error::NotRationalElliptic { .. } => 1,
        Error::Unsupported(_) => 2,
        _ => 3,
    }
}

fn read_model(path: &PathBuf) -> Result<WeierstrassModel> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Error::Input(format!("stdin: {}", e)))?
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {}", path.display(), e)))?
    };
    ModelFile::parse(&text)?.to_model()
}

fn from_check(s: CheckStatus) -> Status {
    match s {
        CheckStatus::Pass | CheckStatus::Skipped => Status::Pass,
        CheckStatus::Inconclusive => Status::Inconclusive,
        CheckStatus::Fail => Status::Fail,
    }
}

fn mw_record(labels: &[AffineLabel], budget: u64) -> Result<MwRecord> {
    let cfg = RootConfiguration::from_labels(labels);
    let r = mw_from_config(&cfg, budget)?;
    Ok(MwRecord {
        configuration: format_multiset(&canonical_multiset(labels)),
        root_lattice: cfg.to_string(),
        discriminant_group: r.disc.clone(),
        groups: r
            .quotients
            .iter()
            .map(|q| MwGroup { rank: q.rank, torsion: q.torsion.clone(), group: q.to_string() })
            .collect(),
        exhaustive: r.exhaustive,
        order_identity: r.order_identity,
        mw_in_disc: r.mw_in_disc,
        mw_squared_in_disc: r.mw_squared_in_disc,
    })
}

fn classify_record(model: &WeierstrassModel, seed: u64) -> Result<(ClassifyRecord, Vec<String>)> {
    let r = classify_all(model, seed)?;
    let mut notes = Vec::new();
    let fibers = r
        .fibers
        .iter()
        .map(|f| {
            if f.reductions > 0 {
                notes.push(format!("model made minimal at {} ({} reduction step(s))", f.place, f.reductions));
            }
            FiberRecord {
                place: f.place.to_string(),
                degree: f.degree(),
                kodaira: f.kodaira.to_string(),
                label: f.label().to_string(),
                v_disc: f.v_disc,
                components: f.components,
                euler: f.euler,
                wild: f.wild,
                component_group: f.disc.clone(),
                split: f.split,
                reductions: f.reductions,
            }
        })
        .collect();
    let rec = ClassifyRecord {
        model: model.to_string(),
        fibers,
        unclassified: r
            .unclassified
            .iter()
            .map(|u| UnclassifiedRecord { place: u.place.to_string(), v_disc: u.v_disc, reason: u.reason.clone() })
            .collect(),
        configuration: format_multiset(&canonical_multiset(&r.labels())),
        euler_sum: r.euler_sum,
        rank_sum: r.rank_sum,
        extremal: r.extremal,
    };
    Ok((rec, notes))
}

fn parse_params(raw: &[String]) -> Result<Params> {
    let mut out = Params::new();
    for s in raw {
        let (k, v) = parse_param(s)?;
        out.insert(k, v);
    }
    Ok(out)
}

/// Runs one command and returns its report.
pub fn execute(cli: &Cli) -> Result<Report> {
    let variant: Variant = cli.variant.into();
    let mut notes = Vec::new();
    let (status, body) = match &cli.command {
        Command::Invariants { model } => {
            let m = read_model(model)?;
            let inv = compute_invariants(&m);
            let rec = InvariantsRecord {
                model: m.to_string(),
                b2: inv.b2.to_string(),
                b4: inv.b4.to_string(),
                b6: inv.b6.to_string(),
                b8: inv.b8.to_string(),
                c4: inv.c4.to_string(),
                c6: inv.c6.to_string(),
                discriminant: inv.disc.to_string(),
                j: inv.j.as_ref().map(|(n, d)| format!("({}) / ({})", n, d)),
                generic_fiber: generic_fiber_kind(&m),
            };
            (Status::Pass, Body::Invariants(rec))
        }
        Command::Classify { model } => {
            let m = read_model(model)?;
            let (rec, n) = classify_record(&m, cli.seed)?;
            notes = n;
            let status = if rec.unclassified.is_empty() { Status::Pass } else { Status::Inconclusive };
            (status, Body::Classify(rec))
        }
        Command::Mw { model, fibers, budget } => {
            let labels = match (model, fibers) {
                (_, Some(f)) => parse_label_list(&f.replace('+', ","))?,
                (Some(path), None) => {
                    let m = read_model(path)?;
                    let r = classify_all(&m, cli.seed)?;
                    if !r.is_conclusive() {
                        return Err(Error::Unsupported("some fibres are unclassified".into()));
                    }
                    r.labels()
                }
                (None, None) => return Err(Error::Input("give a model file or --fibers".into())),
            };
            let rec = mw_record(&labels, *budget)?;
            let ok = rec.order_identity.unwrap_or(true) && rec.mw_in_disc.unwrap_or(true);
            (if ok { Status::Pass } else { Status::Fail }, Body::Mw(rec))
        }
        Command::VerifyCase { id, p, params, all, max_p } => {
            let opts = VerifyOptions { seed: cli.seed, ..VerifyOptions::default() };
            let verdicts = if *all {
                verify_all(variant, *max_p, &opts)
            } else {
                let (id, p) = (id.expect("clap requires --id"), p.expect("clap requires --p"));
                vec![verify_case(id, p, &parse_params(params)?, variant, &opts)?]
            };
            let status = verdicts.iter().map(|v| from_check(v.status)).max().unwrap_or(Status::Pass);
            (status, Body::VerifyCase(verdicts))
        }
        Command::VerifyNonjacobian { id, all } => {
            let verdicts = if *all {
                catalog().table4(variant).iter().map(|c| verify_nonjacobian_row(c, variant)).collect()
            } else {
                vec![verify_nonjacobian(id.as_deref().expect("clap requires --id"), variant)?]
            };
            let status = verdicts.iter().map(|v| from_check(v.status)).max().unwrap_or(Status::Pass);
            (status, Body::VerifyNonjacobian(verdicts))
        }
        Command::EnumerateExtremal { p } => {
            if *p != 0 && !genusone::exactalg::is_prime(*p) {
                return Err(Error::Input(format!("p = {} is neither 0 nor a prime", p)));
            }
            let e = enumerate_extremal(*p);
            let status = if e.table_rows_not_found.is_empty() { Status::Pass } else { Status::Fail };
            (status, Body::EnumerateExtremal(e))
        }
        Command::Act { m, a, d } => {
            let (ac, dc) = (DivisorClass::from_slice(a)?, DivisorClass::from_slice(d)?);
            let image = tau(&ac, *m, &dc)?;
            let rec = ActionRecord { m: *m, section: a.clone(), class: d.clone(), image: image.0.to_vec() };
            (Status::Pass, Body::Act(rec))
        }
        Command::TorsionScan { fibers } => {
            let found: Vec<TorsionEntry> = torsion_fiber_scan(*fibers)?
                .into_iter()
                .map(|c| TorsionEntry { fibers: format_multiset(&c.fibers), order: c.order })
                .collect();
            let mut expected: Vec<TorsionEntry> = if *fibers == 1 {
                catalog()
                    .torsion_single
                    .iter()
                    .map(|(l, o)| TorsionEntry { fibers: l.to_string(), order: *o })
                    .collect()
            } else {
                catalog()
                    .torsion_pairs
                    .iter()
                    .flat_map(|t| t.fibers.iter())
                    .map(|f| TorsionEntry { fibers: format_multiset(&canonical_multiset(f)), order: 2 })
                    .collect()
            };
            expected.sort_by(|a, b| a.fibers.cmp(&b.fibers));
            expected.dedup();
            let mut sorted = found.clone();
            sorted.sort_by(|a, b| a.fibers.cmp(&b.fibers));
            let status = if sorted == expected { Status::Pass } else { Status::Fail };
            (status, Body::TorsionScan(TorsionRecord { special_fibers: *fibers, found, expected }))
        }
        Command::Enriques { config } => {
            let cfg = catalog().enriques_config(config)?;
            for v in &cfg.duplicate_vertices {
                notes.push(format!("curve at {:?} is listed twice in the drawing; counted once", v));
            }
            let scan = enriques_subdiagram_scan(cfg);
            for f in scan.unnamed_large() {
                notes.push(format!("fibration {} is not among the named ones", f.types));
            }
            let status = if scan.all_named_found() { Status::Pass } else { Status::Fail };
            (status, Body::Enriques(scan))
        }
    };
    Ok(Report { version: REPORT_VERSION, seed: cli.seed, status, body, notes })
}

fn yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    }
}

/// Human-readable rendering.
pub fn render_text(r: &Report) -> String {
    let mut s = String::new();
    match &r.body {
        Body::Invariants(i) => {
            let _ = writeln!(s, "model: {}", i.model);
            for (k, v) in [("b2", &i.b2), ("b4", &i.b4), ("b6", &i.b6), ("b8", &i.b8), ("c4", &i.c4), ("c6", &i.c6)] {
                let _ = writeln!(s, "{}: {}", k, v);
            }
            let _ = writeln!(s, "discriminant: {}", i.discriminant);
            let _ = writeln!(s, "j: {}", i.j.as_deref().unwrap_or("undefined"));
            let _ = writeln!(s, "generic fibre: {:?}", i.generic_fiber);
        }
        Body::Classify(c) => {
            let _ = writeln!(s, "model: {}", c.model);
            for f in &c.fibers {
                let _ = writeln!(
                    s,
                    "  {:<16} deg {}  {:<6} {:<6} v(Δ)={} e={} δ={}",
                    f.place, f.degree, f.kodaira, f.label, f.v_disc, f.euler, f.wild
                );
            }
            for u in &c.unclassified {
                let _ = writeln!(s, "  {:<16} unclassified: {}", u.place, u.reason);
            }
            let _ = writeln!(s, "fibres: {}", c.configuration);
            let _ = writeln!(s, "Σ(e+δ)deg = {}, Σ(b-1)deg = {}, extremal: {}", c.euler_sum, c.rank_sum, yes_no(c.extremal));
        }
        Body::Mw(m) => {
            let _ = writeln!(s, "fibres: {}  (root lattice {})", m.configuration, m.root_lattice);
            let _ = writeln!(s, "Disc: {:?}", m.discriminant_group);
            for g in &m.groups {
                let _ = writeln!(s, "MW = {}", g.group);
            }
            let _ = writeln!(
                s,
                "exhaustive: {}, |MW|^2 = |Disc|: {}, MW ⊆ Disc: {}, MW + MW ⊆ Disc: {}",
                m.exhaustive,
                yes_no(m.order_identity),
                yes_no(m.mw_in_disc),
                yes_no(m.mw_squared_in_disc)
            );
        }
        Body::VerifyCase(vs) => {
            for v in vs {
                let params = if v.params.is_empty() { String::new() } else { format!(" {}", v.params) };
                let _ = writeln!(s, "row {} p={}{} [{}]: {:?}", v.id, v.p, params, v.variant, v.status);
                let _ = writeln!(s, "  {}", v.model);
                for c in &v.checks {
                    let opt = if c.required { "" } else { " (not required)" };
                    let _ = writeln!(s, "  {:?} {}{}: {}", c.status, c.name, opt, c.detail);
                }
            }
        }
        Body::VerifyNonjacobian(vs) => {
            for v in vs {
                let _ = writeln!(s, "row {} ({}, multiple {}): {:?}", v.id, v.fibers, v.multiple, v.status);
                for c in &v.checks {
                    let _ = writeln!(s, "  {:?} {}: {}", c.status, c.name, c.detail);
                }
            }
        }
        Body::EnumerateExtremal(e) => {
            let _ = writeln!(s, "p = {}: {} configurations", e.p, e.configs.len());
            for c in &e.configs {
                let extra = if c.delta > 0 { format!("  δ={}", c.delta) } else { String::new() };
                let _ = writeln!(s, "  {:<14} {}{}", format!("{:?}", c.kind), c.text(), extra);
            }
            if !e.excluded_by_table.is_empty() {
                let _ = writeln!(s, "ruled out by the large-fibre table: {}", e.excluded_by_table.len());
                for c in &e.excluded_by_table {
                    let _ = writeln!(s, "  {:<14} {}", format!("{:?}", c.kind), c.text());
                }
            }
            for t in &e.table_rows_not_found {
                let _ = writeln!(s, "table entry not produced: {}", t);
            }
        }
        Body::Act(a) => {
            let img: Vec<String> = a.image.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "{}", img.join(","));
        }
        Body::TorsionScan(t) => {
            for e in &t.found {
                let _ = writeln!(s, "{} order {}", e.fibers, e.order);
            }
        }
        Body::Enriques(e) => {
            let _ = writeln!(s, "configuration {}: {} curves", e.config, e.curves);
            for (k, d) in e.subdiagrams.iter().enumerate() {
                let _ = writeln!(s, "  [{}] {} {:?}", k, d.label, d.vertices);
            }
            for f in &e.fibrations {
                let _ = writeln!(s, "fibration {} from {:?}{}", f.types, f.fibers, if f.named { " (named)" } else { "" });
            }
            for (n, ok) in &e.named {
                let _ = writeln!(s, "named {}: {}", n, if *ok { "found" } else { "missing" });
            }
        }
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {}", n);
    }
    let _ = writeln!(s, "status: {:?}", r.status);
    s
}

/// Report in the requested format.
pub fn render(r: &Report, format: Format) -> String {
    match format {
        Format::Json => r.to_json(),
        Format::Text => render_text(r),
    }
}
