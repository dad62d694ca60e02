//! Acceptance suite: one PASS/FAIL line per criterion. Each criterion has a
//! documented expected status; the run fails only when a status differs from
//! it.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::process::Command;
use std::time::{Duration, Instant};

use genusone::catalog::{
    catalog, check_substitution, enriques_subdiagram_scan, instantiate, verify_all, CheckStatus, Variant, Verdict,
    VerifyOptions,
};
use genusone::exactalg::{is_prime, Field};
use genusone::lattice::{e8_gram, e8_roots, group_embeds, group_order, mw_from_config, torsion_fiber_scan, RootConfiguration, RootType};
use genusone::localfibers::{canonical_multiset, classify_all, format_multiset, parse_label_list};
use genusone::picaction::{
    acts_trivially_on_e8_quotient, canonical_class, congruent_mod, e8_root_to_pic, f0, k_perp_roots, reflection_pair_power,
    tau, tau_matrix, DivisorClass,
};
use genusone::weierstrass::{discriminant, WeierstrassModel};
use genusone::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ELLIPTIC_ROWS: [u32; 26] = [1, 2, 3, 4, 6, 7, 9, 10, 12, 14, 15, 16, 17, 18, 19, 20, 21, 22, 24, 25, 26, 27, 28, 29, 30, 31];
const MAX_P: u64 = 13;
const BUDGET: Duration = Duration::from_secs(60);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    Pass,
    Fail,
}

struct Criterion {
    number: u32,
    name: &'static str,
    /// Status this build is documented to reach.
    expected: Outcome,
    run: fn(&mut Context) -> (bool, String),
}

#[derive(Default)]
struct Context {
    corrected: Option<(Vec<Verdict>, Duration)>,
}

impl Context {
    fn corrected(&mut self) -> &(Vec<Verdict>, Duration) {
        self.corrected.get_or_insert_with(|| {
            let start = Instant::now();
            let v = verify_all(Variant::Corrected, MAX_P, &VerifyOptions::default());
            (v, start.elapsed())
        })
    }
}

fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

fn check<'a>(v: &'a Verdict, name: &str) -> Option<&'a genusone::catalog::Check> {
    v.checks.iter().find(|c| c.name == name)
}

// 1. Every elliptic verdict of the jacobian table reproduces its fibre list.
fn table_two(cx: &mut Context) -> (bool, String) {
    let (verdicts, elapsed) = cx.corrected().clone();
    let rows: BTreeSet<u32> = ELLIPTIC_ROWS.into_iter().collect();
    let mut mismatches = Vec::new();
    let mut compared = 0;
    let mut missing = Vec::new();
    for &id in &rows {
        let case = catalog().case(id, Variant::Corrected).unwrap();
        for p in primes_upto(MAX_P).into_iter().filter(|&p| case.p.allows(p)) {
            let expected = case.admissible_params(p).len();
            let got = verdicts.iter().filter(|v| v.id == id && v.p == p).count();
            if got != expected {
                missing.push(format!("row {} p={}: {} of {} parameter values", id, p, got, expected));
            }
        }
    }
    for v in verdicts.iter().filter(|v| rows.contains(&v.id)) {
        let Some(c) = check(v, "fibres") else { continue };
        compared += 1;
        if c.status != CheckStatus::Pass || v.computed_fibers.as_deref() != Some(v.expected_fibers.as_str()) {
            mismatches.push(format!("{} p={} {}", v.id, v.p, v.params));
        }
    }
    let covered: BTreeSet<u32> = verdicts.iter().filter(|v| check(v, "fibres").is_some()).map(|v| v.id).collect();
    let uncovered: Vec<u32> = rows.difference(&covered).copied().collect();

    let printed = verify_all(Variant::Printed, MAX_P, &VerifyOptions::default());
    let printed_bad: BTreeSet<u32> = printed.iter().filter(|v| v.status == CheckStatus::Fail).map(|v| v.id).collect();

    let ok = mismatches.is_empty() && missing.is_empty() && uncovered.is_empty() && compared > 0 && elapsed < BUDGET;
    (
        ok,
        format!(
            "{} elliptic instances compared, {} mismatches{}{}, {:.1} s; printed tables fail rows {:?}",
            compared,
            mismatches.len(),
            if missing.is_empty() { String::new() } else { format!(", gaps {:?}", missing) },
            if uncovered.is_empty() { String::new() } else { format!(", rows never compared {:?}", uncovered) },
            elapsed.as_secs_f64(),
            printed_bad
        ),
    )
}

/// Σ (e + δ)·deg over the classified fibres, and whether δ vanishes away
/// from 2 and 3.
fn euler_identity(m: &WeierstrassModel, seed: u64) -> Result<(u64, bool), Error> {
    let r = classify_all(m, seed)?;
    if !r.is_conclusive() {
        return Err(Error::Unsupported("unclassified place".into()));
    }
    let sum = r.fibers.iter().map(|f| u64::from(f.euler + f.wild) * f.degree() as u64).sum();
    let tame = m.characteristic() == 2 || m.characteristic() == 3 || r.fibers.iter().all(|f| f.wild == 0);
    Ok((sum, tame))
}

// 2. Σ(e_t + δ_t)·deg = 12 on every classified model, δ_t = 0 for p ≠ 2, 3.
fn euler_sum(_: &mut Context) -> (bool, String) {
    let mut bad = Vec::new();
    let mut catalog_models = 0;
    for case in catalog().table2(Variant::Corrected) {
        for p in primes_upto(MAX_P).into_iter().filter(|&p| case.p.allows(p)) {
            for params in case.admissible_params(p) {
                let m = instantiate(case, p, &params).unwrap();
                if discriminant(&m).is_zero() {
                    continue;
                }
                catalog_models += 1;
                match euler_identity(&m, 0) {
                    Ok((12, true)) => {}
                    other => bad.push(format!("row {} p={}: {:?}", case.id, p, other)),
                }
            }
        }
    }
    // random models with deg a_i <= i: the minimal total is 12 or, after a
    // global reduction, 0
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut random_ok, mut reduced) = (0, 0);
    for _ in 0..400 {
        let p = [2u64, 3, 5, 7, 11, 13][rng.gen_range(0..6)];
        let f = Field::prime(p).unwrap();
        let coeffs: Vec<Vec<i64>> = [1usize, 2, 3, 4, 6]
            .iter()
            .map(|&d| (0..=d).map(|_| if rng.gen_bool(0.4) { rng.gen_range(0..p as i64) } else { 0 }).collect())
            .collect();
        let m = WeierstrassModel::from_i64(&f, [&coeffs[0], &coeffs[1], &coeffs[2], &coeffs[3], &coeffs[4]]);
        if discriminant(&m).is_zero() {
            continue;
        }
        match euler_identity(&m, rng.gen()) {
            Ok((12, true)) => random_ok += 1,
            Err(Error::NotRationalElliptic { sum: 0 }) => reduced += 1,
            other => bad.push(format!("{}: {:?}", m, other)),
        }
    }
    (
        bad.is_empty(),
        format!(
            "{} catalogue models and {} random models sum to 12 ({} random models reduce to a constant curve); {} violations {:?}",
            catalog_models,
            random_ok,
            reduced,
            bad.len(),
            bad.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

// 3. Extremal Mordell-Weil groups against the discriminant groups.
fn extremal_mw(_: &mut Context) -> (bool, String) {
    let mut order_bad = Vec::new();
    let mut embed_bad = BTreeSet::new();
    let mut rows = 0;
    for case in catalog().table2(Variant::Corrected).iter().filter(|c| c.is_extremal()) {
        rows += 1;
        let r = mw_from_config(&RootConfiguration::from_labels(&case.fibers), 100_000).unwrap();
        let disc = group_order(&r.disc);
        for q in &r.quotients {
            if q.rank != 0 || group_order(&q.torsion).pow(2) != disc {
                order_bad.push(case.id);
            }
            let doubled: Vec<u64> = q.torsion.iter().chain(&q.torsion).copied().collect();
            if !group_embeds(&doubled, &r.disc) {
                embed_bad.insert(format!("{} ({} vs {:?})", case.id, q, r.disc));
            }
        }
    }
    let spot = [("A8", vec![3u64]), ("D4,D4", vec![2, 2]), ("E8", vec![])];
    let mut spot_bad = Vec::new();
    for (fibers, torsion) in &spot {
        let cfg = RootConfiguration::from_labels(&parse_label_list(fibers).unwrap());
        let r = mw_from_config(&cfg, 100_000).unwrap();
        if r.quotients.iter().any(|q| q.rank != 0 || &q.torsion != torsion) {
            spot_bad.push(*fibers);
        }
    }
    (
        order_bad.is_empty() && spot_bad.is_empty() && embed_bad.is_empty(),
        format!(
            "{} extremal rows: |MW|^2 = |Disc| fails on {:?}; spot values fail on {:?}; MW + MW does not embed in Disc for rows {:?}",
            rows, order_bad, spot_bad, embed_bad
        ),
    )
}

// 4. Table 3 substitutions preserve their equations with the right base
// order.
fn automorphisms(cx: &mut Context) -> (bool, String) {
    let verdicts = &cx.corrected().0;
    let mut failures = Vec::new();
    let mut exercised: BTreeMap<(String, u32), usize> = BTreeMap::new();
    for v in verdicts {
        for c in v.checks.iter().filter(|c| c.name.starts_with("automorphism")) {
            if c.status == CheckStatus::Pass {
                *exercised.entry((c.name.clone(), v.id)).or_default() += 1;
            } else {
                failures.push(format!("{} p={} {}: {}", v.id, v.p, v.params, c.detail));
            }
        }
    }
    let mut unexercised = Vec::new();
    for spec in &catalog().table3 {
        let name = format!("automorphism ({}, {}, {})", spec.t.source, spec.x.source, spec.y.source);
        for &id in &spec.rows {
            if !exercised.contains_key(&(name.clone(), id)) {
                unexercised.push(id);
            }
        }
    }
    // direct substitutions with hand-picked constants: (row, p, constant,
    // value, base order); over F_2 the cube root of 1 lives in F_4
    let direct = [
        (12u32, 7u64, 'z', 2i64, 3u64),
        (15, 13, 'z', 3, 3),
        (18, 2, 'z', 0, 3),
        (21, 5, ' ', 0, 2),
        (22, 7, ' ', 0, 2),
        (2, 5, 'i', 2, 2),
    ];
    let mut direct_bad = Vec::new();
    for (id, p, name, value, order) in direct {
        let case = catalog().case(id, Variant::Corrected).unwrap();
        let params = case.admissible_params(p).into_iter().next().unwrap();
        let model = instantiate(case, p, &params).unwrap();
        let spec = catalog().automorphisms(id)[0];
        let (field, consts) = if p == 2 {
            // F_4 = F_2[g]/(g^2 + g + 1); g is a primitive cube root of 1
            let f = Field::gf(2, 2).unwrap();
            let g = f.generator().unwrap();
            (f, HashMap::from([('z', g)]))
        } else {
            let f = Field::prime(p).unwrap();
            let consts = if name == ' ' { HashMap::new() } else { HashMap::from([(name, f.from_i64(value))]) };
            (f, consts)
        };
        let out = check_substitution(&model, spec, &field, &consts, &HashMap::new()).unwrap();
        if !out.preserved || out.base_order != Some(order) {
            direct_bad.push(format!("row {} over {}: {:?}", id, out.field, out));
        }
    }
    (
        failures.is_empty() && unexercised.is_empty() && direct_bad.is_empty(),
        format!(
            "{} (substitution, row) pairs verified over F_p or F_(p^d), {} failures, unexercised rows {:?}; direct checks of orders 3 and 2: {} bad",
            exercised.len(),
            failures.len(),
            unexercised,
            direct_bad.len()
        ),
    )
}

fn minkowski(a: &[i64; 10], b: &[i64; 10]) -> i64 {
    a[0] * b[0] - (1..10).map(|i| a[i] * b[i]).sum::<i64>()
}

/// `x ↦ x + (x.α) α`, written out directly on coordinates.
fn reflect(alpha: &[i64; 10], x: &[i64; 10]) -> [i64; 10] {
    let c = minkowski(x, alpha);
    std::array::from_fn(|i| x[i] + c * alpha[i])
}

// 5. Translations on Pic(S).
fn gizatullin(_: &mut Context) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let roots = k_perp_roots();
    let random_class = |rng: &mut ChaCha8Rng| DivisorClass(std::array::from_fn(|_| rng.gen_range(-5..=5)));
    let random_section = |rng: &mut ChaCha8Rng| {
        roots.iter().fold(DivisorClass::ZERO, |acc, r| acc + rng.gen_range(-3..=3) * *r)
    };
    let mut failures: BTreeMap<&str, usize> = BTreeMap::new();
    let mut fail = |what: &'static str| *failures.entry(what).or_default() += 1;
    let k = canonical_class();
    for _ in 0..1000 {
        let a = random_section(&mut rng);
        let b = random_section(&mut rng);
        let d = random_class(&mut rng);
        let e = random_class(&mut rng);
        let m = rng.gen_range(1..=3);
        let shift = rng.gen_range(-4..=4);
        let t = |x: &DivisorClass| tau(&a, m, x).unwrap();
        if t(&d).dot(&t(&e)) != d.dot(&e) {
            fail("isometry");
        }
        if t(&k) != k {
            fail("fixes K");
        }
        if tau(&(a + shift * f0()), m, &d).unwrap() != t(&d) {
            fail("lift change");
        }
        if tau(&(a + b), m, &d).unwrap() != tau(&a, m, &tau(&b, m, &d).unwrap()).unwrap() {
            fail("homomorphism");
        }
        let matrix = tau_matrix(&a, m).unwrap();
        if !acts_trivially_on_e8_quotient(&matrix).unwrap() {
            fail("trivial on F0^⊥/ZF0");
        }
        if !congruent_mod(&matrix, m) {
            fail("m-congruence");
        }
    }
    let all_roots = e8_roots();
    for _ in 0..20 {
        let alpha = e8_root_to_pic(&all_roots[rng.gen_range(0..all_roots.len())]) + rng.gen_range(-2..=2) * f0();
        let alpha_prime = -f0() - alpha;
        let m = rng.gen_range(1..=3u32);
        let x = random_class(&mut rng);
        let mut y = x.0;
        for _ in 0..m {
            y = reflect(&alpha_prime.0, &reflect(&alpha.0, &y));
        }
        if DivisorClass(y) != tau(&alpha, i64::from(m), &x).unwrap()
            || reflection_pair_power(&alpha, m).unwrap() != tau_matrix(&alpha, i64::from(m)).unwrap()
        {
            fail("reflection pair");
        }
    }
    (failures.is_empty(), format!("1000 random trials and 20 random roots; failures {:?}", failures))
}

// 6. Fibres met by torsion sections.
fn torsion(_: &mut Context) -> (bool, String) {
    let as_set = |cands: Vec<genusone::lattice::TorsionCandidate>| -> BTreeSet<(String, u32)> {
        cands.into_iter().map(|c| (format_multiset(&canonical_multiset(&c.fibers)), c.order)).collect()
    };
    let show = |set: &BTreeSet<(String, u32)>| set.iter().map(|(f, o)| format!("{} (order {})", f, o)).collect::<Vec<_>>().join(", ");
    let one = as_set(torsion_fiber_scan(1).unwrap());
    let two = as_set(torsion_fiber_scan(2).unwrap());
    let expect = |list: &[(&str, u32)]| -> BTreeSet<(String, u32)> {
        list.iter()
            .map(|(f, o)| (format_multiset(&canonical_multiset(&parse_label_list(f).unwrap())), *o))
            .collect()
    };
    let one_expected = expect(&[("A7", 2), ("A8", 3), ("D8", 2)]);
    let two_expected = expect(&[("D8,A0", 2), ("D4,D4", 2), ("D6,A1*", 2), ("E7,A1*", 2), ("D8,A0**", 2)]);
    (
        one == one_expected && two == two_expected,
        format!("one fibre: {}; two fibres: {}", show(&one), show(&two)),
    )
}

// 7. Enriques configurations.
fn enriques(_: &mut Context) -> (bool, String) {
    let mut notes = Vec::new();
    let mut ok = true;
    let strip = |s: &str| s.replace('*', "");
    for label in ["A", "B", "C", "D"] {
        let scan = enriques_subdiagram_scan(catalog().enriques_config(label).unwrap());
        ok &= scan.all_named_found();
        let types: Vec<String> = scan.fibrations.iter().map(|f| f.types.clone()).collect();
        match label {
            "A" => {
                let mut t = types.clone();
                t.sort();
                ok &= t == ["D̃8", "Ẽ8", "Ẽ8"];
            }
            "D" => {
                for want in ["D̃8", "Ẽ7", "D̃6 + Ã1*"] {
                    ok &= types.iter().any(|t| strip(t) == strip(want));
                }
            }
            _ => {}
        }
        let extra: Vec<&str> = scan.unnamed_large().iter().map(|f| f.types.as_str()).collect();
        notes.push(format!("{}: {} fibrations{}", label, types.len(), if extra.is_empty() { String::new() } else { format!(", unnamed {}", extra.join(", ")) }));
    }
    (ok, notes.join("; "))
}

/// Vectors of norm 2 in the even coordinate model of E8: D8 roots plus the
/// half-integral vectors with an even number of minus signs.
fn coordinate_e8_root_count() -> usize {
    let integral = 4 * 8 * 7 / 2;
    let half = (0u32..256).filter(|s| s.count_ones() % 2 == 0).count();
    integral + half
}

// 8. Root-system facts.
fn root_facts(_: &mut Context) -> (bool, String) {
    let roots = e8_roots();
    let gram = e8_gram();
    let norm = |r: &[i64]| -> i64 { (0..8).map(|i| (0..8).map(|j| r[i] * gram[i][j] * r[j]).sum::<i64>()).sum() };
    let distinct: BTreeSet<Vec<i64>> = roots.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    let norms_ok = distinct.iter().all(|r| norm(r) == -2);
    let mut bad = Vec::new();
    let types = (1..=8)
        .map(RootType::A)
        .chain((4..=8).map(RootType::D))
        .chain((6..=8).map(RootType::E));
    let mut checked = 0;
    for t in types {
        let expected: Vec<u64> = match t {
            RootType::A(n) => vec![u64::from(n) + 1],
            RootType::D(n) if n % 2 == 0 => vec![2, 2],
            RootType::D(_) => vec![4],
            RootType::E(6) => vec![3],
            RootType::E(7) => vec![2],
            RootType::E(_) => vec![],
        };
        let got = RootConfiguration::new(vec![t]).unwrap().discriminant_group().unwrap();
        checked += 1;
        if got != expected {
            bad.push(format!("{}: {:?}", t, got));
        }
    }
    let count_ok = roots.len() == 240 && distinct.len() == 240 && coordinate_e8_root_count() == 240;
    (
        count_ok && norms_ok && bad.is_empty(),
        format!("{} roots, all of norm -2: {}; {} discriminant groups checked, {} wrong", roots.len(), norms_ok, checked, bad.len()),
    )
}

fn suite_commands(dir: &std::path::Path) -> Vec<Vec<String>> {
    let model = dir.join("acceptance_model.json");
    std::fs::write(&model, r#"{"p": 5, "a1": [0, 1], "a4": [1, 0, 2], "a6": [0, 3, 0, 1]}"#).unwrap();
    let model = model.to_string_lossy().into_owned();
    let mut cmds: Vec<Vec<&str>> = vec![
        vec!["verify-case", "--all"],
        vec!["--variant", "printed", "verify-case", "--all"],
        vec!["verify-nonjacobian", "--all"],
        vec!["torsion-scan", "--fibers", "1"],
        vec!["torsion-scan", "--fibers", "2"],
        vec!["classify", &model],
        vec!["invariants", &model],
        vec!["mw", &model],
        vec!["mw", "--fibers", "A8,A0*,A0*,A0*"],
        vec!["act", "--m", "3", "--A", "0,1,-1,0,0,0,0,0,0,0", "--D", "1,0,0,0,0,0,0,0,0,0"],
    ];
    let ps = ["0", "2", "3", "5", "7"];
    for p in &ps {
        cmds.push(vec!["enumerate-extremal", "--p", p]);
    }
    for c in ["A", "B", "C", "D"] {
        cmds.push(vec!["enriques", "--config", c]);
    }
    cmds.into_iter().map(|c| c.into_iter().map(String::from).collect()).collect()
}

fn run_suite(commands: &[Vec<String>], seed: &str) -> Vec<u8> {
    let mut out = Vec::new();
    for args in commands {
        // text is rendered from the same report, so the slow table runs are compared as json only
        let formats: &[&str] = if args.iter().any(|a| a == "--all") { &["json"] } else { &["json", "text"] };
        for format in formats {
            let o = Command::new(env!("CARGO_BIN_EXE_genusone"))
                .env_remove("GENUSONE_SEED")
                .args(["--seed", seed, "--format", format])
                .args(args)
                .output()
                .unwrap();
            out.extend(o.stdout);
            out.extend(o.status.code().unwrap_or(-1).to_string().bytes());
        }
    }
    out
}

// 9. Byte-identical reports for identical inputs and seed.
fn determinism(_: &mut Context) -> (bool, String) {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let commands = suite_commands(&dir);
    let first = run_suite(&commands, "7");
    let second = run_suite(&commands, "7");
    (
        first == second && !first.is_empty(),
        format!("{} commands, {} bytes per run, identical: {}", commands.len(), first.len(), first == second),
    )
}

fn main() {
    let criteria = [
        Criterion { number: 1, name: "jacobian table reproduction", expected: Outcome::Pass, run: table_two },
        Criterion { number: 2, name: "global Euler identity", expected: Outcome::Pass, run: euler_sum },
        // The literal MW ⊕ MW ≅ ⊕ Disc_t fails whenever a discriminant group is
        // cyclic of square order (Ã8 gives Z/3 against Z/9); only the order
        // identity holds in general.
        Criterion { number: 3, name: "extremal Mordell-Weil groups", expected: Outcome::Fail, run: extremal_mw },
        Criterion { number: 4, name: "automorphism substitutions", expected: Outcome::Pass, run: automorphisms },
        Criterion { number: 5, name: "translations on Pic", expected: Outcome::Pass, run: gizatullin },
        Criterion { number: 6, name: "torsion fibre scans", expected: Outcome::Pass, run: torsion },
        Criterion { number: 7, name: "Enriques configurations", expected: Outcome::Pass, run: enriques },
        Criterion { number: 8, name: "root-system facts", expected: Outcome::Pass, run: root_facts },
        Criterion { number: 9, name: "determinism", expected: Outcome::Pass, run: determinism },
    ];
    let mut cx = Context::default();
    let mut unexpected = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let (ok, detail) = (c.run)(&mut cx);
        let got = if ok { Outcome::Pass } else { Outcome::Fail };
        let tag = if ok { "PASS" } else { "FAIL" };
        let note = if got == c.expected { "" } else { " [UNEXPECTED]" };
        println!(
            "criterion {}: {} - {} ({:.1} s): {}{}",
            c.number,
            tag,
            c.name,
            start.elapsed().as_secs_f64(),
            detail,
            note
        );
        if got != c.expected {
            unexpected.push(c.number);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria with an unexpected status: {:?}", unexpected);
        std::process::exit(1);
    }
}
