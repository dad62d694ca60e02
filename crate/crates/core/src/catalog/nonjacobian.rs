//! Consistency checks for rows of the non-jacobian table. There are no
//! equations for these surfaces, only constraints linking a row to its
//! jacobian and to the type of the multiple fibre.

use serde::{Deserialize, Serialize};

use super::verify::{overall, Check, CheckStatus};
use super::{catalog, Multiplicity, NonJacobianCase, Variant};
use crate::localfibers::{canonical_multiset, format_multiset, AffineLabel};

/// Characteristics tried for the per-characteristic checks.
pub const SAMPLE_CHARACTERISTICS: [u64; 7] = [0, 2, 3, 5, 7, 11, 13];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonJacobianVerdict {
    pub id: String,
    pub variant: Variant,
    pub fibers: String,
    pub multiple: String,
    pub checks: Vec<Check>,
    pub status: CheckStatus,
}

pub fn verify_nonjacobian(id: &str, variant: Variant) -> crate::Result<NonJacobianVerdict> {
    let case = catalog().nonjacobian(id, variant)?;
    Ok(verify_nonjacobian_row(case, variant))
}

fn check(name: &str, ok: bool, detail: String) -> Check {
    Check {
        name: name.to_string(),
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        required: true,
        detail,
    }
}

/// Whether `m` is allowed for the multiple fibre in characteristic `p`,
/// with a note.
fn multiplicity_allowed(label: AffineLabel, m: &Multiplicity, p: u64) -> (bool, String) {
    if label.is_smooth() {
        // ordinary smooth fibres may be wild; supersingular ones need p ∤ m
        return match m {
            Multiplicity::Fixed(m) if p > 0 && m % p == 0 => (true, "p | m, F0 ordinary".into()),
            Multiplicity::Characteristic => (p > 0, "m = p, F0 ordinary".into()),
            _ => (true, "p ∤ m".into()),
        };
    }
    if label.is_additive() {
        let ok = match m {
            Multiplicity::Fixed(m) => p > 0 && *m == p,
            Multiplicity::Characteristic => p > 0,
            Multiplicity::Coprime => false,
        };
        return (ok, "additive, needs m = p".into());
    }
    let ok = match m {
        Multiplicity::Fixed(m) => p == 0 || m % p != 0,
        Multiplicity::Characteristic => false,
        Multiplicity::Coprime => true,
    };
    (ok, "multiplicative, needs p ∤ m".into())
}

pub fn verify_nonjacobian_row(case: &NonJacobianCase, variant: Variant) -> NonJacobianVerdict {
    let mut checks = Vec::new();
    let fibers = canonical_multiset(&case.fibers);
    let label = case.multiple.label;

    // (i) the jacobian row
    let parent = case.parent_id().and_then(|n| catalog().case(n, variant).ok());
    match parent {
        None => checks.push(check(
            "jacobian row",
            false,
            format!("no jacobian row {}", case.parent_id().map(|n| n.to_string()).unwrap_or_default()),
        )),
        Some(parent) => {
            let same = canonical_multiset(&parent.fibers) == fibers;
            checks.push(check(
                "jacobian row",
                same,
                format!("row {}: {} vs {}", parent.id, parent.fibers_text(), format_multiset(&fibers)),
            ));
            let occurs = label.is_smooth() || fibers.contains(&label);
            checks.push(check(
                "multiple fibre type",
                occurs,
                format!("{} {} among the fibres", label, if occurs { "is" } else { "is not" }),
            ));
        }
    }

    // (ii) multiplicity against the fibre type
    let ps: Vec<u64> = SAMPLE_CHARACTERISTICS.iter().copied().filter(|&p| case.p.allows(p)).collect();
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    for &p in &ps {
        let (ok, why) = multiplicity_allowed(label, &case.multiple.multiplicity, p);
        if !ok {
            bad.push(format!("p = {}: {}", p, why));
        } else if why.contains("ordinary") {
            notes.push(format!("p = {}: {}", p, why));
        }
    }
    let detail = if bad.is_empty() {
        let mut d = format!("{} consistent for p in {:?}", case.multiple, ps);
        if !notes.is_empty() {
            d.push_str(&format!(" ({})", notes.join("; ")));
        }
        d
    } else {
        format!("{}: {}", case.multiple, bad.join("; "))
    };
    checks.push(check("multiplicity", bad.is_empty() && !ps.is_empty(), detail));

    // (iii) groups
    let bad: Vec<u64> = ps.iter().copied().filter(|&p| !case.aut.contains(&case.aut_dagger, p)).collect();
    checks.push(check(
        "Aut† ⊆ Aut",
        bad.is_empty(),
        format!("{} ⊆ {}{}", case.aut_dagger, case.aut, if bad.is_empty() { String::new() } else { format!(" fails for p in {:?}", bad) }),
    ));

    // (iv) translations by torsion sections fix a multiple fibre only of
    // these types
    if case.ct_meets_mw {
        let ok = matches!(label, AffineLabel::A(7) | AffineLabel::A(8) | AffineLabel::D(8));
        checks.push(check("Aut_ct ∩ MW", ok, format!("multiple fibre {} among Ã7, Ã8, D̃8", label)));
    }

    let status = overall(&checks);
    NonJacobianVerdict {
        id: case.id.clone(),
        variant,
        fibers: format_multiset(&fibers),
        multiple: case.multiple.to_string(),
        checks,
        status,
    }
}
