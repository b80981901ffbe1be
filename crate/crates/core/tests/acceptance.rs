//! The eleven acceptance criteria, each run at zero tolerance.
//!
//! Prints one `criterion N: PASS|FAIL` line per criterion, followed by the
//! individual reports of any failing identity.

use std::collections::BTreeMap;
use std::time::Instant;

use hydra_core::catalog::{catalog, verify_all, Identity, VerificationReport};

const TITLES: [&str; 11] = [
    "Rogers-Ramanujan continued fraction",
    "partition quotient theorem",
    "composition quotient and its q-form",
    "K-duality and the bounded-difference composition formula",
    "insertion bijection and its refinement",
    "local minima of compositions",
    "partitions with prescribed rises",
    "compositions with excluded differences",
    "plethysm factorizations",
    "plethystic inversion",
    "solver stabilization bound",
];

type Checked = (String, Result<VerificationReport, String>);

#[test]
fn acceptance_criteria() {
    let start = Instant::now();
    let identities: Vec<Identity> = catalog().into_iter().filter(|i| i.criterion > 0).collect();
    let results = verify_all(&identities);

    let mut by_criterion: BTreeMap<u8, Vec<Checked>> = BTreeMap::new();
    for (identity, result) in identities.iter().zip(results) {
        by_criterion
            .entry(identity.criterion)
            .or_default()
            .push((identity.id.clone(), result.map_err(|e| e.to_string())));
    }

    let mut failures = Vec::new();
    for (n, title) in (1u8..).zip(TITLES) {
        let entries = by_criterion.get(&n).map(Vec::as_slice).unwrap_or_default();
        let ok = !entries.is_empty() && entries.iter().all(|(_, r)| matches!(r, Ok(rep) if rep.passed));
        let secs: f64 = entries.iter().filter_map(|(_, r)| r.as_ref().ok()).map(|r| r.elapsed.as_secs_f64()).sum();
        println!(
            "criterion {n:>2}: {} {title} ({} checks, {secs:.2}s)",
            if ok { "PASS" } else { "FAIL" },
            entries.len()
        );
        for (id, r) in entries {
            match r {
                Ok(rep) if rep.passed => {}
                Ok(rep) => failures.push(format!("  {rep}")),
                Err(e) => failures.push(format!("  ERROR {id}: {e}")),
            }
        }
    }
    for f in &failures {
        println!("{f}");
    }
    println!("acceptance wall time {:.2}s", start.elapsed().as_secs_f64());
    assert!(failures.is_empty(), "{} acceptance checks failed", failures.len());
}
