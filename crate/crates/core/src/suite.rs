//! The verification battery behind `frankl suite`: exhaustive lattice sweeps
//! and catalogue group sweeps with configurable caps.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{
    frankl_brute_force, frankl_via_left_modular_coatom, has_left_modular_maximal_chain, is_comodernistic,
    is_dually_semimodular, is_left_modular, left_modular_elements,
};
use crate::certificate::{
    build_certificate, build_certificate_generalized, generalized_modularity_holds, verify_certificate,
};
use crate::enumerate::{enumerate_up_to, scan_lattices};
use crate::error::Result;
use crate::group::{catalogue_up_to, GroupSpec};
use crate::lattice::FiniteLattice;
use crate::subgroups::{frankl_full, verify_complemented_witnesses, verify_solvable_intervals, SubgroupLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub max_lattice: usize,
    pub max_group: usize,
    pub order_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// A failure that contradicts a proved sufficient condition.
    pub critical: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn critical(&self) -> bool {
        self.checks.iter().any(|c| c.critical)
    }
}

fn check(name: &'static str, failures: &[String], critical: bool, summary: String) -> CheckResult {
    let detail = match failures.first() {
        None => summary,
        Some(first) => format!("{} failures, first: {first}", failures.len()),
    };
    CheckResult { name, passed: failures.is_empty(), critical: critical && !failures.is_empty(), detail }
}

fn certificate_failure(l: &FiniteLattice, what: String, built: Result<crate::InjectionCertificate>) -> Option<String> {
    match built {
        Err(e) => Some(format!("{what}: {e}")),
        Ok(cert) => match verify_certificate(l, &cert) {
            Err(defect) => Some(format!("{what}: {defect}")),
            Ok(()) if 2 * l.up_size(cert.witness) > l.len() => Some(format!("{what}: bound fails")),
            Ok(()) => None,
        },
    }
}

/// Every left-modular `m ≠ top` with join-irreducibles `x, y` and
/// `m ∨ x ∨ y = top`; returns (triples, failures).
fn left_modular_triples(l: &FiniteLattice) -> (usize, Vec<String>) {
    let jis = l.join_irreducibles();
    let mut count = 0;
    let mut failures = Vec::new();
    for m in left_modular_elements(l).into_iter().filter(|&m| m != l.top()) {
        for &x in &jis {
            for &y in &jis {
                if l.join(m, l.join(x, y)) == l.top() {
                    count += 1;
                    failures.extend(certificate_failure(l, format!("({m},{x},{y})"), build_certificate(l, m, x, y)));
                }
            }
        }
    }
    (count, failures)
}

fn relaxed_triples(l: &FiniteLattice) -> (usize, Vec<String>) {
    let jis = l.join_irreducibles();
    let mut count = 0;
    let mut failures = Vec::new();
    for m in l.elements().filter(|&m| m != l.top()) {
        for &x in &jis {
            for &y in &jis {
                if l.leq(x, m) || l.leq(y, m) || l.join(m, l.join(x, y)) != l.top() {
                    continue;
                }
                if generalized_modularity_holds(l, m, x, y) {
                    count += 1;
                    let built = build_certificate_generalized(l, m, x, y);
                    failures.extend(certificate_failure(l, format!("({m},{x},{y})"), built));
                }
            }
        }
    }
    (count, failures)
}

fn structural(l: &FiniteLattice) -> Vec<String> {
    let mut failures = Vec::new();
    let como = is_comodernistic(l);
    if is_dually_semimodular(l) {
        if !l.coatoms().iter().all(|&c| is_left_modular(l, c)) {
            failures.push("dually semimodular with a non-left-modular coatom".to_string());
        }
        if !frankl_via_left_modular_coatom(l).is_some_and(|r| r.satisfied) {
            failures.push("dually semimodular without a coatom certificate".to_string());
        }
        if !como {
            failures.push("dually semimodular but not comodernistic".to_string());
        }
    }
    if has_left_modular_maximal_chain(l).is_some() && !como {
        failures.push("left-modular maximal chain but not comodernistic".to_string());
    }
    if como && !frankl_brute_force(l).is_ok_and(|r| r.satisfied) {
        failures.push("comodernistic counterexample".to_string());
    }
    failures.into_iter().map(|f| format!("{f}:\n{}", l.to_text())).collect()
}

fn lattice_checks(max: usize) -> Result<Vec<CheckResult>> {
    let lattices: Vec<FiniteLattice> = enumerate_up_to(max)?.into_iter().filter(|l| l.len() >= 2).collect();
    let scan = scan_lattices(&lattices)?.total();
    let sweep_failures: Vec<String> = (0..scan.counterexamples).map(|_| "counterexample".to_string()).collect();
    let mut out = vec![check(
        "lattice sweep",
        &sweep_failures,
        scan.critical > 0,
        format!("{} lattices, {} counterexamples", scan.lattices, scan.counterexamples),
    )];

    let triples: Vec<(usize, Vec<String>)> = lattices.par_iter().map(left_modular_triples).collect();
    let count: usize = triples.iter().map(|t| t.0).sum();
    let failures: Vec<String> = triples.into_iter().flat_map(|t| t.1).collect();
    out.push(check("left-modular triples", &failures, true, format!("{count} certificates verified")));

    let relaxed: Vec<(usize, Vec<String>)> = lattices.par_iter().map(relaxed_triples).collect();
    let count: usize = relaxed.iter().map(|t| t.0).sum();
    let failures: Vec<String> = relaxed.into_iter().flat_map(|t| t.1).collect();
    out.push(check("relaxed triples", &failures, true, format!("{count} certificates verified")));

    let failures: Vec<String> = lattices.par_iter().flat_map_iter(structural).collect();
    out.push(check(
        "structural classes",
        &failures,
        true,
        format!(
            "{} dually semimodular, {} with left-modular chains, {} comodernistic",
            scan.dually_semimodular, scan.left_modular_chain, scan.comodernistic
        ),
    ));
    Ok(out)
}

struct GroupRow {
    spec: GroupSpec,
    full: std::result::Result<(), String>,
    critical: bool,
    solvable: Option<std::result::Result<usize, String>>,
    complemented: Option<std::result::Result<usize, String>>,
    ratio: Option<Ratio<u64>>,
}

fn group_row(spec: GroupSpec, cap: usize) -> GroupRow {
    let mut row = GroupRow { spec, full: Ok(()), critical: false, solvable: None, complemented: None, ratio: None };
    let sl = match row.spec.build(cap).and_then(SubgroupLattice::build) {
        Ok(sl) => sl,
        Err(e) => {
            row.full = Err(e.to_string());
            return row;
        }
    };
    if let Err(e) = sl.join_irreducible_subgroups() {
        row.full = Err(e.to_string());
        return row;
    }
    if sl.group().order() < 2 {
        return row;
    }
    match frankl_full(&sl) {
        Ok(r) => {
            row.critical = r.critical;
            row.full = if r.report.satisfied { Ok(()) } else { Err("no witness".into()) };
        }
        Err(e) => row.full = Err(e.to_string()),
    }
    if sl.group().is_solvable() {
        row.solvable = Some(match verify_solvable_intervals(&sl) {
            Ok(s) if s.passed() => Ok(s.intervals_checked),
            Ok(s) => Err(format!("{} failing intervals", s.failing_intervals.len())),
            Err(e) => Err(e.to_string()),
        });
    }
    if sl.group().is_complemented_group() {
        row.complemented = Some(match verify_complemented_witnesses(&sl) {
            Ok(r) if r.passed() => Ok(r.witnesses.len()),
            Ok(r) => Err(format!("{} join-irreducibles fail", r.failures.len())),
            Err(e) => Err(e.to_string()),
        });
    }
    if let Ok(avg) = crate::analysis::averaged_frankl(sl.lattice()) {
        row.ratio = Some(avg.average / Ratio::from_integer(sl.lattice().len() as u64));
    }
    row
}

fn group_checks(max: usize, cap: usize) -> Vec<CheckResult> {
    let rows: Vec<GroupRow> = catalogue_up_to(max).into_par_iter().map(|spec| group_row(spec, cap)).collect();
    let named = |r: &GroupRow, e: &String| format!("{}: {e}", r.spec);

    let failures: Vec<String> = rows.iter().filter_map(|r| r.full.as_ref().err().map(|e| named(r, e))).collect();
    let critical = rows.iter().any(|r| r.critical);
    let mut out = vec![check("group sweep", &failures, critical, format!("{} catalogue groups", rows.len()))];

    let solvable: Vec<&GroupRow> = rows.iter().filter(|r| r.solvable.is_some()).collect();
    let failures: Vec<String> = solvable
        .iter()
        .filter_map(|r| r.solvable.as_ref().and_then(|s| s.as_ref().err()).map(|e| named(r, e)))
        .collect();
    let intervals: usize = solvable.iter().filter_map(|r| r.solvable.clone().and_then(|s| s.ok())).sum();
    out.push(check(
        "solvable intervals",
        &failures,
        true,
        format!("{} solvable groups, {intervals} intervals", solvable.len()),
    ));

    let complemented: Vec<&GroupRow> = rows.iter().filter(|r| r.complemented.is_some()).collect();
    let failures: Vec<String> = complemented
        .iter()
        .filter_map(|r| r.complemented.as_ref().and_then(|s| s.as_ref().err()).map(|e| named(r, e)))
        .collect();
    out.push(check("complemented groups", &failures, true, format!("{} complemented groups", complemented.len())));

    let ratios: Vec<(Ratio<u64>, &GroupSpec)> = rows.iter().filter_map(|r| r.ratio.map(|x| (x, &r.spec))).collect();
    let detail = match (ratios.iter().min_by_key(|r| r.0), ratios.iter().max_by_key(|r| r.0)) {
        (Some((lo, lo_spec)), Some((hi, hi_spec))) => {
            format!("average up-set / |L(G)| ranges from {lo} ({lo_spec}) to {hi} ({hi_spec})")
        }
        _ => "no groups".to_string(),
    };
    out.push(CheckResult { name: "averaged condition (exploration)", passed: true, critical: false, detail });
    out
}

pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut checks = lattice_checks(config.max_lattice)?;
    checks.extend(group_checks(config.max_group, config.order_cap));
    Ok(SuiteReport { checks })
}
