//! The `verify` suite: oracle comparisons and property checks up to a
//! weight, collected into a machine-readable report.

use std::collections::BTreeMap;

use mzero_core::interior::{interior_characteristic, InteriorFormula, InteriorTable};
use mzero_core::legendre::{
    check_compactified, compactified_characteristic, legendre_residual, partial_legendre,
    partial_legendre_via_inverse, weight_substitution, CompactifiedTable,
};
use mzero_core::symfunc::elementary;
use mzero_core::trees::{equivariant_treesum, poincare_oracle};
use mzero_core::{BiSymFunc, Error, Factor, TPoly, Truncation};
use serde::Serialize;

use crate::compute::pairs_up_to;

/// Largest weight `verify` accepts.
pub const MAX_VERIFY_WEIGHT: usize = 9;
/// Largest weight for the equivariant tree sum.
pub const MAX_EQUIVARIANT_WEIGHT: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Oracle {
    Trees,
    EquivariantTrees,
    Properties,
}

impl Oracle {
    pub fn name(self) -> &'static str {
        match self {
            Oracle::Trees => "trees",
            Oracle::EquivariantTrees => "equivariant-trees",
            Oracle::Properties => "properties",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub max_weight: usize,
    pub oracles: Vec<String>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Report {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("{status} {}\n", c.name));
            } else {
                out.push_str(&format!("{status} {}: {}\n", c.name, c.detail));
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push_str(&format!(
            "{}: {} checks, {failed} failed\n",
            if self.passed { "PASS" } else { "FAIL" },
            self.checks.len()
        ));
        out
    }
}

fn check(name: impl Into<String>, result: Result<(), String>) -> Check {
    let (passed, detail) = match result {
        Ok(()) => (true, String::new()),
        Err(d) => (false, d),
    };
    Check { name: name.into(), passed, detail }
}

fn compare(got: &BiSymFunc, expect: &BiSymFunc) -> Result<(), String> {
    if got == expect {
        Ok(())
    } else {
        Err("values differ".into())
    }
}

fn compare_poly(got: &TPoly, expect: &TPoly) -> Result<(), String> {
    if got == expect {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {expect:?}"))
    }
}

pub fn run(max_weight: usize, oracles: &[Oracle]) -> Result<Report, Error> {
    if max_weight < 3 {
        return Err(Error::Range(format!(
            "m+n ≥ 3 required: max-weight {max_weight} admits no component"
        )));
    }
    if max_weight > MAX_VERIFY_WEIGHT {
        return Err(Error::Range(format!("max-weight ≤ {MAX_VERIFY_WEIGHT} required")));
    }
    if oracles.contains(&Oracle::EquivariantTrees) && max_weight > MAX_EQUIVARIANT_WEIGHT {
        return Err(Error::Range(format!(
            "equivariant-trees supports max-weight ≤ {MAX_EQUIVARIANT_WEIGHT}"
        )));
    }
    let mut oracles = oracles.to_vec();
    oracles.sort();
    oracles.dedup();

    let mut checks = Vec::new();
    let table = compactified_characteristic(max_weight);
    checks.push(check(
        "pipeline",
        table.as_ref().map(|_| ()).map_err(|e| e.to_string()),
    ));
    if let Ok(table) = &table {
        for &oracle in &oracles {
            match oracle {
                Oracle::Trees => trees(table, max_weight, &mut checks),
                Oracle::EquivariantTrees => equivariant(table, max_weight, &mut checks)?,
                Oracle::Properties => properties(table, max_weight, &mut checks)?,
            }
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(Report {
        max_weight,
        oracles: oracles.iter().map(|o| o.name().to_string()).collect(),
        checks,
        passed,
    })
}

fn trees(table: &CompactifiedTable, w: usize, checks: &mut Vec<Check>) {
    for (m, n) in pairs_up_to(w) {
        let result = match (table.poincare(m, n), poincare_oracle(m, n)) {
            (Ok(got), Ok(expect)) => compare_poly(&got, &expect),
            (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
        };
        checks.push(check(format!("trees ({m},{n})"), result));
    }
}

fn equivariant(table: &CompactifiedTable, w: usize, checks: &mut Vec<Check>) -> Result<(), Error> {
    let mut weights = BTreeMap::new();
    for (m, n) in pairs_up_to(w) {
        let g = interior_characteristic(m, n, InteriorFormula::Geometric)?;
        weights.insert((m, n), weight_substitution(&g)?);
    }
    for (m, n) in pairs_up_to(w) {
        let result = equivariant_treesum(&weights, m, n)
            .and_then(|ts| Ok((table.get(m, n)?.with_truncation(ts.truncation()), ts)))
            .map_err(|e| e.to_string())
            .and_then(|(expect, ts)| compare(&ts, &expect));
        checks.push(check(format!("equivariant-trees ({m},{n})"), result));
    }
    Ok(())
}

/// `∏_{k=2}^{m−2}(1 − kt) (1 − (m−1)t)^n`, or `(1 − t)^{n−1}` for `m = 2`.
pub fn interior_product_formula(m: usize, n: usize) -> TPoly {
    if m == 2 {
        return TPoly::from_ints(&[1, -1]).pow(n as u32 - 1);
    }
    let mut p = TPoly::from_ints(&[1, 1 - m as i64]).pow(n as u32);
    for k in 2..=(m as i64 - 2) {
        p = &p * &TPoly::from_ints(&[1, -k]);
    }
    p
}

/// Eulerian numbers `A(n, k)`, `k = 0..n−1`.
pub fn eulerian(n: usize) -> Vec<i64> {
    let mut row = vec![1i64];
    for j in 2..=n {
        let mut next = vec![0i64; j];
        for (k, slot) in next.iter_mut().enumerate() {
            let stay = if k < row.len() { (k as i64 + 1) * row[k] } else { 0 };
            let rise = if k >= 1 && k - 1 < row.len() { (j as i64 - k as i64) * row[k - 1] } else { 0 };
            *slot = stay + rise;
        }
        row = next;
    }
    row
}

fn properties(table: &CompactifiedTable, w: usize, checks: &mut Vec<Check>) -> Result<(), Error> {
    for (m, n) in pairs_up_to(w) {
        let c = table.get(m, n)?;
        checks.push(check(
            format!("compactified invariants ({m},{n})"),
            check_compactified(&c, m, n).map_err(|e| e.to_string()),
        ));
    }
    for formula in [InteriorFormula::Printed, InteriorFormula::Geometric] {
        let interior = InteriorTable::new(w, formula)?;
        for (m, n) in pairs_up_to(w) {
            checks.push(check(
                format!("interior product formula {formula:?} ({m},{n})"),
                compare_poly(&interior.poincare(m, n)?, &interior_product_formula(m, n)),
            ));
        }
    }
    for n in 1..=(w - 2) {
        let expect = TPoly::from_pairs(
            eulerian(n).into_iter().enumerate().map(|(k, a)| (2 * k as i32, mzero_core::tpoly::int(a))),
        );
        checks.push(check(
            format!("eulerian (2,{n})"),
            compare_poly(&table.poincare(2, n)?, &expect),
        ));
    }
    let trunc = Truncation::weight(w);
    let interior = InteriorTable::new(w, InteriorFormula::Geometric)?;
    let mut sum = BiSymFunc::zero(trunc);
    for c in interior.components().values() {
        sum = &sum + &c.with_truncation(trunc);
    }
    let f = &elementary(2, Factor::First, trunc)? - &weight_substitution(&sum)?;
    let g = partial_legendre(&f)?;
    checks.push(check(
        "legendre residual",
        match legendre_residual(&f, &g) {
            Ok(r) if r.is_zero() => Ok(()),
            Ok(_) => Err("nonzero residual".into()),
            Err(e) => Err(e.to_string()),
        },
    ));
    checks.push(check(
        "legendre involution",
        partial_legendre(&g).map_err(|e| e.to_string()).and_then(|back| compare(&back, &f)),
    ));
    checks.push(check(
        "legendre solvers agree",
        partial_legendre_via_inverse(&f).map_err(|e| e.to_string()).and_then(|h| compare(&h, &g)),
    ));
    Ok(())
}
