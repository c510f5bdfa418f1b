use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::catalog::{builtin_catalog, lookup, IdentitySpec};
use crate::dsl;
use crate::error::Result;
use crate::series::Mismatch;

/// Outcome of comparing both sides of one identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub order: i64,
    pub pass: bool,
    pub first_mismatch: Option<Mismatch>,
    /// Set when a side failed to parse or evaluate.
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub order: i64,
    pub total: usize,
    pub passed: usize,
    pub reports: Vec<VerificationReport>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.passed == self.total
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationReport> {
        self.reports.iter().filter(|r| !r.pass)
    }
}

/// Compares both sides of `spec` through `q^order`. Never fails: parse and
/// evaluation errors become failing reports.
pub fn verify_spec(spec: &IdentitySpec, order: i64) -> VerificationReport {
    let start = Instant::now();
    let outcome = spec
        .parse()
        .map_err(|e| e.to_string())
        .and_then(|(lhs, rhs)| {
            let l = dsl::eval(&lhs, order).map_err(|e| format!("left side: {e}"))?;
            let r = dsl::eval(&rhs, order).map_err(|e| format!("right side: {e}"))?;
            l.equal_to_order(&r, order).map_err(|e| e.to_string())
        });
    let (pass, first_mismatch, error) = match outcome {
        Ok(None) => (true, None, None),
        Ok(Some(m)) => (false, Some(m), None),
        Err(e) => (false, None, Some(e)),
    };
    VerificationReport {
        id: spec.id.clone(),
        order,
        pass,
        first_mismatch,
        error,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Verifies a built-in identity at `min(order, default_order)`.
pub fn verify(id: &str, order: i64) -> Result<VerificationReport> {
    let spec = lookup(id)?;
    Ok(verify_spec(&spec, order.min(spec.default_order)))
}

/// Verifies every entry of `catalog` (the built-in one when `None`) on
/// `jobs` threads. Reports come back sorted by id whatever the scheduling.
pub fn verify_all(catalog: Option<&[IdentitySpec]>, order: i64, jobs: usize) -> SuiteReport {
    let owned;
    let specs = match catalog {
        Some(c) => c,
        None => {
            owned = builtin_catalog();
            &owned[..]
        }
    };
    let run = || -> Vec<VerificationReport> {
        specs
            .par_iter()
            .map(|s| verify_spec(s, order.min(s.default_order)))
            .collect()
    };
    let mut reports = match rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
    {
        Ok(pool) => pool.install(run),
        Err(_) => specs
            .iter()
            .map(|s| verify_spec(s, order.min(s.default_order)))
            .collect(),
    };
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = reports.iter().filter(|r| r.pass).count();
    SuiteReport {
        order,
        total: reports.len(),
        passed,
        reports,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_are_reports() {
        let bad = IdentitySpec::new("BAD", "1 + q", "1", 10, "");
        let r = verify_spec(&bad, 10);
        assert!(!r.pass && r.error.is_none());
        assert_eq!(r.first_mismatch.unwrap().exponent, 1);
        let broken = IdentitySpec::new("BROKEN", "sigma(3,0,3)", "0", 10, "");
        let r = verify_spec(&broken, 10);
        assert!(!r.pass && r.error.unwrap().contains("denominator"));
        let unparsable = IdentitySpec::new("NOPE", "(", "0", 10, "");
        assert!(verify_spec(&unparsable, 10).error.is_some());
        assert!(verify("NO-SUCH-ID", 10).is_err());
    }

    #[test]
    fn spot_checks() {
        assert!(verify("JTP@(-1,1,2)", 150).unwrap().pass);
        let r = verify("THM3-D1", 180).unwrap();
        assert!(r.pass && r.order == 60);
    }
}
