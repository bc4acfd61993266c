//! Exact checks over constructed or loaded tau-functions.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fock::{
    annihilator_dim, annihilator_quotient_dim, fermionic_bkp_residual, fermionic_dkp_residual, fermionic_mdkp_residual,
    window_above, window_modes, Algebra, FockError, FockVector, TensorResidual,
};
use crate::hirota::{bkp_residual, mdkp_residual, HirotaError};
use crate::io::{Built, TauFile};
use crate::polycore::{MPoly, Scalar};
use crate::tau_bkp::Family;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Annihilator,
    Bkp,
    Fermionic,
    Mdkp,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Annihilator, Check::Bkp, Check::Fermionic, Check::Mdkp];

    pub fn name(&self) -> &'static str {
        match self {
            Check::Annihilator => "annihilator",
            Check::Bkp => "bkp",
            Check::Fermionic => "fermionic",
            Check::Mdkp => "mdkp",
        }
    }
}

impl FromStr for Check {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| format!("unknown check {s:?}; expected bkp, mdkp, fermionic or annihilator"))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("check {check} is unavailable: {reason}")]
    ChecksUnavailable { check: &'static str, reason: String },
    #[error("{0}")]
    Input(String),
}

/// What the checks run against.
#[derive(Clone, Debug)]
pub enum Subject {
    Single { family: Family, tau: MPoly, state: Option<FockVector<Scalar>> },
    Pair { tau0: MPoly, tau1: MPoly, states: Option<(FockVector<Scalar>, FockVector<Scalar>)> },
}

impl From<Built> for Subject {
    fn from(b: Built) -> Self {
        match b {
            Built::Single { tau, state } => Subject::Single { family: tau.family, tau: tau.poly, state },
            Built::Pair { tau0, tau1, states } => Subject::Pair { tau0: tau0.poly, tau1: tau1.poly, states },
        }
    }
}

impl From<TauFile> for Subject {
    fn from(f: TauFile) -> Self {
        match f {
            TauFile::Single { family, tau } => Subject::Single { family, tau, state: None },
            TauFile::Pair { tau0, tau1 } => Subject::Pair { tau0, tau1, states: None },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub check: Check,
    pub passed: bool,
    /// For a failure, a witness or the reason.
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            match (&r.detail, r.passed) {
                (_, true) => writeln!(f, "{}: PASS", r.check.name())?,
                (Some(d), false) => writeln!(f, "{}: FAIL ({d})", r.check.name())?,
                (None, false) => writeln!(f, "{}: FAIL", r.check.name())?,
            }
        }
        Ok(())
    }
}

fn pass(check: Check) -> CheckResult {
    CheckResult { check, passed: true, detail: None }
}

fn fail(check: Check, detail: impl Into<String>) -> CheckResult {
    CheckResult { check, passed: false, detail: Some(detail.into()) }
}

fn poly_witness(label: &str, residual: &MPoly) -> Option<String> {
    let (m, c) = residual.leading_term()?;
    let prefix = if label.is_empty() { String::new() } else { format!("{label}: ") };
    Some(format!("{prefix}residual has {} terms, witness {m} with coefficient {c}", residual.len()))
}

fn tensor_witness(residual: &TensorResidual<Scalar>) -> Option<String> {
    let ((l, r), c) = residual.terms().next()?;
    let word = |w: &[i64]| {
        let modes: Vec<String> =
            w.iter().map(|m| if m % 2 == 0 { format!("{}", m / 2) } else { format!("{m}/2") }).collect();
        format!("[{}]", modes.join(","))
    };
    Some(format!("residual has {} terms, witness {} ⊗ {} with coefficient {c}", residual.len(), word(l), word(r)))
}

fn hirota_err(e: HirotaError) -> Result<Option<String>, VerifyError> {
    match e {
        HirotaError::ZeroTau => Ok(Some("tau is zero".into())),
        HirotaError::PrimedInput => Err(VerifyError::Input("tau contains primed variables t'_j".into())),
    }
}

fn bkp_one(label: &str, tau: &MPoly) -> Result<Option<String>, VerifyError> {
    match bkp_residual(tau) {
        Ok(r) => Ok(poly_witness(label, &r)),
        Err(e) => hirota_err(e).map(|d| d.map(|d| format!("{label} {d}").trim().to_string())),
    }
}

fn fock_detail(e: FockError) -> String {
    format!("state rejected: {e}")
}

fn unavailable(check: Check, reason: &str) -> VerifyError {
    VerifyError::ChecksUnavailable { check: check.name(), reason: reason.into() }
}

fn run_one(check: Check, subject: &Subject) -> Result<CheckResult, VerifyError> {
    let outcome = |d: Option<String>| match d {
        None => pass(check),
        Some(d) => fail(check, d),
    };
    match (check, subject) {
        (Check::Bkp, Subject::Single { tau, .. }) => Ok(outcome(bkp_one("", tau)?)),
        (Check::Bkp, Subject::Pair { tau0, tau1, .. }) => {
            let d = match bkp_one("tau0", tau0)? {
                Some(d) => Some(d),
                None => bkp_one("tau1", tau1)?,
            };
            Ok(outcome(d))
        }
        (Check::Mdkp, Subject::Single { .. }) => Err(unavailable(check, "needs a (tau0, tau1) pair")),
        (Check::Mdkp, Subject::Pair { tau0, tau1, .. }) => match mdkp_residual(tau0, tau1) {
            Ok(r) => Ok(outcome(poly_witness("", &r))),
            Err(e) => Ok(outcome(hirota_err(e)?)),
        },
        (
            Check::Fermionic | Check::Annihilator,
            Subject::Single { state: None, .. } | Subject::Pair { states: None, .. },
        ) => Err(unavailable(check, "needs generator-form input, which carries the Fock state")),
        (Check::Fermionic, Subject::Single { family, state: Some(s), .. }) => {
            if s.is_zero() {
                return Ok(fail(check, "the generator product is the zero vector"));
            }
            let r = match family {
                Family::Bkp => fermionic_bkp_residual(s),
                Family::Dkp0 | Family::Dkp1 => fermionic_dkp_residual(s),
            };
            Ok(match r {
                Ok(r) => outcome(tensor_witness(&r)),
                Err(e) => fail(check, fock_detail(e)),
            })
        }
        (Check::Fermionic, Subject::Pair { states: Some((s0, s1)), .. }) => Ok(match fermionic_mdkp_residual(s0, s1) {
            Ok(r) => outcome(tensor_witness(&r)),
            Err(e) => fail(check, fock_detail(e)),
        }),
        (Check::Annihilator, Subject::Single { state: Some(s), .. }) => {
            if s.is_zero() {
                return Ok(fail(check, "the generator product is the zero vector"));
            }
            let w = window_above(s.algebra(), &[s]);
            let expected = window_modes(w).len() / 2;
            let dim = annihilator_dim(s, w).map_err(|e| VerifyError::Input(e.to_string()))?;
            Ok(if dim == expected {
                pass(check)
            } else {
                fail(check, format!("dim Ann tau = {dim} on the window |j| <= {w}, expected {expected}"))
            })
        }
        (Check::Annihilator, Subject::Pair { states: Some((s0, s1)), .. }) => {
            if s0.is_zero() || s1.is_zero() {
                return Ok(fail(check, "a generator product is the zero vector"));
            }
            let w = window_above(Algebra::D, &[s0, s1]);
            let dim = annihilator_quotient_dim(s0, s1, w).map_err(|e| VerifyError::Input(e.to_string()))?;
            Ok(if dim == 2 {
                pass(check)
            } else {
                fail(check, format!("dim (Ann tau0 + Ann tau1)/(Ann tau0 ∩ Ann tau1) = {dim}, expected 2"))
            })
        }
    }
}

/// Runs the requested checks, reported in order of check name.
///
/// Every requested check is validated for availability before any runs.
pub fn run_checks(subject: &Subject, checks: &[Check]) -> Result<Report, VerifyError> {
    let wanted: BTreeSet<Check> = checks.iter().copied().collect();
    for &c in &wanted {
        let has_states = match subject {
            Subject::Single { state, .. } => state.is_some(),
            Subject::Pair { states, .. } => states.is_some(),
        };
        match c {
            Check::Mdkp if matches!(subject, Subject::Single { .. }) => {
                return Err(unavailable(c, "needs a (tau0, tau1) pair"))
            }
            Check::Fermionic | Check::Annihilator if !has_states => {
                return Err(unavailable(c, "needs generator-form input, which carries the Fock state"))
            }
            _ => {}
        }
    }
    let results = wanted.into_iter().map(|c| run_one(c, subject)).collect::<Result<_, _>>()?;
    Ok(Report { results })
}

/// The checks that make sense for a subject when none are requested.
pub fn default_checks(subject: &Subject) -> Vec<Check> {
    match subject {
        Subject::Single { state: None, .. } => vec![Check::Bkp],
        Subject::Single { state: Some(_), .. } => vec![Check::Annihilator, Check::Bkp, Check::Fermionic],
        Subject::Pair { states: None, .. } => vec![Check::Bkp, Check::Mdkp],
        Subject::Pair { states: Some(_), .. } => Check::ALL.to_vec(),
    }
}
