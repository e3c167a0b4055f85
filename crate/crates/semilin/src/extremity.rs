//! Extreme-point classification of diagonal sections inside each semilinear
//! class.
//!
//! Copula class: δ is extreme iff the set where the ratio δ'(x)/δ(x) lies
//! strictly between 1/x and 2/x has Lebesgue measure zero. Quasi-copula
//! class: extreme iff (δ(x)/x)' equals 0 or 1/x almost everywhere.
//! Semi-copula class: extreme iff δ is a one-jump step diagonal. The
//! measure-zero conditions are operationalized on a deterministic midpoint
//! grid with declared slacks; the excluded origin strip and kink points are
//! accounted separately.

use crate::diagonal::{DiagonalSpec, Side, SpecError};
use crate::numerics::{Tolerance, EPS_ORIGIN};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// How many worst offenders a report keeps.
const MAX_WITNESSES: usize = 4;

#[derive(Debug, Error)]
pub enum ExtremityError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("diagonal is not in the {0} class, classification precondition fails")]
    WrongClass(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremityClass {
    Copula,
    SemiCopula,
    QuasiCopula,
}

/// A grid point that violates the extremity criterion, with the offending
/// ratio or derivative value.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RatioWitness {
    pub x: f64,
    pub value: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtremityReport {
    pub class_tested: ExtremityClass,
    /// Estimated Lebesgue measure of the criterion-violating set.
    pub violating_measure: f64,
    pub verdict: bool,
    /// Mass of the excluded origin strip plus skipped kink points.
    pub excluded_measure: f64,
    pub worst_witnesses: Vec<RatioWitness>,
}

/// Keeps the `MAX_WITNESSES` worst witnesses by violation margin.
struct TopWitnesses {
    entries: Vec<(f64, RatioWitness)>,
}

impl TopWitnesses {
    fn new() -> Self {
        TopWitnesses {
            entries: Vec::new(),
        }
    }

    fn push(&mut self, margin: f64, w: RatioWitness) {
        self.entries.push((margin, w));
        self.entries.sort_by(|a, b| b.0.total_cmp(&a.0));
        self.entries.truncate(MAX_WITNESSES);
    }

    fn into_vec(self) -> Vec<RatioWitness> {
        self.entries.into_iter().map(|(_, w)| w).collect()
    }
}

/// Shared midpoint-grid scan of a pointwise criterion over (EPS_ORIGIN, 1].
fn scan_measure<F>(
    spec: &DiagonalSpec,
    tol: &Tolerance,
    mut violation: F,
) -> (f64, f64, Vec<RatioWitness>)
where
    F: FnMut(f64) -> Option<(f64, f64)>, // x -> (margin, offending value) if violating
{
    let n = tol.grid_n;
    let kinks = spec.kinks();
    let mut violating = 0usize;
    let mut excluded = 0usize;
    let mut top = TopWitnesses::new();
    for k in 1..=n {
        let x = (k as f64 - 0.5) / n as f64;
        if x <= EPS_ORIGIN {
            excluded += 1;
            continue;
        }
        if kinks
            .iter()
            .any(|&kk| (x - kk).abs() <= crate::diagonal::KINK_EXCLUSION)
        {
            excluded += 1;
            continue;
        }
        if let Some((margin, value)) = violation(x) {
            violating += 1;
            top.push(margin, RatioWitness { x, value });
        }
    }
    (
        violating as f64 / n as f64,
        excluded as f64 / n as f64,
        top.into_vec(),
    )
}

/// Extremity in the copula class: the violating set is
/// {x : 1/x < δ'(x)/δ(x) < 2/x} with slack eps_pred·(1 + 1/x) on both strict
/// inequalities.
pub fn classify_copula(
    spec: &DiagonalSpec,
    tol: &Tolerance,
) -> Result<ExtremityReport, ExtremityError> {
    let report = crate::diagonal::validate(spec, tol)?;
    if !report.in_copula_class() {
        return Err(ExtremityError::WrongClass("copula"));
    }
    let (violating_measure, excluded_measure, worst) = scan_measure(spec, tol, |x| {
        let ratio = spec.deriv_onesided(x, Side::Right) / spec.eval(x);
        let slack = tol.eps_pred * (1.0 + 1.0 / x);
        let lo_margin = ratio - 1.0 / x;
        let hi_margin = 2.0 / x - ratio;
        if lo_margin > slack && hi_margin > slack {
            Some((lo_margin.min(hi_margin), ratio))
        } else {
            None
        }
    });
    Ok(ExtremityReport {
        class_tested: ExtremityClass::Copula,
        violating_measure,
        verdict: violating_measure <= tol.eps_measure,
        excluded_measure,
        worst_witnesses: worst,
    })
}

/// Extremity in the quasi-copula class: the criterion set is
/// {(δ/x)' = 0} ∪ {(δ/x)' = 1/x}; the report carries the measure of its
/// complement, with equality slack eps_pred·(1 + 1/x).
pub fn classify_quasicopula(
    spec: &DiagonalSpec,
    tol: &Tolerance,
) -> Result<ExtremityReport, ExtremityError> {
    let report = crate::diagonal::validate(spec, tol)?;
    if !report.in_quasicopula_class() {
        return Err(ExtremityError::WrongClass("quasi-copula"));
    }
    let (violating_measure, excluded_measure, worst) = scan_measure(spec, tol, |x| {
        let g = spec.phi_prime_onesided(x, Side::Right);
        let slack = tol.eps_pred * (1.0 + 1.0 / x);
        let at_zero = g.abs() <= slack;
        let at_inv = (g - 1.0 / x).abs() <= slack;
        if at_zero || at_inv {
            None
        } else {
            Some((g.abs().min((g - 1.0 / x).abs()), g))
        }
    });
    Ok(ExtremityReport {
        class_tested: ExtremityClass::QuasiCopula,
        violating_measure,
        verdict: violating_measure <= tol.eps_measure,
        excluded_measure,
        worst_witnesses: worst,
    })
}

/// Extremity in the semi-copula class is structural: the diagonal must equal
/// a one-jump step function δ_a (zero below the jump, x from it on) pointwise
/// on the grid.
pub fn classify_semicopula(
    spec: &DiagonalSpec,
    tol: &Tolerance,
) -> Result<ExtremityReport, ExtremityError> {
    let report = crate::diagonal::validate(spec, tol)?;
    if !report.in_semicopula_class() {
        return Err(ExtremityError::WrongClass("semi-copula"));
    }
    let n = tol.grid_n;
    let mut bad = 0usize;
    let mut switched = false;
    let mut monotone_switch = true;
    let mut top = TopWitnesses::new();
    for k in 1..=n {
        let x = k as f64 / n as f64;
        let d = spec.eval(x);
        let eps = (tol.eps_pred * x).max(1e-12);
        let is_zero = d.abs() <= eps;
        let is_id = (d - x).abs() <= eps;
        if is_id {
            switched = true;
        } else if is_zero {
            if switched {
                // a zero after identity points is a second jump
                monotone_switch = false;
            }
        } else {
            bad += 1;
            top.push(d.min(x - d), RatioWitness { x, value: d });
        }
    }
    let violating_measure = bad as f64 / n as f64;
    Ok(ExtremityReport {
        class_tested: ExtremityClass::SemiCopula,
        violating_measure,
        verdict: bad == 0 && monotone_switch,
        excluded_measure: 0.0,
        worst_witnesses: top.into_vec(),
    })
}

/// Floor of the admissible quasi-copula region: ψ(t) = max(0, t + t·ln t),
/// the positive part of the envelope every quasi-class diagonal dominates.
pub fn quasi_envelope(t: f64) -> f64 {
    assert!((0.0..=1.0).contains(&t), "t = {t} outside [0,1]");
    crate::diagonal::envelope_raw(t).max(0.0)
}
