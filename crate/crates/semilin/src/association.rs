//! Rank-based association measures for semilinear copulas.
//!
//! For the extreme family δ_m the three measures have closed forms
//! ρ = m⁴, footrule = m³ and a piecewise cubic for Gini's gamma; a mixture
//! integrates those forms against its measure. The quadrature route uses the
//! standard integral definitions and serves as the independent oracle:
//! ρ = 12·∬C − 3, footrule = 6·∫C(t,t)dt − 2,
//! γ = 4·(∫C(u,1−u)du − ∫(u − C(u,u))du).

use crate::choquet::DiscreteMeasure;
use crate::numerics::{self, Tolerance, DEFAULT_QUAD_PANELS_2D};
use crate::semilinear::{ObjectClass, SemilinearObject};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AssociationError {
    #[error("numeric association measures need a copula-class object, found {0:?}")]
    NotACopula(ObjectClass),
    #[error(transparent)]
    Numerics(#[from] numerics::NumericsError),
}

/// Spearman's rho, Gini's gamma and the Spearman footrule coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureTriple {
    pub rho: f64,
    pub gamma: f64,
    pub footrule: f64,
}

impl MeasureTriple {
    pub fn max_abs_diff(&self, other: &MeasureTriple) -> f64 {
        (self.rho - other.rho)
            .abs()
            .max((self.gamma - other.gamma).abs())
            .max((self.footrule - other.footrule).abs())
    }
}

/// Gini's gamma of the extreme copula with parameter m; both branches meet at
/// m = 1/2 with value 1/12.
fn gamma_extreme(m: f64) -> f64 {
    let m3 = m * m * m;
    if m <= 0.5 {
        2.0 * m3 / 3.0
    } else {
        -2.0 * m3 / 3.0 + 4.0 * m * m - 3.0 * m + 2.0 / 3.0
    }
}

/// Closed forms for the extreme copula generated by δ_m.
pub fn closed_form_extreme(m: f64) -> MeasureTriple {
    assert!((0.0..=1.0).contains(&m), "m = {m} outside [0,1]");
    MeasureTriple {
        rho: m.powi(4),
        gamma: gamma_extreme(m),
        footrule: m.powi(3),
    }
}

/// Mixture closed forms: each measure integrates its extreme form against μ.
pub fn closed_form_mixture(mu: &DiscreteMeasure) -> MeasureTriple {
    let mut t = MeasureTriple {
        rho: 0.0,
        gamma: 0.0,
        footrule: 0.0,
    };
    for a in mu.atoms() {
        let e = closed_form_extreme(a.m);
        t.rho += a.w * e.rho;
        t.gamma += a.w * e.gamma;
        t.footrule += a.w * e.footrule;
    }
    t
}

/// Quadrature route for any copula-class object: nested composite Simpson
/// for the double integral, 1D composite Simpson on the two diagonals for
/// the rest. C is only piecewise smooth (its gradient kinks along u = v and
/// along the δ-kink lines), so every integral splits its panels at those
/// abscissae; each piece is then smooth and keeps full Simpson order.
pub fn numeric_measures(
    obj: &SemilinearObject,
    tol: &Tolerance,
) -> Result<MeasureTriple, AssociationError> {
    if obj.class() != ObjectClass::Copula {
        return Err(AssociationError::NotACopula(obj.class()));
    }
    let kinks: Vec<f64> = obj
        .diag()
        .kinks()
        .into_iter()
        .filter(|k| *k > 0.0 && *k < 1.0)
        .collect();

    let double = {
        let inner = |v: f64| -> Result<f64, AssociationError> {
            let mut cuts = kinks.clone();
            cuts.push(v);
            Ok(numerics::integrate_1d_cuts(
                |u| obj.eval(u, v),
                0.0,
                1.0,
                DEFAULT_QUAD_PANELS_2D,
                &cuts,
            )?)
        };
        // outer integrand is C¹ except at the δ kinks; split there too
        let mut acc = 0.0;
        let mut edges = kinks.clone();
        edges.sort_by(f64::total_cmp);
        edges.insert(0, 0.0);
        edges.push(1.0);
        for w in edges.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            if hi <= lo {
                continue;
            }
            let mut n = (DEFAULT_QUAD_PANELS_2D as f64 * (hi - lo)).ceil() as usize;
            n = n.max(16);
            if n % 2 == 1 {
                n += 1;
            }
            let h = (hi - lo) / n as f64;
            let mut sum = inner(lo)? + inner(hi)?;
            for k in 1..n {
                let w = if k % 2 == 1 { 4.0 } else { 2.0 };
                sum += w * inner(lo + h * k as f64)?;
            }
            acc += sum * h / 3.0;
        }
        acc
    };

    let on_diag = numerics::integrate_1d_cuts(|t| obj.eval(t, t), 0.0, 1.0, tol.quad_n, &kinks)?;
    let anti_cuts: Vec<f64> = kinks
        .iter()
        .flat_map(|&k| [k, 1.0 - k])
        .chain([0.5])
        .collect();
    let anti_diag =
        numerics::integrate_1d_cuts(|t| obj.eval(t, 1.0 - t), 0.0, 1.0, tol.quad_n, &anti_cuts)?;
    Ok(MeasureTriple {
        rho: 12.0 * double - 3.0,
        gamma: 4.0 * (anti_diag - (0.5 - on_diag)),
        footrule: 6.0 * on_diag - 2.0,
    })
}

/// Empirical Spearman's rho of a sample, via ranks (no tie correction; ties
/// have probability zero for the continuous samples this library draws).
pub fn empirical_spearman_rho(pairs: &[(f64, f64)]) -> f64 {
    let n = pairs.len();
    assert!(n >= 2, "need at least two pairs");
    let rank = |key: fn(&(f64, f64)) -> f64| -> Vec<f64> {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| key(&pairs[a]).total_cmp(&key(&pairs[b])));
        let mut r = vec![0.0; n];
        for (pos, &i) in idx.iter().enumerate() {
            r[i] = pos as f64 + 1.0;
        }
        r
    };
    let ru = rank(|p| p.0);
    let rv = rank(|p| p.1);
    let nf = n as f64;
    let d2: f64 = ru.iter().zip(&rv).map(|(a, b)| (a - b) * (a - b)).sum();
    1.0 - 6.0 * d2 / (nf * (nf * nf - 1.0))
}

/// Kolmogorov–Smirnov statistic sup |F_n(x) − x| against the uniform law on
/// [0,1].
pub fn ks_uniform_statistic(xs: &[f64]) -> f64 {
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let lo = x - i as f64 / n;
        let hi = (i as f64 + 1.0) / n - x;
        d = d.max(lo).max(hi);
    }
    d
}

/// Asymptotic KS acceptance threshold at level alpha: c(alpha)/sqrt(n) with
/// c = sqrt(-ln(alpha/2)/2).
pub fn ks_uniform_threshold(n: usize, alpha: f64) -> f64 {
    (-(alpha / 2.0).ln() / 2.0).sqrt() / (n as f64).sqrt()
}
