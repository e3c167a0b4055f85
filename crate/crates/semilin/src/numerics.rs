//! Shared numerical kernel: composite Simpson quadrature (1D/2D), central
//! finite differences, and deterministic Lebesgue-measure estimation of
//! predicate sets on the unit interval.
//!
//! Everything here is fixed-resolution on purpose: results must be
//! bit-reproducible across runs, so there is no adaptivity anywhere.

use serde::{Deserialize, Serialize};
use std::io::{self, Write};
use thiserror::Error;

/// Default panel count for 1D composite Simpson.
pub const DEFAULT_QUAD_PANELS: usize = 2048;
/// Default per-axis panel count for 2D product Simpson.
pub const DEFAULT_QUAD_PANELS_2D: usize = 512;
/// Default resolution of the deterministic evaluation/measure grids.
pub const DEFAULT_GRID_N: usize = 10_000;
/// Left cutoff for derivative-based criterion predicates: the ratios 1/x and
/// 2/x blow up at the origin, so predicates are evaluated on (EPS_ORIGIN, 1]
/// and the excluded strip is reported separately.
pub const EPS_ORIGIN: f64 = 1e-4;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("integrand is not finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },
    #[error("invalid quadrature setup: {0}")]
    BadQuadrature(String),
    #[error("numerical domain error: {0}")]
    Domain(String),
}

/// Tolerance knobs shared by validation, extremity classification and the
/// quadrature oracles. All slacks are absolute unless noted otherwise.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Tolerance {
    /// Slack for monotonicity comparisons on consecutive grid ratios.
    pub eps_mono: f64,
    /// Threshold under which an estimated Lebesgue measure counts as zero.
    pub eps_measure: f64,
    /// Base slack for pointwise criterion predicates; ratio comparisons scale
    /// it by (1 + 1/x) to stay meaningful near the origin.
    pub eps_pred: f64,
    /// Tolerance for detecting contact with the quasi-copula envelope.
    pub eps_contact: f64,
    /// Finite-difference step.
    pub h_diff: f64,
    /// Composite Simpson panel count (must be even).
    pub quad_n: usize,
    /// Resolution of the deterministic grids used by class and measure checks.
    pub grid_n: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps_mono: 1e-9,
            eps_measure: 1e-3,
            eps_pred: 1e-6,
            eps_contact: 1e-10,
            h_diff: 1e-6,
            quad_n: DEFAULT_QUAD_PANELS,
            grid_n: DEFAULT_GRID_N,
        }
    }
}

impl Tolerance {
    pub fn check(&self) -> Result<(), NumericsError> {
        let fields = [
            ("eps_mono", self.eps_mono),
            ("eps_measure", self.eps_measure),
            ("eps_pred", self.eps_pred),
            ("eps_contact", self.eps_contact),
            ("h_diff", self.h_diff),
        ];
        for (name, v) in fields {
            if !v.is_finite() || v <= 0.0 {
                return Err(NumericsError::Domain(format!(
                    "tolerance field {name} must be strictly positive, got {v}"
                )));
            }
        }
        if self.quad_n == 0 || self.quad_n % 2 != 0 {
            return Err(NumericsError::BadQuadrature(format!(
                "quad_n must be a positive even panel count, got {}",
                self.quad_n
            )));
        }
        if self.grid_n == 0 {
            return Err(NumericsError::Domain("grid_n must be positive".into()));
        }
        Ok(())
    }
}

/// What a grid holds; node grids carry (n+1)² values, cell grids n².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridKind {
    Surface,
    CellVolume,
    Asymmetry,
}

/// Rectangular grid of real values over the unit square.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridMap {
    pub n: usize,
    pub kind: GridKind,
    pub values: Vec<f64>,
}

impl GridMap {
    pub fn new(n: usize, kind: GridKind) -> Self {
        let side = Self::side_for(n, kind);
        GridMap {
            n,
            kind,
            values: vec![0.0; side * side],
        }
    }

    fn side_for(n: usize, kind: GridKind) -> usize {
        match kind {
            GridKind::Surface | GridKind::Asymmetry => n + 1,
            GridKind::CellVolume => n,
        }
    }

    /// Number of entries per axis.
    pub fn side(&self) -> usize {
        Self::side_for(self.n, self.kind)
    }

    /// Coordinate of index `i` along one axis: node i/n, or the lower corner
    /// of cell i for cell grids.
    pub fn coord(&self, i: usize) -> f64 {
        i as f64 / self.n as f64
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.side() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let s = self.side();
        self.values[i * s + j] = v;
    }

    /// Row-major CSV with header `u,v,value`; numbers carry 17 significant
    /// digits so grid artifacts diff cleanly.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "u,v,value")?;
        let side = self.side();
        for i in 0..side {
            for j in 0..side {
                writeln!(
                    w,
                    "{},{},{}",
                    fmt17(self.coord(i)),
                    fmt17(self.coord(j)),
                    fmt17(self.get(i, j))
                )?;
            }
        }
        Ok(())
    }
}

/// Formats with 17 significant digits (shortest exact round-trip superset).
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Compensated (Kahan) accumulator; keeps quadrature sums reproducible and
/// well below the 1e-12 linearity/additivity tolerances.
#[derive(Clone, Copy, Default)]
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Composite Simpson on [a, b] with `panels` subintervals (even). Exact for
/// cubics on each panel pair.
pub fn integrate_1d<F>(f: F, a: f64, b: f64, panels: usize) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    if !a.is_finite() || !b.is_finite() || a > b {
        return Err(NumericsError::BadQuadrature(format!(
            "invalid interval [{a}, {b}]"
        )));
    }
    if panels < 2 || panels % 2 != 0 {
        return Err(NumericsError::BadQuadrature(format!(
            "panel count must be even and >= 2, got {panels}"
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    let h = (b - a) / panels as f64;
    let eval = |x: f64| -> Result<f64, NumericsError> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(NumericsError::NonFiniteIntegrand { x })
        }
    };
    let mut acc = Kahan::default();
    acc.add(eval(a)?);
    acc.add(eval(b)?);
    for k in 1..panels {
        let x = a + h * k as f64;
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc.add(w * eval(x)?);
    }
    Ok(acc.sum * h / 3.0)
}

/// Composite Simpson on [a, b] with the interval split at the interior
/// `cuts`, so integrands that are only piecewise smooth keep full Simpson
/// accuracy. Each piece receives panels proportional to its length (at least
/// 16, rounded up to even); `cuts` outside (a, b) are ignored.
pub fn integrate_1d_cuts<F>(
    f: F,
    a: f64,
    b: f64,
    panels: usize,
    cuts: &[f64],
) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    let mut edges: Vec<f64> = cuts.iter().copied().filter(|&c| c > a && c < b).collect();
    edges.sort_by(f64::total_cmp);
    edges.dedup();
    edges.insert(0, a);
    edges.push(b);
    let mut acc = Kahan::default();
    for w in edges.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi <= lo {
            continue;
        }
        let mut n = (panels as f64 * (hi - lo) / (b - a)).ceil() as usize;
        n = n.max(16);
        if n % 2 == 1 {
            n += 1;
        }
        acc.add(integrate_1d(&f, lo, hi, n)?);
    }
    Ok(acc.sum)
}

/// Product composite Simpson over the unit square with `panels` subintervals
/// per axis.
pub fn integrate_2d<F>(f: F, panels: usize) -> Result<f64, NumericsError>
where
    F: Fn(f64, f64) -> f64,
{
    if panels < 2 || panels % 2 != 0 {
        return Err(NumericsError::BadQuadrature(format!(
            "panel count must be even and >= 2, got {panels}"
        )));
    }
    let h = 1.0 / panels as f64;
    let weight = |k: usize| -> f64 {
        if k == 0 || k == panels {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        }
    };
    let mut acc = Kahan::default();
    for i in 0..=panels {
        let u = i as f64 * h;
        let wi = weight(i);
        let mut row = Kahan::default();
        for j in 0..=panels {
            let v = j as f64 * h;
            let val = f(u, v);
            if !val.is_finite() {
                return Err(NumericsError::NonFiniteIntegrand { x: u });
            }
            row.add(weight(j) * val);
        }
        acc.add(wi * row.sum);
    }
    Ok(acc.sum * h * h / 9.0)
}

/// Central difference (f(x+h) - f(x-h)) / 2h on the open unit interval.
/// Callers are expected to keep declared kinks out of `x`.
pub fn derivative<F>(f: F, x: f64, h: f64) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    if !(x > 0.0 && x < 1.0) {
        return Err(NumericsError::Domain(format!(
            "derivative point must lie in (0,1), got {x}"
        )));
    }
    if !h.is_finite() || h <= 0.0 || h >= x.min(1.0 - x) {
        return Err(NumericsError::Domain(format!(
            "step h = {h} must satisfy 0 < h < min(x, 1-x) at x = {x}"
        )));
    }
    let (lo, hi) = (f(x - h), f(x + h));
    if !lo.is_finite() || !hi.is_finite() {
        return Err(NumericsError::NonFiniteIntegrand { x });
    }
    Ok((hi - lo) / (2.0 * h))
}

/// Fraction of the deterministic midpoint grid {(k - 1/2)/n} satisfying the
/// predicate. Deterministic for a fixed n; error for an interval [a,b] is at
/// most 2/n.
pub fn estimate_measure<P>(pred: P, n: usize) -> f64
where
    P: Fn(f64) -> bool,
{
    assert!(n >= 1000, "measure estimation needs n >= 1000, got {n}");
    let mut hits = 0usize;
    for k in 1..=n {
        let x = (k as f64 - 0.5) / n as f64;
        if pred(x) {
            hits += 1;
        }
    }
    hits as f64 / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn simpson_linear_is_exact() {
        let v = integrate_1d(|x| x, 0.0, 1.0, 16).unwrap();
        assert!((v - 0.5).abs() <= 1e-15, "got {v}");
    }

    #[test]
    fn simpson_exact_on_cubics() {
        let v = integrate_1d(|x| x * x, 0.0, 1.0, 16).unwrap();
        assert!((v - 1.0 / 3.0).abs() <= 1e-15, "got {v}");
        let c = integrate_1d(|x| 4.0 * x * x * x - x, 0.0, 1.0, 2).unwrap();
        assert!((c - 0.5).abs() <= 1e-15, "got {c}");
    }

    #[test]
    fn simpson_converges_on_log_integrand() {
        // antiderivative of 1 + ln x is x ln x, so the integral over
        // [1/e, 1] is exactly 1/e
        let a = (-1.0f64).exp();
        let v = integrate_1d(|x| 1.0 + x.ln(), a, 1.0, 2048).unwrap();
        assert!((v - a).abs() <= 1e-12, "got {v}, want {a}");
    }

    #[test]
    fn simpson_rejects_non_finite() {
        let err = integrate_1d(|x| (x - 0.5).ln(), 0.0, 1.0, 16).unwrap_err();
        match err {
            NumericsError::NonFiniteIntegrand { x } => assert!(x <= 0.5),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn simpson_rejects_odd_panels() {
        assert!(integrate_1d(|x| x, 0.0, 1.0, 7).is_err());
    }

    #[test]
    fn product_simpson_matches_separable() {
        let v = integrate_2d(|u, w| u * w, 64).unwrap();
        assert!((v - 0.25).abs() <= 1e-14, "got {v}");
    }

    #[test]
    fn central_difference_examples() {
        let d = derivative(|x| x * x, 0.5, 1e-6).unwrap();
        assert!((d - 1.0).abs() <= 1e-9, "got {d}");
        let kinked = |x: f64| (0.5 * x).max(x * x);
        let d = derivative(kinked, 0.25, 1e-4).unwrap();
        assert!((d - 0.5).abs() <= 1e-12, "got {d}");
        let d = derivative(|_| 0.7, 0.3, 1e-5).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn derivative_domain_checks() {
        assert!(derivative(|x| x, 0.0, 1e-6).is_err());
        assert!(derivative(|x| x, 0.5, 0.6).is_err());
    }

    #[test]
    fn measure_of_constants_and_intervals() {
        assert_eq!(estimate_measure(|_| true, 1000), 1.0);
        assert_eq!(estimate_measure(|_| false, 1000), 0.0);
        let m = estimate_measure(|x| x < 0.3, 10_000);
        assert!((m - 0.3).abs() <= 2.0 / 10_000.0, "got {m}");
    }

    #[test]
    fn tolerance_default_is_valid() {
        Tolerance::default().check().unwrap();
        let bad = Tolerance {
            quad_n: 3,
            ..Default::default()
        };
        assert!(bad.check().is_err());
    }

    #[test]
    fn grid_csv_shape() {
        let mut g = GridMap::new(2, GridKind::Surface);
        g.set(1, 2, 0.5);
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("u,v,value"));
        assert_eq!(text.lines().count(), 1 + 9);
        assert!(text.contains("5.0000000000000000e-1"));
    }

    proptest! {
        // linearity in the integrand and additivity over adjacent intervals,
        // on random cubics where Simpson is exact
        #[test]
        fn simpson_linear_and_additive(
            a0 in -2.0..2.0f64, a1 in -2.0..2.0f64,
            a2 in -2.0..2.0f64, a3 in -2.0..2.0f64,
            b0 in -2.0..2.0f64, b1 in -2.0..2.0f64,
            lam in -3.0..3.0f64, split in 0.1..0.9f64,
        ) {
            let f = move |x: f64| a0 + a1 * x + a2 * x * x + a3 * x * x * x;
            let g = move |x: f64| b0 + b1 * x;
            let combo = move |x: f64| f(x) + lam * g(x);

            let i_f = integrate_1d(f, 0.0, 1.0, 64).unwrap();
            let i_g = integrate_1d(g, 0.0, 1.0, 64).unwrap();
            let i_c = integrate_1d(combo, 0.0, 1.0, 64).unwrap();
            prop_assert!((i_c - (i_f + lam * i_g)).abs() <= 1e-12);

            let left = integrate_1d(f, 0.0, split, 64).unwrap();
            let right = integrate_1d(f, split, 1.0, 64).unwrap();
            prop_assert!((left + right - i_f).abs() <= 1e-12);
        }

        #[test]
        fn quadratic_derivative_is_exact(x in 0.05..0.95f64, h in 1e-7..1e-3f64) {
            let h = h.min(0.5 * x.min(1.0 - x));
            let d = derivative(|t| 3.0 * t * t - t, x, h).unwrap();
            prop_assert!((d - (6.0 * x - 1.0)).abs() <= 1e-8);
        }

        #[test]
        fn interval_measure_converges(a in 0.0..0.5f64, b in 0.5..1.0f64) {
            let m = estimate_measure(|x| x >= a && x <= b, 10_000);
            prop_assert!((m - (b - a)).abs() <= 2.0 / 10_000.0);
        }
    }
}
