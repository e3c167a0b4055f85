//! Finite representations of diagonal sections and their class membership.
//!
//! A diagonal section is a function δ on [0,1] with δ(0)=0, δ(1)=1,
//! nondecreasing, δ(t) ≤ t and 2-Lipschitz. Which semilinear object the
//! section generates is decided by ratio conditions: φ(x) = δ(x)/x
//! nondecreasing puts it in the semi-copula class, adding the 2-Lipschitz
//! bound and the secant cap x₁·(φ(x₂)−φ(x₁))/(x₂−x₁) ≤ 1 yields a
//! quasi-copula, and η(x) = δ(x)/x² nonincreasing yields a genuine copula.

use crate::choquet::{self, DiscreteMeasure};
use crate::numerics::Tolerance;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact-endpoint tolerance for δ(0) = 0 and δ(1) = 1.
const EPS_ENDPOINT: f64 = 1e-12;
/// Points closer than this to a declared kink are skipped by derivative
/// predicates; a finite set has measure zero.
pub(crate) const KINK_EXCLUSION: f64 = 1e-9;
/// Subgrid side for the redundant all-pairs secant scan.
const PAIR_SUBGRID: usize = 256;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("parameter {name} = {value} outside {range}")]
    BadParam {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("malformed tabulated knots: {0}")]
    BadKnots(String),
    #[error(transparent)]
    Measure(#[from] choquet::ChoquetError),
}

#[derive(Debug, Error)]
pub enum DerivError {
    #[error("derivative requested at declared kink t = {t}")]
    AtKink { t: f64 },
    #[error("derivative point t = {t} outside (0,1)")]
    OutOfDomain { t: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepSide {
    Right,
    Left,
}

/// Finite description of a diagonal section.
///
/// JSON wire format (consumed by the CLI):
/// `{"variant":"m","m":0.5}`, `{"variant":"p","p":0.8}`,
/// `{"variant":"beta","beta":0.5}`, `{"variant":"step","side":"right","a":0.4}`,
/// `{"variant":"mixture","atoms":[{"m":0.0,"w":0.5},{"m":1.0,"w":0.5}]}`,
/// `{"variant":"tabulated","knots":[[0,0],[0.5,0.3],[1,1]]}`,
/// `{"variant":"reflected","inner":{...}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum DiagonalSpec {
    /// δ_m(t) = max(mt, t²); m = 0 is the independence diagonal t², m = 1 the
    /// comonotone diagonal t.
    #[serde(rename = "m")]
    FamilyM { m: f64 },
    /// δ^(p)(t) = min(t²/p, t).
    #[serde(rename = "p")]
    FamilyP { p: f64 },
    /// δ_β(t) = βt below e^(β−1), then t + t·ln t.
    #[serde(rename = "beta")]
    FamilyBeta { beta: f64 },
    /// One-jump step diagonal: 0 below a and t from a on (right), or 0 up to
    /// and including a (left).
    #[serde(rename = "step")]
    Step { side: StepSide, a: f64 },
    /// Mixture over the δ_m family driven by a discrete probability measure.
    #[serde(rename = "mixture")]
    Mixture {
        #[serde(flatten)]
        measure: DiscreteMeasure,
    },
    /// Piecewise-linear interpolation between knots.
    #[serde(rename = "tabulated")]
    Tabulated { knots: Vec<(f64, f64)> },
    /// δ(t) = inner(1−t) + 2t − 1, the diagonal a lower semilinear object
    /// inherits from an upper one.
    #[serde(rename = "reflected")]
    Reflected { inner: Box<DiagonalSpec> },
}

impl DiagonalSpec {
    pub fn family_m(m: f64) -> Result<Self, SpecError> {
        let s = DiagonalSpec::FamilyM { m };
        s.check()?;
        Ok(s)
    }

    pub fn family_p(p: f64) -> Result<Self, SpecError> {
        let s = DiagonalSpec::FamilyP { p };
        s.check()?;
        Ok(s)
    }

    pub fn family_beta(beta: f64) -> Result<Self, SpecError> {
        let s = DiagonalSpec::FamilyBeta { beta };
        s.check()?;
        Ok(s)
    }

    pub fn step(side: StepSide, a: f64) -> Result<Self, SpecError> {
        let s = DiagonalSpec::Step { side, a };
        s.check()?;
        Ok(s)
    }

    pub fn mixture(measure: DiscreteMeasure) -> Self {
        DiagonalSpec::Mixture { measure }
    }

    pub fn tabulated(knots: Vec<(f64, f64)>) -> Result<Self, SpecError> {
        let s = DiagonalSpec::Tabulated { knots };
        s.check()?;
        Ok(s)
    }

    /// Identity diagonal δ(t) = t (the comonotone diagonal).
    pub fn identity() -> Self {
        DiagonalSpec::FamilyM { m: 1.0 }
    }

    /// Independence diagonal δ(t) = t².
    pub fn independence() -> Self {
        DiagonalSpec::FamilyM { m: 0.0 }
    }

    /// Structural validation of parameters and knot layout. Value-level
    /// conditions (endpoints, monotonicity) are the business of `validate`,
    /// so a tabulated spec with a bad endpoint still parses and gets a report.
    pub fn check(&self) -> Result<(), SpecError> {
        match self {
            DiagonalSpec::FamilyM { m } => {
                if !m.is_finite() || !(0.0..=1.0).contains(m) {
                    return Err(SpecError::BadParam {
                        name: "m",
                        value: *m,
                        range: "[0,1]",
                    });
                }
            }
            DiagonalSpec::FamilyP { p } => {
                if !p.is_finite() || !(*p > 0.0 && *p <= 1.0) {
                    return Err(SpecError::BadParam {
                        name: "p",
                        value: *p,
                        range: "(0,1]",
                    });
                }
            }
            DiagonalSpec::FamilyBeta { beta } => {
                if !beta.is_finite() || !(0.0..1.0).contains(beta) {
                    return Err(SpecError::BadParam {
                        name: "beta",
                        value: *beta,
                        range: "[0,1)",
                    });
                }
            }
            DiagonalSpec::Step { a, .. } => {
                if !a.is_finite() || !(0.0..=1.0).contains(a) {
                    return Err(SpecError::BadParam {
                        name: "a",
                        value: *a,
                        range: "[0,1]",
                    });
                }
            }
            DiagonalSpec::Mixture { .. } => {
                // the measure validated itself at construction
            }
            DiagonalSpec::Tabulated { knots } => {
                if knots.len() < 2 {
                    return Err(SpecError::BadKnots("need at least two knots".into()));
                }
                if knots[0].0 != 0.0 {
                    return Err(SpecError::BadKnots(format!(
                        "first knot abscissa must be 0, got {}",
                        knots[0].0
                    )));
                }
                if knots[knots.len() - 1].0 != 1.0 {
                    return Err(SpecError::BadKnots(format!(
                        "last knot abscissa must be 1, got {}",
                        knots[knots.len() - 1].0
                    )));
                }
                for w in knots.windows(2) {
                    if w[1].0 <= w[0].0 {
                        return Err(SpecError::BadKnots(format!(
                            "knot abscissae must be strictly increasing, got {} then {}",
                            w[0].0, w[1].0
                        )));
                    }
                }
                if knots.iter().any(|k| !k.0.is_finite() || !k.1.is_finite()) {
                    return Err(SpecError::BadKnots("non-finite knot".into()));
                }
            }
            DiagonalSpec::Reflected { inner } => inner.check()?,
        }
        Ok(())
    }

    /// δ(t). Panics outside [0,1].
    pub fn eval(&self, t: f64) -> f64 {
        assert!(
            (0.0..=1.0).contains(&t),
            "diagonal evaluated at t = {t} outside [0,1]"
        );
        match self {
            DiagonalSpec::FamilyM { m } => (m * t).max(t * t),
            DiagonalSpec::FamilyP { p } => (t * t / p).min(t),
            DiagonalSpec::FamilyBeta { beta } => {
                let a = (beta - 1.0).exp();
                if t < a {
                    beta * t
                } else {
                    t + t * t.ln()
                }
            }
            DiagonalSpec::Step { side, a } => match side {
                StepSide::Right => {
                    if t < *a {
                        0.0
                    } else {
                        t
                    }
                }
                StepSide::Left => {
                    if t <= *a {
                        0.0
                    } else {
                        t
                    }
                }
            },
            DiagonalSpec::Mixture { measure } => choquet::mixture_diagonal(measure, t),
            DiagonalSpec::Tabulated { knots } => {
                let k = knots.partition_point(|&(x, _)| x <= t);
                if k == 0 {
                    return knots[0].1;
                }
                if k == knots.len() {
                    return knots[knots.len() - 1].1;
                }
                let (x0, y0) = knots[k - 1];
                let (x1, y1) = knots[k];
                y0 + (y1 - y0) * (t - x0) / (x1 - x0)
            }
            DiagonalSpec::Reflected { inner } => inner.eval(1.0 - t) + 2.0 * t - 1.0,
        }
    }

    /// φ(t) = δ(t)/t for t > 0.
    pub fn phi(&self, t: f64) -> f64 {
        assert!(t > 0.0, "phi needs t > 0, got {t}");
        self.eval(t) / t
    }

    /// η(t) = δ(t)/t² for t > 0.
    pub fn eta(&self, t: f64) -> f64 {
        assert!(t > 0.0, "eta needs t > 0, got {t}");
        self.eval(t) / (t * t)
    }

    /// Abscissae where the derivative branches switch (or jump).
    pub fn kinks(&self) -> Vec<f64> {
        match self {
            DiagonalSpec::FamilyM { m } => vec![*m],
            DiagonalSpec::FamilyP { p } => vec![*p],
            DiagonalSpec::FamilyBeta { beta } => vec![(beta - 1.0).exp()],
            DiagonalSpec::Step { a, .. } => vec![*a],
            DiagonalSpec::Mixture { measure } => measure.atoms().iter().map(|a| a.m).collect(),
            DiagonalSpec::Tabulated { knots } => {
                knots[1..knots.len() - 1].iter().map(|&(x, _)| x).collect()
            }
            DiagonalSpec::Reflected { inner } => {
                inner.kinks().into_iter().map(|x| 1.0 - x).collect()
            }
        }
    }

    /// Closed-form branch derivative at interior points away from kinks.
    pub fn deriv(&self, t: f64) -> Result<f64, DerivError> {
        if !(t > 0.0 && t < 1.0) {
            return Err(DerivError::OutOfDomain { t });
        }
        if self
            .kinks()
            .iter()
            .any(|&k| (t - k).abs() <= KINK_EXCLUSION)
        {
            return Err(DerivError::AtKink { t });
        }
        Ok(self.deriv_onesided(t, Side::Right))
    }

    /// Branch derivative with an explicit side convention at kinks; total on
    /// (0,1). Used where any selection from the derivative interval is valid
    /// (conditional sampling, measure predicates after kink exclusion).
    pub(crate) fn deriv_onesided(&self, t: f64, side: Side) -> f64 {
        match self {
            DiagonalSpec::FamilyM { m } => {
                if t < *m || (t == *m && side == Side::Left) {
                    *m
                } else {
                    2.0 * t
                }
            }
            DiagonalSpec::FamilyP { p } => {
                if t < *p || (t == *p && side == Side::Left) {
                    2.0 * t / p
                } else {
                    1.0
                }
            }
            DiagonalSpec::FamilyBeta { beta } => {
                let a = (beta - 1.0).exp();
                if t < a || (t == a && side == Side::Left) {
                    *beta
                } else {
                    2.0 + t.ln()
                }
            }
            DiagonalSpec::Step { a, .. } => {
                if t < *a || (t == *a && side == Side::Left) {
                    0.0
                } else {
                    1.0
                }
            }
            DiagonalSpec::Mixture { measure } => measure
                .atoms()
                .iter()
                .map(|atom| {
                    if t < atom.m || (t == atom.m && side == Side::Left) {
                        atom.w * atom.m
                    } else {
                        atom.w * 2.0 * t
                    }
                })
                .sum(),
            DiagonalSpec::Tabulated { knots } => {
                let k = match side {
                    Side::Right => knots.partition_point(|&(x, _)| x <= t),
                    Side::Left => knots.partition_point(|&(x, _)| x < t),
                };
                let k = k.clamp(1, knots.len() - 1);
                let (x0, y0) = knots[k - 1];
                let (x1, y1) = knots[k];
                (y1 - y0) / (x1 - x0)
            }
            DiagonalSpec::Reflected { inner } => 2.0 - inner.deriv_onesided(1.0 - t, side.flip()),
        }
    }

    /// φ'(t) = (t·δ'(t) − δ(t)) / t², same side convention as
    /// `deriv_onesided`.
    pub(crate) fn phi_prime_onesided(&self, t: f64, side: Side) -> f64 {
        (t * self.deriv_onesided(t, side) - self.eval(t)) / (t * t)
    }

    /// Reflection transform δ(t) ↦ δ(1−t) + 2t − 1; an involution.
    pub fn reflect(&self) -> DiagonalSpec {
        match self {
            DiagonalSpec::Reflected { inner } => (**inner).clone(),
            other => DiagonalSpec::Reflected {
                inner: Box::new(other.clone()),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Side {
    Left,
    Right,
}

impl Side {
    fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Which condition a witness violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    D1,
    D2,
    D3,
    D4,
    PhiNondecreasing,
    EtaNonincreasing,
    SlopeCap,
    Envelope,
}

/// Where a violation was observed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessAt {
    Point(f64),
    Pair(f64, f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub at: WitnessAt,
    pub condition: Condition,
    pub magnitude: f64,
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct DiagonalFlags {
    pub d1: bool,
    pub d2: bool,
    pub d3: bool,
    pub d4: bool,
    pub member: bool,
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct CopulaFlags {
    pub phi_nondecreasing: bool,
    pub eta_nonincreasing: bool,
    pub member: bool,
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct SemiCopulaFlags {
    pub member: bool,
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct QuasiCopulaFlags {
    pub two_lipschitz: bool,
    pub phi_nondecreasing: bool,
    pub slope_cap: bool,
    pub envelope_ok: bool,
    pub member: bool,
}

/// Membership verdicts with per-condition diagnostics. The inclusion chain
/// copula ⇒ quasi-copula ⇒ semi-copula holds by construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassReport {
    pub diagonal: DiagonalFlags,
    pub copula: CopulaFlags,
    pub semicopula: SemiCopulaFlags,
    pub quasicopula: QuasiCopulaFlags,
    pub witnesses: Vec<Witness>,
}

impl ClassReport {
    pub fn is_diagonal(&self) -> bool {
        self.diagonal.member
    }
    pub fn in_copula_class(&self) -> bool {
        self.copula.member
    }
    pub fn in_semicopula_class(&self) -> bool {
        self.semicopula.member
    }
    pub fn in_quasicopula_class(&self) -> bool {
        self.quasicopula.member
    }
    /// True when the spec generates nothing: neither a diagonal nor a member
    /// of any semilinear class.
    pub fn is_vacuous(&self) -> bool {
        !self.diagonal.member && !self.semicopula.member
    }
}

/// Tracks the single worst violation per condition.
struct WitnessBook {
    worst: Vec<Option<Witness>>,
}

impl WitnessBook {
    fn new() -> Self {
        WitnessBook {
            worst: vec![None; 8],
        }
    }

    fn idx(c: Condition) -> usize {
        match c {
            Condition::D1 => 0,
            Condition::D2 => 1,
            Condition::D3 => 2,
            Condition::D4 => 3,
            Condition::PhiNondecreasing => 4,
            Condition::EtaNonincreasing => 5,
            Condition::SlopeCap => 6,
            Condition::Envelope => 7,
        }
    }

    fn record(&mut self, at: WitnessAt, condition: Condition, magnitude: f64) {
        let slot = &mut self.worst[Self::idx(condition)];
        if slot.as_ref().is_none_or(|w| magnitude > w.magnitude) {
            *slot = Some(Witness {
                at,
                condition,
                magnitude,
            });
        }
    }

    fn seen(&self, c: Condition) -> bool {
        self.worst[Self::idx(c)].is_some()
    }

    fn into_vec(self) -> Vec<Witness> {
        self.worst.into_iter().flatten().collect()
    }
}

/// Raw quasi-copula envelope x + x·ln x (negative below 1/e); the floor used
/// by `extremity::quasi_envelope` is its positive part.
pub(crate) fn envelope_raw(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x + x * x.ln()
    }
}

/// Gap δ(x) − (x + x·ln x) on the node grid {k/n}; quasi-class diagonals
/// keep it nonnegative, and once it hits zero it stays zero to the right.
pub fn envelope_gap_grid(spec: &DiagonalSpec, n: usize) -> Vec<(f64, f64)> {
    (1..=n)
        .map(|k| {
            let x = k as f64 / n as f64;
            (x, spec.eval(x) - envelope_raw(x))
        })
        .collect()
}

/// Full class-membership validation on the deterministic node grid
/// {k/n, k = 1..n} plus the origin.
pub fn validate(spec: &DiagonalSpec, tol: &Tolerance) -> Result<ClassReport, SpecError> {
    spec.check()?;
    tol.check()
        .map_err(|e| SpecError::BadKnots(e.to_string()))?;
    let n = tol.grid_n;
    let xs: Vec<f64> = (1..=n).map(|k| k as f64 / n as f64).collect();
    let dv: Vec<f64> = xs.iter().map(|&x| spec.eval(x)).collect();
    let d0 = spec.eval(0.0);
    let mut book = WitnessBook::new();

    // D1: endpoints are exact up to representation noise
    if d0.abs() > EPS_ENDPOINT {
        book.record(WitnessAt::Point(0.0), Condition::D1, d0.abs());
    }
    let gap1 = (dv[n - 1] - 1.0).abs();
    if gap1 > EPS_ENDPOINT {
        book.record(WitnessAt::Point(1.0), Condition::D1, gap1);
    }

    // consecutive-pair scans: D2, D4, phi, eta, slope cap
    let mut prev_x = 0.0;
    let mut prev_d = d0;
    let mut prev_phi: Option<f64> = None;
    let mut prev_eta: Option<f64> = None;
    for (&x, &d) in xs.iter().zip(dv.iter()) {
        let dx = x - prev_x;
        let dd = d - prev_d;
        if dd < -tol.eps_mono {
            book.record(WitnessAt::Pair(prev_x, x), Condition::D2, -dd);
        }
        let lip = dd.abs() - 2.0 * dx;
        if lip > tol.eps_mono {
            book.record(WitnessAt::Pair(prev_x, x), Condition::D4, lip);
        }
        let d3 = d - x;
        if d3 > tol.eps_mono {
            book.record(WitnessAt::Point(x), Condition::D3, d3);
        }
        let phi = d / x;
        let eta = d / (x * x);
        if let Some(p) = prev_phi {
            let drop = p - phi;
            if drop > tol.eps_mono {
                book.record(
                    WitnessAt::Pair(prev_x, x),
                    Condition::PhiNondecreasing,
                    drop,
                );
            }
            let secant = prev_x * (phi - p) / dx;
            if secant > 1.0 + tol.eps_mono {
                book.record(
                    WitnessAt::Pair(prev_x, x),
                    Condition::SlopeCap,
                    secant - 1.0,
                );
            }
        }
        if let Some(e) = prev_eta {
            let rise = eta - e;
            if rise > tol.eps_mono {
                book.record(
                    WitnessAt::Pair(prev_x, x),
                    Condition::EtaNonincreasing,
                    rise,
                );
            }
        }
        let env = envelope_raw(x) - d;
        if env > tol.eps_mono {
            book.record(WitnessAt::Point(x), Condition::Envelope, env);
        }
        prev_x = x;
        prev_d = d;
        prev_phi = Some(phi);
        prev_eta = Some(eta);
    }

    // all-pairs secant scan on a coarse subgrid; consecutive pairs already
    // bound every long secant, this is redundancy against grid aliasing
    let mut sub: Vec<usize> = (1..=PAIR_SUBGRID)
        .map(|k| (k * n / PAIR_SUBGRID).max(1))
        .collect();
    sub.dedup();
    for (ai, &a) in sub.iter().enumerate() {
        for &b in &sub[ai + 1..] {
            let (x1, x2) = (xs[a - 1], xs[b - 1]);
            let secant = x1 * (dv[b - 1] / x2 - dv[a - 1] / x1) / (x2 - x1);
            if secant > 1.0 + tol.eps_mono {
                book.record(WitnessAt::Pair(x1, x2), Condition::SlopeCap, secant - 1.0);
            }
        }
    }

    let d1 = !book.seen(Condition::D1);
    let d2 = !book.seen(Condition::D2);
    let d3 = !book.seen(Condition::D3);
    let d4 = !book.seen(Condition::D4);
    let phi_ok = !book.seen(Condition::PhiNondecreasing);
    let eta_ok = !book.seen(Condition::EtaNonincreasing);
    let cap_ok = !book.seen(Condition::SlopeCap);
    let env_ok = !book.seen(Condition::Envelope);

    let diagonal = DiagonalFlags {
        d1,
        d2,
        d3,
        d4,
        member: d1 && d2 && d3 && d4,
    };
    let semicopula = SemiCopulaFlags {
        member: d1 && d2 && d3 && phi_ok,
    };
    // membership chains structurally: each stronger class requires everything
    // the weaker one does, the extra conditions being mathematically implied
    let quasicopula = QuasiCopulaFlags {
        two_lipschitz: d4,
        phi_nondecreasing: phi_ok,
        slope_cap: cap_ok,
        envelope_ok: env_ok,
        member: semicopula.member && d4 && cap_ok && env_ok,
    };
    let copula = CopulaFlags {
        phi_nondecreasing: phi_ok,
        eta_nonincreasing: eta_ok,
        member: quasicopula.member && eta_ok,
    };

    Ok(ClassReport {
        diagonal,
        copula,
        semicopula,
        quasicopula,
        witnesses: book.into_vec(),
    })
}
