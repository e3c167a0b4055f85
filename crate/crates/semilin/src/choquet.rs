//! Mixtures over the one-parameter extreme family δ_m(t) = max(mt, t²).
//!
//! A finitely supported probability measure on [0,1] drives the mixture: the
//! mixture diagonal is δ(t) = t²·F(t) + t·∫_t^1 m dμ(m), the mixture copula is
//! its semilinear extension, the dense piecewise-quadratic normal form carries
//! one quadratic piece per atom gap, and the measure can be recovered from
//! that form.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Two weights within this distance of each other in atom position merge.
const ATOM_MERGE_EPS: f64 = 1e-12;
/// Total-weight defect allowed at construction.
const WEIGHT_SUM_EPS: f64 = 1e-12;
/// Internal-consistency tolerance when recovering a measure from coefficients.
const RECOVER_EPS: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ChoquetError {
    #[error("atom position {m} outside [0,1]")]
    AtomOutOfRange { m: f64 },
    #[error("atom weight {w} must be strictly positive and finite")]
    BadWeight { w: f64 },
    #[error("atom weights sum to {sum}, expected 1 within {WEIGHT_SUM_EPS:e}")]
    WeightSum { sum: f64 },
    #[error("measure needs at least one atom")]
    Empty,
    #[error("not a mixture: {0}")]
    NotAMixture(String),
}

/// One atom of a discrete measure: position and weight.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub m: f64,
    pub w: f64,
}

/// Finitely supported probability measure on [0,1], atoms sorted ascending
/// and distinct, weights summing to one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasureWire", into = "MeasureWire")]
pub struct DiscreteMeasure {
    atoms: Vec<Atom>,
}

/// Serde surface: `{"atoms":[{"m":0.25,"w":0.5}, ...]}`.
#[derive(Serialize, Deserialize)]
struct MeasureWire {
    atoms: Vec<Atom>,
}

impl TryFrom<MeasureWire> for DiscreteMeasure {
    type Error = ChoquetError;
    fn try_from(wire: MeasureWire) -> Result<Self, ChoquetError> {
        DiscreteMeasure::new(wire.atoms)
    }
}

impl From<DiscreteMeasure> for MeasureWire {
    fn from(mu: DiscreteMeasure) -> Self {
        MeasureWire { atoms: mu.atoms }
    }
}

impl DiscreteMeasure {
    /// Validates, sorts and merges coincident atoms.
    pub fn new(mut atoms: Vec<Atom>) -> Result<Self, ChoquetError> {
        if atoms.is_empty() {
            return Err(ChoquetError::Empty);
        }
        for a in &atoms {
            if !a.m.is_finite() || !(0.0..=1.0).contains(&a.m) {
                return Err(ChoquetError::AtomOutOfRange { m: a.m });
            }
            if !a.w.is_finite() || a.w <= 0.0 {
                return Err(ChoquetError::BadWeight { w: a.w });
            }
        }
        atoms.sort_by(|a, b| a.m.total_cmp(&b.m));
        let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
        for a in atoms {
            match merged.last_mut() {
                Some(last) if (a.m - last.m).abs() <= ATOM_MERGE_EPS => last.w += a.w,
                _ => merged.push(a),
            }
        }
        let sum: f64 = merged.iter().map(|a| a.w).sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_EPS {
            return Err(ChoquetError::WeightSum { sum });
        }
        Ok(DiscreteMeasure { atoms: merged })
    }

    /// Point mass at m.
    pub fn point_mass(m: f64) -> Result<Self, ChoquetError> {
        Self::new(vec![Atom { m, w: 1.0 }])
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Right-continuous distribution function μ([0, t]).
    pub fn cdf(&self, t: f64) -> f64 {
        self.atoms
            .iter()
            .take_while(|a| a.m <= t)
            .map(|a| a.w)
            .sum()
    }

    /// Tail first moment ∫_(t,1] m dμ(m).
    pub fn tail_mean(&self, t: f64) -> f64 {
        self.atoms
            .iter()
            .skip_while(|a| a.m <= t)
            .map(|a| a.w * a.m)
            .sum()
    }
}

/// Mixture diagonal δ(t) = t²·F(t) + t·∫_t^1 m dμ(m). A point mass at m
/// reduces to δ_m(t) = max(mt, t²).
pub fn mixture_diagonal(mu: &DiscreteMeasure, t: f64) -> f64 {
    assert!((0.0..=1.0).contains(&t), "t = {t} outside [0,1]");
    t * t * mu.cdf(t) + t * mu.tail_mean(t)
}

/// Mixture copula C(u,v) = ((u∨v)·F(u∨v) + ∫_(u∨v)^1 m dμ)·(u∧v); agrees with
/// the semilinear extension of the mixture diagonal pointwise.
pub fn mixture_copula(mu: &DiscreteMeasure, u: f64, v: f64) -> f64 {
    assert!((0.0..=1.0).contains(&u), "u = {u} outside [0,1]");
    assert!((0.0..=1.0).contains(&v), "v = {v} outside [0,1]");
    let mx = u.max(v);
    let mn = u.min(v);
    (mx * mu.cdf(mx) + mu.tail_mean(mx)) * mn
}

/// One quadratic piece α·x + β·x².
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub alpha: f64,
    pub beta: f64,
}

/// Continuous piecewise-quadratic diagonal: piece k applies on
/// [x_k, x_{k+1}] with x_0 = 0 and x_{j+1} = 1; there is exactly one more
/// piece than breakpoints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseQuadratic {
    pub breakpoints: Vec<f64>,
    pub pieces: Vec<Piece>,
}

impl PiecewiseQuadratic {
    pub fn eval(&self, x: f64) -> f64 {
        assert!((0.0..=1.0).contains(&x), "x = {x} outside [0,1]");
        let k = self.breakpoints.partition_point(|&b| b <= x);
        let p = self.pieces[k];
        p.alpha * x + p.beta * x * x
    }

    fn check_shape(&self) -> Result<(), ChoquetError> {
        if self.pieces.len() != self.breakpoints.len() + 1 {
            return Err(ChoquetError::NotAMixture(format!(
                "{} pieces do not fit {} breakpoints",
                self.pieces.len(),
                self.breakpoints.len()
            )));
        }
        let mut prev = 0.0;
        for &b in &self.breakpoints {
            if !(b > prev && b < 1.0) {
                return Err(ChoquetError::NotAMixture(format!(
                    "breakpoints must be strictly increasing inside (0,1), got {b} after {prev}"
                )));
            }
            prev = b;
        }
        Ok(())
    }
}

/// Dense-form construction: breakpoints at the interior atoms, coefficients
/// from the partial sums α_h = Σ_{i>h} c_i·m_i and β_h = Σ_{i≤h} c_i. An atom
/// at 0 surfaces as β on the first piece, an atom at 1 as α on the last.
pub fn to_piecewise(mu: &DiscreteMeasure) -> PiecewiseQuadratic {
    let interior: Vec<Atom> = mu
        .atoms()
        .iter()
        .copied()
        .filter(|a| a.m > 0.0 && a.m < 1.0)
        .collect();
    let breakpoints: Vec<f64> = interior.iter().map(|a| a.m).collect();
    let mut pieces = Vec::with_capacity(interior.len() + 1);
    for h in 0..=interior.len() {
        let upto = if h == 0 { 0.0 } else { interior[h - 1].m };
        let alpha: f64 = mu
            .atoms()
            .iter()
            .filter(|a| a.m > upto)
            .map(|a| a.w * a.m)
            .sum();
        let beta: f64 = mu.atoms().iter().filter(|a| a.m <= upto).map(|a| a.w).sum();
        // empty float sums fold from -0.0; keep the wire format clean
        pieces.push(Piece {
            alpha: alpha + 0.0,
            beta: beta + 0.0,
        });
    }
    PiecewiseQuadratic {
        breakpoints,
        pieces,
    }
}

/// Inverse of `to_piecewise`: atom weights are consecutive β differences, a
/// nonzero β on the first piece is an atom at 0, and leftover mass above the
/// last breakpoint sits at α_last / (1 - β_last). Rejects coefficient
/// sequences that no mixture produces.
pub fn recover_measure(pw: &PiecewiseQuadratic) -> Result<DiscreteMeasure, ChoquetError> {
    pw.check_shape()?;
    let pieces = &pw.pieces;
    for (k, p) in pieces.iter().enumerate() {
        let ok = (-RECOVER_EPS..=1.0 + RECOVER_EPS).contains(&p.alpha)
            && (-RECOVER_EPS..=1.0 + RECOVER_EPS).contains(&p.beta);
        if !ok {
            return Err(ChoquetError::NotAMixture(format!(
                "piece {k} coefficients ({}, {}) outside [0,1]",
                p.alpha, p.beta
            )));
        }
    }
    let mut atoms = Vec::new();
    let first = pieces[0];
    if first.beta > RECOVER_EPS {
        atoms.push(Atom {
            m: 0.0,
            w: first.beta,
        });
    }
    for (h, &x) in pw.breakpoints.iter().enumerate() {
        let below = pieces[h];
        let above = pieces[h + 1];
        let w = above.beta - below.beta;
        if w < -RECOVER_EPS {
            return Err(ChoquetError::NotAMixture(format!(
                "beta decreases across breakpoint {x}"
            )));
        }
        // continuity of α_h x + β_h x² forces α-drop = weight · breakpoint
        let drop = below.alpha - above.alpha;
        if (drop - w * x).abs() > RECOVER_EPS {
            return Err(ChoquetError::NotAMixture(format!(
                "pieces are discontinuous at breakpoint {x}: alpha drop {drop} vs {}",
                w * x
            )));
        }
        if w > RECOVER_EPS {
            atoms.push(Atom { m: x, w });
        }
    }
    let last = pieces[pieces.len() - 1];
    let tail_w = 1.0 - last.beta;
    if tail_w > RECOVER_EPS {
        let m = last.alpha / tail_w;
        let lo = pw.breakpoints.last().copied().unwrap_or(0.0);
        if !(m > lo && m <= 1.0 + RECOVER_EPS) {
            return Err(ChoquetError::NotAMixture(format!(
                "tail mass {tail_w} would sit at {m}, outside ({lo}, 1]"
            )));
        }
        atoms.push(Atom {
            m: m.min(1.0),
            w: tail_w,
        });
    } else if last.alpha.abs() > RECOVER_EPS {
        return Err(ChoquetError::NotAMixture(format!(
            "last piece has alpha = {} but no mass above the last breakpoint",
            last.alpha
        )));
    }
    DiscreteMeasure::new(atoms)
}

/// Draws a measure with up to `max_atoms` random atoms; test support.
#[cfg(test)]
pub(crate) fn random_measure(rng: &mut rand::rngs::StdRng, max_atoms: usize) -> DiscreteMeasure {
    use rand::Rng;
    let k = rng.random_range(1..=max_atoms);
    let mut atoms: Vec<Atom> = (0..k)
        .map(|_| Atom {
            m: rng.random::<f64>(),
            w: rng.random_range(0.05..1.0),
        })
        .collect();
    let total: f64 = atoms.iter().map(|a| a.w).sum();
    for a in &mut atoms {
        a.w /= total;
    }
    DiscreteMeasure::new(atoms).unwrap()
}
