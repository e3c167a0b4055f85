//! The semilinear object C(u,v) = min(u,v)·δ(max(u,v))/max(u,v) (with
//! 0/0 := 0 at the origin), its rectangle volumes, survival transform, a
//! brute-force 2-increasingness oracle, and conditional-distribution sampling
//! for copula-class objects.

use crate::diagonal::{ClassReport, DiagonalSpec, Side, SpecError};
use crate::numerics::{GridKind, GridMap, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance of the bisection that inverts the conditional CDF.
const SAMPLE_BISECT_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum SemilinearError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("diagonal generates no semilinear object of any class")]
    NotSemilinear,
    #[error("operation requires a copula-class object, found {0:?}")]
    NotACopula(ObjectClass),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectClass {
    Copula,
    QuasiCopula,
    SemiCopula,
}

/// A diagonal section together with the strongest class its semilinear
/// extension was validated into.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SemilinearObject {
    diag: DiagonalSpec,
    declared_class: ObjectClass,
}

impl SemilinearObject {
    /// Validates the diagonal and declares the strongest class it generates.
    pub fn new(diag: DiagonalSpec, tol: &Tolerance) -> Result<Self, SemilinearError> {
        let report = crate::diagonal::validate(&diag, tol)?;
        let class = Self::class_of(&report).ok_or(SemilinearError::NotSemilinear)?;
        Ok(SemilinearObject {
            diag,
            declared_class: class,
        })
    }

    /// Same, returning the validation report alongside.
    pub fn new_with_report(
        diag: DiagonalSpec,
        tol: &Tolerance,
    ) -> Result<(Self, ClassReport), SemilinearError> {
        let report = crate::diagonal::validate(&diag, tol)?;
        let class = Self::class_of(&report).ok_or(SemilinearError::NotSemilinear)?;
        Ok((
            SemilinearObject {
                diag,
                declared_class: class,
            },
            report,
        ))
    }

    /// Trusted constructor: the caller asserts the class. Handy when the
    /// class is known analytically (extreme families, mixtures) and the
    /// validation grid would be wasted work.
    pub fn new_unchecked(diag: DiagonalSpec, class: ObjectClass) -> Self {
        SemilinearObject {
            diag,
            declared_class: class,
        }
    }

    fn class_of(report: &ClassReport) -> Option<ObjectClass> {
        if report.in_copula_class() {
            Some(ObjectClass::Copula)
        } else if report.in_quasicopula_class() {
            Some(ObjectClass::QuasiCopula)
        } else if report.in_semicopula_class() {
            Some(ObjectClass::SemiCopula)
        } else {
            None
        }
    }

    pub fn diag(&self) -> &DiagonalSpec {
        &self.diag
    }

    pub fn class(&self) -> ObjectClass {
        self.declared_class
    }

    /// C(u,v). Panics outside the unit square.
    pub fn eval(&self, u: f64, v: f64) -> f64 {
        assert!(
            (0.0..=1.0).contains(&u) && (0.0..=1.0).contains(&v),
            "({u}, {v}) outside the unit square"
        );
        let mx = u.max(v);
        if mx == 0.0 {
            return 0.0; // the 0/0 convention, only reachable at the origin
        }
        let mn = u.min(v);
        mn * self.diag.eval(mx) / mx
    }

    /// Rectangle volume C(u2,v2) − C(u1,v2) − C(u2,v1) + C(u1,v1);
    /// degenerate rectangles give exactly zero.
    pub fn volume(&self, u1: f64, u2: f64, v1: f64, v2: f64) -> f64 {
        assert!(u1 <= u2 && v1 <= v2, "rectangle edges out of order");
        self.eval(u2, v2) - self.eval(u1, v2) - self.eval(u2, v1) + self.eval(u1, v1)
    }

    /// Survival transform u + v − 1 + C(1−u, 1−v).
    pub fn survival(&self, u: f64, v: f64) -> f64 {
        u + v - 1.0 + self.eval(1.0 - u, 1.0 - v)
    }

    /// Node grid of the surface at resolution n.
    pub fn surface_grid(&self, n: usize) -> GridMap {
        let mut g = GridMap::new(n, GridKind::Surface);
        for i in 0..=n {
            let u = i as f64 / n as f64;
            for j in 0..=n {
                let v = j as f64 / n as f64;
                g.set(i, j, self.eval(u, v));
            }
        }
        g
    }

    /// Cell grid of C-volumes at resolution n: entry (i, j) is the mass the
    /// object puts on [i/n,(i+1)/n] × [j/n,(j+1)/n].
    pub fn cell_volume_grid(&self, n: usize) -> GridMap {
        assert!(n >= 2, "need at least a 2x2 grid");
        // evaluate nodes once, volumes come from corner differences
        let mut nodes = vec![0.0f64; (n + 1) * (n + 1)];
        for i in 0..=n {
            let u = i as f64 / n as f64;
            for j in 0..=n {
                let v = j as f64 / n as f64;
                nodes[i * (n + 1) + j] = self.eval(u, v);
            }
        }
        let at = |i: usize, j: usize| nodes[i * (n + 1) + j];
        let mut g = GridMap::new(n, GridKind::CellVolume);
        for i in 0..n {
            for j in 0..n {
                g.set(
                    i,
                    j,
                    at(i + 1, j + 1) - at(i, j + 1) - at(i + 1, j) + at(i, j),
                );
            }
        }
        g
    }

    /// Scans every cell of the uniform n×n grid and reports the minimum cell
    /// volume, where it sits, and the total mass of negative cells.
    pub fn positivity_oracle(&self, n: usize) -> PositivityReport {
        let cells = self.cell_volume_grid(n);
        let mut min_volume = f64::INFINITY;
        let mut argmin = (0usize, 0usize);
        let mut negative_mass_total = 0.0;
        for i in 0..n {
            for j in 0..n {
                let vol = cells.get(i, j);
                if vol < min_volume {
                    min_volume = vol;
                    argmin = (i, j);
                }
                if vol < 0.0 {
                    negative_mass_total += vol;
                }
            }
        }
        PositivityReport {
            n,
            min_volume,
            argmin_cell: argmin,
            negative_mass_total,
        }
    }

    /// Draws `count` pairs by the conditional-distribution method:
    /// U is uniform and V inverts t ↦ ∂C/∂u(U, t), which is v·φ'(u) below the
    /// diagonal, φ(v) above it, and may jump by 2φ(u) − δ'(u) at v = u.
    /// Deterministic for a fixed seed.
    pub fn sample(&self, count: usize, seed: u64) -> Result<Vec<(f64, f64)>, SemilinearError> {
        if self.declared_class != ObjectClass::Copula {
            return Err(SemilinearError::NotACopula(self.declared_class));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let u: f64 = rng.random();
            let w: f64 = rng.random();
            out.push((u, self.conditional_quantile(u, w)));
        }
        Ok(out)
    }

    /// Inverts the conditional CDF F(v | U = u) at level w.
    fn conditional_quantile(&self, u: f64, w: f64) -> f64 {
        if u <= 0.0 {
            return self.invert_phi(w, 0.0);
        }
        let phi_u = self.diag.eval(u) / u;
        // right-branch derivative: kinks form a null set, any selection works
        let dprime = self.diag.deriv_onesided(u, Side::Right);
        let below_mass = (dprime - phi_u).max(0.0); // F(u−) = δ'(u) − φ(u)
        if w < below_mass {
            // linear segment: F(v) = v · φ'(u) = v · below_mass / u
            return (w / below_mass * u).min(u);
        }
        if w <= phi_u {
            return u; // atom at v = u of mass 2φ(u) − δ'(u)
        }
        self.invert_phi(w, u)
    }

    /// Solves φ(v) = w for v in [lo, 1]; φ is continuous and nondecreasing
    /// for copula-class diagonals.
    fn invert_phi(&self, w: f64, lo: f64) -> f64 {
        let (mut lo, mut hi) = (lo, 1.0);
        while hi - lo > SAMPLE_BISECT_TOL {
            let mid = 0.5 * (lo + hi);
            let phi = if mid == 0.0 {
                0.0
            } else {
                self.diag.eval(mid) / mid
            };
            if phi < w {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Outcome of the grid 2-increasingness scan.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PositivityReport {
    pub n: usize,
    pub min_volume: f64,
    /// Cell indices (i, j): the cell spans [i/n,(i+1)/n] × [j/n,(j+1)/n].
    pub argmin_cell: (usize, usize),
    /// Sum of all negative cell volumes (zero for a genuine copula).
    pub negative_mass_total: f64,
}
