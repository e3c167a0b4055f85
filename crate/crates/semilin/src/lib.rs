//! Semilinear copulas, quasi-copulas and semi-copulas from diagonal sections.
//!
//! A diagonal section δ determines a semilinear object through
//! C(u,v) = min(u,v) · δ(max(u,v)) / max(u,v), with 0/0 read as 0. This
//! crate constructs those objects from finite diagonal descriptions,
//! validates which class they land in, classifies the extreme points of
//! each class, builds Choquet mixtures over the extreme copula family,
//! computes rank-based association measures in closed form and by
//! quadrature, and maps pointwise asymmetry together with its sharp bounds.
//!
//! Start with the runnable programs under `examples/`; each demonstrates one
//! capability end to end. The same functionality is scriptable through the
//! `semilin` binary, which takes JSON specs and emits JSON reports and CSV
//! grids.

pub mod association;
pub mod asymmetry;
pub mod choquet;
pub mod cli;
pub mod diagonal;
pub mod extremity;
pub mod numerics;
pub mod semilinear;

pub use choquet::{Atom, DiscreteMeasure, PiecewiseQuadratic};
pub use diagonal::{ClassReport, DiagonalSpec, StepSide};
pub use numerics::{GridKind, GridMap, Tolerance};
pub use semilinear::{ObjectClass, SemilinearObject};
