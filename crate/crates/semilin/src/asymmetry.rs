//! Pointwise asymmetry functionals and their sharp bounds over the
//! semilinear class.
//!
//! χ measures asymmetry across the opposite diagonal, ϱ across the center
//! point, ξ radial asymmetry against the survival transform. Over all
//! semilinear copulas χ and ϱ sit between a product form and a quotient form,
//! and ξ below a radial quotient form; the product form is attained inside
//! the δ_m family, the quotient and radial forms inside the δ^(p) family.
//!
//! Note the independence copula does not attain the upper bound at interior
//! points (χ_Π(0.3, 0.2) = 0.5 < 0.625); the min-form family δ^(p) does.

use crate::diagonal::DiagonalSpec;
use crate::numerics::{GridKind, GridMap};
use crate::semilinear::{ObjectClass, SemilinearObject};
use serde::{Deserialize, Serialize};

/// Asymmetry across the opposite diagonal:
/// χ(u,v) = C(u∨(1−v), v∨(1−u)) − C(u∧(1−v), v∧(1−u)); nonnegative because
/// the first argument pair dominates the second.
pub fn chi(obj: &SemilinearObject, u: f64, v: f64) -> f64 {
    obj.eval(u.max(1.0 - v), v.max(1.0 - u)) - obj.eval(u.min(1.0 - v), v.min(1.0 - u))
}

/// Asymmetry with respect to the center point:
/// ϱ(u,v) = C(u∨(1−u), v∨(1−v)) − C(u∧(1−u), v∧(1−v)).
pub fn varrho(obj: &SemilinearObject, u: f64, v: f64) -> f64 {
    obj.eval(u.max(1.0 - u), v.max(1.0 - v)) - obj.eval(u.min(1.0 - u), v.min(1.0 - v))
}

/// Radial asymmetry |C(u,v) − Ĉ(u,v)| = |C(u,v) − C(1−u,1−v) − u − v + 1|.
pub fn xi(obj: &SemilinearObject, u: f64, v: f64) -> f64 {
    (obj.eval(u, v) - obj.eval(1.0 - u, 1.0 - v) - u - v + 1.0).abs()
}

/// Pointwise bounds over the semilinear class: product form below, quotient
/// form above for χ and ϱ, radial quotient form above for ξ. All three vanish
/// on the antidiagonal u + v = 1.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct BoundValues {
    pub lower: f64,
    pub upper: f64,
    pub radial_upper: f64,
}

pub fn bounds(u: f64, v: f64) -> BoundValues {
    assert!(
        (0.0..=1.0).contains(&u) && (0.0..=1.0).contains(&v),
        "({u}, {v}) outside the unit square"
    );
    if v <= 1.0 - u {
        let s = 1.0 - u - v;
        let w = u.min(v);
        BoundValues {
            lower: s * (1.0 - w),
            upper: s / (1.0 - w),
            radial_upper: s * w / (1.0 - w),
        }
    } else {
        let s = u + v - 1.0;
        let w = u.max(v);
        BoundValues {
            lower: s * w,
            upper: s / w,
            radial_upper: s * (1.0 - w) / w,
        }
    }
}

/// Bounds that apply to ϱ at (u, v). ϱ is invariant under u ↦ 1−u and
/// v ↦ 1−v while the bound formulas are not, so the sandwich holds at the
/// canonical representative (u∧(1−u), v∧(1−v)), where ϱ coincides with χ.
pub fn varrho_bounds(u: f64, v: f64) -> BoundValues {
    bounds(u.min(1.0 - u), v.min(1.0 - v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Functional {
    Chi,
    Varrho,
    Xi,
}

/// Node grid of one functional over the unit square.
pub fn map_grid(obj: &SemilinearObject, functional: Functional, n: usize) -> GridMap {
    assert!(n >= 2, "need at least a 2x2 grid");
    let f = match functional {
        Functional::Chi => chi,
        Functional::Varrho => varrho,
        Functional::Xi => xi,
    };
    let mut g = GridMap::new(n, GridKind::Asymmetry);
    for i in 0..=n {
        let u = i as f64 / n as f64;
        for j in 0..=n {
            let v = j as f64 / n as f64;
            g.set(i, j, f(obj, u, v));
        }
    }
    g
}

/// Which extreme family attains an optimum, and at which parameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "param", rename_all = "snake_case")]
pub enum FamilyParam {
    M(f64),
    P(f64),
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Optimum {
    pub value: f64,
    pub arg: FamilyParam,
}

/// Grid-search optima of the functionals over the two extreme families.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Attainment {
    pub sup_chi: Optimum,
    pub inf_chi: Optimum,
    pub sup_xi: Optimum,
}

/// Maximizes and minimizes χ, and maximizes ξ, over δ_m and δ^(p) with
/// parameters on a uniform grid enriched by the reflection parameters of
/// (u, v), which is where the optima sit.
pub fn attain_bounds(u: f64, v: f64, param_grid_n: usize) -> Attainment {
    assert!(
        u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0,
        "attainment search needs an interior point"
    );
    assert!(param_grid_n >= 2);
    let mut params: Vec<f64> = (0..=param_grid_n)
        .map(|k| k as f64 / param_grid_n as f64)
        .collect();
    params.extend_from_slice(&[u, v, 1.0 - u, 1.0 - v, u.max(v), 1.0 - u.min(v)]);

    let mut sup_chi = Optimum {
        value: f64::NEG_INFINITY,
        arg: FamilyParam::M(0.0),
    };
    let mut inf_chi = Optimum {
        value: f64::INFINITY,
        arg: FamilyParam::M(0.0),
    };
    let mut sup_xi = Optimum {
        value: f64::NEG_INFINITY,
        arg: FamilyParam::M(0.0),
    };

    let mut consider = |value_chi: f64, value_xi: f64, arg: FamilyParam| {
        if value_chi > sup_chi.value {
            sup_chi = Optimum {
                value: value_chi,
                arg,
            };
        }
        if value_chi < inf_chi.value {
            inf_chi = Optimum {
                value: value_chi,
                arg,
            };
        }
        if value_xi > sup_xi.value {
            sup_xi = Optimum {
                value: value_xi,
                arg,
            };
        }
    };

    for &t in &params {
        let obj =
            SemilinearObject::new_unchecked(DiagonalSpec::FamilyM { m: t }, ObjectClass::Copula);
        consider(chi(&obj, u, v), xi(&obj, u, v), FamilyParam::M(t));
        if t > 0.0 {
            let obj = SemilinearObject::new_unchecked(
                DiagonalSpec::FamilyP { p: t },
                ObjectClass::Copula,
            );
            consider(chi(&obj, u, v), xi(&obj, u, v), FamilyParam::P(t));
        }
    }

    Attainment {
        sup_chi,
        inf_chi,
        sup_xi,
    }
}
