//! Spearman's rho, Gini's gamma and the footrule coefficient: closed forms
//! against the quadrature oracle.
//!
//! ```bash
//! cargo run -p semilin --example association_measures
//! ```

use semilin::association::{closed_form_extreme, closed_form_mixture, numeric_measures};
use semilin::choquet::Atom;
use semilin::{DiagonalSpec, DiscreteMeasure, ObjectClass, SemilinearObject, Tolerance};

fn main() {
    let tol = Tolerance::default();

    println!(
        "{:>5} {:>12} {:>12} {:>12} {:>12}",
        "m", "rho", "gamma", "footrule", "quad diff"
    );
    for k in 0..=10 {
        let m = k as f64 / 10.0;
        let closed = closed_form_extreme(m);
        let obj = SemilinearObject::new_unchecked(DiagonalSpec::FamilyM { m }, ObjectClass::Copula);
        let numeric = numeric_measures(&obj, &tol).unwrap();
        println!(
            "{m:>5.1} {:>12.8} {:>12.8} {:>12.8} {:>12.3e}",
            closed.rho,
            closed.gamma,
            closed.footrule,
            numeric.max_abs_diff(&closed)
        );
    }

    let mu =
        DiscreteMeasure::new(vec![Atom { m: 0.25, w: 0.5 }, Atom { m: 0.75, w: 0.5 }]).unwrap();
    let closed = closed_form_mixture(&mu);
    let obj = SemilinearObject::new_unchecked(DiagonalSpec::mixture(mu), ObjectClass::Copula);
    let numeric = numeric_measures(&obj, &tol).unwrap();
    println!(
        "two-atom mixture: rho = {} (quadrature agrees within {:.3e})",
        closed.rho,
        numeric.max_abs_diff(&closed)
    );
}
