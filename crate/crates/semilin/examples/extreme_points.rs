//! Classify diagonals as extreme points of the copula, quasi-copula and
//! semi-copula classes.
//!
//! ```bash
//! cargo run -p semilin --example extreme_points
//! ```

use semilin::choquet::{Atom, DiscreteMeasure};
use semilin::extremity::{classify_copula, classify_quasicopula, classify_semicopula};
use semilin::{DiagonalSpec, StepSide, Tolerance};

fn main() {
    let tol = Tolerance::default();

    println!("copula class (ratio criterion delta'/delta vs 1/x and 2/x):");
    for spec in [
        DiagonalSpec::family_m(0.5).unwrap(),
        DiagonalSpec::family_p(0.8).unwrap(),
        DiagonalSpec::identity(),
    ] {
        let r = classify_copula(&spec, &tol).unwrap();
        println!(
            "  {spec:?}: extreme = {} (violating measure {:.4})",
            r.verdict, r.violating_measure
        );
    }
    let mix = DiscreteMeasure::new(vec![Atom { m: 0.0, w: 0.5 }, Atom { m: 1.0, w: 0.5 }]).unwrap();
    let r = classify_copula(&DiagonalSpec::mixture(mix), &tol).unwrap();
    println!(
        "  half/half mixture of independence and comonotone: extreme = {} (violating measure {:.4})",
        r.verdict, r.violating_measure
    );

    println!("semi-copula class (one-jump step criterion):");
    for spec in [
        DiagonalSpec::step(StepSide::Right, 0.4).unwrap(),
        DiagonalSpec::identity(),
        DiagonalSpec::family_m(0.5).unwrap(),
    ] {
        let r = classify_semicopula(&spec, &tol).unwrap();
        println!("  {spec:?}: extreme = {}", r.verdict);
    }

    println!("quasi-copula class ((delta/x)' in {{0, 1/x}} criterion):");
    for spec in [
        DiagonalSpec::family_beta(0.5).unwrap(),
        DiagonalSpec::independence(),
        DiagonalSpec::identity(),
    ] {
        let r = classify_quasicopula(&spec, &tol).unwrap();
        println!(
            "  {spec:?}: extreme = {} (violating measure {:.4})",
            r.verdict, r.violating_measure
        );
    }
}
