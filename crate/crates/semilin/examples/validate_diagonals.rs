//! Validate diagonal sections and see which semilinear class each generates.
//!
//! ```bash
//! cargo run -p semilin --example validate_diagonals
//! ```

use semilin::diagonal::validate;
use semilin::{DiagonalSpec, StepSide, Tolerance};

fn main() {
    let tol = Tolerance::default();
    let specs: Vec<(&str, DiagonalSpec)> = vec![
        ("identity (comonotone)", DiagonalSpec::identity()),
        ("square (independence)", DiagonalSpec::independence()),
        ("max-family m=0.5", DiagonalSpec::family_m(0.5).unwrap()),
        ("min-family p=0.8", DiagonalSpec::family_p(0.8).unwrap()),
        (
            "beta-family beta=0.5",
            DiagonalSpec::family_beta(0.5).unwrap(),
        ),
        (
            "right step a=0.4",
            DiagonalSpec::step(StepSide::Right, 0.4).unwrap(),
        ),
        (
            "reflected min-family p=0.5",
            DiagonalSpec::family_p(0.5).unwrap().reflect(),
        ),
        (
            "tabulated with a bad endpoint",
            DiagonalSpec::Tabulated {
                knots: vec![(0.0, 0.0), (1.0, 0.5)],
            },
        ),
    ];

    println!(
        "{:<30} {:>8} {:>8} {:>8} {:>8}",
        "spec", "diagonal", "semi", "quasi", "copula"
    );
    for (name, spec) in &specs {
        let r = validate(spec, &tol).expect("well-formed spec");
        println!(
            "{:<30} {:>8} {:>8} {:>8} {:>8}",
            name,
            r.is_diagonal(),
            r.in_semicopula_class(),
            r.in_quasicopula_class(),
            r.in_copula_class(),
        );
        for w in &r.witnesses {
            println!(
                "    worst {:?} violation: {:?} by {:.3e}",
                w.condition, w.at, w.magnitude
            );
        }
    }

    // class inclusions are structural: copula implies quasi implies semi
    let r = validate(&DiagonalSpec::family_m(0.3).unwrap(), &tol).unwrap();
    assert!(r.in_copula_class() && r.in_quasicopula_class() && r.in_semicopula_class());
}
