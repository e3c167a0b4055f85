//! Drive mixtures of extreme copulas from a discrete measure: evaluate the
//! mixture, export the piecewise-quadratic normal form, and recover the
//! measure back from it.
//!
//! ```bash
//! cargo run -p semilin --example choquet_mixtures
//! ```

use semilin::choquet::{mixture_copula, mixture_diagonal, recover_measure, to_piecewise, Atom};
use semilin::{DiagonalSpec, DiscreteMeasure, ObjectClass, SemilinearObject};

fn main() {
    let mu =
        DiscreteMeasure::new(vec![Atom { m: 0.25, w: 0.5 }, Atom { m: 0.75, w: 0.5 }]).unwrap();

    println!(
        "mixture diagonal at t = 0.5: {}",
        mixture_diagonal(&mu, 0.5)
    );
    println!(
        "mixture copula at (0.3, 0.6): {}",
        mixture_copula(&mu, 0.3, 0.6)
    );

    // the mixture copula is the convex combination of its extreme parts
    let parts: Vec<(f64, SemilinearObject)> = mu
        .atoms()
        .iter()
        .map(|a| {
            (
                a.w,
                SemilinearObject::new_unchecked(
                    DiagonalSpec::FamilyM { m: a.m },
                    ObjectClass::Copula,
                ),
            )
        })
        .collect();
    let combo: f64 = parts.iter().map(|(w, c)| w * c.eval(0.3, 0.6)).sum();
    println!("convex combination at (0.3, 0.6): {combo}");

    let pw = to_piecewise(&mu);
    println!("piecewise form: breakpoints {:?}", pw.breakpoints);
    for (k, p) in pw.pieces.iter().enumerate() {
        println!("  piece {k}: {} x + {} x^2", p.alpha, p.beta);
    }

    let back = recover_measure(&pw).unwrap();
    println!("recovered measure: {:?}", back.atoms());
    assert_eq!(back.atoms().len(), mu.atoms().len());
}
