//! Pointwise asymmetry functionals, their sharp bounds, and which extreme
//! family attains each bound.
//!
//! ```bash
//! cargo run -p semilin --example asymmetry_maps
//! ```

use semilin::asymmetry::{attain_bounds, bounds, chi, map_grid, varrho, xi, Functional};
use semilin::{DiagonalSpec, ObjectClass, SemilinearObject};

fn main() {
    let (u, v) = (0.3, 0.2);
    let b = bounds(u, v);
    println!(
        "bounds at ({u}, {v}): lower {}, upper {}, radial {}",
        b.lower, b.upper, b.radial_upper
    );

    for (name, spec) in [
        ("independence", DiagonalSpec::independence()),
        ("max-family m=0.8", DiagonalSpec::family_m(0.8).unwrap()),
        ("min-family p=0.8", DiagonalSpec::family_p(0.8).unwrap()),
    ] {
        let c = SemilinearObject::new_unchecked(spec, ObjectClass::Copula);
        println!(
            "  {name}: chi = {:.4}, varrho = {:.4}, xi = {:.4}",
            chi(&c, u, v),
            varrho(&c, u, v),
            xi(&c, u, v)
        );
    }

    let att = attain_bounds(u, v, 512);
    println!(
        "attainment: sup chi {:.4} at {:?}, inf chi {:.4} at {:?}, sup xi {:.4} at {:?}",
        att.sup_chi.value,
        att.sup_chi.arg,
        att.inf_chi.value,
        att.inf_chi.arg,
        att.sup_xi.value,
        att.sup_xi.arg
    );

    // export a small radial-asymmetry map as CSV
    let c =
        SemilinearObject::new_unchecked(DiagonalSpec::family_p(0.8).unwrap(), ObjectClass::Copula);
    let grid = map_grid(&c, Functional::Xi, 4);
    let mut csv = Vec::new();
    grid.write_csv(&mut csv).unwrap();
    println!(
        "radial asymmetry map (n = 4):\n{}",
        String::from_utf8(csv).unwrap()
    );
}
