//! The same capabilities through the command-line surface, driven
//! in-process: JSON specs in, JSON reports and CSV grids out.
//!
//! ```bash
//! cargo run -p semilin --example cli_tour
//! ```

use semilin::cli::run_with_writer;

fn run(args: &[&str]) -> (i32, String) {
    let argv = std::iter::once("semilin".to_string()).chain(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with_writer(argv, &mut out, &mut err);
    let mut text = String::from_utf8(out).unwrap();
    text.push_str(&String::from_utf8(err).unwrap());
    (code, text)
}

fn main() {
    println!("$ semilin validate --spec '{{\"variant\":\"m\",\"m\":0.5}}'");
    let (code, out) = run(&["validate", "--spec", r#"{"variant":"m","m":0.5}"#]);
    println!("{out}(exit {code})\n");

    println!("$ semilin measures --spec '{{\"variant\":\"m\",\"m\":0.5}}' --method both");
    let (code, out) = run(&[
        "measures",
        "--spec",
        r#"{"variant":"m","m":0.5}"#,
        "--method",
        "both",
    ]);
    println!("{out}(exit {code})\n");

    println!("$ semilin sample --spec '{{\"variant\":\"m\",\"m\":0.5}}' --count 5 --seed 1");
    let (code, out) = run(&[
        "sample",
        "--spec",
        r#"{"variant":"m","m":0.5}"#,
        "--count",
        "5",
        "--seed",
        "1",
    ]);
    println!("{out}(exit {code})\n");

    println!("$ semilin validate --spec '{{\"variant\":\"tabulated\",\"knots\":[[0,0],[1,0.5]]}}'");
    let (code, out) = run(&[
        "validate",
        "--spec",
        r#"{"variant":"tabulated","knots":[[0,0],[1,0.5]]}"#,
    ]);
    // the report is emitted even though validation fails
    let first_lines: Vec<&str> = out.lines().take(4).collect();
    println!("{}\n... (exit {code})", first_lines.join("\n"));
}
