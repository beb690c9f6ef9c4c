// The full verdict matrices for a three-element structure, and the JSON
// document they serialize to.

use cardlab::cli::codec::serialize_report;
use cardlab::{build_universe, embedding_report, validate_order, OrderSpec, ReportConfig, Verdict};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // a ≺ b, c sits above a only in ≼*.
    let order = validate_order(
        &OrderSpec::new(["a", "b", "c"])
            .with_reflexive()
            .with_le(&[("a", "b")])
            .with_lestar(&[("a", "b"), ("a", "c")]),
    )?;
    let u = build_universe(&order, 2, 4)?;
    let report = embedding_report(&u, &ReportConfig::default())?;
    assert!(report.matches_input());

    for (name, cells) in [("le", &report.le), ("lestar", &report.lestar)] {
        println!("{name}");
        for (p, row) in cells.iter().enumerate() {
            let marks: Vec<_> = row
                .iter()
                .map(|v| match v {
                    Verdict::Positive(_) => "+",
                    Verdict::Negative { .. } => "-",
                    Verdict::Failed { .. } => "!",
                })
                .collect();
            println!("  {}  {}", order.name(p), marks.join(" "));
        }
    }
    let doc = serialize_report(&u, &report);
    println!(
        "{} supports certified per negative cell; report document is {} bytes",
        report.supports.count(),
        doc.len()
    );
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
