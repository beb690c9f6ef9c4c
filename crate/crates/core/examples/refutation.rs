// Refuting `|S_p| ≤ |S_q|` and `|S_q| ≤* |S_p|` with replayable
// certificates.

use cardlab::embedding::{replay_certificate, Branch};
use cardlab::path::atom_path;
use cardlab::{build_universe, refute_injection, refute_surjection, validate_order, OrderSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // p and q incomparable under ≼, but p ≼* q.
    let order = validate_order(
        &OrderSpec::new(["p", "q"])
            .with_reflexive()
            .with_lestar(&[("p", "q")]),
    )?;
    let u = build_universe(&order, 2, 4)?;

    let support = [u.sector("p")?[0]];
    let cert = refute_injection(&u, "p", "q", &support)?;
    replay_certificate(&u, &cert)?;
    let image_moves = cert
        .evidence
        .iter()
        .filter(|e| e.branch == Branch::MovesImage)
        .count();
    println!(
        "no injection S_p -> S_q with support {{{}}}: fresh atom {}, {} candidate images ({} moved themselves)",
        atom_path(&u, support[0]),
        atom_path(&u, cert.fresh),
        cert.evidence.len(),
        image_moves
    );

    let cert = refute_surjection(&u, "q", "p", &[])?;
    replay_certificate(&u, &cert)?;
    println!(
        "no partial surjection S_p ->> S_q: fresh atom {}, {} candidate images",
        atom_path(&u, cert.fresh),
        cert.evidence.len()
    );

    // Three indices leave no room once the support takes one.
    let small = build_universe(&order, 1, 3)?;
    let err = refute_injection(&small, "p", "q", &[small.sector("p")?[0]]).unwrap_err();
    println!("T(1, 3): {err}");
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
