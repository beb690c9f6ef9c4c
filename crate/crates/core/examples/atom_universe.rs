// Building a truncated universe and walking its atoms.

use cardlab::path::{atom_path, parse_atom_path};
use cardlab::universe::AtomKind;
use cardlab::{build_universe, validate_order, OrderSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // p ≺ q, and p ≼* q.
    let order = validate_order(
        &OrderSpec::new(["p", "q"])
            .with_reflexive()
            .with_le(&[("p", "q")])
            .with_lestar(&[("p", "q")]),
    )?;
    let u = build_universe(&order, 1, 2)?;
    println!("T(1, 2): {} atoms", u.len());
    for level in 0..=u.depth() {
        println!("  levels <= {level}: {} atoms", u.stratum_len(level));
    }
    for (id, atom) in u.atoms() {
        let kind = match atom.kind() {
            AtomKind::Base => "base",
            AtomKind::Injective => "injective",
            AtomKind::Surjective => "surjective",
        };
        println!("  {id:>3}  {:<16} {kind}", atom_path(&u, id));
    }

    let a = parse_atom_path(&u, "q@1[p@0[1]]#0")?;
    assert_eq!(u.atom(a).parent(), Some(parse_atom_path(&u, "p@0[1]")?));
    println!("sector q has {} atoms", u.sector("q")?.len());

    // A larger truncation contains the smaller one.
    let big = build_universe(&order, 2, 3)?;
    let embedding = u.translate_into(&big).expect("same order");
    println!(
        "T(2, 3) has {} atoms; {} maps to {}",
        big.len(),
        atom_path(&u, a),
        atom_path(&big, embedding[a.index()])
    );
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
