// Orbits of the stabilizer of a support; the singleton orbits are exactly
// its closure.

use cardlab::path::{atom_path, parse_atom_path};
use cardlab::{build_universe, closure, fixing_generators, orbits, validate_order, OrderSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let order = validate_order(
        &OrderSpec::new(["p", "q"])
            .with_reflexive()
            .with_le(&[("p", "q")])
            .with_lestar(&[("p", "q")]),
    )?;
    let u = build_universe(&order, 1, 3)?;
    let b = u.set_of([parse_atom_path(&u, "p@0[0]")?]);

    let gens = fixing_generators(&u, &b);
    let parts = orbits(&u, &gens)?;
    println!("{} generators, {} orbits", gens.len(), parts.len());
    for o in &parts {
        let names: Vec<_> = o.iter().map(|&a| atom_path(&u, a)).collect();
        println!("  {{{}}}", names.join(", "));
    }
    let fixed = u.set_of(parts.iter().filter(|o| o.len() == 1).map(|o| o[0]));
    assert_eq!(fixed, closure(&u, &b).members);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
