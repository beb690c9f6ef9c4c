// Group members that fix a closed set and move a chosen atom.

use cardlab::group::{equivariant_extension, index_transposition};
use cardlab::path::{atom_path, parse_atom_path};
use cardlab::{build_universe, closure, is_member, mover, validate_order, OrderSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let order = validate_order(
        &OrderSpec::new(["p", "q"])
            .with_reflexive()
            .with_lestar(&[("p", "q")]),
    )?;
    let u = build_universe(&order, 1, 3)?;

    let b = u.set_of([parse_atom_path(&u, "p@0[0]")?]);
    let c = parse_atom_path(&u, "q@1[p@0[0]]#1")?;
    let g = mover(&u, &b, c)?;
    assert!(is_member(&u, g.as_slice()));
    assert!(g.fixes_all(&closure(&u, &b).members));
    println!("{} -> {}", atom_path(&u, c), atom_path(&u, g.apply(c)));
    for cycle in g.cycles() {
        let names: Vec<_> = cycle.iter().map(|&a| atom_path(&u, a)).collect();
        println!("  ({})", names.join(" "));
    }

    // Swapping two level-0 indices extends to the whole universe.
    let family = u.atom(parse_atom_path(&u, "q@0[0]")?).family();
    let t = index_transposition(&u, family, 0, 2)?;
    println!(
        "transposition of q@0[0] and q@0[2] moves {} atoms",
        t.support().len()
    );

    let level0: Vec<_> = u.stratum(0).map(|a| t.apply(a)).collect();
    let again = equivariant_extension(&u, &level0, 0, None)?;
    assert_eq!(again, t);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
