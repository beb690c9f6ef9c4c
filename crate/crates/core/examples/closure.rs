// Closures of atom sets: parents downward, injective children upward.

use cardlab::path::{atom_path, parse_atom_path};
use cardlab::{build_universe, closure, is_closed, nonzero_index_part, validate_order, OrderSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let order = validate_order(
        &OrderSpec::new(["p", "q", "r"])
            .with_reflexive()
            .with_le(&[("p", "q"), ("q", "r"), ("p", "r")])
            .with_lestar(&[("p", "q"), ("q", "r"), ("p", "r")]),
    )?;
    let u = build_universe(&order, 2, 3)?;

    let p0 = parse_atom_path(&u, "p@0[0]")?;
    let cl = closure(&u, &u.set_of([p0]));
    println!("Cl({{p@0[0]}}) after {} stages:", cl.stages);
    for a in cl.members.iter() {
        println!("  {}", atom_path(&u, a));
    }
    assert!(is_closed(&u, &cl.members));

    // A successor pulls in its ancestors and their injective children.
    let deep = parse_atom_path(&u, "r@2[q@1[p@0[2]]#0]#0")?;
    let cl = closure(&u, &u.set_of([deep]));
    println!(
        "Cl({{{}}}) has {} members, {} with a non-zero index",
        atom_path(&u, deep),
        cl.members.len(),
        nonzero_index_part(&u, &u.set_of([deep])).len()
    );
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
