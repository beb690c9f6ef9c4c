// Validating a doubly ordered set, and what the axiom errors look like.

use cardlab::cli::codec::{parse_spec, serialize_spec};
use cardlab::{complete_relations, validate_order, OrderSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = parse_spec(
        r#"{"elements": ["p", "q"],
            "le": [["p", "p"], ["q", "q"], ["p", "q"]],
            "lestar": [["p", "p"], ["q", "q"], ["p", "q"]]}"#,
    )?;
    let order = validate_order(&spec)?;
    println!("p < q: {}", order.strict_less("p", "q")?);
    print!("{}", serialize_spec(&order.to_spec()));

    // le must be reflexive.
    let broken = OrderSpec::new(["p", "q"]).with_lestar(&[("p", "p"), ("q", "q")]);
    let err = validate_order(&broken).unwrap_err();
    println!("rejected: {err}");

    // le must be contained in lestar; completion repairs both.
    let partial = OrderSpec::new(["a", "b", "c"]).with_le(&[("a", "b"), ("b", "c")]);
    println!("rejected: {}", validate_order(&partial).unwrap_err());
    let completed = validate_order(&complete_relations(&partial))?;
    assert!(completed.le(0, 2) && completed.lestar(0, 2));
    println!("completed: a < c is {}", completed.strict_less("a", "c")?);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
