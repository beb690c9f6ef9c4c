// Counting labeled doubly ordered sets on small carriers.

use cardlab::enumerate_small_doubly_ordered;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in 0..=3 {
        let all: Vec<_> = enumerate_small_doubly_ordered(n)?.collect();
        let chains = all
            .iter()
            .filter(|d| (0..n).all(|p| (0..n).all(|q| d.le(p, q) || d.le(q, p))))
            .count();
        println!(
            "{n} elements: {} structures, {chains} with le total",
            all.len()
        );
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
