// Seeded sweep over the cocycle, action and slice laws of one pair.

use kep::laws::check_pair;
use kep::MatrixPair;

pub fn run_example() -> kep::Result<()> {
    let pair = MatrixPair::from_rows(&[vec![2, 1], vec![1, 3]], &[vec![-1, 2], vec![3, 1]])?;
    for r in check_pair(&pair, 50, 1)? {
        println!(
            "{:<32} {:>7} cases  {}",
            r.name,
            r.cases,
            if r.passed() { "ok" } else { "FAILED" }
        );
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {}", e);
        std::process::exit(1);
    }
}
