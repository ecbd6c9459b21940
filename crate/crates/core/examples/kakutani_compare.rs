// Two groupoids with equal K-theory that homology tells apart.

use kep::invariants::{compare, Operand};
use kep::{IntMatrix, MatrixPair};

pub fn run_example() -> kep::Result<()> {
    let left = Operand::Katsura(MatrixPair::from_rows(&[vec![2]], &[vec![1]])?);
    let right = Operand::Sft(IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]])?);
    let report = compare(&left, &right)?;
    let (l, r) = (
        report.left.homology.degrees(),
        report.right.homology.degrees(),
    );
    for i in 0..4 {
        println!(
            "H_{}: {:>4} | {:<4} {}",
            i,
            l[i],
            r[i],
            if report.homology_isomorphic[i] {
                ""
            } else {
                "differs"
            }
        );
    }
    println!("K-theory equal: {}", report.k_theory_equal());
    println!("{}", report.verdict());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {}", e);
        std::process::exit(1);
    }
}
