// Smith and Hermite normal forms, and the groups they read off.

use kep::intmat::{det, hnf, snf};
use kep::{FGAbelianGroup, IntMatrix};

pub fn run_example() -> kep::Result<()> {
    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])?;
    let s = snf(&m);
    println!("M = {}", m);
    println!("D = {}", s.d);
    println!("U = {}", s.u);
    println!("V = {}", s.v);
    println!("U·M·V = D: {}", s.u.mul(&m)?.mul(&s.v)? == s.d);
    println!("det M = {}", det(&m)?);
    println!("coker M = {}", FGAbelianGroup::from_cokernel(&m));
    println!(
        "HNF = {}",
        hnf(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]])?)
    );
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {}", e);
        std::process::exit(1);
    }
}
