// The action `κ_m` and cocycle `φ` on edges and paths, and fixed
// eventually periodic paths.

use kep::{EventuallyPeriodicPath, MatrixPair, Path};
use num_bigint::BigInt;

pub fn run_example() -> kep::Result<()> {
    let pair = MatrixPair::from_rows(&[vec![2]], &[vec![1]])?;
    let p: Path = "e(1,1,1).e(1,1,1).e(1,1,0)".parse()?;
    for m in -2..=2 {
        let (image, phi) = pair.kappa_path(&BigInt::from(m), &p)?;
        println!("κ_{:<2}({}) = {}  φ = {}", m, p, image, phi);
    }

    let x = EventuallyPeriodicPath::periodic("e(1,1,0)".parse()?)?;
    for b in [1, 2] {
        let pair = MatrixPair::from_rows(&[vec![2]], &[vec![b]])?;
        let fixed: Vec<i64> = (-4..=4)
            .filter(|&m| {
                let depth = pair.default_fix_depth(&x);
                pair.fixes_path(&BigInt::from(m), &x, depth)
                    .ok()
                    .and_then(|v| v.is_fixed())
                    == Some(true)
            })
            .collect();
        println!("B = ({}): κ_m fixes e(1,1,0)^∞ for m in {:?}", b, fixed);
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {}", e);
        std::process::exit(1);
    }
}
