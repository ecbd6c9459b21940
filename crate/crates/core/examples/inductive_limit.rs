// Fixed points and coinvariants of the shift on `lim(Z^n, M)`, checked
// against `ker(I - M)` and `coker(I - M)`.

use kep::dirlimit::{LimitElement, StationaryLimit};
use kep::{FGAbelianGroup, IntMatrix};
use num_bigint::BigInt;

pub fn run_example() -> kep::Result<()> {
    let ms = [
        IntMatrix::from_rows(&[vec![1, 1], vec![0, 0]])?,
        IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]])?,
        IntMatrix::from_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]])?,
    ];
    for m in &ms {
        let lim = StationaryLimit::of_matrix(m)?;
        let im = m.identity_minus()?;
        println!("M = {}", m);
        println!("  eventual kernel rank {}", lim.eventual_kernel().rank());
        println!(
            "  ker(1 - σ) = {}  (ker(I - M) = {})",
            lim.ker_one_minus_shift()?,
            FGAbelianGroup::kernel_group(&im)
        );
        println!(
            "  coker(1 - σ) = {}  (coker(I - M) = {})",
            lim.coker_one_minus_shift(),
            FGAbelianGroup::from_cokernel(&im)
        );
    }

    let lim = StationaryLimit::of_matrix(&ms[0])?;
    let x = LimitElement::new(0, vec![BigInt::from(0), BigInt::from(1)]);
    let zero = LimitElement::new(3, vec![BigInt::from(0), BigInt::from(0)]);
    println!(
        "[(0,1), 0] = 0 in the limit: {}",
        lim.limit_equal(&x, &zero)?
    );
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {}", e);
        std::process::exit(1);
    }
}
