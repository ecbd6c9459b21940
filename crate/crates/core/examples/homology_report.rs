// Homology, K-theory and structural properties of one pair.
//
// ```text
// cargo run --example homology_report
// ```

use kep::invariants::analyze;
use kep::MatrixPair;

pub fn run_example() -> kep::Result<()> {
    let pairs = [
        (vec![vec![2]], vec![vec![1]]),
        (vec![vec![3]], vec![vec![2]]),
        (vec![vec![2, 1], vec![1, 3]], vec![vec![-1, 2], vec![3, 1]]),
    ];
    for (a, b) in &pairs {
        let pair = MatrixPair::from_rows(a, b)?;
        let report = analyze(&pair)?;
        let h = report.homology.degrees().map(|g| g.to_string());
        println!("A = {}  B = {}", pair.a(), pair.b());
        println!("  H_0..H_3 = {}", h.join(", "));
        println!("  K_0 = {}  K_1 = {}", report.k0, report.k1);
        println!(
            "  det(I - A) = {}  det(I - B) = {}",
            report.det_ia, report.det_ib
        );
        println!(
            "  pseudo-free: {:?}  hk_ok: {}",
            report.properties.pseudo_free, report.hk_ok
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
