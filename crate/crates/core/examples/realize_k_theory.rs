// Pairs with prescribed K-theory.

use kep::invariants::realize;
use num_bigint::BigInt;

fn orders(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&d| BigInt::from(d)).collect()
}

pub fn run_example() -> kep::Result<()> {
    let targets: [(usize, &[i64], &[i64]); 4] = [
        (1, &[], &[]),
        (0, &[3], &[]),
        (0, &[], &[5]),
        (2, &[2, 4], &[6]),
    ];
    for (r, t0, t1) in targets {
        let real = realize(r, &orders(t0), &orders(t1))?;
        println!("rank {} T0 {:?} T1 {:?}", r, t0, t1);
        println!("  A = {}", real.pair.a());
        println!("  B = {}", real.pair.b());
        println!("  K_0 = {}  K_1 = {}", real.k0, real.k1);
    }
    let err = kep::invariants::realize_groups(&"Z".parse()?, &"0".parse()?).unwrap_err();
    println!("K_0 = Z, K_1 = 0: {}", err);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {}", e);
        std::process::exit(1);
    }
}
