// Refining, composing and inverting compact open slices `Z(α, m, β)`.

use kep::{MatrixPair, Slice, SliceAlgebra};

pub fn run_example() -> kep::Result<()> {
    let pair = MatrixPair::from_rows(&[vec![2]], &[vec![1]])?;
    let alg = SliceAlgebra::new(&pair);

    let shift = Slice::at_vertex(0, 1);
    println!("refine {}:", shift);
    for child in alg.refine(&shift)? {
        println!("  {}", child);
    }

    let s: Slice = "Z(e(1,1,0)|1|e(1,1,1))".parse()?;
    let t: Slice = "Z(e(1,1,1)|2|e(1,1,0).e(1,1,1))".parse()?;
    match alg.compose(&s, &t)? {
        Some(st) => println!("{} ∘ {} = {}", s, t, st),
        None => println!("{} ∘ {} = ∅", s, t),
    }
    let inv = alg.invert(&s);
    println!("inverse of {} is {}", s, inv);
    println!(
        "{} ∘ {} = {:?}",
        inv,
        s,
        alg.compose(&inv, &s)?.map(|x| x.to_string())
    );
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {}", e);
        std::process::exit(1);
    }
}
