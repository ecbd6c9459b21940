#![allow(dead_code)]

use kep::{IntMatrix, MatrixPair};
use rand::Rng;

/// Random support with at least one entry per row.
pub fn random_support<R: Rng>(n: usize, rng: &mut R) -> Vec<Vec<bool>> {
    (0..n)
        .map(|_| {
            let mut row: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.6)).collect();
            if !row.iter().any(|&x| x) {
                row[rng.gen_range(0..n)] = true;
            }
            row
        })
        .collect()
}

/// `A` in `[1, a_max]` on a random support, `B` nonzero in `[-4, 6]` there.
pub fn random_pseudo_free_pair<R: Rng>(max_n: usize, a_max: i64, rng: &mut R) -> MatrixPair {
    let n = rng.gen_range(1..=max_n);
    let support = random_support(n, rng);
    let mut a = vec![vec![0i64; n]; n];
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if support[i][j] {
                a[i][j] = rng.gen_range(1..=a_max);
                b[i][j] = loop {
                    let x = rng.gen_range(-4..=6);
                    if x != 0 {
                        break x;
                    }
                };
            }
        }
    }
    MatrixPair::from_rows(&a, &b).unwrap()
}

/// Any valid pair: `B` is unconstrained, so zeros may sit on the support.
pub fn random_pair<R: Rng>(max_n: usize, a_max: i64, rng: &mut R) -> MatrixPair {
    let n = rng.gen_range(1..=max_n);
    let support = random_support(n, rng);
    let a: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if support[i][j] {
                        rng.gen_range(1..=a_max)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    let b: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(-4..=6)).collect())
        .collect();
    MatrixPair::from_rows(&a, &b).unwrap()
}

pub fn random_matrix<R: Rng>(rows: usize, cols: usize, bound: i64, rng: &mut R) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntMatrix::from_rows(&data).unwrap()
}
