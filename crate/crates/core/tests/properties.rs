use std::collections::BTreeMap;

use kep::dirlimit::StationaryLimit;
use kep::groupoid::SliceAlgebra;
use kep::intmat::{det, kernel_basis, snf};
use kep::invariants::{compare, homology, ktheory, realize, Operand};
use kep::laws::{random_path, random_slice};
use kep::{FGAbelianGroup, IntMatrix, MatrixPair, Slice};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-bound..=bound, rows * cols).prop_map(move |v| {
        IntMatrix::from_vec(rows, cols, v.into_iter().map(BigInt::from).collect()).unwrap()
    })
}

fn any_matrix(max: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| matrix(r, c, bound))
}

fn square(max: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max).prop_flat_map(move |n| matrix(n, n, bound))
}

/// `(support, a, b)` per entry; `b` is nonzero wherever `a` is.
fn pseudo_free_pair(max_n: usize) -> impl Strategy<Value = MatrixPair> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(
            (any::<bool>(), 1i64..=6, prop_oneof![-4i64..=-1, 1i64..=6]),
            n * n,
        )
        .prop_map(move |cells| {
            let mut a = vec![vec![0i64; n]; n];
            let mut b = vec![vec![0i64; n]; n];
            for (k, &(on, x, y)) in cells.iter().enumerate() {
                let (i, j) = (k / n, k % n);
                if on || i == j {
                    a[i][j] = x;
                    b[i][j] = y;
                }
            }
            MatrixPair::from_rows(&a, &b).unwrap()
        })
    })
}

fn any_pair(max_n: usize) -> impl Strategy<Value = MatrixPair> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(0i64..=4, n * n),
            prop::collection::vec(-4i64..=6, n * n),
        )
            .prop_map(move |(a, b)| {
                let mut a: Vec<Vec<i64>> = a.chunks(n).map(<[i64]>::to_vec).collect();
                for (i, row) in a.iter_mut().enumerate() {
                    if row.iter().all(|&x| x == 0) {
                        row[i] = 1;
                    }
                }
                let b: Vec<Vec<i64>> = b.chunks(n).map(<[i64]>::to_vec).collect();
                MatrixPair::from_rows(&a, &b).unwrap()
            })
    })
}

fn torsion_chain() -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec((2i64..=12).prop_map(BigInt::from), 0..=3)
}

/// Number of elements of each order in `⊕ Z/d`, by enumeration.
fn order_census(orders: &[BigInt]) -> BTreeMap<u64, u64> {
    let ds: Vec<u64> = orders.iter().map(|d| d.to_u64().unwrap()).collect();
    let mut census = BTreeMap::new();
    let mut x = vec![0u64; ds.len()];
    loop {
        let ord = x
            .iter()
            .zip(&ds)
            .fold(1u64, |acc, (&xi, &d)| acc.lcm(&(d / xi.gcd(&d))));
        *census.entry(ord).or_insert(0) += 1;
        let mut k = 0;
        loop {
            if k == ds.len() {
                return census;
            }
            x[k] += 1;
            if x[k] < ds[k] {
                break;
            }
            x[k] = 0;
            k += 1;
        }
    }
}

fn same_lattice(n: usize, a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> bool {
    let la = kep::intmat::Lattice::span(n, a);
    let lb = kep::intmat::Lattice::span(n, b);
    a.iter().all(|v| lb.contains(v)) && b.iter().all(|v| la.contains(v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_is_a_unimodular_diagonalization(m in any_matrix(5, 30)) {
        let s = snf(&m);
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert_eq!(det(&s.u).unwrap().abs(), BigInt::one());
        prop_assert_eq!(det(&s.v).unwrap().abs(), BigInt::one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
            prop_assert!(divides);
        }
    }

    #[test]
    fn kernel_basis_spans_the_kernel(m in any_matrix(4, 5)) {
        let basis = kernel_basis(&m);
        prop_assert_eq!(basis.len(), m.cols() - snf(&m).rank());
        for v in &basis {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn cokernel_rank_and_order(m in square(5, 20)) {
        let g = FGAbelianGroup::from_cokernel(&m);
        let rank = snf(&m).rank();
        prop_assert_eq!(g.free_rank(), m.rows() - rank);
        let d = det(&m).unwrap();
        if !d.is_zero() {
            prop_assert_eq!(g.torsion_order(), d.abs());
        }
        prop_assert!(g.is_isomorphic(&FGAbelianGroup::from_cokernel(&m.transpose())));
        prop_assert_eq!(FGAbelianGroup::kernel_group(&m).free_rank(), m.cols() - rank);
    }

    #[test]
    fn group_text_round_trips(r in 0usize..4, t in torsion_chain()) {
        let g = FGAbelianGroup::new(r, t);
        prop_assert_eq!(g.to_string().parse::<FGAbelianGroup>().unwrap(), g);
    }

    #[test]
    fn direct_sum_is_commutative_and_associative(
        (r1, t1) in (0usize..3, torsion_chain()),
        (r2, t2) in (0usize..3, torsion_chain()),
        (r3, t3) in (0usize..3, torsion_chain()),
    ) {
        let (g1, g2, g3) = (FGAbelianGroup::new(r1, t1), FGAbelianGroup::new(r2, t2), FGAbelianGroup::new(r3, t3));
        prop_assert_eq!(g1.direct_sum(&g2), g2.direct_sum(&g1));
        prop_assert_eq!(g1.direct_sum(&g2).direct_sum(&g3), g1.direct_sum(&g2.direct_sum(&g3)));
    }

    #[test]
    fn normal_form_matches_element_orders(raw in prop::collection::vec((1i64..=12).prop_map(BigInt::from), 0..=4)) {
        let g = FGAbelianGroup::new(0, raw.clone());
        prop_assert_eq!(order_census(g.torsion()), order_census(&raw));
        prop_assert_eq!(g.torsion_order(), raw.iter().product::<BigInt>());
        for w in g.torsion().windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn eventual_kernel_is_stable_saturated_and_invariant(m in square(4, 3), x in prop::collection::vec(-5i64..=5, 4), k in 2i64..=5) {
        let n = m.rows();
        let lim = StationaryLimit::with_coordinate_map(m.clone()).unwrap();
        let ek = lim.eventual_kernel();
        let next = kernel_basis(&m.pow(n as u32 + 1).unwrap());
        prop_assert!(same_lattice(n, ek.basis(), &next));
        let x: Vec<BigInt> = x[..n].iter().map(|&v| BigInt::from(v)).collect();
        let kx: Vec<BigInt> = x.iter().map(|v| v * k).collect();
        prop_assert_eq!(ek.contains(&x), ek.contains(&kx));
        for v in ek.basis() {
            prop_assert!(ek.contains(&m.mul_vec(v).unwrap()));
        }
    }

    #[test]
    fn limit_groups_match_closed_formulas(m in square(4, 3)) {
        let lim = StationaryLimit::of_matrix(&m).unwrap();
        let im = m.identity_minus().unwrap();
        prop_assert!(lim.ker_one_minus_shift().unwrap().is_isomorphic(&FGAbelianGroup::kernel_group(&im)));
        prop_assert!(lim.coker_one_minus_shift().is_isomorphic(&FGAbelianGroup::from_cokernel(&im)));
        let flipped = StationaryLimit::with_coordinate_map(m.clone()).unwrap();
        prop_assert!(flipped.coker_one_minus_shift().is_isomorphic(&lim.coker_one_minus_shift()));
        prop_assert!(flipped.ker_one_minus_shift().unwrap().is_isomorphic(&lim.ker_one_minus_shift().unwrap()));
    }

    #[test]
    fn k_theory_is_summed_homology(p in any_pair(4)) {
        let h = homology(&p);
        let (k0, k1) = ktheory(&p);
        prop_assert!(k0.is_isomorphic(&h.h0.direct_sum(&h.h2)));
        prop_assert!(k1.is_isomorphic(&h.h1));
        prop_assert_eq!(k0.free_rank(), k1.free_rank());
    }

    #[test]
    fn kappa_permutes_parallel_edges(p in any_pair(3), m in -20i64..=20) {
        let m = BigInt::from(m);
        let n = p.size();
        for v in 0..n {
            for w in 0..n {
                let mut images: Vec<u64> = (0..p.graph().multiplicity(v, w))
                    .map(|l| p.kappa_edge(&m, &kep::Edge::new(v, w, l)).unwrap().0.label)
                    .collect();
                images.sort_unstable();
                prop_assert!(images.iter().copied().eq(0..p.graph().multiplicity(v, w)));
            }
        }
    }

    #[test]
    fn path_action_inverts_and_folds(p in pseudo_free_pair(3), m1 in -20i64..=20, m2 in -20i64..=20, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let start = (seed % p.size() as u64) as usize;
        let path = random_path(&p, start, 6, &mut rng);
        let (m1, m2) = (BigInt::from(m1), BigInt::from(m2));
        let (k, phi) = p.kappa_path(&m1, &path).unwrap();
        let (back, phi_back) = p.kappa_path(&-&m1, &k).unwrap();
        prop_assert_eq!(&back, &path);
        prop_assert_eq!(&phi_back, &-&phi);
        let (k2, phi2) = p.kappa_path(&m2, &path).unwrap();
        let (k12, phi12) = p.kappa_path(&m1, &k2).unwrap();
        let (ks, phis) = p.kappa_path(&(&m1 + &m2), &path).unwrap();
        prop_assert_eq!(ks, k12);
        prop_assert_eq!(phis, phi12 + phi2);
    }

    #[test]
    fn slices_invert_and_cancel(p in any_pair(3), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = SliceAlgebra::new(&p);
        let s = random_slice(&p, 3, &mut rng);
        prop_assert_eq!(alg.invert(&alg.invert(&s)), s.clone());
        let unit = Slice::new(s.beta().clone(), 0, s.beta().clone()).unwrap();
        prop_assert_eq!(alg.compose(&alg.invert(&s), &s).unwrap(), Some(unit));
        let pieces = alg.refine(&s).unwrap();
        prop_assert!(alg.same_set(&[s], &pieces).unwrap());
    }

    #[test]
    fn compare_is_symmetric(p1 in any_pair(3), p2 in any_pair(3)) {
        let (o1, o2) = (Operand::Katsura(p1), Operand::Katsura(p2));
        let forward = compare(&o1, &o2).unwrap();
        let backward = compare(&o2, &o1).unwrap();
        prop_assert_eq!(forward.mirrored(), backward.clone());
        prop_assert_eq!(forward.verdict(), backward.verdict());
    }

    #[test]
    fn realize_round_trips(r in 0usize..=3, t0 in torsion_chain(), t1 in torsion_chain()) {
        let real = realize(r, &t0, &t1).unwrap();
        let (k0, k1) = ktheory(&real.pair);
        prop_assert!(k0.is_isomorphic(&FGAbelianGroup::new(r, t0)));
        prop_assert!(k1.is_isomorphic(&FGAbelianGroup::new(r, t1)));
        prop_assert!(real.pair.satisfies_pseudo_free_criterion());
    }
}

#[test]
fn two_by_two_invariant_factors_are_gcd_and_det() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..500 {
        let vals: Vec<i64> = (0..4)
            .map(|_| rand::Rng::gen_range(&mut rng, -50..=50))
            .collect();
        let m = IntMatrix::from_rows(&[vals[..2].to_vec(), vals[2..].to_vec()]).unwrap();
        let diag = snf(&m).diagonal();
        let g = vals.iter().fold(0i64, |acc, x| acc.gcd(x));
        let d = (vals[0] * vals[3] - vals[1] * vals[2]).abs();
        assert_eq!(diag[0], BigInt::from(g), "{}", m);
        assert_eq!(&diag[0] * &diag[1], BigInt::from(d), "{}", m);
    }
}
