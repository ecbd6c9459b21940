//! Finitely generated abelian groups up to isomorphism.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::intmat::{snf, IntMatrix};

/// `Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k` with `t_i >= 2` and `t_i | t_{i+1}`.
///
/// The canonical form is enforced by every constructor, so derived equality
/// is group isomorphism.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FGAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        Self::new(0, vec![order.into()])
    }

    /// `Z^free_rank ⊕ ⊕_d Z/d` for arbitrary cyclic orders `d`. A zero order
    /// contributes a free summand; signs are ignored.
    pub fn new(free_rank: usize, cyclic_orders: Vec<BigInt>) -> Self {
        let mut free_rank = free_rank;
        let mut factors = Vec::with_capacity(cyclic_orders.len());
        for d in cyclic_orders {
            let d = d.abs();
            if d.is_zero() {
                free_rank += 1;
            } else if !d.is_one() {
                factors.push(d);
            }
        }
        FGAbelianGroup {
            free_rank,
            torsion: invariant_factors(factors),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Cokernel `Z^rows / M·Z^cols`.
    pub fn from_cokernel(m: &IntMatrix) -> Self {
        let dec = snf(m);
        let diag = dec.diagonal();
        let rank = diag.iter().filter(|d| !d.is_zero()).count();
        let torsion = diag.into_iter().filter(|d| d > &BigInt::one()).collect();
        FGAbelianGroup {
            free_rank: m.rows() - rank,
            torsion,
        }
    }

    /// Kernel of `M` as a group. Always free.
    pub fn kernel_group(m: &IntMatrix) -> Self {
        Self::free(m.cols() - snf(m).rank())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut factors = self.torsion.clone();
        factors.extend(other.torsion.iter().cloned());
        FGAbelianGroup {
            free_rank: self.free_rank + other.free_rank,
            torsion: invariant_factors(factors),
        }
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self == other
    }
}

/// Rewrites cyclic factors (all `>= 2`) as a divisor chain by repeatedly
/// replacing pairs with their gcd and lcm, then drops the resulting ones.
fn invariant_factors(mut factors: Vec<BigInt>) -> Vec<BigInt> {
    let n = factors.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = factors[i].gcd(&factors[j]);
            let l = factors[i].lcm(&factors[j]);
            factors[i] = g;
            factors[j] = l;
        }
    }
    factors.retain(|d| !d.is_one());
    factors
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{}", d)));
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl std::str::FromStr for FGAbelianGroup {
    type Err = crate::error::Error;

    /// Parses the rendering produced by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || crate::error::Error::Syntax(format!("not a group rendering: {:?}", s));
        let s = s.trim();
        if s == "0" {
            return Ok(Self::trivial());
        }
        let mut free = 0usize;
        let mut orders = Vec::new();
        for part in s.split('⊕').map(str::trim) {
            if part == "Z" {
                free += 1;
            } else if let Some(r) = part.strip_prefix("Z^") {
                free += r.parse::<usize>().map_err(|_| bad())?;
            } else if let Some(d) = part.strip_prefix("Z/") {
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if !d.is_positive() {
                    return Err(bad());
                }
                orders.push(d);
            } else {
                return Err(bad());
            }
        }
        Ok(Self::new(free, orders))
    }
}
