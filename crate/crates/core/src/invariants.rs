//! Homology, K-theory and the decision procedures built on them.
//!
//! For a pseudo-free pair the homology of the groupoid is
//!
//! ```text
//! H_0 = coker(I - A)    H_1 = ker(I - A) ⊕ coker(I - B)    H_2 = ker(I - B)
//! ```
//!
//! with `H_i = 0` for `i >= 3`, while the C*-algebra has
//! `K_0 = coker(I - A) ⊕ ker(I - B)` and `K_1 = coker(I - B) ⊕ ker(I - A)`.
//! [`hk_check`] recomputes the homology through inductive limits
//! ([`crate::dirlimit`]) and compares it with the K-groups.

use num_bigint::BigInt;
use serde::Serialize;

use crate::abgroup::FGAbelianGroup;
use crate::dirlimit::StationaryLimit;
use crate::error::{Error, Result};
use crate::groupoid::{classify, PropertyReport, Tri};
use crate::intmat::{det, IntMatrix};
use crate::selfsim::{Graph, MatrixPair};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTuple {
    pub h0: FGAbelianGroup,
    pub h1: FGAbelianGroup,
    pub h2: FGAbelianGroup,
}

impl HomologyTuple {
    /// `H_0 .. H_3`; the last entry is always trivial.
    pub fn degrees(&self) -> [FGAbelianGroup; 4] {
        [
            self.h0.clone(),
            self.h1.clone(),
            self.h2.clone(),
            FGAbelianGroup::trivial(),
        ]
    }

    pub fn is_isomorphic(&self, other: &HomologyTuple) -> bool {
        self.h0.is_isomorphic(&other.h0)
            && self.h1.is_isomorphic(&other.h1)
            && self.h2.is_isomorphic(&other.h2)
    }
}

fn i_minus(m: &IntMatrix) -> IntMatrix {
    m.identity_minus().expect("validated square")
}

pub fn homology(pair: &MatrixPair) -> HomologyTuple {
    let ia = i_minus(pair.a());
    let ib = i_minus(pair.b());
    HomologyTuple {
        h0: FGAbelianGroup::from_cokernel(&ia),
        h1: FGAbelianGroup::kernel_group(&ia).direct_sum(&FGAbelianGroup::from_cokernel(&ib)),
        h2: FGAbelianGroup::kernel_group(&ib),
    }
}

pub fn ktheory(pair: &MatrixPair) -> (FGAbelianGroup, FGAbelianGroup) {
    let ia = i_minus(pair.a());
    let ib = i_minus(pair.b());
    let k0 = FGAbelianGroup::from_cokernel(&ia).direct_sum(&FGAbelianGroup::kernel_group(&ib));
    let k1 = FGAbelianGroup::from_cokernel(&ib).direct_sum(&FGAbelianGroup::kernel_group(&ia));
    (k0, k1)
}

/// Homology assembled from the shift on `lim(Z^N, A)` and `lim(Z^N, B)`.
pub fn homology_via_limits(pair: &MatrixPair) -> Result<HomologyTuple> {
    let lim_a = StationaryLimit::of_matrix(pair.a())?;
    let lim_b = StationaryLimit::of_matrix(pair.b())?;
    Ok(HomologyTuple {
        h0: lim_a.coker_one_minus_shift(),
        h1: lim_a
            .ker_one_minus_shift()?
            .direct_sum(&lim_b.coker_one_minus_shift()),
        h2: lim_b.ker_one_minus_shift()?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkEvidence {
    pub k0: FGAbelianGroup,
    pub k1: FGAbelianGroup,
    /// Homology from the closed formulas.
    pub formula: HomologyTuple,
    /// Homology from inductive limits.
    pub limits: HomologyTuple,
    /// `K_0 ≅ H_0 ⊕ H_2` and `K_1 ≅ H_1`, with `H` from the limit route.
    pub hk_ok: bool,
    /// Both homology routes agree degreewise.
    pub oracle_ok: bool,
}

pub fn hk_check(pair: &MatrixPair) -> Result<HkEvidence> {
    let (k0, k1) = ktheory(pair);
    let formula = homology(pair);
    let limits = homology_via_limits(pair)?;
    let hk_ok = k0.is_isomorphic(&limits.h0.direct_sum(&limits.h2)) && k1.is_isomorphic(&limits.h1);
    let oracle_ok = formula.is_isomorphic(&limits);
    Ok(HkEvidence {
        k0,
        k1,
        formula,
        limits,
        hk_ok,
        oracle_ok,
    })
}

fn validate_sft(a: &IntMatrix) -> Result<()> {
    Graph::build(a).map(|_| ())
}

/// Homology of the shift-of-finite-type groupoid of `A`:
/// `(coker(I - A), ker(I - A), 0)`.
pub fn sft_homology(a: &IntMatrix) -> Result<HomologyTuple> {
    validate_sft(a)?;
    let ia = i_minus(a);
    Ok(HomologyTuple {
        h0: FGAbelianGroup::from_cokernel(&ia),
        h1: FGAbelianGroup::kernel_group(&ia),
        h2: FGAbelianGroup::trivial(),
    })
}

/// Whether the homology formulas are backed by the theorem hypotheses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Validity {
    #[serde(rename = "theorem")]
    Theorem,
    #[serde(rename = "formula-only (theorem hypothesis unmet)")]
    FormulaOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub properties: PropertyReport,
    pub homology: HomologyTuple,
    pub k0: FGAbelianGroup,
    pub k1: FGAbelianGroup,
    pub det_ia: BigInt,
    pub det_ib: BigInt,
    pub hk_ok: bool,
    pub oracle_ok: bool,
    pub validity: Validity,
}

pub fn analyze(pair: &MatrixPair) -> Result<InvariantReport> {
    let properties = classify(pair);
    let evidence = hk_check(pair)?;
    let validity = if properties.pseudo_free == Tri::Yes {
        Validity::Theorem
    } else {
        Validity::FormulaOnly
    };
    if evidence.k0.free_rank() != evidence.k1.free_rank() {
        return Err(Error::Internal(format!(
            "K_0 = {} and K_1 = {} have different free ranks",
            evidence.k0, evidence.k1
        )));
    }
    Ok(InvariantReport {
        properties,
        homology: evidence.formula,
        k0: evidence.k0,
        k1: evidence.k1,
        det_ia: det(&i_minus(pair.a()))?,
        det_ib: det(&i_minus(pair.b()))?,
        hk_ok: evidence.hk_ok,
        oracle_ok: evidence.oracle_ok,
        validity,
    })
}

/// Either side of a comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operand {
    Katsura(MatrixPair),
    /// The shift-of-finite-type groupoid of `A`, which plays the role of
    /// `B = 0`.
    Sft(IntMatrix),
}

/// Invariants of one operand, as used by [`compare`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperandInvariants {
    pub homology: HomologyTuple,
    pub k0: FGAbelianGroup,
    pub k1: FGAbelianGroup,
    pub ker_ia: FGAbelianGroup,
    pub ker_ib: FGAbelianGroup,
    pub coker_ia: FGAbelianGroup,
    pub det_ia: BigInt,
    pub det_ib: BigInt,
}

impl Operand {
    pub fn a(&self) -> &IntMatrix {
        match self {
            Operand::Katsura(p) => p.a(),
            Operand::Sft(a) => a,
        }
    }

    pub fn invariants(&self) -> Result<OperandInvariants> {
        match self {
            Operand::Katsura(pair) => {
                let (k0, k1) = ktheory(pair);
                let ia = i_minus(pair.a());
                let ib = i_minus(pair.b());
                Ok(OperandInvariants {
                    homology: homology(pair),
                    k0,
                    k1,
                    ker_ia: FGAbelianGroup::kernel_group(&ia),
                    ker_ib: FGAbelianGroup::kernel_group(&ib),
                    coker_ia: FGAbelianGroup::from_cokernel(&ia),
                    det_ia: det(&ia)?,
                    det_ib: det(&ib)?,
                })
            }
            Operand::Sft(a) => {
                let homology = sft_homology(a)?;
                let ia = i_minus(a);
                Ok(OperandInvariants {
                    k0: homology.h0.clone(),
                    k1: homology.h1.clone(),
                    ker_ia: homology.h1.clone(),
                    ker_ib: FGAbelianGroup::trivial(),
                    coker_ia: homology.h0.clone(),
                    det_ia: det(&ia)?,
                    det_ib: BigInt::from(1),
                    homology,
                })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub left: OperandInvariants,
    pub right: OperandInvariants,
    /// Per degree `0..=3`.
    pub homology_isomorphic: [bool; 4],
    pub k_isomorphic: [bool; 2],
    pub ker_ia_isomorphic: bool,
    pub ker_ib_isomorphic: bool,
    /// `coker(I - A)` together with `det(I - A)`.
    pub coker_ia_isomorphic: bool,
    pub det_ia_equal: bool,
    pub distinguished: bool,
}

impl ComparisonReport {
    pub fn k_theory_equal(&self) -> bool {
        self.k_isomorphic.iter().all(|&x| x)
    }

    pub fn distinguishing_degrees(&self) -> Vec<usize> {
        (0..4).filter(|&i| !self.homology_isomorphic[i]).collect()
    }

    pub fn verdict(&self) -> &'static str {
        if self.distinguished {
            "distinguished (not Kakutani equivalent)"
        } else {
            "not distinguished by these invariants"
        }
    }

    /// The same comparison with the operands swapped.
    pub fn mirrored(&self) -> ComparisonReport {
        ComparisonReport {
            left: self.right.clone(),
            right: self.left.clone(),
            ..self.clone()
        }
    }
}

/// Compares two operands by their Kakutani invariants. Homology is one, so
/// any non-isomorphic degree separates them; agreement proves nothing.
pub fn compare(p1: &Operand, p2: &Operand) -> Result<ComparisonReport> {
    let left = p1.invariants()?;
    let right = p2.invariants()?;
    let lh = left.homology.degrees();
    let rh = right.homology.degrees();
    let homology_isomorphic: [bool; 4] = std::array::from_fn(|i| lh[i].is_isomorphic(&rh[i]));
    let k_isomorphic = [
        left.k0.is_isomorphic(&right.k0),
        left.k1.is_isomorphic(&right.k1),
    ];
    Ok(ComparisonReport {
        homology_isomorphic,
        k_isomorphic,
        ker_ia_isomorphic: left.ker_ia.is_isomorphic(&right.ker_ia),
        ker_ib_isomorphic: left.ker_ib.is_isomorphic(&right.ker_ib),
        coker_ia_isomorphic: left.coker_ia.is_isomorphic(&right.coker_ia),
        det_ia_equal: left.det_ia == right.det_ia,
        distinguished: homology_isomorphic.iter().any(|&x| !x),
        left,
        right,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub pair: MatrixPair,
    pub k0: FGAbelianGroup,
    pub k1: FGAbelianGroup,
    pub properties: PropertyReport,
}

fn block(a: i64, b: i64) -> (IntMatrix, IntMatrix) {
    (IntMatrix::diagonal(&[a]), IntMatrix::diagonal(&[b]))
}

/// A block-diagonal pair with `K_0 ≅ k0` and `K_1 ≅ k1`.
///
/// For finite square matrices `coker(I - M)` has free rank `nullity(I - M)`,
/// so `K_0` and `K_1` always share their free rank; targets that differ there
/// are rejected.
pub fn realize_groups(k0: &FGAbelianGroup, k1: &FGAbelianGroup) -> Result<Realization> {
    if k0.free_rank() != k1.free_rank() {
        return Err(Error::Unrealizable(format!(
            "K_0 = {} and K_1 = {} have free ranks {} and {}; for finite matrices both equal \
             nullity(I - A) + nullity(I - B) because rank(coker(I - M)) = nullity(I - M)",
            k0,
            k1,
            k0.free_rank(),
            k1.free_rank()
        )));
    }
    let mut blocks: Vec<(IntMatrix, IntMatrix)> = Vec::new();
    // ((d+1), (2)): coker(I - A) = Z/d, I - B = (-1).
    for d in k0.torsion() {
        blocks.push((IntMatrix::diagonal(&[d + 1]), IntMatrix::diagonal(&[2])));
    }
    // ((2), (d+1)): I - A = (-1), coker(I - B) = Z/d.
    for d in k1.torsion() {
        blocks.push((IntMatrix::diagonal(&[2]), IntMatrix::diagonal(&[d + 1])));
    }
    for _ in 0..k0.free_rank() {
        blocks.push(block(2, 1));
    }
    if blocks.is_empty() {
        blocks.push(block(2, 2));
    }
    let (a_blocks, b_blocks): (Vec<_>, Vec<_>) = blocks.into_iter().unzip();
    let pair = MatrixPair::new(
        IntMatrix::block_diagonal(&a_blocks),
        IntMatrix::block_diagonal(&b_blocks),
    )?;
    let (got0, got1) = ktheory(&pair);
    if !got0.is_isomorphic(k0) || !got1.is_isomorphic(k1) {
        return Err(Error::Internal(format!(
            "constructed pair has K = ({}, {}), expected ({}, {})",
            got0, got1, k0, k1
        )));
    }
    Ok(Realization {
        properties: classify(&pair),
        pair,
        k0: got0,
        k1: got1,
    })
}

/// [`realize_groups`] for `K_0 = Z^rank ⊕ ⊕ Z/t0`, `K_1 = Z^rank ⊕ ⊕ Z/t1`.
pub fn realize(rank: usize, t0: &[BigInt], t1: &[BigInt]) -> Result<Realization> {
    for d in t0.iter().chain(t1) {
        if d < &BigInt::from(1) {
            return Err(Error::Validation(format!(
                "torsion orders must be positive, got {}",
                d
            )));
        }
    }
    realize_groups(
        &FGAbelianGroup::new(rank, t0.to_vec()),
        &FGAbelianGroup::new(rank, t1.to_vec()),
    )
}
