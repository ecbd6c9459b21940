//! Stationary inductive limits `lim(Z^n, T)` and the shift endomorphism.
//!
//! For a connecting matrix `M` (either `A` or `B`) the maps of the system send
//! the basis vector `1_v` to `Σ_w M[v][w] 1_w`, so on coordinate columns the
//! connecting map is `T = Mᵀ`. The element `[x, i]` is the image of `x` at
//! stage `i`, with `[x, i] = [T x, i + 1]`. The shift sends `[x, i]` to
//! `[x, i + 1]`.
//!
//! The groups computed here, the fixed points and coinvariants of the shift,
//! are obtained from lattices in `Z^n` and never from closed formulas in
//! `I - M`; that is what makes them usable as a cross-check.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abgroup::FGAbelianGroup;
use crate::error::{Error, Result};
use crate::intmat::{kernel_basis, IntMatrix, Lattice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StationaryLimit {
    t: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitElement {
    pub stage: usize,
    pub vector: Vec<BigInt>,
}

impl LimitElement {
    pub fn new(stage: usize, vector: Vec<BigInt>) -> Self {
        LimitElement { stage, vector }
    }
}

impl StationaryLimit {
    /// Limit whose connecting map acts on coordinates by `t` directly.
    pub fn with_coordinate_map(t: IntMatrix) -> Result<Self> {
        if !t.is_square() {
            return Err(Error::NotSquare(t.rows(), t.cols()));
        }
        Ok(StationaryLimit { t })
    }

    /// Limit of `1_v ↦ Σ_w m[v][w] 1_w`.
    pub fn of_matrix(m: &IntMatrix) -> Result<Self> {
        Self::with_coordinate_map(m.transpose())
    }

    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    pub fn coordinate_map(&self) -> &IntMatrix {
        &self.t
    }

    /// `ker(T^n)`: everything that eventually dies. Kernels of powers of an
    /// `n×n` map stop growing by the `n`-th power.
    pub fn eventual_kernel(&self) -> Lattice {
        let n = self.dim();
        let power = self.t.pow(n as u32).expect("square");
        Lattice::span(n, &kernel_basis(&power))
    }

    fn push_forward(&self, v: &[BigInt], steps: usize) -> Vec<BigInt> {
        let mut out = v.to_vec();
        for _ in 0..steps {
            out = self.t.mul_vec(&out).expect("dimension checked");
        }
        out
    }

    pub fn limit_equal(&self, a: &LimitElement, b: &LimitElement) -> Result<bool> {
        let n = self.dim();
        for e in [a, b] {
            if e.vector.len() != n {
                return Err(Error::Shape(format!(
                    "limit element of length {} in a rank {} system",
                    e.vector.len(),
                    n
                )));
            }
        }
        let (early, late) = if a.stage <= b.stage { (a, b) } else { (b, a) };
        let lifted = self.push_forward(&early.vector, late.stage - early.stage);
        let diff: Vec<BigInt> = lifted
            .iter()
            .zip(&late.vector)
            .map(|(x, y)| x - y)
            .collect();
        Ok(self.push_forward(&diff, n).iter().all(Zero::is_zero))
    }

    /// `{x : (T - I) x ∈ EK}`, the stage-0 representatives of shift-fixed
    /// elements.
    pub fn fixed_representatives(&self) -> Lattice {
        let n = self.dim();
        let t_minus_i = self.t.sub(&IntMatrix::identity(n)).expect("square");
        self.eventual_kernel()
            .preimage(&t_minus_i)
            .expect("dimensions agree")
    }

    /// Fixed subgroup of the shift, `L' / EK`.
    ///
    /// Every fixed element `[x, i]` equals `[x, 0]` because `T` is the
    /// identity on `L'` modulo `EK`, so the subgroup is the image of `L'` at
    /// stage 0 and the kernel of that image is `EK`.
    pub fn ker_one_minus_shift(&self) -> Result<FGAbelianGroup> {
        let ek = self.eventual_kernel();
        let fixed = self.fixed_representatives();
        let relations: Vec<Vec<BigInt>> = ek
            .basis()
            .iter()
            .map(|k| {
                fixed.coordinates(k).ok_or_else(|| {
                    Error::Internal("eventual kernel not contained in fixed lattice".into())
                })
            })
            .collect::<Result<_>>()?;
        let rel = IntMatrix::from_columns(fixed.rank(), &relations);
        let quotient = FGAbelianGroup::from_cokernel(&rel);
        if !quotient.is_free() {
            return Err(Error::Internal(format!(
                "shift-fixed quotient has torsion {}; eventual kernel not saturated",
                quotient
            )));
        }
        Ok(quotient)
    }

    /// Coinvariants `lim / (I - shift)(lim)`.
    ///
    /// `T ≡ I` modulo the image of `T - I`, so the stationary system of
    /// cokernels has identity connecting maps and the limit is the stage-0
    /// cokernel of `T - I`.
    pub fn coker_one_minus_shift(&self) -> FGAbelianGroup {
        let n = self.dim();
        let t_minus_i = self.t.sub(&IntMatrix::identity(n)).expect("square");
        FGAbelianGroup::from_cokernel(&t_minus_i)
    }
}
