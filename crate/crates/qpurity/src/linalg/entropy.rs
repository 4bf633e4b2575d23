//! Generalized entropies S_f(ρ) = Σ f(λ_i) for a concave f with f(0)=f(1)=0,
//! plus the binary-entropy helpers used throughout the crate. Logs are base 2.

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::eigen::eigenvalues_hermitian_unchecked;
use super::matrix::DensityMatrix;

/// A concave single-letter entropy kernel. Built-ins: von Neumann
/// f(x) = −x·log₂x and linear f(x) = 2x(1−x). Custom kernels are validated to
/// vanish at both ends of [0,1] on construction.
#[derive(Debug, Clone, Copy)]
pub struct EntropyFunction<S = f64> {
    inner: Inner<S>,
}

#[derive(Debug, Clone, Copy)]
enum Inner<S> {
    VonNeumann,
    Linear,
    Custom(fn(S) -> S),
}

impl<S: Real> EntropyFunction<S> {
    pub fn von_neumann() -> Self {
        Self { inner: Inner::VonNeumann }
    }

    pub fn linear() -> Self {
        Self { inner: Inner::Linear }
    }

    /// A user-supplied kernel; rejected unless f(0) and f(1) are zero within
    /// 1e-12 (an entropy must vanish on deterministic spectra).
    pub fn custom(f: fn(S) -> S) -> Result<Self> {
        let at_zero = f(S::zero());
        let at_one = f(S::one());
        let lim = S::tol(1e-12);
        if at_zero.abs() > lim || at_one.abs() > lim {
            return Err(Error::EntropyBoundary {
                at_zero: at_zero.as_f64(),
                at_one: at_one.as_f64(),
            });
        }
        Ok(Self { inner: Inner::Custom(f) })
    }

    pub fn apply(&self, x: S) -> S {
        match self.inner {
            Inner::VonNeumann => x.xlog2x(),
            Inner::Linear => S::two() * x * (S::one() - x),
            Inner::Custom(f) => f(x),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self.inner {
            Inner::VonNeumann => "von-neumann",
            Inner::Linear => "linear",
            Inner::Custom(_) => "custom",
        }
    }
}

/// S_f(ρ) = Σ f(λ_i). The linear kernel short-circuits to 2(1 − Tr ρ²),
/// which is exact and skips the eigensolver.
pub fn entropy<S: Real, const N: usize>(rho: &DensityMatrix<S, N>, f: &EntropyFunction<S>) -> S {
    if let Inner::Linear = f.inner {
        return S::two() * (S::one() - rho.matrix().norm_sqr());
    }
    let eigs = eigenvalues_hermitian_unchecked(rho.matrix());
    let mut acc = S::zero();
    for lam in eigs {
        acc = acc + f.apply(lam);
    }
    acc.max(S::zero())
}

/// H₂(x) = −x log₂ x − (1−x) log₂ (1−x), with the 0·log0 = 0 convention.
pub fn binary_entropy<S: Real>(x: S) -> S {
    x.xlog2x() + (S::one() - x).xlog2x()
}

/// Von Neumann entropy of a rank-≤2 spectrum given its purity P ∈ [1/2, 1]:
/// the eigenvalues are ½(1 ± √(2P−1)).
pub fn vn_entropy_from_purity_rank2<S: Real>(purity: S) -> S {
    let radicand = (S::two() * purity - S::one()).max(S::zero());
    let lam = S::half() * (S::one() + radicand.sqrt());
    binary_entropy(lam)
}
