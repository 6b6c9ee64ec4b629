//! Heisenberg-picture mode evolution `a(t) = μ(t) a(0) + ν(t) a†(0)`.
//!
//! For the number-conserving couplings synthesised in [`crate::synth`] the
//! anomalous block `ν` vanishes and `μ(t) = exp(−iλt)`. Three routes compute
//! `μ`: the closed-form lattice sum, the spectral product `U† e^{−iΩt} U`, and
//! the eigendecomposition of `λ` itself. They share no code beyond the
//! complex arithmetic.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{self, NetworkSpec};
use crate::linalg::{self, CMatrix};
use crate::synth::CouplingMatrix;

/// Pass threshold for [`check_transfer_conditions`].
pub const TRANSFER_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Propagator {
    t: f64,
    mu: CMatrix,
    nu: CMatrix,
}

impl Propagator {
    pub fn new(t: f64, mu: CMatrix, nu: CMatrix) -> Result<Self> {
        if mu.nrows() != mu.ncols() {
            return Err(Error::DimensionMismatch { expected: mu.nrows(), found: mu.ncols() });
        }
        if nu.shape() != mu.shape() {
            return Err(Error::DimensionMismatch { expected: mu.nrows(), found: nu.nrows() });
        }
        Ok(Self { t, mu, nu })
    }

    /// Number-conserving propagator: `ν = 0`.
    pub fn number_conserving(t: f64, mu: CMatrix) -> Self {
        let n = mu.nrows();
        Self { t, mu, nu: CMatrix::zeros(n, n) }
    }

    pub fn s(&self) -> usize {
        self.mu.nrows()
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn mu(&self) -> &CMatrix {
        &self.mu
    }

    pub fn nu(&self) -> &CMatrix {
        &self.nu
    }

    pub fn unitarity_residual(&self) -> f64 {
        linalg::unitarity_residual(&self.mu)
    }
}

/// `μ_jk(t) = (1/s) Σ_l exp(2πi[j − k − t/τ]·l/s) · exp(−i(2π/τ)·m_l·t)`.
pub fn mu_closed_form(spec: &NetworkSpec, t: f64) -> Propagator {
    let s = spec.s();
    let periods = t / spec.tau();
    // Time-dependent factor per l, as a fraction of a full turn.
    let time_factor: Vec<Complex64> = (1..=s)
        .map(|l| {
            let turns = periods * l as f64 / s as f64 + f64::from(spec.m()[l - 1]) * periods;
            Complex64::from_polar(1.0, -TAU * turns.rem_euclid(1.0))
        })
        .collect();
    let inv_s = 1.0 / s as f64;
    // μ is circulant: entries depend on (j − k) mod s only.
    let by_offset: Vec<Complex64> = (0..s as i64)
        .map(|d| {
            time_factor
                .iter()
                .enumerate()
                .map(|(i, &f)| lattice::root_of_unity(d * (i as i64 + 1), s) * f)
                .sum::<Complex64>()
                * inv_s
        })
        .collect();
    let mu = CMatrix::from_fn(s, s, |r, c| by_offset[(r + s - c) % s]);
    Propagator::number_conserving(t, mu)
}

/// `μ(t) = U† diag(e^{−iω_j t}) U`.
pub fn mu_spectral(spec: &NetworkSpec, t: f64) -> Propagator {
    let u = lattice::shift_diagonalizer(spec.s()).expect("spec has s >= 1");
    let omega = lattice::mode_frequencies(spec);
    let mut scaled = u.matrix().clone();
    for (mut row, &w) in scaled.row_iter_mut().zip(omega.omega()) {
        row *= Complex64::from_polar(1.0, -w * t);
    }
    Propagator::number_conserving(t, u.matrix().adjoint() * scaled)
}

/// `exp(−iλt)` from the eigendecomposition of `λ`. Never touches the lattice
/// formulas, which makes it the reference for the other two routes.
pub fn mu_exponential_oracle(lambda: &CouplingMatrix, t: f64) -> CMatrix {
    lambda.eigen().evolution(t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferCheck {
    pub passed: bool,
    /// `max_j max(|μ[to][j] − δ_{j,from}|, |ν[to][j]|)`.
    pub residual: f64,
}

/// Whether the state of site `from` sits intact on site `to`, i.e. row `to`
/// of `μ` is the unit vector at column `from` and row `to` of `ν` vanishes.
/// Sites are 1-based.
pub fn check_transfer_conditions(prop: &Propagator, from: usize, to: usize) -> Result<TransferCheck> {
    let s = prop.s();
    for site in [from, to] {
        if site == 0 || site > s {
            return Err(Error::SiteOutOfRange { site, s });
        }
    }
    let (src, row) = (from - 1, to - 1);
    let residual = (0..s).fold(0.0_f64, |acc, j| {
        let target = if j == src { 1.0 } else { 0.0 };
        acc.max((prop.mu[(row, j)] - target).norm()).max(prop.nu[(row, j)].norm())
    });
    Ok(TransferCheck { passed: residual <= TRANSFER_TOL, residual })
}
