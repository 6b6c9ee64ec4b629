//! Synthesis of the coupling matrix `λ` for perfect transfer, the two-mode
//! closed form, and Bogoliubov validity checks.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{rngs::StdRng, SeedableRng};

use crate::error::{Error, Result};
use crate::lattice::{self, NetworkSpec, PermutationMatrix};
use crate::linalg::{self, CMatrix, HermitianEigen};

/// Hermiticity tolerance accepted by [`CouplingMatrix::from_matrix`].
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Pass threshold for each Bogoliubov residual.
pub const BOGOLIUBOV_TOL: f64 = 1e-10;

/// Hermitian coupling matrix `λ_jk` of `H = Σ λ_jk a_j† a_k` (rad/s, ħ = 1).
///
/// It is also the single-excitation representation of `H`, so `exp(-iλt)`
/// is the mode propagator.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix {
    lambda: CMatrix,
}

impl CouplingMatrix {
    pub fn from_matrix(lambda: CMatrix) -> Result<Self> {
        if lambda.nrows() != lambda.ncols() {
            return Err(Error::DimensionMismatch { expected: lambda.nrows(), found: lambda.ncols() });
        }
        if lambda.nrows() == 0 {
            return Err(Error::ZeroDimension);
        }
        let residual = linalg::hermiticity_residual(&lambda);
        if residual > HERMITIAN_TOL {
            return Err(Error::NotHermitian { residual });
        }
        Ok(Self { lambda })
    }

    pub fn s(&self) -> usize {
        self.lambda.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.lambda
    }

    pub fn into_matrix(self) -> CMatrix {
        self.lambda
    }

    pub fn eigen(&self) -> HermitianEigen {
        HermitianEigen::new(&self.lambda)
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigen().sorted_values()
    }
}

/// `λ_jk = (2π/(sτ)) Σ_l (l/s + m_l) exp(2πi(j−k)l/s)` evaluated term by term.
///
/// Only the upper triangle is summed; the lower triangle is its conjugate, so
/// the result is exactly Hermitian.
pub fn synthesize_couplings(spec: &NetworkSpec) -> CouplingMatrix {
    let s = spec.s();
    let prefactor = TAU / (s as f64 * spec.tau());
    let weight = |l: usize| l as f64 / s as f64 + spec.m()[l - 1] as f64;
    let mut lambda = CMatrix::zeros(s, s);
    for j in 1..=s {
        for k in j..=s {
            let sum: Complex64 =
                (1..=s).map(|l| lattice::root_of_unity((j as i64 - k as i64) * l as i64, s) * weight(l)).sum();
            let entry = if j == k { Complex64::new(sum.re, 0.0) } else { sum } * prefactor;
            lambda[(j - 1, k - 1)] = entry;
            lambda[(k - 1, j - 1)] = entry.conj();
        }
    }
    CouplingMatrix { lambda }
}

/// `λ = U† Ω U` with `U` the shift diagonaliser; an independent route to
/// [`synthesize_couplings`].
pub fn synthesize_couplings_spectral(spec: &NetworkSpec) -> CouplingMatrix {
    let u = lattice::shift_diagonalizer(spec.s()).expect("spec has s >= 1");
    let omega = lattice::mode_frequencies(spec).to_matrix();
    let mut lambda = u.matrix().adjoint() * omega * u.matrix();
    // Symmetrise away rounding so the type invariant holds exactly.
    let adj = lambda.adjoint();
    lambda = (lambda + adj) * Complex64::new(0.5, 0.0);
    CouplingMatrix { lambda }
}

/// Common diagonal coupling `(2π/(sτ)) Σ_l (l/s + m_l)`, i.e. `tr(Ω)/s`.
pub fn diagonal_element(spec: &NetworkSpec) -> f64 {
    let s = spec.s() as f64;
    let sum: f64 = spec.m().iter().enumerate().map(|(i, &ml)| (i + 1) as f64 / s + ml as f64).sum();
    TAU / (s * spec.tau()) * sum
}

/// Two-oscillator Hamiltonian `ω(a1†a1 + a2†a2) + c(a2†a1 + a1†a2)` with the
/// transfer period it realises.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeForm {
    pub omega: f64,
    pub c: f64,
    pub m1: u32,
    pub m2: u32,
    pub tau: f64,
    /// `(1 + 2m2 − 2m1)/(3 + 2m1 + 2m2)` evaluated directly from the integers.
    pub ratio: f64,
}

impl TwoModeForm {
    pub fn coupling_matrix(&self) -> CouplingMatrix {
        let w = Complex64::new(self.omega, 0.0);
        let c = Complex64::new(self.c, 0.0);
        CouplingMatrix { lambda: CMatrix::from_row_slice(2, 2, &[w, c, c, w]) }
    }

    pub fn spec(&self) -> NetworkSpec {
        NetworkSpec::new(2, self.tau, vec![self.m1, self.m2]).expect("tau > 0 by construction")
    }
}

/// Frequency and period of the two-mode network for a given coupling `c`.
///
/// Requires `1 + 2m2 − 2m1 > 0`, otherwise the period would not be positive.
pub fn two_mode_closed_form(m1: u32, m2: u32, c: f64) -> Result<TwoModeForm> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::InvalidParameters(format!("coupling c must be positive, got {c}")));
    }
    let numerator = 1 + 2 * i64::from(m2) - 2 * i64::from(m1);
    if numerator <= 0 {
        return Err(Error::InvalidParameters(format!(
            "1 + 2·m2 − 2·m1 = {numerator} gives a non-positive transfer time"
        )));
    }
    let denominator = 3 + 2 * i64::from(m1) + 2 * i64::from(m2);
    let ratio = numerator as f64 / denominator as f64;
    Ok(TwoModeForm {
        omega: c * denominator as f64 / numerator as f64,
        c,
        m1,
        m2,
        tau: (0.5 + f64::from(m2) - f64::from(m1)) * PI / c,
        ratio,
    })
}

/// Mode transformation `a' = W a + V a†`.
#[derive(Debug, Clone, PartialEq)]
pub struct BogoliubovPair {
    w: CMatrix,
    v: CMatrix,
}

impl BogoliubovPair {
    pub fn new(w: CMatrix, v: CMatrix) -> Result<Self> {
        if w.nrows() != w.ncols() {
            return Err(Error::DimensionMismatch { expected: w.nrows(), found: w.ncols() });
        }
        if v.shape() != w.shape() {
            return Err(Error::DimensionMismatch { expected: w.nrows(), found: v.nrows().max(v.ncols()) });
        }
        Ok(Self { w, v })
    }

    pub fn w(&self) -> &CMatrix {
        &self.w
    }

    pub fn v(&self) -> &CMatrix {
        &self.v
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovReport {
    /// Max-abs residuals of `WW†−VV†−I`, `W†W−VᵀV*−I`, `WVᵀ−VWᵀ`, `W†V−VᵀW*`.
    pub residuals: [f64; 4],
    pub passed: bool,
}

impl BogoliubovReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Evaluates the four conditions a Bogoliubov transformation must satisfy.
pub fn validate_bogoliubov(pair: &BogoliubovPair) -> BogoliubovReport {
    let (w, v) = (&pair.w, &pair.v);
    let id = linalg::identity(w.nrows());
    let wt = w.transpose();
    let vt = v.transpose();
    let residuals = [
        linalg::max_abs(&(w * w.adjoint() - v * v.adjoint() - &id)),
        linalg::max_abs(&(w.adjoint() * w - &vt * v.conjugate() - &id)),
        linalg::max_abs(&(w * &vt - v * &wt)),
        linalg::max_abs(&(w.adjoint() * v - &vt * w.conjugate())),
    ];
    let passed = residuals.iter().all(|&r| r <= BOGOLIUBOV_TOL);
    BogoliubovReport { residuals, passed }
}

/// `max |e^{−iΩτ} W − W C|`: zero exactly when `W` (with `V = 0`) carries the
/// cyclic shift into the spectrum of `spec`.
pub fn diagonalizer_residual(w: &CMatrix, spec: &NetworkSpec) -> Result<f64> {
    let s = spec.s();
    if w.shape() != (s, s) {
        return Err(Error::DimensionMismatch { expected: s, found: w.nrows() });
    }
    let phases = lattice::mode_frequencies(spec)
        .omega()
        .iter()
        .map(|&om| Complex64::from_polar(1.0, -om * spec.tau()))
        .collect::<Vec<_>>();
    let mut lhs = w.clone();
    for (mut row, &p) in lhs.row_iter_mut().zip(&phases) {
        row *= p;
    }
    let c = lattice::cyclic_shift_matrix(s)?.to_matrix();
    Ok(linalg::max_abs_diff(&lhs, &(w * c)))
}

/// Smallest [`diagonalizer_residual`] over `samples` Haar-random unitaries
/// drawn from a generator seeded with `seed`. A random unitary almost surely
/// does not diagonalise the shift, so this should stay well away from zero.
pub fn uniqueness_spot_check(spec: &NetworkSpec, samples: usize, seed: u64) -> Result<f64> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut smallest = f64::INFINITY;
    for _ in 0..samples {
        let w = linalg::random_unitary(spec.s(), &mut rng);
        smallest = smallest.min(diagonalizer_residual(&w, spec)?);
    }
    Ok(smallest)
}

/// Couplings whose single-excitation propagator at `t = τ` equals `perm`.
///
/// Each disjoint cycle of length `L` gets the ring construction with ring
/// size `L`, listed in traversal order `c, perm(c), ...`. Entries of `m` are
/// consumed sequentially in the same order, cycle after cycle. Fixed points
/// become isolated modes with `ω = 2π(1 + m)/τ`.
pub fn synthesize_for_permutation(s: usize, tau: f64, perm: &PermutationMatrix, m: &[u32]) -> Result<CouplingMatrix> {
    if perm.dim() != s {
        return Err(Error::DimensionMismatch { expected: s, found: perm.dim() });
    }
    // Validates s, tau and the length of m.
    NetworkSpec::new(s, tau, m.to_vec())?;
    let mut lambda = CMatrix::zeros(s, s);
    let mut next_m = m.iter().copied();
    for cycle in perm.cycles() {
        let local_m: Vec<u32> = next_m.by_ref().take(cycle.len()).collect();
        let local = synthesize_couplings(&NetworkSpec::new(cycle.len(), tau, local_m)?);
        for (a, &ga) in cycle.iter().enumerate() {
            for (b, &gb) in cycle.iter().enumerate() {
                lambda[(ga, gb)] = local.lambda[(a, b)];
            }
        }
    }
    Ok(CouplingMatrix { lambda })
}
