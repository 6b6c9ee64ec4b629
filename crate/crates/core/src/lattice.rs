//! Structural matrices of the ring: the cyclic shift `C`, the DFT matrix that
//! diagonalises it, and the mode spectrum `Ω`.
//!
//! Formulas are written with 1-based indices `j, k = 1..s` inside the
//! exponents; storage is 0-based, so entry `(r, c)` carries `j = r + 1`,
//! `k = c + 1`. The convention matters: shifting either index by one changes
//! the matrix.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Tolerance for structural unitarity checks.
pub const UNITARY_TOL: f64 = 1e-12;

/// Ring size, transfer period and excitation integers `m_1..m_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkSpec {
    s: usize,
    tau: f64,
    m: Vec<u32>,
}

impl NetworkSpec {
    pub fn new(s: usize, tau: f64, m: Vec<u32>) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidSpec("ring size s must be at least 1".into()));
        }
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::InvalidSpec(format!("tau must be positive and finite, got {tau}")));
        }
        if m.len() != s {
            return Err(Error::InvalidSpec(format!("expected {s} excitation integers, got {}", m.len())));
        }
        Ok(Self { s, tau, m })
    }

    /// All `m_j = 0`: the fundamental-mode network.
    pub fn fundamental(s: usize, tau: f64) -> Result<Self> {
        Self::new(s, tau, vec![0; s])
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn m(&self) -> &[u32] {
        &self.m
    }

    /// Checks a 1-based site index and returns it 0-based.
    pub fn site_index(&self, site: usize) -> Result<usize> {
        if site == 0 || site > self.s {
            Err(Error::SiteOutOfRange { site, s: self.s })
        } else {
            Ok(site - 1)
        }
    }
}

/// A permutation matrix stored as its image map: column `k` has its single 1
/// in row `image[k]` (both 0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutationMatrix {
    image: Vec<usize>,
}

impl PermutationMatrix {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        if image.is_empty() {
            return Err(Error::ZeroDimension);
        }
        let n = image.len();
        let mut seen = vec![false; n];
        for &r in &image {
            if r >= n {
                return Err(Error::NotPermutation(format!("row {r} out of range for dimension {n}")));
            }
            if std::mem::replace(&mut seen[r], true) {
                return Err(Error::NotPermutation(format!("row {r} hit twice")));
            }
        }
        Ok(Self { image })
    }

    /// Builds from a 1-based image list, e.g. `[2, 3, 1]` for the 3-site shift.
    pub fn from_one_based(image: &[usize]) -> Result<Self> {
        let zero_based = image
            .iter()
            .map(|&r| r.checked_sub(1).ok_or_else(|| Error::NotPermutation("1-based image contains 0".into())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(zero_based)
    }

    /// Recovers the permutation from a dense matrix; every entry must be
    /// exactly 0 or 1 with one 1 per row and column.
    pub fn from_matrix(m: &CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch { expected: m.nrows(), found: m.ncols() });
        }
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let mut image = Vec::with_capacity(m.ncols());
        for c in 0..m.ncols() {
            let mut row = None;
            for r in 0..m.nrows() {
                let z = m[(r, c)];
                if z == one {
                    if row.replace(r).is_some() {
                        return Err(Error::NotPermutation(format!("column {c} has two ones")));
                    }
                } else if z != zero {
                    return Err(Error::NotPermutation(format!("entry ({r}, {c}) is {z}")));
                }
            }
            image.push(row.ok_or_else(|| Error::NotPermutation(format!("column {c} is empty")))?);
        }
        Self::new(image)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((0..n).collect())
    }

    pub fn dim(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn to_matrix(&self) -> CMatrix {
        let n = self.dim();
        let mut m = CMatrix::zeros(n, n);
        for (c, &r) in self.image.iter().enumerate() {
            m[(r, c)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Self::new(other.image.iter().map(|&k| self.image[k]).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut image: Vec<usize> = (0..self.dim()).collect();
        for _ in 0..n {
            image = image.iter().map(|&k| self.image[k]).collect();
        }
        Self { image }
    }

    /// Disjoint cycles, each listed as `c, image[c], image[image[c]], ...`,
    /// starting from the smallest unvisited index. Fixed points are cycles of
    /// length one.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut visited = vec![false; self.dim()];
        let mut out = Vec::new();
        for start in 0..self.dim() {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut k = start;
            while !visited[k] {
                visited[k] = true;
                cycle.push(k);
                k = self.image[k];
            }
            out.push(cycle);
        }
        out
    }
}

/// A square matrix checked to be unitary at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix(CMatrix);

impl UnitaryMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch { expected: m.nrows(), found: m.ncols() });
        }
        if m.nrows() == 0 {
            return Err(Error::ZeroDimension);
        }
        let residual = linalg::unitarity_residual(&m);
        if residual > UNITARY_TOL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self(m))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }
}

/// Normal-mode angular frequencies `ω_1..ω_s` in rad/s.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSpectrum {
    omega: Vec<f64>,
}

impl ModeSpectrum {
    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn trace(&self) -> f64 {
        self.omega.iter().sum()
    }

    /// `diag(ω)` as a complex matrix.
    pub fn to_matrix(&self) -> CMatrix {
        let n = self.omega.len();
        CMatrix::from_fn(
            n,
            n,
            |r, c| {
                if r == c {
                    Complex64::new(self.omega[r], 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            },
        )
    }
}

/// `exp(2πi·p/q)` with the exponent reduced mod `q` in integers first.
pub(crate) fn root_of_unity(p: i64, q: usize) -> Complex64 {
    let q = q as i64;
    let r = p.rem_euclid(q);
    Complex64::from_polar(1.0, TAU * r as f64 / q as f64)
}

/// The ring's cyclic shift: ones on the subdiagonal and in the top-right
/// corner, so site `k` feeds site `k + 1` and site `s` feeds site 1.
pub fn cyclic_shift_matrix(s: usize) -> Result<PermutationMatrix> {
    if s == 0 {
        return Err(Error::ZeroDimension);
    }
    PermutationMatrix::new((0..s).map(|k| (k + 1) % s).collect())
}

/// `W[j][k] = exp(2πi·j·k/s)/√s` with 1-based `j, k`.
pub fn dft_matrix(s: usize) -> Result<UnitaryMatrix> {
    if s == 0 {
        return Err(Error::ZeroDimension);
    }
    let norm = 1.0 / (s as f64).sqrt();
    let w = CMatrix::from_fn(s, s, |r, c| root_of_unity(((r + 1) * (c + 1)) as i64, s) * norm);
    UnitaryMatrix::new(w)
}

/// The unitary `U` with `U C U† = diag(e^{-2πi·j/s})`, j = 1..s.
///
/// This is the adjoint (equivalently the complex conjugate) of
/// [`dft_matrix`]; it is the matrix that enters `λ = U† Ω U` and
/// `μ(t) = U† e^{-iΩt} U`.
pub fn shift_diagonalizer(s: usize) -> Result<UnitaryMatrix> {
    Ok(dft_matrix(s)?.adjoint())
}

/// Diagonal of `U C U†` for `U =` [`shift_diagonalizer`]; equals
/// `(e^{-2πi·1/s}, ..., e^{-2πi·s/s})`.
pub fn shift_eigenphases(s: usize) -> Result<Vec<Complex64>> {
    let u = shift_diagonalizer(s)?;
    let c = cyclic_shift_matrix(s)?.to_matrix();
    let d = u.matrix() * c * u.matrix().adjoint();
    Ok((0..s).map(|j| d[(j, j)]).collect())
}

/// `ω_j = (2π/τ)(j/s + m_j)`, j = 1..s.
pub fn mode_frequencies(spec: &NetworkSpec) -> ModeSpectrum {
    let s = spec.s() as f64;
    let omega =
        spec.m().iter().enumerate().map(|(i, &mj)| TAU / spec.tau() * ((i + 1) as f64 / s + mj as f64)).collect();
    ModeSpectrum { omega }
}
