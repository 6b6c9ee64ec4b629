//! One photon in two modes passing through lossless beam splitters.
//!
//! A splitter with transmission `T` and reflection `R` acts on the amplitudes
//! `(c10, c01)` of `|1,0⟩` and `|0,1⟩` as `[[T, iR], [iR, T]]`, so that
//! `|1,0⟩ ↦ T|1,0⟩ + iR|0,1⟩`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on `T² + R² = 1` and on the photon-state norm.
pub const NORM_TOL: f64 = 1e-12;

/// Largest `|c10|` after a cascade still counted as a complete transfer.
pub const TRANSFER_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BSParams {
    t: f64,
    r: f64,
}

impl BSParams {
    pub fn new(t: f64, r: f64) -> Result<Self> {
        let defect = (t * t + r * r - 1.0).abs();
        if !defect.is_finite() || defect > NORM_TOL {
            return Err(Error::InvalidParameters(format!("T² + R² = {} is not 1", t * t + r * r)));
        }
        Ok(Self { t, r })
    }

    /// `T = cos θ`, `R = sin θ` with `θ = λτ`.
    pub fn from_angle(theta: f64) -> Self {
        let (r, t) = theta.sin_cos();
        Self { t, r }
    }

    pub fn identity() -> Self {
        Self { t: 1.0, r: 0.0 }
    }

    pub fn balanced() -> Self {
        Self::from_angle(std::f64::consts::FRAC_PI_4)
    }

    pub fn transmission(&self) -> f64 {
        self.t
    }

    pub fn reflection(&self) -> f64 {
        self.r
    }
}

/// `c10 |1,0⟩ + c01 |0,1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeOnePhoton {
    pub c10: Complex64,
    pub c01: Complex64,
}

impl TwoModeOnePhoton {
    pub fn new(c10: Complex64, c01: Complex64) -> Result<Self> {
        let norm = c10.norm_sqr() + c01.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParameters(format!("|c10|² + |c01|² = {norm} is not 1")));
        }
        Ok(Self { c10, c01 })
    }

    pub fn one_zero() -> Self {
        Self { c10: Complex64::new(1.0, 0.0), c01: Complex64::new(0.0, 0.0) }
    }

    pub fn zero_one() -> Self {
        Self { c10: Complex64::new(0.0, 0.0), c01: Complex64::new(1.0, 0.0) }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c10.norm_sqr() + self.c01.norm_sqr()
    }

    /// `max |self − e^{iφ} other|` minimised over the global phase `φ`.
    pub fn distance_up_to_phase(&self, other: &Self) -> f64 {
        let overlap = other.c10.conj() * self.c10 + other.c01.conj() * self.c01;
        let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { Complex64::new(1.0, 0.0) };
        (self.c10 - phase * other.c10).norm().max((self.c01 - phase * other.c01).norm())
    }

    pub fn equal_up_to_phase(&self, other: &Self, tol: f64) -> bool {
        self.distance_up_to_phase(other) <= tol
    }
}

pub fn bs_apply(params: BSParams, state: TwoModeOnePhoton) -> TwoModeOnePhoton {
    let t = Complex64::new(params.t, 0.0);
    let ir = Complex64::new(0.0, params.r);
    TwoModeOnePhoton { c10: t * state.c10 + ir * state.c01, c01: ir * state.c10 + t * state.c01 }
}

/// Output of two splitters in series for input `|1,0⟩`:
/// `c10 = T1T2 − R1R2`, `c01 = i(R1T2 + R2T1)`.
pub fn cascade(first: BSParams, second: BSParams) -> TwoModeOnePhoton {
    TwoModeOnePhoton {
        c10: Complex64::new(first.t * second.t - first.r * second.r, 0.0),
        c01: Complex64::new(0.0, first.r * second.t + second.r * first.t),
    }
}

/// Whether the cascade leaves nothing in `|1,0⟩`, i.e. the two splitter
/// angles add up to `π/2` modulo `π`.
pub fn perfect_transfer_condition(first: BSParams, second: BSParams) -> bool {
    cascade(first, second).c10.norm() <= TRANSFER_TOL
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn params_validation() {
        assert!(BSParams::new(0.6, 0.8).is_ok());
        assert!(BSParams::new(0.6, 0.7).is_err());
        assert!(BSParams::new(f64::NAN, 0.0).is_err());
        assert!(TwoModeOnePhoton::new(c(0.6, 0.), c(0., 0.8)).is_ok());
        assert!(TwoModeOnePhoton::new(c(1., 0.), c(1., 0.)).is_err());
    }

    #[test]
    fn single_splitter_examples() {
        let psi = TwoModeOnePhoton::new(c(0.6, 0.0), c(0.0, -0.8)).unwrap();
        assert_eq!(bs_apply(BSParams::identity(), psi), psi);

        let out = bs_apply(BSParams::from_angle(FRAC_PI_4), TwoModeOnePhoton::one_zero());
        assert!((out.c10 - c(FRAC_1_SQRT_2, 0.)).norm() < 1e-15);
        assert!((out.c01 - c(0., FRAC_1_SQRT_2)).norm() < 1e-15);

        let out = bs_apply(BSParams::from_angle(FRAC_PI_2), TwoModeOnePhoton::zero_one());
        assert!((out.c10 - c(0., 1.)).norm() < 1e-15);
        assert!(out.c01.norm() < 1e-15);
    }

    #[test]
    fn cascade_examples() {
        let out = cascade(BSParams::balanced(), BSParams::balanced());
        assert!(out.c10.norm() <= 1e-12);
        assert!((out.c01 - c(0., 1.)).norm() < 1e-15);
        assert!(out.equal_up_to_phase(&TwoModeOnePhoton::zero_one(), 1e-12));

        let p2 = BSParams::from_angle(0.77);
        let direct = bs_apply(p2, TwoModeOnePhoton::one_zero());
        let out = cascade(BSParams::identity(), p2);
        assert!((out.c10 - direct.c10).norm() < 1e-15 && (out.c01 - direct.c01).norm() < 1e-15);
    }

    #[test]
    fn cascade_angle_addition() {
        for i in 0..=24 {
            for j in 0..=24 {
                let (a, b) = (0.13 * i as f64, 0.13 * j as f64);
                let out = cascade(BSParams::from_angle(a), BSParams::from_angle(b));
                assert!((out.c10.re - (a + b).cos()).abs() < 1e-14);
                assert!((out.c01.norm() - (a + b).sin().abs()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn perfect_transfer_cases() {
        assert!(perfect_transfer_condition(BSParams::balanced(), BSParams::balanced()));
        let p1 = BSParams::new(0.3f64.cos(), 0.3f64.sin()).unwrap();
        let p2 = BSParams::new(0.3f64.sin(), 0.3f64.cos()).unwrap();
        assert!(perfect_transfer_condition(p1, p2));
        assert!(!perfect_transfer_condition(BSParams::identity(), BSParams::identity()));
    }

    #[test]
    fn phase_distance() {
        let a = TwoModeOnePhoton::zero_one();
        let b = TwoModeOnePhoton::new(c(0., 0.), c(0., 1.)).unwrap();
        assert!(a.distance_up_to_phase(&b) < 1e-15);
        assert!(a != b);
        assert!((a.distance_up_to_phase(&TwoModeOnePhoton::one_zero()) - 1.0).abs() < 1e-15);
    }
}
