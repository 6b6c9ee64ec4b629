//! Characteristic functions `χ(α) = Tr[ρ D(α)]` of Fock and coherent states,
//! their reduced single-site evolution in the ring, and the transfer indicator
//! `g_j(t) = |μ_j1(t)|²`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::NetworkSpec;
use crate::propagator::mu_closed_form;

/// Phase-space argument `α` of a characteristic function.
pub type EvaluationPoint = Complex64;

/// Laguerre polynomial `L_n(x)` by the three-term recurrence
/// `(k+1) L_{k+1} = (2k+1−x) L_k − k L_{k−1}`.
///
/// Accurate to near machine precision for `n ≤ 50` and `x ≤ 25`; beyond that
/// cancellation between terms grows quickly.
pub fn laguerre(n: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut curr = 1.0 - x;
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0 - x) * curr - k * prev) / (k + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// `e^{−|α|²/2} L_n(|α|²)`, the characteristic function of `|n⟩`.
pub fn fock_char(n: u32, alpha: EvaluationPoint) -> Complex64 {
    CharFunction::Fock { n, g: 1.0 }.eval(alpha)
}

/// `e^{−|α|²/2} e^{αβ* − α*β}`, the characteristic function of `|β⟩`.
pub fn coherent_char(beta: Complex64, alpha: EvaluationPoint) -> Complex64 {
    CharFunction::Coherent { beta, amp: Complex64::new(1.0, 0.0) }.eval(alpha)
}

/// Reduced single-site characteristic function in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CharFunction {
    /// `e^{−|α|²/2} L_n(g·|α|²)`.
    Fock { n: u32, g: f64 },
    /// `exp(−|α|²/2 + amp·αβ* − amp*·α*β)`.
    Coherent { beta: Complex64, amp: Complex64 },
}

impl CharFunction {
    pub fn eval(&self, alpha: EvaluationPoint) -> Complex64 {
        let r2 = alpha.norm_sqr();
        match *self {
            CharFunction::Fock { n, g } => Complex64::new((-0.5 * r2).exp() * laguerre(n, g * r2), 0.0),
            CharFunction::Coherent { beta, amp } => {
                let exponent = -0.5 * r2 + amp * alpha * beta.conj() - amp.conj() * alpha.conj() * beta;
                exponent.exp()
            }
        }
    }
}

fn mu_first_column(spec: &NetworkSpec, site: usize, t: f64) -> Result<Complex64> {
    let row = spec.site_index(site)?;
    Ok(mu_closed_form(spec, t).mu()[(row, 0)])
}

/// `g_j(t) = |μ_j1(t)|²`, clamped to `[0, 1]` against rounding.
pub fn g_function(spec: &NetworkSpec, site: usize, t: f64) -> Result<f64> {
    Ok(mu_first_column(spec, site, t)?.norm_sqr().min(1.0))
}

/// Reduced state of `site` at time `t` when site 1 starts in `|n⟩` and the
/// rest in vacuum.
pub fn reduced_fock(spec: &NetworkSpec, site: usize, t: f64, n: u32) -> Result<CharFunction> {
    Ok(CharFunction::Fock { n, g: g_function(spec, site, t)? })
}

pub fn reduced_fock_char(spec: &NetworkSpec, site: usize, t: f64, n: u32, alpha: EvaluationPoint) -> Result<Complex64> {
    Ok(reduced_fock(spec, site, t, n)?.eval(alpha))
}

/// Reduced state of `site` at time `t` when site 1 starts in `|β⟩`, written
/// with `amp = μ_j1(t)` on the `αβ*` term.
///
/// The amplitude carried by the Heisenberg evolution is `μ_j1(t)·β`, whose
/// characteristic function has `conj(μ_j1)` on that term instead. The two
/// agree whenever `μ_j1(t)` is real, in particular at every `t = kτ`.
pub fn reduced_coherent(spec: &NetworkSpec, site: usize, t: f64, beta: Complex64) -> Result<CharFunction> {
    Ok(CharFunction::Coherent { beta, amp: mu_first_column(spec, site, t)? })
}

pub fn reduced_coherent_char(
    spec: &NetworkSpec,
    site: usize,
    t: f64,
    beta: Complex64,
    alpha: EvaluationPoint,
) -> Result<Complex64> {
    Ok(reduced_coherent(spec, site, t, beta)?.eval(alpha))
}

/// `g_j` sampled on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GSeries {
    pub spec: NetworkSpec,
    pub site: usize,
    /// `(t, g_j(t))` in grid order.
    pub points: Vec<(f64, f64)>,
}

impl GSeries {
    /// `(t/τ, g)` pairs.
    pub fn scaled(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let tau = self.spec.tau();
        self.points.iter().map(move |&(t, g)| (t / tau, g))
    }
}

/// Samples `g_site(t)` at `steps` points spaced uniformly over
/// `[t_min, t_max]`, both endpoints included.
pub fn sweep_g(spec: &NetworkSpec, site: usize, t_min: f64, t_max: f64, steps: usize) -> Result<GSeries> {
    spec.site_index(site)?;
    if !(t_min.is_finite() && t_max.is_finite()) || t_min >= t_max {
        return Err(Error::DegenerateGrid(format!("need t_min < t_max, got [{t_min}, {t_max}]")));
    }
    if steps < 2 {
        return Err(Error::DegenerateGrid(format!("need at least 2 steps, got {steps}")));
    }
    let span = t_max - t_min;
    let last = (steps - 1) as f64;
    let points = (0..steps)
        .map(|i| {
            let t = if i == steps - 1 { t_max } else { t_min + span * i as f64 / last };
            g_function(spec, site, t).map(|g| (t, g))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GSeries { spec: spec.clone(), site, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// `L_n(x) = Σ_k C(n,k) (−x)^k / k!`.
    fn laguerre_explicit(n: u32, x: f64) -> f64 {
        laguerre_explicit_with_scale(n, x).0
    }

    /// Explicit sum together with `Σ |terms|`, which bounds its rounding error.
    fn laguerre_explicit_with_scale(n: u32, x: f64) -> (f64, f64) {
        let mut binom = 1.0;
        let mut fact = 1.0;
        let mut sum = 0.0;
        let mut scale = 0.0;
        for k in 0..=n {
            if k > 0 {
                binom *= f64::from(n - k + 1) / f64::from(k);
                fact *= f64::from(k);
            }
            let term = binom * (-x).powi(k as i32) / fact;
            sum += term;
            scale += term.abs();
        }
        (sum, scale)
    }

    #[test]
    fn laguerre_examples() {
        for x in [-1.0, 0.0, 0.3, 7.0] {
            assert_eq!(laguerre(0, x), 1.0);
        }
        assert_eq!(laguerre(1, 1.0), 0.0);
        assert!((laguerre(5, 2.5) - laguerre_explicit(5, 2.5)).abs() < 1e-14);
        // Exact rational value of the explicit sum: 793/768.
        assert!((laguerre(5, 2.5) - 793.0 / 768.0).abs() < 1e-14);
    }

    #[test]
    fn laguerre_matches_explicit_sum() {
        for n in 0..=20 {
            for i in 0..=20 {
                let x = 0.25 * i as f64;
                let (want, scale) = laguerre_explicit_with_scale(n, x);
                assert!((laguerre(n, x) - want).abs() < 1e-14 * scale, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn fock_char_examples() {
        assert_eq!(fock_char(0, c(0., 0.)), c(1., 0.));
        assert!(fock_char(1, c(1., 0.)).norm() < 1e-16);
        assert_eq!(fock_char(2, c(0., 0.)), c(1., 0.));
    }

    #[test]
    fn coherent_char_examples() {
        let alpha = c(0.3, -1.1);
        assert!((coherent_char(c(0., 0.), alpha) - fock_char(0, alpha)).norm() < 1e-16);
        assert!((coherent_char(c(2., 1.), c(0., 0.)) - c(1., 0.)).norm() < 1e-16);
        let expected = (-0.5f64).exp() * Complex64::from_polar(1.0, 4.0);
        assert!((coherent_char(c(2., 0.), c(0., 1.)) - expected).norm() < 1e-15);
    }

    #[test]
    fn reduced_fock_examples() {
        let spec = NetworkSpec::fundamental(7, 1.0).unwrap();
        let alpha = c(0.8, 0.4);
        for n in 0..4 {
            let at0 = reduced_fock_char(&spec, 1, 0.0, n, alpha).unwrap();
            assert!((at0 - fock_char(n, alpha)).norm() < 1e-14);
            let moved = reduced_fock_char(&spec, 2, 1.0, n, alpha).unwrap();
            assert!((moved - fock_char(n, alpha)).norm() < 1e-14);
            let left = reduced_fock_char(&spec, 1, 1.0, n, alpha).unwrap();
            assert!((left - fock_char(0, alpha)).norm() < 1e-14);
        }
        assert!(reduced_fock_char(&spec, 8, 0.0, 1, alpha).is_err());
    }

    #[test]
    fn reduced_coherent_examples() {
        let spec = NetworkSpec::fundamental(4, 1.0).unwrap();
        let beta = c(1.2, -0.5);
        let alpha = c(-0.3, 0.9);
        let at0 = reduced_coherent_char(&spec, 1, 0.0, beta, alpha).unwrap();
        assert!((at0 - coherent_char(beta, alpha)).norm() < 1e-14);
        let moved = reduced_coherent_char(&spec, 2, 1.0, beta, alpha).unwrap();
        assert!((moved - coherent_char(beta, alpha)).norm() < 1e-14);

        let two = NetworkSpec::fundamental(2, 1.0).unwrap();
        let v = reduced_coherent_char(&two, 1, 0.5, c(1., 0.), c(1., 0.)).unwrap();
        let expected = (-0.5f64).exp() * Complex64::from_polar(1.0, -1.0);
        assert!((v - expected).norm() < 1e-15);
        assert!(reduced_coherent_char(&two, 3, 0.5, beta, alpha).is_err());
    }

    #[test]
    fn g_examples() {
        let spec = NetworkSpec::fundamental(7, 1.0).unwrap();
        assert_eq!(g_function(&spec, 1, 0.0).unwrap(), 1.0);
        for k in 1..7 {
            assert!(g_function(&spec, 1, k as f64).unwrap() < 1e-24);
        }
        assert!((g_function(&spec, 1, 7.0).unwrap() - 1.0).abs() < 1e-12);
        let two = NetworkSpec::fundamental(2, 1.0).unwrap();
        assert!((g_function(&two, 1, 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!(g_function(&two, 0, 0.5).is_err());
    }

    #[test]
    fn sweep_grid_and_errors() {
        let spec = NetworkSpec::fundamental(7, 1.0).unwrap();
        let series = sweep_g(&spec, 1, 0.0, 7.0, 701).unwrap();
        assert_eq!(series.points.len(), 701);
        assert_eq!(series.points[0].0, 0.0);
        assert_eq!(series.points[700].0, 7.0);
        for k in 1..7 {
            let (t, g) = series.points[100 * k];
            assert_eq!(t, k as f64);
            assert!(g <= 1e-12);
        }
        assert!(sweep_g(&spec, 1, 1.0, 1.0, 10).is_err());
        assert!(sweep_g(&spec, 1, 0.0, 1.0, 1).is_err());
        assert!(sweep_g(&spec, 9, 0.0, 1.0, 10).is_err());
    }

    #[test]
    fn sweep_delay_between_sites() {
        let spec = NetworkSpec::fundamental(7, 1.0).unwrap();
        let site1 = sweep_g(&spec, 1, 0.0, 7.0, 701).unwrap();
        let site3 = sweep_g(&spec, 3, 2.0, 9.0, 701).unwrap();
        for (a, b) in site1.points.iter().zip(&site3.points) {
            assert!((a.1 - b.1).abs() < 1e-12);
        }
    }
}
