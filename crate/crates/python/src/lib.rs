//! Python bindings. Matrices cross the boundary as nested lists of `complex`,
//! rows outermost; site indices are 1-based as in the Rust API.

use num_complex::Complex64;
use oscnet::beamsplitter::{self, BSParams, TwoModeOnePhoton};
use oscnet::lattice::{self, PermutationMatrix};
use oscnet::linalg::CMatrix;
use oscnet::synth::{self, BogoliubovPair, CouplingMatrix};
use oscnet::{charfn, fock, propagator};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

type Rows = Vec<Vec<Complex64>>;

fn err(e: oscnet::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_rows(m: &CMatrix) -> Rows {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn from_rows(rows: Rows) -> PyResult<CMatrix> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err(format!("expected a square {n}×{n} matrix")));
    }
    Ok(CMatrix::from_fn(n, n, |r, c| rows[r][c]))
}

#[pyclass(name = "NetworkSpec", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyNetworkSpec(oscnet::NetworkSpec);

#[pymethods]
impl PyNetworkSpec {
    /// `m` defaults to all zeros; a single-element list is not broadcast.
    #[new]
    #[pyo3(signature = (s, tau = 1.0, m = None))]
    fn new(s: usize, tau: f64, m: Option<Vec<u32>>) -> PyResult<Self> {
        let m = m.unwrap_or_else(|| vec![0; s]);
        oscnet::NetworkSpec::new(s, tau, m).map(Self).map_err(err)
    }

    #[getter]
    fn s(&self) -> usize {
        self.0.s()
    }

    #[getter]
    fn tau(&self) -> f64 {
        self.0.tau()
    }

    #[getter]
    fn m(&self) -> Vec<u32> {
        self.0.m().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("NetworkSpec(s={}, tau={}, m={:?})", self.0.s(), self.0.tau(), self.0.m())
    }
}

#[pyfunction]
fn cyclic_shift_matrix(s: usize) -> PyResult<Rows> {
    Ok(to_rows(&lattice::cyclic_shift_matrix(s).map_err(err)?.to_matrix()))
}

#[pyfunction]
fn dft_matrix(s: usize) -> PyResult<Rows> {
    Ok(to_rows(lattice::dft_matrix(s).map_err(err)?.matrix()))
}

#[pyfunction]
fn shift_diagonalizer(s: usize) -> PyResult<Rows> {
    Ok(to_rows(lattice::shift_diagonalizer(s).map_err(err)?.matrix()))
}

#[pyfunction]
fn shift_eigenphases(s: usize) -> PyResult<Vec<Complex64>> {
    lattice::shift_eigenphases(s).map_err(err)
}

#[pyfunction]
fn mode_frequencies(spec: &PyNetworkSpec) -> Vec<f64> {
    lattice::mode_frequencies(&spec.0).omega().to_vec()
}

/// `route` is `"sum"` or `"spectral"`.
#[pyfunction]
#[pyo3(signature = (spec, route = "sum"))]
fn synthesize_couplings(spec: &PyNetworkSpec, route: &str) -> PyResult<Rows> {
    let lambda = match route {
        "sum" => synth::synthesize_couplings(&spec.0),
        "spectral" => synth::synthesize_couplings_spectral(&spec.0),
        other => return Err(PyValueError::new_err(format!("unknown route {other:?}"))),
    };
    Ok(to_rows(lambda.matrix()))
}

/// `image` is 1-based: site `k` moves to `image[k-1]`.
#[pyfunction]
fn synthesize_for_permutation(s: usize, tau: f64, image: Vec<usize>, m: Vec<u32>) -> PyResult<Rows> {
    let perm = PermutationMatrix::from_one_based(&image).map_err(err)?;
    Ok(to_rows(synth::synthesize_for_permutation(s, tau, &perm, &m).map_err(err)?.matrix()))
}

/// `(ω, c, τ, c/ω)` of the two-mode network.
#[pyfunction]
fn two_mode_closed_form(m1: u32, m2: u32, c: f64) -> PyResult<(f64, f64, f64, f64)> {
    let f = synth::two_mode_closed_form(m1, m2, c).map_err(err)?;
    Ok((f.omega, f.c, f.tau, f.ratio))
}

/// Residuals of the four Bogoliubov conditions for `(W, V)`.
#[pyfunction]
fn bogoliubov_residuals(w: Rows, v: Rows) -> PyResult<(Vec<f64>, bool)> {
    let pair = BogoliubovPair::new(from_rows(w)?, from_rows(v)?).map_err(err)?;
    let report = synth::validate_bogoliubov(&pair);
    Ok((report.residuals.to_vec(), report.passed))
}

/// `‖e^{−iΩτ} W − W C‖_max`.
#[pyfunction]
fn diagonalizer_residual(w: Rows, spec: &PyNetworkSpec) -> PyResult<f64> {
    synth::diagonalizer_residual(&from_rows(w)?, &spec.0).map_err(err)
}

/// `μ(t)`; `route` is `"closed"`, `"spectral"` or `"oracle"`.
#[pyfunction]
#[pyo3(signature = (spec, t, route = "closed"))]
fn mu(spec: &PyNetworkSpec, t: f64, route: &str) -> PyResult<Rows> {
    let m = match route {
        "closed" => propagator::mu_closed_form(&spec.0, t).mu().clone(),
        "spectral" => propagator::mu_spectral(&spec.0, t).mu().clone(),
        "oracle" => propagator::mu_exponential_oracle(&synth::synthesize_couplings(&spec.0), t),
        other => return Err(PyValueError::new_err(format!("unknown route {other:?}"))),
    };
    Ok(to_rows(&m))
}

/// `exp(−iλt)` for a Hermitian `λ`.
#[pyfunction]
fn exp_oracle(lambda: Rows, t: f64) -> PyResult<Rows> {
    let lambda = CouplingMatrix::from_matrix(from_rows(lambda)?).map_err(err)?;
    Ok(to_rows(&propagator::mu_exponential_oracle(&lambda, t)))
}

/// `(passed, residual)` for moving site `source` onto site `target` at `t`.
#[pyfunction]
fn check_transfer(spec: &PyNetworkSpec, t: f64, source: usize, target: usize) -> PyResult<(bool, f64)> {
    let check =
        propagator::check_transfer_conditions(&propagator::mu_closed_form(&spec.0, t), source, target).map_err(err)?;
    Ok((check.passed, check.residual))
}

#[pyfunction]
fn laguerre(n: u32, x: f64) -> f64 {
    charfn::laguerre(n, x)
}

#[pyfunction]
fn fock_char(n: u32, alpha: Complex64) -> Complex64 {
    charfn::fock_char(n, alpha)
}

#[pyfunction]
fn coherent_char(beta: Complex64, alpha: Complex64) -> Complex64 {
    charfn::coherent_char(beta, alpha)
}

#[pyfunction]
fn reduced_fock_char(spec: &PyNetworkSpec, site: usize, t: f64, n: u32, alpha: Complex64) -> PyResult<Complex64> {
    charfn::reduced_fock_char(&spec.0, site, t, n, alpha).map_err(err)
}

#[pyfunction]
fn reduced_coherent_char(
    spec: &PyNetworkSpec,
    site: usize,
    t: f64,
    beta: Complex64,
    alpha: Complex64,
) -> PyResult<Complex64> {
    charfn::reduced_coherent_char(&spec.0, site, t, beta, alpha).map_err(err)
}

#[pyfunction]
fn g_function(spec: &PyNetworkSpec, site: usize, t: f64) -> PyResult<f64> {
    charfn::g_function(&spec.0, site, t).map_err(err)
}

/// `[(t/τ, g)]` on an inclusive uniform grid; times in seconds.
#[pyfunction]
fn sweep_g(spec: &PyNetworkSpec, site: usize, t_min: f64, t_max: f64, steps: usize) -> PyResult<Vec<(f64, f64)>> {
    Ok(charfn::sweep_g(&spec.0, site, t_min, t_max, steps).map_err(err)?.scaled().collect())
}

/// Fidelity of `|n,0,…⟩` against its shift by `k` sites at `t = kτ`, `k = 0..=s`.
#[pyfunction]
fn fock_transfer_fidelities(spec: &PyNetworkSpec, n: u32) -> PyResult<Vec<f64>> {
    fock::fock_transfer_fidelities(&spec.0, n).map_err(err)
}

/// `(lattice fidelities, (t, F) of the worst off-lattice sample, passed)`.
#[pyfunction]
#[pyo3(signature = (spec, n, samples = 8))]
fn entangled_transfer_check(spec: &PyNetworkSpec, n: u32, samples: usize) -> PyResult<(Vec<f64>, (f64, f64), bool)> {
    let r = fock::entangled_transfer_check(&spec.0, n, samples).map_err(err)?;
    Ok((r.lattice.iter().map(|&(_, f)| f).collect(), r.min_intermediate, r.passed))
}

/// One splitter of angle `theta` applied to `c10|1,0⟩ + c01|0,1⟩`.
#[pyfunction]
fn bs_apply(theta: f64, c10: Complex64, c01: Complex64) -> PyResult<(Complex64, Complex64)> {
    let out = beamsplitter::bs_apply(BSParams::from_angle(theta), TwoModeOnePhoton::new(c10, c01).map_err(err)?);
    Ok((out.c10, out.c01))
}

/// `(c10, c01, perfect_transfer)` for `|1,0⟩` through two splitters.
#[pyfunction]
fn bs_cascade(theta1: f64, theta2: f64) -> (Complex64, Complex64, bool) {
    let (p1, p2) = (BSParams::from_angle(theta1), BSParams::from_angle(theta2));
    let out = beamsplitter::cascade(p1, p2);
    (out.c10, out.c01, beamsplitter::perfect_transfer_condition(p1, p2))
}

#[pymodule]
fn pyoscnet(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNetworkSpec>()?;
    m.add_function(wrap_pyfunction!(cyclic_shift_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(dft_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(shift_diagonalizer, m)?)?;
    m.add_function(wrap_pyfunction!(shift_eigenphases, m)?)?;
    m.add_function(wrap_pyfunction!(mode_frequencies, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize_couplings, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize_for_permutation, m)?)?;
    m.add_function(wrap_pyfunction!(two_mode_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(bogoliubov_residuals, m)?)?;
    m.add_function(wrap_pyfunction!(diagonalizer_residual, m)?)?;
    m.add_function(wrap_pyfunction!(mu, m)?)?;
    m.add_function(wrap_pyfunction!(exp_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(check_transfer, m)?)?;
    m.add_function(wrap_pyfunction!(laguerre, m)?)?;
    m.add_function(wrap_pyfunction!(fock_char, m)?)?;
    m.add_function(wrap_pyfunction!(coherent_char, m)?)?;
    m.add_function(wrap_pyfunction!(reduced_fock_char, m)?)?;
    m.add_function(wrap_pyfunction!(reduced_coherent_char, m)?)?;
    m.add_function(wrap_pyfunction!(g_function, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_g, m)?)?;
    m.add_function(wrap_pyfunction!(fock_transfer_fidelities, m)?)?;
    m.add_function(wrap_pyfunction!(entangled_transfer_check, m)?)?;
    m.add_function(wrap_pyfunction!(bs_apply, m)?)?;
    m.add_function(wrap_pyfunction!(bs_cascade, m)?)?;
    Ok(())
}
