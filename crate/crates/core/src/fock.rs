//! Brute-force reference dynamics on a fixed-excitation Fock sector.
//!
//! `H = Σ λ_jk a_j† a_k` conserves the total quantum number `N`, so each
//! sector `Σ n_j = N` evolves on its own and restricting to one sector is
//! exact. States are explicit amplitude vectors, evolution is `exp(−iHt)` from
//! the sector's eigendecomposition.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::NetworkSpec;
use crate::linalg::{self, CMatrix, HermitianEigen};
use crate::propagator::mu_closed_form;
use crate::synth::{synthesize_couplings, CouplingMatrix};

/// Largest sector the oracle will build.
pub const MAX_SECTOR_SIZE: usize = 200_000;

/// Fidelity required at every lattice time `t = kτ`.
pub const TRANSFER_FIDELITY_TOL: f64 = 1e-9;

/// Norm deviation above which a superposition is reported as renormalised.
pub const RENORMALIZE_WARN: f64 = 1e-6;

/// `C(N + s − 1, s − 1)`, saturating.
pub fn sector_size(s: usize, total: u32) -> u128 {
    if s == 0 {
        return 0;
    }
    let n = u128::from(total) + s as u128 - 1;
    let k = (s as u128 - 1).min(u128::from(total));
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// All occupation vectors of `s` sites holding `total` quanta, in
/// lexicographically descending order. For `total = 1` that is site order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockBasis {
    s: usize,
    total: u32,
    states: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl FockBasis {
    pub fn new(s: usize, total: u32) -> Result<Self> {
        if s == 0 {
            return Err(Error::ZeroDimension);
        }
        let size = sector_size(s, total);
        if size > MAX_SECTOR_SIZE as u128 {
            return Err(Error::SectorTooLarge { size, limit: MAX_SECTOR_SIZE });
        }
        let mut states = Vec::with_capacity(size as usize);
        let mut current = vec![0u32; s];
        fill(&mut current, 0, total, &mut states);
        let index = states.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        Ok(Self { s, total, states, index })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[Vec<u32>] {
        &self.states
    }

    pub fn index_of(&self, occupation: &[u32]) -> Option<usize> {
        self.index.get(occupation).copied()
    }
}

fn fill(current: &mut Vec<u32>, site: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
    if site + 1 == current.len() {
        current[site] = remaining;
        out.push(current.clone());
        return;
    }
    for n in (0..=remaining).rev() {
        current[site] = n;
        fill(current, site + 1, remaining - n, out);
    }
}

/// Amplitudes over a [`FockBasis`].
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    basis: Arc<FockBasis>,
    amps: Vec<Complex64>,
}

impl FockVector {
    pub fn from_amplitudes(basis: Arc<FockBasis>, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != basis.len() {
            return Err(Error::DimensionMismatch { expected: basis.len(), found: amps.len() });
        }
        Ok(Self { basis, amps })
    }

    /// The single occupation-number state `|n_1, ..., n_s⟩`.
    pub fn basis_state(basis: Arc<FockBasis>, occupation: &[u32]) -> Result<Self> {
        Self::superposition(basis, &[(Complex64::new(1.0, 0.0), occupation.to_vec())])
    }

    /// `Σ c_i |n^{(i)}⟩`, normalised. Logs a warning if the input norm is off
    /// by more than [`RENORMALIZE_WARN`].
    pub fn superposition(basis: Arc<FockBasis>, terms: &[(Complex64, Vec<u32>)]) -> Result<Self> {
        let mut amps = vec![Complex64::new(0.0, 0.0); basis.len()];
        for (c, occ) in terms {
            if occ.len() != basis.s() {
                return Err(Error::DimensionMismatch { expected: basis.s(), found: occ.len() });
            }
            let i = basis.index_of(occ).ok_or_else(|| {
                Error::InvalidParameters(format!("{occ:?} is not in the N = {} sector", basis.total()))
            })?;
            amps[i] += c;
        }
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidParameters("superposition has zero norm".into()));
        }
        if (norm - 1.0).abs() > RENORMALIZE_WARN {
            log::warn!("renormalising Fock superposition with norm {norm}");
        }
        amps.iter_mut().for_each(|z| *z /= norm);
        Ok(Self { basis, amps })
    }

    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨n_j⟩` per site. In the single-excitation sector this is the
    /// probability of finding the quantum on site `j`.
    pub fn site_occupations(&self) -> Vec<f64> {
        let mut occ = vec![0.0; self.basis.s()];
        for (state, z) in self.basis.states().iter().zip(&self.amps) {
            let p = z.norm_sqr();
            for (o, &n) in occ.iter_mut().zip(state) {
                *o += p * f64::from(n);
            }
        }
        occ
    }

    /// Moves every site's content `k` places around the ring.
    pub fn cyclic_shift(&self, k: usize) -> Self {
        let s = self.basis.s();
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (state, &z) in self.basis.states().iter().zip(&self.amps) {
            let mut shifted = vec![0u32; s];
            for (i, &n) in state.iter().enumerate() {
                shifted[(i + k) % s] = n;
            }
            let j = self.basis.index_of(&shifted).expect("shift preserves the sector");
            amps[j] = z;
        }
        Self { basis: Arc::clone(&self.basis), amps }
    }

    fn same_basis(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis) || self.basis == other.basis
    }
}

/// Sector Hamiltonian together with its eigendecomposition.
#[derive(Debug, Clone)]
pub struct SectorHamiltonian {
    basis: Arc<FockBasis>,
    matrix: CMatrix,
    eigen: HermitianEigen,
}

impl SectorHamiltonian {
    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigen.sorted_values()
    }

    /// `exp(−iHt)` on the sector.
    pub fn evolution(&self, t: f64) -> CMatrix {
        self.eigen.evolution(t)
    }
}

/// Matrix of `Σ λ_jk a_j† a_k` on `basis`: diagonal `Σ_j λ_jj n_j`, and
/// `λ_jk √(n_k (n_j + 1))` between `|n⟩` and the state with one quantum moved
/// from `k` to `j`.
pub fn build_sector_hamiltonian(lambda: &CouplingMatrix, basis: Arc<FockBasis>) -> Result<SectorHamiltonian> {
    let s = basis.s();
    if lambda.s() != s {
        return Err(Error::DimensionMismatch { expected: s, found: lambda.s() });
    }
    let l = lambda.matrix();
    let dim = basis.len();
    let mut h = CMatrix::zeros(dim, dim);
    let mut moved = vec![0u32; s];
    for (col, state) in basis.states().iter().enumerate() {
        for (j, &nj) in state.iter().enumerate() {
            h[(col, col)] += l[(j, j)] * f64::from(nj);
        }
        for k in 0..s {
            if state[k] == 0 {
                continue;
            }
            for j in 0..s {
                if j == k {
                    continue;
                }
                moved.copy_from_slice(state);
                moved[k] -= 1;
                moved[j] += 1;
                let row = basis.index_of(&moved).expect("hop stays in the sector");
                let amp = (f64::from(state[k]) * f64::from(state[j] + 1)).sqrt();
                h[(row, col)] += l[(j, k)] * amp;
            }
        }
    }
    let eigen = HermitianEigen::new(&h);
    Ok(SectorHamiltonian { basis, matrix: h, eigen })
}

/// `exp(−iHt)|ψ⟩`.
pub fn evolve(state: &FockVector, hamiltonian: &SectorHamiltonian, t: f64) -> Result<FockVector> {
    if *state.basis != *hamiltonian.basis {
        return Err(Error::BasisMismatch);
    }
    let psi = nalgebra::DVector::from_column_slice(&state.amps);
    let out = hamiltonian.evolution(t) * psi;
    Ok(FockVector { basis: Arc::clone(&state.basis), amps: out.iter().copied().collect() })
}

/// `|⟨a|b⟩|²`.
pub fn fidelity(a: &FockVector, b: &FockVector) -> Result<f64> {
    if !a.same_basis(b) {
        return Err(Error::BasisMismatch);
    }
    let overlap: Complex64 = a.amps.iter().zip(&b.amps).map(|(x, y)| x.conj() * y).sum();
    Ok(overlap.norm_sqr())
}

fn shifted_occupation(s: usize, site: usize, n: u32) -> Vec<u32> {
    let mut occ = vec![0; s];
    occ[site % s] = n;
    occ
}

/// Fidelity of `|n, 0, ..., 0⟩` evolved to `t = kτ` against `|n⟩` on site
/// `k + 1` (cyclically), for `k = 0..=s`.
pub fn fock_transfer_fidelities(spec: &NetworkSpec, n: u32) -> Result<Vec<f64>> {
    let s = spec.s();
    let basis = Arc::new(FockBasis::new(s, n)?);
    let h = build_sector_hamiltonian(&synthesize_couplings(spec), Arc::clone(&basis))?;
    let initial = FockVector::basis_state(Arc::clone(&basis), &shifted_occupation(s, 0, n))?;
    (0..=s)
        .map(|k| {
            let evolved = evolve(&initial, &h, k as f64 * spec.tau())?;
            let target = FockVector::basis_state(Arc::clone(&basis), &shifted_occupation(s, k, n))?;
            fidelity(&target, &evolved)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport {
    /// `(k, F_k)`: fidelity at `t = kτ` against the initial pair shifted by
    /// `k` sites, `k = 0..=s`.
    pub lattice: Vec<(usize, f64)>,
    /// `(t, F)` at the off-lattice sample with the smallest fidelity.
    pub min_intermediate: (f64, f64),
    pub passed: bool,
}

/// Evolves `(|n, 0, 0, ...⟩ + |0, n, 0, ...⟩)/√2` and compares it with its own
/// cyclic shifts at every `t = kτ`. `intermediate_samples` off-lattice times
/// per period are also scanned for the smallest fidelity to the nearest
/// earlier shift.
pub fn entangled_transfer_check(spec: &NetworkSpec, n: u32, intermediate_samples: usize) -> Result<EntanglementReport> {
    let s = spec.s();
    if s < 3 {
        return Err(Error::InvalidParameters(format!("entangled transfer needs s >= 3, got {s}")));
    }
    if n == 0 {
        return Err(Error::InvalidParameters("photon number must be at least 1".into()));
    }
    let basis = Arc::new(FockBasis::new(s, n)?);
    let h = build_sector_hamiltonian(&synthesize_couplings(spec), Arc::clone(&basis))?;
    let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let initial = FockVector::superposition(
        Arc::clone(&basis),
        &[(amp, shifted_occupation(s, 0, n)), (amp, shifted_occupation(s, 1, n))],
    )?;
    let tau = spec.tau();

    let lattice = (0..=s)
        .map(|k| {
            let evolved = evolve(&initial, &h, k as f64 * tau)?;
            Ok((k, fidelity(&initial.cyclic_shift(k), &evolved)?))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut min_intermediate = (0.0, 1.0);
    let per = intermediate_samples.max(1);
    for k in 0..s {
        let reference = initial.cyclic_shift(k);
        for i in 1..=per {
            let t = (k as f64 + i as f64 / (per + 1) as f64) * tau;
            let f = fidelity(&reference, &evolve(&initial, &h, t)?)?;
            if f < min_intermediate.1 {
                min_intermediate = (t, f);
            }
        }
    }
    let passed = lattice.iter().all(|&(_, f)| f >= 1.0 - TRANSFER_FIDELITY_TOL);
    Ok(EntanglementReport { lattice, min_intermediate, passed })
}

/// Max-abs difference between `exp(−iHt)` on the single-excitation sector and
/// the closed-form `μ(t)`.
pub fn single_excitation_consistency(spec: &NetworkSpec, t: f64) -> Result<f64> {
    let basis = Arc::new(FockBasis::new(spec.s(), 1)?);
    let h = build_sector_hamiltonian(&synthesize_couplings(spec), basis)?;
    Ok(linalg::max_abs_diff(&h.evolution(t), mu_closed_form(spec, t).mu()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn basis_ordering_and_size() {
        let b = FockBasis::new(3, 2).unwrap();
        assert_eq!(
            b.states(),
            &[vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 2, 0], vec![0, 1, 1], vec![0, 0, 2]]
        );
        for s in 1..=6 {
            for n in 0..=5 {
                assert_eq!(FockBasis::new(s, n).unwrap().len() as u128, sector_size(s, n));
            }
        }
        assert_eq!(sector_size(4, 0), 1);
        assert_eq!(sector_size(1, 9), 1);
    }

    #[test]
    fn basis_size_guard() {
        assert!(matches!(FockBasis::new(20, 10), Err(Error::SectorTooLarge { .. })));
        assert!(FockBasis::new(0, 1).is_err());
    }

    #[test]
    fn single_excitation_sector_is_lambda() {
        let spec = NetworkSpec::new(5, 1.0, vec![0, 1, 2, 0, 1]).unwrap();
        let lambda = synthesize_couplings(&spec);
        let h = build_sector_hamiltonian(&lambda, Arc::new(FockBasis::new(5, 1).unwrap())).unwrap();
        assert_eq!(h.matrix(), lambda.matrix());
    }

    #[test]
    fn vacuum_sector_is_zero() {
        let lambda = synthesize_couplings(&NetworkSpec::fundamental(3, 1.0).unwrap());
        let h = build_sector_hamiltonian(&lambda, Arc::new(FockBasis::new(3, 0).unwrap())).unwrap();
        assert_eq!(h.matrix().shape(), (1, 1));
        assert_eq!(h.matrix()[(0, 0)], c(0.0));
    }

    #[test]
    fn two_site_two_quanta_sector() {
        let lambda = synthesize_couplings(&NetworkSpec::fundamental(2, 1.0).unwrap());
        let h = build_sector_hamiltonian(&lambda, Arc::new(FockBasis::new(2, 2).unwrap())).unwrap();
        assert!(linalg::hermiticity_residual(h.matrix()) < 1e-12);
        for j in 0..3 {
            assert!((h.matrix()[(j, j)].re - 3.0 * PI).abs() < 1e-12);
        }
        // ⟨1,1|H|2,0⟩ = λ_21 √2
        assert!((h.matrix()[(1, 0)].re - PI / 2.0 * 2f64.sqrt()).abs() < 1e-12);
        let eig = h.eigenvalues();
        for (e, want) in eig.iter().zip([2.0 * PI, 3.0 * PI, 4.0 * PI]) {
            assert!((e - want).abs() < 1e-10);
        }
    }

    #[test]
    fn evolve_examples() {
        let spec = NetworkSpec::fundamental(4, 1.0).unwrap();
        let basis = Arc::new(FockBasis::new(4, 1).unwrap());
        let h = build_sector_hamiltonian(&synthesize_couplings(&spec), Arc::clone(&basis)).unwrap();
        let psi = FockVector::basis_state(Arc::clone(&basis), &[1, 0, 0, 0]).unwrap();
        let same = evolve(&psi, &h, 0.0).unwrap();
        assert!(1.0 - fidelity(&psi, &same).unwrap() < 1e-14);
        let moved = evolve(&psi, &h, 1.0).unwrap();
        let target = FockVector::basis_state(Arc::clone(&basis), &[0, 1, 0, 0]).unwrap();
        assert!(fidelity(&target, &moved).unwrap() >= 1.0 - 1e-10);
        assert!((moved.norm() - 1.0).abs() < 1e-12);

        let spec = NetworkSpec::fundamental(2, 1.0).unwrap();
        let f = fock_transfer_fidelities(&spec, 3).unwrap();
        assert!(f[1] >= 1.0 - 1e-9);
    }

    #[test]
    fn evolve_rejects_foreign_basis() {
        let spec = NetworkSpec::fundamental(3, 1.0).unwrap();
        let h =
            build_sector_hamiltonian(&synthesize_couplings(&spec), Arc::new(FockBasis::new(3, 1).unwrap())).unwrap();
        let other = FockVector::basis_state(Arc::new(FockBasis::new(3, 2).unwrap()), &[2, 0, 0]).unwrap();
        assert_eq!(evolve(&other, &h, 1.0), Err(Error::BasisMismatch));
        let wrong_s = synthesize_couplings(&NetworkSpec::fundamental(2, 1.0).unwrap());
        assert!(build_sector_hamiltonian(&wrong_s, Arc::new(FockBasis::new(3, 1).unwrap())).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let basis = Arc::new(FockBasis::new(2, 1).unwrap());
        let a = FockVector::basis_state(Arc::clone(&basis), &[1, 0]).unwrap();
        let b = FockVector::basis_state(Arc::clone(&basis), &[0, 1]).unwrap();
        let plus =
            FockVector::superposition(Arc::clone(&basis), &[(c(1.0), vec![1, 0]), (c(1.0), vec![0, 1])]).unwrap();
        assert_eq!(fidelity(&a, &a).unwrap(), 1.0);
        assert_eq!(fidelity(&a, &b).unwrap(), 0.0);
        assert!((fidelity(&plus, &a).unwrap() - 0.5).abs() < 1e-15);
        let elsewhere = FockVector::basis_state(Arc::new(FockBasis::new(2, 2).unwrap()), &[2, 0]).unwrap();
        assert_eq!(fidelity(&a, &elsewhere), Err(Error::BasisMismatch));
    }

    #[test]
    fn superposition_validation() {
        let basis = Arc::new(FockBasis::new(2, 1).unwrap());
        assert!(FockVector::superposition(Arc::clone(&basis), &[(c(1.0), vec![1, 1])]).is_err());
        assert!(FockVector::superposition(Arc::clone(&basis), &[(c(1.0), vec![1])]).is_err());
        assert!(FockVector::superposition(Arc::clone(&basis), &[(c(0.0), vec![1, 0])]).is_err());
        assert!(FockVector::from_amplitudes(basis, vec![c(1.0)]).is_err());
    }

    #[test]
    fn entangled_pair_examples() {
        let spec = NetworkSpec::fundamental(3, 1.0).unwrap();
        let r = entangled_transfer_check(&spec, 1, 8).unwrap();
        assert!(r.passed);
        assert_eq!(r.lattice.len(), 4);
        assert!(r.lattice.iter().all(|&(_, f)| f >= 1.0 - 1e-9));
        assert!(r.min_intermediate.1 < 0.99);

        // Direct check of the t = τ target.
        let basis = Arc::new(FockBasis::new(3, 1).unwrap());
        let h = build_sector_hamiltonian(&synthesize_couplings(&spec), Arc::clone(&basis)).unwrap();
        let pair = |a: Vec<u32>, b: Vec<u32>| {
            FockVector::superposition(Arc::clone(&basis), &[(c(1.0), a), (c(1.0), b)]).unwrap()
        };
        let psi = pair(vec![1, 0, 0], vec![0, 1, 0]);
        let target = pair(vec![0, 1, 0], vec![0, 0, 1]);
        assert!(fidelity(&target, &evolve(&psi, &h, 1.0).unwrap()).unwrap() >= 1.0 - 1e-10);

        assert!(entangled_transfer_check(&NetworkSpec::fundamental(2, 1.0).unwrap(), 1, 4).is_err());
        assert!(entangled_transfer_check(&spec, 0, 4).is_err());
    }

    #[test]
    fn single_excitation_matches_closed_form() {
        let spec = NetworkSpec::fundamental(7, 1.0).unwrap();
        assert!(single_excitation_consistency(&spec, 0.0).unwrap() < 1e-12);
        assert!(single_excitation_consistency(&spec, 0.37).unwrap() <= 1e-10);
        let spec = NetworkSpec::new(7, 1.0, vec![0, 1, 0, 0, 0, 2, 0]).unwrap();
        assert!(single_excitation_consistency(&spec, 1.5).unwrap() <= 1e-10);
    }

    #[test]
    fn site_occupations_sum_to_total() {
        let spec = NetworkSpec::new(3, 1.0, vec![1, 0, 2]).unwrap();
        let basis = Arc::new(FockBasis::new(3, 3).unwrap());
        let h = build_sector_hamiltonian(&synthesize_couplings(&spec), Arc::clone(&basis)).unwrap();
        let psi = FockVector::basis_state(basis, &[2, 1, 0]).unwrap();
        let occ = evolve(&psi, &h, 0.731).unwrap().site_occupations();
        assert!((occ.iter().sum::<f64>() - 3.0).abs() < 1e-12);
    }
}
