//! Perfect cyclic state transfer in rings of coupled harmonic oscillators.
//!
//! A ring of `s` identical oscillators coupled through a number-conserving
//! quadratic Hamiltonian `H = Σ λ_jk a_j† a_k` moves the state of every site
//! to its neighbour after a fixed period `τ` when the coupling matrix is the
//! circulant built from the mode spectrum `ω_j = (2π/τ)(j/s + m_j)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`]: the cyclic shift, its DFT diagonaliser and the mode spectrum.
//! * [`synth`]: coupling-matrix synthesis, the two-mode closed form,
//!   Bogoliubov validity checks and synthesis for arbitrary permutations.
//! * [`propagator`]: the Heisenberg mode matrices `μ(t)`, `ν(t)` by three
//!   independent routes.
//! * [`charfn`]: characteristic functions of Fock and coherent states and the
//!   transfer indicator `g_j(t)`.
//! * [`fock`]: a brute-force occupation-number oracle.
//! * [`beamsplitter`]: single-photon beam-splitter cascades.
//!
//! Units: `ħ = 1`, couplings and frequencies in rad/s. Site indices in the
//! public API are 1-based; matrices are stored 0-based.

pub mod beamsplitter;
pub mod charfn;
pub mod error;
pub mod fock;
pub mod lattice;
pub mod linalg;
pub mod propagator;
pub mod synth;

pub use error::{Error, Result};
pub use lattice::{ModeSpectrum, NetworkSpec, PermutationMatrix, UnitaryMatrix};
pub use linalg::CMatrix;
pub use num_complex::Complex64;
pub use propagator::Propagator;
pub use synth::CouplingMatrix;
