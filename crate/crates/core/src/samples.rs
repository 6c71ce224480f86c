//! Random inputs: phase-twisted Fourier matrices and permuted, rephased
//! copies of Hadamard matrices.

use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::equivalence::HadEquivalenceWitness;
use crate::linalg::{CMatrix, C64};
use crate::structures::{fourier, ControlledFamily, HadamardMatrix};

/// `n` independent uniformly random unit phases.
pub fn random_phases(n: usize, rng: &mut impl Rng) -> Vec<C64> {
    (0..n).map(|_| C64::from_polar(1.0, rng.gen_range(0.0..TAU))).collect()
}

/// `D₁ F_n D₂` for random diagonal unitaries `D₁`, `D₂`.
pub fn twisted_fourier(n: usize, rng: &mut impl Rng) -> HadamardMatrix {
    assert!(n > 0, "dimension must be positive");
    let f = fourier(n).expect("positive dimension");
    let rows = random_phases(n, rng);
    let cols = random_phases(n, rng);
    let m = CMatrix::from_fn(n, n, |a, b| rows[a] * f.entry(a, b) * cols[b]);
    HadamardMatrix::new_unchecked(m)
}

/// A family whose every item is an independently twisted `F_n`.
pub fn twisted_fourier_family(control_dims: Vec<usize>, n: usize, rng: &mut impl Rng) -> ControlledFamily<HadamardMatrix> {
    let count = control_dims.iter().product();
    let items = (0..count).map(|_| twisted_fourier(n, rng)).collect();
    ControlledFamily::new(control_dims, items).expect("consistent items")
}

/// A random witness and its image `c_a d_b H_{σ(a),τ(b)}`.
pub fn twisted_copy(h: &CMatrix, rng: &mut impl Rng) -> (CMatrix, HadEquivalenceWitness) {
    let n = h.rows();
    let mut row_perm: Vec<usize> = (0..n).collect();
    let mut col_perm: Vec<usize> = (0..n).collect();
    row_perm.shuffle(rng);
    col_perm.shuffle(rng);
    let witness = HadEquivalenceWitness {
        row_perm,
        col_perm,
        row_phases: random_phases(n, rng),
        col_phases: random_phases(n, rng),
    };
    (witness.apply(h), witness)
}
