//! Small dense quantum math: statevectors up to four qubits, validated
//! single-qubit density matrices, eigenvalues, entropies, and the channel
//! and Pauli operations the teleportation analysis is built from.

use crate::{Error, Result};

pub use num_complex::Complex64 as Complex;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const EIG_TOL: f64 = 1e-12;
const NORM_TOL: f64 = 1e-12;
/// Spectrum weights at or below this threshold contribute zero entropy.
const ENTROPY_FLOOR: f64 = 1e-15;

/// A pure state of one to four qubits stored as dense amplitudes.
///
/// Qubit 0 is the most significant bit of the basis index, so for a
/// four-qubit register the amplitude of |q0 q1 q2 q3> sits at index
/// `q0*8 + q1*4 + q2*2 + q3`.
#[derive(Clone, Debug)]
pub struct StateVector {
    amps: Vec<Complex>,
}

impl StateVector {
    /// Builds a state from amplitudes; the length must be 2, 4, 8, or 16 and
    /// the norm must be 1 within 1e-12.
    pub fn new(amps: Vec<Complex>) -> Result<Self> {
        if !matches!(amps.len(), 2 | 4 | 8 | 16) {
            return Err(Error::InvalidState(format!(
                "statevector length must be 2, 4, 8, or 16, got {}",
                amps.len()
            )));
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > 2.0 * NORM_TOL {
            return Err(Error::InvalidState(format!(
                "statevector norm^2 deviates from 1 by {:e}",
                (norm_sq - 1.0).abs()
            )));
        }
        Ok(StateVector { amps })
    }

    /// Single-qubit state alpha|0> + beta|1>.
    pub fn qubit(alpha: Complex, beta: Complex) -> Result<Self> {
        StateVector::new(vec![alpha, beta])
    }

    pub fn num_qubits(&self) -> usize {
        self.amps.len().trailing_zeros() as usize
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex {
        self.amps[index]
    }

    /// Tensor product `self (x) other`; the result may not exceed 4 qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<Self> {
        let n = self.num_qubits() + other.num_qubits();
        if n > 4 {
            return Err(Error::InvalidArgument(format!(
                "tensor product would span {n} qubits, the limit is 4"
            )));
        }
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(StateVector { amps })
    }

    fn bit_shift(&self, qubit: usize) -> usize {
        assert!(qubit < self.num_qubits(), "qubit index out of range");
        self.num_qubits() - 1 - qubit
    }

    /// Applies a 2x2 gate to one qubit in place.
    pub fn apply_single_qubit(&mut self, gate: [[Complex; 2]; 2], qubit: usize) {
        let shift = self.bit_shift(qubit);
        let mask = 1usize << shift;
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let j = i | mask;
                let (a0, a1) = (self.amps[i], self.amps[j]);
                self.amps[i] = gate[0][0] * a0 + gate[0][1] * a1;
                self.amps[j] = gate[1][0] * a0 + gate[1][1] * a1;
            }
        }
    }

    /// Exchanges two qubits in place by permuting amplitudes.
    pub fn swap_qubits(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (sa, sb) = (self.bit_shift(a), self.bit_shift(b));
        let (ma, mb) = (1usize << sa, 1usize << sb);
        for i in 0..self.amps.len() {
            let bit_a = (i & ma) >> sa;
            let bit_b = (i & mb) >> sb;
            if bit_a == 0 && bit_b == 1 {
                let j = (i | ma) & !mb;
                self.amps.swap(i, j);
            }
        }
    }

    /// Probability of measuring `value` (0 or 1) on one qubit.
    pub fn probability(&self, qubit: usize, value: u8) -> f64 {
        let shift = self.bit_shift(qubit);
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| ((i >> shift) & 1) as u8 == value)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Reduced density matrix of one qubit, tracing out the others.
    pub fn reduced_density(&self, qubit: usize) -> Result<DensityMatrix2> {
        let shift = self.bit_shift(qubit);
        let mask = 1usize << shift;
        let mut e = [[Complex::new(0.0, 0.0); 2]; 2];
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let j = i | mask;
                e[0][0] += self.amps[i] * self.amps[i].conj();
                e[1][1] += self.amps[j] * self.amps[j].conj();
                e[0][1] += self.amps[i] * self.amps[j].conj();
            }
        }
        e[1][0] = e[0][1].conj();
        DensityMatrix2::new(e)
    }
}

/// A validated 2x2 density matrix: Hermitian, unit trace, spectrum in [0, 1],
/// all within 1e-12.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix2 {
    e: [[Complex; 2]; 2],
}

impl DensityMatrix2 {
    /// Validates and wraps raw entries.
    pub fn new(e: [[Complex; 2]; 2]) -> Result<Self> {
        let herm_dev = (e[0][1] - e[1][0].conj())
            .norm()
            .max(e[0][0].im.abs())
            .max(e[1][1].im.abs());
        if herm_dev > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!(
                "matrix is not Hermitian, deviation {herm_dev:e}"
            )));
        }
        let trace = e[0][0].re + e[1][1].re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!(
                "trace deviates from 1 by {:e}",
                (trace - 1.0).abs()
            )));
        }
        let rho = DensityMatrix2 { e };
        let (hi, lo) = hermitian_eigenvalues_2x2(&rho);
        if lo < -EIG_TOL || hi > 1.0 + EIG_TOL {
            return Err(Error::InvalidState(format!(
                "spectrum [{lo:e}, {hi:e}] leaves [0, 1]"
            )));
        }
        Ok(rho)
    }

    /// Wraps entries that are valid by construction.
    pub(crate) fn new_unchecked(e: [[Complex; 2]; 2]) -> Self {
        DensityMatrix2 { e }
    }

    /// Diagonal density matrix diag(p0, p1).
    pub fn from_diagonal(p0: f64, p1: f64) -> Result<Self> {
        DensityMatrix2::new([
            [Complex::new(p0, 0.0), Complex::new(0.0, 0.0)],
            [Complex::new(0.0, 0.0), Complex::new(p1, 0.0)],
        ])
    }

    /// The maximally mixed state I/2.
    pub fn maximally_mixed() -> Self {
        DensityMatrix2::new_unchecked([
            [Complex::new(0.5, 0.0), Complex::new(0.0, 0.0)],
            [Complex::new(0.0, 0.0), Complex::new(0.5, 0.0)],
        ])
    }

    /// Projector |psi><psi| of a single-qubit pure state.
    pub fn from_pure(psi: &StateVector) -> Result<Self> {
        if psi.num_qubits() != 1 {
            return Err(Error::InvalidArgument(format!(
                "pure-state projector needs 1 qubit, got {}",
                psi.num_qubits()
            )));
        }
        let (a, b) = (psi.amplitude(0), psi.amplitude(1));
        DensityMatrix2::new([
            [a * a.conj(), a * b.conj()],
            [b * a.conj(), b * b.conj()],
        ])
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex {
        self.e[row][col]
    }

    pub fn trace(&self) -> f64 {
        self.e[0][0].re + self.e[1][1].re
    }

    pub fn determinant(&self) -> f64 {
        (self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]).re
    }
}

/// Eigenvalues of a 2x2 Hermitian matrix, largest first.
///
/// Uses the closed form (tr +- sqrt(tr^2 - 4 det)) / 2; the discriminant is
/// clamped at zero to absorb rounding for near-degenerate spectra.
pub fn hermitian_eigenvalues_2x2(rho: &DensityMatrix2) -> (f64, f64) {
    let tr = rho.trace();
    let det = rho.determinant();
    let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
    ((tr + disc) / 2.0, (tr - disc) / 2.0)
}

fn plog2p(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    if p <= ENTROPY_FLOOR {
        0.0
    } else {
        p * p.log2()
    }
}

/// Von Neumann entropy in bits, S = -sum lambda log2 lambda.
pub fn von_neumann_entropy(rho: &DensityMatrix2) -> f64 {
    let (hi, lo) = hermitian_eigenvalues_2x2(rho);
    -(plog2p(hi) + plog2p(lo))
}

/// Binary entropy of the split ((1+x)/2, (1-x)/2) of a spectral gap x.
///
/// Equals the entropy of a qubit whose eigenvalue gap is x: 1 bit at x = 0,
/// 0 bits at x = 1. Arguments may overshoot [0, 1] by at most 1e-12.
pub fn binary_entropy_gap(x: f64) -> Result<f64> {
    if !(-EIG_TOL..=1.0 + EIG_TOL).contains(&x) {
        return Err(Error::Domain(format!(
            "entropy gap {x} outside [0, 1] (tolerance 1e-12)"
        )));
    }
    let x = x.clamp(0.0, 1.0);
    Ok(-(plog2p((1.0 + x) / 2.0) + plog2p((1.0 - x) / 2.0)))
}

/// Amplitude damping with strength gamma applied to a single qubit.
///
/// Maps [[r00, r01], [r10, r11]] to
/// [[r00 + g r11, sqrt(1-g) r01], [sqrt(1-g) r10, (1-g) r11]].
pub fn apply_amplitude_damping(rho: &DensityMatrix2, gamma: f64) -> Result<DensityMatrix2> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::Domain(format!(
            "damping strength {gamma} outside [0, 1]"
        )));
    }
    let root = (1.0 - gamma).sqrt();
    let e = [
        [
            rho.entry(0, 0) + gamma * rho.entry(1, 1),
            root * rho.entry(0, 1),
        ],
        [root * rho.entry(1, 0), (1.0 - gamma) * rho.entry(1, 1)],
    ];
    DensityMatrix2::new(e)
}

/// Fidelity <psi| rho |psi> of a state against a single-qubit pure target.
pub fn pure_state_fidelity(rho: &DensityMatrix2, psi: &StateVector) -> Result<f64> {
    if psi.num_qubits() != 1 {
        return Err(Error::InvalidArgument(format!(
            "fidelity target must be a single qubit, got {}",
            psi.num_qubits()
        )));
    }
    let mut f = Complex::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            f += psi.amplitude(i).conj() * rho.entry(i, j) * psi.amplitude(j);
        }
    }
    Ok(f.re)
}

/// Conjugation X^m1 Z^m2 rho Z^m2 X^m1 by teleportation correction Paulis.
pub fn pauli_conjugate(rho: &DensityMatrix2, m1: bool, m2: bool) -> DensityMatrix2 {
    let [[r00, r01], [r10, r11]] = [
        [rho.entry(0, 0), rho.entry(0, 1)],
        [rho.entry(1, 0), rho.entry(1, 1)],
    ];
    let e = match (m1, m2) {
        (false, false) => [[r00, r01], [r10, r11]],
        (false, true) => [[r00, -r01], [-r10, r11]],
        (true, false) => [[r11, r10], [r01, r00]],
        (true, true) => [[r11, -r10], [-r01, r00]],
    };
    DensityMatrix2::new_unchecked(e)
}
