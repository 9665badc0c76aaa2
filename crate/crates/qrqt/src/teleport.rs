//! Teleportation of a qubit through an amplitude-damped Bell pair.
//!
//! Covers the eavesdropper's side of the protocol: the four conditional
//! post-measurement states, their ensemble average under a distribution
//! over the two classical correction bits, the Holevo information of that
//! ensemble (closed form plus an independent density-matrix oracle), and a
//! four-qubit statevector verification of the entanglement-swap attack.

use crate::qmath::{
    binary_entropy_gap, pauli_conjugate, pure_state_fidelity, von_neumann_entropy, Complex,
    DensityMatrix2, StateVector,
};
use crate::{Error, Result};

/// The qubit alpha|0> + beta|1> being teleported.
#[derive(Clone, Copy, Debug)]
pub struct InputState {
    alpha: Complex,
    beta: Complex,
}

impl InputState {
    /// Validates normalization |alpha|^2 + |beta|^2 = 1 within 1e-12.
    pub fn new(alpha: Complex, beta: Complex) -> Result<Self> {
        let norm_sq = alpha.norm_sqr() + beta.norm_sqr();
        if (norm_sq - 1.0).abs() > 2e-12 {
            return Err(Error::InvalidState(format!(
                "input state norm^2 deviates from 1 by {:e}",
                (norm_sq - 1.0).abs()
            )));
        }
        Ok(InputState { alpha, beta })
    }

    /// Real-amplitude state with population alpha_sq on |0>.
    pub fn from_alpha_sq(alpha_sq: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha_sq) {
            return Err(Error::Domain(format!(
                "population {alpha_sq} outside [0, 1]"
            )));
        }
        InputState::new(
            Complex::new(alpha_sq.sqrt(), 0.0),
            Complex::new((1.0 - alpha_sq).sqrt(), 0.0),
        )
    }

    pub fn alpha(&self) -> Complex {
        self.alpha
    }

    pub fn beta(&self) -> Complex {
        self.beta
    }

    pub fn alpha_sq(&self) -> f64 {
        self.alpha.norm_sqr()
    }

    pub fn state_vector(&self) -> StateVector {
        StateVector::qubit(self.alpha, self.beta).expect("validated at construction")
    }
}

/// Probabilities of the four classical measurement outcomes (m1, m2).
#[derive(Clone, Copy, Debug)]
pub struct OutcomeDistribution {
    p: [f64; 4],
}

impl OutcomeDistribution {
    /// Order: p00, p01, p10, p11 for outcomes (m1, m2).
    pub fn new(p00: f64, p01: f64, p10: f64, p11: f64) -> Result<Self> {
        let p = [p00, p01, p10, p11];
        if p.iter().any(|&x| !(-1e-12..=1.0 + 1e-12).contains(&x)) {
            return Err(Error::Domain(format!("probabilities {p:?} leave [0, 1]")));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(OutcomeDistribution {
            p: p.map(|x| x.clamp(0.0, 1.0)),
        })
    }

    pub fn uniform() -> Self {
        OutcomeDistribution { p: [0.25; 4] }
    }

    /// Probability of outcome (m1, m2).
    pub fn p(&self, m1: bool, m2: bool) -> f64 {
        self.p[(m1 as usize) * 2 + m2 as usize]
    }

    /// Marginal of m1 = 0.
    pub fn p0(&self) -> f64 {
        self.p[0] + self.p[1]
    }

    /// Marginal of m1 = 1.
    pub fn p1(&self) -> f64 {
        self.p[2] + self.p[3]
    }

    /// Signed phase imbalance p00 - p01.
    pub fn delta0(&self) -> f64 {
        self.p[0] - self.p[1]
    }

    /// Signed phase imbalance p10 - p11.
    pub fn delta1(&self) -> f64 {
        self.p[2] - self.p[3]
    }
}

/// Scalar data of the damped teleportation ensemble.
///
/// With input populations (|alpha|^2, |beta|^2) and damping gamma, the
/// base conditional state (outcome 00) is [[a, c], [c*, b]]; the other
/// three are its Pauli conjugates. `d` is its determinant a b - |c|^2 and
/// `delta = sqrt(1 - 4 d)` its eigenvalue gap.
#[derive(Clone, Copy, Debug)]
pub struct DampedEnsemble {
    pub gamma: f64,
    pub a: f64,
    pub b: f64,
    pub c: Complex,
    pub r: f64,
    pub d: f64,
    pub delta: f64,
}

/// Builds the damped ensemble scalars for the given input and damping.
pub fn build_ensemble(psi: &InputState, gamma: f64) -> Result<DampedEnsemble> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::Domain(format!(
            "damping strength {gamma} outside [0, 1]"
        )));
    }
    let alpha_sq = psi.alpha().norm_sqr();
    let beta_sq = psi.beta().norm_sqr();
    let a = alpha_sq + gamma * beta_sq;
    let b = (1.0 - gamma) * beta_sq;
    let c = psi.alpha() * psi.beta().conj() * (1.0 - gamma).sqrt();
    let d = a * b - c.norm_sqr();
    let delta = (1.0 - 4.0 * d).max(0.0).sqrt();
    Ok(DampedEnsemble {
        gamma,
        a,
        b,
        c,
        r: c.re,
        d,
        delta,
    })
}

/// The post-measurement state Eve holds for outcome (m1, m2) before any
/// correction: X^m1 Z^m2 rho00 Z^m2 X^m1.
pub fn conditional_state(ens: &DampedEnsemble, m1: bool, m2: bool) -> Result<DensityMatrix2> {
    let rho00 = DensityMatrix2::new([
        [Complex::new(ens.a, 0.0), ens.c],
        [ens.c.conj(), Complex::new(ens.b, 0.0)],
    ])?;
    Ok(pauli_conjugate(&rho00, m1, m2))
}

/// Ensemble average over outcomes: [[J, K], [K*, 1 - J]] with
/// J = a p0 + b p1 and K = c delta0 + c* delta1.
pub fn ensemble_average(
    ens: &DampedEnsemble,
    probs: &OutcomeDistribution,
) -> Result<DensityMatrix2> {
    let j = ens.a * probs.p0() + ens.b * probs.p1();
    let k = ens.c * probs.delta0() + ens.c.conj() * probs.delta1();
    DensityMatrix2::new([
        [Complex::new(j, 0.0), k],
        [k.conj(), Complex::new(1.0 - j, 0.0)],
    ])
}

/// Holevo information for an arbitrary outcome distribution:
/// chi = h(Delta) - h(delta) with Delta the gap of the ensemble average.
pub fn holevo_from_distribution(ens: &DampedEnsemble, probs: &OutcomeDistribution) -> Result<f64> {
    let j = ens.a * probs.p0() + ens.b * probs.p1();
    let k = ens.c * probs.delta0() + ens.c.conj() * probs.delta1();
    let big_delta = ((1.0 - 2.0 * j).powi(2) + 4.0 * k.norm_sqr()).sqrt();
    let chi = binary_entropy_gap(big_delta.min(1.0))? - binary_entropy_gap(ens.delta)?;
    Ok(chi.max(0.0))
}

/// Holevo information of the uniform-outcome ensemble in closed form:
/// chi = 1 - h(sqrt(1 - 4 gamma (1 - gamma) (1 - |alpha|^2)^2)).
pub fn holevo_closed_form(psi: &InputState, gamma: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::Domain(format!(
            "damping strength {gamma} outside [0, 1]"
        )));
    }
    let beta_sq = 1.0 - psi.alpha_sq();
    let gap = (1.0 - 4.0 * gamma * (1.0 - gamma) * beta_sq * beta_sq)
        .max(0.0)
        .sqrt();
    Ok(1.0 - binary_entropy_gap(gap)?)
}

/// Brute-force Holevo information: builds all four conditional density
/// matrices, averages them entrywise, and subtracts the mean conditional
/// entropy from the entropy of the average. Shares no algebra with the
/// closed forms above beyond the matrix definitions.
pub fn holevo_oracle(
    psi: &InputState,
    gamma: f64,
    probs: &OutcomeDistribution,
) -> Result<f64> {
    let ens = build_ensemble(psi, gamma)?;
    let mut avg = [[Complex::new(0.0, 0.0); 2]; 2];
    let mut mean_entropy = 0.0;
    for (m1, m2) in [(false, false), (false, true), (true, false), (true, true)] {
        let rho = conditional_state(&ens, m1, m2)?;
        let w = probs.p(m1, m2);
        for (i, row) in avg.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell += w * rho.entry(i, j);
            }
        }
        mean_entropy += w * von_neumann_entropy(&rho);
    }
    let avg = DensityMatrix2::new(avg)?;
    Ok(von_neumann_entropy(&avg) - mean_entropy)
}

/// Outcome of the four-qubit entanglement-swap attack verification.
#[derive(Clone, Copy, Debug)]
pub struct SwapAttackReport {
    /// Minimum over the four outcomes of Eve's post-correction fidelity.
    pub min_eve_fidelity: f64,
    /// Minimum over the four outcomes of Bob's ground-state population.
    pub min_bob_ground_population: f64,
    /// Largest deviation of an outcome probability from 1/4.
    pub max_outcome_probability_deviation: f64,
}

/// The two-qubit Bell pair (|00> + |11>) / sqrt(2).
pub fn bell_phi_plus() -> StateVector {
    let inv = Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let zero = Complex::new(0.0, 0.0);
    StateVector::new(vec![inv, zero, zero, inv]).expect("static Bell state")
}

/// Simulates the ideal (noiseless) entanglement-swap interception on the
/// full four-qubit register [C, A, B, E] and checks that Eve reconstructs
/// the input perfectly while Bob is left in |0>.
///
/// The source qubit C and Alice's half A undergo the Bell measurement;
/// Eve has swapped her ancilla E (prepared in |0>) with Bob's half B. For
/// every outcome (m1, m2) the post-selected state is renormalized, the
/// correction Z^m2 X^m1 is applied to E, and Eve's reduced state is
/// compared against the input.
pub fn swap_attack_verify(psi: &InputState) -> Result<SwapAttackReport> {
    let zero_ket = StateVector::qubit(Complex::new(1.0, 0.0), Complex::new(0.0, 0.0))?;
    let mut state = psi
        .state_vector()
        .tensor(&bell_phi_plus())?
        .tensor(&zero_ket)?;
    // Eve exchanges her ancilla with Bob's half of the pair.
    state.swap_qubits(2, 3);

    let x_gate = [
        [Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)],
        [Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)],
    ];
    let z_gate = [
        [Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)],
        [Complex::new(0.0, 0.0), Complex::new(-1.0, 0.0)],
    ];

    let mut min_fid = f64::INFINITY;
    let mut min_bob = f64::INFINITY;
    let mut max_dev = 0.0f64;
    let target = psi.state_vector();
    for m1 in [false, true] {
        for m2 in [false, true] {
            // Project (C, A) onto the Bell state
            // (|0 m1> + (-1)^m2 |1 (1 xor m1)>) / sqrt(2).
            let inv = std::f64::consts::FRAC_1_SQRT_2;
            let sign = if m2 { -1.0 } else { 1.0 };
            let idx = |c: usize, a: usize, b: usize, e: usize| c * 8 + a * 4 + b * 2 + e;
            let mut amps = Vec::with_capacity(4);
            for b in 0..2 {
                for e in 0..2 {
                    let hit0 = state.amplitude(idx(0, m1 as usize, b, e));
                    let hit1 = state.amplitude(idx(1, 1 - m1 as usize, b, e));
                    amps.push(inv * (hit0 + sign * hit1));
                }
            }
            let prob: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
            max_dev = max_dev.max((prob - 0.25).abs());
            let scale = Complex::new(1.0 / prob.sqrt(), 0.0);
            let mut post = StateVector::new(amps.iter().map(|a| a * scale).collect())?;

            min_bob = min_bob.min(post.probability(0, 0));
            if m1 {
                post.apply_single_qubit(x_gate, 1);
            }
            if m2 {
                post.apply_single_qubit(z_gate, 1);
            }
            let rho_e = post.reduced_density(1)?;
            min_fid = min_fid.min(pure_state_fidelity(&rho_e, &target)?);
        }
    }
    Ok(SwapAttackReport {
        min_eve_fidelity: min_fid,
        min_bob_ground_population: min_bob,
        max_outcome_probability_deviation: max_dev,
    })
}
