//! Stochastic leakage of the two classical correction bits.
//!
//! During the vulnerability window the eavesdropper may learn bit 1, bit 2,
//! both, or neither; four stochastic models describe how that knowledge set
//! evolves in time. Each model has closed-form class probabilities and a
//! Monte Carlo sampler over the underlying waiting times; the expected
//! Holevo information and teleportation fidelity follow by averaging the
//! class-conditional values over the class distribution.

use crate::exec;
use crate::qmath::binary_entropy_gap;
use crate::rng::CounterRng;
use crate::teleport::DampedEnsemble;
use crate::{Error, Result};

/// Relative closeness of the two sequential rates below which the
/// degenerate (equal-rate) branch is used.
const SEQUENTIAL_DEGENERATE_REL: f64 = 1e-9;

/// Which correction bits the eavesdropper has learned.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnowledgeClass {
    /// Neither bit leaked.
    None,
    /// Only the flip bit m1 leaked.
    First,
    /// Only the phase bit m2 leaked.
    Second,
    /// Both bits leaked.
    Both,
}

impl KnowledgeClass {
    pub const ALL: [KnowledgeClass; 4] = [
        KnowledgeClass::None,
        KnowledgeClass::First,
        KnowledgeClass::Second,
        KnowledgeClass::Both,
    ];

    pub fn index(self) -> usize {
        match self {
            KnowledgeClass::None => 0,
            KnowledgeClass::First => 1,
            KnowledgeClass::Second => 2,
            KnowledgeClass::Both => 3,
        }
    }
}

/// Stochastic model of how the two bits leak over time.
#[derive(Clone, Copy, Debug)]
pub enum LeakageModel {
    /// Each bit leaks through its own independent exponential clock.
    Independent { k1: f64, k2: f64 },
    /// Bit 2 can only start leaking after bit 1 has leaked.
    Sequential { k1: f64, k2: f64 },
    /// One exponential clock reveals both bits at once.
    Burst { k: f64 },
    /// Each bit races a shared burst clock of rate mu k against an
    /// individual clock of rate (1 - mu) k; mu interpolates between the
    /// independent (mu = 0) and burst (mu = 1) models.
    Correlated { k: f64, mu: f64 },
}

impl LeakageModel {
    fn validate(&self) -> Result<()> {
        let check_rate = |name: &str, k: f64| {
            if k.is_finite() && k >= 0.0 {
                Ok(())
            } else {
                Err(Error::Domain(format!(
                    "rate {name} = {k} must be finite and nonnegative"
                )))
            }
        };
        match *self {
            LeakageModel::Independent { k1, k2 } | LeakageModel::Sequential { k1, k2 } => {
                check_rate("k1", k1)?;
                check_rate("k2", k2)
            }
            LeakageModel::Burst { k } => check_rate("k", k),
            LeakageModel::Correlated { k, mu } => {
                check_rate("k", k)?;
                if (0.0..=1.0).contains(&mu) {
                    Ok(())
                } else {
                    Err(Error::Domain(format!("mixing weight {mu} outside [0, 1]")))
                }
            }
        }
    }
}

/// Probabilities of the four knowledge classes at a fixed time.
#[derive(Clone, Copy, Debug)]
pub struct ClassProbabilities {
    pub p_none: f64,
    pub p_first: f64,
    pub p_second: f64,
    pub p_both: f64,
}

impl ClassProbabilities {
    pub fn as_array(&self) -> [f64; 4] {
        [self.p_none, self.p_first, self.p_second, self.p_both]
    }

    pub fn get(&self, class: KnowledgeClass) -> f64 {
        self.as_array()[class.index()]
    }
}

/// Closed-form class probabilities of a model at time t >= 0.
pub fn class_probabilities(model: &LeakageModel, t: f64) -> Result<ClassProbabilities> {
    model.validate()?;
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::Domain(format!(
            "time {t} must be finite and nonnegative"
        )));
    }
    Ok(match *model {
        LeakageModel::Independent { k1, k2 } => {
            let e1 = (-(k1 * t)).exp();
            let e2 = (-(k2 * t)).exp();
            ClassProbabilities {
                p_none: (-((k1 + k2) * t)).exp(),
                p_first: (1.0 - e1) * e2,
                p_second: e1 * (1.0 - e2),
                p_both: (1.0 - e1) * (1.0 - e2),
            }
        }
        LeakageModel::Sequential { k1, k2 } => {
            let p_none = (-(k1 * t)).exp();
            let p_first = if (k1 - k2).abs() <= SEQUENTIAL_DEGENERATE_REL * k1.max(k2) {
                // Stable equal-rate limit of the generic form below; the
                // midpoint exponent keeps the branch switch continuous to
                // O((k1 - k2)^2).
                k1 * t * (-((k1 + k2) * t / 2.0)).exp()
            } else {
                k1 / (k2 - k1) * ((-(k1 * t)).exp() - (-(k2 * t)).exp())
            };
            ClassProbabilities {
                p_none,
                p_first,
                p_second: 0.0,
                p_both: (1.0 - p_none - p_first).max(0.0),
            }
        }
        LeakageModel::Burst { k } => {
            let e = (-(k * t)).exp();
            ClassProbabilities {
                p_none: e,
                p_first: 0.0,
                p_second: 0.0,
                p_both: 1.0 - e,
            }
        }
        LeakageModel::Correlated { k, mu } => {
            let e_shared = (-(mu * k * t)).exp();
            let e_ind = (-((1.0 - mu) * k * t)).exp();
            let p_none = (-((2.0 - mu) * k * t)).exp();
            let p_single = e_shared * (1.0 - e_ind) * e_ind;
            // Both leak if the shared clock fires, or it holds and both
            // individual clocks fire.
            let p_both = (1.0 - e_shared) + e_shared * (1.0 - e_ind) * (1.0 - e_ind);
            ClassProbabilities {
                p_none,
                p_first: p_single,
                p_second: p_single,
                p_both,
            }
        }
    })
}

/// Draws the knowledge class of Monte Carlo sample `index` at time t.
///
/// Waiting times are inverse-CDF exponentials from the counter RNG keyed
/// on `(seed, index)`, with a fixed draw order per model, so the class is
/// a pure function of its arguments.
pub fn sample_class(model: &LeakageModel, t: f64, seed: u64, index: u64) -> KnowledgeClass {
    let mut rng = CounterRng::new(seed, index);
    let (leak1, leak2) = match *model {
        LeakageModel::Independent { k1, k2 } => {
            let t1 = rng.exp_waiting_time(k1);
            let t2 = rng.exp_waiting_time(k2);
            (t1 <= t, t2 <= t)
        }
        LeakageModel::Sequential { k1, k2 } => {
            let t1 = rng.exp_waiting_time(k1);
            if t1 > t {
                (false, false)
            } else {
                let t2 = rng.exp_waiting_time(k2);
                (true, t1 + t2 <= t)
            }
        }
        LeakageModel::Burst { k } => {
            let shared = rng.exp_waiting_time(k);
            (shared <= t, shared <= t)
        }
        LeakageModel::Correlated { k, mu } => {
            let shared = rng.exp_waiting_time(mu * k);
            let t1 = rng.exp_waiting_time((1.0 - mu) * k);
            let t2 = rng.exp_waiting_time((1.0 - mu) * k);
            (shared.min(t1) <= t, shared.min(t2) <= t)
        }
    };
    match (leak1, leak2) {
        (false, false) => KnowledgeClass::None,
        (true, false) => KnowledgeClass::First,
        (false, true) => KnowledgeClass::Second,
        (true, true) => KnowledgeClass::Both,
    }
}

/// Monte Carlo estimate of the class probabilities from `n` samples.
pub fn monte_carlo_classes(
    model: &LeakageModel,
    t: f64,
    n: u64,
    seed: u64,
) -> Result<ClassProbabilities> {
    model.validate()?;
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::Domain(format!(
            "time {t} must be finite and nonnegative"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    let counts = exec::tally4(n, |i| sample_class(model, t, seed, i).index());
    let scale = 1.0 / n as f64;
    Ok(ClassProbabilities {
        p_none: counts[0] as f64 * scale,
        p_first: counts[1] as f64 * scale,
        p_second: counts[2] as f64 * scale,
        p_both: counts[3] as f64 * scale,
    })
}

/// Holevo information available to Eve when she knows the bits in `class`.
///
/// Knowing nothing leaves the full uniform-ensemble value 1 - h(delta);
/// knowing m1 or m2 halves the ensemble, shrinking the average-state gap
/// to |1 - 2a| or 2|Re c|; knowing both leaves nothing to learn. Tiny
/// negative values from rounding are clamped to zero.
pub fn class_holevo(ens: &DampedEnsemble, class: KnowledgeClass) -> Result<f64> {
    let h_delta = binary_entropy_gap(ens.delta.min(1.0))?;
    let chi = match class {
        KnowledgeClass::None => 1.0 - h_delta,
        KnowledgeClass::First => {
            binary_entropy_gap((1.0 - 2.0 * ens.a).abs().min(1.0))? - h_delta
        }
        KnowledgeClass::Second => binary_entropy_gap((2.0 * ens.r.abs()).min(1.0))? - h_delta,
        KnowledgeClass::Both => 0.0,
    };
    Ok(chi.max(0.0))
}

/// Bob's teleportation fidelity when the bits in `class` arrive intact.
pub fn class_fidelity(ens: &DampedEnsemble, class: KnowledgeClass) -> f64 {
    match class {
        KnowledgeClass::None => 0.5,
        KnowledgeClass::First => 0.5 * (1.0 + (1.0 - 2.0 * ens.a).abs()),
        KnowledgeClass::Second => 0.5 + ens.r.abs(),
        KnowledgeClass::Both => 0.5 * (1.0 + ens.delta),
    }
}

/// Expected Holevo information at time t: sum over classes of P_K chi_K.
pub fn expected_holevo(ens: &DampedEnsemble, model: &LeakageModel, t: f64) -> Result<f64> {
    let probs = class_probabilities(model, t)?;
    let mut acc = 0.0;
    for class in KnowledgeClass::ALL {
        acc += probs.get(class) * class_holevo(ens, class)?;
    }
    Ok(acc)
}

/// Expected teleportation fidelity at time t: sum over classes of P_K F_K.
pub fn expected_fidelity(ens: &DampedEnsemble, model: &LeakageModel, t: f64) -> Result<f64> {
    let probs = class_probabilities(model, t)?;
    Ok(KnowledgeClass::ALL
        .iter()
        .map(|&class| probs.get(class) * class_fidelity(ens, class))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::teleport::{build_ensemble, InputState};

    fn probs_close(a: &ClassProbabilities, b: &[f64; 4], tol: f64) {
        for (x, y) in a.as_array().iter().zip(b) {
            assert!((x - y).abs() <= tol, "{:?} vs {:?}", a.as_array(), b);
        }
    }

    #[test]
    fn independent_quarter_point() {
        let model = LeakageModel::Independent { k1: 1.0, k2: 1.0 };
        let p = class_probabilities(&model, 2.0f64.ln()).unwrap();
        probs_close(&p, &[0.25, 0.25, 0.25, 0.25], 1e-15);
    }

    #[test]
    fn sequential_equal_rate_reference() {
        let model = LeakageModel::Sequential { k1: 1.0, k2: 1.0 };
        let p = class_probabilities(&model, 1.0).unwrap();
        let e = (-1.0f64).exp();
        assert!((p.p_none - e).abs() < 1e-15);
        assert!((p.p_first - e).abs() < 1e-15);
        assert_eq!(p.p_second, 0.0);
        assert!((p.p_both - (1.0 - 2.0 * e)).abs() < 1e-15);
    }

    #[test]
    fn sequential_branch_switch_is_continuous() {
        // The degenerate branch engages below |k1 - k2| <= 1e-9 max(k1, k2).
        // At a rate gap of 1e-6 the generic branch is selected; had the
        // threshold been drawn above it instead, the stable midpoint form
        // would apply, and the two must agree within 1e-8 there.
        let (k1, k2) = (1.0, 1.0 + 1e-6);
        let model = LeakageModel::Sequential { k1, k2 };
        for i in 1..=100 {
            let t = i as f64 * 0.1;
            let generic = class_probabilities(&model, t).unwrap().p_first;
            let stable = k1 * t * (-((k1 + k2) * t / 2.0)).exp();
            assert!(
                (generic - stable).abs() < 1e-8,
                "t {t}: {generic} vs {stable}"
            );
        }
        // Below the threshold the stable form itself is returned, and at
        // exact equality it collapses to k t exp(-k t) bitwise.
        let below = LeakageModel::Sequential { k1: 1.0, k2: 1.0 + 1e-10 };
        let p = class_probabilities(&below, 0.7).unwrap().p_first;
        let want = 1.0 * 0.7 * (-((2.0 + 1e-10) * 0.7 / 2.0f64)).exp();
        assert_eq!(p, want);
        let equal = LeakageModel::Sequential { k1: 0.8, k2: 0.8 };
        let p = class_probabilities(&equal, 1.3).unwrap().p_first;
        assert_eq!(p, 0.8 * 1.3 * (-(0.8 * 1.3f64)).exp());
    }

    #[test]
    fn sequential_zero_rates() {
        let p = class_probabilities(&LeakageModel::Sequential { k1: 0.0, k2: 0.0 }, 3.0).unwrap();
        probs_close(&p, &[1.0, 0.0, 0.0, 0.0], 0.0);
        let p = class_probabilities(&LeakageModel::Sequential { k1: 0.0, k2: 2.0 }, 3.0).unwrap();
        probs_close(&p, &[1.0, 0.0, 0.0, 0.0], 1e-15);
    }

    #[test]
    fn burst_reference() {
        let p = class_probabilities(&LeakageModel::Burst { k: 0.5 }, 2.0).unwrap();
        let e = (-1.0f64).exp();
        probs_close(&p, &[e, 0.0, 0.0, 1.0 - e], 1e-15);
    }

    #[test]
    fn correlated_reduces_bitwise_to_independent_and_burst() {
        for k in [0.2, 1.0, 3.7] {
            for t in [0.0, 0.3, 1.0, 4.0] {
                let ind = class_probabilities(&LeakageModel::Independent { k1: k, k2: k }, t)
                    .unwrap()
                    .as_array();
                let c0 = class_probabilities(&LeakageModel::Correlated { k, mu: 0.0 }, t)
                    .unwrap()
                    .as_array();
                assert_eq!(ind, c0, "mu = 0 at k {k} t {t}");
                let burst = class_probabilities(&LeakageModel::Burst { k }, t)
                    .unwrap()
                    .as_array();
                let c1 = class_probabilities(&LeakageModel::Correlated { k, mu: 1.0 }, t)
                    .unwrap()
                    .as_array();
                assert_eq!(burst, c1, "mu = 1 at k {k} t {t}");
            }
        }
    }

    #[test]
    fn probabilities_are_normalized_everywhere() {
        let models = [
            LeakageModel::Independent { k1: 0.7, k2: 2.2 },
            LeakageModel::Sequential { k1: 1.3, k2: 0.4 },
            LeakageModel::Burst { k: 1.1 },
            LeakageModel::Correlated { k: 0.9, mu: 0.35 },
        ];
        for model in &models {
            for i in 0..=60 {
                let t = i as f64 * 0.25;
                let p = class_probabilities(model, t).unwrap();
                let sum: f64 = p.as_array().iter().sum();
                assert!((sum - 1.0).abs() < 1e-12, "{model:?} t {t} sum {sum}");
                assert!(p.as_array().iter().all(|&x| (0.0..=1.0).contains(&x)));
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(class_probabilities(&LeakageModel::Burst { k: -1.0 }, 1.0).is_err());
        assert!(
            class_probabilities(&LeakageModel::Correlated { k: 1.0, mu: 1.2 }, 1.0).is_err()
        );
        assert!(class_probabilities(&LeakageModel::Burst { k: 1.0 }, -0.5).is_err());
        assert!(
            class_probabilities(&LeakageModel::Burst { k: 1.0 }, f64::INFINITY).is_err()
        );
    }

    #[test]
    fn monte_carlo_matches_closed_forms() {
        let n = 200_000u64;
        let models = [
            LeakageModel::Independent { k1: 0.8, k2: 1.6 },
            LeakageModel::Sequential { k1: 1.0, k2: 1.0 },
            LeakageModel::Sequential { k1: 1.0, k2: 2.5 },
            LeakageModel::Burst { k: 0.9 },
            LeakageModel::Correlated { k: 1.2, mu: 0.4 },
        ];
        for model in &models {
            for t in [0.4, 1.1] {
                let exact = class_probabilities(model, t).unwrap().as_array();
                let mc = monte_carlo_classes(model, t, n, 0).unwrap().as_array();
                for (i, (&p, &phat)) in exact.iter().zip(&mc).enumerate() {
                    let sigma = (p * (1.0 - p) / n as f64).sqrt().max(1e-9);
                    assert!(
                        (phat - p).abs() <= 4.5 * sigma,
                        "{model:?} t {t} class {i}: {phat} vs {p} (sigma {sigma:e})"
                    );
                }
            }
        }
    }

    #[test]
    fn monte_carlo_is_deterministic_and_seed_sensitive() {
        let model = LeakageModel::Correlated { k: 1.0, mu: 0.5 };
        let a = monte_carlo_classes(&model, 0.7, 50_000, 7).unwrap().as_array();
        let b = monte_carlo_classes(&model, 0.7, 50_000, 7).unwrap().as_array();
        assert_eq!(a, b);
        let c = monte_carlo_classes(&model, 0.7, 50_000, 8).unwrap().as_array();
        assert_ne!(a, c);
        assert!(monte_carlo_classes(&model, 0.7, 0, 7).is_err());
    }

    #[test]
    fn class_values_reference_case() {
        let psi = InputState::from_alpha_sq(0.6).unwrap();
        let ens = build_ensemble(&psi, 0.2).unwrap();
        let chi: Vec<f64> = KnowledgeClass::ALL
            .iter()
            .map(|&c| class_holevo(&ens, c).unwrap())
            .collect();
        assert!((chi[0] - 0.8245629392989208).abs() < 1e-12);
        assert!((chi[1] - 0.7289443970234147).abs() < 1e-12);
        assert!((chi[2] - 0.15919827521432983).abs() < 1e-12);
        assert_eq!(chi[3], 0.0);
        let f: Vec<f64> = KnowledgeClass::ALL
            .iter()
            .map(|&c| class_fidelity(&ens, c))
            .collect();
        assert_eq!(f[0], 0.5);
        assert!((f[1] - 0.68).abs() < 1e-15);
        assert!((f[2] - 0.938_178_046_004_132_9).abs() < 1e-15);
        assert!((f[3] - 0.973_708_771_293_080_4).abs() < 1e-13);
    }

    #[test]
    fn expected_values_interpolate_between_extremes() {
        let psi = InputState::from_alpha_sq(0.6).unwrap();
        let ens = build_ensemble(&psi, 0.2).unwrap();
        let model = LeakageModel::Independent { k1: 1.0, k2: 1.0 };
        let chi0 = expected_holevo(&ens, &model, 0.0).unwrap();
        assert!((chi0 - class_holevo(&ens, KnowledgeClass::None).unwrap()).abs() < 1e-14);
        let chi_late = expected_holevo(&ens, &model, 60.0).unwrap();
        assert!(chi_late < 1e-12);
        let f0 = expected_fidelity(&ens, &model, 0.0).unwrap();
        assert_eq!(f0, 0.5);
        let f_late = expected_fidelity(&ens, &model, 60.0).unwrap();
        assert!((f_late - class_fidelity(&ens, KnowledgeClass::Both)).abs() < 1e-12);
    }

    #[test]
    fn expected_fidelity_reference_value() {
        let psi = InputState::from_alpha_sq(0.6).unwrap();
        let ens = build_ensemble(&psi, 0.0).unwrap();
        let model = LeakageModel::Independent { k1: 1.0, k2: 1.0 };
        let f = expected_fidelity(&ens, &model, 2.0f64.ln()).unwrap();
        assert!((f - 0.7724744871391589).abs() < 1e-12, "f = {f}");
    }

    #[test]
    fn expected_holevo_average_lies_between_class_extremes() {
        let psi = InputState::from_alpha_sq(0.35).unwrap();
        let ens = build_ensemble(&psi, 0.45).unwrap();
        let model = LeakageModel::Correlated { k: 0.8, mu: 0.3 };
        for i in 1..40 {
            let t = i as f64 * 0.2;
            let chi = expected_holevo(&ens, &model, t).unwrap();
            let hi = class_holevo(&ens, KnowledgeClass::None).unwrap();
            assert!(chi >= -1e-15 && chi <= hi + 1e-15);
        }
    }
}
