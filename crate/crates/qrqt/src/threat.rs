//! Joint classical-quantum attack model.
//!
//! An interceptor who swapped entanglement into the teleportation channel
//! holds a qubit whose usefulness decays with the quantum memory, giving a
//! SWAP-attack success probability `p_swap(t) = (1 + exp(-t/T_coh)) / 2`.
//! Breaking the classical channel instead improves with computation time
//! through the lattice model. Both clocks start together, so the joint
//! success probability `p_joint(t) = (1 - p_detect) p_lwe(t) p_swap(t)`
//! rises while reduction progress dominates and falls once decoherence takes
//! over; this module locates the optimal attack window and evaluates
//! epsilon-security at a given time.

use crate::exec;
use crate::lattice::{delta_root_from_time, p_lwe_exact, BkzCostModel, LatticeModel};
use crate::{Error, Result};

/// Quantum memory decay model for the interceptor's stored qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwapModel {
    t_coh: f64,
}

impl SwapModel {
    /// Builds the model; the coherence time must be positive (infinity is
    /// accepted and means a perfect memory).
    pub fn new(t_coh: f64) -> Result<Self> {
        if t_coh.is_nan() || t_coh <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "coherence time must be positive, got {t_coh}"
            )));
        }
        Ok(SwapModel { t_coh })
    }

    pub fn t_coh(&self) -> f64 {
        self.t_coh
    }
}

/// SWAP-attack success probability at storage time `t`:
/// `(1 + exp(-t/T_coh)) / 2`, decaying from 1 toward the random-guess 1/2.
pub fn p_swap(swap: &SwapModel, t: f64) -> Result<f64> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::Domain(format!(
            "storage time must be nonnegative, got {t}"
        )));
    }
    Ok(0.5 * (1.0 + (-t / swap.t_coh).exp()))
}

/// A combined attack scenario: memory decay on the quantum side, decoding
/// attack on the classical side, and an optional detection probability that
/// scales the joint success down by `1 - p_detect`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointScenario {
    swap: SwapModel,
    lattice: LatticeModel,
    cost: BkzCostModel,
    p_detect: f64,
}

impl JointScenario {
    pub fn new(swap: SwapModel, lattice: LatticeModel, cost: BkzCostModel) -> Self {
        JointScenario {
            swap,
            lattice,
            cost,
            p_detect: 0.0,
        }
    }

    /// Sets the detection probability, which must lie in `[0, 1)`.
    pub fn with_detection(mut self, p_detect: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&p_detect) {
            return Err(Error::InvalidArgument(format!(
                "detection probability must lie in [0, 1), got {p_detect}"
            )));
        }
        self.p_detect = p_detect;
        Ok(self)
    }

    pub fn swap(&self) -> &SwapModel {
        &self.swap
    }

    pub fn lattice(&self) -> &LatticeModel {
        &self.lattice
    }

    pub fn cost(&self) -> &BkzCostModel {
        &self.cost
    }

    pub fn p_detect(&self) -> f64 {
        self.p_detect
    }
}

/// Joint attack success probability at shared time `t`:
/// `(1 - p_detect) * p_lwe(t) * p_swap(t)`.
pub fn p_joint(scn: &JointScenario, t: f64) -> Result<f64> {
    let lwe = p_lwe_exact(&scn.lattice, &scn.cost, t)?;
    let swap = p_swap(&scn.swap, t)?;
    Ok((1.0 - scn.p_detect) * lwe * swap)
}

/// Locates the maximizer of [`p_joint`] on `[t_min, t_max]` with the default
/// 512-point coarse grid; see [`optimal_attack_time_with_grid`].
pub fn optimal_attack_time(scn: &JointScenario, t_min: f64, t_max: f64) -> Result<(f64, f64)> {
    optimal_attack_time_with_grid(scn, t_min, t_max, 512)
}

/// Locates the maximizer of [`p_joint`] on `[t_min, t_max]`.
///
/// Scans a log-spaced grid of `n_grid` points, then refines around the best
/// grid cell by golden-section search to a relative tolerance of 1e-6 on t.
/// Returns `(t_star, p_star)`. Ties on the grid resolve to the earliest
/// time, so the result is deterministic.
pub fn optimal_attack_time_with_grid(
    scn: &JointScenario,
    t_min: f64,
    t_max: f64,
    n_grid: usize,
) -> Result<(f64, f64)> {
    if !(t_min.is_finite() && t_max.is_finite() && t_min < t_max && t_min > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need 0 < t_min < t_max and both finite, got [{t_min}, {t_max}]"
        )));
    }
    if n_grid < 16 {
        return Err(Error::InvalidArgument(format!(
            "coarse grid needs at least 16 points, got {n_grid}"
        )));
    }
    // Fails here if t_min is outside the cost-model domain.
    delta_root_from_time(&scn.cost, t_min)?;

    let ln_lo = t_min.ln();
    let ln_hi = t_max.ln();
    let grid: Vec<f64> = (0..n_grid)
        .map(|i| {
            if i == 0 {
                t_min
            } else if i == n_grid - 1 {
                t_max
            } else {
                let f = i as f64 / (n_grid - 1) as f64;
                (ln_lo + f * (ln_hi - ln_lo)).exp().clamp(t_min, t_max)
            }
        })
        .collect();
    let values = exec::map_indexed(n_grid, |i| p_joint(scn, grid[i]));
    let mut best_i = 0usize;
    let mut best_p = f64::NEG_INFINITY;
    for (i, value) in values.into_iter().enumerate() {
        let p = value?;
        if p > best_p {
            best_p = p;
            best_i = i;
        }
    }

    // Golden-section refinement inside the winning cell's neighborhood.
    let mut lo = grid[best_i.saturating_sub(1)];
    let mut hi = grid[(best_i + 1).min(n_grid - 1)];
    const INVPHI: f64 = 0.618_033_988_749_894_8;
    let mut c = hi - INVPHI * (hi - lo);
    let mut d = lo + INVPHI * (hi - lo);
    let mut fc = p_joint(scn, c.clamp(t_min, t_max))?;
    let mut fd = p_joint(scn, d.clamp(t_min, t_max))?;
    while hi - lo > 1e-6 * hi {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INVPHI * (hi - lo);
            fc = p_joint(scn, c.clamp(t_min, t_max))?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INVPHI * (hi - lo);
            fd = p_joint(scn, d.clamp(t_min, t_max))?;
        }
    }
    let t_star = (0.5 * (lo + hi)).clamp(t_min, t_max);
    let p_refined = p_joint(scn, t_star)?;
    // The grid point wins if refinement landed on a worse plateau edge.
    if best_p > p_refined {
        Ok((grid[best_i], best_p))
    } else {
        Ok((t_star, p_refined))
    }
}

/// Evaluates the epsilon-security condition at time `t` for
/// `epsilon` in `(0, 1]`.
///
/// Returns `(joint_ok, factorwise_ok)`: the joint test is
/// `p_joint(t) < epsilon`, and the factorwise test requires both
/// `p_lwe(t) < sqrt(epsilon)` and `p_swap(t) < sqrt(epsilon)`. The
/// factorwise test is the stricter one: whenever it passes, the joint test
/// passes as well.
pub fn epsilon_secure(scn: &JointScenario, t: f64, epsilon: f64) -> Result<(bool, bool)> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::Domain(format!(
            "epsilon must lie in (0, 1], got {epsilon}"
        )));
    }
    let lwe = p_lwe_exact(&scn.lattice, &scn.cost, t)?;
    let swap = p_swap(&scn.swap, t)?;
    let joint = (1.0 - scn.p_detect) * lwe * swap;
    let root = epsilon.sqrt();
    Ok((joint < epsilon, lwe < root && swap < root))
}
