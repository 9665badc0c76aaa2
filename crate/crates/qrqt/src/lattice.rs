//! Lattice-reduction attack model for the LWE-protected classical channel.
//!
//! The attacker runs a BKZ-style reduction for some time `t_bkz`, obtaining a
//! basis whose quality is summarized by the root-Hermite factor
//! `delta = 2^(a / (log2 t + b))`, then decodes with Lindner-Peikert
//! NearestPlanes. Under the geometric series assumption the Gram-Schmidt
//! norms decay as `||b~_i|| = ||b~_1|| delta^(-2(i-1))`, and the decoding
//! success probability is a product of per-direction error-function factors.
//! Both an exact log-space evaluation of that product and a cheap
//! Pade-exponent surrogate are provided, together with the subdimension
//! optimizer and the parameter relations linking the LWE secret dimension to
//! basis norms.
//!
//! For empirical validation the module also contains a toy-scale, real-valued
//! NearestPlanes enumeration over explicit bases (dimension <= 8) and a
//! Monte Carlo estimator of its success rate against spherical Gaussian
//! errors, which the test suite compares against the closed-form product.

use crate::erf::{self, erf_pade_exponent, ln_erf};
use crate::exec;
use crate::rng::CounterRng;
use crate::{Error, Result};
use rand::Rng;
use rand_distr::StandardNormal;

/// Largest dimension accepted for explicit toy bases.
pub const MAX_TOY_DIMENSION: usize = 8;
/// Largest dimension accepted by the NearestPlanes Monte Carlo estimator.
pub const MAX_MC_DIMENSION: usize = 6;
/// Cap on the number of candidates a NearestPlanes enumeration may return.
pub const MAX_ENUMERATION: u64 = 10_000;

/// Two-parameter BKZ cost fit: running for `t` seconds yields root-Hermite
/// factor `2^(coeff_a / (log2 t + coeff_b))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BkzCostModel {
    coeff_a: f64,
    coeff_b: f64,
}

impl BkzCostModel {
    /// Builds a cost model; `coeff_a` must be positive and both finite.
    pub fn new(coeff_a: f64, coeff_b: f64) -> Result<Self> {
        if !coeff_a.is_finite() || coeff_a <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "cost coefficient a must be finite and positive, got {coeff_a}"
            )));
        }
        if !coeff_b.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "cost coefficient b must be finite, got {coeff_b}"
            )));
        }
        Ok(BkzCostModel { coeff_a, coeff_b })
    }

    /// Fit to reported sieving records: a = 1.806, b = 91.
    pub fn reference_fit() -> Self {
        BkzCostModel {
            coeff_a: 1.806,
            coeff_b: 91.0,
        }
    }

    /// Conservative single-machine attacker: a = 1.8, b = 110.
    pub fn conservative() -> Self {
        BkzCostModel {
            coeff_a: 1.8,
            coeff_b: 110.0,
        }
    }

    /// GPU-accelerated attacker: a = 1.6, b = 115.
    pub fn gpu() -> Self {
        BkzCostModel {
            coeff_a: 1.6,
            coeff_b: 115.0,
        }
    }

    /// Large HPC-cluster attacker: a = 1.4, b = 120.
    pub fn hpc() -> Self {
        BkzCostModel {
            coeff_a: 1.4,
            coeff_b: 120.0,
        }
    }

    /// Looks up a named preset: `reference-fit`, `conservative`, `gpu`, `hpc`.
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "reference-fit" => Ok(Self::reference_fit()),
            "conservative" => Ok(Self::conservative()),
            "gpu" => Ok(Self::gpu()),
            "hpc" => Ok(Self::hpc()),
            other => Err(Error::InvalidArgument(format!(
                "unknown cost preset '{other}' \
                 (expected reference-fit, conservative, gpu, or hpc)"
            ))),
        }
    }

    pub fn coeff_a(&self) -> f64 {
        self.coeff_a
    }

    pub fn coeff_b(&self) -> f64 {
        self.coeff_b
    }

    /// Validity threshold `2^(-coeff_b)`: the fit is defined for strictly
    /// longer running times only.
    pub fn min_time(&self) -> f64 {
        (-self.coeff_b).exp2()
    }
}

/// Root-Hermite factor reached after running the reduction for `t_bkz`
/// seconds. Errors if `t_bkz` is not strictly inside the model's validity
/// domain `t > 2^(-coeff_b)`.
pub fn delta_root_from_time(cost: &BkzCostModel, t_bkz: f64) -> Result<f64> {
    if !t_bkz.is_finite() {
        return Err(Error::ModelDomain(format!(
            "BKZ time must be a finite number of seconds, got {t_bkz}"
        )));
    }
    let denom = t_bkz.log2() + cost.coeff_b;
    if denom.is_nan() || denom <= 0.0 {
        return Err(Error::ModelDomain(format!(
            "BKZ time {} s is at or below the cost-model validity bound \
             2^(-{}) = {:e} s",
            t_bkz,
            cost.coeff_b,
            cost.min_time()
        )));
    }
    Ok((cost.coeff_a / denom).exp2())
}

/// Decoding-attack geometry: dimension, Gaussian error parameter `s`,
/// per-direction integer search radii, and the first Gram-Schmidt norm.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeModel {
    s: f64,
    d: Vec<u32>,
    b1_norm: f64,
}

impl LatticeModel {
    /// Builds a model from explicit per-direction radii; the dimension is the
    /// radii count, which must be at least 1.
    pub fn new(s: f64, d: Vec<u32>, b1_norm: f64) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one search radius is required".into(),
            ));
        }
        if d.contains(&0) {
            return Err(Error::InvalidArgument(
                "all search radii must be at least 1".into(),
            ));
        }
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "Gaussian parameter s must be finite and positive, got {s}"
            )));
        }
        if !(b1_norm.is_finite() && b1_norm > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "first Gram-Schmidt norm must be finite and positive, got {b1_norm}"
            )));
        }
        Ok(LatticeModel { s, d, b1_norm })
    }

    /// Convenience constructor with the same radius in every direction.
    pub fn uniform(m: usize, s: f64, radius: u32, b1_norm: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument(
                "dimension must be at least 1".into(),
            ));
        }
        Self::new(s, vec![radius; m], b1_norm)
    }

    pub fn m(&self) -> usize {
        self.d.len()
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn d(&self) -> &[u32] {
        &self.d
    }

    pub fn b1_norm(&self) -> f64 {
        self.b1_norm
    }
}

/// LWE instance parameters: secret dimension, modulus, relative noise width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LweParams {
    n: u32,
    q: u64,
    sigma_e: f64,
}

impl LweParams {
    pub fn new(n: u32, q: u64, sigma_e: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "secret dimension n must be at least 1".into(),
            ));
        }
        if q < 2 {
            return Err(Error::InvalidArgument(format!(
                "modulus q must be at least 2, got {q}"
            )));
        }
        if !(sigma_e.is_finite() && sigma_e > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "noise width sigma_e must be finite and positive, got {sigma_e}"
            )));
        }
        Ok(LweParams { n, q, sigma_e })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn sigma_e(&self) -> f64 {
        self.sigma_e
    }
}

fn check_delta_root(delta_root: f64) -> Result<()> {
    if !(delta_root.is_finite() && delta_root > 1.0) {
        return Err(Error::Domain(format!(
            "root-Hermite factor must be finite and exceed 1, got {delta_root}"
        )));
    }
    Ok(())
}

/// Gram-Schmidt norm profile under geometric decay:
/// `||b~_i|| = b1_norm * delta_root^(-2(i-1))` for `i = 1..=m`.
pub fn gsa_norms(lat: &LatticeModel, delta_root: f64) -> Result<Vec<f64>> {
    check_delta_root(delta_root)?;
    Ok((0..lat.m())
        .map(|i| lat.b1_norm() * delta_root.powf(-2.0 * i as f64))
        .collect())
}

/// Sum of per-direction log factors, in nats. The product form
/// `prod erf(d_i ||b~_i|| sqrt(pi) / (2 s))` underflows for long profiles,
/// so everything is accumulated in log space.
fn ln_p_lwe_from_delta(lat: &LatticeModel, delta_root: f64) -> Result<f64> {
    let norms = gsa_norms(lat, delta_root)?;
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let mut acc = 0.0;
    for (norm, &di) in norms.iter().zip(lat.d()) {
        let w = di as f64 * norm * sqrt_pi / (2.0 * lat.s());
        acc += ln_erf(w);
    }
    Ok(acc)
}

/// Decoding success probability at a given basis quality.
pub fn p_lwe_exact_from_delta(lat: &LatticeModel, delta_root: f64) -> Result<f64> {
    Ok(ln_p_lwe_from_delta(lat, delta_root)?.exp())
}

/// Decoding success probability after `t_bkz` seconds of reduction.
pub fn p_lwe_exact(lat: &LatticeModel, cost: &BkzCostModel, t_bkz: f64) -> Result<f64> {
    p_lwe_exact_from_delta(lat, delta_root_from_time(cost, t_bkz)?)
}

/// Base-2 log of the exact decoding success probability at a given basis
/// quality; stays meaningful far below f64 underflow of the probability.
pub fn log2_p_lwe_exact_from_delta(lat: &LatticeModel, delta_root: f64) -> Result<f64> {
    Ok(ln_p_lwe_from_delta(lat, delta_root)? / std::f64::consts::LN_2)
}

/// Base-2 log of the exact decoding success probability after `t_bkz`
/// seconds of reduction.
pub fn log2_p_lwe_exact(lat: &LatticeModel, cost: &BkzCostModel, t_bkz: f64) -> Result<f64> {
    log2_p_lwe_exact_from_delta(lat, delta_root_from_time(cost, t_bkz)?)
}

/// Base-2 log of the success probability with every error-function factor
/// replaced by its Pade-exponent surrogate:
/// `sum_i 1/2 log2(1 - exp(-y(W_i)))` with `y` from
/// [`erf_pade_exponent`](crate::erf::erf_pade_exponent).
pub fn log2_p_lwe_pade_from_delta(lat: &LatticeModel, delta_root: f64) -> Result<f64> {
    let norms = gsa_norms(lat, delta_root)?;
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let mut acc = 0.0;
    for (norm, &di) in norms.iter().zip(lat.d()) {
        let w = di as f64 * norm * sqrt_pi / (2.0 * lat.s());
        let y = erf_pade_exponent(w);
        acc += 0.5 * (-(-y).exp_m1()).log2();
    }
    Ok(acc)
}

/// Pade-surrogate log-probability after `t_bkz` seconds of reduction.
pub fn log2_p_lwe_pade(lat: &LatticeModel, cost: &BkzCostModel, t_bkz: f64) -> Result<f64> {
    log2_p_lwe_pade_from_delta(lat, delta_root_from_time(cost, t_bkz)?)
}

/// Subdimension minimizing the attack cost for an LWE instance:
/// `m_opt = sqrt(n log2 q / log2 delta_root)`.
pub fn optimal_subdimension(lwe: &LweParams, delta_root: f64) -> Result<f64> {
    check_delta_root(delta_root)?;
    let n = lwe.n() as f64;
    let q = lwe.q() as f64;
    Ok((n * q.log2() / delta_root.log2()).sqrt())
}

/// Norm and inverse relations produced by [`lattice_param_relations`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamRelations {
    /// First basis norm `q^(2n/m)`.
    pub b1_norm: f64,
    /// Last Gram-Schmidt norm `q^(2n/m^2)`.
    pub last_gs_norm: f64,
    /// Secret dimension recovered from `b1_norm`, an exact algebraic inverse.
    pub n_back: f64,
}

/// Links LWE parameters to the attack-basis norms at subdimension `m` and
/// inverts the first relation back to `n` as a consistency check.
pub fn lattice_param_relations(lwe: &LweParams, m: usize) -> Result<ParamRelations> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "subdimension m must be at least 1".into(),
        ));
    }
    let n = lwe.n() as f64;
    let q = lwe.q() as f64;
    let mf = m as f64;
    let b1_norm = q.powf(2.0 * n / mf);
    let last_gs_norm = q.powf(2.0 * n / (mf * mf));
    let n_back = mf * b1_norm.log2() / (2.0 * q.log2());
    Ok(ParamRelations {
        b1_norm,
        last_gs_norm,
        n_back,
    })
}

/// An explicit small lattice basis (rows are basis vectors) together with
/// its Gram-Schmidt orthogonalization and projection-coefficient table.
#[derive(Debug, Clone)]
pub struct ToyBasis {
    rows: Vec<Vec<f64>>,
    gs_rows: Vec<Vec<f64>>,
    gs_norm_sq: Vec<f64>,
    mu: Vec<Vec<f64>>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl ToyBasis {
    /// Orthogonalizes the given square basis (classical Gram-Schmidt with a
    /// second re-orthogonalization pass). Errors if the shape is wrong, the
    /// dimension exceeds [`MAX_TOY_DIMENSION`], or any orthogonalized row has
    /// norm at most 1e-9 (numerically dependent rows).
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 || m > MAX_TOY_DIMENSION {
            return Err(Error::InvalidBasis(format!(
                "basis dimension must be 1..={MAX_TOY_DIMENSION}, got {m}"
            )));
        }
        for row in &rows {
            if row.len() != m {
                return Err(Error::InvalidBasis(format!(
                    "basis must be square: expected rows of length {m}, got {}",
                    row.len()
                )));
            }
            if row.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidBasis(
                    "basis entries must be finite".into(),
                ));
            }
        }
        let mut gs_rows: Vec<Vec<f64>> = Vec::with_capacity(m);
        let mut gs_norm_sq: Vec<f64> = Vec::with_capacity(m);
        let mut mu: Vec<Vec<f64>> = Vec::with_capacity(m);
        for (i, row) in rows.iter().enumerate() {
            let mut v = row.clone();
            let mut mu_i = vec![0.0; i];
            // Two projection passes: the second removes the residual
            // non-orthogonality the first leaves behind in f64.
            for _ in 0..2 {
                for (j, g_row) in gs_rows.iter().enumerate() {
                    let c = dot(&v, g_row) / gs_norm_sq[j];
                    mu_i[j] += c;
                    for (x, g) in v.iter_mut().zip(g_row) {
                        *x -= c * g;
                    }
                }
            }
            let norm_sq = dot(&v, &v);
            if norm_sq.sqrt() <= 1e-9 {
                return Err(Error::InvalidBasis(format!(
                    "row {} is linearly dependent on earlier rows \
                     (Gram-Schmidt norm {:e})",
                    i + 1,
                    norm_sq.sqrt()
                )));
            }
            gs_rows.push(v);
            gs_norm_sq.push(norm_sq);
            mu.push(mu_i);
        }
        Ok(ToyBasis {
            rows,
            gs_rows,
            gs_norm_sq,
            mu,
        })
    }

    /// The standard basis of Z^m.
    pub fn identity(m: usize) -> Result<Self> {
        let rows = (0..m)
            .map(|i| (0..m).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self::new(rows)
    }

    /// A diagonal basis with the given entries.
    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        let m = entries.len();
        let rows = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| if i == j { entries[i] } else { 0.0 })
                    .collect()
            })
            .collect();
        Self::new(rows)
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Basis vectors, one per row.
    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Orthogonalized rows, in the same order as the basis rows.
    pub fn gram_schmidt_rows(&self) -> &[Vec<f64>] {
        &self.gs_rows
    }

    /// Projection coefficients: `rows[i] = gs_rows[i] + sum_j mu[i][j] gs_rows[j]`.
    pub fn mu(&self) -> &[Vec<f64>] {
        &self.mu
    }

    /// Norms of the orthogonalized rows.
    pub fn gs_norms(&self) -> Vec<f64> {
        self.gs_norm_sq.iter().map(|&x| x.sqrt()).collect()
    }

    fn gs_norm_sq(&self, k: usize) -> f64 {
        self.gs_norm_sq[k]
    }
}

/// A lattice point produced by [`nearest_planes`]: its integer coefficients
/// in the original basis and the corresponding vector.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticePoint {
    pub coefficients: Vec<i64>,
    pub vector: Vec<f64>,
}

fn validate_widths(m: usize, widths: &[u32]) -> Result<u64> {
    if widths.len() != m {
        return Err(Error::InvalidArgument(format!(
            "expected {m} search widths, got {}",
            widths.len()
        )));
    }
    if widths.contains(&0) {
        return Err(Error::InvalidArgument(
            "all search widths must be at least 1".into(),
        ));
    }
    let mut product: u64 = 1;
    for &d in widths {
        product = product
            .checked_mul(d as u64)
            .filter(|&p| p <= MAX_ENUMERATION)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "enumeration size (product of widths) exceeds {MAX_ENUMERATION}"
                ))
            })?;
    }
    Ok(product)
}

/// NearestPlanes enumeration: starting from the last basis direction, takes
/// the `widths[k]` integers nearest to the projection coefficient
/// `<v, b~_k> / <b~_k, b~_k>`, subtracts each multiple of the basis row, and
/// recurses. Returns exactly `prod widths[k]` candidate lattice points in a
/// deterministic depth-first order.
pub fn nearest_planes(
    basis: &ToyBasis,
    widths: &[u32],
    target: &[f64],
) -> Result<Vec<LatticePoint>> {
    let m = basis.dimension();
    let capacity = validate_widths(m, widths)?;
    if target.len() != m {
        return Err(Error::InvalidArgument(format!(
            "expected a target of length {m}, got {}",
            target.len()
        )));
    }
    if target.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument(
            "target entries must be finite".into(),
        ));
    }
    let mut out = Vec::with_capacity(capacity as usize);
    let mut coefficients = vec![0i64; m];
    descend(basis, widths, target.to_vec(), m, &mut coefficients, &mut out);
    Ok(out)
}

fn descend(
    basis: &ToyBasis,
    widths: &[u32],
    v: Vec<f64>,
    level: usize,
    coefficients: &mut Vec<i64>,
    out: &mut Vec<LatticePoint>,
) {
    if level == 0 {
        let m = basis.dimension();
        let mut vector = vec![0.0; m];
        for (k, row) in basis.rows().iter().enumerate() {
            let c = coefficients[k] as f64;
            for (x, b) in vector.iter_mut().zip(row) {
                *x += c * b;
            }
        }
        out.push(LatticePoint {
            coefficients: coefficients.clone(),
            vector,
        });
        return;
    }
    let k = level - 1;
    let c_star = dot(&v, &basis.gram_schmidt_rows()[k]) / basis.gs_norm_sq(k);
    let d = widths[k] as i64;
    let lo = (c_star - (d - 1) as f64 / 2.0).round() as i64;
    for c in lo..lo + d {
        coefficients[k] = c;
        let mut v_next = v.clone();
        for (x, b) in v_next.iter_mut().zip(&basis.rows()[k]) {
            *x -= c as f64 * b;
        }
        descend(basis, widths, v_next, k, coefficients, out);
    }
}

/// One Monte Carlo trial for [`np_success_monte_carlo`]: draws a spherical
/// Gaussian error with parameter `s` (per-coordinate standard deviation
/// `s / sqrt(2 pi)`) keyed on `(seed, trial)` and reports whether the zero
/// vector appears in the NearestPlanes output for that error as target.
///
/// Arguments are assumed to satisfy the estimator's preconditions.
pub fn np_trial_succeeds(
    basis: &ToyBasis,
    widths: &[u32],
    s: f64,
    seed: u64,
    trial: u64,
) -> bool {
    let m = basis.dimension();
    let sigma = s / (2.0 * std::f64::consts::PI).sqrt();
    let mut rng = CounterRng::new(seed, trial);
    let error: Vec<f64> = (0..m)
        .map(|_| sigma * rng.sample::<f64, _>(StandardNormal))
        .collect();
    match nearest_planes(basis, widths, &error) {
        Ok(points) => points
            .iter()
            .any(|p| p.coefficients.iter().all(|&c| c == 0)),
        Err(_) => false,
    }
}

/// Estimates the NearestPlanes success probability against spherical
/// Gaussian errors by direct simulation of the enumeration. The estimate
/// converges on `prod erf(d_i ||b~_i|| sqrt(pi) / (2 s))` evaluated on the
/// basis's actual Gram-Schmidt norms.
pub fn np_success_monte_carlo(
    basis: &ToyBasis,
    widths: &[u32],
    s: f64,
    n_trials: u64,
    seed: u64,
) -> Result<f64> {
    let m = basis.dimension();
    if m > MAX_MC_DIMENSION {
        return Err(Error::InvalidArgument(format!(
            "Monte Carlo estimator supports dimension <= {MAX_MC_DIMENSION}, got {m}"
        )));
    }
    validate_widths(m, widths)?;
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "Gaussian parameter s must be finite and positive, got {s}"
        )));
    }
    if n_trials == 0 {
        return Err(Error::InvalidArgument(
            "at least one trial is required".into(),
        ));
    }
    let hits = exec::count_hits(n_trials, |i| np_trial_succeeds(basis, widths, s, seed, i));
    Ok(hits as f64 / n_trials as f64)
}

/// Expected NearestPlanes success probability for a toy basis: the product
/// `prod erf(d_i ||b~_i|| sqrt(pi) / (2 s))` over the basis's actual
/// Gram-Schmidt norms.
pub fn np_success_closed_form(basis: &ToyBasis, widths: &[u32], s: f64) -> Result<f64> {
    validate_widths(basis.dimension(), widths)?;
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "Gaussian parameter s must be finite and positive, got {s}"
        )));
    }
    let half_sqrt_pi = 0.5 * std::f64::consts::PI.sqrt();
    Ok(basis
        .gs_norms()
        .iter()
        .zip(widths)
        .map(|(norm, &d)| erf::erf(d as f64 * norm * half_sqrt_pi / s))
        .product())
}

/// Reference configurations `(basis, widths, s)` for the NearestPlanes
/// simulation: mixed diagonal and skewed bases in dimensions two to four,
/// chosen so the success probability is well away from 0 and 1.
pub fn np_validation_configs() -> Vec<(ToyBasis, Vec<u32>, f64)> {
    vec![
        (ToyBasis::identity(2).unwrap(), vec![1, 1], 1.0),
        (ToyBasis::diagonal(&[4.0, 1.0]).unwrap(), vec![1, 2], 1.5),
        (
            ToyBasis::new(vec![vec![3.0, 0.0], vec![1.2, 2.0]]).unwrap(),
            vec![1, 1],
            2.0,
        ),
        (
            ToyBasis::diagonal(&[5.0, 3.0, 1.5]).unwrap(),
            vec![1, 1, 2],
            2.0,
        ),
        (
            ToyBasis::new(vec![
                vec![2.0, 0.0, 0.0, 0.0],
                vec![0.7, 2.5, 0.0, 0.0],
                vec![0.3, -0.4, 3.0, 0.0],
                vec![0.5, 0.6, -0.7, 2.0],
            ])
            .unwrap(),
            vec![2, 1, 1, 1],
            2.5,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::erf::erf;
    use rand::RngCore;

    fn rel_err(got: f64, want: f64) -> f64 {
        if got == want {
            0.0
        } else {
            ((got - want) / want).abs()
        }
    }

    #[test]
    fn cost_model_presets_and_validation() {
        assert_eq!(BkzCostModel::reference_fit().coeff_a(), 1.806);
        assert_eq!(BkzCostModel::reference_fit().coeff_b(), 91.0);
        assert_eq!(BkzCostModel::conservative().coeff_a(), 1.8);
        assert_eq!(BkzCostModel::conservative().coeff_b(), 110.0);
        assert_eq!(BkzCostModel::gpu().coeff_a(), 1.6);
        assert_eq!(BkzCostModel::gpu().coeff_b(), 115.0);
        assert_eq!(BkzCostModel::hpc().coeff_a(), 1.4);
        assert_eq!(BkzCostModel::hpc().coeff_b(), 120.0);
        assert_eq!(
            BkzCostModel::preset("gpu").unwrap(),
            BkzCostModel::gpu()
        );
        assert!(BkzCostModel::preset("bogus").is_err());
        assert!(BkzCostModel::new(0.0, 1.0).is_err());
        assert!(BkzCostModel::new(-1.0, 1.0).is_err());
        assert!(BkzCostModel::new(f64::NAN, 1.0).is_err());
        assert!(BkzCostModel::new(1.0, f64::INFINITY).is_err());
        assert!(BkzCostModel::new(1.8, -2.0).is_ok());
    }

    #[test]
    fn delta_root_matches_closed_form() {
        // log2 t + b = a makes the exponent exactly 1.
        let cost = BkzCostModel::new(0.3, 2.7).unwrap();
        let delta = delta_root_from_time(&cost, (0.3f64 - 2.7).exp2()).unwrap();
        assert!((delta - 2.0).abs() < 1e-12, "delta {delta}");
        let cost_ref = BkzCostModel::new(1.8, 110.0).unwrap();
        let delta = delta_root_from_time(&cost_ref, (1.8f64 - 110.0).exp2()).unwrap();
        assert!((delta - 2.0).abs() < 1e-12, "delta {delta}");
        // 16 s: exponent 0.3 / (4 + 2.7).
        let delta = delta_root_from_time(&cost, 16.0).unwrap();
        assert!(rel_err(delta, (0.3f64 / 6.7).exp2()) < 1e-15);
        assert!((delta - 1.0315).abs() < 1e-4);
        // Strictly decreasing toward 1.
        let mut prev = f64::INFINITY;
        for &t in &[0.2, 1.0, 16.0, 1e3, 1e9] {
            let d = delta_root_from_time(&cost, t).unwrap();
            assert!(d > 1.0 && d < prev);
            prev = d;
        }
    }

    #[test]
    fn delta_root_rejects_out_of_domain_times() {
        let cost = BkzCostModel::new(0.3, 2.7).unwrap();
        // 2^(-2.7) ~ 0.1539; anything at or below is out of domain.
        for t in [0.125, 0.0, -1.0, f64::NAN, f64::INFINITY] {
            let err = delta_root_from_time(&cost, t).unwrap_err();
            assert!(matches!(err, Error::ModelDomain(_)), "t = {t}: {err}");
        }
        let msg = delta_root_from_time(&cost, 0.125).unwrap_err().to_string();
        assert!(msg.contains("2^(-2.7)"), "message: {msg}");
        assert!(delta_root_from_time(&cost, 0.16).is_ok());
    }

    #[test]
    fn gsa_norms_decay_geometrically() {
        let lat = LatticeModel::uniform(4, 1.0, 1, 10.0).unwrap();
        let norms = gsa_norms(&lat, 2.0).unwrap();
        assert_eq!(norms[0], 10.0);
        assert_eq!(norms[1], 2.5);
        assert_eq!(norms[2], 0.625);
        for w in norms.windows(2) {
            assert!(w[1] < w[0]);
        }
        let lat30 = LatticeModel::uniform(30, 1.0, 1, 10.0).unwrap();
        let norms = gsa_norms(&lat30, 1.0315).unwrap();
        assert!(rel_err(norms[29], 10.0 * 1.0315f64.powf(-58.0)) < 1e-14);
    }

    #[test]
    fn gsa_norms_telescoping_product() {
        let lat = LatticeModel::uniform(30, 1.0, 1, 10.0).unwrap();
        let delta: f64 = 1.0315;
        let product: f64 = gsa_norms(&lat, delta).unwrap().iter().product();
        let closed = 10.0f64.powi(30) * delta.powf(-(30.0 * 29.0));
        assert!(
            rel_err(product, closed) < 1e-9,
            "product {product:e} vs {closed:e}"
        );
    }

    #[test]
    fn gsa_norms_reject_bad_delta() {
        let lat = LatticeModel::uniform(3, 1.0, 1, 10.0).unwrap();
        for delta in [1.0, 0.5, 0.0, -2.0, f64::NAN, f64::INFINITY] {
            assert!(gsa_norms(&lat, delta).is_err(), "delta = {delta}");
        }
    }

    #[test]
    fn lattice_model_validation() {
        assert!(LatticeModel::new(2.0, vec![1, 2, 3], 10.0).is_ok());
        assert!(LatticeModel::new(2.0, vec![], 10.0).is_err());
        assert!(LatticeModel::new(2.0, vec![1, 0], 10.0).is_err());
        assert!(LatticeModel::new(0.0, vec![1], 10.0).is_err());
        assert!(LatticeModel::new(2.0, vec![1], 0.0).is_err());
        assert!(LatticeModel::new(2.0, vec![1], f64::NAN).is_err());
        assert!(LatticeModel::uniform(0, 2.0, 1, 10.0).is_err());
        let lat = LatticeModel::uniform(5, 2.0, 3, 10.0).unwrap();
        assert_eq!(lat.m(), 5);
        assert_eq!(lat.d(), &[3, 3, 3, 3, 3]);
    }

    #[test]
    fn p_lwe_exact_matches_hand_product() {
        // Two factors at delta = 2: erf(sqrt(pi)/2) * erf(sqrt(pi)/8).
        let lat = LatticeModel::uniform(2, 2.0, 1, 2.0).unwrap();
        let p = p_lwe_exact_from_delta(&lat, 2.0).unwrap();
        assert!(
            rel_err(p, 0.19429296901369267) < 1e-13,
            "p = {p:.17e}"
        );
        // Cross-check against the plain product form.
        let sqrt_pi = std::f64::consts::PI.sqrt();
        let plain = erf(sqrt_pi / 2.0) * erf(2.0 * sqrt_pi * 0.25 / 4.0);
        assert!(rel_err(p, plain) < 1e-14);
        // Saturation: a single huge factor.
        let sat = LatticeModel::uniform(1, 2.0, 1, 1e9).unwrap();
        assert_eq!(p_lwe_exact_from_delta(&sat, 1.5).unwrap(), 1.0);
        // Generic value sits strictly inside (0, 1).
        assert!(p > 0.0 && p < 1.0);
    }

    #[test]
    fn p_lwe_time_path_equals_delta_path() {
        let lat = LatticeModel::uniform(10, 2.0, 1, 10.0).unwrap();
        let cost = BkzCostModel::new(0.3, 2.7).unwrap();
        let delta = delta_root_from_time(&cost, 25.0).unwrap();
        assert_eq!(
            p_lwe_exact(&lat, &cost, 25.0).unwrap(),
            p_lwe_exact_from_delta(&lat, delta).unwrap()
        );
        assert_eq!(
            log2_p_lwe_exact(&lat, &cost, 25.0).unwrap(),
            log2_p_lwe_exact_from_delta(&lat, delta).unwrap()
        );
        // log2 and plain probability agree where no underflow is involved.
        let p = p_lwe_exact(&lat, &cost, 25.0).unwrap();
        let l2 = log2_p_lwe_exact(&lat, &cost, 25.0).unwrap();
        assert!(rel_err(l2, p.log2()) < 1e-12);
    }

    #[test]
    fn p_lwe_monotone_under_random_perturbations() {
        let mut rng = CounterRng::new(2024, 0);
        for _ in 0..1000 {
            let m = 1 + (rng.next_u64() % 40) as usize;
            let s = 0.5 + 3.5 * rng.uniform_open01();
            let b1 = 1.0 + 19.0 * rng.uniform_open01();
            let d: Vec<u32> = (0..m).map(|_| 1 + (rng.next_u64() % 3) as u32).collect();
            let a = 0.2 + 1.8 * rng.uniform_open01();
            let b = 1.0 + 7.0 * rng.uniform_open01();
            let t = (-b + 0.6).exp2() * (1.0 + 1e5 * rng.uniform_open01());
            let cost = BkzCostModel::new(a, b).unwrap();
            let lat = LatticeModel::new(s, d.clone(), b1).unwrap();
            let p = p_lwe_exact(&lat, &cost, t).unwrap();
            // Longer reduction time never hurts.
            let p_longer = p_lwe_exact(&lat, &cost, 1.7 * t).unwrap();
            assert!(p_longer >= p - 1e-15, "t: {p_longer} < {p}");
            // Wider noise never helps.
            let wider = LatticeModel::new(1.3 * s, d.clone(), b1).unwrap();
            let p_wider = p_lwe_exact(&wider, &cost, t).unwrap();
            assert!(p_wider <= p + 1e-15, "s: {p_wider} > {p}");
            // A larger search radius never hurts.
            let mut d_plus = d.clone();
            let idx = (rng.next_u64() % m as u64) as usize;
            d_plus[idx] += 1;
            let deeper = LatticeModel::new(s, d_plus, b1).unwrap();
            let p_deeper = p_lwe_exact(&deeper, &cost, t).unwrap();
            assert!(p_deeper >= p - 1e-15, "d: {p_deeper} < {p}");
        }
    }

    #[test]
    fn pade_log_probability_reference_points() {
        // Long-profile sweep: radius 2, b1 = 10, s = 2, a = 1.8, b = 2.7,
        // t = 2^30 s. Reference values computed independently at high
        // precision for the exact side and by faithful f64 evaluation for
        // the surrogate side.
        let cost = BkzCostModel::new(1.8, 2.7).unwrap();
        let t = (1u64 << 30) as f64;
        let at = |m: usize| {
            let lat = LatticeModel::uniform(m, 2.0, 2, 10.0).unwrap();
            (
                log2_p_lwe_exact(&lat, &cost, t).unwrap(),
                log2_p_lwe_pade(&lat, &cost, t).unwrap(),
            )
        };
        let (ex50, pa50) = at(50);
        assert!(rel_err(ex50, -24.041187351185858) < 1e-12, "{ex50:.17e}");
        assert!(rel_err(pa50, -24.035288369087603) < 1e-12, "{pa50:.17e}");
        assert!(rel_err(pa50, ex50) < 1e-3);
        let (ex40, pa40) = at(40);
        assert!(rel_err(pa40, ex40) < 1e-3, "{:e}", rel_err(pa40, ex40));
        // Mid-sweep the tail mismatch of the surrogate dominates: the
        // log-probability is a sum of tiny complement terms whose decay
        // rates differ between erf and the surrogate exponent.
        let (ex14, pa14) = at(14);
        assert!((rel_err(pa14, ex14) - 6.165721e-2).abs() < 1e-5);
        // Deep tail: every surrogate term rounds to log2(1) = 0 while the
        // exact side retains the true magnitude.
        let (ex5, pa5) = at(5);
        assert_eq!(pa5, 0.0);
        assert!(rel_err(ex5, -3.6856049011192195e-20) < 1e-10, "{ex5:.17e}");
    }

    #[test]
    fn pade_log_probability_trivial_cases() {
        // A single saturated factor contributes exactly zero bits.
        let sat = LatticeModel::uniform(1, 2.0, 1, 1e9).unwrap();
        assert_eq!(log2_p_lwe_pade_from_delta(&sat, 1.5).unwrap(), 0.0);
        // Two-factor example stays within 1e-3 of the exact log.
        let lat = LatticeModel::uniform(2, 2.0, 1, 2.0).unwrap();
        let ex = log2_p_lwe_exact_from_delta(&lat, 2.0).unwrap();
        let pa = log2_p_lwe_pade_from_delta(&lat, 2.0).unwrap();
        assert!(rel_err(pa, ex) < 1e-3, "{:e}", rel_err(pa, ex));
        assert!(rel_err(ex, 0.19429296901369267f64.log2()) < 1e-13);
    }

    #[test]
    fn optimal_subdimension_examples() {
        let lwe = LweParams::new(72, 1021, 3.0).unwrap();
        let m = optimal_subdimension(&lwe, 1.01).unwrap();
        assert!(rel_err(m, 223.90731565864565) < 1e-12, "{m:.17e}");
        let small = LweParams::new(4, 16, 1.0).unwrap();
        assert_eq!(optimal_subdimension(&small, 2.0).unwrap(), 4.0);
        // delta -> 1+ blows the subdimension up.
        let huge = optimal_subdimension(&small, 1.0 + 1e-12).unwrap();
        assert!(huge > 1e6);
        assert!(optimal_subdimension(&small, 1.0).is_err());
        assert!(optimal_subdimension(&small, 0.9).is_err());
    }

    #[test]
    fn lwe_params_validation() {
        assert!(LweParams::new(1, 2, 0.1).is_ok());
        assert!(LweParams::new(0, 1021, 3.0).is_err());
        assert!(LweParams::new(72, 1, 3.0).is_err());
        assert!(LweParams::new(72, 1021, 0.0).is_err());
        assert!(LweParams::new(72, 1021, f64::NAN).is_err());
    }

    #[test]
    fn param_relations_match_closed_forms() {
        // n = m collapses the first norm to q^2.
        let lwe = LweParams::new(24, 257, 3.0).unwrap();
        let rel = lattice_param_relations(&lwe, 24).unwrap();
        assert!(rel_err(rel.b1_norm, 257.0 * 257.0) < 1e-14);
        let lwe = LweParams::new(72, 1021, 3.0).unwrap();
        let rel = lattice_param_relations(&lwe, 224).unwrap();
        assert!(rel_err(rel.b1_norm, 85.975_298_303_217_95) < 1e-13);
        assert!(rel_err(rel.last_gs_norm, 1.0200832040266627) < 1e-13);
        assert!(rel_err(rel.n_back, 72.0) < 1e-12);
        assert!(lattice_param_relations(&lwe, 0).is_err());
    }

    #[test]
    fn param_relations_round_trip() {
        let mut rng = CounterRng::new(11, 0);
        for _ in 0..100 {
            let n = 1 + (rng.next_u64() % 256) as u32;
            let q = 2 + rng.next_u64() % 4095;
            let m_lo = (n as usize).div_ceil(3);
            let m = m_lo + (rng.next_u64() % (4 * n as u64)) as usize;
            let lwe = LweParams::new(n, q, 1.0).unwrap();
            let rel = lattice_param_relations(&lwe, m).unwrap();
            assert!(
                rel_err(rel.n_back, n as f64) < 1e-10,
                "n = {n}, q = {q}, m = {m}: {}",
                rel.n_back
            );
        }
    }

    #[test]
    fn toy_basis_gram_schmidt_invariants() {
        let mut rng = CounterRng::new(3, 0);
        let m = 8;
        let rows: Vec<Vec<f64>> = (0..m)
            .map(|_| {
                (0..m)
                    .map(|_| -5.0 + 10.0 * rng.uniform_open01())
                    .collect()
            })
            .collect();
        let basis = ToyBasis::new(rows.clone()).unwrap();
        let gs = basis.gram_schmidt_rows();
        assert_eq!(gs[0], rows[0]);
        for i in 0..m {
            for (j, g_row) in gs.iter().enumerate().take(i) {
                let cos =
                    dot(&gs[i], g_row) / (dot(&gs[i], &gs[i]).sqrt() * dot(g_row, g_row).sqrt());
                assert!(cos.abs() < 1e-12, "rows {i},{j} not orthogonal: {cos:e}");
            }
            // Reconstruction through the coefficient table.
            let mut rebuilt = gs[i].clone();
            for (j, g_row) in gs.iter().enumerate().take(i) {
                for (x, g) in rebuilt.iter_mut().zip(g_row) {
                    *x += basis.mu()[i][j] * g;
                }
            }
            for (got, want) in rebuilt.iter().zip(&rows[i]) {
                assert!((got - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn toy_basis_rejects_bad_shapes() {
        assert!(ToyBasis::new(vec![]).is_err());
        assert!(ToyBasis::identity(9).is_err());
        assert!(ToyBasis::identity(8).is_ok());
        assert!(ToyBasis::new(vec![vec![1.0, 0.0], vec![1.0]]).is_err());
        assert!(ToyBasis::new(vec![vec![1.0, f64::NAN], vec![0.0, 1.0]]).is_err());
        // Linearly dependent rows.
        let dep = ToyBasis::new(vec![vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(matches!(dep, Err(Error::InvalidBasis(_))));
    }

    #[test]
    fn nearest_planes_rounds_to_nearest_point() {
        let basis = ToyBasis::identity(2).unwrap();
        let out = nearest_planes(&basis, &[1, 1], &[0.3, -0.2]).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].coefficients, vec![0, 0]);
        assert_eq!(out[0].vector, vec![0.0, 0.0]);
        let out = nearest_planes(&basis, &[1, 1], &[0.7, 0.1]).unwrap();
        assert_eq!(out[0].coefficients, vec![1, 0]);
        assert_eq!(out[0].vector, vec![1.0, 0.0]);
    }

    #[test]
    fn nearest_planes_rejects_bad_inputs() {
        let basis = ToyBasis::identity(2).unwrap();
        assert!(nearest_planes(&basis, &[1], &[0.0, 0.0]).is_err());
        assert!(nearest_planes(&basis, &[1, 0], &[0.0, 0.0]).is_err());
        assert!(nearest_planes(&basis, &[1, 1], &[0.0]).is_err());
        assert!(nearest_planes(&basis, &[1, 1], &[f64::NAN, 0.0]).is_err());
        assert!(nearest_planes(&basis, &[100, 101], &[0.0, 0.0]).is_err());
        assert_eq!(
            nearest_planes(&basis, &[100, 100], &[0.0, 0.0])
                .unwrap()
                .len(),
            10_000
        );
    }

    /// Membership oracle: a coefficient vector is produced by the
    /// enumeration exactly when each level's projection offset stays within
    /// half the level's width. Points are checked with a +/- margin so ties
    /// cannot flip the verdict.
    fn offsets(basis: &ToyBasis, target: &[f64], coeffs: &[i64]) -> Vec<f64> {
        let m = basis.dimension();
        let mut diff = target.to_vec();
        for (k, row) in basis.rows().iter().enumerate() {
            for (x, b) in diff.iter_mut().zip(row) {
                *x -= coeffs[k] as f64 * b;
            }
        }
        (0..m)
            .map(|k| {
                dot(&diff, &basis.gram_schmidt_rows()[k]) / basis.gs_norm_sq(k)
            })
            .collect()
    }

    #[test]
    fn nearest_planes_matches_exhaustive_oracle() {
        let cases: Vec<(Vec<Vec<f64>>, Vec<u32>)> = vec![
            (vec![vec![2.0, 1.0], vec![0.0, 3.0]], vec![2, 1]),
            (vec![vec![2.0, 1.0], vec![0.0, 3.0]], vec![3, 2]),
            (
                vec![
                    vec![1.5, 0.2, -0.3],
                    vec![0.4, 2.0, 0.1],
                    vec![-0.2, 0.3, 1.8],
                ],
                vec![2, 2, 3],
            ),
            (
                vec![
                    vec![3.0, 1.0, 0.0, 0.5],
                    vec![0.0, 2.5, 0.7, -0.2],
                    vec![0.1, 0.0, 2.0, 0.4],
                    vec![-0.3, 0.2, 0.0, 1.5],
                ],
                vec![2, 1, 3, 2],
            ),
        ];
        let mut rng = CounterRng::new(5, 0);
        for (rows, widths) in cases {
            let basis = ToyBasis::new(rows).unwrap();
            let m = basis.dimension();
            let expected: u64 = widths.iter().map(|&d| d as u64).product();
            for _ in 0..25 {
                let target: Vec<f64> =
                    (0..m).map(|_| -4.0 + 8.0 * rng.uniform_open01()).collect();
                let out = nearest_planes(&basis, &widths, &target).unwrap();
                assert_eq!(out.len() as u64, expected);
                // No duplicate coefficient vectors.
                let mut seen: Vec<&[i64]> =
                    out.iter().map(|p| p.coefficients.as_slice()).collect();
                seen.sort();
                seen.dedup();
                assert_eq!(seen.len() as u64, expected);
                for p in &out {
                    // Returned vectors really are the integer combinations.
                    let mut rebuilt = vec![0.0; m];
                    for (k, row) in basis.rows().iter().enumerate() {
                        for (x, b) in rebuilt.iter_mut().zip(row) {
                            *x += p.coefficients[k] as f64 * b;
                        }
                    }
                    for (a, b) in rebuilt.iter().zip(&p.vector) {
                        assert!((a - b).abs() < 1e-9);
                    }
                    // Every output satisfies the membership inequality.
                    for (k, off) in
                        offsets(&basis, &target, &p.coefficients).iter().enumerate()
                    {
                        assert!(
                            off.abs() <= widths[k] as f64 / 2.0 + 1e-9,
                            "offset {off} exceeds width {} at level {k}",
                            widths[k]
                        );
                    }
                }
                // Every strictly interior box point appears in the output.
                let lo: Vec<i64> = (0..m)
                    .map(|k| out.iter().map(|p| p.coefficients[k]).min().unwrap() - 2)
                    .collect();
                let hi: Vec<i64> = (0..m)
                    .map(|k| out.iter().map(|p| p.coefficients[k]).max().unwrap() + 2)
                    .collect();
                let mut stack = vec![Vec::<i64>::new()];
                while let Some(prefix) = stack.pop() {
                    if prefix.len() == m {
                        let interior = offsets(&basis, &target, &prefix)
                            .iter()
                            .enumerate()
                            .all(|(k, off)| off.abs() < widths[k] as f64 / 2.0 - 1e-9);
                        if interior {
                            assert!(
                                out.iter().any(|p| p.coefficients == prefix),
                                "missing interior point {prefix:?}"
                            );
                        }
                        continue;
                    }
                    let k = prefix.len();
                    for c in lo[k]..=hi[k] {
                        let mut next = prefix.clone();
                        next.push(c);
                        stack.push(next);
                    }
                }
            }
        }
    }

    #[test]
    fn np_monte_carlo_matches_erf_product() {
        let basis = ToyBasis::diagonal(&[4.0, 1.0]).unwrap();
        let n = 100_000u64;
        let rate = np_success_monte_carlo(&basis, &[1, 1], 1.0, n, 0).unwrap();
        // erf(2 sqrt(pi)) * erf(sqrt(pi)/2), three binomial sigma.
        let expect = 0.7899081718248967;
        let sigma = (expect * (1.0 - expect) / n as f64).sqrt();
        assert!(
            (rate - expect).abs() < 3.0 * sigma,
            "rate {rate} vs {expect} (sigma {sigma})"
        );
    }

    #[test]
    fn np_monte_carlo_limits_and_ordering() {
        let basis = ToyBasis::diagonal(&[2.0, 1.5]).unwrap();
        // Vanishing noise always decodes.
        let all = np_success_monte_carlo(&basis, &[1, 1], 1e-6, 2_000, 3).unwrap();
        assert_eq!(all, 1.0);
        // Wider search never hurts; here it strictly helps.
        let narrow = np_success_monte_carlo(&basis, &[1, 1], 1.5, 20_000, 1).unwrap();
        let wide = np_success_monte_carlo(&basis, &[2, 2], 1.5, 20_000, 1).unwrap();
        assert!(wide > narrow, "wide {wide} vs narrow {narrow}");
        // Determinism from the seed alone.
        let again = np_success_monte_carlo(&basis, &[1, 1], 1.5, 20_000, 1).unwrap();
        assert_eq!(narrow, again);
        let other_seed = np_success_monte_carlo(&basis, &[1, 1], 1.5, 20_000, 2).unwrap();
        assert_ne!(narrow, other_seed);
    }

    #[test]
    fn np_monte_carlo_rejects_bad_inputs() {
        let big = ToyBasis::identity(7).unwrap();
        assert!(np_success_monte_carlo(&big, &[1; 7], 1.0, 10, 0).is_err());
        let basis = ToyBasis::identity(2).unwrap();
        assert!(np_success_monte_carlo(&basis, &[1, 1], 0.0, 10, 0).is_err());
        assert!(np_success_monte_carlo(&basis, &[1, 1], 1.0, 0, 0).is_err());
        assert!(np_success_monte_carlo(&basis, &[1], 1.0, 10, 0).is_err());
    }

    #[test]
    fn np_closed_form_matches_hand_products() {
        let half_sqrt_pi = 0.5 * std::f64::consts::PI.sqrt();
        // Skewed 2D basis: GS norms are 3 and 2.
        let basis = ToyBasis::new(vec![vec![3.0, 0.0], vec![1.2, 2.0]]).unwrap();
        let got = np_success_closed_form(&basis, &[1, 1], 2.0).unwrap();
        let want = erf(3.0 * half_sqrt_pi / 2.0) * erf(2.0 * half_sqrt_pi / 2.0);
        assert!(rel_err(got, want) < 1e-15);

        let diag = ToyBasis::diagonal(&[4.0, 1.0]).unwrap();
        let got = np_success_closed_form(&diag, &[1, 2], 1.5).unwrap();
        let want = erf(4.0 * half_sqrt_pi / 1.5) * erf(2.0 * half_sqrt_pi / 1.5);
        assert!(rel_err(got, want) < 1e-15);

        assert!(np_success_closed_form(&diag, &[1], 1.5).is_err());
        assert!(np_success_closed_form(&diag, &[1, 2], 0.0).is_err());
    }

    #[test]
    fn np_validation_configs_are_small_and_informative() {
        let configs = np_validation_configs();
        assert_eq!(configs.len(), 5);
        let mut saw_skewed = false;
        for (basis, widths, s) in &configs {
            assert!(basis.dimension() <= 4);
            assert_eq!(widths.len(), basis.dimension());
            let p = np_success_closed_form(basis, widths, *s).unwrap();
            assert!(p > 0.3 && p < 0.96, "p = {p} too extreme for a 3-sigma test");
            let rows = basis.rows();
            if rows
                .iter()
                .enumerate()
                .any(|(i, row)| row.iter().enumerate().any(|(j, &x)| i != j && x != 0.0))
            {
                saw_skewed = true;
            }
        }
        assert!(saw_skewed);
    }
}
