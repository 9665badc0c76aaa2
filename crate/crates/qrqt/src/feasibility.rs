//! Timing-budget feasibility of teleportation with an authenticated
//! post-quantum classical channel.
//!
//! The correction bits must reach the receiver while the stored half of the
//! entangled pair is still coherent. The total latency over `d` km of fiber
//! is `tau_m = T_fixed + d / v_fiber`, where `T_fixed` aggregates the five
//! distance-independent delays (Bell preparation, Bell-basis transform,
//! measurement, PQC encryption/decryption, correction). Feasibility is the
//! strict window test `T_coh > tau_m`, which inverts to a maximum secure
//! distance per scheme and a minimum coherence time per distance.
//!
//! Built-in tables carry reference encryption overheads for six KEM
//! parameter sets, nanosecond-scale baseline compute times for three scheme
//! families, and reported coherence times for four memory platforms; a
//! plain-text override file can add further schemes.

use crate::units::parse_seconds;
use crate::{Error, Result};
use std::path::Path;

/// Default signal velocity in optical fiber, km/s.
pub const DEFAULT_V_FIBER: f64 = 2.0e5;

/// Reference supercomputer throughput, operations per second.
pub const DEFAULT_R_MAX: f64 = 4.50e15;

/// Distance-independent delay components plus the fiber velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingProfile {
    t_bell_prep: f64,
    t_bell_transform: f64,
    t_measure: f64,
    t_pqc: f64,
    t_correct: f64,
    v_fiber: f64,
}

impl TimingProfile {
    /// Builds a profile from the five fixed delays (seconds) and the fiber
    /// velocity (km/s). Delays must be nonnegative and the velocity positive.
    pub fn new(
        t_bell_prep: f64,
        t_bell_transform: f64,
        t_measure: f64,
        t_pqc: f64,
        t_correct: f64,
        v_fiber: f64,
    ) -> Result<Self> {
        for (name, value) in [
            ("t_bell_prep", t_bell_prep),
            ("t_bell_transform", t_bell_transform),
            ("t_measure", t_measure),
            ("t_pqc", t_pqc),
            ("t_correct", t_correct),
        ] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be a finite nonnegative time, got {value}"
                )));
            }
        }
        if !(v_fiber.is_finite() && v_fiber > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "v_fiber must be finite and positive, got {v_fiber}"
            )));
        }
        Ok(TimingProfile {
            t_bell_prep,
            t_bell_transform,
            t_measure,
            t_pqc,
            t_correct,
            v_fiber,
        })
    }

    /// Profile in which the PQC delay dominates: local quantum operations
    /// are nanosecond-scale and treated as zero, as is the correction step.
    pub fn pqc_only(t_pqc: f64) -> Result<Self> {
        Self::new(0.0, 0.0, 0.0, t_pqc, 0.0, DEFAULT_V_FIBER)
    }

    /// Same profile with a different fiber velocity.
    pub fn with_v_fiber(mut self, v_fiber: f64) -> Result<Self> {
        if !(v_fiber.is_finite() && v_fiber > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "v_fiber must be finite and positive, got {v_fiber}"
            )));
        }
        self.v_fiber = v_fiber;
        Ok(self)
    }

    /// Sum of the five distance-independent delays, seconds.
    pub fn t_fixed(&self) -> f64 {
        self.t_bell_prep + self.t_bell_transform + self.t_measure + self.t_pqc + self.t_correct
    }

    pub fn v_fiber(&self) -> f64 {
        self.v_fiber
    }

    pub fn t_pqc(&self) -> f64 {
        self.t_pqc
    }
}

/// Total latency `tau_m` in seconds for a link of the given length.
pub fn total_latency(profile: &TimingProfile, distance_km: f64) -> Result<f64> {
    if !(distance_km.is_finite() && distance_km >= 0.0) {
        return Err(Error::Domain(format!(
            "distance must be finite and nonnegative, got {distance_km} km"
        )));
    }
    Ok(profile.t_fixed() + distance_km / profile.v_fiber())
}

/// Strict feasibility test: the memory must outlive the total latency.
pub fn is_feasible(profile: &TimingProfile, distance_km: f64, t_coh: f64) -> Result<bool> {
    Ok(t_coh > total_latency(profile, distance_km)?)
}

/// Result of [`max_distance`]: the clamped distance and whether a positive
/// coherence window exists at all.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxDistance {
    /// Largest feasible link length in km, 0 when infeasible.
    pub d_max: f64,
    /// False when the fixed delays alone exhaust the coherence time.
    pub feasible: bool,
}

/// Longest link the coherence window allows:
/// `d_max = (t_coh - T_fixed) * v_fiber`, clamped to zero with the
/// `feasible` flag cleared when the fixed delays already exceed `t_coh`.
pub fn max_distance(profile: &TimingProfile, t_coh: f64) -> MaxDistance {
    let window = t_coh - profile.t_fixed();
    if window > 0.0 {
        MaxDistance {
            d_max: window * profile.v_fiber(),
            feasible: true,
        }
    } else {
        MaxDistance {
            d_max: 0.0,
            feasible: false,
        }
    }
}

/// Smallest coherence time supporting a link of the given length:
/// the total latency itself.
pub fn min_coherence(profile: &TimingProfile, distance_km: f64) -> Result<f64> {
    total_latency(profile, distance_km)
}

/// Compute-throughput model for lower-bounding PQC latency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThroughputModel {
    r_max: f64,
}

impl ThroughputModel {
    pub fn new(r_max: f64) -> Result<Self> {
        if !(r_max.is_finite() && r_max > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "throughput must be finite and positive, got {r_max}"
            )));
        }
        Ok(ThroughputModel { r_max })
    }

    /// Reference machine at 4.50e15 op/s.
    pub fn reference() -> Self {
        ThroughputModel {
            r_max: DEFAULT_R_MAX,
        }
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }
}

/// Lower bound on the time to execute `n_ops` operations: `n_ops / r_max`.
pub fn pqc_latency_estimate(model: &ThroughputModel, n_ops: f64) -> Result<f64> {
    if !(n_ops.is_finite() && n_ops >= 0.0) {
        return Err(Error::Domain(format!(
            "operation count must be finite and nonnegative, got {n_ops}"
        )));
    }
    Ok(n_ops / model.r_max())
}

/// A KEM parameter set: name, classical security level in bits, and the
/// encryption/decryption overhead in seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct PqcScheme {
    pub name: String,
    pub security_level: u32,
    pub t_enc: f64,
}

impl PqcScheme {
    pub fn new(name: &str, security_level: u32, t_enc: f64) -> Result<Self> {
        if name.is_empty() {
            return Err(Error::InvalidArgument("scheme name must not be empty".into()));
        }
        if security_level == 0 {
            return Err(Error::InvalidArgument(
                "security level must be positive".into(),
            ));
        }
        if !(t_enc.is_finite() && t_enc > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "encryption overhead must be finite and positive, got {t_enc}"
            )));
        }
        Ok(PqcScheme {
            name: name.to_string(),
            security_level,
            t_enc,
        })
    }
}

/// Reference encryption overheads for the six built-in KEM parameter sets.
pub fn builtin_scheme_table() -> Vec<PqcScheme> {
    [
        ("Kyber512", 128, 2.3e-6),
        ("Kyber768", 192, 3.1e-6),
        ("Kyber1024", 256, 4.2e-6),
        ("FrodoKEM-640", 128, 15.7e-6),
        ("FrodoKEM-976", 192, 28.4e-6),
        ("FrodoKEM-1344", 256, 45.1e-6),
    ]
    .into_iter()
    .map(|(name, level, t_enc)| PqcScheme {
        name: name.to_string(),
        security_level: level,
        t_enc,
    })
    .collect()
}

/// Baseline compute time of one scheme family at one NIST security level.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineTiming {
    pub family: String,
    pub nist_level: u8,
    /// Baseline computation time, seconds.
    pub t_base: f64,
}

/// Nanosecond-scale baseline computation times for three scheme families at
/// NIST levels 1, 3, and 5.
pub fn builtin_baseline_table() -> Vec<BaselineTiming> {
    [
        ("Kyber", 1, 412e-9),
        ("Kyber", 3, 432e-9),
        ("Kyber", 5, 449e-9),
        ("BIKE", 1, 2002e-9),
        ("BIKE", 3, 3932e-9),
        ("BIKE", 5, 7885e-9),
        ("FrodoKEM", 1, 3421e-9),
        ("FrodoKEM", 3, 5260e-9),
        ("FrodoKEM", 5, 7955e-9),
    ]
    .into_iter()
    .map(|(family, nist_level, t_base)| BaselineTiming {
        family: family.to_string(),
        nist_level,
        t_base,
    })
    .collect()
}

/// Reported coherence time of a quantum memory platform.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceBenchmark {
    pub platform: String,
    /// Coherence time, seconds.
    pub t_coh: f64,
}

/// Reported coherence times for four representative memory platforms.
pub fn builtin_coherence_table() -> Vec<CoherenceBenchmark> {
    [
        ("NV-center", 1.0),
        ("Trapped ion", 3600.0),
        ("Fluxonium qubit", 1.4e-3),
        ("Superconducting cavity", 34e-3),
    ]
    .into_iter()
    .map(|(platform, t_coh)| CoherenceBenchmark {
        platform: platform.to_string(),
        t_coh,
    })
    .collect()
}

/// Loads extra schemes from a plain-text file.
///
/// Each non-empty line outside of `#` comments holds three
/// whitespace-separated fields: name, security level in bits, and the
/// encryption overhead with a mandatory unit suffix (`ns`, `us`, `ms`, `s`),
/// for example `SABER 192 9us`.
pub fn load_scheme_file(path: &Path) -> Result<Vec<PqcScheme>> {
    let text = std::fs::read_to_string(path)?;
    parse_scheme_text(&text)
}

/// Parses scheme-table text; see [`load_scheme_file`] for the format.
pub fn parse_scheme_text(text: &str) -> Result<Vec<PqcScheme>> {
    let mut schemes = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!(
                "line {}: expected 'name level t_enc', got {} fields",
                idx + 1,
                fields.len()
            )));
        }
        let level: u32 = fields[1].parse().map_err(|_| {
            Error::Parse(format!(
                "line {}: security level '{}' is not a positive integer",
                idx + 1,
                fields[1]
            ))
        })?;
        let t_enc = parse_seconds(fields[2])
            .map_err(|e| Error::Parse(format!("line {}: {e}", idx + 1)))?;
        let scheme = PqcScheme::new(fields[0], level, t_enc)
            .map_err(|e| Error::Parse(format!("line {}: {e}", idx + 1)))?;
        schemes.push(scheme);
    }
    Ok(schemes)
}
