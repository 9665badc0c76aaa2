//! Error function implementations.
//!
//! [`erf`] delegates to the classical sub-ulp rational approximation from
//! the `libm` crate and serves as the reference throughout this crate; the
//! test suite pins it against independently computed high-precision values
//! and a quadrature oracle. [`erf_pade`] is the cheap exponential Pade
//! surrogate used by the closed-form lattice cost model; it is only good
//! to a few 1e-4 absolute and exists so the two can be compared.

/// Reference error function, accurate to under 1 ulp.
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// Natural log of erf(x) for x > 0, stable for both tiny and large x.
///
/// For x >= 0.5 this goes through erfc, which keeps full relative
/// precision in the tail (down to ~1e-308) where erf itself rounds to 1;
/// below that, ln of erf is well conditioned directly.
pub fn ln_erf(x: f64) -> f64 {
    if x >= 0.5 {
        (-libm::erfc(x)).ln_1p()
    } else {
        erf(x).ln()
    }
}

/// Exponential Pade surrogate for erf with fitted constant w = 0.140012.
///
/// erf(z) ~ sign(z) sqrt(1 - exp(-z^2 (4/pi + w z^2) / (1 + w z^2))),
/// accurate to about 3.3e-4 absolute near z = 1.35.
pub fn erf_pade(z: f64) -> f64 {
    let y = erf_pade_exponent(z);
    z.signum() * (1.0 - (-y).exp()).sqrt()
}

/// Exponent y(z) of the Pade surrogate, so erf_pade(z)^2 = 1 - exp(-y(z)).
pub fn erf_pade_exponent(z: f64) -> f64 {
    const W: f64 = 0.140012;
    let z2 = z * z;
    z2 * (4.0 / std::f64::consts::PI + W * z2) / (1.0 + W * z2)
}
