//! Parsing and formatting of unit-suffixed quantities.
//!
//! Every externally supplied time or distance must carry an explicit unit
//! suffix (`ns`, `us`, `ms`, `s` for times, `km` for distances); bare
//! numbers are rejected so that a forgotten unit can never silently change
//! a result by three orders of magnitude.

use crate::{Error, Result};

/// Splits `input` into its numeric prefix and trailing alphabetic suffix.
fn split_suffix(input: &str) -> (&str, &str) {
    let trimmed = input.trim();
    let cut = trimmed
        .rfind(|c: char| !c.is_ascii_alphabetic())
        .map(|i| i + trimmed[i..].chars().next().map_or(1, char::len_utf8))
        .unwrap_or(0);
    (&trimmed[..cut], &trimmed[cut..])
}

fn parse_number(text: &str, original: &str) -> Result<f64> {
    let value: f64 = text
        .parse()
        .map_err(|_| Error::Parse(format!("cannot parse numeric value in {original:?}")))?;
    if !value.is_finite() {
        return Err(Error::Parse(format!("non-finite value in {original:?}")));
    }
    if value < 0.0 {
        return Err(Error::Parse(format!("negative quantity in {original:?}")));
    }
    Ok(value)
}

/// Parses a time with a mandatory `ns`, `us`, `ms`, or `s` suffix into seconds.
pub fn parse_seconds(input: &str) -> Result<f64> {
    let (number, suffix) = split_suffix(input);
    let scale = match suffix {
        "ns" => 1e-9,
        "us" => 1e-6,
        "ms" => 1e-3,
        "s" => 1.0,
        "" => {
            return Err(Error::Parse(format!(
                "time {input:?} lacks a unit suffix (expected ns, us, ms, or s)"
            )))
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown time unit {other:?} in {input:?} (expected ns, us, ms, or s)"
            )))
        }
    };
    if number.is_empty() {
        return Err(Error::Parse(format!("missing numeric value in {input:?}")));
    }
    Ok(parse_number(number, input)? * scale)
}

/// Parses a time like [`parse_seconds`] but also accepts `inf` for an
/// unbounded coherence time.
pub fn parse_seconds_or_inf(input: &str) -> Result<f64> {
    if input.trim() == "inf" {
        return Ok(f64::INFINITY);
    }
    parse_seconds(input)
}

/// Parses a distance with a mandatory `km` suffix into kilometres.
pub fn parse_km(input: &str) -> Result<f64> {
    let (number, suffix) = split_suffix(input);
    if suffix != "km" {
        return Err(Error::Parse(format!(
            "distance {input:?} must carry a km suffix"
        )));
    }
    if number.is_empty() {
        return Err(Error::Parse(format!("missing numeric value in {input:?}")));
    }
    parse_number(number, input)
}

/// Formats a float with 17 significant digits, enough to round-trip f64.
pub fn format_sig17(value: f64) -> String {
    format!("{value:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_all_time_suffixes() {
        assert!((parse_seconds("2.3us").unwrap() - 2.3e-6).abs() < 1e-20);
        assert!((parse_seconds("412ns").unwrap() - 412e-9).abs() < 1e-22);
        assert_eq!(parse_seconds("1ms").unwrap(), 1e-3);
        assert_eq!(parse_seconds("20s").unwrap(), 20.0);
        assert_eq!(parse_seconds(" 1e-3s ").unwrap(), 1e-3);
    }

    #[test]
    fn rejects_bare_numbers_and_unknown_units() {
        assert!(parse_seconds("2.3").is_err());
        assert!(parse_seconds("2.3min").is_err());
        assert!(parse_seconds("us").is_err());
        assert!(parse_seconds("-1s").is_err());
        assert!(parse_seconds("").is_err());
        assert!(parse_km("190").is_err());
        assert!(parse_km("190mi").is_err());
    }

    #[test]
    fn parses_distances_and_infinity() {
        assert_eq!(parse_km("190km").unwrap(), 190.0);
        assert_eq!(parse_km("0.5km").unwrap(), 0.5);
        assert!(parse_seconds_or_inf("inf").unwrap().is_infinite());
        assert_eq!(parse_seconds_or_inf("20s").unwrap(), 20.0);
    }

    #[test]
    fn formats_17_significant_digits() {
        assert_eq!(format_sig17(0.5), "5.0000000000000000e-1");
        let x = 0.684_939_720_585_721_2_f64;
        let parsed: f64 = format_sig17(x).parse().unwrap();
        assert_eq!(parsed, x);
    }
}
