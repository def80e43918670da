//! Parsing of numbers, amplitude lists, weights and profiles from flags.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use qrepeat::quantum::{Amplitude, PureState, StrategyProfile};
use qrepeat::payoff::RestrictedStateWeights;
use qrepeat::Scalar;

use crate::error::CliError;

/// Parses `n/d`, a decimal such as `-0.125`, or scientific notation, exactly.
pub fn parse_rational(raw: &str) -> Result<BigRational, CliError> {
    let s = raw.trim();
    let bad = || CliError::Parse(format!("invalid number {raw:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_rational(num)?;
        let den = parse_rational(den)?;
        if den.is_zero() {
            return Err(CliError::Parse(format!("zero denominator in {raw:?}")));
        }
        return Ok(num / den);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numerator: num_bigint::BigInt = all_digits.parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(10.into());
    let mut value = BigRational::from_integer(numerator);
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if negative { -value } else { value })
}

pub fn parse_f64(raw: &str) -> Result<f64, CliError> {
    let r = parse_rational(raw)?;
    r.to_f64()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::Parse(format!("number out of range: {raw:?}")))
}

fn split_list(raw: &str, seps: &[char]) -> Vec<String> {
    raw.split(|c: char| seps.contains(&c) || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

/// `re` or `re,im`.
pub fn parse_amplitude(raw: &str) -> Result<Amplitude<f64>, CliError> {
    match raw.split_once(',') {
        Some((re, im)) => Ok(Amplitude::new(parse_f64(re)?, parse_f64(im)?)),
        None => Ok(Amplitude::new(parse_f64(raw)?, 0.0)),
    }
}

/// Amplitudes separated by `;` or whitespace; 4 means the restricted family.
pub fn parse_state(raw: &str) -> Result<PureState<f64>, CliError> {
    let amps = split_list(raw, &[';'])
        .iter()
        .map(|t| parse_amplitude(t))
        .collect::<Result<Vec<_>, _>>()?;
    match amps.len() {
        4 => Ok(PureState::restricted([amps[0], amps[1], amps[2], amps[3]])?),
        16 => Ok(PureState::new(amps)?),
        n => Err(CliError::Parse(format!(
            "--state needs 4 or 16 amplitudes, got {n}"
        ))),
    }
}

fn parse_four<T>(raw: &str, flag: &str, parse: impl Fn(&str) -> Result<T, CliError>) -> Result<[T; 4], CliError> {
    let parts = split_list(raw, &[',', ';']);
    if parts.len() != 4 {
        return Err(CliError::Parse(format!(
            "{flag} needs 4 values, got {}",
            parts.len()
        )));
    }
    let mut values = parts.iter().map(|p| parse(p)).collect::<Result<Vec<T>, _>>()?;
    let d = values.pop().expect("4 values");
    let c = values.pop().expect("4 values");
    let b = values.pop().expect("4 values");
    let a = values.pop().expect("4 values");
    Ok([a, b, c, d])
}

pub fn parse_weights_exact(raw: &str) -> Result<RestrictedStateWeights<BigRational>, CliError> {
    Ok(RestrictedStateWeights::new(parse_four(raw, "--weights", parse_rational)?)?)
}

pub fn parse_weights(raw: &str) -> Result<RestrictedStateWeights<f64>, CliError> {
    let exact = parse_four(raw, "--weights", parse_rational)?;
    Ok(RestrictedStateWeights::new(exact.map(|v| v.to_f64_lossy()))?)
}

pub fn parse_phases(raw: &str) -> Result<[f64; 4], CliError> {
    parse_four(raw, "--phases", parse_f64)
}

pub fn parse_profile(raw: &str) -> Result<StrategyProfile<f64>, CliError> {
    let [p, q, p1, q1] = parse_four(raw, "--profile", parse_f64)?;
    Ok(StrategyProfile::new(p, q, p1, q1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn numbers() {
        assert_eq!(parse_rational("1/6").unwrap(), r(1, 6));
        assert_eq!(parse_rational("-0.125").unwrap(), r(-1, 8));
        assert_eq!(parse_rational("2.5e-1").unwrap(), r(1, 4));
        assert_eq!(parse_rational("3").unwrap(), r(3, 1));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        assert_eq!(parse_rational("1.5/3").unwrap(), r(1, 2));
        for bad in ["", "abc", "1/0", "1..2", "-", "1e", "0x10"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn amplitudes_and_states() {
        assert_eq!(parse_amplitude("0.6,-0.8").unwrap(), Amplitude::new(0.6, -0.8));
        let s = parse_state("1;0;0;0").unwrap();
        assert_eq!(s, PureState::classical());
        let s = parse_state("3/5 0,4/5 0 0").unwrap();
        assert!((s.amplitudes()[3].im - 0.8).abs() < 1e-16);
        let uniform = vec!["1/4"; 16].join(";");
        assert!(parse_state(&uniform).is_ok());
        assert!(matches!(parse_state("1;0;0"), Err(CliError::Parse(_))));
        assert!(matches!(parse_state("1;1;0;0"), Err(CliError::Input(_))));
    }

    #[test]
    fn weights_and_profiles() {
        let w = parse_weights("1/6,1/6,1/2,1/6").unwrap();
        assert!((w.w3() - 0.5).abs() < 1e-16);
        assert_eq!(*parse_weights_exact("1/6,1/6,1/2,1/6").unwrap().w1(), r(1, 6));
        assert!(parse_weights("0.5,0.5,0.5,0").is_err());
        assert!(parse_profile("1,1,0").is_err());
        assert!(parse_profile("1,1,0,2").is_err());
        assert_eq!(*parse_profile("1,1/2,0,0").unwrap().q(), 0.5);
    }
}
