use std::fmt;

use clap::ValueEnum;
use ssplab::cartier::odd_primes_up_to;
use ssplab::locus::validate_schedule;
use ssplab::PrimeModulus;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// Invalid command-line configuration (exit status 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<ssplab::Error> for ConfigError {
    fn from(e: ssplab::Error) -> Self {
        ConfigError(e.to_string())
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub primes: Vec<PrimeModulus>,
    pub schedule: Vec<usize>,
}

/// Parses `3,5,7`, `3..13` (inclusive, odd primes only) or a mix of both.
/// The result is sorted and deduplicated.
pub fn parse_primes(spec: &str) -> Result<Vec<PrimeModulus>, ConfigError> {
    let mut out = Vec::new();
    for tok in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some((lo, hi)) = tok.split_once("..") {
            let lo = parse_u64(lo)?;
            let hi = parse_u64(hi)?;
            let range: Vec<_> = odd_primes_up_to(hi).into_iter().filter(|p| p.get() as u64 >= lo).collect();
            if range.is_empty() {
                return Err(ConfigError(format!("no odd primes in {tok}")));
            }
            out.extend(range);
        } else {
            let n = parse_u64(tok)?;
            out.push(PrimeModulus::new(n).map_err(|_| ConfigError(format!("{n} is not an odd prime")))?);
        }
    }
    if out.is_empty() {
        return Err(ConfigError("no primes given".into()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn parse_u64(s: &str) -> Result<u64, ConfigError> {
    s.trim().parse().map_err(|_| ConfigError(format!("not a number: {s:?}")))
}

/// Parses an increasing list of extension degrees such as `2,4`.
pub fn parse_schedule(spec: &str) -> Result<Vec<usize>, ConfigError> {
    let ks = spec
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| ConfigError(format!("not an extension degree: {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    validate_schedule(&ks)?;
    Ok(ks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(v: &[PrimeModulus]) -> Vec<u32> {
        v.iter().map(|p| p.get()).collect()
    }

    #[test]
    fn prime_lists() {
        assert_eq!(values(&parse_primes("3,5,7").unwrap()), vec![3, 5, 7]);
        assert_eq!(values(&parse_primes("3..13").unwrap()), vec![3, 5, 7, 11, 13]);
        assert_eq!(values(&parse_primes("11, 5..7, 5").unwrap()), vec![5, 7, 11]);
        assert!(parse_primes("2").is_err());
        assert!(parse_primes("9").is_err());
        assert!(parse_primes("0..2").is_err());
        assert!(parse_primes("").is_err());
        assert!(parse_primes("x").is_err());
    }

    #[test]
    fn schedules() {
        assert_eq!(parse_schedule("2,4").unwrap(), vec![2, 4]);
        assert!(parse_schedule("4,2").is_err());
        assert!(parse_schedule("").is_err());
        assert!(parse_schedule("0").is_err());
    }
}
