//! Parsing of activities, boundary values and table files.

use num_bigint::{BigInt, BigUint};

use hcgibbs::gibbs::Activity;
use hcgibbs::HcError;
use padic::{EpElement, PadicError, PadicNumber, Prime};

/// Parses "n/d", a bare integer "n", or a digit list "[x0,x1,...]@v".
pub fn parse_padic(s: &str, p: Prime, digits: u32) -> Result<PadicNumber, HcError> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('[') {
        let (list, val) = rest
            .split_once("]@")
            .ok_or(PadicError::OutOfDomain("digit list syntax [x0,x1,...]@v"))?;
        let valuation: i64 = val
            .trim()
            .parse()
            .map_err(|_| PadicError::OutOfDomain("digit list valuation"))?;
        let mut mantissa = BigUint::ZERO;
        let mut count = 0u32;
        for d in list.split(',').rev() {
            let d: u64 = d
                .trim()
                .parse()
                .map_err(|_| PadicError::OutOfDomain("digit list entry"))?;
            if d >= p.get() {
                return Err(PadicError::OutOfDomain("digit exceeds p - 1").into());
            }
            mantissa = mantissa * p.get() + d;
        }
        for _ in list.split(',') {
            count += 1;
        }
        Ok(PadicNumber::from_parts(p, valuation, mantissa, count)?)
    } else {
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num
            .parse()
            .map_err(|_| PadicError::OutOfDomain("rational numerator"))?;
        let den: BigInt = den
            .parse()
            .map_err(|_| PadicError::OutOfDomain("rational denominator"))?;
        Ok(PadicNumber::from_rational(&num, &den, p, digits)?)
    }
}

/// Parses an activity, keeping the exact rational when one was given.
pub fn parse_activity(s: &str, p: Prime, digits: u32) -> Result<Activity, HcError> {
    let s = s.trim();
    if s.starts_with('[') {
        let value = parse_padic(s, p, digits)?;
        return Ok(Activity::from_padic(EpElement::new(value)?));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| PadicError::OutOfDomain("rational numerator"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| PadicError::OutOfDomain("rational denominator"))?;
    Activity::from_rational(&num, &den, p, digits)
}

/// Reads a table law file: one line per vertex in breadth-first order, each
/// line "z1 z2" (whitespace separated, same value syntax as the activity).
pub fn parse_table_file(
    path: &std::path::Path,
    p: Prime,
    digits: u32,
) -> Result<Vec<(EpElement, EpElement)>, HcError> {
    let text = std::fs::read_to_string(path)
        .map_err(|_| PadicError::OutOfDomain("table file not readable"))?;
    let mut entries = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(a), Some(b)) = (parts.next(), parts.next()) else {
            return Err(PadicError::OutOfDomain("table line needs two values").into());
        };
        entries.push((
            EpElement::new(parse_padic(a, p, digits)?)?,
            EpElement::new(parse_padic(b, p, digits)?)?,
        ));
    }
    Ok(entries)
}
