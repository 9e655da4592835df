//! α specifications on the command line.
//!
//! Accepted forms, combinable with commas: a decimal (`0.75`), the named
//! value `1/sqrt2` (also `1/sqrt(2)`), and an inclusive grid
//! `grid:<start>:<stop>:<step>`.

use aalpha_core::inv_sqrt2;

use crate::CliError;

pub fn parse_alpha_spec(spec: &str) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    for token in spec.split(',').map(str::trim) {
        if token.is_empty() {
            return Err(CliError::Usage(format!("empty alpha token in '{spec}'")));
        }
        if let Some(rest) = token.strip_prefix("grid:") {
            out.extend(parse_grid(token, rest)?);
        } else {
            out.push(parse_value(token)?);
        }
    }
    for &a in &out {
        if !(0.0..1.0).contains(&a) {
            return Err(CliError::Usage(format!("alpha {a} (from '{spec}') is outside [0, 1)")));
        }
    }
    Ok(out)
}

fn parse_value(token: &str) -> Result<f64, CliError> {
    match token {
        "1/sqrt2" | "1/sqrt(2)" => Ok(inv_sqrt2()),
        _ => token
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| CliError::Usage(format!("invalid alpha token '{token}'"))),
    }
}

fn parse_grid(token: &str, rest: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = rest.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "invalid alpha grid '{token}': expected grid:<start>:<stop>:<step>"
        )));
    }
    let start = parse_value(parts[0])?;
    let stop = parse_value(parts[1])?;
    let step = parse_value(parts[2])?;
    if step <= 0.0 || stop < start {
        return Err(CliError::Usage(format!(
            "invalid alpha grid '{token}': need step > 0 and stop >= start"
        )));
    }
    // Inclusive of `stop` up to rounding in the step arithmetic.
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}
